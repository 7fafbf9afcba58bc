"""Exact homogeneous polynomials over Q and the common-zero machinery.

Monomial order is graded lexicographic with z0 > z1 > ... everywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd, isqrt, lcm
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InputError

Exp = tuple[int, ...]
Scalar = Union[int, Fraction]

DEFAULT_BUDGET = 5000


def _key(e: Exp):
    return (sum(e), e)


def monomials(nvars: int, degree: int) -> Iterator[Exp]:
    """Exponent vectors of the given total degree, in descending grlex order."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            yield (first,) + rest


class HomogPoly:
    """Homogeneous polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Optional[dict] = None):
        if nvars < 1 or degree < 0:
            raise InputError(f"bad polynomial shape nvars={nvars} degree={degree}")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise InputError(f"exponent {e} does not fit {nvars} variables")
            if sum(e) != degree:
                raise InputError(f"exponent {e} is not of degree {degree}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.nvars = nvars
        self.degree = degree
        self.terms = clean

    # construction
    @classmethod
    def zero(cls, nvars: int, degree: int) -> "HomogPoly":
        return cls(nvars, degree)

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> "HomogPoly":
        return cls(nvars, 0, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "HomogPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, power, {tuple(e): 1})

    @classmethod
    def from_coeffs(cls, nvars: int, degree: int, coeffs: Sequence[Scalar]) -> "HomogPoly":
        """Coefficients listed against ``monomials(nvars, degree)``."""
        return cls(nvars, degree, dict(zip(monomials(nvars, degree), coeffs)))

    # basic protocol
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (self.nvars, self.degree, self.terms) == (other.nvars, other.degree, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _key(t[0]), reverse=True)

    def leading(self) -> tuple[Exp, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_key)
        return e, self.terms[e]

    def _same_ring(self, other: "HomogPoly"):
        if self.nvars != other.nvars:
            raise InputError("polynomials live in different variable sets")

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        self._same_ring(other)
        if self.degree != other.degree:
            if not other:
                return self
            if not self:
                return other
            raise InputError("sum of forms of different degrees is not homogeneous")
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return HomogPoly(self.nvars, self.degree, t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Scalar) -> "HomogPoly":
        c = Fraction(c)
        return HomogPoly(self.nvars, self.degree, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._same_ring(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return HomogPoly(self.nvars, self.degree + other.degree, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HomogPoly":
        if k < 0:
            raise InputError("negative power")
        out = HomogPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, point: Sequence[Scalar]) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise InputError("point has the wrong number of coordinates")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def monic(self) -> "HomogPoly":
        if not self:
            return self
        return self.scale(1 / self.leading()[1])

    def is_constant(self) -> bool:
        return self.degree == 0

    # text forms
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"z{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def __repr__(self):
        return f"HomogPoly({self.nvars}, {self.degree}, {str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"coeff": str(c), "exponents": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, nvars: Optional[int] = None,
                  degree: Optional[int] = None) -> "HomogPoly":
        if not isinstance(data, list):
            raise InputError("polynomial must be a list of terms")
        terms = {}
        for t in data:
            if not isinstance(t, dict) or set(t) != {"coeff", "exponents"}:
                raise InputError(f"bad term {t!r}")
            exps = t["exponents"]
            if not isinstance(exps, list) or any(type(x) is not int for x in exps):
                raise InputError(f"bad exponents {exps!r}")
            try:
                c = Fraction(str(t["coeff"]))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"bad coefficient {t['coeff']!r}") from None
            e = tuple(exps)
            if e in terms:
                raise InputError(f"repeated exponent {list(e)}")
            terms[e] = c
        if terms:
            lens = {len(e) for e in terms}
            degs = {sum(e) for e in terms}
            if len(lens) != 1 or len(degs) != 1:
                raise InputError("terms are not homogeneous of a single shape")
            nv, dg = lens.pop(), degs.pop()
            if nvars is not None and nv != nvars:
                raise InputError(f"expected {nvars} variables, got {nv}")
            if degree is not None and dg != degree:
                raise InputError(f"expected degree {degree}, got {dg}")
            nvars, degree = nv, dg
        if nvars is None or degree is None:
            raise InputError("shape of the zero polynomial must be given")
        return cls(nvars, degree, terms)


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple[HomogPoly, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise InputError("empty generator list")
        if len({g.nvars for g in gens}) != 1:
            raise InputError("generators use different variable sets")
        object.__setattr__(self, "generators", gens)

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars


# -- univariate helpers (coefficient lists, constant term first) ------------

def _utrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _urem(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(_utrim(a)) - 1 >= db:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
    return a


def _ugcd(a: list, b: list) -> list:
    a = _utrim([Fraction(x) for x in a])
    b = _utrim([Fraction(x) for x in b])
    while b:
        a, b = b, _urem(a, b)
    if not a:
        return a
    return [x / a[-1] for x in a]


def _dehomogenize(f: HomogPoly) -> list:
    """f(t, 1) as a coefficient list in t."""
    out = [Fraction(0)] * (f.degree + 1)
    for (e0, _), c in f.terms.items():
        out[e0] = c
    return _utrim(out)


def _z1_multiplicity(f: HomogPoly) -> int:
    return min(e[1] for e in f.terms)


def _check_binary(*fs: HomogPoly):
    for f in fs:
        if f.nvars != 2:
            raise InputError("binary forms need exactly two variables")


def gcd_binary_forms(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Monic gcd of two binary forms over Q.

    Dehomogenize at z1 = 1, run Euclid there, then restore the power of z1
    (the roots at infinity) that both forms share.
    """
    _check_binary(f, g)
    if not f and not g:
        raise InputError("gcd of two zero polynomials")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    e = min(_z1_multiplicity(f), _z1_multiplicity(g))
    h = _ugcd(_dehomogenize(f), _dehomogenize(g))
    dh = len(h) - 1
    terms = {(j, dh - j + e): c for j, c in enumerate(h)}
    return HomogPoly(2, dh + e, terms)


def gcd_forms(forms: Iterable[HomogPoly]) -> Optional[HomogPoly]:
    """gcd of several binary forms, ignoring zero ones; None if all are zero."""
    out = None
    for f in forms:
        if not f:
            continue
        out = f.monic() if out is None else gcd_binary_forms(out, f)
    return out


def _det_fraction(M: list[list]) -> Fraction:
    n = len(M)
    M = [[Fraction(x) for x in row] for row in M]
    sign = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        sign *= M[c][c]
    return sign


def sylvester_matrix(f: HomogPoly, g: HomogPoly) -> list[list[Fraction]]:
    _check_binary(f, g)
    a, b = f.degree, g.degree
    fc = [f.terms.get((a - i, i), Fraction(0)) for i in range(a + 1)]
    gc = [g.terms.get((b - i, i), Fraction(0)) for i in range(b + 1)]
    size = a + b
    rows = []
    for i in range(b):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - a - 1 - i))
    for i in range(a):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - b - 1 - i))
    return rows


def resultant_binary(f: HomogPoly, g: HomogPoly) -> Fraction:
    """Sylvester resultant of two binary forms; zero iff a common root in P^1."""
    _check_binary(f, g)
    if not f or not g:
        raise InputError("resultant of a zero polynomial")
    return _det_fraction(sylvester_matrix(f, g))


def _divisors(n: int, limit: int = 10**12) -> Optional[list[int]]:
    n = abs(n)
    if n > limit:
        return None
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(f: HomogPoly) -> list[tuple[int, int]]:
    """Rational points [a:b] of P^1 where the binary form vanishes.

    Divisor enumeration on the integer-scaled dehomogenization; coefficients
    beyond 10^12 are skipped and give an incomplete list.
    """
    _check_binary(f)
    if not f:
        return [(1, 0), (0, 1)]
    roots = []
    if _z1_multiplicity(f) > 0:
        roots.append((1, 0))
    u = _dehomogenize(f)
    den = lcm(*(c.denominator for c in u))
    u = [int(c * den) for c in u]
    if u[0] == 0:
        roots.append((0, 1))
        while u and u[0] == 0:
            u.pop(0)
    if len(u) <= 1:
        return roots
    ps, qs = _divisors(u[0]), _divisors(u[-1])
    if ps is None or qs is None:
        return roots
    seen = set()
    for p in ps:
        for q in qs:
            for s in (p, -p):
                if gcd(s, q) != 1 or (s, q) in seen:
                    continue
                seen.add((s, q))
                # sum u_i s^i q^(deg - i) == 0
                deg = len(u) - 1
                if sum(c * s ** i * q ** (deg - i) for i, c in enumerate(u)) == 0:
                    roots.append((s, q))
    return roots


# -- Groebner bases on integer-coefficient dicts ----------------------------

def _primitive(p: dict) -> dict:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if not p:
        return p
    vals = [Fraction(v) for v in p.values()]
    den = lcm(*(v.denominator for v in vals))
    ints = {e: int(Fraction(v) * den) for e, v in p.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    lead = max(ints, key=_key)
    if ints[lead] < 0:
        g = -g
    return {e: v // g for e, v in ints.items()}


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(h: dict, G: list[dict], leads: list[Exp]) -> dict:
    """Full fraction-free reduction of h modulo G; result made primitive."""
    h = dict(h)
    rem: dict = {}
    while h:
        lt = max(h, key=_key)
        c = h[lt]
        for g, lg in zip(G, leads):
            if _divides(lg, lt):
                cg = g[lg]
                k = gcd(cg, c)
                a, b = cg // k, c // k
                q = tuple(x - y for x, y in zip(lt, lg))
                if a != 1:
                    h = {e: a * v for e, v in h.items()}
                    rem = {e: a * v for e, v in rem.items()}
                for e, v in g.items():
                    e2 = tuple(x + y for x, y in zip(e, q))
                    nv = h.get(e2, 0) - b * v
                    if nv:
                        h[e2] = nv
                    else:
                        h.pop(e2, None)
                break
        else:
            rem[lt] = c
            del h[lt]
    return _primitive(rem)


def _s_poly(f: dict, g: dict, lf: Exp, lg: Exp) -> dict:
    l = tuple(max(x, y) for x, y in zip(lf, lg))
    qf = tuple(x - y for x, y in zip(l, lf))
    qg = tuple(x - y for x, y in zip(l, lg))
    cf, cg = f[lf], g[lg]
    k = gcd(cf, cg)
    a, b = cg // k, cf // k
    out: dict = {}
    for e, v in f.items():
        e2 = tuple(x + y for x, y in zip(e, qf))
        out[e2] = out.get(e2, 0) + a * v
    for e, v in g.items():
        e2 = tuple(x + y for x, y in zip(e, qg))
        out[e2] = out.get(e2, 0) - b * v
    return {e: v for e, v in out.items() if v}


def _to_dict(p: HomogPoly) -> dict:
    return _primitive(dict(p.terms))


def _from_dict(nvars: int, p: dict) -> HomogPoly:
    deg = sum(next(iter(p))) if p else 0
    return HomogPoly(nvars, deg, p)


@dataclass
class GroebnerResult:
    basis: list[HomogPoly]
    complete: bool
    steps: int


def groebner_basis(polys: Sequence[HomogPoly], budget: int = DEFAULT_BUDGET) -> GroebnerResult:
    """Buchberger's algorithm, grlex, normal selection strategy.

    ``budget`` bounds the number of S-polynomial reductions.  When it runs
    out, the partial basis is returned with ``complete=False``; its elements
    still lie in the ideal.  Complete runs return the reduced basis.
    """
    if not polys:
        raise InputError("empty generator list")
    nvars = polys[0].nvars
    G: list[dict] = []
    for p in polys:
        d = _to_dict(p)
        if d and d not in G:
            G.append(d)
    leads = [max(g, key=_key) for g in G]
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    steps = 0

    def pair_key(pr):
        i, j = pr
        l = tuple(max(x, y) for x, y in zip(leads[i], leads[j]))
        return (_key(l), i, j)

    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.discard(pr)
        i, j = pr
        if all(x == 0 or y == 0 for x, y in zip(leads[i], leads[j])):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        if steps >= budget:
            pairs.add(pr)
            return GroebnerResult([_from_dict(nvars, g) for g in G], False, steps)
        steps += 1
        h = _reduce(_s_poly(G[i], G[j], leads[i], leads[j]), G, leads)
        if h:
            G.append(h)
            leads.append(max(h, key=_key))
            n = len(G) - 1
            pairs.update((k, n) for k in range(n))
    return GroebnerResult([_from_dict(nvars, g) for g in _interreduce(G)], True, steps)


def _interreduce(G: list[dict]) -> list[dict]:
    leads = [max(g, key=_key) for g in G]
    keep = []
    for i, li in enumerate(leads):
        redundant = any(
            _divides(lj, li) and (lj != li or j < i)
            for j, lj in enumerate(leads) if j != i)
        if not redundant:
            keep.append(i)
    M = [G[i] for i in keep]
    out = []
    for idx, g in enumerate(M):
        others = M[:idx] + M[idx + 1:]
        # the leading term is not divisible by any other lead, so only the tail moves
        out.append(_reduce(g, others, [max(o, key=_key) for o in others]))
    return sorted(out, key=lambda p: _key(max(p, key=_key)), reverse=True)


def leading_monomials(basis: Sequence[HomogPoly]) -> list[Exp]:
    return [p.leading()[0] for p in basis if p]


def reduces_to_zero(f: HomogPoly, basis: Sequence[HomogPoly]) -> bool:
    G = [_to_dict(b) for b in basis if b]
    return not _reduce(_to_dict(f), G, [max(g, key=_key) for g in G])


def is_groebner_basis(basis: Sequence[HomogPoly]) -> bool:
    """Every S-polynomial of the basis reduces to zero modulo it."""
    G = [_to_dict(b) for b in basis if b]
    leads = [max(g, key=_key) for g in G]
    for i, j in combinations(range(len(G)), 2):
        if _reduce(_s_poly(G[i], G[j], leads[i], leads[j]), G, leads):
            return False
    return True


# -- common zeros -------------------------------------------------------------

def restrict_to_line(f: HomogPoly, P: Sequence[int], Q: Sequence[int]) -> HomogPoly:
    """The binary form f(u P + v Q)."""
    d = f.degree
    total = [Fraction(0)] * (d + 1)  # index = power of u
    for e, c in f.terms.items():
        prod = [Fraction(1)]
        for k, power in enumerate(e):
            lin = [Fraction(Q[k]), Fraction(P[k])]  # v-coefficient at u^0, u-coefficient at u^1
            for _ in range(power):
                new = [Fraction(0)] * (len(prod) + 1)
                for i, a in enumerate(prod):
                    new[i] += a * lin[0]
                    new[i + 1] += a * lin[1]
                prod = new
        for i, a in enumerate(prod):
            total[i] += c * a
    return HomogPoly(2, d, {(i, d - i): c for i, c in enumerate(total)})


@dataclass
class ZeroTest:
    """Outcome of the "only the origin" test: status is yes, no or unknown."""

    status: str
    witness_point: Optional[tuple[Fraction, ...]] = None
    witness_pattern: Optional[tuple[int, ...]] = None
    groebner: Optional[GroebnerResult] = field(default=None, repr=False)


def _coordinate_pattern(gens: list[HomogPoly], nvars: int) -> Optional[tuple[int, ...]]:
    """Smallest S such that every generator vanishes on {z_i = 0, i in S}."""
    for size in range(0, nvars):
        for S in combinations(range(nvars), size):
            if all(any(e[i] for i in S) for g in gens for e in g.terms):
                return S
    return None


def _line_witness(gens: list[HomogPoly], P, Q) -> Optional[tuple[Fraction, ...]]:
    h = gcd_forms(restrict_to_line(g, P, Q) for g in gens)
    if h is None:
        return None  # every generator vanishes on the whole line
    if h.degree == 0:
        return None
    for a, b in rational_roots(h):
        pt = tuple(Fraction(a * p + b * q) for p, q in zip(P, Q))
        if any(pt):
            return pt
    return None


def _small_points(nvars: int, radius: int = 2, cap: int = 4000) -> Iterator[tuple[int, ...]]:
    """Nonzero points of a small integer box, one per line through the origin."""
    if (2 * radius + 1) ** nvars > cap:
        radius = 1
        if 3 ** nvars > cap:
            return
    for pt in product(range(-radius, radius + 1), repeat=nvars):
        first = next((x for x in pt if x), 0)
        if first > 0 and gcd(*pt) == 1:
            yield pt


def find_common_zero(gens: Sequence[HomogPoly], tries: int = 12,
                     seed: int = 0) -> tuple[Optional[tuple], Optional[tuple]]:
    """Search for a nonzero common zero.

    Tried in order: coordinate subspaces, small integer points, coordinate
    lines, then seeded random rational lines.

    Returns ``(point, pattern)``; either may be None.
    """
    gens = [g for g in gens if g]
    nvars = gens[0].nvars if gens else None
    if not gens:
        return None, None
    S = _coordinate_pattern(gens, nvars)
    if S is not None:
        t = min(i for i in range(nvars) if i not in S)
        pt = tuple(Fraction(int(i == t)) for i in range(nvars))
        return pt, S
    for pt in _small_points(nvars):
        if all(g.evaluate(pt) == 0 for g in gens):
            return tuple(Fraction(x) for x in pt), None
    basis = [[int(i == j) for j in range(nvars)] for i in range(nvars)]
    lines = [(basis[s], basis[t]) for s, t in combinations(range(nvars), 2)]
    rng = random.Random(seed)
    for _ in range(tries):
        P = [rng.randint(-3, 3) for _ in range(nvars)]
        Q = [rng.randint(-3, 3) for _ in range(nvars)]
        lines.append((P, Q))
    for P, Q in lines:
        if not any(P) or not any(Q):
            continue
        pt = _line_witness(gens, P, Q)
        if pt is not None:
            assert all(g.evaluate(pt) == 0 for g in gens)
            return pt, None
    return None, None


def vanishes_only_at_origin(basis: Union[IdealBasis, Sequence[HomogPoly]],
                            budget: int = DEFAULT_BUDGET) -> ZeroTest:
    """Decide whether the forms have no common zero besides the origin.

    ``yes`` needs a pure power of every variable among the leading terms of
    ideal elements.  ``no`` comes from a completed Groebner basis lacking one
    (witness attached when the search finds one) or from an explicit witness
    found after the budget ran out.  Otherwise ``unknown``.
    """
    if not isinstance(basis, IdealBasis):
        basis = IdealBasis(tuple(basis))
    nvars = basis.nvars
    gens = [g for g in basis.generators if g]
    if not gens:
        pt = tuple(Fraction(int(i == 0)) for i in range(nvars))
        return ZeroTest("no", pt, ())
    if nvars == 1:
        return ZeroTest("yes")
    gb = groebner_basis(gens, budget)
    pure = set()
    for e in leading_monomials(gb.basis):
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            pure.add(nz[0])
        elif not nz:
            pure.update(range(nvars))  # a nonzero constant in the ideal
    if len(pure) == nvars:
        return ZeroTest("yes", groebner=gb)
    pt, pattern = find_common_zero(gens)
    if pt is not None or gb.complete:
        return ZeroTest("no", pt, pattern, gb)
    return ZeroTest("unknown", groebner=gb)
