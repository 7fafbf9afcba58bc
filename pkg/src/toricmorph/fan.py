"""Fans of smooth complete toric varieties: validation, faces, catalog, I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from pathlib import Path
from typing import Union

from .errors import InputError
from .lattice import det, feasible_nonnegative, transpose


@dataclass(frozen=True)
class Fan:
    """Rays (in file order, which fixes the Cox coordinate order) and max cones."""

    name: str
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(
            self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))

    @property
    def r(self) -> int:
        return len(self.rays)

    def ray_matrix(self) -> list[list[int]]:
        """The r x n matrix whose rows are the rays (the map m -> (<n_i, m>)_i)."""
        return [list(v) for v in self.rays]


@dataclass(frozen=True)
class Cone:
    ray_indices: tuple[int, ...]

    def __str__(self):
        return "{" + ",".join(map(str, self.ray_indices)) + "}"


@dataclass
class ValidationReport:
    is_simplicial: bool
    is_smooth: bool
    is_complete: bool
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.is_simplicial and self.is_smooth and self.is_complete

    def to_dict(self) -> dict:
        return {
            "is_simplicial": self.is_simplicial,
            "is_smooth": self.is_smooth,
            "is_complete": self.is_complete,
            "failures": [list(f) for f in self.failures],
        }


def _fmt(idx) -> str:
    return "{" + ",".join(map(str, idx)) + "}"


def _structural_failures(fan: Fan) -> list[tuple[str, str]]:
    out = []
    if fan.dim < 1:
        out.append(("fan", f"dimension must be positive, got {fan.dim}"))
        return out
    seen = {}
    for i, v in enumerate(fan.rays):
        if len(v) != fan.dim:
            out.append((f"ray {i}", f"has {len(v)} coordinates, expected {fan.dim}"))
        elif not any(v):
            out.append((f"ray {i}", "is the zero vector"))
        elif v in seen:
            out.append((f"ray {i}", f"duplicates ray {seen[v]}"))
        else:
            seen[v] = i
    cones_seen = set()
    for c, cone in enumerate(fan.max_cones):
        bad = [i for i in cone if not 0 <= i < fan.r]
        if bad:
            out.append((f"cone {c} {_fmt(cone)}", f"ray index out of range: {bad}"))
        if cone in cones_seen:
            out.append((f"cone {c} {_fmt(cone)}", "listed twice"))
        cones_seen.add(cone)
    return out


def _interiors_meet(U: list, W: list, hU: list, hW: list) -> bool:
    """Do the open simplicial cones spanned by U and W share a point?

    ``hU`` and ``hW`` are the integer inward facet normals of each cone.
    """
    n = len(U[0])
    # cheap certificate first: a facet hyperplane of one cone separating the other
    for H, Q in ((hU, W), (hW, U)):
        for h in H:
            if all(sum(a * b for a, b in zip(h, w)) <= 0 for w in Q):
                return False
    # sum(lam_i u_i) = sum(mu_j w_j), lam, mu >= 1  <=>  shifted system with vars >= 0
    cols = [list(u) for u in U] + [[-x for x in w] for w in W]
    A = transpose(cols)
    b = [-(sum(u[k] for u in U) - sum(w[k] for w in W)) for k in range(n)]
    return feasible_nonnegative(A, b) is not None


def _dual_basis(P: list) -> list[list[Fraction]]:
    """Rows h_i with <h_i, p_j> = delta_ij (inverse of the column matrix of P)."""
    n = len(P)
    M = [[Fraction(P[j][i]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
         for i in range(n)]
    # Gauss-Jordan on [P^T | I]; rows of the inverse of P^T's transpose
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    inv_t = [row[n:] for row in M]  # inverse of the matrix whose columns are the p_j
    return inv_t


def _facet_normals(P: list) -> list[list[int]]:
    """Dual basis rows scaled by a positive integer to clear denominators."""
    out = []
    for h in _dual_basis(P):
        den = 1
        for x in h:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in h])
    return out


def validate(fan: Fan) -> ValidationReport:
    """Check simpliciality, smoothness and completeness of ``fan``.

    Problems are collected into ``failures`` rather than raised.
    """
    failures = _structural_failures(fan)
    if failures:
        return ValidationReport(False, False, False, failures)

    n = fan.dim
    simplicial = True
    smooth = True
    for i, v in enumerate(fan.rays):
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            smooth = False
            failures.append((f"ray {i}", f"not primitive (gcd {g})"))
    dets = {}
    for c, cone in enumerate(fan.max_cones):
        label = f"cone {c} {_fmt(cone)}"
        if len(cone) != n:
            simplicial = False
            failures.append((label, f"has {len(cone)} rays, expected {n}"))
            continue
        d = det([list(fan.rays[i]) for i in cone])
        dets[cone] = d
        if d == 0:
            simplicial = False
            failures.append((label, "rays are linearly dependent"))
        elif abs(d) != 1:
            smooth = False
            failures.append((label, f"|det| = {abs(d)}, not unimodular"))
    smooth = smooth and simplicial
    if not fan.max_cones:
        failures.append(("fan", "no maximal cones"))
        return ValidationReport(simplicial, smooth, False, failures)
    if not simplicial:
        return ValidationReport(False, False, False, failures)

    complete = True
    walls: dict[tuple[int, ...], int] = {}
    for cone in fan.max_cones:
        for wall in combinations(cone, n - 1):
            walls[wall] = walls.get(wall, 0) + 1
    for wall in sorted(walls):
        if walls[wall] != 2:
            complete = False
            failures.append((f"wall {_fmt(wall)}", f"borders {walls[wall]} max cone(s), expected 2"))
    cones = fan.max_cones
    gens = [[fan.rays[i] for i in cone] for cone in cones]
    normals = [_facet_normals(g) for g in gens]
    for a, b in combinations(range(len(cones)), 2):
        if _interiors_meet(gens[a], gens[b], normals[a], normals[b]):
            complete = False
            failures.append((f"cones {_fmt(cones[a])}/{_fmt(cones[b])}", "interiors overlap"))
    return ValidationReport(simplicial, smooth, complete, failures)


def faces(fan: Fan) -> list[Cone]:
    """All faces (subsets of max cones), deduplicated, sorted by size then indices."""
    out = {()}
    for cone in fan.max_cones:
        for k in range(1, len(cone) + 1):
            out.update(combinations(cone, k))
    return [Cone(c) for c in sorted(out, key=lambda c: (len(c), c))]


# -- catalog ----------------------------------------------------------------

CATALOG_FAMILIES = ("projective:N", "product_p1_p1", "hirzebruch:A", "p112")


def projective(n: int) -> Fan:
    if n < 1:
        raise InputError("projective space needs n >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    cones = [tuple(j for j in range(n + 1) if j != i) for i in range(n + 1)]
    return Fan(f"projective:{n}", n, tuple(rays), tuple(cones))


def product_p1_p1() -> Fan:
    return Fan("product_p1_p1", 2, ((1, 0), (-1, 0), (0, 1), (0, -1)),
               ((0, 2), (0, 3), (1, 2), (1, 3)))


def hirzebruch(a: int) -> Fan:
    return Fan(f"hirzebruch:{a}", 2, ((1, 0), (0, 1), (-1, a), (0, -1)),
               ((0, 1), (1, 2), (2, 3), (0, 3)))


def p112() -> Fan:
    return Fan("p112", 2, ((1, 0), (0, 1), (-1, -2)), ((0, 1), (1, 2), (0, 2)))


def catalog(name: str) -> Fan:
    """Look up a built-in fan by ``family:parameter`` name."""
    family, _, param = name.strip().partition(":")
    try:
        if family == "projective":
            return projective(int(param))
        if family == "hirzebruch":
            return hirzebruch(int(param))
    except ValueError:
        raise InputError(f"bad catalog parameter in {name!r}") from None
    if family == "product_p1_p1" and not param:
        return product_p1_p1()
    if family == "p112" and not param:
        return p112()
    raise InputError(f"unknown catalog fan {name!r}; known: {', '.join(CATALOG_FAMILIES)}")


def standard_catalog(max_rays: int = 12) -> list[Fan]:
    """A finite sample of catalog fans with at most ``max_rays`` rays."""
    fans = [projective(n) for n in range(1, max_rays)]
    fans.append(product_p1_p1())
    fans.extend(hirzebruch(a) for a in range(0, 6))
    fans.append(p112())
    return [f for f in fans if f.r <= max_rays]


# -- file format ------------------------------------------------------------

def _reject_constant(token):
    raise InputError(f"invalid numeric token {token!r}")


def _int_list(obj, what) -> list[int]:
    if not isinstance(obj, list) or any(type(x) is not int for x in obj):
        raise InputError(f"{what} must be a list of integers")
    return obj


def fan_from_dict(data) -> Fan:
    if not isinstance(data, dict):
        raise InputError("fan must be a JSON object")
    missing = {"name", "dim", "rays", "max_cones"} - set(data)
    if missing:
        raise InputError(f"fan is missing fields: {sorted(missing)}")
    extra = set(data) - {"name", "dim", "rays", "max_cones"}
    if extra:
        raise InputError(f"unexpected fan fields: {sorted(extra)}")
    if not isinstance(data["name"], str):
        raise InputError("name must be a string")
    if type(data["dim"]) is not int:
        raise InputError("dim must be an integer")
    if not isinstance(data["rays"], list) or not isinstance(data["max_cones"], list):
        raise InputError("rays and max_cones must be lists")
    rays = [tuple(_int_list(v, "ray")) for v in data["rays"]]
    cones = [tuple(_int_list(c, "cone")) for c in data["max_cones"]]
    return Fan(data["name"], data["dim"], tuple(rays), tuple(cones))


def parse_fan(text: str) -> Fan:
    """Parse the JSON fan format; trailing data and NaN/Infinity are rejected."""
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid fan JSON: {exc}") from None
    return fan_from_dict(data)


def fan_to_dict(fan: Fan) -> dict:
    return {
        "name": fan.name,
        "dim": fan.dim,
        "rays": [list(v) for v in fan.rays],
        "max_cones": [sorted(c) for c in fan.max_cones],
    }


def serialize_fan(fan: Fan) -> str:
    """Canonical text form: fixed key order, one field per line, cones sorted."""
    d = fan_to_dict(fan)
    return (
        "{\n"
        f'  "name": {json.dumps(d["name"])},\n'
        f'  "dim": {d["dim"]},\n'
        f'  "rays": {json.dumps(d["rays"])},\n'
        f'  "max_cones": {json.dumps(d["max_cones"])}\n'
        "}\n"
    )


def load_fan(source: Union[str, Path]) -> Fan:
    """Catalog name or path to a fan file."""
    path = Path(source)
    if path.is_file():
        return parse_fan(path.read_text(encoding="utf-8"))
    try:
        return catalog(str(source))
    except InputError:
        raise InputError(f"{source!r} is neither a fan file nor a catalog name") from None
