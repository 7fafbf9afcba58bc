"""Class group grading of the Cox ring and the group G."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InputError
from .fan import Fan
from .lattice import integer_kernel, matvec, snf, solve_integral


@dataclass(frozen=True)
class ClassGroup:
    """Cokernel of ``M -> Z^r``, ``m |-> (<n_i, m>)_i``.

    ``projection`` maps an exponent vector in Z^r to class coordinates: one
    row per torsion factor (read modulo that factor) followed by ``rank``
    free rows.
    """

    rank: int
    invariant_factors: tuple[int, ...]
    projection: tuple[tuple[int, ...], ...]

    def __str__(self):
        parts = [f"Z/{t}" for t in self.invariant_factors]
        if self.rank or not parts:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts)

    def project(self, a: Sequence[int]) -> tuple[int, ...]:
        coords = matvec(self.projection, a)
        t = len(self.invariant_factors)
        return tuple([c % s for c, s in zip(coords[:t], self.invariant_factors)] + coords[t:])

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "torsion": list(self.invariant_factors),
            "projection": [list(r) for r in self.projection],
        }


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple[int, ...]


@lru_cache(maxsize=256)
def class_group(fan: Fan) -> ClassGroup:
    res = snf(fan.ray_matrix())
    torsion_rows = [(i, s) for i, s in enumerate(res.invariant_factors) if s > 1]
    rows = [tuple(res.U[i]) for i, _ in torsion_rows]
    rows += [tuple(res.U[i]) for i in range(res.rank, fan.r)]
    return ClassGroup(
        rank=fan.r - res.rank,
        invariant_factors=tuple(s for _, s in torsion_rows),
        projection=tuple(rows),
    )


def degree(fan: Fan, exponents: Sequence[int]) -> DivisorClass:
    """Class of the monomial prod x_i^{a_i} in A_{n-1}(X)."""
    if len(exponents) != fan.r:
        raise InputError(f"exponent vector must have length {fan.r}")
    return DivisorClass(class_group(fan).project(exponents))


def same_degree(fan: Fan, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether a - b = (<n_i, m>)_i for some lattice vector m."""
    if len(a) != fan.r or len(b) != fan.r:
        raise InputError(f"exponent vectors must have length {fan.r}")
    return solve_integral(fan.ray_matrix(), [x - y for x, y in zip(a, b)]) is not None


def _check_degrees(fan: Fan, d: Sequence[int]) -> None:
    if len(d) != fan.r:
        raise InputError(f"multidegree must have length {fan.r}, got {len(d)}")
    if any(x < 0 for x in d):
        raise InputError(f"multidegree entries must be nonnegative: {list(d)}")


def ray_combination(fan: Fan, d: Sequence[int]) -> list[int]:
    """sum_i d_i n_i in Z^n."""
    return [sum(di * v[j] for di, v in zip(d, fan.rays)) for j in range(fan.dim)]


def valid_morphism_degree(fan: Fan, d: Sequence[int]) -> bool:
    _check_degrees(fan, d)
    return not any(ray_combination(fan, d))


def _power_product(mu: Sequence[Fraction], exps: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for x, e in zip(mu, exps):
        if e:
            out *= x ** e
    return out


def g_membership(fan: Fan, mu: Sequence) -> bool:
    """prod_i mu_i^{<n_i, e_j>} == 1 for every basis vector e_j of M."""
    if len(mu) != fan.r:
        raise InputError(f"mu must have length {fan.r}")
    mu = [Fraction(x) for x in mu]
    if any(x == 0 for x in mu):
        raise InputError("G elements have nonzero entries")
    return all(_power_product(mu, [v[j] for v in fan.rays]) == 1 for j in range(fan.dim))


def g_element_from_character(cg: ClassGroup, lam: Sequence) -> tuple[Fraction, ...]:
    """mu_i = prod_k lam_k^{P_{k i}} for the free part of the projection P.

    Every such mu lies in G because P kills the image of M.
    """
    free_rows = cg.projection[len(cg.invariant_factors):]
    if len(lam) != len(free_rows):
        raise InputError(f"need {len(free_rows)} character values")
    r = len(free_rows[0]) if free_rows else 0
    lam = [Fraction(x) for x in lam]
    return tuple(_power_product(lam, [row[i] for row in free_rows]) for i in range(r))


def extends_to_g(fan: Fan, partial: dict[int, Fraction]) -> bool:
    """Can the fixed entries ``partial`` be completed to an element of G?

    Free coordinates range over C*.  The image of the free coordinates under
    the torus map is cut out by the characters v with <n_i, v> = 0 on every
    free index, so the fixed part must satisfy prod mu_i^{<n_i, v>} = 1 for
    a Z-basis of those v.
    """
    free = [i for i in range(fan.r) if i not in partial]
    if any(Fraction(x) == 0 for x in partial.values()):
        raise InputError("G elements have nonzero entries")
    rows = [list(fan.rays[i]) for i in free]
    basis = integer_kernel(rows, ncols=fan.dim)
    fixed = sorted(partial)
    mus = [Fraction(partial[i]) for i in fixed]
    for v in basis:
        exps = [sum(a * b for a, b in zip(fan.rays[i], v)) for i in fixed]
        if _power_product(mus, exps) != 1:
            return False
    return True
