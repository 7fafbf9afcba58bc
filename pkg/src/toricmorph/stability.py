"""Stability ranges and filtration dimension bookkeeping.

All quantities are integers.  Two routes to the stable range are kept apart
on purpose: ``stability_bound`` substitutes into the closed form, while
``stable_range_from_duality`` recovers it from the truncation dimension and
the duality index ``2N - l - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .errors import InputError
from .fan import Fan
from .grading import ray_combination, valid_morphism_degree
from .primitive import primitive_collections


@dataclass(frozen=True)
class BidegreeProfile:
    """Holomorphic degrees ``p`` and antiholomorphic degrees ``q`` per ray."""

    m: int
    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))
        if len(self.p) != len(self.q):
            raise InputError("p and q must have the same length")
        if any(x < 0 for x in self.p + self.q):
            raise InputError("bidegrees must be nonnegative")

    @property
    def p_min(self) -> int:
        return min(self.p)

    def is_map_valid(self, fan: Fan) -> bool:
        return not any(ray_combination(fan, [a - b for a, b in zip(self.p, self.q)]))

    def to_dict(self) -> dict:
        return {"m": self.m, "p": list(self.p), "q": list(self.q)}


@dataclass(frozen=True)
class FiltrationProfile:
    N: int
    r: int
    m: int
    k: int
    p_min: int
    per_l: tuple[tuple[int, int], ...]
    truncation_dim: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "r": self.r,
            "m": self.m,
            "k": self.k,
            "p_min": self.p_min,
            "per_l": [{"l": l + 1, "stratum_real_dim": s, "rl_config_dim": c}
                      for l, (s, c) in enumerate(self.per_l)],
            "truncation_dim": self.truncation_dim,
        }


@dataclass(frozen=True)
class StabilityReport:
    """``theorem_bound`` is strict: homology isomorphisms in dimensions below it."""

    k: Optional[int]
    m: int
    d_min: int
    theorem_bound: Optional[int]
    guest_bound: Optional[int]
    applicable: bool
    notes: tuple[str, ...] = field(default=())

    @property
    def largest_guaranteed_dim(self) -> Optional[int]:
        if not self.applicable or self.theorem_bound is None or self.theorem_bound <= 0:
            return None
        return self.theorem_bound - 1

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "d_min": self.d_min,
            "theorem_bound": self.theorem_bound,
            "largest_guaranteed_dim": self.largest_guaranteed_dim,
            "guest_bound": self.guest_bound,
            "applicable": self.applicable,
            "notes": list(self.notes),
        }


def theorem_bound_formula(d: int, k: int, m: int) -> int:
    return d * (2 * k - 2 * m - 1) - 1


def stability_bound(fan: Fan, m: int, degrees: Sequence[int]) -> StabilityReport:
    """Homology stability range of the degree-``degrees`` morphism space."""
    if m < 1:
        raise InputError("m must be >= 1")
    if not valid_morphism_degree(fan, degrees):
        raise InputError(f"degrees {list(degrees)} do not satisfy sum d_i n_i = 0")
    k = primitive_collections(fan).k
    d_min = min(degrees)
    guest = d_min if m == 1 else None
    if k is None or m >= k:
        return StabilityReport(k, m, d_min, None, guest, False,
                               (f"m = {m} is not below k = {k}; no bound asserted",))
    bound = theorem_bound_formula(d_min, k, m)
    notes = []
    if bound <= 0:
        notes.append("no range guaranteed")
    if guest is not None and bound < guest:
        notes.append(f"theorem bound {bound} is below the curve-case value {guest}")
    return StabilityReport(k, m, d_min, bound, guest, True, tuple(notes))


def polyspace_dim(m: int, p: int, q: int) -> int:
    """Complex dimension of (p,q)-forms in m+1 variables with fixed restriction.

    All (p,q)-monomials, minus those free of both z_m and its conjugate (their
    coefficients are pinned by the restriction to the hyperplane z_m = 0).
    """
    if m < 1 or p < 0 or q < 0:
        raise InputError("need m >= 1 and p, q >= 0")
    return comb(p + m, m) * comb(q + m, m) - comb(p + m - 1, m - 1) * comb(q + m - 1, m - 1)


def total_dim(profile: BidegreeProfile) -> int:
    return sum(polyspace_dim(profile.m, a, b) for a, b in zip(profile.p, profile.q))


def stratum_real_dim(N: int, r: int, l: int) -> int:
    """Real rank of the l-th filtration stratum as an affine bundle."""
    return 2 * (N - r * l) + l - 1


def rl_config_dim(l: int, m: int, r: int, k: int) -> int:
    """Dimension of configurations of l points in C^m labelled by Y."""
    return 2 * l * (m + r - k)


def truncation_dim(N: int, p: int, m: int, k: int) -> int:
    """Upper bound on the cells added when truncating after the p-th term."""
    return 2 * N + p * (2 * m - 2 * k + 1)


def filtration_profile(fan: Fan, profile: BidegreeProfile) -> FiltrationProfile:
    if len(profile.p) != fan.r:
        raise InputError(f"profile must have length {fan.r}")
    if profile.m < 1:
        raise InputError("m must be >= 1")
    if not profile.is_map_valid(fan):
        raise InputError("p - q does not satisfy sum (p_i - q_i) n_i = 0")
    k = primitive_collections(fan).k
    if k is None or profile.m >= k:
        raise InputError(f"m = {profile.m} is not below k = {k}")
    r, m = fan.r, profile.m
    N = total_dim(profile)
    p = profile.p_min
    per_l = tuple((stratum_real_dim(N, r, l), rl_config_dim(l, m, r, k)) for l in range(1, p + 1))
    t = truncation_dim(N, p, m, k)
    if p >= 1:
        s, c = per_l[-1]
        assert s + c + 1 == t, (s, c, t)
    return FiltrationProfile(N, r, m, k, p, per_l, t)


def stable_range_from_duality(fp: FiltrationProfile) -> int:
    """Cohomological stable range: degrees l with 2N - l - 1 > truncation_dim."""
    return 2 * fp.N - 1 - fp.truncation_dim


def stab_rank_shift(before: BidegreeProfile, after: BidegreeProfile,
                    fan: Optional[Fan] = None) -> int:
    """Thom-isomorphism degree shift 2 (N_after - N_before) of a stabilization."""
    if before.m != after.m or len(before.p) != len(after.p):
        raise InputError("profiles have different shapes")
    a = [y - x for x, y in zip(before.p, after.p)]
    if a != [y - x for x, y in zip(before.q, after.q)]:
        raise InputError("profiles are not related by a single step on p and q")
    if any(x < 0 for x in a):
        raise InputError("stabilization step entries must be nonnegative")
    if fan is not None and any(ray_combination(fan, a)):
        raise InputError(f"step {a} does not satisfy sum a_i n_i = 0")
    return 2 * (total_dim(after) - total_dim(before))
