"""Primitive collections and the exceptional set Y of the Cox quotient."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from .fan import Fan


@dataclass(frozen=True)
class PrimitiveCollection:
    ray_indices: tuple[int, ...]

    def __len__(self):
        return len(self.ray_indices)

    def __str__(self):
        return "{" + ",".join(map(str, self.ray_indices)) + "}"


@dataclass(frozen=True)
class YDecomposition:
    """Y as a union of coordinate subspaces, one per primitive collection."""

    strata: tuple[PrimitiveCollection, ...]
    k: Optional[int]
    y_complex_dim: Optional[int]

    def to_dict(self) -> dict:
        return {
            "strata": [list(s.ray_indices) for s in self.strata],
            "k": self.k,
            "y_complex_dim": self.y_complex_dim,
        }


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _cone_masks(fan: Fan) -> list[int]:
    return [_mask(c) for c in fan.max_cones]


def in_some_cone(fan: Fan, indices: Iterable[int]) -> bool:
    s = _mask(indices)
    return any(s & c == s for c in _cone_masks(fan))


@lru_cache(maxsize=256)
def primitive_collections(fan: Fan) -> YDecomposition:
    """Inclusion-minimal sets of rays that do not lie in a common cone.

    Subsets are visited by increasing size; supersets of a collection already
    found are skipped, so every non-face reached is automatically minimal.
    """
    cones = _cone_masks(fan)
    found: list[int] = []
    strata = []
    for size in range(1, fan.r + 1):
        for combo in combinations(range(fan.r), size):
            s = _mask(combo)
            if any(f & s == f for f in found):
                continue
            if not any(s & c == s for c in cones):
                found.append(s)
                strata.append(PrimitiveCollection(combo))
    k = min((len(s) for s in strata), default=None)
    return YDecomposition(tuple(strata), k, None if k is None else fan.r - k)


def y_membership_oracle(fan: Fan, zero_pattern: Iterable[int]) -> bool:
    """Is the point with exactly ``zero_pattern`` coordinates zero inside Y?

    Uses the cone monomials directly: x^sigma, the product of the coordinates
    of rays outside sigma, must vanish for every max cone sigma (which covers
    all cones, since faces have larger complements).
    """
    z = set(zero_pattern)
    everything = set(range(fan.r))
    return all(z & (everything - set(cone)) for cone in fan.max_cones)


def y_membership_from_collections(fan: Fan, zero_pattern: Iterable[int]) -> bool:
    z = _mask(zero_pattern)
    return any(_mask(s.ray_indices) & z == _mask(s.ray_indices)
               for s in primitive_collections(fan).strata)
