"""Morphisms CP^m -> X as r-tuples of forms in Cox coordinates."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import InputError
from .fan import Fan, fan_from_dict, fan_to_dict, load_fan
from .grading import extends_to_g, valid_morphism_degree
from .poly import (DEFAULT_BUDGET, HomogPoly, gcd_forms, monomials, rational_roots,
                   vanishes_only_at_origin)
from .primitive import PrimitiveCollection, primitive_collections
from .stability import BidegreeProfile

MORPHISM = "morphism"
NOT_MORPHISM = "not_morphism"
UNKNOWN = "unknown"

CLEAR = "clear"
VIOLATED = "violated"


@dataclass(frozen=True)
class MorphismCandidate:
    fan: Fan
    m: int
    degrees: tuple[int, ...]
    polys: tuple[HomogPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "polys", tuple(self.polys))
        if self.m < 0:
            raise InputError("domain dimension m must be >= 0")
        if len(self.polys) != self.fan.r or len(self.degrees) != self.fan.r:
            raise InputError(f"need {self.fan.r} degrees and polynomials, one per ray")
        for i, (p, d) in enumerate(zip(self.polys, self.degrees)):
            if p.nvars != self.m + 1:
                raise InputError(f"polynomial {i} has {p.nvars} variables, expected {self.m + 1}")
            if p.degree != d:
                raise InputError(f"polynomial {i} has degree {p.degree}, expected {d}")
        if not valid_morphism_degree(self.fan, self.degrees):
            raise InputError(f"degrees {list(self.degrees)} do not satisfy sum d_i n_i = 0")

    def scaled(self, mu: Sequence) -> "MorphismCandidate":
        """The candidate g . (P_i) for a tuple of scalars g."""
        if len(mu) != self.fan.r:
            raise InputError("scaling vector has the wrong length")
        polys = tuple(p.scale(Fraction(x)) for p, x in zip(self.polys, mu))
        return MorphismCandidate(self.fan, self.m, self.degrees, polys)

    def to_dict(self) -> dict:
        return {
            "fan": fan_to_dict(self.fan),
            "m": self.m,
            "degrees": list(self.degrees),
            "polynomials": [p.to_json() for p in self.polys],
        }


@dataclass
class CollectionCheck:
    collection: PrimitiveCollection
    status: str
    witness: Optional[tuple[Fraction, ...]] = None
    common_factor: Optional[HomogPoly] = None

    def to_dict(self) -> dict:
        return {
            "collection": list(self.collection.ray_indices),
            "status": self.status,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "common_factor": None if self.common_factor is None else str(self.common_factor),
        }


@dataclass
class Verdict:
    status: str
    per_collection: list[CollectionCheck] = field(default_factory=list)
    witness: Optional[tuple[Fraction, ...]] = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "per_collection": [c.to_dict() for c in self.per_collection],
            "witness": None if self.witness is None else [str(x) for x in self.witness],
        }


@dataclass(frozen=True)
class StabilizationStep:
    a: tuple[int, ...]


def _unit_point(nvars: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == 0)) for i in range(nvars))


def _check_collection(polys: list[HomogPoly], nvars: int, budget: int) -> CollectionCheck:
    """Common zero of ``polys`` away from the origin?  (collection filled in later)"""
    nonzero = [p for p in polys if p]
    if any(p.is_constant() for p in nonzero):
        return CollectionCheck(None, CLEAR)
    if not nonzero:
        return CollectionCheck(None, VIOLATED, _unit_point(nvars))
    if nvars == 1:
        return CollectionCheck(None, CLEAR)
    if nvars == 2:
        h = gcd_forms(nonzero)
        if h.degree == 0:
            return CollectionCheck(None, CLEAR)
        roots = rational_roots(h)
        pt = tuple(Fraction(x) for x in roots[0]) if roots else None
        return CollectionCheck(None, VIOLATED, pt, h)
    res = vanishes_only_at_origin(nonzero, budget)
    if res.status == "yes":
        return CollectionCheck(None, CLEAR)
    if res.status == "no":
        return CollectionCheck(None, VIOLATED, res.witness_point)
    return CollectionCheck(None, UNKNOWN)


def verify(c: MorphismCandidate, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Check that the tuple never lands in Y, one primitive collection at a time.

    For m = 1 the test is exact via binary gcds; for m >= 2 it goes through
    the Groebner zero test and may come back unknown when ``budget`` runs out.
    """
    checks = []
    for coll in primitive_collections(c.fan).strata:
        chk = _check_collection([c.polys[i] for i in coll.ray_indices], c.m + 1, budget)
        chk.collection = coll
        if chk.witness is not None:
            assert all(c.polys[i].evaluate(chk.witness) == 0 for i in coll.ray_indices)
        checks.append(chk)
    if any(ch.status == VIOLATED for ch in checks):
        status = NOT_MORPHISM
    elif all(ch.status == CLEAR for ch in checks):
        status = MORPHISM
    else:
        status = UNKNOWN
    witness = next((ch.witness for ch in checks
                    if ch.status == VIOLATED and ch.witness is not None), None)
    return Verdict(status, checks, witness)


def proportionality(p: HomogPoly, q: HomogPoly) -> Optional[Fraction]:
    """The scalar mu with p = mu * q, or None.  Both polynomials must be nonzero."""
    if set(p.terms) != set(q.terms):
        return None
    ratios = {p.terms[e] / q.terms[e] for e in p.terms}
    return ratios.pop() if len(ratios) == 1 else None


def same_morphism(c1: MorphismCandidate, c2: MorphismCandidate) -> bool:
    """Is c1 = g . c2 for some g in G?

    Indices where both polynomials vanish leave mu_i free; those are handled
    by asking whether the determined entries extend to an element of G.
    """
    if c1.fan != c2.fan or c1.m != c2.m or c1.degrees != c2.degrees:
        raise InputError("candidates must share fan, m and degrees")
    partial = {}
    for i, (p, q) in enumerate(zip(c1.polys, c2.polys)):
        if not p and not q:
            continue
        if not p or not q:
            return False
        mu = proportionality(p, q)
        if mu is None:
            return False
        partial[i] = mu
    return extends_to_g(c1.fan, partial)


def sample(fan: Fan, m: int, degrees: Sequence[int], bound: int = 9,
           seed: int = 0) -> MorphismCandidate:
    """Random candidate with integer coefficients uniform in [-bound, bound].

    All-zero polynomials are redrawn.  Same arguments, same candidate.
    """
    if bound < 1:
        raise InputError("coefficient bound must be >= 1")
    if not valid_morphism_degree(fan, degrees):
        raise InputError(f"degrees {list(degrees)} do not satisfy sum d_i n_i = 0")
    rng = random.Random(seed)
    polys = []
    for d in degrees:
        monos = list(monomials(m + 1, d))
        while True:
            coeffs = [rng.randint(-bound, bound) for _ in monos]
            if any(coeffs):
                break
        polys.append(HomogPoly(m + 1, d, dict(zip(monos, coeffs))))
    return MorphismCandidate(fan, m, tuple(degrees), tuple(polys))


def check_step(fan: Fan, step: Union[StabilizationStep, Sequence[int]]) -> StabilizationStep:
    a = tuple(step.a if isinstance(step, StabilizationStep) else step)
    if len(a) != fan.r:
        raise InputError(f"stabilization step must have length {fan.r}")
    if any(x < 0 for x in a):
        raise InputError("stabilization step entries must be nonnegative")
    if not valid_morphism_degree(fan, a):
        raise InputError(f"step {list(a)} does not satisfy sum a_i n_i = 0")
    return StabilizationStep(a)


def stabilize_profile(c: MorphismCandidate,
                      step: Union[StabilizationStep, Sequence[int]]) -> BidegreeProfile:
    """Bidegrees of (|z|^{2a_i} P_i): holomorphic d + a, antiholomorphic a."""
    a = check_step(c.fan, step).a
    return BidegreeProfile(
        c.m,
        tuple(d + x for d, x in zip(c.degrees, a)),
        tuple(a),
    )


# -- JSON ---------------------------------------------------------------------

def morphism_from_dict(data, fan: Optional[Fan] = None,
                       base: Optional[Path] = None) -> MorphismCandidate:
    """Build a candidate from the morphism JSON object.

    ``fan`` overrides the file's own "fan" entry, which may be an inline fan
    object, a catalog name, or a path (resolved against ``base``).
    """
    if not isinstance(data, dict):
        raise InputError("morphism must be a JSON object")
    for key in ("m", "degrees", "polynomials"):
        if key not in data:
            raise InputError(f"morphism is missing {key!r}")
    if fan is None:
        src = data.get("fan")
        if src is None:
            raise InputError("no fan given")
        if isinstance(src, dict):
            fan = fan_from_dict(src)
        elif isinstance(src, str):
            path = Path(src)
            if base is not None and not path.is_absolute() and (base / path).is_file():
                path = base / path
            fan = load_fan(path if path.is_file() else src)
        else:
            raise InputError("fan must be an object or a string")
    m, degrees, polys = data["m"], data["degrees"], data["polynomials"]
    if type(m) is not int:
        raise InputError("m must be an integer")
    if not isinstance(degrees, list) or any(type(d) is not int for d in degrees):
        raise InputError("degrees must be a list of integers")
    if not isinstance(polys, list) or len(polys) != len(degrees):
        raise InputError("need one polynomial per degree")
    forms = tuple(HomogPoly.from_json(p, nvars=m + 1, degree=d) for p, d in zip(polys, degrees))
    return MorphismCandidate(fan, m, tuple(degrees), forms)


def load_morphism(path: Union[str, Path], fan: Optional[Fan] = None) -> MorphismCandidate:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid morphism JSON in {path}: {exc}") from None
    return morphism_from_dict(data, fan=fan, base=path.parent)
