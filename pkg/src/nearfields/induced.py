"""Operations transported through a bijection, and the exotic addition on Q.

A bijection sigma from a carrier onto a target ring pulls the target's
operations back: alpha (+) beta = sigma^-1(sigma(alpha) + sigma(beta)), and
likewise for multiplication. With sigma the prime-correspondence bijection
from maps, the pullback of addition on the quadratic field gives a new
addition on Q that keeps the native multiplication (sigma is multiplicative)
yet makes Q a field isomorphic to the quadratic one. That addition is
exotic_add_q.

Everything here is exact. Evaluating the exotic addition costs two rational
factorizations and one quadratic-integer factorization, so operand sizes are
guarded by ceilings and overruns raise ResourceLimitError rather than churn.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .errors import ResourceLimitError
from .maps import PrimeCorrespondence, default_correspondence, sigma_apply, sigma_invert
from .quadratic import QuadInt, QuadRat
from .rationals import Rat
from .report import Report

__all__ = [
    "InducedStructure",
    "induced_add",
    "induced_mul",
    "induced_neg",
    "exotic_structure",
    "exotic_add_q",
    "exotic_neg_q",
    "StructureOps",
    "check_ringisom",
    "find_add_witness",
    "verify_exotic_field_axioms",
    "DEFAULT_SUM_NORM_CEILING",
]

DEFAULT_SUM_NORM_CEILING = 10**12


@dataclass
class InducedStructure:
    """A carrier with operations pulled back through a bijection.

    forward/backward are the bijection and its inverse; add, mul, neg and
    the constants live on the target side. The induced zero and one are
    backward images of the target constants.
    """

    name: str
    forward: Callable[[Any], Any]
    backward: Callable[[Any], Any]
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    target_zero: Any
    target_one: Any

    def zero(self):
        return self.backward(self.target_zero)

    def one(self):
        return self.backward(self.target_one)

    def self_check(self, samples) -> Report:
        rep = Report(f"induced structure on {self.name}")
        bad = None
        for x in samples:
            if self.backward(self.forward(x)) != x:
                bad = x
                break
        rep.add("round_trip", bad is None, witness=bad)
        rep.add("zero_fixed", self.forward(self.zero()) == self.target_zero)
        rep.add("one_fixed", self.forward(self.one()) == self.target_one)
        return rep


def induced_add(s: InducedStructure, alpha, beta):
    return s.backward(s.add(s.forward(alpha), s.forward(beta)))


def induced_mul(s: InducedStructure, alpha, beta):
    return s.backward(s.mul(s.forward(alpha), s.forward(beta)))


def induced_neg(s: InducedStructure, alpha):
    return s.backward(s.neg(s.forward(alpha)))


def _guarded_invert(
    corr: PrimeCorrespondence, x: QuadRat, norm_ceiling: int, trial_cap: int | None
) -> Fraction:
    n = x.norm()
    if abs(n.numerator) > norm_ceiling or n.denominator > norm_ceiling:
        raise ResourceLimitError(
            f"sum image has norm {n}, above the ceiling {norm_ceiling}",
            ceiling=norm_ceiling,
        )
    return sigma_invert(corr, x, trial_cap=trial_cap)


def exotic_add_q(
    alpha: Rat | int,
    beta: Rat | int,
    *,
    corr: PrimeCorrespondence | None = None,
    norm_ceiling: int = DEFAULT_SUM_NORM_CEILING,
    trial_cap: int | None = None,
) -> Fraction:
    """The exotic sum: sigma^-1(sigma(alpha) + sigma(beta)), exactly.

    Raises ResourceLimitError when the image sum is too large to factor
    (norm over norm_ceiling) or involves a prime outside the extendable
    correspondence range; the exception carries the ceiling hit.
    """
    corr = corr if corr is not None else default_correspondence()
    a, b = Fraction(alpha), Fraction(beta)
    if a == 0:
        return b
    if b == 0:
        return a
    s = sigma_apply(corr, a) + sigma_apply(corr, b)
    if s.is_zero():
        return Fraction(0)
    return _guarded_invert(corr, s, norm_ceiling, trial_cap)


def exotic_neg_q(alpha: Rat | int) -> Fraction:
    """The additive inverse for the exotic sum is the usual negation,
    because sigma is odd (it fixes -1 and is multiplicative)."""
    return -Fraction(alpha)


def exotic_structure(
    corr: PrimeCorrespondence | None = None,
    *,
    norm_ceiling: int = DEFAULT_SUM_NORM_CEILING,
    trial_cap: int | None = None,
) -> InducedStructure:
    """(Q, exotic addition, native multiplication) as an InducedStructure."""
    corr = corr if corr is not None else default_correspondence()
    return InducedStructure(
        name="Q with exotic addition",
        forward=lambda q: sigma_apply(corr, q),
        backward=lambda x: _guarded_invert(corr, x, norm_ceiling, trial_cap),
        add=lambda x, y: x + y,
        mul=lambda x, y: x * y,
        neg=lambda x: QuadRat(QuadInt(0, 0)) - x,
        target_zero=QuadRat(QuadInt(0, 0)),
        target_one=QuadRat(QuadInt(1, 0)),
    )


@dataclass(frozen=True)
class StructureOps:
    """Just enough of a near-ring to feed the isomorphism checker."""

    name: str
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]


def check_ringisom(
    phi: Callable[[Any], Any],
    phi_inv: Callable[[Any], Any],
    src: StructureOps,
    dst: StructureOps,
    sampler: Callable[[Any], Any],
    trials: int,
    *,
    rng,
    max_skips: int = 10_000,
) -> Report:
    """Evaluate three equivalent renderings of "phi is an isomorphism" on
    sampled pairs, each independently, and check the verdicts agree.

    1. phi respects both operations.
    2. phi respects multiplication, and src addition equals the
       phi-pullback of dst addition.
    3. phi respects addition, and src multiplication equals the
       phi-pullback of dst multiplication.

    Samples that overrun a resource ceiling are skipped and redrawn, up to
    max_skips; the skip count lands in the report.
    """
    verdicts = {1: True, 2: True, 3: True}
    witnesses: dict[int, tuple | None] = {1: None, 2: None, 3: None}
    done = skips = 0
    while done < trials:
        a, b = sampler(rng), sampler(rng)
        try:
            fa, fb = phi(a), phi(b)
            sa, sm = src.add(a, b), src.mul(a, b)
            da, dm = dst.add(fa, fb), dst.mul(fa, fb)
            c1 = phi(sa) == da and phi(sm) == dm
            c2 = phi(sm) == dm and sa == phi_inv(da)
            c3 = phi(sa) == da and sm == phi_inv(dm)
        except ResourceLimitError:
            skips += 1
            if skips > max_skips:
                raise
            continue
        for i, ok in zip((1, 2, 3), (c1, c2, c3)):
            if not ok and verdicts[i]:
                verdicts[i] = False
                witnesses[i] = (a, b)
        done += 1
    rep = Report(f"isomorphism check: {src.name} -> {dst.name}")
    rep.add("full_isomorphism", verdicts[1], witness=witnesses[1])
    rep.add("multiplicative_and_induced_add", verdicts[2], witness=witnesses[2])
    rep.add("additive_and_induced_mul", verdicts[3], witness=witnesses[3])
    agree = len(set(verdicts.values())) == 1
    rep.add("conditions_agree", agree, witness=None if agree else dict(verdicts))
    rep.counts["pairs"] = done
    rep.counts["skipped"] = skips
    return rep


def find_add_witness(
    limit: int = 20, *, corr: PrimeCorrespondence | None = None
) -> tuple[int, int, Fraction, Fraction] | None:
    """First integer pair (by growing square rings, then lexicographic)
    where the exotic sum differs from the native one.

    Returns (a, b, exotic, native). Scan order is deterministic so reports
    are reproducible.
    """
    for radius in range(1, limit + 1):
        ring = []
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                if max(abs(a), abs(b)) == radius and a != 0 and b != 0:
                    ring.append((a, b))
        for a, b in sorted(ring):
            try:
                got = exotic_add_q(a, b, corr=corr)
            except ResourceLimitError:
                continue
            if got != a + b:
                return a, b, got, Fraction(a + b)
    return None


def _rand_rat(rng, height: int) -> Fraction:
    return Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, height + 1)))


def verify_exotic_field_axioms(
    *,
    trials: int = 1000,
    height: int = 10**4,
    seed: int = 0,
    corr: PrimeCorrespondence | None = None,
    norm_ceiling: int = DEFAULT_SUM_NORM_CEILING,
    assoc_pool_height: int = 12,
    floors: dict[str, int] | None = None,
) -> Report:
    """Field-axiom suite for (Q, exotic +, native *) on seeded random triples.

    Two tiers. Every axiom is decided exactly for every triple on the image
    side: sigma is a bijection (round-tripped here on every sampled value),
    so an identity holds for the exotic operations iff it holds for the
    images in the quadratic field, where the arithmetic is cheap. On top of
    that, identities are re-verified through full materialized exotic sums
    wherever the factorizations fit the resource ceilings, with floors on
    how many times each materialized form must actually fire; sums whose
    image leaves the correspondence range are counted, not ignored.
    """
    corr = corr if corr is not None else default_correspondence()
    floors = dict(floors or {})
    rng = np.random.default_rng(seed)
    triples = [tuple(_rand_rat(rng, height) for _ in range(3)) for _ in range(trials)]

    rep = Report("exotic field axioms on Q")
    rep.counts["trials"] = trials

    # Tier one: exact decisions via images.
    bad_rt = bad_assoc = bad_comm = bad_dist = None
    for alpha, beta, gamma in triples:
        A, B, C = (sigma_apply(corr, x) for x in (alpha, beta, gamma))
        if sigma_invert(corr, A) != alpha and bad_rt is None:
            bad_rt = alpha
        if (A + B) + C != A + (B + C):
            bad_assoc = bad_assoc or (alpha, beta, gamma)
        if A + B != B + A:
            bad_comm = bad_comm or (alpha, beta)
        if C * (A + B) != C * A + C * B or (A + B) * C != A * C + B * C:
            bad_dist = bad_dist or (alpha, beta, gamma)
    rep.add("sigma_round_trip", bad_rt is None, witness=bad_rt)
    rep.add("associativity_image", bad_assoc is None, witness=bad_assoc)
    rep.add("commutativity_image", bad_comm is None, witness=bad_comm)
    rep.add("distributivity_image", bad_dist is None, witness=bad_dist)

    # Tier two: materialized identities. Zero, negation and the doubling
    # identity never leave the correspondence range at these heights; the
    # cross-order and distributivity re-checks can, so they carry floors.
    two_box = exotic_add_q(1, 1, corr=corr)
    bad_zero = bad_neg = bad_double = None
    comm_hits = comm_skips = 0
    bad_comm_mat = None
    dist_hits = dist_skips = 0
    bad_dist_mat = None
    for alpha, beta, gamma in triples:
        if exotic_add_q(alpha, 0, corr=corr) != alpha:
            bad_zero = bad_zero or alpha
        if exotic_add_q(alpha, -alpha, corr=corr) != 0:
            bad_neg = bad_neg or alpha
        if exotic_add_q(alpha, alpha, corr=corr) != two_box * alpha:
            bad_double = bad_double or alpha
        try:
            lhs = exotic_add_q(alpha, beta, corr=corr, norm_ceiling=norm_ceiling)
        except ResourceLimitError:
            comm_skips += 1
            dist_skips += 1
            continue
        comm_hits += 1
        if exotic_add_q(beta, alpha, corr=corr, norm_ceiling=norm_ceiling) != lhs:
            bad_comm_mat = bad_comm_mat or (alpha, beta)
        if gamma == 0:
            continue
        try:
            rhs = exotic_add_q(
                gamma * alpha, gamma * beta, corr=corr, norm_ceiling=norm_ceiling
            )
        except ResourceLimitError:
            dist_skips += 1
            continue
        dist_hits += 1
        if gamma * lhs != rhs:
            bad_dist_mat = bad_dist_mat or (alpha, beta, gamma)
    rep.add("zero_element", bad_zero is None, witness=bad_zero)
    rep.add("additive_inverse", bad_neg is None, witness=bad_neg)
    rep.add("doubling_identity", bad_double is None, witness=bad_double)
    rep.add("commutativity_materialized", bad_comm_mat is None, witness=bad_comm_mat)
    rep.add("distributivity_materialized", bad_dist_mat is None, witness=bad_dist_mat)
    rep.counts["materialized_commutativity"] = comm_hits
    rep.counts["materialized_distributivity"] = dist_hits
    rep.counts["skipped_commutativity"] = comm_skips
    rep.counts["skipped_distributivity"] = dist_skips

    # Materialized nested associativity on a small-height pool, where the
    # intermediate sums stay factorable.
    assoc_hits = assoc_skips = 0
    bad_assoc_mat = None
    for _ in range(trials):
        t = tuple(
            Fraction(int(rng.integers(-assoc_pool_height, assoc_pool_height + 1)))
            for _ in range(3)
        )
        try:
            left = exotic_add_q(exotic_add_q(t[0], t[1], corr=corr), t[2], corr=corr)
            right = exotic_add_q(t[0], exotic_add_q(t[1], t[2], corr=corr), corr=corr)
        except ResourceLimitError:
            assoc_skips += 1
            continue
        assoc_hits += 1
        if left != right:
            bad_assoc_mat = bad_assoc_mat or t
    rep.add("associativity_materialized", bad_assoc_mat is None, witness=bad_assoc_mat)
    rep.counts["materialized_associativity"] = assoc_hits
    rep.counts["skipped_associativity"] = assoc_skips

    for name, floor in floors.items():
        have = rep.counts.get(f"materialized_{name}", 0)
        rep.add(f"floor_{name}", have >= floor, detail=f"{have} >= {floor}")
    return rep
