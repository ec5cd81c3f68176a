"""The near-field-addition-map calculus.

An addition on a scalar group is recoverable from the single unary map
rho(alpha) = 1 + alpha: for nonzero alpha the sum is
alpha * rho(alpha^-1 * beta), and rho itself is pinned down by four axioms
(identity, inverse, abelian, associative). This module hosts rho maps over
both finite fields (fully tabulated) and Q (lazy function objects), the
round trip between rho and its addition, repeated addition, the
characteristic map chi(n) = sgn(n) * rho^|n|(0) with its prime subfield,
and the left-distributivity criterion for an addition pulled back through
a bijection of a finite field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .errors import DomainError, IntegrityError, ResourceLimitError
from .finite import FiniteField
from .kernels import left_distrib_witness
from .rationals import is_prime
from .report import Report

__all__ = [
    "Carrier",
    "field_carrier",
    "rational_carrier",
    "RhoMap",
    "rho_from_add",
    "add_from_rho",
    "verify_rho_axioms",
    "repeated_add_check",
    "CharMapResult",
    "char_map",
    "check_bij_plus",
]


@dataclass(frozen=True)
class Carrier:
    """A scalar group: multiplication with 0, 1, -1, inverses, negation.

    Finite carriers list their elements (table indices); infinite ones set
    elements to None and rely on samplers supplied at check time.
    """

    name: str
    zero: Any
    one: Any
    minus_one: Any
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    neg: Callable[[Any], Any]
    elements: tuple | None = None

    @property
    def is_finite(self) -> bool:
        return self.elements is not None


def field_carrier(field: FiniteField) -> Carrier:
    return Carrier(
        name=f"F{field.m}",
        zero=field.zero,
        one=field.one,
        minus_one=field.minus_one,
        mul=lambda a, b: int(field.mul[a, b]),
        inv=lambda a: int(field.inv[a]),
        neg=lambda a: int(field.neg[a]),
        elements=tuple(range(field.m)),
    )


def rational_carrier() -> Carrier:
    return Carrier(
        name="Q",
        zero=Fraction(0),
        one=Fraction(1),
        minus_one=Fraction(-1),
        mul=lambda a, b: a * b,
        inv=lambda a: 1 / a,
        neg=lambda a: -a,
    )


@dataclass(frozen=True)
class RhoMap:
    """rho together with its carrier; finite carriers carry a full table."""

    carrier: Carrier
    fn: Callable[[Any], Any]
    table: np.ndarray | None = None

    def __post_init__(self):
        if self.table is not None:
            self.table.flags.writeable = False

    def __call__(self, alpha):
        if self.table is not None:
            return int(self.table[alpha])
        return self.fn(alpha)


def rho_from_add(carrier: Carrier, add: Callable[[Any, Any], Any]) -> RhoMap:
    """rho(alpha) = 1 + alpha, tabulated when the carrier is finite."""
    fn = lambda alpha: add(carrier.one, alpha)
    table = None
    if carrier.is_finite:
        table = np.array([add(carrier.one, x) for x in carrier.elements], dtype=np.int64)
    return RhoMap(carrier, fn, table)


def add_from_rho(r: RhoMap) -> Callable[[Any, Any], Any]:
    """The addition alpha (+) beta = alpha * rho(alpha^-1 * beta)."""
    c = r.carrier

    def add(alpha, beta):
        if alpha == c.zero:
            return beta
        return c.mul(alpha, r(c.mul(c.inv(alpha), beta)))

    return add


def _pairs_for(r: RhoMap, sampler, trials: int, rng):
    c = r.carrier
    if c.is_finite:
        for a in c.elements:
            for b in c.elements:
                yield a, b
    else:
        for _ in range(trials):
            yield sampler(rng), sampler(rng)


def verify_rho_axioms(
    r: RhoMap,
    *,
    sampler=None,
    trials: int = 300,
    rng=None,
    max_skips: int = 10_000,
) -> Report:
    """The four defining properties, plus bijectivity with its inverse
    formula, plus commutativity of the induced addition.

    Commutativity already follows from the four properties; it is checked
    anyway as a cheap cross-validation of the derivation.
    """
    c = r.carrier
    if not c.is_finite and sampler is None:
        raise DomainError("infinite carriers need a sampler")
    rep = Report(f"rho axioms on {c.name}")
    rep.add("identity_property", r(c.zero) == c.one)
    rep.add("inverse_property", r(c.minus_one) == c.zero)

    add = add_from_rho(r)
    bad3 = bad4 = bad_inv = bad_comm = None
    checked = skips = 0
    for a, b in _pairs_for(r, sampler, trials, rng):
        try:
            if a != c.zero and r(c.inv(a)) != c.mul(c.inv(a), r(a)) and bad3 is None:
                bad3 = a
            if a != c.zero and b != c.zero and bad4 is None:
                lhs = r(c.mul(a, r(b)))
                rhs = c.mul(a, r(c.mul(b, r(c.inv(c.mul(a, b))))))
                if lhs != rhs:
                    bad4 = (a, b)
            if r(c.neg(r(c.neg(a)))) != a and bad_inv is None:
                bad_inv = a
            if add(a, b) != add(b, a) and bad_comm is None:
                bad_comm = (a, b)
        except ResourceLimitError:
            skips += 1
            if skips > max_skips:
                raise
            continue
        checked += 1
    rep.add("abelian_property", bad3 is None, witness=bad3)
    rep.add("associative_property", bad4 is None, witness=bad4)
    rep.add("inverse_formula", bad_inv is None, witness=bad_inv)
    rep.add(
        "induced_add_commutative",
        bad_comm is None,
        witness=bad_comm,
        detail="follows from the four properties; cross-checked anyway",
    )
    if c.is_finite:
        rep.add(
            "bijective",
            sorted(int(v) for v in r.table) == list(range(len(c.elements))),
        )
    rep.counts["pairs"] = checked
    rep.counts["skipped"] = skips
    return rep


def repeated_add_check(r: RhoMap, alpha, n: int) -> tuple[bool, Any, Any]:
    """Compare the n-fold sum of alpha with alpha * rho^n(0)."""
    if n < 1:
        raise DomainError("n must be at least 1")
    c = r.carrier
    add = add_from_rho(r)
    acc = alpha
    for _ in range(n - 1):
        acc = add(acc, alpha)
    power = c.zero
    for _ in range(n):
        power = r(power)
    rhs = c.mul(alpha, power)
    return acc == rhs, acc, rhs


@dataclass
class CharMapResult:
    characteristic: int
    table: list[tuple[int, Any]]
    prime_subfield: tuple
    evidence_bounded: bool
    report: Report

    def chi(self, n: int):
        for k, v in self.table:
            if k == n:
                return v
        raise DomainError(f"{n} outside the tabulated range")


def char_map(
    r: RhoMap,
    bound: int,
    *,
    ring_hom_cap: int = 4000,
    seed: int = 0,
) -> CharMapResult:
    """Tabulate chi(n) = sgn(n) rho^|n|(0) for |n| <= bound and analyze it.

    The characteristic is the least n > 0 with chi(n) = 0 when one exists
    within the bound (it must then be prime), otherwise 0 with the
    evidence_bounded flag raised. chi is verified to be additive and
    multiplicative on the tabulated range, exhaustively when the number of
    in-range pairs is at most ring_hom_cap, on a seeded sample otherwise.
    Finite carriers additionally get the prime-subfield checks: the chi
    image is a commutative multiplicative subgroup distributing over the
    induced addition on both sides, and the field order is a power of the
    characteristic.
    """
    if bound < 2:
        raise DomainError("bound must be at least 2")
    c = r.carrier
    rep = Report(f"characteristic map on {c.name}")
    pos = [c.zero]
    for _ in range(bound):
        pos.append(r(pos[-1]))
    chi = {n: pos[n] for n in range(bound + 1)}
    chi.update({-n: c.neg(pos[n]) for n in range(1, bound + 1)})
    table = sorted(chi.items())

    characteristic = 0
    for n in range(1, bound + 1):
        if pos[n] == c.zero:
            characteristic = n
            break
    if characteristic:
        if not is_prime(characteristic):
            raise IntegrityError(
                f"smallest vanishing index {characteristic} is not prime"
            )
        rep.add("characteristic_prime", True, witness=characteristic)
    rep.add("chi_zero", chi[0] == c.zero)
    rep.add("chi_one", chi[1] == c.one)

    add = add_from_rho(r)
    in_range = sorted(chi)
    add_pairs = [
        (n, m) for n in in_range for m in in_range if -bound <= n + m <= bound
    ]
    mul_pairs = [
        (n, m) for n in in_range for m in in_range if -bound <= n * m <= bound
    ]
    rng = np.random.default_rng(seed)
    bad_add = bad_mul = None
    skips = 0
    for name, pairs, bad_slot in (("add", add_pairs, 0), ("mul", mul_pairs, 1)):
        if len(pairs) > ring_hom_cap:
            idx = rng.choice(len(pairs), size=ring_hom_cap, replace=False)
            pairs = [pairs[i] for i in idx]
        for n, m in pairs:
            try:
                if name == "add":
                    if add(chi[n], chi[m]) != chi[n + m] and bad_add is None:
                        bad_add = (n, m)
                else:
                    if c.mul(chi[n], chi[m]) != chi[n * m] and bad_mul is None:
                        bad_mul = (n, m)
            except ResourceLimitError:
                skips += 1
        rep.counts[f"{name}_pairs"] = len(pairs)
    rep.add("chi_additive", bad_add is None, witness=bad_add)
    rep.add("chi_multiplicative", bad_mul is None, witness=bad_mul)
    rep.counts["skipped"] = skips

    if c.is_finite:
        if characteristic == 0:
            raise IntegrityError("finite carrier with no characteristic in bound")
        p = characteristic
        core = [chi[n] for n in range(p)]
        rep.add("chi_injective_mod_p", len(set(core)) == p)
        units = [x for x in core if x != c.zero]
        closed = all(c.mul(a, b) in core for a in units for b in units)
        has_inv = all(c.inv(a) in units for a in units)
        comm = all(c.mul(a, b) == c.mul(b, a) for a in units for b in units)
        rep.add("core_multiplicative_subgroup", closed and has_inv and c.one in units)
        rep.add("core_commutative", comm)
        bad = None
        for s in core:
            for a in c.elements:
                for b in c.elements:
                    t = add(a, b)
                    if c.mul(s, t) != add(c.mul(s, a), c.mul(s, b)) or c.mul(
                        t, s
                    ) != add(c.mul(a, s), c.mul(b, s)):
                        bad = (s, a, b)
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("core_two_sided_distributive", bad is None, witness=bad)
        size = len(c.elements)
        power_of_p = size > 1
        while size % p == 0:
            size //= p
        rep.add("order_is_power_of_characteristic", power_of_p and size == 1)
        subfield = tuple(core)
        evidence_bounded = False
    else:
        subfield = tuple(v for _, v in table)
        evidence_bounded = characteristic == 0
        if characteristic == 0:
            rep.add(
                "no_zero_in_bound",
                all(pos[n] != c.zero for n in range(1, bound + 1)),
                detail=f"characteristic 0 is evidence up to bound {bound}, not a proof",
            )
    rep.counts["bound"] = bound
    return CharMapResult(characteristic, table, subfield, evidence_bounded, rep)


def check_bij_plus(
    field: FiniteField,
    sigma: np.ndarray,
    *,
    backend: str | None = None,
) -> Report:
    """Left-distributivity criterion for an addition pulled back through a
    bijection sigma of a finite field.

    Builds alpha (+) beta = sigma^-1(sigma(alpha) + sigma(beta)) and tests
    whether multiplication distributes over it from the left, exhaustively.
    When it does, the pullback is a near-field addition, and the follow-up
    assertions run: sigma fixes 0 and commutes with negation, and on the
    chi-image core sigma factors as a multiplicative map times sigma(1).
    """
    sigma = np.asarray(sigma, dtype=np.int64)
    if sorted(sigma.tolist()) != list(range(field.m)):
        raise DomainError("sigma must be a bijection of the carrier")
    sigma_inv = np.argsort(sigma)
    add_sigma = sigma_inv[field.add[np.ix_(sigma, sigma)]]
    rep = Report("pulled-back addition near-field criterion")
    wit = left_distrib_witness(field.mul, add_sigma, backend_name=backend)
    rep.add("left_distributive", wit is None, witness=wit)
    rep.counts["triples"] = field.m**3
    if wit is not None:
        return rep

    rep.add("fixes_zero", int(sigma[field.zero]) == field.zero)
    rep.add(
        "commutes_with_negation",
        bool(np.array_equal(sigma[field.neg], field.neg[sigma])),
    )
    r = rho_from_add(field_carrier(field), lambda a, b: int(add_sigma[a, b]))
    res = char_map(r, bound=field.p)
    rep.merge(res.report, prefix="core_")
    core = [x for x in res.prime_subfield if x != field.zero]
    lam = int(sigma[field.one])
    rep.add("sigma_one_invertible", lam != field.zero, witness=lam)
    if lam != field.zero:
        tilde = field.mul[sigma, field.inv[lam]]
        bad = None
        for a in core:
            for b in core:
                ab = int(field.mul[a, b])
                if int(tilde[ab]) != int(field.mul[tilde[a], tilde[b]]):
                    bad = (a, b)
                    break
            if bad:
                break
        rep.add("core_restriction_quasi_multiplicative", bad is None, witness=bad)
    return rep
