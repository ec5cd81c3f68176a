"""Tests for the rho calculus: axioms, round trips, repeated addition, the
characteristic map, and the pulled-back-addition criterion."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from nearfields.errors import DomainError, IntegrityError
from nearfields.finite import addition_from_exponent, make_field
from nearfields.induced import exotic_add_q
from nearfields.rho import (
    CharMapResult,
    RhoMap,
    add_from_rho,
    char_map,
    check_bij_plus,
    field_carrier,
    rational_carrier,
    repeated_add_check,
    rho_from_add,
    verify_rho_axioms,
)

# chi on (Q, exotic +) for n = 1..12, frozen from the sigma pipeline and
# checked by hand against the correspondence prefix: 5 = -pi2 pi3 gives
# chi(5) = -(3*5), 7 = -pi4 pi5 gives -(7*11), 11 = -pi7 pi8 gives -(17*19).
CHI_CHAIN = [1, 2, 13, 4, -15, 26, -77, 8, 169, -30, -323, 52]


def _field_rho(a=None):
    F = make_field(3, 2)
    if a is None:
        add = lambda x, y: int(F.add[x, y])
    else:
        t = addition_from_exponent(F, a)
        add = lambda x, y: int(t.table[x, y])
    return F, rho_from_add(field_carrier(F), add)


def test_rho_axioms_native_and_box5_exhaustive():
    for a in (None, 5):
        F, r = _field_rho(a)
        rep = verify_rho_axioms(r)
        assert rep.ok, rep.failures()
        assert rep.counts["pairs"] == 81


def test_rho_fixed_points():
    F, r = _field_rho()
    assert r(F.zero) == F.one
    assert r(F.minus_one) == F.zero


def test_rho_mutation_fails_with_witness():
    F, r = _field_rho()
    broken = r.table.copy()
    broken.flags.writeable = True
    # swap two non-fixed-point values
    spots = [i for i in range(9) if i not in (F.zero, F.minus_one)][:2]
    broken[spots[0]], broken[spots[1]] = broken[spots[1]], broken[spots[0]]
    bad = RhoMap(r.carrier, lambda x: int(broken[x]), broken)
    rep = verify_rho_axioms(bad)
    assert not rep.ok
    assert any(c.witness is not None for c in rep.failures())


def test_add_rho_round_trips_finite():
    for a in (None, 5):
        F, r = _field_rho(a)
        add = add_from_rho(r)
        # rho -> add -> rho is the identity on the table
        r2 = rho_from_add(r.carrier, add)
        assert np.array_equal(r.table, r2.table)
        # add -> rho -> add reproduces the table pointwise
        base = F.add if a is None else addition_from_exponent(F, a).table
        for x in range(9):
            for y in range(9):
                assert add(x, y) == int(base[x, y])


def test_add_rho_round_trips_rational_exotic():
    r = rho_from_add(rational_carrier(), exotic_add_q)
    add = add_from_rho(r)
    rng = np.random.default_rng(2)
    for _ in range(40):
        a = Fraction(int(rng.integers(-60, 61)), int(rng.integers(1, 40)))
        b = Fraction(int(rng.integers(-60, 61)), int(rng.integers(1, 40)))
        assert add(a, b) == exotic_add_q(a, b)
    assert add(Fraction(0), Fraction(7, 3)) == Fraction(7, 3)


def test_repeated_add():
    F, r = _field_rho()
    for alpha in range(9):
        ok, lhs, rhs = repeated_add_check(r, alpha, 3)
        assert ok and lhs == F.zero and rhs == F.zero
        ok, lhs, _ = repeated_add_check(r, alpha, 1)
        assert ok and lhs == alpha
    rq = rho_from_add(rational_carrier(), exotic_add_q)
    ok, lhs, rhs = repeated_add_check(rq, Fraction(1), 2)
    assert ok and lhs == Fraction(2)
    ok, lhs, rhs = repeated_add_check(rq, Fraction(3), 3)
    assert ok, (lhs, rhs)
    with pytest.raises(DomainError):
        repeated_add_check(r, 1, 0)


def test_char_map_f9():
    for a in (None, 5):
        F, r = _field_rho(a)
        res = char_map(r, 6)
        assert res.characteristic == 3
        assert res.prime_subfield == (F.zero, F.one, F.minus_one)
        assert not res.evidence_bounded
        assert res.report.ok, res.report.failures()


def test_char_map_rational_native():
    r = rho_from_add(rational_carrier(), lambda a, b: a + b)
    res = char_map(r, 25)
    assert res.characteristic == 0
    assert res.evidence_bounded
    for n in range(-25, 26):
        assert res.chi(n) == n
    assert res.report.ok


def test_char_map_rational_exotic_chain():
    r = rho_from_add(rational_carrier(), exotic_add_q)
    res = char_map(r, 12)
    assert [res.chi(n) for n in range(1, 13)] == CHI_CHAIN
    assert [res.chi(-n) for n in range(1, 13)] == [-v for v in CHI_CHAIN]
    assert res.chi(0) == 0
    assert res.characteristic == 0
    assert res.evidence_bounded
    assert res.report.ok, res.report.failures()


def test_char_map_validation_and_integrity():
    F, r = _field_rho()
    with pytest.raises(DomainError):
        char_map(r, 1)
    # a fake rho whose orbit of 0 returns to 0 after four steps
    fake = np.arange(9, dtype=np.int64)
    fake[0], fake[1], fake[4], fake[5] = 1, 4, 5, 0
    bad = RhoMap(field_carrier(F), lambda x: int(fake[x]), fake)
    with pytest.raises(IntegrityError):
        char_map(bad, 8)


def test_chi_ring_hom_on_sampled_grid():
    r = rho_from_add(rational_carrier(), exotic_add_q)
    res = char_map(r, 20, ring_hom_cap=1500)
    assert res.report.ok
    # spot-check additivity through the public route as well
    assert exotic_add_q(res.chi(3), res.chi(4)) == res.chi(7)
    assert exotic_add_q(res.chi(5), res.chi(-2)) == res.chi(3)
    assert res.chi(2) * res.chi(6) == res.chi(12)


def test_bij_plus_scalings_and_power():
    F = make_field(3, 2)
    for lam in range(1, 9):
        rep = check_bij_plus(F, F.mul[np.arange(9), lam])
        assert rep.ok, (lam, rep.failures())
    rep = check_bij_plus(F, F.power_table(5))
    assert rep.ok, rep.failures()
    # x^5 pullback is the a=5 enumerated table
    t5 = addition_from_exponent(F, 5)
    sigma = F.power_table(5)
    add_sigma = np.argsort(sigma)[F.add[np.ix_(sigma, sigma)]]
    assert np.array_equal(add_sigma, t5.table)


def test_bij_plus_random_permutation_fails():
    F = make_field(3, 2)
    rng = np.random.default_rng(9)
    fixed = (F.zero, F.one, F.minus_one)
    hits = 0
    for _ in range(8):
        perm = np.arange(9)
        rest = [i for i in range(9) if i not in fixed]
        shuffled = rng.permutation(rest)
        perm[rest] = shuffled
        if np.array_equal(perm, np.arange(9)):
            continue
        rep = check_bij_plus(F, perm)
        if not rep.ok:
            hits += 1
            bad = rep.first_failure()
            assert bad.name == "left_distributive"
            assert bad.witness is not None
    assert hits >= 6
    with pytest.raises(DomainError):
        check_bij_plus(F, np.zeros(9, dtype=np.int64))
