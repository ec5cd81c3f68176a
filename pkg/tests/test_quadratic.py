import random
from fractions import Fraction

import pytest

from nearfields.errors import DomainError
from nearfields.quadratic import (
    KFactorization,
    QuadInt,
    QuadRat,
    canonical_associate,
    factor_quad,
    is_canonical_prime,
    norm,
    norm_equation,
    primes_above,
    quad_add,
    quad_conj,
    quad_mul,
    rebuild_quad,
)
from nearfields.rationals import primes_upto

W = QuadInt(0, 1)


def test_ring_relations():
    assert W * W == W - 5  # w**2 = w - 5
    assert quad_mul(W, QuadInt(1, -1)) == QuadInt(5, 0)  # w * (1 - w) = 5
    assert quad_conj(W) == QuadInt(1, -1)
    assert quad_add(QuadInt(2, 1), QuadInt(0, -1)) == QuadInt(2, 0)
    assert (2 * W - 1) ** 2 == QuadInt(-19, 0)


def test_norms():
    assert norm(W) == 5
    assert norm(QuadInt(2, 0)) == 4
    assert norm(QuadInt(-1, 2)) == 19  # 2w - 1
    assert norm(QuadRat(W, 2)) == Fraction(5, 4)


def test_norm_multiplicative_random():
    rng = random.Random(2)
    for _ in range(400):
        x = QuadInt(rng.randint(-1000, 1000), rng.randint(-1000, 1000))
        y = QuadInt(rng.randint(-1000, 1000), rng.randint(-1000, 1000))
        assert norm(x * y) == norm(x) * norm(y)


def test_norm_form_positive_definite():
    # 4*norm is a sum of two squares weighted by the field discriminant,
    # so any b != 0 forces norm >= 5: the only units are -1 and 1.
    rng = random.Random(3)
    for _ in range(200):
        x = QuadInt(rng.randint(-50, 50), rng.randint(-50, 50))
        assert 4 * norm(x) == (2 * x.a + x.b) ** 2 + 19 * x.b**2
    units = [
        (a, b)
        for a in range(-2, 3)
        for b in range(-2, 3)
        if norm(QuadInt(a, b)) == 1
    ]
    assert sorted(units) == [(-1, 0), (1, 0)]


def test_canonical_associate():
    assert canonical_associate(-W) == W
    assert canonical_associate(QuadInt(-2, 0)) == QuadInt(2, 0)
    assert canonical_associate(QuadInt(1, -1)) == QuadInt(-1, 1)
    with pytest.raises(DomainError):
        canonical_associate(QuadInt(4, 0))  # composite
    with pytest.raises(DomainError):
        canonical_associate(QuadInt(5, 0))  # 5 splits, not prime here
    assert is_canonical_prime(W)
    assert not is_canonical_prime(-W)
    assert not is_canonical_prime(QuadInt(0, 0))


def test_primes_above_examples():
    s2 = primes_above(2)
    assert (s2.kind, s2.primes) == ("inert", (QuadInt(2, 0),))
    s5 = primes_above(5)
    assert s5.kind == "split"
    assert s5.primes == (QuadInt(-1, 1), QuadInt(0, 1))  # (norm, a, b) order
    s19 = primes_above(19)
    assert (s19.kind, s19.primes) == ("ramified", (QuadInt(-1, 2),))
    s23 = primes_above(23)
    assert s23.primes == (QuadInt(-3, 2), QuadInt(1, 2))
    with pytest.raises(DomainError):
        primes_above(4)
    with pytest.raises(DomainError):
        primes_above(15)


def test_splitting_trichotomy_first_100_primes():
    # Independent oracle: an odd prime q != 19 splits iff q is a nonzero
    # square mod 19 (quadratic reciprocity for discriminant -19); 2 needs the
    # same rule via its residue. Cross-checks the norm-equation search.
    squares = {x * x % 19 for x in range(1, 19)}
    for p in primes_upto(542):  # first 100 primes
        s = primes_above(p)
        assert s.kind in ("inert", "split", "ramified")
        if p == 19:
            assert s.kind == "ramified"
            assert len(s.primes) == 1
        elif p % 19 in squares:
            assert s.kind == "split", p
            pi, pibar = s.primes
            assert pi != pibar
            assert canonical_associate(pi.conj()) == pibar
            assert norm(pi) == norm(pibar) == p
        else:
            assert s.kind == "inert", p
            assert s.primes == (QuadInt(p, 0),)
        assert all(is_canonical_prime(pi) for pi in s.primes)


def test_factor_quad_examples():
    f5 = factor_quad(QuadInt(5, 0))
    # w * (-1+w) = -5, so the canonical-prime factorization of 5 carries
    # unit -1; rebuilding must reproduce 5 exactly.
    assert f5.unit == -1
    assert f5.exponents == {QuadInt(0, 1): 1, QuadInt(-1, 1): 1}
    assert rebuild_quad(f5) == QuadRat(QuadInt(5, 0))

    assert factor_quad(QuadInt(-1, 0)) == KFactorization(-1, {})
    assert factor_quad(QuadInt(2, 0)) == KFactorization(1, {QuadInt(2, 0): 1})
    f19 = factor_quad(QuadInt(19, 0))
    assert f19.unit == -1 and f19.exponents == {QuadInt(-1, 2): 2}
    with pytest.raises(DomainError):
        factor_quad(QuadInt(0, 0))


def test_factor_quad_rational_input():
    x = QuadRat(W, 5)  # w/5 = 1/(-(-1+w)) up to sign bookkeeping
    f = factor_quad(x)
    assert rebuild_quad(f) == x
    assert f.exponents == {QuadInt(-1, 1): -1}
    assert f.unit == -1


def test_factor_round_trip_random():
    rng = random.Random(4)
    done = 0
    while done < 200:
        x = QuadInt(rng.randint(-60000, 60000), rng.randint(-25000, 25000))
        if x.is_zero() or norm(x) > 10**10:
            continue
        assert rebuild_quad(factor_quad(x)) == QuadRat(x)
        done += 1


def test_factor_round_trip_quadrat():
    rng = random.Random(5)
    for _ in range(100):
        num = QuadInt(rng.randint(-500, 500), rng.randint(-500, 500))
        den = rng.randint(1, 500)
        if num.is_zero():
            continue
        x = QuadRat(num, den)
        f = factor_quad(x)
        assert rebuild_quad(f) == x
        assert all(is_canonical_prime(pi) for pi in f.exponents)
        assert all(e != 0 for e in f.exponents.values())


def test_quadrat_normal_form():
    x = QuadRat(QuadInt(2, 4), -6)
    assert (x.num, x.den) == (QuadInt(-1, -2), 3)
    assert QuadRat(QuadInt(3, 0), 3) == QuadRat(QuadInt(1, 0), 1)
    with pytest.raises(DomainError):
        QuadRat(W, 0)


def test_quadrat_field_ops():
    rng = random.Random(6)
    for _ in range(150):
        x = QuadRat(QuadInt(rng.randint(-99, 99), rng.randint(-99, 99)), rng.randint(1, 99))
        y = QuadRat(QuadInt(rng.randint(-99, 99), rng.randint(-99, 99)), rng.randint(1, 99))
        z = QuadRat(QuadInt(rng.randint(-99, 99), rng.randint(-99, 99)), rng.randint(1, 99))
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x - y == -(y - x)
        if not y.is_zero():
            assert (x / y) * y == x
    one = QuadRat(QuadInt(1, 0))
    assert one / QuadRat(W) * QuadRat(W) == one


def test_norm_equation_bounds():
    assert norm_equation(5) == QuadInt(0, 1)
    assert norm_equation(2) is None
    assert norm_equation(19) == QuadInt(-1, 2)
    # 19 needs b = 2, the inclusive endpoint of the |b| bound.
    assert norm_equation(4) is None


def test_json_shapes():
    assert W.to_json() == [0, 1]
    assert QuadRat(W, 2).to_json() == [0, 1, 2]
    f = factor_quad(QuadInt(10, 0))
    js = f.to_json()
    assert js["unit"] == -1
    assert js["factors"] == [[[2, 0], 1], [[-1, 1], 1], [[0, 1], 1]]
