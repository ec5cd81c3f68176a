"""Exact arithmetic and unique factorization in Z[w], w = (1 + sqrt(-19))/2.

w satisfies w**2 = w - 5, so integer pairs (a, b) representing a + b*w close
under multiplication: (a + b*w)(c + d*w) = (ac - 5bd) + (ad + bc + bd)*w.
The ring is a principal ideal domain whose only units are 1 and -1, which
keeps associate bookkeeping to a single sign. It is not Euclidean, so there
is no gcd algorithm to lean on; factoring routes through the rational norm
a**2 + ab + 5b**2 and a bounded norm-equation search instead.

Among the two associates {x, -x} of a prime, the canonical one has b > 0,
or b == 0 and a > 0. Conjugates of non-rational primes are canonicalized
separately, so a split rational prime owns two distinct canonical primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, IntegrityError
from .rationals import Rat, factor_int, is_prime

__all__ = [
    "QuadInt",
    "QuadRat",
    "KFactorization",
    "Splitting",
    "quad_add",
    "quad_mul",
    "quad_conj",
    "norm",
    "canonical_associate",
    "is_canonical_prime",
    "primes_above",
    "factor_quad",
    "rebuild_quad",
    "canonical_key",
    "norm_equation",
]


class QuadInt:
    """a + b*w with integer a, b."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: int, b: int):
        self._a = int(a)
        self._b = int(b)

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    @classmethod
    def from_int(cls, n: int) -> "QuadInt":
        return cls(n, 0)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(self._a + other._a, self._b + other._b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(self._a - other._a, self._b - other._b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return QuadInt(-self._a, -self._b)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self._a, self._b, other._a, other._b
        return QuadInt(a * c - 5 * b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers leave the ring")
        out = QuadInt(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "QuadInt":
        return QuadInt(self._a + self._b, -self._b)

    def norm(self) -> int:
        return self._a * self._a + self._a * self._b + 5 * self._b * self._b

    def content(self) -> int:
        return math.gcd(self._a, self._b)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._a == other._a and self._b == other._b

    def __hash__(self):
        return hash((self._a, self._b))

    def __repr__(self):
        return f"QuadInt({self._a}, {self._b})"

    def __str__(self):
        if self._b == 0:
            return str(self._a)
        w = "w" if self._b == 1 else "-w" if self._b == -1 else f"{self._b}*w"
        if self._a == 0:
            return w
        return f"{self._a}{'+' if self._b > 0 else ''}{w}"

    def to_json(self) -> list[int]:
        return [self._a, self._b]


def _coerce(x) -> QuadInt | None:
    if isinstance(x, QuadInt):
        return x
    if isinstance(x, int):
        return QuadInt(x, 0)
    return None


class QuadRat:
    """Element of the fraction field: QuadInt numerator over a positive integer.

    Any denominator can be cleared to an integer by multiplying through with
    its conjugate, so this representation is complete. The constructor
    reduces gcd(content(num), den) and fixes the denominator sign.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: QuadInt | int, den: int = 1):
        if isinstance(num, int):
            num = QuadInt(num, 0)
        den = int(den)
        if den == 0:
            raise DomainError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num.content(), den)
        if g > 1:
            num = QuadInt(num.a // g, num.b // g)
            den //= g
        self._num = num
        self._den = den

    @property
    def num(self) -> QuadInt:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    @classmethod
    def from_rat(cls, q: Rat | int) -> "QuadRat":
        q = Fraction(q)
        return cls(QuadInt(q.numerator, 0), q.denominator)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def as_rat(self) -> Rat | None:
        """The value as a Fraction when it lies in the rational subfield."""
        if self._num.b != 0:
            return None
        return Fraction(self._num.a, self._den)

    def norm(self) -> Fraction:
        return Fraction(self._num.norm(), self._den * self._den)

    def conj(self) -> "QuadRat":
        return QuadRat(self._num.conj(), self._den)

    def __add__(self, other):
        other = _coerce_rat(other)
        if other is None:
            return NotImplemented
        return QuadRat(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_rat(other)
        if other is None:
            return NotImplemented
        return QuadRat(self._num * other._den - other._num * self._den, self._den * other._den)

    def __rsub__(self, other):
        other = _coerce_rat(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return QuadRat(-self._num, self._den)

    def __mul__(self, other):
        other = _coerce_rat(other)
        if other is None:
            return NotImplemented
        return QuadRat(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rat(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DomainError("division by zero")
        # 1/x = conj(x) * den / norm(num)
        n = other._num.norm()
        num = self._num * other._num.conj() * other._den
        return QuadRat(num, self._den * n)

    def __rtruediv__(self, other):
        other = _coerce_rat(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = _coerce_rat(other)
        if other is None:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"QuadRat({self._num!r}, {self._den})"

    def __str__(self):
        if self._den == 1:
            return str(self._num)
        return f"({self._num})/{self._den}"

    def to_json(self) -> list[int]:
        return [self._num.a, self._num.b, self._den]


def _coerce_rat(x) -> QuadRat | None:
    if isinstance(x, QuadRat):
        return x
    if isinstance(x, QuadInt):
        return QuadRat(x, 1)
    if isinstance(x, (int, Fraction)):
        return QuadRat.from_rat(x)
    return None


def quad_add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def quad_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def quad_conj(x: QuadInt) -> QuadInt:
    return x.conj()


def norm(x: QuadInt | QuadRat):
    return x.norm()


def canonical_key(pi: QuadInt) -> tuple[int, int, int]:
    """Total order on canonical primes: by norm, then (a, b) lexicographic."""
    return (pi.norm(), pi.a, pi.b)


def norm_equation(m: int) -> QuadInt | None:
    """Smallest-b solution of a**2 + ab + 5b**2 = m with b >= 1, or None.

    Bounded search: 4m = (2a+b)**2 + 19 b**2 caps |b| at isqrt(4m/19).
    """
    if m < 5:
        return None
    for b in range(1, math.isqrt(4 * m // 19) + 1):
        disc = 4 * m - 19 * b * b
        if disc < 0:
            break
        c = math.isqrt(disc)
        if c * c != disc:
            continue
        if (c - b) % 2 == 0:
            return QuadInt((-b + c) // 2, b)
    return None


def _is_unit(x: QuadInt) -> bool:
    return x.norm() == 1


def _is_prime_element(x: QuadInt) -> bool:
    n = x.norm()
    if n <= 1:
        return False
    if is_prime(n):
        return True
    # Norm q**2 with b == 0 means an associate of a rational prime q, which
    # is prime here exactly when q is inert.
    if x.b == 0:
        q = abs(x.a)
        return is_prime(q) and q != 19 and norm_equation(q) is None
    return False


def is_canonical_prime(x: QuadInt) -> bool:
    if not _is_prime_element(x):
        return False
    return x.b > 0 or (x.b == 0 and x.a > 0)


def canonical_associate(x: QuadInt) -> QuadInt:
    """The representative of {x, -x} with b > 0, or b == 0 and a > 0."""
    if not _is_prime_element(x):
        raise DomainError(f"{x!r} is not a prime element")
    if x.b > 0 or (x.b == 0 and x.a > 0):
        return x
    return -x


@dataclass(frozen=True)
class Splitting:
    """Behavior of a rational prime: kind in {inert, split, ramified}."""

    kind: str
    primes: tuple[QuadInt, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "primes": [pi.to_json() for pi in self.primes]}


def primes_above(p: int) -> Splitting:
    """Canonical primes over a rational prime, with the splitting kind."""
    if not is_prime(p):
        raise DomainError(f"{p} is not a rational prime")
    sol = norm_equation(p)
    if p == 19:
        assert sol is not None
        return Splitting("ramified", (canonical_associate(sol),))
    if sol is None:
        return Splitting("inert", (QuadInt(p, 0),))
    pi = canonical_associate(sol)
    pibar = canonical_associate(sol.conj())
    pair = tuple(sorted((pi, pibar), key=canonical_key))
    return Splitting("split", pair)


def _exact_div(x: QuadInt, y: QuadInt) -> QuadInt | None:
    """x / y when it lands in the ring, else None."""
    n = y.norm()
    z = x * y.conj()
    if z.a % n or z.b % n:
        return None
    return QuadInt(z.a // n, z.b // n)


@dataclass(frozen=True)
class KFactorization:
    """unit * prod(pi**e) over canonical primes, nonzero exponents."""

    unit: int
    exponents: dict[QuadInt, int]

    def __post_init__(self):
        if self.unit not in (1, -1):
            raise DomainError(f"unit must be +1 or -1, got {self.unit}")
        if any(e == 0 for e in self.exponents.values()):
            raise DomainError("zero exponents are not stored")

    def value(self) -> QuadRat:
        num = QuadInt(self.unit, 0)
        den = 1
        for pi, e in self.exponents.items():
            if e > 0:
                num = num * pi**e
            else:
                num = num * pi.conj() ** -e
                den *= pi.norm() ** -e
        return QuadRat(num, den)

    def to_json(self) -> dict:
        items = sorted(self.exponents.items(), key=lambda kv: canonical_key(kv[0]))
        return {"unit": self.unit, "factors": [[pi.to_json(), e] for pi, e in items]}


def _factor_integral(z: QuadInt, trial_cap: int | None) -> tuple[int, dict[QuadInt, int]]:
    out: dict[QuadInt, int] = {}
    rational = factor_int(z.norm(), trial_cap=trial_cap)
    for p in sorted(rational.exponents):
        for pi in primes_above(p).primes:
            while True:
                q = _exact_div(z, pi)
                if q is None:
                    break
                z = q
                out[pi] = out.get(pi, 0) + 1
    if not _is_unit(z):
        raise IntegrityError(f"norm-guided division left non-unit {z!r}")
    return z.a, out


def factor_quad(x: QuadInt | QuadRat, *, trial_cap: int | None = None) -> KFactorization:
    """Unique factorization into canonical primes; denominators go negative."""
    if isinstance(x, QuadInt):
        x = QuadRat(x, 1)
    if x.is_zero():
        raise DomainError("zero has no factorization")
    unit, exps = _factor_integral(x.num, trial_cap)
    if x.den > 1:
        du, dexps = _factor_integral(QuadInt(x.den, 0), trial_cap)
        unit *= du
        for pi, e in dexps.items():
            new = exps.get(pi, 0) - e
            if new:
                exps[pi] = new
            else:
                exps.pop(pi, None)
    return KFactorization(unit, exps)


def rebuild_quad(f: KFactorization) -> QuadRat:
    """Inverse of factor_quad."""
    return f.value()
