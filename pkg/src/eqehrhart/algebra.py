"""Exact univariate algebra over the rationals.

Polynomials are immutable tuples of :class:`fractions.Fraction`, lowest degree
first.  Rational generating functions are kept reduced with denominator
constant term ``1``, so structural equality is semantic equality.  Cyclotomic
numbers live in ``Q(zeta_n)`` as residues modulo the ``n``-th cyclotomic
polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class NonRational(ArithmeticError):
    """A cyclotomic value was expected to be rational but is not."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


class Poly:
    """Dense univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------
    @classmethod
    def monomial(cls, n: int, c: Rational = 1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c: Rational) -> "Poly":
        return cls([c])

    # -- basic protocol -----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly([x])

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(self._coerce(other))
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return Poly(c / lead for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_power(self, k: int) -> "Poly":
        """Return p(t^k)."""
        out = [Fraction(0)] * (k * self.degree + 1 if self.coeffs else 0)
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return Poly(out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


T = Poly([0, 1])
ONE = Poly([1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def one_minus_t_pow(n: int, k: int = 1) -> Poly:
    """(1 - t^n)^k expanded binomially."""
    out = [0] * (n * k + 1)
    for i in range(k + 1):
        out[n * i] = (-1) ** i * comb(k, i)
    return Poly(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Poly:
    if n < 1:
        raise ValueError("n must be positive")
    p = Poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic_polynomial(d))
    return p


class RationalGenFunction:
    """Reduced quotient num/den of rational polynomials with den(0) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalGenFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalGenFunction(num={self.num!r}, den={self.den!r})"

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __mul__(self, other) -> "RationalGenFunction":
        if isinstance(other, Poly):
            return rf_reduce(self.num * other, self.den)
        return rf_reduce(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __add__(self, other: "RationalGenFunction") -> "RationalGenFunction":
        return rf_reduce(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def expand(self, order: int) -> list[Fraction]:
        return rf_expand(self, order)


def rf_reduce(num: Poly, den: Poly) -> RationalGenFunction:
    if den.is_zero() or den[0] == 0:
        raise ZeroDivisionError("denominator must not vanish at t = 0")
    g = poly_gcd(num, den) if not num.is_zero() else den.monic()
    num, den = num.exact_div(g), den.exact_div(g)
    c = den[0]
    return RationalGenFunction(Poly(x / c for x in num), Poly(x / c for x in den))


def rf_expand(f: RationalGenFunction, order: int) -> list[Fraction]:
    """Taylor coefficients 0..order via the recurrence den * series = num."""
    den = f.den
    if den[0] != 1:
        raise ValueError("denominator must be normalised to den(0) = 1")
    out: list[Fraction] = []
    for m in range(order + 1):
        c = f.num[m]
        for j in range(1, min(m, den.degree) + 1):
            c -= den[j] * out[m - j]
        out.append(c)
    return out


# -- cyclotomic numbers ---------------------------------------------------

class CycloNum:
    """Element of Q(zeta_n), stored as a residue modulo Phi_n."""

    __slots__ = ("order", "residue")

    def __init__(self, order: int, residue: Poly | Iterable = ()):
        if not isinstance(residue, Poly):
            residue = Poly(residue)
        self.order = order
        self.residue = residue % cyclotomic_polynomial(order)

    @classmethod
    def rational(cls, q: Rational, order: int = 1) -> "CycloNum":
        return cls(order, Poly([q]))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNum":
        return cls(n, Poly.monomial(k % n))

    def lift(self, order: int) -> "CycloNum":
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) in Q(zeta_{order})")
        if order == self.order:
            return self
        return CycloNum(order, self.residue.substitute_power(order // self.order))

    def _common(self, other) -> tuple["CycloNum", "CycloNum"]:
        if not isinstance(other, CycloNum):
            other = CycloNum.rational(other, self.order)
        n = self.order * other.order // gcd(self.order, other.order)
        return self.lift(n), other.lift(n)

    def __add__(self, other) -> "CycloNum":
        a, b = self._common(other)
        return CycloNum(a.order, a.residue + b.residue)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.order, -self.residue)

    def __sub__(self, other) -> "CycloNum":
        a, b = self._common(other)
        return CycloNum(a.order, a.residue - b.residue)

    def __rsub__(self, other) -> "CycloNum":
        return (-self) + other

    def __mul__(self, other) -> "CycloNum":
        a, b = self._common(other)
        return CycloNum(a.order, a.residue * b.residue)

    __rmul__ = __mul__

    def conj(self) -> "CycloNum":
        n = self.order
        out = [Fraction(0)] * n
        for i, c in enumerate(self.residue.coeffs):
            out[(-i) % n] += c
        return CycloNum(n, Poly(out))

    def is_rational(self) -> bool:
        return self.residue.degree <= 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloNum):
            if isinstance(other, (int, Fraction)):
                return self.is_rational() and cyclo_to_rational(self) == other
            return NotImplemented
        a, b = self._common(other)
        return a.residue == b.residue

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(cyclo_to_rational(self))
        return hash((self.order, self.residue))

    def __repr__(self) -> str:
        return f"CycloNum({self.order}, {[str(c) for c in self.residue.coeffs]})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(cyclo_to_rational(self))
        return str(self.residue).replace("t", f"z{self.order}")


def cyclo_to_rational(x: CycloNum) -> Fraction:
    if not x.is_rational():
        raise NonRational(f"{x!r} is not rational")
    return x.residue[0]


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def format_rational(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_from_ints(seq: Sequence[int]) -> Poly:
    return Poly(seq)
