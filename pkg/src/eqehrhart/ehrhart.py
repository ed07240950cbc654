"""Ehrhart series, h*-polynomials and quasipolynomials from exact counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Poly, RationalGenFunction, one_minus_t_pow, rf_reduce
from .lattice import RationalPolytope, denominator, lattice_point_counts


class NonTerminating(ArithmeticError):
    """h* convolution left nonzero coefficients past the degree bound."""


class InterpolationMismatch(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuasiPolynomial:
    degree: int
    period: int
    # table[r][j]: coefficient of m^j on the residue class m = r (mod period)
    table: tuple[tuple[Fraction, ...], ...]

    def __call__(self, m: int) -> Fraction:
        row = self.table[m % self.period]
        return sum(c * m ** j for j, c in enumerate(row))


@dataclass(frozen=True)
class EhrhartData:
    counts: tuple[int, ...]
    hstar: Poly
    denom_exponent: int
    N: int
    series: RationalGenFunction
    quasi: QuasiPolynomial | None
    min_period: int
    is_pip: bool
    dim: int


def hstar_from_counts(counts: Sequence[int], d: int, N: int) -> Poly:
    """Numerator of sum L(m) t^m over (1 - t^N)^(d+1).

    ``counts`` must cover m = 0 .. N(d+1) + N - 1; the last N products are
    checked to vanish.
    """
    bound = N * (d + 1)
    need = bound + N
    if len(counts) < need:
        raise ValueError(f"need {need} counts, got {len(counts)}")
    prod = (Poly(counts[:need]) * one_minus_t_pow(N, d + 1))
    coeffs = [prod[i] for i in range(need)]
    if any(coeffs[bound:need]):
        raise NonTerminating(
            f"h* has nonzero coefficients beyond degree {bound - 1}; wrong d={d} or N={N}?")
    return Poly(coeffs[:bound])


def _interpolate(xs: Sequence[int], ys: Sequence) -> list[Fraction]:
    """Coefficients (lowest first) of the polynomial through (xs, ys)."""
    n = len(xs)
    result = Poly()
    for i in range(n):
        basis = Poly([1])
        denom = Fraction(1)
        for j in range(n):
            if j != i:
                basis = basis * Poly([-xs[j], 1])
                denom *= xs[i] - xs[j]
        result = result + basis * (Fraction(ys[i]) / denom)
    return list(result.coeffs)


def quasipolynomial_fit(counts: Sequence[int], d: int, N: int) -> QuasiPolynomial:
    """Interpolate each residue class mod N with a degree-d polynomial."""
    if d < 0:
        raise ValueError("empty polytope has no Ehrhart quasipolynomial")
    table = []
    for r in range(N):
        ms = list(range(r, len(counts), N))
        if len(ms) < d + 2:
            raise ValueError("not enough counts for a verified fit")
        coeffs = _interpolate(ms[:d + 1], [counts[m] for m in ms[:d + 1]])
        coeffs += [Fraction(0)] * (d + 1 - len(coeffs))
        for m in ms[d + 1:]:
            if sum(c * m ** j for j, c in enumerate(coeffs)) != counts[m]:
                raise InterpolationMismatch(f"residue {r}: fit fails at m={m}")
        table.append(tuple(coeffs))
    return QuasiPolynomial(d, N, tuple(table))


def minimal_period(q: QuasiPolynomial) -> int:
    for p in range(1, q.period + 1):
        if q.period % p == 0 and all(q.table[r] == q.table[r % p] for r in range(q.period)):
            return p
    return q.period


def count_range(d: int, N: int) -> int:
    """Number of dilates (m = 0 .. n-1) used to pin down h*."""
    return N * (d + 1) + N


def ehrhart(P: RationalPolytope, workers: int | None = None) -> EhrhartData:
    if P.is_empty():
        return EhrhartData((1,), Poly([1]), 0, 1, RationalGenFunction(Poly([1]), Poly([1])),
                           None, 1, True, -1)
    d = P.affine_dim
    N = denominator(P)
    counts = lattice_point_counts(P, range(count_range(d, N)), workers)
    h = hstar_from_counts(counts, d, N)
    series = rf_reduce(h, one_minus_t_pow(N, d + 1))
    quasi = quasipolynomial_fit(counts, d, N)
    period = minimal_period(quasi)
    return EhrhartData(tuple(counts), h, d + 1, N, series, quasi, period, period == 1, d)


def normalized_volume(q: QuasiPolynomial) -> Fraction:
    """d! times the leading coefficient."""
    from math import factorial
    return q.table[0][q.degree] * factorial(q.degree)
