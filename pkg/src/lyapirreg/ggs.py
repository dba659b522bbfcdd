"""Figure-8 return dynamics with an affine return map.

Near the saddle the map is ``H(x, y) = (sigma**-2 x, sigma y)``; the strip
``S_n = [a, b] x sigma**-n [a, b]`` returns after ``n + k0`` steps to
``S_2n`` via ``(x, y) -> (a + b - sigma**n y, sigma**(-2n) x)``.  The derivative
along an orbit is therefore a product of signed monomial matrices in sigma,
which we carry exactly as :class:`~lyapirreg.numerics.SigmaPower` entries.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Sequence

from .analysis import FtleSeries
from .numerics import Mat2, SigmaPower, lv_vector, mat2_apply, vec_lognorm


@dataclass(frozen=True)
class GgsParams:
    sigma: Real = 2
    a: Real = Fraction(6, 5)
    b: Real = Fraction(3, 2)
    n0: int = 2
    k0: int = 3

    def __post_init__(self):
        if not self.sigma > 1:
            raise ValueError(f"sigma must exceed 1, got {self.sigma}")
        if not 1 < self.a < self.b < self.sigma:
            raise ValueError(f"need 1 < a < b < sigma, got a={self.a}, b={self.b}, sigma={self.sigma}")
        if int(self.n0) != self.n0 or self.n0 < 2:
            raise ValueError(f"n0 must be an integer >= 2, got {self.n0}")
        if int(self.k0) != self.k0 or self.k0 < 1:
            raise ValueError(f"k0 must be a positive integer, got {self.k0}")

    @property
    def log_sigma(self) -> float:
        return math.log(self.sigma)


def return_time(params: GgsParams, d: int) -> int:
    """d-th return time N(d) = (2**d - 1) n0 + d k0 from S_n0."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return (2 ** d - 1) * params.n0 + d * params.k0


def _sigma_pow(params: GgsParams, n: int):
    s = Fraction(params.sigma) if isinstance(params.sigma, int) else params.sigma
    return s ** n


def in_strip(params: GgsParams, n: int, point) -> bool:
    """Membership in S_n (exact when the point and params are rationals)."""
    x, y = point
    scale = _sigma_pow(params, -n)
    return params.a <= x <= params.b and scale * params.a <= y <= scale * params.b


def return_map(params: GgsParams, n: int, point):
    """Image of a point of S_n under f**(n + k0); lands in S_2n."""
    if n < params.n0:
        raise ValueError(f"return map is only defined for n >= n0={params.n0}")
    if not in_strip(params, n, point):
        raise ValueError(f"point {point!r} is not in S_{n}")
    x, y = point
    return (params.a + params.b - _sigma_pow(params, n) * y, _sigma_pow(params, -2 * n) * x)


def return_orbit(params: GgsParams, point, d: int) -> list:
    """Points of the first ``d`` returns starting from S_n0 (index j lies in S_{2^j n0})."""
    orbit = [point]
    n = params.n0
    for _ in range(d):
        point = return_map(params, n, point)
        orbit.append(point)
        n *= 2
    return orbit


def return_factor(n: int) -> Mat2:
    """Derivative of f**(n + k0) on S_n: [[0, -sigma^n], [sigma^-2n, 0]]."""
    return Mat2.antidiag(SigmaPower(-1, n), SigmaPower(1, -2 * n))


def cocycle_product(params: GgsParams, d: int) -> Mat2:
    """Df**N(d) on S_n0 by composing the d return factors."""
    if d < 0:
        raise ValueError("d must be >= 0")
    M = Mat2.identity(exact=True)
    n = params.n0
    for _ in range(d):
        M = return_factor(n) @ M
        n *= 2
    return M


def cocycle_closed_form(params: GgsParams, d: int) -> Mat2:
    """Df**N(d) on S_n0 as an explicit function of d.

    Odd d = 2e - 1:  (-1)**(e-1) [[0, -sigma**n0], [sigma**(-2**d n0), 0]].
    Even d = 2e:     (-1)**e diag(1, sigma**((1 - 2**d) n0)).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    n0 = params.n0
    if d % 2:
        e = (d + 1) // 2
        s = (-1) ** (e - 1)
        return Mat2.antidiag(SigmaPower(-s, n0), SigmaPower(s, -(2 ** d) * n0))
    e = d // 2
    s = (-1) ** e
    return Mat2.diag(SigmaPower(s, 0), SigmaPower(s, (1 - 2 ** d) * n0))


def intermediate_derivative(params: GgsParams, d: int, t: int) -> Mat2:
    """Df**(N(4d) + t): t further steps of the linear saddle map after N(4d)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    top = 2 ** (4 * d) * params.n0
    if not 0 <= t <= top:
        raise ValueError(f"t must lie in [0, {top}], got {t}")
    linear = Mat2.diag(SigmaPower(1, -2 * t), SigmaPower(1, t))
    return linear @ cocycle_closed_form(params, 4 * d)


def theta(zeta: float) -> float:
    """Limit profile of the exponent (in units of log sigma) between N(4d) and N(4d+1)."""
    if not 0 <= zeta <= 1:
        raise ValueError(f"zeta must lie in [0, 1], got {zeta}")
    if zeta >= Fraction(1, 3):
        return -(1 - zeta) / (1 + zeta)
    return -2 * zeta / (1 + zeta)


def intermediate_offset(params: GgsParams, d: int, zeta) -> int:
    return math.floor(Fraction(zeta) * 2 ** (4 * d) * params.n0)


@dataclass(frozen=True)
class GgsSchedule:
    """Which times to sample.

    ``kind``: ``"return"`` (N(d) for d = 1..d_max), ``"odd"`` (N(2d-1)),
    ``"even"`` (N(2d)) or ``"intermediate"`` (N(4d) + floor(zeta 2^4d n0)).
    """

    kind: str = "return"
    d_max: int = 12
    zeta: float = 0.0

    def __post_init__(self):
        if self.kind not in ("return", "odd", "even", "intermediate"):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.d_max < 1:
            raise ValueError("d_max must be >= 1")
        if not 0 <= self.zeta <= 1:
            raise ValueError("zeta must lie in [0, 1]")

    @property
    def name(self) -> str:
        if self.kind == "intermediate":
            return f"intermediate(zeta={float(self.zeta):g})"
        return self.kind

    def points(self, params: GgsParams):
        """Yield ``(d, time, derivative)`` triples."""
        for d in range(1, self.d_max + 1):
            if self.kind == "return":
                yield d, return_time(params, d), cocycle_closed_form(params, d)
            elif self.kind == "odd":
                yield d, return_time(params, 2 * d - 1), cocycle_closed_form(params, 2 * d - 1)
            elif self.kind == "even":
                yield d, return_time(params, 2 * d), cocycle_closed_form(params, 2 * d)
            else:
                t = intermediate_offset(params, d, self.zeta)
                yield d, return_time(params, 4 * d) + t, intermediate_derivative(params, d, t)


def finite_time_exponent(params: GgsParams, M: Mat2, time: int, vector: Sequence[float]) -> float:
    image = mat2_apply(M.to_logvalues(params.sigma), lv_vector(vector))
    return vec_lognorm(image).logmag / time


def ftle_series(params: GgsParams, vector: Sequence[float], schedule: GgsSchedule) -> FtleSeries:
    if all(c == 0 for c in vector):
        raise ValueError("vector must be nonzero")
    entries = []
    ds = []
    for d, time, M in schedule.points(params):
        entries.append((time, finite_time_exponent(params, M, time, vector)))
        ds.append(d)
    return FtleSeries(tuple(entries), system="ggs", vector=tuple(vector),
                      schedule=schedule.name, meta={"d": ds})


def series_rows(series: FtleSeries):
    """CSV rows ``schedule_name, d, time, exponent``."""
    for d, (time, value) in zip(series.meta["d"], series.entries):
        yield series.schedule, d, time, value
