"""Orbits of the cascade F_k and the derivative cocycle along them, in LogValue arithmetic."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from ..analysis import FtleSeries
from ..numerics import LogValue, vec_lognorm
from .tables import CvTables

LOG_HALF = math.log(0.5)


@dataclass(frozen=True)
class CvPoint:
    x: LogValue
    y: LogValue

    @classmethod
    def from_reals(cls, x: float, y: float) -> "CvPoint":
        return cls(LogValue.from_real(x), LogValue.from_real(y))


ORIGIN = CvPoint(LogValue(0), LogValue(0))


def _lv(logmag: float, sign: int = 1) -> LogValue:
    return LogValue(sign, logmag)


def domain_margin(tables: CvTables, k: int, point: CvPoint) -> float:
    """min log margin of |x| <= b_k / 2 and |y| <= sqrt(b_k) / 2 (inf for the origin)."""
    tables.require(k)
    lb = tables.log_b[k]
    m = math.inf
    if not point.x.is_zero:
        m = min(m, LOG_HALF + lb - point.x.logmag)
    if not point.y.is_zero:
        m = min(m, LOG_HALF + 0.5 * lb - point.y.logmag)
    return m


def apply_F(tables: CvTables, k: int, point: CvPoint, check_domain: bool = True) -> CvPoint:
    """F_k(x, y) = (-sigma^2n x^2 -/+ lambda^n y, +/- sigma^n x) with n = n_k."""
    if check_domain and domain_margin(tables, k, point) < 0:
        raise ValueError(f"point {point!r} outside the domain of F_{k}")
    p = tables.params
    n = tables.n[k]
    s1, s2 = p.signs
    ls, ll = p.log_sigma, p.log_lam
    x, y = point.x, point.y
    quad = -(_lv(2 * n * ls) * x * x)
    lin = _lv(n * ll, s1) * y
    return CvPoint(quad + lin, _lv(n * ls, s2) * x)


def u_bounds(tables: CvTables, k: int, m: int) -> tuple[float, float]:
    """log of the U_{k,m} half-widths in x and y."""
    tables.require(k + m)
    ab = tables.params.alpha * tables.params.beta
    e = ab ** (m // 2) * tables.log_eps[k]
    lb = tables.log_b[k + m]
    return e + lb, e + 0.5 * lb


def u_margin(tables: CvTables, k: int, m: int, point: CvPoint) -> float:
    bx, by = u_bounds(tables, k, m)
    out = math.inf
    if not point.x.is_zero:
        out = min(out, bx - point.x.logmag)
    if not point.y.is_zero:
        out = min(out, by - point.y.logmag)
    return out


def _check_k(tables: CvTables, k: int, lower: int, name: str):
    if k % 2 or k < lower:
        raise ValueError(f"k must be even and >= {name}={lower}, got {k}")


def random_seed(tables: CvTables, k: int, rng: random.Random, span: float = 50.0) -> CvPoint:
    """Point of U_{k,0} with log|x|, log|y| uniform in [bound - span, bound] and random signs."""
    bx, by = u_bounds(tables, k, 0)
    return CvPoint(_lv(bx - span * rng.random(), rng.choice((-1, 1))),
                   _lv(by - span * rng.random(), rng.choice((-1, 1))))


def orbit(tables: CvTables, k: int, seed: CvPoint, m_max: int) -> list[CvPoint]:
    """x_{k,0}, ..., x_{k,m_max} with x_{k,m+1} = F_{k+m}(x_{k,m})."""
    _check_k(tables, k, tables.k0, "k0")
    if u_margin(tables, k, 0, seed) < 0:
        raise ValueError("seed is not in U_{k,0}")
    tables.require(k + m_max)
    pts = [seed]
    for m in range(m_max):
        pts.append(apply_F(tables, k + m, pts[-1]))
    return pts


def quadratic_margin(tables: CvTables, k: int, m: int, point: CvPoint) -> float:
    """log(xi lambda^n) - log(2 |x| sigma^2n) with n = n_{k+m}."""
    if point.x.is_zero:
        return math.inf
    p = tables.params
    n = tables.n[k + m]
    return (math.log(p.xi) + n * p.log_lam) - (math.log(2) + point.x.logmag + 2 * n * p.log_sigma)


@dataclass(frozen=True)
class CvCocycleState:
    """Tangent vector v_j = (v, w) after j steps, with the ledger constants it carries."""

    j: int
    v: LogValue
    w: LogValue
    time: int             # N_{j-1} = sum_{i<j} (n_{kappa+i} + 2); 0 for j = 0
    ledger_v: float       # log of the lambda/sigma monomial times |v0| or |w0| in the first slot
    ledger_w: float
    c_index_v: int
    c_index_w: int

    @property
    def log_c_v(self) -> float:
        return self.v.logmag - self.ledger_v

    @property
    def log_c_w(self) -> float:
        return self.w.logmag - self.ledger_w


@dataclass(frozen=True)
class CvCocycle:
    k: int
    m: int
    states: tuple
    orbit: tuple

    @property
    def kappa(self) -> int:
        return self.k + self.m

    def constants(self) -> dict:
        """|C_j| by index; each index is determined twice and both must agree."""
        out = {}
        for s in self.states:
            for idx, lc in ((s.c_index_v, s.log_c_v), (s.c_index_w, s.log_c_w)):
                out.setdefault(idx, []).append(math.exp(lc))
        return out


def _ledger(tables: CvTables, kappa: int, j: int, lv0: float, lw0: float):
    # A_q = n_kappa + n_kappa+2 + ... + n_kappa+2q, B_q likewise from kappa+1
    p = tables.params
    ll, ls = p.log_lam, p.log_sigma
    n = tables.n

    def A(q):
        return sum(n[kappa + 2 * i] for i in range(q + 1))

    def B(q):
        return sum(n[kappa + 1 + 2 * i] for i in range(q + 1))

    q, odd = divmod(j, 2)
    if not odd:
        # v_2p = C_{2p-1} lam^B_{p-1} sig^A_{p-1} v0, w_2p = C_{2p-2} lam^A_{p-1} sig^B_{p-1} w0
        a, b = A(q - 1), B(q - 1)
        return (b * ll + a * ls + lv0, a * ll + b * ls + lw0, j - 1, j - 2)
    # v_2p+1 = C_2p lam^A_p sig^B_{p-1} w0, w_2p+1 = C_{2p-1} lam^B_{p-1} sig^A_p v0
    a, b = A(q), B(q - 1)
    return (a * ll + b * ls + lw0, b * ll + a * ls + lv0, j - 1, j - 2)


def cone_ok(params, v0: Sequence[float]) -> bool:
    v, w = v0
    if v == 0 or w == 0:
        return False
    r = abs(v) / abs(w)
    return 1 / params.K <= r <= params.K


def cocycle(tables: CvTables, k: int, m: int, seed: CvPoint, v0: Sequence[float], steps: int) -> CvCocycle:
    """v_{j+1} = DF_{kappa+j}(x_{k,m+j}) v_j for j < steps, starting from x_{k,m} and v0."""
    p = tables.params
    _check_k(tables, k, tables.k1, "k1")
    if m % 2 or m < tables.m0:
        raise ValueError(f"m must be even and >= m0={tables.m0}, got {m}")
    if p.K < 1:
        raise ValueError(f"cone is empty: K = 1/(3 xi) = {p.K:.6g} < 1")
    if not cone_ok(p, v0):
        raise ValueError(f"v0={tuple(v0)} violates the cone condition with K={p.K:.6g}")
    kappa = k + m
    pts = orbit(tables, k, seed, m + steps)
    s1, s2 = p.signs
    ls, ll = p.log_sigma, p.log_lam
    v, w = LogValue.from_real(v0[0]), LogValue.from_real(v0[1])
    lv0, lw0 = v.logmag, w.logmag
    states = []
    time = 0
    for j in range(steps + 1):
        lg = _ledger(tables, kappa, j, lv0, lw0)
        states.append(CvCocycleState(j, v, w, time, *lg))
        if j == steps:
            break
        n = tables.n[kappa + j]
        x = pts[m + j].x
        d11 = LogValue(-1, math.log(2) + 2 * n * ls) * x
        v, w = d11 * v + LogValue(s1, n * ll) * w, LogValue(s2, n * ls) * v
        time += n + 2
    return CvCocycle(k, m, tuple(states), tuple(pts[m:]))


def ftle_series(tables: CvTables, cc: CvCocycle) -> FtleSeries:
    """(N_j, log||v_{j+1}|| / N_j) with N_j = sum_{i<=j} (n_{kappa+i} + 2).

    Even j tends to L_even, odd j to L_odd.
    """
    entries = [(s.time, vec_lognorm((s.v, s.w)).logmag / s.time) for s in cc.states[1:]]
    return FtleSeries(tuple(entries), system="cv", vector=("v0",), schedule="N_j",
                      meta={"j": list(range(len(entries))), "kappa": cc.kappa})


def parity_subseries(series: FtleSeries) -> tuple[FtleSeries, FtleSeries]:
    """(odd-j, even-j) subsequences."""
    js = series.meta["j"]
    odd = [i for i, j in enumerate(js) if j % 2]
    even = [i for i, j in enumerate(js) if j % 2 == 0]
    return series.subseries(odd, "N_odd"), series.subseries(even, "N_even")
