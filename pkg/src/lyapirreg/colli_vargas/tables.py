"""Sequence tables (n_k, b_k, eps_k), the constant searches and the constant checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice

from .params import CvParams, iter_n, log_eps, log_eps_base, n_sequence

# absolute slack in the float comparisons of log-space inequalities
LOG_SLACK = 1e-9


@dataclass(frozen=True)
class CvTables:
    params: CvParams
    k_max: int
    n: tuple           # n_k, extended well past k_max for the b_k series
    S: tuple           # b_k = sigma^-S_k, exact dyadic rationals for k <= k_max
    log_b: tuple
    log_eps: tuple
    k0: int
    m_prime: int
    k1: int
    m0: int

    def require(self, k: int):
        if not 0 <= k <= self.k_max:
            raise ValueError(f"index {k} outside the table range [0, {self.k_max}]")


class ConstantSearchError(RuntimeError):
    pass


def _series_depth(params: CvParams, k_max: int) -> int:
    # extra indices beyond k_max so that the dropped tail of the b_k series,
    # at most 4 n_J / 2^(J - k) in exponent units, is below 1e-12 / log sigma
    extra = 8
    while True:
        n = n_sequence(params, k_max + extra + 1)
        if 4 * n[-1] / 2 ** extra * params.log_sigma < 1e-12:
            return k_max + extra
        extra += 8


def _b_exponents(n: list[int], k_max: int, J: int) -> list[Fraction]:
    # T_j = sum_{i>=0} n_{j+i} / 2^i by backward recursion from T_J = 0;
    # S_k = 2 n_k + T_{k+1}, which makes S_{k+1} = 2 S_k - 4 n_k exact
    T = Fraction(0)
    tails = {}
    for j in range(J, 0, -1):
        T = n[j] + T / 2
        tails[j] = T
    return [2 * n[k] + tails[k + 1] for k in range(k_max + 1)]


def search_k0(params: CvParams, limit: int = 1_000) -> int:
    """Smallest even k >= 2 with 2 - 1/n_k + log 2 / log eps_k > (alpha beta)^2.

    This is the p = 0 case, which dominates p >= 0 because (ab)^2 < 2.  The
    left side increases with k (eps_k decreases), so the first hit holds for
    every later k as well.
    """
    ab2 = (params.alpha * params.beta) ** 2
    if ab2 >= 2:
        raise ConstantSearchError("alpha^2 beta^2 >= 2, no k0 exists")
    for k, n in enumerate(islice(iter_n(params), limit)):
        if k < 2 or k % 2:
            continue
        le = log_eps(params, n)
        if le < 0 and 2 - 1 / n + math.log(2) / le > ab2:
            return k
    raise ConstantSearchError(f"no k0 below {limit}")


def search_m_prime(params: CvParams, limit: int = 1_000) -> int:
    """Smallest m' >= 1 with log(lambda sigma^alpha) > (ab)^(m'/2) log base(n_k) for all k.

    log base(n) decreases in n, so k = 0 is the binding case.
    """
    lhs = params.log_lam + params.alpha * params.log_sigma
    base = log_eps_base(params, params.n0)
    if base >= 0:
        raise ConstantSearchError("lambda sigma^((6b-4+8/n0)/(2-b)) >= 1")
    ab = params.alpha * params.beta
    for m in range(1, limit):
        if lhs > ab ** (m / 2) * base:
            return m
    raise ConstantSearchError(f"no m' below {limit}")


def search_k1(params: CvParams, k0: int, m_prime: int, limit: int = 1_000) -> int:
    """Smallest even k >= k0 with eps_k <= eps_k0^((ab)^((m'+2)/2))."""
    target = (params.alpha * params.beta) ** ((m_prime + 2) / 2) * log_eps(params, n_sequence(params, k0 + 1)[k0])
    for k, n in enumerate(islice(iter_n(params), limit)):
        if k >= k0 and k % 2 == 0 and log_eps(params, n) <= target:
            return k
    raise ConstantSearchError(f"no k1 below {limit}")


def m0_margin(params: CvParams, k0: int, m_prime: int, m: int) -> float:
    n_k0 = n_sequence(params, k0 + 1)[k0]
    ab = params.alpha * params.beta
    lhs = params.log_lam + params.alpha * params.log_sigma
    rhs = (ab ** (m_prime / 2) * log_eps_base(params, n_k0)
           + (ab ** (-(m + 1) / 2) / n_k0)
           * (math.log(2 * params.sigma / params.lam) - math.log(params.xi)))
    return lhs - rhs


def search_m0(params: CvParams, k0: int, m_prime: int, limit: int = 1_000) -> int:
    """Smallest m >= 1 from which the m0 inequality holds (its right side decreases in m)."""
    for m in range(1, limit):
        if m0_margin(params, k0, m_prime, m) >= 0:
            return m
    raise ConstantSearchError(f"no m0 below {limit}")


def build_tables(params: CvParams, k_max: int = 80) -> CvTables:
    k0 = search_k0(params)
    m_prime = search_m_prime(params)
    k1 = search_k1(params, k0, m_prime)
    m0 = search_m0(params, k0, m_prime)
    k_max = max(k_max, k1)
    J = _series_depth(params, k_max)
    n = n_sequence(params, J + 1)
    S = _b_exponents(n, k_max, J)
    ls = params.log_sigma
    return CvTables(
        params=params,
        k_max=k_max,
        n=tuple(n),
        S=tuple(S),
        log_b=tuple(-float(s) * ls for s in S),
        log_eps=tuple(log_eps(params, n[k]) for k in range(k_max + 1)),
        k0=k0, m_prime=m_prime, k1=k1, m0=m0,
    )


@dataclass(frozen=True)
class Check:
    """One inequality ``lhs < rhs`` (or ``<=``) evaluated in log space; margin = rhs - lhs."""

    name: str
    indices: tuple
    margin: float
    strict: bool = True

    @property
    def ok(self) -> bool:
        return self.margin > 0 if self.strict else self.margin >= -LOG_SLACK


def admissibility_checks(params: CvParams) -> list[Check]:
    ls, ll = params.log_sigma, params.log_lam
    a, b, eta = params.alpha, params.beta, params.eta
    return [
        Check("base rate: lambda*sigma^((6b-4+8/n0)/(2-b)) < 1", (), -log_eps_base(params, params.n0)),
        Check("growth: alpha^2*beta^2 < 2", (), math.log(2) - 2 * math.log(a * b)),
        Check("contraction: lambda*sigma^alpha < 1", (), -(ll + a * ls)),
        Check("eta: beta < 1+eta", (), math.log1p(eta) - math.log(b)),
        Check("eta: lambda*sigma^((1+3eta+8/n0)/(1-eta)) < 1", (),
              -(ll + (1 + 3 * eta + 8 / params.n0) / (1 - eta) * ls) if eta < 1 else -math.inf),
        Check("horseshoe: lambda*sigma^2 < 1", (), -(ll + 2 * ls)),
    ]


def b_bound_checks(tables: CvTables) -> list[Check]:
    p = tables.params
    ls, beta = p.log_sigma, p.beta
    out = []
    for k in range(tables.k_max + 1):
        n, lb = tables.n[k], tables.log_b[k]
        out.append(Check("b_k lower: sigma^(-4(n_k+1)/(2-b)) < b_k", (k,),
                         lb + 4 * (n + 1) / (2 - beta) * ls))
        out.append(Check("b_k upper: b_k < sigma^(-4 n_k)", (k,), -4 * n * ls - lb))
    return out


def n_growth_checks(tables: CvTables) -> list[Check]:
    """Second inequality of the b_{k+1} chain; the first one is the b_k lower bound at k+1."""
    p = tables.params
    scale = 4 / (2 - p.beta) * p.log_sigma
    out = []
    for k in range(tables.k_max):
        rate = p.alpha if k % 2 == 0 else p.beta
        out.append(Check("n_k growth: n_{k+1}+1 < rate*n_k+2", (k,),
                         scale * (rate * tables.n[k] + 2 - (tables.n[k + 1] + 1))))
    return out


def eps_chain_checks(tables: CvTables, p_max: int = 10) -> list[Check]:
    prm = tables.params
    ab = prm.alpha * prm.beta
    out = []
    for k in range(tables.k0, tables.k_max + 1, 2):
        le, n = tables.log_eps[k], tables.n[k]
        out.append(Check("k0 bound: 2 - 1/n_k + log2/log eps_k > (ab)^2", (k, 0),
                         2 - 1 / n + math.log(2) / le - ab ** 2))
        for p in range(p_max + 1):
            e0 = 2 * ab ** p * le
            e1 = (2 * ab ** p - 1 / n) * le
            e2 = ab ** (p + 2) * le - math.log(2)
            e3 = ab ** (p + 1) * le - math.log(2)
            out.append(Check("eps chain (i)", (k, p), e1 - e0))
            out.append(Check("eps chain (ii)", (k, p), e2 - e1))
            out.append(Check("eps chain (iii)", (k, p), e3 - e2))
    return out


def search_checks(tables: CvTables) -> list[Check]:
    prm = tables.params
    ab = prm.alpha * prm.beta
    lhs = prm.log_lam + prm.alpha * prm.log_sigma
    out = [Check("m': log(lambda sigma^alpha) > (ab)^(m'/2) log base(n_0)", (tables.m_prime,),
                 lhs - ab ** (tables.m_prime / 2) * log_eps_base(prm, prm.n0))]
    target = ab ** ((tables.m_prime + 2) / 2) * tables.log_eps[tables.k0]
    out.append(Check("k1: eps_k1 <= eps_k0^((ab)^((m'+2)/2))", (tables.k1,),
                     target - tables.log_eps[tables.k1], strict=False))
    out.append(Check("m0 bound", (tables.m0,),
                     m0_margin(prm, tables.k0, tables.m_prime, tables.m0), strict=False))
    return out


def check_constants(params: CvParams, k_max: int = 60, p_max: int = 10) -> tuple[CvTables | None, list[Check]]:
    """Every constant inequality with its log margin, admissibility first.

    Tables are only built when the admissibility checks hold; otherwise (None, those checks) is returned.
    """
    adm = admissibility_checks(params)
    if not all(c.ok for c in adm):
        return None, adm
    tables = build_tables(params, k_max)
    checks = adm + b_bound_checks(tables) + n_growth_checks(tables) + eps_chain_checks(tables, p_max) + search_checks(tables)
    return tables, checks
