"""Randomized checks along orbits and cocycles, each reported as log-space margins."""
from __future__ import annotations

import math
import random

from .dynamics import cocycle, quadratic_margin, orbit, random_seed, u_margin
from .tables import Check, CvTables


def strip_checks(tables: CvTables, k_span: int = 20, p_max: int = 10) -> list[Check]:
    """lambda^n_{k+2p+j} sqrt(b_{k+2p+j}) <= eps_k^(a^(p+j) b^p - 1/n_k) b_{k+2p+1+j}."""
    prm = tables.params
    a, b, ll = prm.alpha, prm.beta, prm.log_lam
    out = []
    for k in range(tables.k0, tables.k0 + k_span + 1, 2):
        for p in range(p_max + 1):
            for j in (0, 1):
                i = k + 2 * p + j
                tables.require(i + 1)
                lhs = tables.n[i] * ll + 0.5 * tables.log_b[i]
                rhs = (a ** (p + j) * b ** p - 1 / tables.n[k]) * tables.log_eps[k] + tables.log_b[i + 1]
                out.append(Check("strip size", (k, p, j), rhs - lhs, strict=False))
    return out


def containment_checks(tables: CvTables, seeds: int = 100, m_max: int = 40,
                  rng: random.Random | None = None) -> list[Check]:
    """x_{k,m} in U_{k,m} for random seeds in U_{k,0}, k = k0, k0+2, ..."""
    rng = rng or random.Random(0)
    out = []
    for s in range(seeds):
        k = tables.k0 + 2 * (s % 4)
        pts = orbit(tables, k, random_seed(tables, k, rng), m_max)
        worst = min(range(len(pts)), key=lambda m: u_margin(tables, k, m, pts[m]))
        out.append(Check("containment", (k, s, worst), u_margin(tables, k, worst, pts[worst]), strict=False))
    return out


def quadratic_checks(tables: CvTables, seeds: int = 20, m_span: int = 20,
                  rng: random.Random | None = None, m_start: int | None = None) -> list[Check]:
    """2 |x_{k,m}| sigma^(2 n_{k+m}) <= xi lambda^(n_{k+m}) for m in [m_start, m_start + m_span].

    ``m_start`` defaults to the searched m0.
    """
    rng = rng or random.Random(1)
    out = []
    m0 = tables.m0 if m_start is None else m_start
    for s in range(seeds):
        k = tables.k1 + 2 * (s % 3)
        pts = orbit(tables, k, random_seed(tables, k, rng), m0 + m_span)
        for m in range(m0, m0 + m_span + 1):
            out.append(Check("quadratic term", (k, s, m), quadratic_margin(tables, k, m, pts[m]), strict=False))
    return out


def random_cone_vector(params, rng: random.Random) -> tuple[float, float]:
    r = math.exp(rng.uniform(-math.log(params.K), math.log(params.K)))
    return (rng.choice((-1, 1)) * r, rng.choice((-1, 1)) * 1.0)


def cocycle_checks(tables: CvTables, pairs: int = 50, steps: int = 40,
                   rng: random.Random | None = None) -> list[Check]:
    """Ledger constant bounds and component orderings along random (seed, v0) pairs.

    Bounds: |C_0| in [2/3, 4/3] and |C_j| in [1/2, 3/2].  Orderings: the
    ledger monomials and the actual components, |v_j| < |w_j| for j >= 1.
    """
    rng = rng or random.Random(2)
    out = []
    m = tables.m0 + tables.m0 % 2
    for s in range(pairs):
        k = tables.k1 + 2 * (s % 3)
        seed = random_seed(tables, k, rng)
        cc = cocycle(tables, k, m, seed, random_cone_vector(tables.params, rng), steps)
        for idx, values in sorted(cc.constants().items()):
            lo, hi = (2 / 3, 4 / 3) if idx == 0 else (0.5, 1.5)
            for c in values:
                out.append(Check(f"cocycle constant |C_{'0' if idx == 0 else 'j'}|", (k, s, idx),
                                 min(math.log(c) - math.log(lo), math.log(hi) - math.log(c)),
                                 strict=False))
        lv0, lw0 = cc.states[0].v.logmag, cc.states[0].w.logmag
        for st in cc.states[1:]:
            # undo the |v0|, |w0| factors to compare the bare monomials
            if st.j % 2:
                mono_v, mono_w = st.ledger_v - lw0, st.ledger_w - lv0
            else:
                mono_v, mono_w = st.ledger_v - lv0, st.ledger_w - lw0
            out.append(Check("ordering ledger", (k, s, st.j), mono_w - mono_v))
            out.append(Check("ordering components", (k, s, st.j), st.w.logmag - st.v.logmag))
    return out
