import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lyapirreg.analysis import IRREGULAR, detect_irregular, tail_limit
from lyapirreg.colli_vargas import (CvConfigError, CvParams, CvPoint, apply_F, block_averages,
                                    build_itinerary, build_tables, check_constants, cocycle,
                                    ftle_limits, ftle_series, strip_checks, containment_checks,
                                    quadratic_checks, cocycle_checks, n_sequence, orbit,
                                    parity_subseries, random_seed, square_cuts, square_symbol,
                                    u_margin)
from lyapirreg.colli_vargas.checks import random_cone_vector
from lyapirreg.colli_vargas.dynamics import ORIGIN, cone_ok
from lyapirreg.colli_vargas.tables import ConstantSearchError, search_k0
from lyapirreg.numerics import LogValue


# parameters and constants

def test_n_sequence_start():
    assert n_sequence(CvParams(), 3) == [50, 57, 69]


def test_n_sequence_against_float():
    p = CvParams()
    ns = n_sequence(p, 30)
    for j in range(15):
        assert ns[2 * j] == math.floor(50 * (1.15 * 1.2) ** j + 1e-9)
        assert ns[2 * j + 1] == math.floor(50 * 1.15 ** (j + 1) * 1.2 ** j + 1e-9)


@pytest.mark.parametrize("kw,condition", [
    ({"lam": 0.2}, "horseshoe"),
    ({"sigma": 2.0}, "sigma-range"),
    ({"xi": 1.0}, "xi-range"),
    ({"alpha": 1.3, "beta": 1.2}, "alpha-beta-order"),
    ({"n0": 1}, "n0-range"),
    ({"sign_branch": "both"}, "sign-branch"),
])
def test_config_errors(kw, condition):
    with pytest.raises(CvConfigError) as exc:
        CvParams(**kw)
    assert exc.value.condition == condition


def test_ftle_limits_default():
    l_odd, l_even = ftle_limits(CvParams())
    assert l_odd == pytest.approx(-1.329, abs=1e-3)
    assert l_even == pytest.approx(-1.278, abs=1e-3)
    a, b = ftle_limits(CvParams(alpha=1.15, beta=1.15))
    assert a == b


def test_default_constants(cv_params):
    tables, checks = check_constants(cv_params)
    assert all(c.ok for c in checks)
    assert (tables.k0, tables.m_prime, tables.k1, tables.m0) == (4, 24, 28, 1)
    base = next(c for c in checks if c.name.startswith("base rate"))
    # lambda sigma^(4 + 10/n0) with beta = 1.2, n0 = 50
    assert math.exp(-base.margin) == pytest.approx(0.02 * 2.5 ** (4 + 10 / 50), rel=1e-12)


def test_large_beta_fails_base_first():
    tables, checks = check_constants(CvParams(alpha=1.05, beta=1.9))
    assert tables is None
    bad = [c for c in checks if not c.ok]
    assert bad[0].name.startswith("base rate")


def test_search_gives_up_without_growth_bound():
    with pytest.raises(ConstantSearchError):
        search_k0(CvParams(alpha=1.2, beta=1.2))


def test_b_exponents_exact_recursion(cv_tables):
    t = cv_tables
    for k in range(t.k_max):
        assert t.S[k + 1] == 2 * t.S[k] - 4 * t.n[k]
        assert isinstance(t.S[k], Fraction)


def test_b_against_series_oracle(cv_tables):
    # S_k = 2 n_k + sum_{i>=1} n_{k+i} / 2^(i-1), summed directly with mpmath
    t = cv_tables
    ns = n_sequence(t.params, t.k_max + 200)
    with mpmath.workdps(40):
        for k in (0, 5, 40, 100):
            s = 2 * mpmath.mpf(ns[k]) + mpmath.fsum(mpmath.mpf(ns[k + i]) / 2 ** (i - 1) for i in range(1, 180))
            assert float(t.S[k]) == pytest.approx(float(s), rel=1e-14)


def test_b_bounds(cv_tables):
    ls, beta = cv_tables.params.log_sigma, cv_tables.params.beta
    for k in range(cv_tables.k_max + 1):
        n, lb = cv_tables.n[k], cv_tables.log_b[k]
        assert -4 * (n + 1) / (2 - beta) * ls < lb < -4 * n * ls


# the map

def test_apply_F_examples(cv_tables):
    t = cv_tables
    assert apply_F(t, 4, ORIGIN) == ORIGIN
    y = LogValue(1, 0.5 * t.log_b[4] - 3)
    img = apply_F(t, 4, CvPoint(LogValue(0), y))
    n = t.n[4]
    assert img.y.is_zero
    assert img.x.sign == -1
    assert img.x.logmag == pytest.approx(n * math.log(0.02) + y.logmag)
    other = build_tables(CvParams(sign_branch="minus"), 10)
    assert apply_F(other, 4, CvPoint(LogValue(0), y)).x.sign == 1


def test_apply_F_domain(cv_tables):
    big = CvPoint(LogValue(1, 0.0), LogValue(1, 0.0))
    with pytest.raises(ValueError):
        apply_F(cv_tables, 4, big)


_cache = {}


def _tables():
    # hypothesis tests cannot take function-scoped fixtures
    if "t" not in _cache:
        _cache["t"] = build_tables(CvParams(), 150)
    return _cache["t"]


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=2 ** 32), st.sampled_from([4, 6, 8, 30]))
def test_apply_F_against_mpmath(seed, k):
    t = _tables()
    pt = random_seed(t, k, random.Random(seed))
    img = apply_F(t, k, pt)
    n = t.n[k]
    with mpmath.workdps(50):
        x = pt.x.sign * mpmath.exp(pt.x.logmag)
        y = pt.y.sign * mpmath.exp(pt.y.logmag)
        lam, sig = mpmath.mpf("0.02"), mpmath.mpf("2.5")
        want_x = -sig ** (2 * n) * x ** 2 - lam ** n * y
        want_y = sig ** n * x
        assert img.x.sign == mpmath.sign(want_x)
        assert img.x.logmag == pytest.approx(float(mpmath.log(abs(want_x))), rel=1e-12)
        assert img.y.logmag == pytest.approx(float(mpmath.log(abs(want_y))), rel=1e-12)


def test_image_of_seed_in_next_box(cv_tables):
    rng = random.Random(4)
    for _ in range(200):
        k = rng.choice([4, 6, 8, 10])
        pts = orbit(cv_tables, k, random_seed(cv_tables, k, rng), 1)
        assert u_margin(cv_tables, k, 1, pts[1]) >= 0


def test_origin_orbit_constant(cv_tables):
    assert orbit(cv_tables, 4, ORIGIN, 10) == [ORIGIN] * 11


def test_orbit_rejects_bad_start(cv_tables):
    with pytest.raises(ValueError):
        orbit(cv_tables, 5, ORIGIN, 3)
    with pytest.raises(ValueError):
        orbit(cv_tables, 2, ORIGIN, 3)


# randomized suites

def test_strip_sizes(cv_tables):
    assert all(c.ok for c in strip_checks(cv_tables))


def test_containment(cv_tables):
    assert all(c.ok for c in containment_checks(cv_tables, rng=random.Random(0)))


def test_quadratic_bound_from_second_step(cv_tables):
    checks = quadratic_checks(cv_tables, rng=random.Random(1), m_start=2)
    assert all(c.ok for c in checks)


def test_quadratic_bound_first_step_violated_with_searched_m0(cv_tables):
    # the searched m0 = 1 is too small for the quadratic-term bound at m = 1; see README
    checks = quadratic_checks(cv_tables, rng=random.Random(1), m_span=0)
    assert cv_tables.m0 == 1
    assert all(c.indices[2] == 1 and not c.ok for c in checks)


def test_cocycle_constants_and_ordering(cv_tables):
    bad = [c for c in cocycle_checks(cv_tables, pairs=20, steps=30, rng=random.Random(2)) if not c.ok]
    assert not bad


# cocycle and FTLE

def _run(params, steps=80, seed=0):
    t = build_tables(params)
    k, m = t.k1, t.m0 + t.m0 % 2
    t = build_tables(params, k + m + steps + 1)
    rng = random.Random(seed)
    return t, cocycle(t, k, m, random_seed(t, k, rng), random_cone_vector(params, rng), steps)


def test_cone():
    p = CvParams()
    assert cone_ok(p, (1.0, 1.0))
    assert not cone_ok(p, (2.0, 1.0))
    t = build_tables(p, 80)
    with pytest.raises(ValueError, match="cone"):
        cocycle(t, t.k1, 2, ORIGIN, (5.0, 1.0), 4)
    t2 = build_tables(CvParams(xi=0.5), 80)
    with pytest.raises(ValueError, match="empty"):
        cocycle(t2, t2.k1, 2, ORIGIN, (1.0, 1.0), 4)


def test_cocycle_rejects_odd_m():
    t = build_tables(CvParams(), 80)
    with pytest.raises(ValueError):
        cocycle(t, t.k1, 3, ORIGIN, (1.0, 1.0), 4)


def test_ftle_parity_limits():
    params = CvParams()
    t, cc = _run(params)
    odd, even = parity_subseries(ftle_series(t, cc))
    l_odd, l_even = ftle_limits(params)
    assert tail_limit(odd)[0] == pytest.approx(l_odd, abs=1e-3)
    assert tail_limit(even)[0] == pytest.approx(l_even, abs=1e-3)
    v = detect_irregular(odd, even)
    assert v.verdict == IRREGULAR
    assert v.gap == pytest.approx(abs(l_odd - l_even), abs=1e-3)


def test_constants_near_one():
    _, cc = _run(CvParams(), steps=40)
    for idx, cs in cc.constants().items():
        for c in cs:
            assert 0.5 <= c <= 1.5


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_ftle_seed_independent(seed):
    params = CvParams()
    t, cc = _run(params, steps=60, seed=seed)
    odd, even = parity_subseries(ftle_series(t, cc))
    assert abs(tail_limit(odd)[0] - tail_limit(even)[0]) == pytest.approx(
        abs(ftle_limits(params)[0] - ftle_limits(params)[1]), abs=2e-3)


# symbolic Birkhoff averages

def test_square_symbol():
    assert [square_symbol(k) for k in (1, 3, 4, 8, 9, 15, 16)] == \
        ["plus", "plus", "minus", "minus", "plus", "plus", "minus"]


def test_constant_observable_both_families():
    p = CvParams()
    for fam in ("regular", "irregular-squares"):
        avgs = block_averages(build_itinerary(p, fam, 30), 0.7, 0.7, L0=3)
        assert all(a == pytest.approx(0.7) for _, _, a in avgs)


def test_regular_family_converges():
    avgs = block_averages(build_itinerary(CvParams(), "regular", 60), 1.0, 0.0, L0=5)
    assert avgs[-1][2] == pytest.approx(1.0, abs=1e-3)


def test_irregular_family_cuts_follow_latest_run():
    # each run dominates everything before it, so the average at a cut is
    # set by the run that the cut closes
    cuts = square_cuts(CvParams(), 8)
    assert cuts["even_cut"] >= 1 - 1e-2
    assert cuts["odd_cut"] <= 1e-2


def test_irregular_family_keeps_oscillating():
    p = CvParams()
    for q in (6, 7, 8):
        cuts = square_cuts(p, q)
        assert cuts["even_cut"] - cuts["odd_cut"] > 0.9


def test_cut_includes_blocks_before_q_only():
    p = CvParams()
    cuts = square_cuts(p, 2)
    it = build_itinerary(p, "irregular-squares", 25)
    steps = {k: (n, a) for k, n, a in block_averages(it, 1.0, 0.0)}
    assert cuts["even_cut"] == steps[15][1]
    assert cuts["odd_cut_next"] == steps[25][1]


def test_bad_family():
    with pytest.raises(ValueError):
        build_itinerary(CvParams(), "other", 5)
