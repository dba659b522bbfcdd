"""Bowen flow: two dissipative saddles joined by an attracting heteroclinic cycle.

The flow is modelled in linearizing coordinates only.  Near ``p`` the flow is
``(r, s) -> (exp(-alpha_minus t) r, exp(alpha_plus t) s)`` on ``(0, 1]^2``,
likewise near ``p_hat`` with the betas.  Entering ``N`` at ``(1, s_n)`` the
orbit leaves through ``(r_n, 1)`` after ``t_n = -log(s_n) / alpha_plus`` with
``r_n = s_n**a``; the transit to ``p_hat`` takes a fixed time and lands at
``s_hat_n = c r_n``, and symmetrically back to ``s_{n+1} = c_hat r_hat_n``.

Everything is tracked through ``L = log s_n``, which grows like ``(ab)**n``,
so no ODE integration is involved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from .analysis import FtleSeries


@dataclass(frozen=True)
class BowenParams:
    alpha_plus: float = 1.0
    alpha_minus: float = 1.2
    beta_plus: float = 1.0
    beta_minus: float = 1.2
    c: float = 1.0
    c_hat: float = 1.0
    T_bar: float = 1.0       # transit p -> p_hat
    T_hat_bar: float = 1.0   # transit p_hat -> p
    T_hat_0: float = 1.0     # time to first reach the section of N
    s_init: float = 0.5
    # size of the neglected higher-order transition term, see _transition
    delta: float = 0.0

    def __post_init__(self):
        rates = (self.alpha_plus, self.alpha_minus, self.beta_plus, self.beta_minus)
        if min(rates) <= 0:
            raise ValueError("eigenvalue rates must be positive")
        if min(self.c, self.c_hat, self.T_bar, self.T_hat_bar) <= 0 or self.T_hat_0 < 0:
            raise ValueError("transition constants and durations must be positive")
        if not 0 < self.s_init < 1:
            raise ValueError("s_init must lie in (0, 1)")
        if not self.alpha_minus * self.beta_minus > self.alpha_plus * self.beta_plus:
            raise ValueError("cycle is not attracting: need alpha_minus*beta_minus > alpha_plus*beta_plus")

    @property
    def a(self) -> float:
        return self.alpha_minus / self.alpha_plus

    @property
    def b(self) -> float:
        return self.beta_minus / self.beta_plus

    @property
    def r(self) -> float:
        return self.alpha_minus / self.beta_plus

    @property
    def r_hat(self) -> float:
        return self.beta_minus / self.alpha_plus


@dataclass(frozen=True)
class BowenLogState:
    """Logs of the section coordinates of the n-th passage near p and p_hat."""

    n: int
    L: float          # log s_n
    log_r: float      # log r_n
    log_s_hat: float  # log s_hat_n
    log_r_hat: float  # log r_hat_n

    def t(self, params: BowenParams) -> float:
        return -self.L / params.alpha_plus

    def t_hat(self, params: BowenParams) -> float:
        return -self.log_s_hat / params.beta_plus


def _transition(const: float, log_in: float, delta: float) -> float:
    # s_out = const * s_in * (1 + delta * s_in**0.5); delta = 0 drops the
    # higher-order term entirely
    out = math.log(const) + log_in
    if delta:
        out += math.log1p(delta * math.exp(0.5 * log_in))
    return out


def initial_state(params: BowenParams) -> BowenLogState:
    return _fill(params, 1, math.log(params.s_init))


def _fill(params: BowenParams, n: int, L: float) -> BowenLogState:
    if not L < 0:
        raise ValueError(f"passage {n} enters outside the linearizing box (log s = {L:.6g} >= 0); "
                         "reduce s_init or delta")
    log_r = params.a * L
    log_s_hat = _transition(params.c, log_r, params.delta)
    return BowenLogState(n, L, log_r, log_s_hat, params.b * log_s_hat)


def advance(params: BowenParams, state: BowenLogState) -> BowenLogState:
    L_next = _transition(params.c_hat, state.log_r_hat, params.delta)
    return _fill(params, state.n + 1, L_next)


def states(params: BowenParams, n_max: int) -> list[BowenLogState]:
    """States 1..n_max."""
    out = [initial_state(params)]
    while len(out) < n_max:
        out.append(advance(params, out[-1]))
    return out


@dataclass(frozen=True)
class Passage:
    n: int
    tau: float
    tau_hat: float
    t: float
    t_hat: float
    rho: float
    log_speed_closest: float
    state: BowenLogState


def _closest(params: BowenParams, L: float, t_n: float) -> tuple[float, float]:
    """Minimizer of exp(-2 a_- t) + exp(2 a_+ t) s^2 on [0, t_n] and log|L(f^rho(1, s))|."""
    ap, am = params.alpha_plus, params.alpha_minus
    c1 = (math.log(am) - math.log(ap)) / (2 * (ap + am))
    rho = min(max(-L / (ap + am) + c1, 0.0), t_n)
    log_speed = 0.5 * np.logaddexp(2 * math.log(am) - 2 * am * rho,
                                   2 * math.log(ap) + 2 * ap * rho + 2 * L)
    return rho, float(log_speed)


def passages(params: BowenParams, n_max: int) -> Iterator[Passage]:
    """Passages 1..n_max with return times, closest-approach data and durations."""
    tau = params.T_hat_0
    state = initial_state(params)
    for n in range(1, n_max + 1):
        t, t_hat = state.t(params), state.t_hat(params)
        rho, log_speed = _closest(params, state.L, t)
        yield Passage(n, tau, tau + t + params.T_bar, t, t_hat, rho, log_speed, state)
        tau += t + params.T_bar + t_hat + params.T_hat_bar
        state = advance(params, state)


def _passage(params: BowenParams, n: int) -> Passage:
    if n < 1:
        raise ValueError("n must be >= 1")
    for p in passages(params, n):
        pass
    return p


def return_times(params: BowenParams, n: int) -> tuple[float, float]:
    """(tau_n, tau_hat_n): n-th return times to the neighbourhoods of p and p_hat."""
    p = _passage(params, n)
    return p.tau, p.tau_hat


def closest_approach(params: BowenParams, n: int) -> tuple[float, float]:
    """(rho_n, log of the flow speed at the closest approach to p on passage n)."""
    p = _passage(params, n)
    return p.rho, p.log_speed_closest


def closest_approach_constants(params: BowenParams) -> tuple[float, float]:
    """(C1, C1') in rho_n = -log s_n / (a_+ + a_-) + C1 and speed = C1' s_n**(a_-/(a_+ + a_-))."""
    ap, am = params.alpha_plus, params.alpha_minus
    c1 = (math.log(am) - math.log(ap)) / (2 * (ap + am))
    c1p = math.sqrt(am ** 2 * math.exp(-2 * am * c1) + ap ** 2 * math.exp(2 * ap * c1))
    return c1, c1p


def section_log_speed(params: BowenParams, near_hat: bool, log_s: float) -> float:
    """log|V| at the entry point (1, s) of the linearized box around p or p_hat."""
    plus, minus = ((params.beta_plus, params.beta_minus) if near_hat
                   else (params.alpha_plus, params.alpha_minus))
    return 0.5 * float(np.logaddexp(2 * math.log(minus), 2 * math.log(plus) + 2 * log_s))


def birkhoff_averages(params: BowenParams, phi_p: float, phi_phat: float, n: int,
                      phi_transit: float | None = None) -> tuple[float, float]:
    """Time averages of an observable over [0, tau_n] and [0, tau_hat_n].

    The observable equals ``phi_p`` during passages near p, ``phi_phat`` near
    p_hat and ``phi_transit`` (default: their midpoint) on the bounded transits.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if phi_transit is None:
        phi_transit = 0.5 * (phi_p + phi_phat)
    integral = phi_transit * params.T_hat_0
    for p in passages(params, n):
        if p.n == n:
            at_tau = integral / p.tau
            integral += p.t * phi_p + params.T_bar * phi_transit
            return at_tau, integral / p.tau_hat
        integral += (p.t * phi_p + p.t_hat * phi_phat
                     + (params.T_bar + params.T_hat_bar) * phi_transit)
    raise AssertionError("unreachable")


def birkhoff_limits(params: BowenParams, phi_p: float, phi_phat: float) -> tuple[float, float]:
    """Limits of the two averages in :func:`birkhoff_averages`.

    On entering N the orbit has just spent r = alpha_minus/beta_plus times as
    long near p_hat as on its previous visit to p, so p_hat carries weight r
    along tau_n; after the following visit to p the weights are r_hat : 1.
    """
    r, r_hat = params.r, params.r_hat
    return (phi_p + r * phi_phat) / (1 + r), (r_hat * phi_p + phi_phat) / (1 + r_hat)


def closest_approach_limit(params: BowenParams) -> float:
    ap, am, bp, bm = params.alpha_plus, params.alpha_minus, params.beta_plus, params.beta_minus
    return (ap * bp - am * bm) / (ap + bp + am + bm)


SCHEDULES = ("tau", "tau_hat", "tau_plus_rho")


def flow_ftle(params: BowenParams, schedule: str, n: int) -> FtleSeries:
    """(1/t) log|Df^t(x) V(x)| = (1/t) log|V(f^t x)| along one of the schedules, for passages 1..n."""
    if schedule not in SCHEDULES:
        raise ValueError(f"schedule must be one of {SCHEDULES}, got {schedule!r}")
    entries = []
    for p in passages(params, n):
        if schedule == "tau":
            t, ls = p.tau, section_log_speed(params, False, p.state.L)
        elif schedule == "tau_hat":
            t, ls = p.tau_hat, section_log_speed(params, True, p.state.log_s_hat)
        else:
            t, ls = p.tau + p.rho, p.log_speed_closest
        entries.append((t, ls / t))
    return FtleSeries(tuple(entries), system="bowen", vector=("V",), schedule=schedule)


def passage_rows(params: BowenParams, n_max: int, phi_p: float = 1.0, phi_phat: float = 0.0):
    """Rows (n, tau, tau_hat, rho, L, avg_tau, avg_tau_hat, ftle_tau, ftle_tau_hat, ftle_rho)."""
    integral = 0.5 * (phi_p + phi_phat) * params.T_hat_0
    mid = 0.5 * (phi_p + phi_phat)
    for p in passages(params, n_max):
        avg_tau = integral / p.tau
        integral += p.t * phi_p + params.T_bar * mid
        avg_tau_hat = integral / p.tau_hat
        integral += p.t_hat * phi_phat + params.T_hat_bar * mid
        yield (p.n, p.tau, p.tau_hat, p.rho, p.state.L, avg_tau, avg_tau_hat,
               section_log_speed(params, False, p.state.L) / p.tau,
               section_log_speed(params, True, p.state.log_s_hat) / p.tau_hat,
               p.log_speed_closest / (p.tau + p.rho))


def with_overrides(params: BowenParams, **kw) -> BowenParams:
    return replace(params, **kw)
