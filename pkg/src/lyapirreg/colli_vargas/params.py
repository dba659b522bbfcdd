"""Parameters of the return-map cascade and their basic validation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice


class CvConfigError(ValueError):
    """A parameter set outside the admissible region; ``condition`` names the failed test."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"{condition}: {message}")
        self.condition = condition


@dataclass(frozen=True)
class CvParams:
    lam: float = 0.02
    sigma: float = 2.5
    alpha: float = 1.15
    beta: float = 1.2
    n0: int = 50
    # xi = 0.25 gives K = 4/3; any xi > 1/3 makes the cone K^-1 <= |v|/|w| <= K empty
    xi: float = 0.25
    eta: float = 0.25
    sign_branch: str = "plus"

    def __post_init__(self):
        if not 0 < self.lam < 0.5:
            raise CvConfigError("lambda-range", f"need 0 < lambda < 1/2, got {self.lam}")
        if not self.sigma > 2:
            raise CvConfigError("sigma-range", f"need sigma > 2, got {self.sigma}")
        if not self.lam * self.sigma ** 2 < 1:
            raise CvConfigError(
                "horseshoe", f"need lambda*sigma^2 < 1, got {self.lam * self.sigma ** 2:.6g}")
        if int(self.n0) != self.n0 or self.n0 < 2:
            raise CvConfigError("n0-range", f"n0 must be an integer >= 2, got {self.n0}")
        if not 0 < self.xi < 1:
            raise CvConfigError("xi-range", f"need 0 < xi < 1, got {self.xi}")
        if not self.eta > 0:
            raise CvConfigError("eta-range", f"need eta > 0, got {self.eta}")
        if not 1 < self.alpha <= self.beta:
            raise CvConfigError(
                "alpha-beta-order", f"need 1 < alpha <= beta, got alpha={self.alpha}, beta={self.beta}")
        if self.sign_branch not in ("plus", "minus"):
            raise CvConfigError("sign-branch", f"sign_branch must be plus or minus, got {self.sign_branch!r}")

    @property
    def K(self) -> float:
        return 1.0 / (3.0 * self.xi)

    @property
    def degenerate(self) -> bool:
        """alpha == beta: both FTLE limits coincide, no irregularity to detect."""
        return self.alpha == self.beta

    @property
    def log_lam(self) -> float:
        return math.log(self.lam)

    @property
    def log_sigma(self) -> float:
        return math.log(self.sigma)

    @property
    def signs(self) -> tuple[int, int]:
        """(s1, s2) in F(x, y) = (-sigma^2n x^2 + s1 lambda^n y, s2 sigma^n x)."""
        return (-1, 1) if self.sign_branch == "plus" else (1, -1)

    def exact_alpha(self) -> Fraction:
        return Fraction(str(self.alpha))

    def exact_beta(self) -> Fraction:
        return Fraction(str(self.beta))


def iter_n(params: CvParams):
    """n_0, n_1, ...: n_2p = floor(n0 (ab)^p), n_2p+1 = floor(n0 a^(p+1) b^p), exactly."""
    a, b = params.exact_alpha(), params.exact_beta()
    base = Fraction(params.n0)
    while True:
        yield math.floor(base)
        yield math.floor(base * a)
        base *= a * b


def n_sequence(params: CvParams, count: int) -> list[int]:
    return list(islice(iter_n(params), count))


def log_eps_base(params: CvParams, n: int) -> float:
    """log(lambda sigma^((6 beta - 4 + 8/n)/(2 - beta)))."""
    beta = params.beta
    return params.log_lam + (6 * beta - 4 + 8 / n) / (2 - beta) * params.log_sigma


def log_eps(params: CvParams, n: int) -> float:
    """log eps for a block of length n, i.e. n * log_eps_base(n) without the 8/n rounding."""
    beta = params.beta
    return n * params.log_lam + ((6 * beta - 4) * n + 8) / (2 - beta) * params.log_sigma


def ftle_limits(params: CvParams) -> tuple[float, float]:
    """(L_odd, L_even) for the odd- and even-indexed partial sums."""
    ll, ls = params.log_lam, params.log_sigma
    a, b = params.alpha, params.beta
    return (ll + a * ls) / (1 + a), (ll + b * ls) / (1 + b)
