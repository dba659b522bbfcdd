"""Symbolic Birkhoff averages over the block itinerary.

Block k lasts n_k + 2 steps and is spent near the saddle named by its
symbol.  The model charges each block ``phi(symbol) * (n_k + 2)``; with a
boundary slop ``L0 > 0`` the first and last ``L0`` steps of every block are
charged to the other symbol instead, which is the worst case for the limits.
All sums are exact rationals because n_k overflows floats for large k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import isqrt

from .params import CvParams, iter_n

PLUS = "plus"
MINUS = "minus"
FAMILIES = ("regular", "irregular-squares")


def square_symbol(k: int) -> str:
    """plus on [(2p-1)^2, (2p)^2), minus on [(2p)^2, (2p+1)^2)."""
    return PLUS if isqrt(k) % 2 else MINUS


@dataclass(frozen=True)
class Itinerary:
    family: str
    k_start: int
    blocks: tuple  # (k, symbol, length)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")


def build_itinerary(params: CvParams, family: str, k_end: int, k_start: int = 1) -> Itinerary:
    if not 0 <= k_start <= k_end:
        raise ValueError("need 0 <= k_start <= k_end")
    blocks = []
    for k, n in enumerate(islice(iter_n(params), k_end + 1)):
        if k < k_start:
            continue
        sym = PLUS if family == "regular" else square_symbol(k)
        blocks.append((k, sym, n + 2))
    return Itinerary(family, k_start, tuple(blocks))


def block_averages(itinerary: Itinerary, phi_plus: float, phi_minus: float,
                   L0: int = 0) -> list[tuple[int, int, float]]:
    """(k, N(k_start, k), average over the first N(k_start, k) steps) after each block."""
    fp, fm = Fraction(phi_plus), Fraction(phi_minus)
    total = Fraction(0)
    steps = 0
    out = []
    for k, sym, length in itinerary.blocks:
        own, other = (fp, fm) if sym == PLUS else (fm, fp)
        slop = min(2 * L0, length)
        total += own * (length - slop) + other * slop
        steps += length
        out.append((k, steps, float(total / steps)))
    return out


def square_cuts(params: CvParams, p: int, phi_plus: float = 1.0, phi_minus: float = 0.0,
                k_start: int = 1, L0: int = 0) -> dict:
    """Averages of the irregular family over the first N(k_start, q) steps for q = (2p)^2, (2p+1)^2.

    N(k_start, q) counts blocks k_start..q-1, so the even cut closes the plus
    run [(2p-1)^2, (2p)^2) and the odd cut closes the minus run [(2p)^2, (2p+1)^2).
    ``*_next`` keys include block q as well.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    q_even, q_odd = (2 * p) ** 2, (2 * p + 1) ** 2
    if k_start >= q_even:
        raise ValueError("k_start must precede the cuts")
    it = build_itinerary(params, "irregular-squares", q_odd, k_start)
    avg = {k: a for k, _, a in block_averages(it, phi_plus, phi_minus, L0)}
    return {
        "even_cut": avg[q_even - 1],
        "odd_cut": avg[q_odd - 1],
        "even_cut_next": avg[q_even],
        "odd_cut_next": avg[q_odd],
    }
