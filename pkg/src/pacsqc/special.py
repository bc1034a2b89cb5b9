"""Scalar special functions and entropy primitives.

Everything downstream (state constructors, closed-form correlation measures,
oracle comparisons) reduces to three ingredients: Laguerre polynomials
L_m(x), the overlap ratio kappa_m = L_m(x)/L_m(-x) of opposite-phase
photon-added coherent states, and the base-2 binary entropy.  All functions
here are pure and safe for concurrent use.
"""

import math

__all__ = [
    "MAX_PHOTON_ORDER",
    "laguerre",
    "kappa",
    "kappa_small_alpha",
    "pacs_overlap",
    "binary_entropy",
]

MAX_PHOTON_ORDER = 64

_ENTROPY_GUARD = 1e-12
_SMALL_ALPHA_WINDOW = 0.05


def _check_order(m):
    if m != int(m):
        raise ValueError(f"photon order must be an integer, got {m!r}")
    m = int(m)
    if not 0 <= m <= MAX_PHOTON_ORDER:
        raise ValueError(f"photon order must lie in [0, {MAX_PHOTON_ORDER}], got {m}")
    return m


def _check_alpha2(alpha2):
    alpha2 = float(alpha2)
    if not math.isfinite(alpha2) or alpha2 < 0.0:
        raise ValueError(f"|alpha|^2 must be finite and non-negative, got {alpha2!r}")
    return alpha2


def laguerre(m, x):
    """Laguerre polynomial L_m(x) via the three-term recurrence.

    Parameters
    ----------
    m : int
        Polynomial order, 0 <= m <= MAX_PHOTON_ORDER.
    x : float
        Evaluation point, any finite real.

    Returns
    -------
    float

    Notes
    -----
    Uses (n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1}, which keeps full accuracy
    at orders where the alternating power-series form already loses digits
    to cancellation.
    """
    m = _check_order(m)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"laguerre argument must be finite, got {x!r}")
    if m == 0:
        return 1.0
    prev = 1.0
    cur = 1.0 - x
    for n in range(1, m):
        prev, cur = cur, ((2.0 * n + 1.0 - x) * cur - n * prev) / (n + 1.0)
    return cur


def kappa(m, alpha2):
    """Overlap ratio kappa_m(|alpha|^2) = L_m(|alpha|^2) / L_m(-|alpha|^2).

    The denominator is a sum of positive terms and therefore strictly
    positive for alpha2 >= 0; the triangle inequality gives |kappa| <= 1.
    """
    alpha2 = _check_alpha2(alpha2)
    return laguerre(m, alpha2) / laguerre(m, -alpha2)


def kappa_small_alpha(m, alpha2):
    """First-order expansion kappa_m ~ 1 - 2 m |alpha|^2 of the overlap ratio.

    Valid only on the small-amplitude window alpha2 < 0.05; outside it the
    truncated series is misleading and a ValueError is raised.
    """
    m = _check_order(m)
    alpha2 = _check_alpha2(alpha2)
    if alpha2 >= _SMALL_ALPHA_WINDOW:
        raise ValueError(
            f"small-amplitude expansion requires |alpha|^2 < {_SMALL_ALPHA_WINDOW}, got {alpha2}"
        )
    return 1.0 - 2.0 * m * alpha2


def pacs_overlap(m, alpha2):
    """Overlap <-alpha,m | alpha,m> = exp(-2 |alpha|^2) kappa_m of the
    opposite-phase m-photon-added coherent-state pair.  Magnitude <= 1."""
    alpha2 = _check_alpha2(alpha2)
    return math.exp(-2.0 * alpha2) * kappa(m, alpha2)


def binary_entropy(x):
    """Binary entropy H(x) = -x log2 x - (1-x) log2 (1-x) with H(0) = H(1) = 0.

    The argument may stray outside [0, 1] by at most 1e-12 (floating-point
    guard) and is clamped back; larger excursions indicate an upstream bug
    and raise instead of being silently absorbed.
    """
    x = float(x)
    if not -_ENTROPY_GUARD <= x <= 1.0 + _ENTROPY_GUARD:
        raise ValueError(f"binary entropy argument outside the [0, 1] guard band: {x!r}")
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))
