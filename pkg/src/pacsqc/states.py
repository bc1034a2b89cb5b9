"""Encoded qubit states for coherent-state superpositions with photon excitations.

Opposite-phase Glauber states |alpha>, |-alpha> (the first mode optionally
excited by m actions of the creation operator) are mapped onto logical qubits
in the orthogonal even/odd cat-state basis.  This module provides closed-form
constructors for

* the two-qubit coefficient matrix of the quasi-Bell superposition,
* the reduced densities rho_12 = rho_13 and rho_23 of the GHZ-type three-mode
  superposition, which are X-shaped in the encoded basis,
* the pure-state coefficients of the 1|(23) bipartition.

Conventions: the qubit basis is ordered |00>, |01>, |10>, |11> with the
lower-numbered mode as the left tensor factor, all cat amplitudes are real
non-negative, and the relative phase exp(i k pi) is reduced to the sign
cos(k pi) = +-1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .special import MAX_PHOTON_ORDER, kappa

__all__ = [
    "DEGENERATE_ALPHA2",
    "LimitRegimeError",
    "ModelParams",
    "QubitAmplitudes",
    "TwoQubitPure",
    "XStateDensity",
    "mode1_amplitudes",
    "mode23_amplitudes",
    "bell_state",
    "ghz_rho12",
    "ghz_rho23",
    "ghz_split_1_23",
]

# Below this strength the odd-parity family degenerates (0/0 normalization).
DEGENERATE_ALPHA2 = 1e-8


class LimitRegimeError(ValueError):
    """Raised at the odd-parity small-amplitude point where the superposition
    norm vanishes and direct construction is a 0/0.  Callers should use the
    analytic small-amplitude limits in :mod:`pacsqc.correlations` instead."""


@dataclass(frozen=True)
class ModelParams:
    """Parameter point: coherent strength |alpha|^2, excitation order m, parity k.

    k = 0 selects the symmetric (even) superposition, k = 1 the antisymmetric
    (odd) one; only the parity of k is physical.
    """

    alpha2: float
    m: int = 0
    k: int = 0

    def __post_init__(self):
        alpha2 = float(self.alpha2)
        if not math.isfinite(alpha2) or alpha2 < 0.0:
            raise ValueError(f"|alpha|^2 must be finite and non-negative, got {self.alpha2!r}")
        object.__setattr__(self, "alpha2", alpha2)
        if self.m != int(self.m) or not 0 <= int(self.m) <= MAX_PHOTON_ORDER:
            raise ValueError(f"photon order must be an integer in [0, {MAX_PHOTON_ORDER}], got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        if self.k not in (0, 1):
            raise ValueError(f"parity flag k must be 0 (even) or 1 (odd), got {self.k!r}")

    @property
    def p(self):
        """Coherent-state overlap p = exp(-2 |alpha|^2)."""
        return math.exp(-2.0 * self.alpha2)

    @property
    def sign(self):
        """cos(k pi) as an exact integer, +1 for even k and -1 for odd k."""
        return 1 if self.k == 0 else -1

    @property
    def kappa_m(self):
        """Overlap ratio kappa_m(|alpha|^2) of the excited mode."""
        return kappa(self.m, self.alpha2)

    @property
    def is_degenerate(self):
        """True on the odd-parity degenerate point alpha2 < DEGENERATE_ALPHA2."""
        return self.k == 1 and self.alpha2 < DEGENERATE_ALPHA2


def _require_regular(params):
    if params.is_degenerate:
        raise LimitRegimeError(
            "odd-parity state degenerates for |alpha|^2 < "
            f"{DEGENERATE_ALPHA2}; use the analytic small-amplitude limits "
            "(correlations.w_limit_report) instead"
        )


@dataclass(frozen=True)
class QubitAmplitudes:
    """Cat-basis amplitudes (c_plus, c_minus) of a coherent state, with
    c_plus^2 + c_minus^2 = 1."""

    c_plus: float
    c_minus: float

    def __post_init__(self):
        if abs(self.c_plus**2 + self.c_minus**2 - 1.0) > 1e-12:
            raise ValueError(
                f"amplitudes must satisfy c+^2 + c-^2 = 1, got ({self.c_plus}, {self.c_minus})"
            )


def _split_amplitudes(overlap):
    # overlap = <phase-flipped | state> of the mode's nonorthogonal pair
    r_plus = 0.5 * (1.0 + overlap)
    r_minus = 0.5 * (1.0 - overlap)
    if min(r_plus, r_minus) < -1e-12:
        raise ArithmeticError(f"overlap bound violated: {overlap!r}")
    return QubitAmplitudes(math.sqrt(max(r_plus, 0.0)), math.sqrt(max(r_minus, 0.0)))


def mode1_amplitudes(params):
    """Amplitudes c_m^± = sqrt((1 ± kappa_m e^{-2|alpha|^2}) / 2) of the
    photon-excited first mode in its even/odd cat basis."""
    return _split_amplitudes(params.kappa_m * params.p)


def mode23_amplitudes(alpha2):
    """Amplitudes c^± = sqrt((1 ± e^{-2|alpha|^2}) / 2) of an unexcited mode."""
    alpha2 = float(alpha2)
    if not math.isfinite(alpha2) or alpha2 < 0.0:
        raise ValueError(f"|alpha|^2 must be finite and non-negative, got {alpha2!r}")
    return _split_amplitudes(math.exp(-2.0 * alpha2))


@dataclass(frozen=True)
class TwoQubitPure:
    """Pure two-qubit state stored as a 2x2 coefficient matrix plus the
    normalization scalar that makes the total weight one."""

    coeffs: np.ndarray
    norm: float = 1.0

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex).reshape(2, 2)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        weight = self.norm**2 * float(np.sum(np.abs(coeffs) ** 2))
        if abs(weight - 1.0) > 1e-12:
            raise ValueError(f"normalized coefficients must carry unit weight, got {weight!r}")

    def normalized(self):
        """2x2 coefficient matrix with the normalization folded in."""
        return self.norm * self.coeffs

    def concurrence(self):
        """Pure-state concurrence 2 |C00 C11 - C01 C10|."""
        c = self.normalized()
        return float(2.0 * abs(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0]))

    def schmidt_coefficients(self):
        """Squared Schmidt coefficients in descending order (the eigenvalues
        of either single-qubit marginal)."""
        singular = np.linalg.svd(self.normalized(), compute_uv=False)
        return np.sort(singular**2)[::-1]


@dataclass(frozen=True)
class XStateDensity:
    """Two-qubit density matrix supported on the diagonal and anti-diagonal.

    Stored as the four real diagonal entries plus the two independent
    anti-diagonal entries (1,4) and (2,3); Hermiticity and the zero pattern
    then hold by construction.
    """

    diag: np.ndarray
    off_outer: complex
    off_inner: complex

    def __post_init__(self):
        diag = np.array(self.diag, dtype=float).reshape(4)
        diag.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "off_outer", complex(self.off_outer))
        object.__setattr__(self, "off_inner", complex(self.off_inner))
        if abs(float(diag.sum()) - 1.0) > 1e-12:
            raise ValueError(f"trace must be 1, got {float(diag.sum())!r}")
        low = min(self.eigenvalues())
        if low < -1e-10:
            raise ValueError(f"matrix not positive semidefinite: min eigenvalue {low}")

    def eigenvalues(self):
        """All four eigenvalues, from the (1,4) and (2,3) 2x2 blocks, ascending."""
        out = []
        for i, j, off in ((0, 3, self.off_outer), (1, 2, self.off_inner)):
            mid = 0.5 * (self.diag[i] + self.diag[j])
            rad = math.hypot(0.5 * (self.diag[i] - self.diag[j]), abs(off))
            out += [mid - rad, mid + rad]
        return sorted(out)

    def to_matrix(self):
        """Dense 4x4 complex matrix in the |00>,|01>,|10>,|11> basis."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[np.diag_indices(4)] = self.diag
        rho[0, 3] = self.off_outer
        rho[3, 0] = np.conj(self.off_outer)
        rho[1, 2] = self.off_inner
        rho[2, 1] = np.conj(self.off_inner)
        return rho

    def purity(self):
        """Tr(rho^2), between 1/4 and 1 for two qubits."""
        return float(sum(lam * lam for lam in self.eigenvalues()))


def _ghz_norm_sq_inv(params):
    # 1 / C_k^2 = 2 + 2 kappa_m e^{-6 |alpha|^2} cos(k pi)
    return 2.0 + 2.0 * params.kappa_m * math.exp(-6.0 * params.alpha2) * params.sign


def bell_state(params):
    """Photon-added quasi-Bell state as a two-qubit coefficient matrix.

    The coefficients are the cat-basis expansion of
    |m,alpha>|alpha> + e^{i k pi} |m,-alpha>|-alpha>, normalized by
    (2 + 2 kappa_m e^{-4|alpha|^2} cos k pi)^{-1/2}; for even (odd) parity
    the anti-parallel (parallel) entries vanish identically.
    """
    _require_regular(params)
    cm = mode1_amplitudes(params)
    c = mode23_amplitudes(params.alpha2)
    s = params.sign
    coeffs = np.array(
        [
            [cm.c_plus * c.c_plus * (1 + s), cm.c_plus * c.c_minus * (1 - s)],
            [c.c_plus * cm.c_minus * (1 - s), cm.c_minus * c.c_minus * (1 + s)],
        ],
        dtype=complex,
    )
    norm_sq_inv = 2.0 + 2.0 * params.kappa_m * math.exp(-4.0 * params.alpha2) * s
    return TwoQubitPure(coeffs, 1.0 / math.sqrt(norm_sq_inv))


def ghz_rho12(params):
    """Reduced density of modes (1,2) of the GHZ-type state; modes (1,3) give
    the identical matrix because only mode 1 carries the excitation.

    Equal to the quasi-Bell projector and its phase flip mixed with weights
    (1 ± e^{-2|alpha|^2})/2 and rescaled into the encoded product basis,
    which is where the X shape appears.
    """
    _require_regular(params)
    cm = mode1_amplitudes(params)
    c = mode23_amplitudes(params.alpha2)
    scale = 2.0 / _ghz_norm_sq_inv(params)
    w_plus = 1.0 + params.p * params.sign
    w_minus = 1.0 - params.p * params.sign
    aa = cm.c_plus * c.c_plus
    bb = cm.c_plus * c.c_minus
    cc = cm.c_minus * c.c_plus
    dd = cm.c_minus * c.c_minus
    diag = scale * np.array([aa * aa * w_plus, bb * bb * w_minus, cc * cc * w_minus, dd * dd * w_plus])
    return XStateDensity(diag, scale * aa * dd * w_plus, scale * bb * cc * w_minus)


def ghz_rho23(params):
    """Reduced density of modes (2,3) of the GHZ-type state.

    Same structure as :func:`ghz_rho12` built on the unexcited quasi-Bell
    pair, with the mixing weights (1 ± kappa_m e^{-2|alpha|^2})/2 carrying
    the excitation order; for m = 0 the two reductions coincide entrywise.
    """
    _require_regular(params)
    c = mode23_amplitudes(params.alpha2)
    scale = 2.0 / _ghz_norm_sq_inv(params)
    q = params.kappa_m * params.p
    w_plus = 1.0 + q * params.sign
    w_minus = 1.0 - q * params.sign
    aa = c.c_plus * c.c_plus
    bb = c.c_plus * c.c_minus
    dd = c.c_minus * c.c_minus
    diag = scale * np.array([aa * aa * w_plus, bb * bb * w_minus, bb * bb * w_minus, dd * dd * w_plus])
    return XStateDensity(diag, scale * aa * dd * w_plus, scale * bb * bb * w_minus)


def ghz_split_1_23(params):
    """GHZ-type state as a pure two-qubit state across the 1 | (23) cut.

    Mode 1 keeps its cat qubit; the joint modes (23) are encoded through the
    orthogonal pair built from |alpha,alpha> ± |-alpha,-alpha>, whose
    amplitudes are sqrt((1 ± e^{-4|alpha|^2})/2).
    """
    _require_regular(params)
    cm = mode1_amplitudes(params)
    c23_plus = math.sqrt(0.5 * (1.0 + math.exp(-4.0 * params.alpha2)))
    c23_minus = math.sqrt(0.5 * -math.expm1(-4.0 * params.alpha2))
    s = params.sign
    coeffs = np.array(
        [
            [(1 + s) * cm.c_plus * c23_plus, (1 - s) * cm.c_plus * c23_minus],
            [(1 - s) * c23_plus * cm.c_minus, (1 + s) * cm.c_minus * c23_minus],
        ],
        dtype=complex,
    )
    return TwoQubitPure(coeffs, math.sqrt(1.0 / _ghz_norm_sq_inv(params)))
