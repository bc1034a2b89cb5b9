"""Brute-force verification layer in truncated Fock space.

Every state is rebuilt from explicit photon-number amplitudes: overlaps come
from amplitude summation, reduced densities from partial traces, spectra from
a cyclic Jacobi eigensolver, concurrence from the spin-flip spectrum, and
discord from direct minimization of the post-measurement conditional entropy
over projective qubit measurements (coarse Bloch-angle grid followed by a
Nelder-Mead refinement).  None of the closed forms from `states` or
`correlations` enter these code paths; the single shared primitive is the
binary entropy.

Per mode, the pair {|alpha,m>, |-alpha,m>} spans a two-dimensional subspace
that is orthonormalized from its numerically computed Gram matrix into the
even/odd combinations, so reduced densities land in exactly the encoded
basis used by the closed forms and can be compared entrywise.
"""

import math
from dataclasses import dataclass

import numpy as np

from .special import binary_entropy
from .states import LimitRegimeError, ModelParams, DEGENERATE_ALPHA2
from .correlations import report

__all__ = [
    "TAIL_BOUND",
    "TruncationError",
    "FockVector",
    "DensityMatrix",
    "MeasurementPoint",
    "TripartiteState",
    "VerificationRecord",
    "FIELD_BOUNDS",
    "default_nmax",
    "coherent_vector",
    "add_photons",
    "inner",
    "jacobi_eigh",
    "partial_trace",
    "von_neumann_entropy",
    "wootters_concurrence",
    "tripartite_state",
    "build_tripartite",
    "build_bell_pair",
    "discord_numeric",
    "verify",
    "verification_grid",
]

# Maximum squared amplitude tolerated at the truncation edge.
TAIL_BOUND = 1e-24


class TruncationError(ValueError):
    """The requested Fock cutoff cannot hold the state within TAIL_BOUND."""


def default_nmax(alpha2, m):
    """Deterministic truncation rule: Poisson mean plus ten standard
    deviations plus excitation headroom, never below m + 4.

    Each photon addition multiplies the edge amplitude by about sqrt(nmax),
    so the headroom carries 2m rather than m; with that margin the discarded
    mass stays below TAIL_BOUND everywhere the oracle is used.
    """
    alpha2 = float(alpha2)
    return max(int(m) + 4, math.ceil(alpha2 + 10.0 * math.sqrt(alpha2) + 2 * int(m) + 20))


@dataclass(frozen=True)
class FockVector:
    """Truncated Fock-basis amplitude vector a_n = <n|psi>, n = 0..nmax."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex)
        if amp.ndim != 1 or amp.size < 1:
            raise ValueError("amplitudes must form a one-dimensional, non-empty array")
        if not np.all(np.isfinite(amp.view(float))):
            raise ValueError("amplitudes must be finite")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def nmax(self):
        return self.amplitudes.size - 1

    def norm_sq(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


def inner(bra, ket):
    """Inner product <bra|ket> by amplitude summation."""
    if bra.amplitudes.size != ket.amplitudes.size:
        raise ValueError("vectors live on different truncations")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def coherent_vector(alpha, nmax):
    """Coherent state e^{-|alpha|^2/2} sum_n alpha^n / sqrt(n!) |n> truncated
    at nmax; raises TruncationError when the tail amplitude is not negligible."""
    alpha = float(alpha)
    amp = np.zeros(nmax + 1, dtype=complex)
    amp[0] = math.exp(-0.5 * alpha * alpha)
    for n in range(1, nmax + 1):
        amp[n] = amp[n - 1] * alpha / math.sqrt(n)
    if abs(amp[nmax]) ** 2 > TAIL_BOUND:
        raise TruncationError(
            f"nmax={nmax} insufficient for alpha={alpha}: edge weight {abs(amp[nmax]) ** 2:.3e}"
        )
    return FockVector(amp)


def add_photons(vec, m, normalize=True):
    """Apply the creation operator m times (a+ |n> = sqrt(n+1) |n+1>).

    Returns the normalized result by default; with ``normalize=False`` the
    raw vector comes back, whose squared norm for a normalized coherent
    input equals m! L_m(-|alpha|^2).
    """
    if m != int(m) or m < 0:
        raise ValueError(f"photon count must be a non-negative integer, got {m!r}")
    amp = np.array(vec.amplitudes, dtype=complex)
    roots = np.sqrt(np.arange(1.0, amp.size))
    for _ in range(int(m)):
        # the edge amplitude is about to fall off the truncation; its share
        # of the state's mass must be negligible
        mass = float(np.vdot(amp, amp).real)
        if abs(amp[-1]) ** 2 > TAIL_BOUND * mass:
            raise TruncationError("no truncation headroom left for another photon addition")
        amp[1:] = roots * amp[:-1]
        amp[0] = 0.0
    if normalize:
        amp /= math.sqrt(float(np.vdot(amp, amp).real))
        if abs(amp[-1]) ** 2 > TAIL_BOUND:
            raise TruncationError("state no longer fits the truncation after photon addition")
    return FockVector(amp)


def jacobi_eigh(matrix, vectors=False, tol=1e-14, max_sweeps=60):
    """Eigendecomposition of a Hermitian matrix by row-cyclic Jacobi rotations.

    The fixed sweep order and convergence threshold make the spectra
    bit-reproducible between runs.  Returns the eigenvalues in ascending
    order, plus the eigenvector columns when ``vectors=True``.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape != (n, n):
        raise ValueError("matrix must be square")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex) if vectors else None
    scale = max(1.0, float(np.abs(a).max()))
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, float(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                size = abs(apq)
                if size <= 0.0:
                    continue
                phase = apq / size
                tau = (a[q, q].real - a[p, p].real) / (2.0 * size)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s * phase
                rot[q, p] = -s * np.conj(phase)
                a = rot.conj().T @ a @ rot
                if v is not None:
                    v = v @ rot
    else:
        raise RuntimeError("Jacobi sweeps failed to converge")
    eigvals = np.diag(a).real.copy()
    order = np.argsort(eigvals, kind="stable")
    eigvals = eigvals[order]
    if vectors:
        return eigvals, v[:, order]
    return eigvals


@dataclass(frozen=True)
class DensityMatrix:
    """Density matrix on a labeled tensor product of qubit-sized subsystems."""

    data: np.ndarray
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        size = 1
        for d in dims:
            size *= d
        data = np.array(self.data, dtype=complex)
        if data.shape != (size, size):
            raise ValueError(f"data shape {data.shape} does not match dims {dims}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "dims", dims)
        trace = complex(np.trace(data))
        if abs(trace - 1.0) > 1e-10:
            raise ValueError(f"trace must be 1, got {trace!r}")
        if float(np.abs(data - data.conj().T).max()) > 1e-10:
            raise ValueError("matrix is not Hermitian within tolerance")
        if size > 1 and float(jacobi_eigh(data)[0]) < -1e-9:
            raise ValueError("matrix has a negative eigenvalue beyond tolerance")

    def eigenvalues(self):
        """Spectrum in ascending order."""
        return jacobi_eigh(self.data)

    def purity(self):
        return float(np.trace(self.data @ self.data).real)


@dataclass(frozen=True)
class MeasurementPoint:
    """Bloch angles of a rank-1 projective qubit measurement."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2 pi), got {self.phi!r}")

    def spinor(self):
        return np.array(
            [math.cos(0.5 * self.theta), complex(math.cos(self.phi), math.sin(self.phi)) * math.sin(0.5 * self.theta)],
            dtype=complex,
        )


def partial_trace(rho, keep):
    """Trace out every subsystem not listed in ``keep`` (0-based indices,
    original ordering preserved); tracing everything returns the 1x1 unit."""
    keep = tuple(sorted({int(i) for i in keep}))
    n = len(rho.dims)
    if any(i < 0 or i >= n for i in keep):
        raise ValueError(f"invalid subsystem labels {keep} for dims {rho.dims}")
    if not keep:
        return DensityMatrix(np.array([[complex(np.trace(rho.data))]]), ())
    tensor = rho.data.reshape(rho.dims + rho.dims)
    removed = 0
    for i in range(n):
        if i in keep:
            continue
        axis = i - removed
        tensor = np.trace(tensor, axis1=axis, axis2=axis + (n - removed))
        removed += 1
    dims = tuple(rho.dims[i] for i in keep)
    size = 1
    for d in dims:
        size *= d
    return DensityMatrix(tensor.reshape(size, size), dims)


def von_neumann_entropy(rho):
    """- sum_i lambda_i log2 lambda_i over the spectrum (0 log 0 = 0)."""
    data = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    total = 0.0
    for lam in jacobi_eigh(data):
        if lam > 1e-300:
            total -= lam * math.log2(lam)
    return total


_SY_SY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)


def wootters_concurrence(rho):
    """max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
    spectrum of rho (sy x sy) rho* (sy x sy).

    The l_i equal the singular values of A = sqrt(rho) (sy x sy) conj(sqrt(rho))
    since A A+ is exactly the Hermitian similarity of the spin-flip product.
    They are read off the Hermitian dilation [[0, A], [A+, 0]], whose spectrum
    is (+-l_i); that keeps the small l_i at absolute working precision instead
    of square-rooting eigensolver noise.
    """
    data = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if data.shape != (4, 4):
        raise ValueError("concurrence is defined for 4x4 two-qubit densities")
    lam, vec = jacobi_eigh(data, vectors=True)
    root = (vec * np.sqrt(np.clip(lam, 0.0, None))) @ vec.conj().T
    product = root @ _SY_SY @ root.conj()
    dilation = np.zeros((8, 8), dtype=complex)
    dilation[:4, 4:] = product
    dilation[4:, :4] = product.conj().T
    spectrum = jacobi_eigh(dilation)
    lams = np.clip(spectrum[4:][::-1], 0.0, None)
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


@dataclass(frozen=True)
class _ModePair:
    """One mode's orthonormalized cat pair: basis rows (even, odd) in Fock
    space plus the coordinates of |alpha,m> and |-alpha,m> in that basis."""

    basis: np.ndarray
    plus_coords: np.ndarray
    minus_coords: np.ndarray


def _mode_pair(v_plus, v_minus):
    overlap = inner(v_plus, v_minus).real
    even = v_plus.amplitudes + v_minus.amplitudes
    odd = v_plus.amplitudes - v_minus.amplitudes
    n_even = math.sqrt(float(np.vdot(even, even).real))
    n_odd = math.sqrt(float(np.vdot(odd, odd).real))
    if min(n_even, n_odd) < 1e-9:
        raise ValueError("mode Gram matrix is numerically singular; the pair spans no qubit")
    basis = np.vstack([even / n_even, odd / n_odd])
    c_plus = math.sqrt(max(0.0, 0.5 * (1.0 + overlap)))
    c_minus = math.sqrt(max(0.0, 0.5 * (1.0 - overlap)))
    return _ModePair(basis, np.array([c_plus, c_minus]), np.array([c_plus, -c_minus]))


@dataclass(frozen=True)
class TripartiteState:
    """GHZ-type pure state expressed in the 2x2x2 cat-basis subspace."""

    weights: np.ndarray
    modes: tuple
    norm_constant: float

    def fock_amplitude(self, n1, n2, n3):
        """Amplitude <n1 n2 n3|psi> reconstructed from the subspace expansion."""
        b1, b2, b3 = (mode.basis for mode in self.modes)
        return complex(np.einsum("ijk,i,j,k->", self.weights, b1[:, n1], b2[:, n2], b3[:, n3]))


def _require_regular(params):
    if params.is_degenerate:
        raise LimitRegimeError(
            f"odd-parity state degenerates for |alpha|^2 < {DEGENERATE_ALPHA2}"
        )


def tripartite_state(params, nmax=None):
    """Three-mode superposition reduced to its 2x2x2 subspace, with the
    per-mode Fock bases retained for reconstruction."""
    _require_regular(params)
    if nmax is None:
        nmax = default_nmax(params.alpha2, params.m)
    alpha = math.sqrt(params.alpha2)
    excited = _mode_pair(
        add_photons(coherent_vector(alpha, nmax), params.m),
        add_photons(coherent_vector(-alpha, nmax), params.m),
    )
    plain = _mode_pair(coherent_vector(alpha, nmax), coherent_vector(-alpha, nmax))
    forward = np.einsum("i,j,k->ijk", excited.plus_coords, plain.plus_coords, plain.plus_coords)
    backward = np.einsum("i,j,k->ijk", excited.minus_coords, plain.minus_coords, plain.minus_coords)
    raw = forward + params.sign * backward
    norm = math.sqrt(float(np.sum(np.abs(raw) ** 2)))
    if norm < 1e-9:
        raise ValueError("superposition vector vanishes at this parameter point")
    return TripartiteState(raw / norm, (excited, plain, plain), 1.0 / norm)


def build_tripartite(params, nmax=None):
    """Pure-state projector of the GHZ-type superposition on the 2x2x2
    subspace spanned by the per-mode cat pairs."""
    state = tripartite_state(params, nmax)
    vec = state.weights.reshape(8)
    return DensityMatrix(np.outer(vec, vec.conj()), (2, 2, 2))


def build_bell_pair(params, nmax=None):
    """Quasi-Bell pure pair (excited mode 1 with a plain mode 2) as a 4x4
    projector in the cat-basis subspace."""
    _require_regular(params)
    if nmax is None:
        nmax = default_nmax(params.alpha2, params.m)
    alpha = math.sqrt(params.alpha2)
    excited = _mode_pair(
        add_photons(coherent_vector(alpha, nmax), params.m),
        add_photons(coherent_vector(-alpha, nmax), params.m),
    )
    plain = _mode_pair(coherent_vector(alpha, nmax), coherent_vector(-alpha, nmax))
    raw = np.outer(excited.plus_coords, plain.plus_coords) + params.sign * np.outer(
        excited.minus_coords, plain.minus_coords
    )
    norm = math.sqrt(float(np.sum(np.abs(raw) ** 2)))
    if norm < 1e-9:
        raise ValueError("superposition vector vanishes at this parameter point")
    vec = (raw / norm).reshape(4)
    return DensityMatrix(np.outer(vec, vec.conj()), (2, 2))


_THETA_POINTS = 64
_PHI_POINTS = 64


def _xlog2x(values):
    values = np.clip(values, 0.0, None)
    out = np.zeros_like(values)
    mask = values > 1e-300
    out[mask] = values[mask] * np.log2(values[mask])
    return out


def _conditional_entropy(tensor, other_marginal, angles):
    """Post-measurement conditional entropy sum_b p_b S(rho_b) for rank-1
    projective measurements at the given (theta, phi) rows; the measured
    side is the first tensor factor of ``tensor`` (shape (2,2,2,2))."""
    theta = angles[:, 0]
    phi = angles[:, 1]
    spinors = np.empty((angles.shape[0], 2), dtype=complex)
    spinors[:, 0] = np.cos(0.5 * theta)
    spinors[:, 1] = np.exp(1j * phi) * np.sin(0.5 * theta)
    branch = np.einsum("na,ajbl,nb->njl", spinors.conj(), tensor, spinors)
    total = np.zeros(angles.shape[0])
    for sigma in (branch, other_marginal[None, :, :] - branch):
        top = sigma[:, 0, 0].real
        bottom = sigma[:, 1, 1].real
        off = sigma[:, 0, 1]
        mid = 0.5 * (top + bottom)
        rad = np.sqrt(0.25 * (top - bottom) ** 2 + (off * off.conj()).real)
        weight = top + bottom
        # p S(sigma/p) = p log2 p - sum_i lam_i log2 lam_i  (lam unnormalized)
        total += _xlog2x(weight) - _xlog2x(mid - rad) - _xlog2x(mid + rad)
    return total


def discord_numeric(rho, measured=0):
    """Measurement-based quantum discord with a rank-1 projective measurement
    on the ``measured`` qubit (0 = left factor, 1 = right factor).

    The conditional entropy is minimized on a 64x64 (theta, phi) grid and the
    best cell is refined with a Nelder-Mead simplex (angle tolerance 1e-10);
    the result is S_measured - S_joint + min conditional entropy.
    """
    if tuple(rho.dims) != (2, 2):
        raise ValueError("discord is computed for two-qubit densities")
    tensor = rho.data.reshape(2, 2, 2, 2)
    if measured == 1:
        tensor = tensor.transpose(1, 0, 3, 2)
    elif measured != 0:
        raise ValueError("measured side must be 0 or 1")
    measured_marginal = np.einsum("ajbj->ab", tensor)
    other_marginal = np.einsum("jajb->ab", tensor)
    s_measured = von_neumann_entropy(measured_marginal)
    s_joint = von_neumann_entropy(rho)

    theta = np.linspace(0.0, math.pi, _THETA_POINTS)
    phi = np.linspace(0.0, 2.0 * math.pi, _PHI_POINTS, endpoint=False)
    grid_t, grid_p = np.meshgrid(theta, phi, indexing="ij")
    angles = np.column_stack([grid_t.ravel(), grid_p.ravel()])
    values = _conditional_entropy(tensor, other_marginal, angles)
    best = int(np.argmin(values))
    from scipy.optimize import minimize

    def objective(x):
        return float(_conditional_entropy(tensor, other_marginal, x.reshape(1, 2))[0])

    refined = minimize(
        objective,
        angles[best],
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 400},
    )
    s_conditional = min(float(values[best]), float(refined.fun))
    return s_measured - s_joint + s_conditional


# Closed-form-vs-oracle tolerance per report field: entropy, concurrence and
# EoF values agree through eigenvalue arithmetic; the measurement-optimized
# discords carry the grid/refinement tolerance; the deficit inherits twice
# the discord bound.
FIELD_BOUNDS = {
    "S1": 1e-8,
    "S2": 1e-8,
    "S12": 1e-8,
    "S23": 1e-8,
    "C12_conc": 1e-8,
    "C23_conc": 1e-8,
    "C13_conc": 1e-8,
    "C1_23_conc": 1e-8,
    "E12": 1e-8,
    "E23": 1e-8,
    "E13": 1e-8,
    "E1_23": 1e-8,
    "D1_23": 1e-8,
    "D12": 1e-3,
    "D23": 1e-3,
    "Delta123": 2e-3,
}


@dataclass(frozen=True)
class VerificationRecord:
    """Signed deviations (closed form minus oracle) for one parameter point.

    Deviations are kept signed so any systematic bias between the two routes
    stays visible.
    """

    params: ModelParams
    deviations: dict
    bounds: dict

    @property
    def max_abs_deviation(self):
        return max(abs(v) for v in self.deviations.values())

    def worst(self):
        """(field, signed deviation) with the largest bound-relative excess."""
        name = max(self.deviations, key=lambda f: abs(self.deviations[f]) / self.bounds[f])
        return name, self.deviations[name]

    def passes(self, bound_override=None):
        """True when every deviation sits within its bound (or within the
        single override bound when one is given)."""
        for name, dev in self.deviations.items():
            bound = self.bounds[name] if bound_override is None else bound_override
            if abs(dev) > bound:
                return False
        return True


def _eof(concurrence):
    c = min(max(float(concurrence), 0.0), 1.0)
    return binary_entropy(0.5 + 0.5 * math.sqrt(max(0.0, 1.0 - c * c)))


def verify(params, nmax=None):
    """Compare every closed-form report field against its brute-force value."""
    closed = report(params).as_dict()
    rho123 = build_tripartite(params, nmax)
    rho12 = partial_trace(rho123, (0, 1))
    rho23 = partial_trace(rho123, (1, 2))
    rho1 = partial_trace(rho123, (0,))
    rho2 = partial_trace(rho123, (1,))

    s1 = von_neumann_entropy(rho1)
    c23 = wootters_concurrence(rho23)
    c13 = wootters_concurrence(rho12)
    lam1 = np.clip(rho1.eigenvalues(), 0.0, None)
    c1_23 = 2.0 * math.sqrt(float(lam1[0] * lam1[1]))
    bell = build_bell_pair(params, nmax)
    c12 = wootters_concurrence(bell)
    d12 = discord_numeric(rho12, measured=0)
    d23 = discord_numeric(rho23, measured=0)

    oracle = {
        "S1": s1,
        "S2": von_neumann_entropy(rho2),
        "S12": von_neumann_entropy(rho12),
        "S23": von_neumann_entropy(rho23),
        "C12_conc": c12,
        "C23_conc": c23,
        "C13_conc": c13,
        "C1_23_conc": c1_23,
        "E12": _eof(c12),
        "E23": _eof(c23),
        "E13": _eof(c13),
        "E1_23": s1,
        "D12": d12,
        "D23": d23,
        "D1_23": s1,
        "Delta123": s1 - 2.0 * d12,
    }
    deviations = {name: closed[name] - value for name, value in oracle.items()}
    return VerificationRecord(params, deviations, dict(FIELD_BOUNDS))


def verification_grid(alpha2_start=0.1, alpha2_stop=4.0, alpha2_steps=40, m_values=(0, 1, 2, 3, 4), k_values=(0, 1)):
    """Default verification grid: 40 strengths x 5 orders x 2 parities."""
    if alpha2_steps < 1:
        raise ValueError("need at least one grid point")
    if alpha2_steps == 1:
        strengths = [alpha2_start]
    else:
        strengths = [
            alpha2_start + i * (alpha2_stop - alpha2_start) / (alpha2_steps - 1) for i in range(alpha2_steps)
        ]
    points = []
    for k in sorted(k_values):
        for m in sorted(m_values):
            for alpha2 in strengths:
                points.append(ModelParams(alpha2, m, k))
    return points
