"""Optical Bloch equations of the pump-dressed V atom.

The density matrix is written in the frame rotating with the pump, so the
pump-only problem is time independent.  Superoperators act on the
row-major vectorisation vec(rho)[3*i + j] = rho[i, j] with basis (b, a, d).

Probe coupling: the weak probe enters as

    V(t) = V_plus * exp(-i delta t) + V_minus * exp(+i delta t),
    V_plus = -(1/2) (d_ba |a><b| + d_bd |d><b|),     V_minus = V_plus^dagger,

where delta is the probe-pump beat frequency seen by the atom.  Only the
exp(-i delta t) component of the response radiates at the probe frequency
with the probe's wavevector; the other one carries the spatial phase
exp[i(2 k2 - k1) z] and averages out for counter-propagating beams.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ParameterError, SolverError

B, A, D = 0, 1, 2
_LABELS = {"b": B, "a": A, "d": D}
_TRACE = (0, 4, 8)
IDX_AB = 3 * A + B
IDX_DB = 3 * D + B


@dataclass(frozen=True)
class DensityMatrix:
    sigma: np.ndarray

    def __getitem__(self, key):
        """``rho['ab']`` -> <a|rho|b>."""
        return self.sigma[_LABELS[key[0]], _LABELS[key[1]]]

    @property
    def populations(self):
        return self.sigma.diagonal().real.copy()

    def check(self, tol=1e-10):
        s = self.sigma
        if not np.all(np.isfinite(s)):
            raise SolverError("density matrix has non-finite entries")
        herm = np.max(np.abs(s - s.conj().T))
        tr = abs(np.trace(s) - 1.0)
        diag = s.diagonal()
        if herm > tol or tr > tol or np.max(np.abs(diag.imag)) > tol:
            raise SolverError(f"density matrix invalid: hermiticity {herm:.2e}, trace error {tr:.2e}")
        if np.any(diag.real < -tol) or np.any(diag.real > 1 + tol):
            raise SolverError(f"populations out of [0, 1]: {diag.real}")
        return self

    @classmethod
    def ground(cls):
        s = np.zeros((3, 3), dtype=complex)
        s[B, B] = 1.0
        return cls(s)

    @classmethod
    def pure(cls, label):
        s = np.zeros((3, 3), dtype=complex)
        s[_LABELS[label], _LABELS[label]] = 1.0
        return cls(s)


@dataclass(frozen=True)
class LinearResponse:
    """First-order density-matrix amplitude for one probe sideband."""
    sigma_prime: np.ndarray
    omega: float
    sideband: int = 1

    def __getitem__(self, key):
        return self.sigma_prime[_LABELS[key[0]], _LABELS[key[1]]]

    @property
    def population_sum(self):
        return np.trace(self.sigma_prime)


def hamiltonian(atom, drive):
    """Pump-frame Hamiltonian (hbar = 1) for the laser frequencies in ``drive``."""
    half_a = 0.5 * atom.d_ba * drive.eps2
    half_d = 0.5 * atom.d_bd * drive.eps2
    return np.array(
        [
            [0.0, -half_a, -half_d],
            [-half_a, atom.omega_ab - drive.omega2, 0.0],
            [-half_d, 0.0, atom.omega_db - drive.omega2],
        ],
        dtype=complex,
    )


def dissipator(atom):
    """Relaxation superoperator; both upper levels decay into b only."""
    Dm = np.zeros((9, 9))
    Dm[4, 4] = -atom.gamma_aa
    Dm[8, 8] = -atom.gamma_dd
    Dm[0, 4] = atom.gamma_aa
    Dm[0, 8] = atom.gamma_dd
    for (i, j), g in {
        (B, A): atom.gamma_ba,
        (B, D): atom.gamma_bd,
        (A, D): atom.gamma_ad,
    }.items():
        Dm[3 * i + j, 3 * i + j] = -g
        Dm[3 * j + i, 3 * j + i] = -g
    return Dm


def commutator_superop(H):
    """Matrix of rho -> -i [H, rho] on row-major vec(rho)."""
    eye = np.eye(H.shape[0])
    return -1j * (np.kron(H, eye) - np.kron(eye, H.T))


def liouvillian(atom, drive):
    return commutator_superop(hamiltonian(atom, drive)) + dissipator(atom)


def probe_operator(atom, sideband=1):
    V = np.zeros((3, 3), dtype=complex)
    V[A, B] = -0.5 * atom.d_ba
    V[D, B] = -0.5 * atom.d_bd
    return V if sideband > 0 else V.conj().T


def _rates(atom, drive):
    return np.array([
        atom.gamma_aa, atom.gamma_dd, atom.gamma_ba, atom.gamma_bd, atom.gamma_ad,
        atom.d_ba * drive.eps2, atom.d_bd * drive.eps2,
        abs(atom.omega_ab - drive.omega2), abs(atom.omega_db - drive.omega2),
    ])


def stationary_residual(atom, drive, rho):
    """max |d rho / dt| for the pump-only equations, in a.u. of rate."""
    s = rho.sigma if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return float(np.max(np.abs(liouvillian(atom, drive) @ s.ravel())))


def _steady_matrix(L):
    M = L.copy()
    M[..., 0, :] = 0.0
    M[..., 0, _TRACE] = 1.0
    return M


def steady_state(atom, drive):
    """Stationary density matrix of the pump-dressed atom."""
    rates = (atom.gamma_aa, atom.gamma_dd, atom.gamma_ba, atom.gamma_bd, atom.gamma_ad)
    if min(rates) <= 0:
        raise SolverError(f"all relaxation rates must be > 0 for a unique steady state, got {rates}")
    M = _steady_matrix(liouvillian(atom, drive))
    rhs = np.zeros(9, dtype=complex)
    rhs[0] = 1.0
    try:
        x = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"stationary Bloch system is singular: {exc}") from exc
    rho = DensityMatrix(x.reshape(3, 3))
    return rho.check()


def steady_states(atom, drive, velocities):
    """Vectorised ``steady_state`` for many velocity classes; returns (n, 9)."""
    velocities = np.asarray(velocities, dtype=float)
    Ls = np.empty((velocities.size, 9, 9), dtype=complex)
    for i, v in enumerate(velocities):
        Ls[i] = liouvillian(atom, drive.at_velocity(v))
    rhs = np.zeros((velocities.size, 9, 1), dtype=complex)
    rhs[:, 0, 0] = 1.0
    try:
        x = np.linalg.solve(_steady_matrix(Ls), rhs)[..., 0]
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"stationary Bloch system is singular: {exc}") from exc
    s = x.reshape(-1, 3, 3)
    herm = np.max(np.abs(s - np.conj(np.swapaxes(s, 1, 2)))) if s.size else 0.0
    tr = np.max(np.abs(np.trace(s, axis1=1, axis2=2) - 1.0)) if s.size else 0.0
    if not np.all(np.isfinite(x)) or herm > 1e-10 or tr > 1e-10:
        raise SolverError(f"steady states invalid: hermiticity {herm:.2e}, trace {tr:.2e}")
    return Ls, x


def response_system(atom, drive, sigma0, L=None):
    """Pieces of the first-order problem  (K - i delta S) x = r.

    K is -L with its first (bb) row replaced by the trace condition, S the
    diagonal mask that leaves that row unshifted, and r = -i[V_plus, sigma0]
    with a zero in the trace row.
    """
    if L is None:
        L = liouvillian(atom, drive)
    s = sigma0.sigma if isinstance(sigma0, DensityMatrix) else np.asarray(sigma0).reshape(3, 3)
    K = _steady_matrix(-L)
    r = commutator_superop(probe_operator(atom)) @ s.ravel()
    r[0] = 0.0
    mask = np.ones(9)
    mask[0] = 0.0
    return K, r, mask


def linear_response(atom, sigma0, drive, omega, probe=1.0, sideband=1):
    """First-order response to a probe of amplitude ``probe`` at Fourier detuning ``omega``.

    ``drive`` carries the laser frequencies in the atom's frame.  The beat
    frequency is delta = omega + omega1 - omega2; ``sideband=+1`` returns
    the exp(-i delta t) amplitude driven by the probe, ``sideband=-1`` the
    exp(+i delta t) amplitude driven by its conjugate.
    """
    L = liouvillian(atom, drive)
    s = sigma0.sigma if isinstance(sigma0, DensityMatrix) else np.asarray(sigma0)
    scale = np.max(np.abs(L))
    if np.max(np.abs(L @ s.ravel())) > 1e-8 * scale * max(np.max(np.abs(s)), 1.0):
        raise ConsistencyError("sigma0 is not the steady state of this drive")
    delta = omega + drive.omega1 - drive.omega2
    if sideband > 0:
        V, amp, sign = probe_operator(atom, 1), probe, -1.0
    else:
        V, amp, sign = probe_operator(atom, -1), np.conj(probe), 1.0
    M = _steady_matrix(sign * 1j * delta * np.eye(9) - L)
    r = amp * (commutator_superop(V) @ s.ravel())
    r[0] = 0.0
    try:
        x = np.linalg.solve(M, r)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"linear-response system is singular at omega={omega!r}: {exc}") from exc
    return LinearResponse(x.reshape(3, 3), omega, 1 if sideband > 0 else -1)


def trajectory(atom, drive, sigma0, t_final, dt, probe=0.0, omega=0.0, t_record=None):
    """Integrate the Bloch equations with classical RK4.

    With ``probe != 0`` a monochromatic probe at Fourier detuning ``omega``
    is added (both sidebands, no averaging).  States with t >= ``t_record``
    are returned; by default only the final one.
    """
    if t_final < 0:
        raise ParameterError("t_final must be >= 0")
    s0 = sigma0.sigma if isinstance(sigma0, DensityMatrix) else np.asarray(sigma0)
    delta = omega + drive.omega1 - drive.omega2
    fastest = np.max(np.append(_rates(atom, drive), abs(delta) if probe else 0.0))
    if not dt > 0 or dt * fastest > 0.1 + 1e-12:
        raise ParameterError(f"dt={dt!r} too large; need dt <= {0.1 / fastest:.6g} (0.1 / fastest rate)")
    if t_final == 0:
        return np.array([0.0]), s0[None].copy()

    n = int(np.ceil(t_final / dt - 1e-9))
    h = t_final / n
    L0 = liouvillian(atom, drive)
    if probe:
        Lp = probe * commutator_superop(probe_operator(atom, 1))
        Lm = np.conj(probe) * commutator_superop(probe_operator(atom, -1))

        def f(t, x):
            ph = np.exp(-1j * delta * t)
            return L0 @ x + ph * (Lp @ x) + np.conj(ph) * (Lm @ x)
    else:
        def f(t, x):
            return L0 @ x

    x = s0.ravel().astype(complex)
    first = n if t_record is None else max(0, int(np.ceil(t_record / h - 1e-9)))
    times, states = [], []
    if first == 0:
        times.append(0.0)
        states.append(x.copy())
    for k in range(n):
        t = k * h
        k1 = f(t, x)
        k2 = f(t + 0.5 * h, x + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, x + 0.5 * h * k2)
        k4 = f(t + h, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if k + 1 >= first:
            times.append((k + 1) * h)
            states.append(x.copy())
    return np.array(times), np.array(states).reshape(-1, 3, 3)


def time_evolve(atom, drive, sigma0, t_final, dt, probe=0.0, omega=0.0):
    """Density matrix at ``t_final`` starting from ``sigma0`` at t = 0."""
    _, states = trajectory(atom, drive, sigma0, t_final, dt, probe=probe, omega=omega)
    return DensityMatrix(states[-1])
