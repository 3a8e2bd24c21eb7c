"""Particle-in-a-discrete-potential diagnostics.

A uniformly coupled chain obeys a discrete Schrodinger equation, so its
eigenstates behave like bound states in a potential well: the k-th state has
k nodes and alternating mirror parity. For pinched PST spectra one can also
build harmonic-oscillator-like ladder operators, a discrete position
operator X, and verify the pairing theorem ({X, M} = 0 forces +-x eigenvalue
pairs, plus a zero mode for odd chain length).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, EigenSystem, mirror_operator

UNIFORM_TOL = 1e-9
PINCHED_FORM_TOL = 1e-6


def schrodinger_residual(spec: ChainSpec, es: EigenSystem) -> np.ndarray:
    """Residuals of the discrete Schrodinger equation at interior sites.

    For uniform negative coupling -J the eigenproblem reads
    -J phi'' + (eps_i - 2J) phi = lambda phi with the lattice second
    difference phi''_i = phi_{i+1} + phi_{i-1} - 2 phi_i; this identity is
    exact away from the chain ends. Returns an (n_states, n-2) array; empty
    for n = 2.
    """
    j_abs = np.abs(spec.couplings)
    if np.ptp(j_abs) > UNIFORM_TOL:
        raise ValueError("chain couplings are not uniform")
    if spec.sign_convention != "negative":
        raise ValueError("particle analogue assumes the negative coupling convention")
    j = float(j_abs[0])
    eps = np.asarray(spec.onsite)

    phi = es.vectors
    second_diff = phi[2:, :] + phi[:-2, :] - 2.0 * phi[1:-1, :]
    lhs = -j * second_diff + (eps[1:-1, None] - 2.0 * j) * phi[1:-1, :]
    residual = lhs - es.values[None, :] * phi[1:-1, :]
    return residual.T


def node_count(es: EigenSystem) -> list[int]:
    """Sign changes of each eigenstate along the chain (its node count).

    Components below 1e-12 in magnitude inherit the previous sign, so the
    exact central zeros of odd-parity states count as single crossings.
    """
    counts = []
    for k in range(es.n):
        phi = es.vectors[:, k]
        signs = np.where(np.abs(phi) > 1e-12, np.sign(phi), 0.0)
        last = 0.0
        changes = 0
        for s in signs:
            if s == 0.0:
                continue
            if last != 0.0 and s != last:
                changes += 1
            last = s
        counts.append(changes)
    return counts


@dataclass(frozen=True)
class LadderPair:
    """Raising/lowering operators in the energy eigenbasis.

    ``raise_op`` steps up the pinched-spectrum ladder and annihilates the top
    state; ``lower_op`` is its transpose. The product raise*lower equals the
    ground-shifted Hamiltonian.
    """

    raise_op: np.ndarray
    lower_op: np.ndarray
    gamma: float
    p: int

    @property
    def n(self) -> int:
        return self.raise_op.shape[0]

    def number_operator(self) -> np.ndarray:
        """a_dag a; equals the ground-shifted Hamiltonian in the eigenbasis."""
        return self.raise_op @ self.lower_op

    def commutator(self) -> np.ndarray:
        """[a, a_dag] = a a_dag - a_dag a."""
        return self.lower_op @ self.raise_op - self.raise_op @ self.lower_op

    def expected_commutator(self) -> np.ndarray:
        """Closed form of [a, a_dag]: identity with two end-of-ladder corrections."""
        n, p, gamma = self.n, self.p, self.gamma
        diag = np.ones(n)
        diag[n - 2] -= 1.0 - 1.0 / p
        diag[n - 1] -= n - 1.0 + 1.0 / p
        return gamma * np.diag(diag)


def shifted_values(es: EigenSystem) -> np.ndarray:
    """Spectrum with the ground state moved to zero."""
    return es.values - es.values[0]


def build_ladder(es: EigenSystem, p: int, gamma: float) -> LadderPair:
    """Ladder operators for a chain whose spectrum is the pinched form.

    Validates that the ground-shifted spectrum is gamma*(0, 1, ..., n-2,
    n-2+1/p) within 1e-6, then builds the raising operator with the
    sqrt(k+1) ladder amplitudes and the sqrt(n-2+1/p) top-step correction.
    """
    if p < 1 or p % 2 == 0:
        raise ValueError(f"pinch p must be a positive odd integer, got {p}")
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    n = es.n
    target = gamma * np.append(np.arange(n - 1, dtype=float), n - 2 + 1.0 / p)
    deviation = np.abs(shifted_values(es) - target).max()
    if deviation > PINCHED_FORM_TOL * max(1.0, gamma):
        raise ValueError(
            f"spectrum deviates from the pinched form by {deviation:.3e}; "
            "ladder operators are not defined"
        )
    sub = np.sqrt(gamma) * np.sqrt(np.arange(1, n, dtype=float))
    sub[n - 2] = np.sqrt(gamma) * np.sqrt(n - 2 + 1.0 / p)
    raise_op = np.diag(sub, -1)
    return LadderPair(raise_op=raise_op, lower_op=raise_op.T.copy(),
                      gamma=float(gamma), p=int(p))


@dataclass(frozen=True)
class PositionOperator:
    """Discrete position X = (a_dag + a)/2 in the energy eigenbasis.

    Tridiagonal there: X connects eigenstates of neighbouring energy, hence
    of opposite mirror parity, which is why it anticommutes with the mirror.
    The momentum partner P = (a - a_dag)/(2i) is kept for completeness.
    """

    x: np.ndarray
    momentum: np.ndarray


def position_operator(ladder: LadderPair) -> PositionOperator:
    x = 0.5 * (ladder.raise_op + ladder.lower_op)
    momentum = (ladder.lower_op - ladder.raise_op) / 2j
    return PositionOperator(x=x, momentum=momentum)


def mirror_in_eigenbasis(es: EigenSystem) -> np.ndarray:
    """The mirror operator expressed on the energy eigenstates (diagonal +-1)."""
    return es.vectors.T @ mirror_operator(es.n) @ es.vectors


@dataclass(frozen=True)
class PairingReport:
    """Pairing-theorem audit of the position operator."""

    anticommutes: bool
    anticommutator_norm: float
    x_values: tuple[float, ...]
    pairs: tuple[tuple[float, float], ...]
    pairing_residual: float
    zero_mode: bool


def pairing_check(xop: PositionOperator, m_eigenbasis: np.ndarray,
                  anticomm_tol: float = 1e-10,
                  pair_tol: float = 1e-9) -> PairingReport:
    """Verify {X, M} = 0 and the +-x pairing of X's spectrum.

    For odd dimension one eigenvalue must sit at zero (within ``pair_tol``);
    even dimensions pair off completely.
    """
    x = xop.x
    n = x.shape[0]
    anti = x @ m_eigenbasis + m_eigenbasis @ x
    anorm = float(np.abs(anti).max())
    xvals = np.linalg.eigvalsh(x)
    residual = float(np.abs(xvals + xvals[::-1]).max())
    pairs = tuple(
        (float(xvals[i]), float(xvals[n - 1 - i])) for i in range(n // 2)
    )
    zero_mode = bool(n % 2 == 1 and abs(xvals[n // 2]) <= pair_tol)
    return PairingReport(
        anticommutes=bool(anorm <= anticomm_tol),
        anticommutator_norm=anorm,
        x_values=tuple(float(v) for v in xvals),
        pairs=pairs,
        pairing_residual=residual,
        zero_mode=zero_mode,
    )


def diagnostics_report(spec: ChainSpec, es: EigenSystem, p: int,
                       gamma: float) -> dict:
    """Bundle of analogue diagnostics in a JSON-friendly shape."""
    ladder = build_ladder(es, p, gamma)
    h_shifted = np.diag(shifted_values(es))
    ladder_residual = float(np.abs(h_shifted - ladder.number_operator()).max())
    commutator_residual = float(
        np.abs(ladder.commutator() - ladder.expected_commutator()).max()
    )
    xop = position_operator(ladder)
    report = pairing_check(xop, mirror_in_eigenbasis(es))
    return {
        "nodes": node_count(es),
        "ladder_residual": ladder_residual,
        "commutator_residual": commutator_residual,
        "x_pairs": [list(pair) for pair in report.pairs],
        "zero_mode": report.zero_mode,
    }
