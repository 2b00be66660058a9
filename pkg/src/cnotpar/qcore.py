"""Exact two-qubit algebra: Pauli matrices, product eigenstates, superoperators.

Superoperators use a column-stacking convention: entry ``(r, c)`` of a 4x4
density matrix sits at vector index ``c * 4 + r``.  Under this convention
``vec(A @ rho @ B) == kron(B.T, A) @ vec(rho)``, so a Kraus element ``K``
contributes ``kron(K.conj(), K)`` to the 16x16 map.

System one (the control) is always the left tensor factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DIM = 4
HERMITIAN_TOL = 1e-10

_PAULIS = {
    "I": np.array([[1, 0], [0, 1]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_EIGENSTATES = {
    ("Z", +1): np.array([1, 0], dtype=complex),
    ("Z", -1): np.array([0, 1], dtype=complex),
    ("X", +1): np.array([1, 1], dtype=complex) / np.sqrt(2),
    ("X", -1): np.array([1, -1], dtype=complex) / np.sqrt(2),
    ("Y", +1): np.array([1, 1j], dtype=complex) / np.sqrt(2),
    ("Y", -1): np.array([1, -1j], dtype=complex) / np.sqrt(2),
}

# list of (weight, [kraus, ...]); each term adds weight * sum_k K rho K^dagger
WeightedKrausSpec = Sequence[tuple[float, Sequence[np.ndarray]]]


def pauli_matrix(label: str) -> np.ndarray:
    """Return the 2x2 Pauli matrix for ``label`` in {I, X, Y, Z}.

    Z is diag(+1, -1) and Y = iXZ, so that Y|0> = i|1>.
    """
    try:
        return _PAULIS[label].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli label {label!r}") from None


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def pauli2(label: str) -> np.ndarray:
    """Two-qubit Pauli product from a two-character label such as ``"ZX"``."""
    if len(label) != 2:
        raise ValueError(f"expected two Pauli labels, got {label!r}")
    return tensor(pauli_matrix(label[0]), pauli_matrix(label[1]))


def eigenstate(basis: str, sign: int) -> np.ndarray:
    """Normalized eigenvector of the Pauli ``basis`` with eigenvalue ``sign``.

    Global phases are fixed: |Z=+1> = (1, 0), |Z=-1> = (0, 1),
    |X=+-1> = (1, +-1)/sqrt2 and |Y=+-1> = (1, +-i)/sqrt2.
    """
    if basis == "I":
        raise ValueError("the identity has no distinguished eigenbasis")
    try:
        return _EIGENSTATES[(basis, int(sign))].copy()
    except KeyError:
        raise ValueError(f"no eigenstate for basis={basis!r}, sign={sign!r}") from None


def product_state(b1: str, s1: int, b2: str, s2: int) -> np.ndarray:
    """Density matrix of eigenstate(b1, s1) (x) eigenstate(b2, s2)."""
    psi = np.kron(eigenstate(b1, s1), eigenstate(b2, s2))
    return np.outer(psi, psi.conj())


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def check_density_matrix(rho: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate a 4x4 density matrix and return it as a complex array.

    Raises ValueError when ``rho`` is not Hermitian, unit-trace and PSD
    within ``tol``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise ValueError(f"density matrix must be {DIM}x{DIM}, got {rho.shape}")
    if not is_hermitian(rho, tol):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real:.3g}, not 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def is_density_matrix(rho: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    try:
        check_density_matrix(rho, tol)
    except ValueError:
        return False
    return True


def expectation(rho: np.ndarray, op: np.ndarray) -> float:
    """Expectation value tr(op @ rho) of a Hermitian observable."""
    if not is_hermitian(op):
        raise ValueError("observable is not Hermitian")
    return float(np.trace(op @ rho).real)


def vec(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v).reshape(DIM, DIM, order="F")


@dataclass(frozen=True, eq=False)
class SuperOperator:
    """Linear map on 4x4 matrices stored as a 16x16 column-stacked matrix.

    Supports signed linear combinations (``L1 + L2 - 2 * D``) and
    composition with ``@`` (``A @ B`` applies B first).
    """

    map: np.ndarray

    def __post_init__(self):
        m = np.array(self.map, dtype=complex)
        if m.shape != (DIM * DIM, DIM * DIM):
            raise ValueError(f"superoperator must be 16x16, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "map", m)

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return apply(self, rho)

    def __add__(self, other: SuperOperator) -> SuperOperator:
        return SuperOperator(self.map + other.map)

    def __sub__(self, other: SuperOperator) -> SuperOperator:
        return SuperOperator(self.map - other.map)

    def __neg__(self) -> SuperOperator:
        return SuperOperator(-self.map)

    def __mul__(self, scalar: float) -> SuperOperator:
        return SuperOperator(scalar * self.map)

    __rmul__ = __mul__

    def __matmul__(self, other: SuperOperator) -> SuperOperator:
        return SuperOperator(self.map @ other.map)

    def max_abs_diff(self, other: SuperOperator) -> float:
        return float(np.max(np.abs(self.map - other.map)))


def superop_from_spec(spec: WeightedKrausSpec) -> SuperOperator:
    total = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for weight, kraus_ops in spec:
        for k in kraus_ops:
            k = np.asarray(k, dtype=complex)
            if k.shape != (DIM, DIM):
                raise ValueError(f"Kraus operator must be {DIM}x{DIM}, got {k.shape}")
            total += weight * np.kron(k.conj(), k)
    return SuperOperator(total)


def unitary_superop(u: np.ndarray) -> SuperOperator:
    return superop_from_spec([(1.0, [u])])


def identity_superop() -> SuperOperator:
    return SuperOperator(np.eye(DIM * DIM))


def apply(s: SuperOperator, rho: np.ndarray, validate: bool = False) -> np.ndarray:
    """Apply ``s`` to ``rho``; optionally validate the output as a state.

    Signed (non-CP) combinations can produce non-physical outputs, so
    validation is opt-in.
    """
    out = unvec(s.map @ vec(rho))
    if validate:
        check_density_matrix(out)
    return out


def choi_of(s: SuperOperator) -> np.ndarray:
    """Choi matrix sum_ij |i><j| (x) S(|i><j|), input factor on the left."""
    choi = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for i in range(DIM):
        for j in range(DIM):
            e_ij = np.zeros((DIM, DIM), dtype=complex)
            e_ij[i, j] = 1
            choi += np.kron(e_ij, apply(s, e_ij))
    return choi


def cp_violation(s: SuperOperator) -> float:
    """Distance of the Choi matrix from PSD: its anti-Hermitian part or -min eigenvalue."""
    choi = choi_of(s)
    herm = 0.5 * (choi + choi.conj().T)
    return max(float(np.max(np.abs(choi - herm))), -float(np.linalg.eigvalsh(herm).min()), 0.0)


def tp_residual(s: SuperOperator) -> float:
    """Largest entry of Tr_out(Choi) - I."""
    choi = choi_of(s).reshape(DIM, DIM, DIM, DIM)
    reduced = np.einsum("iaja->ij", choi)
    return float(np.max(np.abs(reduced - np.eye(DIM))))


def is_cp(s: SuperOperator, tol: float = HERMITIAN_TOL) -> bool:
    return cp_violation(s) <= tol


def is_tp(s: SuperOperator, tol: float = HERMITIAN_TOL) -> bool:
    return tp_residual(s) <= tol


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    """Full-rank random state G G^dagger / tr, G a complex Gaussian 4x4."""
    g = rng.standard_normal((DIM, DIM)) + 1j * rng.standard_normal((DIM, DIM))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_cptp(rng: np.random.Generator, env_dim: int = 4) -> SuperOperator:
    """Random channel from a Haar isometry C^4 -> C^4 (x) C^env_dim."""
    n = DIM * env_dim
    g = rng.standard_normal((n, DIM)) + 1j * rng.standard_normal((n, DIM))
    q, r = np.linalg.qr(g)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    kraus = q.reshape(DIM, env_dim, DIM).transpose(1, 0, 2)
    return superop_from_spec([(1.0, list(kraus))])
