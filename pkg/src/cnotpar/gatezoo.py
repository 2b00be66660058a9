"""The CNOT channel, its dephasing shadow D, and the three local channels.

The ideal gate decomposes exactly as

    E_CNOT = L1 + L2 + L3 - 2 D

and a noisy gate with truth-table fidelities (F1, F2, F3) is modelled by
re-weighting the same four maps (see ``reconstruct_from_fidelities``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from cnotpar.qcore import (
    SuperOperator,
    WeightedKrausSpec,
    eigenstate,
    pauli2,
    pauli_matrix,
    superop_from_spec,
    tensor,
)

CHANNEL_NAMES = ("CNOT", "DEPHASE", "L1", "L2", "L3")


@dataclass(frozen=True, eq=False)
class NamedChannel:
    name: str
    superop: SuperOperator
    spec: WeightedKrausSpec


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Weights of L1, L2, L3 and D in a signed mixture; they always sum to 1."""

    c1: float
    c2: float
    c3: float
    cD: float

    @classmethod
    def from_fidelities(cls, f1: float, f2: float, f3: float) -> ExpansionCoefficients:
        return cls(2 * f1 - 1, 2 * f2 - 1, 2 * f3 - 1, 2 * (2 - f1 - f2 - f3))

    def combine(self) -> SuperOperator:
        return (
            self.c1 * channel("L1").superop
            + self.c2 * channel("L2").superop
            + self.c3 * channel("L3").superop
            + self.cD * channel("DEPHASE").superop
        )

    def as_dict(self) -> dict[str, float]:
        return {"L1": self.c1, "L2": self.c2, "L3": self.c3, "DEPHASE": self.cD}


IDEAL_EXPANSION = ExpansionCoefficients(1.0, 1.0, 1.0, -2.0)


def cnot_unitary() -> np.ndarray:
    """(II + IX + ZI - ZX) / 2, the CNOT with qubit one as control."""
    return 0.5 * (pauli2("II") + pauli2("IX") + pauli2("ZI") - pauli2("ZX"))


def _projector(basis: str, sign: int) -> np.ndarray:
    v = eigenstate(basis, sign)
    return np.outer(v, v.conj())


def _rotation(pauli: str, sign: int) -> np.ndarray:
    # exp(sign * i pi/4 P) = (I + sign * i P) / sqrt2
    return (pauli_matrix("I") + sign * 1j * pauli_matrix(pauli)) / np.sqrt(2)


def rotation_pair(sign: int) -> np.ndarray:
    """Correlated rotation exp(+-i pi/4 Z) (x) exp(+-i pi/4 X) used by L3."""
    return tensor(_rotation("Z", sign), _rotation("X", sign))


def _spec(name: str) -> WeightedKrausSpec:
    eye = pauli_matrix("I")
    if name == "CNOT":
        return [(1.0, [cnot_unitary()])]
    if name == "DEPHASE":
        return [(0.25, [pauli2(p) for p in ("II", "IX", "ZI", "ZX")])]
    if name == "L1":
        # measure Z on qubit one, flip qubit two on Z = -1
        return [(1.0, [
            tensor(_projector("Z", +1), eye),
            tensor(_projector("Z", -1), pauli_matrix("X")),
        ])]
    if name == "L2":
        # measure X on qubit two, phase-flip qubit one on X = -1
        return [(1.0, [
            tensor(eye, _projector("X", +1)),
            tensor(pauli_matrix("Z"), _projector("X", -1)),
        ])]
    if name == "L3":
        return [(0.5, [rotation_pair(+1)]), (0.5, [rotation_pair(-1)])]
    raise ValueError(f"unknown channel {name!r}; expected one of {CHANNEL_NAMES}")


@lru_cache(maxsize=None)
def channel(name: str) -> NamedChannel:
    spec = _spec(name)
    return NamedChannel(name, superop_from_spec(spec), spec)


def expansion_map(coeffs: ExpansionCoefficients = IDEAL_EXPANSION) -> SuperOperator:
    return coeffs.combine()


def verify_expansion(coeffs: ExpansionCoefficients = IDEAL_EXPANSION) -> float:
    """Largest entrywise deviation between the CNOT map and the expansion."""
    return channel("CNOT").superop.max_abs_diff(expansion_map(coeffs))


def _check_fidelity(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} = {value} outside [0, 1]")
    return value


def reconstruct_from_fidelities(f1: float, f2: float, f3: float) -> SuperOperator:
    """Dephasing-noise model of a gate with truth-table fidelities F1..F3.

    Always trace preserving; may fail to be CP, check with ``is_cp``.
    """
    f1, f2, f3 = (_check_fidelity(n, v) for n, v in (("F1", f1), ("F2", f2), ("F3", f3)))
    return ExpansionCoefficients.from_fidelities(f1, f2, f3).combine()


def werner_mixture(p_e: float) -> SuperOperator:
    """p_E * E_CNOT + (1 - p_E) * D."""
    p_e = float(p_e)
    if not 0.0 <= p_e <= 1.0:
        raise ValueError(f"p_E = {p_e} outside [0, 1]")
    return p_e * channel("CNOT").superop + (1 - p_e) * channel("DEPHASE").superop
