"""Truth tables, the three classical fidelities and the parallelism criterion.

Labels follow one rule in every basis: bit 0 is eigenvalue +1, bit 1 is
eigenvalue -1, and the first bit belongs to qubit one (the control).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from cnotpar.gatezoo import reconstruct_from_fidelities
from cnotpar.qcore import (
    SuperOperator,
    apply,
    eigenstate,
    is_tp,
    product_state,
)

LABELS = ("00", "01", "10", "11")
TP_TOL = 1e-9
DEFAULT_EQUALITY_TOL = 0.01


def bit_to_sign(bit: str | int) -> int:
    return 1 if int(bit) == 0 else -1


@dataclass(frozen=True)
class BasisSetting:
    """Input product basis k(x)l and measured output basis i(x)j."""

    input_basis: tuple[str, str]
    output_basis: tuple[str, str]

    def __post_init__(self):
        for b in (*self.input_basis, *self.output_basis):
            if b not in ("X", "Y", "Z"):
                raise ValueError(f"basis label must be X, Y or Z, got {b!r}")
        object.__setattr__(self, "input_basis", tuple(self.input_basis))
        object.__setattr__(self, "output_basis", tuple(self.output_basis))

    @property
    def name(self) -> str:
        """Subscript-style name, output before input: ``"YY|XZ"``."""
        return "".join(self.output_basis) + "|" + "".join(self.input_basis)

    def input_state(self, label: str) -> np.ndarray:
        (b1, b2), (x1, x2) = self.input_basis, label
        return product_state(b1, bit_to_sign(x1), b2, bit_to_sign(x2))

    def output_projector(self, label: str) -> np.ndarray:
        (b1, b2), (x1, x2) = self.output_basis, label
        v = np.kron(eigenstate(b1, bit_to_sign(x1)), eigenstate(b2, bit_to_sign(x2)))
        return np.outer(v, v.conj())


ZZ_SETTING = BasisSetting(("Z", "Z"), ("Z", "Z"))
XX_SETTING = BasisSetting(("X", "X"), ("X", "X"))
XZ_YY_SETTING = BasisSetting(("X", "Z"), ("Y", "Y"))
CANONICAL_SETTINGS = (ZZ_SETTING, XX_SETTING, XZ_YY_SETTING)


def _cnot_z(label: str) -> tuple[str, ...]:
    a, b = label
    return (a + str(int(a) ^ int(b)),)


def _cnot_x(label: str) -> tuple[str, ...]:
    # in the X basis the target acts as control and vice versa
    a, b = label
    return (str(int(a) ^ int(b)) + b,)


def _yy_correlation(label: str) -> tuple[str, ...]:
    # <Y(x)Y>_out = -<X(x)Z>_in: accepted outputs have the opposite parity
    in_parity = bit_to_sign(label[0]) * bit_to_sign(label[1])
    return tuple(
        out for out in LABELS
        if bit_to_sign(out[0]) * bit_to_sign(out[1]) == -in_parity
    )


CORRECT_OUTPUTS = {
    ZZ_SETTING: _cnot_z,
    XX_SETTING: _cnot_x,
    XZ_YY_SETTING: _yy_correlation,
}


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """P(out | in) with rows indexed by input label and columns by outcome."""

    setting: BasisSetting
    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.shape != (4, 4):
            raise ValueError(f"probability table must be 4x4, got {p.shape}")
        if p.min() < -1e-10 or p.max() > 1 + 1e-10:
            raise ValueError("probability outside [0, 1]")
        if np.max(np.abs(p.sum(axis=1) - 1)) > 1e-9:
            raise ValueError("probability table rows must sum to 1")
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    def __getitem__(self, key: tuple[str, str]) -> float:
        """``table[out, in]``, mirroring the P(out|in) notation."""
        out, inp = key
        return float(self.probs[LABELS.index(inp), LABELS.index(out)])


def truth_table(s: SuperOperator, setting: BasisSetting) -> ProbabilityTable:
    if not is_tp(s, TP_TOL):
        raise ValueError("channel is not trace preserving; probabilities would not normalize")
    projectors = [setting.output_projector(out) for out in LABELS]
    probs = np.empty((4, 4))
    for i, inp in enumerate(LABELS):
        rho = apply(s, setting.input_state(inp))
        # trace(P rho) with P a projector; P is Hermitian by construction
        probs[i] = [np.trace(p @ rho).real for p in projectors]
    return ProbabilityTable(setting, probs)


def _fidelity(table: ProbabilityTable, setting: BasisSetting) -> float:
    if table.setting != setting:
        raise ValueError(f"table is for setting {table.setting.name}, expected {setting.name}")
    rule = CORRECT_OUTPUTS[setting]
    return sum(table[out, inp] for inp in LABELS for out in rule(inp)) / 4


def fidelity_f1(table: ProbabilityTable) -> float:
    return _fidelity(table, ZZ_SETTING)


def fidelity_f2(table: ProbabilityTable) -> float:
    return _fidelity(table, XX_SETTING)


def fidelity_f3(table: ProbabilityTable) -> float:
    return _fidelity(table, XZ_YY_SETTING)


def per_input_fidelities(table: ProbabilityTable) -> np.ndarray:
    """Success probability of each input row under the setting's rule."""
    rule = CORRECT_OUTPUTS[table.setting]
    return np.array([sum(table[out, inp] for out in rule(inp)) for inp in LABELS])


@dataclass(frozen=True)
class FidelityTriple:
    F1: float
    F2: float
    F3: float

    @property
    def sum(self) -> float:
        return self.F1 + self.F2 + self.F3

    @property
    def parallelism_number(self) -> float:
        """Summed weight 2(F1+F2+F3) - 3 of the local operations."""
        return 2 * self.sum - 3

    @property
    def criterion_met(self) -> bool:
        return self.sum > 2

    @property
    def concurrence_bound(self) -> float:
        return self.sum - 2

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.F1, self.F2, self.F3)

    def reconstruct(self) -> SuperOperator:
        return reconstruct_from_fidelities(self.F1, self.F2, self.F3)


def fidelities_from_tables(tables: dict[BasisSetting, ProbabilityTable]) -> FidelityTriple:
    return FidelityTriple(
        fidelity_f1(tables[ZZ_SETTING]),
        fidelity_f2(tables[XX_SETTING]),
        fidelity_f3(tables[XZ_YY_SETTING]),
    )


def canonical_tables(s: SuperOperator) -> dict[BasisSetting, ProbabilityTable]:
    return {setting: truth_table(s, setting) for setting in CANONICAL_SETTINGS}


def evaluate_channel(s: SuperOperator) -> FidelityTriple:
    return fidelities_from_tables(canonical_tables(s))


@dataclass(frozen=True)
class PEstimate:
    """Single-parameter noise weight, or the reason it does not apply."""

    value: float | None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.value is not None


def p_e_estimate(f: FidelityTriple, equality_tol: float = DEFAULT_EQUALITY_TOL) -> PEstimate:
    fs = f.as_tuple()
    spread = max(fs) - min(fs)
    if spread > equality_tol:
        return PEstimate(None, f"fidelities differ by {spread:.3g} > {equality_tol:g}; "
                               "the single-parameter mixture does not apply")
    return PEstimate(2 * float(np.mean(fs)) - 1)


@dataclass(frozen=True)
class PlanEntry:
    setting: BasisSetting
    input_label: str
    outcome_label: str


def measurement_plan() -> list[PlanEntry]:
    """The 16 outcome probabilities needed for F1, F2 and F3."""
    return [
        PlanEntry(setting, inp, out)
        for setting in CANONICAL_SETTINGS
        for inp in LABELS
        for out in CORRECT_OUTPUTS[setting](inp)
    ]


def all_settings() -> list[BasisSetting]:
    """Every local setting, for diagnostics beyond the canonical three."""
    bases = list(itertools.product("XYZ", repeat=2))
    return [BasisSetting(i, o) for i in bases for o in bases]
