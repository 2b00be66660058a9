"""Finite-shot experiments: noisy channels, seeded sampling, counts -> tables.

Random numbers
--------------
Uniforms come from SplitMix64 used as a counter-based generator, so any
implementation can reproduce the counts exactly::

    z = (state + (k + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    z = z ^ (z >> 31)
    u_k = (z >> 11) * 2**-53

``state`` is the sub-seed of a setting: ``seed ^ setting_constant(setting)``,
where the constant is the ASCII name of the setting (e.g. ``"ZZ|ZZ"``) read
as a big-endian integer.  Within a setting the counter ``k`` runs over inputs
00, 01, 10, 11 in turn, ``shots`` draws each.  A draw picks the first outcome
whose left-to-right cumulative probability exceeds ``u``; a ``u`` beyond the
last cumulative sum (rounding) goes to the last outcome with nonzero
probability.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cnotpar.evaluator import (
    CANONICAL_SETTINGS,
    LABELS,
    BasisSetting,
    ProbabilityTable,
    truth_table,
)
from cnotpar.gatezoo import channel, werner_mixture
from cnotpar.qcore import (
    SuperOperator,
    identity_superop,
    is_cp,
    pauli2,
    superop_from_spec,
)

NOISE_MODELS = ("werner", "zx_dephase", "depolarize", "local_flip")

_MASK = (1 << 64) - 1
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class NoiseParams:
    """``strength`` is p_E for werner and the error strength otherwise."""

    model: str
    strength: float

    def __post_init__(self):
        if self.model not in NOISE_MODELS:
            raise ValueError(f"unknown noise model {self.model!r}; expected one of {NOISE_MODELS}")
        if not 0.0 <= float(self.strength) <= 1.0:
            raise ValueError(f"strength = {self.strength} outside [0, 1]")


def _depolarizer() -> SuperOperator:
    paulis = [pauli2(a + b) for a in "IXYZ" for b in "IXYZ"]
    return superop_from_spec([(1 / 16, paulis)])


def _local_flip(s: float) -> SuperOperator:
    return superop_from_spec([
        ((1 - s) ** 2, [pauli2("II")]),
        (s * (1 - s), [pauli2("XI"), pauli2("IX")]),
        (s * s, [pauli2("XX")]),
    ])


def build_noisy_channel(params: NoiseParams) -> SuperOperator:
    s = float(params.strength)
    cnot = channel("CNOT").superop
    if params.model == "werner":
        return werner_mixture(s)
    if params.model == "zx_dephase":
        noise = (1 - s) * identity_superop() + s * channel("DEPHASE").superop
    elif params.model == "depolarize":
        noise = (1 - s) * identity_superop() + s * _depolarizer()
    else:
        noise = _local_flip(s)
    return noise @ cnot


def setting_constant(setting: BasisSetting) -> int:
    return int.from_bytes(setting.name.encode("ascii"), "big")


def splitmix64_uniforms(state: int, start: int, n: int) -> np.ndarray:
    """Uniforms u_start .. u_{start+n-1} of the counter stream for ``state``."""
    k = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    z = np.uint64(state & _MASK) + k * _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def sample_row(probs: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF multinomial counts of the four outcomes for uniforms ``u``."""
    probs = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    cdf = np.cumsum(probs)
    idx = np.searchsorted(cdf, u, side="right")
    last = int(np.flatnonzero(probs > 0)[-1])
    idx[idx > last] = last
    return np.bincount(idx, minlength=4)


@dataclass(frozen=True)
class CountsRecord:
    setting: BasisSetting
    input_label: str
    counts: dict[str, int]

    def __post_init__(self):
        if self.input_label not in LABELS:
            raise ValueError(f"input label must be one of {LABELS}, got {self.input_label!r}")
        if set(self.counts) != set(LABELS):
            raise ValueError(f"outcome keys must be exactly {LABELS}, got {sorted(self.counts)}")
        if any(int(c) < 0 for c in self.counts.values()):
            raise ValueError(f"negative count for input {self.input_label}")
        object.__setattr__(self, "counts", {k: int(self.counts[k]) for k in LABELS})
        if self.shots < 1:
            raise ValueError(f"input {self.input_label} of {self.setting.name} has zero shots")

    @property
    def shots(self) -> int:
        return sum(self.counts.values())


def sample_counts(
    s: SuperOperator, setting: BasisSetting, shots_per_input: int, seed: int
) -> list[CountsRecord]:
    if shots_per_input < 1:
        raise ValueError("shots_per_input must be at least 1")
    if not is_cp(s):
        raise ValueError("cannot sample from a non-CP channel")
    table = truth_table(s, setting)
    state = int(seed) ^ setting_constant(setting)
    records = []
    for i, label in enumerate(LABELS):
        u = splitmix64_uniforms(state, i * shots_per_input, shots_per_input)
        counts = sample_row(table.probs[i], u)
        records.append(CountsRecord(setting, label, dict(zip(LABELS, counts.tolist()))))
    return records


def sample_experiment(
    s: SuperOperator, shots_per_input: int, seed: int, settings=CANONICAL_SETTINGS
) -> dict[BasisSetting, list[CountsRecord]]:
    return {st: sample_counts(s, st, shots_per_input, seed) for st in settings}


def counts_to_table(records: list[CountsRecord]) -> ProbabilityTable:
    if not records:
        raise ValueError("no counts records")
    settings = {r.setting for r in records}
    if len(settings) != 1:
        raise ValueError(f"records mix settings: {sorted(st.name for st in settings)}")
    by_input: dict[str, CountsRecord] = {}
    for r in records:
        if r.input_label in by_input:
            raise ValueError(f"duplicate record for input {r.input_label}")
        by_input[r.input_label] = r
    missing = [label for label in LABELS if label not in by_input]
    if missing:
        raise ValueError(f"missing records for inputs {missing}")
    probs = np.array([
        [by_input[inp].counts[out] / by_input[inp].shots for out in LABELS]
        for inp in LABELS
    ])
    return ProbabilityTable(records[0].setting, probs)


def total_shots(records: list[CountsRecord]) -> int:
    return sum(r.shots for r in records)
