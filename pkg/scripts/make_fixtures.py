"""Write the synthetic counts fixtures matching two published F1 values.

Only F1 was reported for these experiments, so every setting is filled with
the exact expected counts of a Werner-like mixture whose fidelities all
equal the reported F1 (p_E = 2 F1 - 1).  The counts are integers by choice
of shots per input.

    python scripts/make_fixtures.py [outdir]
"""
import sys
from pathlib import Path

import numpy as np

from cnotpar.evaluator import CANONICAL_SETTINGS, LABELS, truth_table
from cnotpar.expsim import CountsRecord
from cnotpar.formats import counts_document, write_json_atomic
from cnotpar.gatezoo import werner_mixture

SHOTS = 2000
FIXTURES = {
    "ska03.json": (0.735, "trapped-ion CNOT, computational-basis truth table"),
    "bri03.json": (0.84, "photonic CNOT, computational-basis truth table"),
}


def exact_counts(f1: float) -> dict:
    s = werner_mixture(2 * f1 - 1)
    experiment = {}
    for setting in CANONICAL_SETTINGS:
        expected = truth_table(s, setting).probs * SHOTS
        counts = np.rint(expected).astype(int)
        assert np.max(np.abs(counts - expected)) < 1e-6, "expected counts are not integers"
        experiment[setting] = [
            CountsRecord(setting, inp, dict(zip(LABELS, counts[i].tolist())))
            for i, inp in enumerate(LABELS)
        ]
    return experiment


def main(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, (f1, description) in FIXTURES.items():
        metadata = {
            "synthetic": True,
            "description": description,
            "reported_F1": f1,
            "construction": f"exact expected counts of p_E*CNOT + (1-p_E)*D with p_E = 2*{f1} - 1, "
                            f"{SHOTS} shots per input; F2 and F3 are not published values",
        }
        write_json_atomic(outdir / name, counts_document(exact_counts(f1), metadata))
        print(f"wrote {outdir / name}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "fixtures")
