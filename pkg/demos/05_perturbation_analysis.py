"""
Critical sentences and perturbation probes
==========================================

For every provable no-negation question we know exactly which context
sentences carry the conclusion (those used in all of its proofs). Removing a
critical sentence must flip the answer to false; removing any other sentence
must not. The harness builds one probe per (question, sentence), scores any
answerer against them, and measures predicted-vs-actual critical sets as
per-question precision/recall/F1.
"""

import tempfile
from pathlib import Path

from rulekit.analysis import (
    build_probes,
    engine_predictions,
    proof_based_critical_sets,
    score_explanations,
    score_predictions,
)
from rulekit.pipeline import PipelineConfig, build_dataset
from rulekit.records import read_dataset

workdir = Path(tempfile.mkdtemp(prefix="rulekit_probe_"))
config = PipelineConfig(
    name="probe-demo",
    target_depth=1,
    total_examples=60,
    quotas={"att_noneg": 30, "att_neg": 0, "rel_noneg": 30, "rel_neg": 0},
    seed=13,
    output_dir=str(workdir),
)
build_dataset(config)
records = []
for split in ("train", "dev", "test"):
    records.extend(read_dataset(workdir / f"{split}.jsonl"))

probes = build_probes(records)
critical = sum(p.category == "critical_removed" for p in probes)
print(f"{len(probes)} probes from {len(records)} records "
      f"({critical} critical removals)")

# The engine is its own gold-standard answerer: flips are exact.
predictions = engine_predictions(probes)
report = score_predictions(probes, predictions)
print("flip table (original x new):", report.table)
print("critical flip rate:", report.critical_flip_rate)
print("irrelevant stay rate:", report.irrelevant_stay_rate)

# A deliberately broken answerer that never changes its mind.
stubborn = {p.id: True for p in probes} | {p.record_id: True for p in probes}
broken = score_predictions(probes, stubborn)
print("stubborn predictor flip rate:", broken.critical_flip_rate)

# Explanation scoring: flip-derived critical sets versus proof-derived ones.
actual = proof_based_critical_sets(records)
flip_derived = {}
for probe in probes:
    flip_derived.setdefault(probe.record_id, set())
    if not predictions[probe.id]:
        flip_derived[probe.record_id].add(probe.sentence)
score = score_explanations(flip_derived, actual)
print(f"\nexplanations: macro P={score.macro_precision:.3f} "
      f"R={score.macro_recall:.3f} F1={score.macro_f1:.3f}")
print("F1 histogram:", score.histogram)
