"""Perturbation probes and explanation scoring against any answerer.

A probe removes one context sentence from a provable no-negation question
and asks for the answer again: removing a critical sentence must flip the
answer to false, removing an irrelevant one must not. The symbolic engine
passes these exactly; an external predictor exchanges answers through a
JSON Lines file keyed by probe id, so no ML stack enters this package.

Explanation scoring compares predicted critical-sentence sets against the
proof-derived ones, question by question, as precision/recall/F1 with macro
averages and an F1 histogram (ten decile bins plus an exact-1.0 bin).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import Model, answer, critical_sentences, forward_chain
from .model import Literal, Theory
from .records import DatasetRecord
from .syntax import parse_literal, parse_theory

CRITICAL_REMOVED = "critical_removed"
IRRELEVANT_REMOVED = "irrelevant_removed"


class MissingPrediction(Exception):
    pass


@dataclass(frozen=True)
class Probe:
    id: str
    record_id: str
    sentence: int
    category: str
    expected: bool
    theory_formal: str
    statement_formal: str


@dataclass
class FlipReport:
    """The 2x2 flip table over critical-removal probes, plus accuracies."""

    table: dict[str, int]
    critical_flip_rate: float
    irrelevant_stay_rate: float
    critical_accuracy: float
    irrelevant_accuracy: float
    probes: int


@dataclass
class ExplanationScore:
    per_question: dict[str, tuple[float, float, float]]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    histogram: dict[str, int] = field(default_factory=dict)


def _theory_has_negation(theory: Theory) -> bool:
    literals = list(theory.facts)
    for r in theory.rules:
        literals.extend((*r.conditions, r.conclusion))
    return any(not lit.positive for lit in literals)


def unflip(record: DatasetRecord) -> tuple[Literal, bool]:
    """The statement in positive form with its answer for that form."""
    statement = parse_literal(record.statement_formal)
    if record.provenance == "flipped_true":
        return statement.negated(), False
    return statement, record.answer


def build_probes(records: list[DatasetRecord]) -> list[Probe]:
    """One probe per (provable question, context sentence).

    Only no-negation theories qualify (removal is monotone there, so the
    expected answers are exact); flipped questions are first restored to
    their positive form, which leaves them unprovable and hence out of
    scope.
    """
    probes: list[Probe] = []
    models: dict[str, tuple[Theory, Model]] = {}
    for record in records:
        key = record.theory_formal
        if key not in models:
            theory = parse_theory(key)
            models[key] = (theory, forward_chain(theory))
        theory, model = models[key]
        if _theory_has_negation(theory):
            continue
        statement, statement_answer = unflip(record)
        if not statement_answer or not statement.positive:
            continue
        if statement not in model.derived:
            continue
        crit = critical_sentences(model, statement)
        for sentence in range(theory.sentence_count):
            critical = sentence in crit.critical
            probes.append(
                Probe(
                    id=f"{record.id}-s{sentence}",
                    record_id=record.id,
                    sentence=sentence,
                    category=CRITICAL_REMOVED if critical else IRRELEVANT_REMOVED,
                    expected=not critical,
                    theory_formal=record.theory_formal,
                    statement_formal=record.statement_formal,
                )
            )
    return probes


def engine_predictions(probes: list[Probe]) -> dict[str, bool]:
    """The symbolic engine's answers: re-prove after each removal.

    Returns predictions for every probe id plus every base record id (the
    unperturbed answer).
    """
    out: dict[str, bool] = {}
    theories: dict[str, Theory] = {}
    base_models: dict[str, Model] = {}
    for probe in probes:
        theory = theories.get(probe.theory_formal)
        if theory is None:
            theory = parse_theory(probe.theory_formal)
            theories[probe.theory_formal] = theory
            base_models[probe.theory_formal] = forward_chain(
                theory, record_proofs=False
            )
        statement, _ = _positive_statement(probe)
        if probe.record_id not in out:
            out[probe.record_id] = answer(base_models[probe.theory_formal], statement)
        reduced = forward_chain(
            theory.without_sentence(probe.sentence), record_proofs=False
        )
        out[probe.id] = answer(reduced, statement)
    return out


def _positive_statement(probe: Probe) -> tuple[Literal, bool]:
    statement = parse_literal(probe.statement_formal)
    if not statement.positive:
        return statement.negated(), False
    return statement, True


def score_predictions(
    probes: list[Probe], predictions: dict[str, bool]
) -> FlipReport:
    """Tabulate flips and per-category accuracy for a set of predictions.

    ``predictions`` must answer every probe id and every base record id (the
    unperturbed question). The table counts critical-removal probes by
    (original prediction, new prediction).
    """
    table = {"TT": 0, "TF": 0, "FT": 0, "FF": 0}
    critical_total = critical_correct = 0
    irrelevant_total = irrelevant_correct = 0
    for probe in probes:
        if probe.record_id not in predictions:
            raise MissingPrediction(f"no original prediction for {probe.record_id}")
        if probe.id not in predictions:
            raise MissingPrediction(f"no prediction for probe {probe.id}")
        original = predictions[probe.record_id]
        new = predictions[probe.id]
        if probe.category == CRITICAL_REMOVED:
            key = ("T" if original else "F") + ("T" if new else "F")
            table[key] += 1
            critical_total += 1
            critical_correct += new is probe.expected
        else:
            irrelevant_total += 1
            irrelevant_correct += new is probe.expected
    originally_true = table["TT"] + table["TF"]
    return FlipReport(
        table=table,
        critical_flip_rate=(table["TF"] / originally_true) if originally_true else 0.0,
        irrelevant_stay_rate=(
            irrelevant_correct / irrelevant_total if irrelevant_total else 0.0
        ),
        critical_accuracy=(
            critical_correct / critical_total if critical_total else 0.0
        ),
        irrelevant_accuracy=(
            irrelevant_correct / irrelevant_total if irrelevant_total else 0.0
        ),
        probes=len(probes),
    )


def precision_recall_f1(
    predicted: set[int], actual: set[int]
) -> tuple[float, float, float]:
    """P/R/F1 with the empty-set conventions spelled out.

    Empty against empty scores a perfect 1/1/1 (nothing to find, nothing
    claimed); an empty prediction against a non-empty truth keeps precision 1
    but recall 0, and vice versa.
    """
    if not predicted and not actual:
        return 1.0, 1.0, 1.0
    hits = len(predicted & actual)
    precision = hits / len(predicted) if predicted else 1.0
    recall = hits / len(actual) if actual else 1.0
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return precision, recall, f1


def _f1_bin(f1: float) -> str:
    if f1 >= 1.0:
        return "1.0"
    lower = int(f1 * 10) / 10
    return f"{lower:.1f}-{lower + 0.1:.1f}"


def score_explanations(
    predicted: dict[str, set[int]], actual: dict[str, set[int]]
) -> ExplanationScore:
    per_question: dict[str, tuple[float, float, float]] = {}
    histogram: dict[str, int] = {}
    for qid in actual:
        if qid not in predicted:
            raise MissingPrediction(f"no predicted critical set for {qid}")
        scores = precision_recall_f1(predicted[qid], actual[qid])
        per_question[qid] = scores
        bin_name = _f1_bin(scores[2])
        histogram[bin_name] = histogram.get(bin_name, 0) + 1
    n = len(per_question)
    if n == 0:
        return ExplanationScore({}, 0.0, 0.0, 0.0, {})
    return ExplanationScore(
        per_question,
        macro_precision=sum(s[0] for s in per_question.values()) / n,
        macro_recall=sum(s[1] for s in per_question.values()) / n,
        macro_f1=sum(s[2] for s in per_question.values()) / n,
        histogram=dict(sorted(histogram.items())),
    )


def flip_based_critical(theory: Theory, statement: Literal) -> set[int]:
    """Sentences whose removal makes the statement unprovable.

    For no-negation theories this is provably the same set as the
    proof-intersection definition; the equivalence is property-tested.
    """
    out = set()
    for sentence in range(theory.sentence_count):
        model = forward_chain(theory.without_sentence(sentence), record_proofs=False)
        if model.consistent and not answer(model, statement):
            out.add(sentence)
    return out


def proof_based_critical_sets(records: list[DatasetRecord]) -> dict[str, set[int]]:
    """Actual critical sets for the provable no-negation records, by id."""
    out: dict[str, set[int]] = {}
    models: dict[str, tuple[Theory, Model]] = {}
    for record in records:
        key = record.theory_formal
        if key not in models:
            theory = parse_theory(key)
            models[key] = (theory, forward_chain(theory))
        theory, model = models[key]
        if _theory_has_negation(theory):
            continue
        statement, statement_answer = unflip(record)
        if not statement_answer or statement not in model.derived:
            continue
        out[record.id] = set(critical_sentences(model, statement).critical)
    return out
