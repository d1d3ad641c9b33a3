"""Hand-authored rulebases with golden answers, plus scenario sampling.

Each corpus ships as machine-readable fixtures: the formal theory in the
parenthesized format, the exact English sentence per theory sentence, golden
questions with answers that must reproduce under the engine, and (for the
circuit rulebases) a scenario sidecar describing how to sample fact sets.

The scenario sidecar mini-format, one item per line:

    ("circuit" "has" "switch" "+") | p=0.5
    choose1: ("a" ...) | ("b" ...) | ("c" ...)
    choose1(0.9, 0.1): ("wire" "is" "metal" "+") | ("wire" "is" "plastic" "+")

Independent lines are included with their probability; ``choose1`` lines pick
exactly one alternative (uniformly unless weights are given). ``//`` comments
and blank lines are skipped.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

import numpy as np

from ..model import Literal, Theory
from ..syntax import parse_literal, parse_theory


class UnknownCorpus(Exception):
    pass


@dataclass(frozen=True)
class GoldenQuestion:
    statement: Literal
    english: str
    answer: bool


@dataclass(frozen=True)
class ScenarioSpec:
    independent: tuple[tuple[Literal, float], ...]
    choices: tuple[tuple[tuple[Literal, ...], tuple[float, ...]], ...]


@dataclass(frozen=True)
class CorpusCase:
    corpus: str
    name: str
    theory: Theory
    english: tuple[str, ...]
    questions: tuple[GoldenQuestion, ...]
    scenario: ScenarioSpec | None = None


CORPUS_NAMES = (
    "attributes-demo",
    "relations-demo",
    "birds1",
    "birds2",
    "electricity1",
    "electricity2",
    "electricity3",
    "electricity4",
    "counterfactuals",
)


def corpus_names() -> tuple[str, ...]:
    return CORPUS_NAMES


def _data_dir(name: str):
    return resources.files(__package__).joinpath("data", name)


_CHOOSE = re.compile(r"choose1(?:\(([^)]*)\))?:\s*(.*)")


def parse_scenario_spec(text: str) -> ScenarioSpec:
    independent: list[tuple[Literal, float]] = []
    choices: list[tuple[tuple[Literal, ...], tuple[float, ...]]] = []
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith("//"):
            continue
        match = _CHOOSE.match(line)
        if match:
            weight_text, body = match.groups()
            alternatives = tuple(
                parse_literal(part.strip()) for part in body.split("|")
            )
            if weight_text:
                weights = tuple(float(w) for w in weight_text.split(","))
                if len(weights) != len(alternatives):
                    raise ValueError(f"weight count mismatch: {line!r}")
            else:
                weights = tuple(1.0 / len(alternatives) for _ in alternatives)
            choices.append((alternatives, weights))
            continue
        fact_text, _, p_text = line.rpartition("|")
        p_text = p_text.strip()
        if not fact_text or not p_text.startswith("p="):
            raise ValueError(f"bad scenario line: {line!r}")
        independent.append((parse_literal(fact_text.strip()), float(p_text[2:])))
    return ScenarioSpec(tuple(independent), tuple(choices))


def load_corpus(name: str) -> list[CorpusCase]:
    """All cases of one corpus, theories parsed and goldens attached."""
    if name not in CORPUS_NAMES:
        raise UnknownCorpus(name)
    directory = _data_dir(name)
    manifest = json.loads(directory.joinpath("golden.json").read_text())

    scenario = None
    if "scenario" in manifest:
        scenario = parse_scenario_spec(
            directory.joinpath(manifest["scenario"]).read_text()
        )

    cases = []
    for spec in manifest["cases"]:
        base = parse_theory(directory.joinpath(spec["theory"]).read_text())
        extra_facts = tuple(parse_literal(f) for f in spec.get("facts", ()))
        theory = Theory(
            extra_facts + base.facts,
            base.rules,
            None,
            base.theory_type,
            negation_enabled=True,
        )
        questions = tuple(
            GoldenQuestion(parse_literal(q["statement"]), q["english"], q["answer"])
            for q in spec["questions"]
        )
        cases.append(
            CorpusCase(
                corpus=name,
                name=spec["name"],
                theory=theory,
                english=tuple(spec["english"]),
                questions=questions,
                scenario=scenario,
            )
        )
    return cases


def generate_scenarios(
    name: str, count: int, rng: np.random.Generator
) -> list[Theory]:
    """Sampled fact sets paired with the corpus rulebase."""
    cases = load_corpus(name)
    spec = cases[0].scenario
    if spec is None:
        raise ValueError(f"corpus {name!r} has no scenario spec")
    rules = cases[0].theory.rules
    out = []
    for _ in range(count):
        facts: list[Literal] = []
        for fact, p in spec.independent:
            if rng.random() < p:
                facts.append(fact)
        for alternatives, weights in spec.choices:
            pick = rng.random() * sum(weights)
            acc = 0.0
            chosen = alternatives[-1]
            for alt, w in zip(alternatives, weights):
                acc += w
                if pick < acc:
                    chosen = alt
                    break
            facts.append(chosen)
        out.append(Theory(tuple(facts), rules, None, cases[0].theory.theory_type))
    return out
