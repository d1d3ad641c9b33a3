from __future__ import annotations

import pytest

from rulekit.corpora import (
    UnknownCorpus,
    corpus_names,
    generate_scenarios,
    load_corpus,
    parse_scenario_spec,
)
from rulekit.engine import Status, answer, forward_chain, stratify
from rulekit.generate import rng_for
from rulekit.model import Atom, Term, is_fact


def test_registry_contents():
    names = corpus_names()
    for expected in ("birds1", "birds2", "electricity1", "electricity2",
                     "electricity3", "electricity4", "counterfactuals"):
        assert expected in names
    with pytest.raises(UnknownCorpus):
        load_corpus("nope")


def test_all_golden_answers_reproduce():
    for name in corpus_names():
        for case in load_corpus(name):
            model = forward_chain(case.theory)
            assert model.status is Status.CONSISTENT, (name, case.name)
            for q in case.questions:
                assert answer(model, q.statement) is q.answer, (name, q.english)


def test_english_aligns_with_sentences():
    for name in corpus_names():
        for case in load_corpus(name):
            assert len(case.english) == case.theory.sentence_count


def test_birds_expected_pattern():
    for name in ("birds1", "birds2"):
        (case,) = load_corpus(name)
        answers = [q.answer for q in case.questions]
        assert answers == [True, False, False, False]
    # the two corpora share the formal theory, differing only in English
    (b1,) = load_corpus("birds1")
    (b2,) = load_corpus("birds2")
    assert b1.theory == b2.theory
    assert b1.english != b2.english
    assert "can fly" in b2.english[7]
    assert "flying" in b1.english[7]


def test_birds_strata_order():
    (case,) = load_corpus("birds2")
    strata = stratify(case.theory)
    for bird in ("arthur", "bill", "colin", "dave"):
        assert strata[Atom("is", Term(bird), "abnormal")] < \
            strata[Atom("is", Term(bird), "flying")]


def test_electricity2_fig_answers():
    (case,) = load_corpus("electricity2")
    model = forward_chain(case.theory)
    assert answer(model, is_fact("circuit", "complete", positive=False)) is False
    assert answer(model, is_fact("light bulb", "glowing")) is True
    assert answer(model, is_fact("radio", "playing")) is False


def test_counterfactual_sequence():
    cases = load_corpus("counterfactuals")
    sequence = [q.answer for case in cases for q in case.questions]
    assert sequence == [True, False, False, True]
    english = [case.english for case in cases]
    assert "Plastic is a metal." in english[3]
    assert "Plastic is an insulator." in english[2]


def test_counterfactual_edit_flips_answer():
    """Dropping the class-bridging rule defeats conduction."""
    plastic_metal = load_corpus("counterfactuals")[3]
    statement = is_fact("nail", "conducting")
    assert answer(forward_chain(plastic_metal.theory), statement) is True
    bridge = plastic_metal.english.index("Plastic is a metal.")
    without = plastic_metal.theory.without_sentence(bridge)
    assert answer(forward_chain(without), statement) is False


def test_scenario_spec_parsing():
    spec = parse_scenario_spec(
        '// comment\n'
        '("circuit" "has" "switch" "+") | p=0.5\n'
        'choose1(0.9, 0.1): ("wire" "is" "metal" "+") | ("wire" "is" "plastic" "+")\n'
    )
    assert len(spec.independent) == 1
    assert spec.independent[0][1] == 0.5
    ((alts, weights),) = spec.choices
    assert len(alts) == 2
    assert weights == (0.9, 0.1)


def test_electricity1_selects_exactly_one_appliance():
    rng = rng_for(17)
    appliances = {"light bulb", "bell", "radio"}
    for theory in generate_scenarios("electricity1", 300, rng):
        present = {
            f.atom.arg2 for f in theory.facts
            if f.atom.predicate == "has" and f.atom.arg2 in appliances
        }
        assert len(present) == 1


def test_electricity4_inclusion_frequencies():
    rng = rng_for(18)
    n = 4000
    battery = flat = metal = 0
    for theory in generate_scenarios("electricity4", n, rng):
        facts = set(theory.facts)
        battery += any(f.atom.predicate == "includes" and f.atom.arg2 == "battery"
                       for f in facts)
        flat += is_fact("battery", "flat") in facts
        metal += is_fact("wire", "metal") in facts
    assert abs(battery / n - 0.9) < 0.03
    assert abs(flat / n - 0.2) < 0.03
    assert abs(metal / n - 0.9) < 0.03


def test_scenarios_all_reason_cleanly():
    rng = rng_for(19)
    for name in ("electricity1", "electricity2", "electricity3", "electricity4"):
        for theory in generate_scenarios(name, 150, rng):
            assert forward_chain(theory, record_proofs=False).status \
                is Status.CONSISTENT


def test_scenarioless_corpus_rejects_generation():
    rng = rng_for(20)
    with pytest.raises(ValueError):
        generate_scenarios("birds1", 1, rng)
