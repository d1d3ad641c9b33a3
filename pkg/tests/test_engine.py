from __future__ import annotations

import itertools
import random

import pytest

from rulekit.model import Atom, Literal, Signature, Term, Theory, is_fact, rule, theory
from rulekit.engine import (
    InconsistentTheory,
    NotProven,
    ProvenAtom,
    Status,
    answer,
    critical_sentences,
    failure_depth,
    forward_chain,
    stratify,
)

from conftest import attr, rel
from oracle import oracle_consistent, oracle_failure_depth, stable_models


# ---------------------------------------------------------------------------
# Worked examples


def test_people_chain_depths(people_theory):
    model = forward_chain(people_theory)
    assert model.status is Status.CONSISTENT
    assert model.depth[is_fact("bob", "rough")] == 1
    assert model.depth[is_fact("bob", "green")] == 2


def test_people_answers(people_theory):
    model = forward_chain(people_theory)
    assert answer(model, is_fact("bob", "green")) is True
    assert answer(model, is_fact("bob", "kind")) is False
    assert answer(model, is_fact("dave", "blue")) is False


def test_animals_chain(animals_theory):
    model = forward_chain(animals_theory)
    assert model.status is Status.CONSISTENT
    assert model.holds(is_fact("rabbit", "furry"))
    assert answer(model, Literal(Atom("likes", Term("bald eagle"), "cat"))) is False
    assert answer(model, Literal(Atom("likes", Term("rabbit"), "cat"))) is True
    assert answer(model, is_fact("bald eagle", "furry")) is False


def test_birds_answers(birds_theory):
    model = forward_chain(birds_theory)
    assert model.status is Status.CONSISTENT
    assert answer(model, is_fact("arthur", "flying")) is True
    for bird in ("bill", "colin", "dave"):
        assert answer(model, is_fact(bird, "flying")) is False
    # the negative conclusions are explicitly derived, not just CWA-false
    assert model.holds(is_fact("bill", "flying", positive=False))


def test_empty_theory():
    model = forward_chain(theory([], []))
    assert model.status is Status.CONSISTENT
    assert model.derived == frozenset()
    assert answer(model, is_fact("bob", "big")) is False
    assert answer(model, is_fact("bob", "big", positive=False)) is True


# ---------------------------------------------------------------------------
# Stratification


def test_stratify_no_negation_single_layer(people_theory):
    strata = stratify(people_theory)
    assert strata is not None
    assert set(strata.values()) == {0}


def test_stratify_birds_layers(birds_theory):
    strata = stratify(birds_theory)
    assert strata is not None
    for name in ("arthur", "bill", "colin", "dave"):
        abnormal = Atom("is", Term(name), "abnormal")
        flying = Atom("is", Term(name), "flying")
        assert strata[abnormal] < strata[flying]


def test_stratify_negative_cycle_rejected():
    t = theory(
        [],
        [
            rule([is_fact("a", "p", positive=False)], is_fact("a", "q")),
            rule([is_fact("a", "q", positive=False)], is_fact("a", "p")),
        ],
    )
    assert stratify(t) is None
    assert forward_chain(t).status is Status.UNSTRATIFIED


def test_positive_cycle_is_fine():
    t = theory(
        [is_fact("a", "p")],
        [
            rule([is_fact("a", "p")], is_fact("a", "q")),
            rule([is_fact("a", "q")], is_fact("a", "p")),
        ],
    )
    model = forward_chain(t)
    assert model.status is Status.CONSISTENT
    assert model.holds(is_fact("a", "q"))


def test_inconsistent_theory_detected():
    t = theory(
        [is_fact("a", "p")],
        [rule([is_fact("a", "p")], is_fact("a", "p", positive=False))],
    )
    model = forward_chain(t)
    assert model.status is Status.INCONSISTENT
    with pytest.raises(InconsistentTheory):
        answer(model, is_fact("a", "p"))


# ---------------------------------------------------------------------------
# Failure depth


def test_failure_depth_no_rule_is_zero(people_theory):
    model = forward_chain(people_theory)
    assert failure_depth(model, Atom("is", Term("alan"), "white")) == 0


def test_failure_depth_people_example(people_theory):
    model = forward_chain(people_theory)
    atom = Atom("is", Term("dave"), "blue")
    assert failure_depth(model, atom) == 1
    assert failure_depth(model, atom) == oracle_failure_depth(
        people_theory, model.derived, model.depth, atom
    )


def test_failure_depth_chain():
    t = theory(
        [is_fact("a", "seed")],
        [
            rule([is_fact("a", "p0")], is_fact("a", "p1")),
            rule([is_fact("a", "p1")], is_fact("a", "p2")),
        ],
    )
    model = forward_chain(t)
    assert failure_depth(model, Atom("is", Term("a"), "p0")) == 0
    assert failure_depth(model, Atom("is", Term("a"), "p1")) == 1
    assert failure_depth(model, Atom("is", Term("a"), "p2")) == 2


def test_failure_depth_rejects_proven(people_theory):
    model = forward_chain(people_theory)
    with pytest.raises(ProvenAtom):
        failure_depth(model, Atom("is", Term("bob"), "green"))


def test_failure_depth_blocked_naf_uses_proof_depth():
    # q is underivable only because p was proven at depth 2
    t = theory(
        [is_fact("a", "p0")],
        [
            rule([is_fact("a", "p0")], is_fact("a", "p1")),
            rule([is_fact("a", "p1")], is_fact("a", "p")),
            rule([is_fact("a", "p", positive=False)], is_fact("a", "q")),
        ],
    )
    model = forward_chain(t)
    assert model.depth[is_fact("a", "p")] == 2
    assert failure_depth(model, Atom("is", Term("a"), "q")) == 3


# ---------------------------------------------------------------------------
# Critical sentences


def test_people_critical_chain(people_theory):
    model = forward_chain(people_theory)
    crit = critical_sentences(model, is_fact("bob", "green"))
    # the stated fact, the first rule, and the last rule of the chain
    assert crit.critical == {3, 10, 13}
    assert crit.irrelevant == frozenset(range(14)) - {3, 10, 13}


def test_depth_zero_fact_critical_is_itself(people_theory):
    model = forward_chain(people_theory)
    crit = critical_sentences(model, is_fact("alan", "blue"))
    assert crit.critical == {0}


def test_two_route_proof_shares_only_base():
    t = theory(
        [is_fact("a", "base")],
        [
            rule([is_fact("a", "base")], is_fact("a", "mid1")),
            rule([is_fact("a", "base")], is_fact("a", "mid2")),
            rule([is_fact("a", "mid1")], is_fact("a", "goal")),
            rule([is_fact("a", "mid2")], is_fact("a", "goal")),
        ],
    )
    model = forward_chain(t)
    crit = critical_sentences(model, is_fact("a", "goal"))
    assert crit.critical == {0}
    # cross-check against remove-and-rerun
    for idx in range(t.sentence_count):
        flipped = not answer(forward_chain(t.without_sentence(idx)),
                             is_fact("a", "goal"))
        assert flipped == (idx in crit.critical)


def test_duplicate_fact_is_never_critical():
    t = theory(
        [is_fact("a", "p"), is_fact("a", "p")],
        [rule([is_fact("a", "p")], is_fact("a", "q"))],
    )
    model = forward_chain(t)
    crit = critical_sentences(model, is_fact("a", "q"))
    assert crit.critical == {2}


def test_critical_requires_derived(people_theory):
    model = forward_chain(people_theory)
    with pytest.raises(NotProven):
        critical_sentences(model, is_fact("dave", "blue"))


# ---------------------------------------------------------------------------
# Random + exhaustive oracle equivalence (the full-scale sweep lives in the
# acceptance suite; this is the fast everyday version)

ATTRS = ("p", "q")
NAMES = ("a", "b", "c")


def random_small_theory(rng: random.Random) -> Theory:
    names = NAMES[: rng.randint(1, 3)]
    sig = Signature(names=names, attributes=ATTRS, relations=("r",))

    def literal(allow_var: bool) -> Literal:
        subj = rng.choice((*names, "something") if allow_var else names)
        if rng.random() < 0.3:
            at = Atom("r", Term(subj), rng.choice(names))
        else:
            at = Atom("is", Term(subj), rng.choice(ATTRS))
        return Literal(at, rng.random() < 0.75)

    facts = []
    for _ in range(rng.randint(1, 4)):
        lit = literal(allow_var=False)
        facts.append(lit)
    rules = []
    for _ in range(rng.randint(0, 2)):
        first = literal(allow_var=True)
        conds = [first]
        if rng.random() < 0.5:
            extra = literal(allow_var=False)
            if first.atom.arg1.is_variable and rng.random() < 0.7:
                extra = Literal(
                    Atom(extra.atom.predicate, first.atom.arg1, extra.atom.arg2),
                    extra.positive,
                )
            conds.append(extra)
        concl = literal(allow_var=False)
        if first.atom.arg1.is_variable and rng.random() < 0.8:
            concl = Literal(
                Atom(concl.atom.predicate, first.atom.arg1, concl.atom.arg2),
                concl.positive,
            )
        rules.append(rule(conds, concl))
    return theory(facts, rules, signature=sig)


def check_against_oracle(t: Theory) -> str:
    """Compare one theory against the stable-model oracle; returns status."""
    model = forward_chain(t)
    if model.status is Status.UNSTRATIFIED:
        return "unstratified"
    models = stable_models(t)
    assert len(models) == 1, f"stratified theory must have one stable model: {t}"
    if model.status is Status.CONSISTENT:
        assert model.derived == models[0]
        assert oracle_consistent(models[0])
        return "consistent"
    assert not oracle_consistent(models[0])
    return "inconsistent"


def test_oracle_equivalence_random():
    rng = random.Random(20240)
    seen = {"consistent": 0, "inconsistent": 0, "unstratified": 0}
    for _ in range(500):
        t = random_small_theory(rng)
        seen[check_against_oracle(t)] += 1
    assert seen["consistent"] >= 300  # the sweep mostly exercises real models


def test_oracle_equivalence_exhaustive_single_entity():
    """All 1- and 2-rule theories over one entity and two attributes."""
    subjects = ("a", "something")
    literals = [
        Literal(Atom("is", Term(s), at), pol)
        for s in subjects
        for at in ATTRS
        for pol in (True, False)
    ]
    rules = [rule([c], h) for c in literals for h in literals if not h.atom.arg1.is_variable or c.atom.arg1.is_variable]
    fact_sets = [
        (),
        (is_fact("a", "p"),),
        (is_fact("a", "p"), is_fact("a", "q", positive=False)),
    ]
    sig = Signature(names=("a",), attributes=ATTRS, relations=())
    count = 0
    for facts in fact_sets:
        for r1 in rules:
            check_against_oracle(theory(facts, [r1], signature=sig))
            count += 1
    for r1, r2 in itertools.combinations(rules[:24], 2):
        check_against_oracle(theory(fact_sets[1], [r1, r2], signature=sig))
        count += 1
    assert count > 400


# ---------------------------------------------------------------------------
# Semantic properties on random theories


def _consistent_models(n=60, seed=77):
    rng = random.Random(seed)
    found = []
    while len(found) < n:
        t = random_small_theory(rng)
        model = forward_chain(t)
        if model.status is Status.CONSISTENT:
            found.append((t, model))
    return found


def test_supportedness():
    for t, model in _consistent_models():
        given = set(t.facts)
        for lit in model.derived:
            if lit in given:
                continue
            assert any(
                inst.conclusion == lit
                and all(c in model.derived for c in inst.conditions if c.positive)
                and all(not model.positive_derived(c.atom)
                        for c in inst.conditions if not c.positive)
                for inst in model.instances
            ), f"{lit} has no supporting rule instance"


def test_depth_is_bfs_layer():
    """depth(f) equals the first breadth-first layer containing f."""
    for t, model in _consistent_models(seed=79):
        known: set[Literal] = set(t.facts)
        layer = 0
        expected = {lit: 0 for lit in known}
        while True:
            new: set[Literal] = set()
            for inst in model.instances:
                pos = [c for c in inst.conditions if c.positive]
                if inst.conclusion in expected:
                    continue
                if all(c in known for c in pos) and all(
                    not model.positive_derived(c.atom)
                    for c in inst.conditions
                    if not c.positive
                ):
                    new.add(inst.conclusion)
            if not new:
                break
            layer += 1
            for lit in new:
                expected[lit] = layer
            known |= new
        assert expected == model.depth


def test_answer_order_independent():
    rng = random.Random(4096)
    for _ in range(40):
        t = random_small_theory(rng)
        model = forward_chain(t)
        if model.status is not Status.CONSISTENT:
            continue
        shuffled_facts = list(t.facts)
        shuffled_rules = list(t.rules)
        rng.shuffle(shuffled_facts)
        rng.shuffle(shuffled_rules)
        t2 = theory(shuffled_facts, [rule(r.conditions, r.conclusion)
                                     for r in shuffled_rules],
                    signature=t.signature)
        model2 = forward_chain(t2)
        assert model2.status is Status.CONSISTENT
        assert model2.derived == model.derived


def test_flip_property_no_negation():
    """Removing critical sentences defeats the fact; irrelevant ones do not."""
    rng = random.Random(5150)
    checked = 0
    while checked < 25:
        t = random_small_theory(rng)
        if any(not lit.positive for lit in t.facts) or any(
            not l.positive for r in t.rules for l in (*r.conditions, r.conclusion)
        ):
            continue
        model = forward_chain(t)
        if model.status is not Status.CONSISTENT:
            continue
        provable = [lit for lit in model.derived_order if model.depth[lit] > 0]
        if not provable:
            continue
        checked += 1
        for lit in provable:
            crit = critical_sentences(model, lit)
            for idx in range(t.sentence_count):
                after = forward_chain(t.without_sentence(idx))
                assert after.status is Status.CONSISTENT
                expected = idx not in crit.critical
                assert answer(after, lit) is expected


def test_recorded_naf_atoms_stay_underivable():
    """Negation-as-failure leaves in proofs reference atoms the final model
    never derives positively."""

    def naf_atoms(step):
        if hasattr(step.via, "naf"):
            yield from step.via.naf
            for child in step.via.children:
                yield from naf_atoms(child)

    for t, model in _consistent_models(n=30, seed=80):
        for proofs in model.proofs.values():
            for step in proofs:
                for atom in naf_atoms(step):
                    assert not model.positive_derived(atom)


def test_monotone_layering():
    """Strata never decrease along positive support edges and strictly
    increase across negation-as-failure lookups."""
    for t, model in _consistent_models(seed=81):
        for inst in model.instances:
            satisfied = all(
                c in model.derived for c in inst.conditions if c.positive
            ) and all(
                not model.positive_derived(c.atom)
                for c in inst.conditions if not c.positive
            )
            if not satisfied:
                continue
            head = model.strata[inst.conclusion.atom]
            for cond in inst.conditions:
                if cond.positive:
                    assert model.strata[cond.atom] <= head
                else:
                    assert model.strata[cond.atom] < head


def test_failure_depth_matches_oracle_randomly():
    rng = random.Random(31337)
    compared = 0
    while compared < 40:
        t = random_small_theory(rng)
        model = forward_chain(t)
        if model.status is not Status.CONSISTENT:
            continue
        sig = t.effective_signature()
        atoms = [Atom("is", Term(n), a) for n in sig.names for a in sig.attributes]
        unproven = [a for a in atoms if not model.positive_derived(a)]
        for atom in unproven[:4]:
            expected = oracle_failure_depth(t, model.derived, model.depth, atom)
            assert failure_depth(model, atom) == expected
            compared += 1
