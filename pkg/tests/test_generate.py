from __future__ import annotations

import numpy as np
import pytest

from rulekit.engine import Status
from rulekit.generate import (
    ATT_POOLS,
    REL_POOLS,
    AttemptsExhausted,
    GenerationConfig,
    generate_theory,
    rng_for,
    sample_fact,
    sample_rule,
    sample_signature,
    sample_theory,
)
from rulekit.model import Signature, TheoryType, validate_theory
from rulekit.syntax import emit_theory

ATT_NONEG = GenerationConfig(TheoryType.ATT, False, 0, 0)
ATT_NEG = GenerationConfig(TheoryType.ATT, True, 0, 0)
REL_NEG = GenerationConfig(TheoryType.REL, True, 0, 0)


def test_pool_contents():
    assert len(ATT_POOLS.names) == 8
    assert len(ATT_POOLS.attributes) == 14
    assert ATT_POOLS.relations == ()
    assert len(REL_POOLS.names) == 10
    assert len(REL_POOLS.attributes) == 10
    assert len(REL_POOLS.relations) == 6
    assert "bald eagle" in REL_POOLS.names


def test_signature_bounds_and_pool_order():
    rng = rng_for(1)
    for _ in range(500):
        sig = sample_signature(ATT_NONEG, rng)
        assert 2 <= len(sig.names) <= 4
        assert 1 <= len(sig.attributes) <= 5
        assert sig.relations == ()
        assert len(set(sig.names)) == len(sig.names)
        # subsets keep pool order
        order = [ATT_POOLS.names.index(n) for n in sig.names]
        assert order == sorted(order)
    rng = rng_for(2)
    for _ in range(500):
        sig = sample_signature(REL_NEG, rng)
        assert 1 <= len(sig.relations) <= 4


def test_attribute_count_is_uniform():
    rng = rng_for(3)
    counts = np.zeros(5)
    n = 10_000
    for _ in range(n):
        sig = sample_signature(ATT_NONEG, rng)
        counts[len(sig.attributes) - 1] += 1
    expected = n / 5
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    assert chi2 < 18.47  # chi-square critical value, df=4, p=0.001


def test_att_noneg_facts_are_positive_is_facts():
    rng = rng_for(4)
    sig = sample_signature(ATT_NONEG, rng)
    for _ in range(300):
        fact = sample_fact(sig, ATT_NONEG, rng)
        assert fact.positive
        assert fact.atom.is_attribute
        assert fact.atom.arg1.text in sig.names
        assert fact.atom.arg2 in sig.attributes


def test_rel_neg_fact_distribution():
    rng = rng_for(5)
    sig = Signature(REL_POOLS.names[:4], REL_POOLS.attributes[:5],
                    REL_POOLS.relations[:3])
    n = 10_000
    relational = negative = 0
    for _ in range(n):
        fact = sample_fact(sig, REL_NEG, rng)
        relational += not fact.atom.is_attribute
        negative += not fact.positive
        if not fact.atom.is_attribute:
            assert fact.atom.arg2 in sig.names
    assert abs(relational / n - 0.70) < 0.02
    assert abs(negative / n - 0.20) < 0.02


def test_rule_structure_scan():
    rng = rng_for(6)
    sig = Signature(REL_POOLS.names[:4], REL_POOLS.attributes[:5],
                    REL_POOLS.relations[:3])
    n = 10_000
    opened_with_variable = 0
    for _ in range(n):
        r = sample_rule(sig, REL_NEG, rng)
        assert 1 <= len(r.conditions) <= 2
        assert len(r.variables()) <= 1
        opened_with_variable += r.conditions[0].atom.arg1.is_variable
        # arg2 is never a variable, anywhere
        for lit in (*r.conditions, r.conclusion):
            assert not lit.atom.arg1.is_variable or lit.atom.arg1.text in (
                "something", "someone", "thing")
            assert lit.atom.arg2 not in ("something", "someone", "thing")
        # no unbound conclusion variable
        if r.conclusion.atom.arg1.is_variable:
            assert r.conditions[0].atom.arg1 == r.conclusion.atom.arg1
        # later first-arguments reuse an earlier term
        earlier = {r.conditions[0].atom.arg1.text}
        if not r.conditions[0].atom.is_attribute:
            earlier.add(r.conditions[0].atom.arg2)
        for lit in (*r.conditions[1:], r.conclusion):
            assert lit.atom.arg1.text in earlier
            if not lit.atom.is_attribute:
                earlier.add(lit.atom.arg2)
    assert abs(opened_with_variable / n - 0.80) < 0.02


def test_noneg_rules_have_no_negation():
    rng = rng_for(7)
    sig = sample_signature(ATT_NONEG, rng)
    for _ in range(200):
        r = sample_rule(sig, ATT_NONEG, rng)
        assert all(l.positive for l in (*r.conditions, r.conclusion))


def test_target_two_condition_rule_is_producible():
    """The canonical heuristics walk-through rule comes out of the sampler."""
    sig = Signature(("cat", "dog"), ("happy",), ("loves",))
    rng = rng_for(8)
    wanted = None
    for _ in range(30_000):
        r = sample_rule(sig, REL_NEG, rng)
        if len(r.conditions) != 2:
            continue
        c1, c2 = r.conditions
        if (
            c1.positive and not c1.atom.is_attribute and c1.atom.arg2 == "cat"
            and c1.atom.arg1.is_variable
            and not c2.positive and c2.atom.is_attribute
            and c2.atom.arg1.text == "cat" and c2.atom.arg2 == "happy"
            and r.conclusion.positive and not r.conclusion.atom.is_attribute
            and r.conclusion.atom.arg1 == c1.atom.arg1
            and r.conclusion.atom.arg2 == "dog"
        ):
            wanted = r
            break
    assert wanted is not None


def test_generate_theory_deterministic():
    cfg = GenerationConfig(TheoryType.REL, True, target_depth=1, seed=99)
    a = generate_theory(cfg)
    b = generate_theory(cfg)
    assert emit_theory(a.theory) == emit_theory(b.theory)
    assert a.theory == b.theory
    assert a.model.derived == b.model.derived
    assert a.attempts == b.attempts


def test_child_streams_differ():
    cfg = GenerationConfig(TheoryType.ATT, False, target_depth=1, seed=99)
    a = generate_theory(cfg, rng_for(99, 0))
    b = generate_theory(cfg, rng_for(99, 1))
    assert emit_theory(a.theory) != emit_theory(b.theory)


def test_generated_theories_validate_and_gate_depth():
    for i in range(60):
        cfg = GenerationConfig(
            TheoryType.REL if i % 2 else TheoryType.ATT,
            negation_enabled=(i % 4 >= 2),
            target_depth=2,
            seed=1000 + i,
        )
        sample = generate_theory(cfg)
        assert validate_theory(sample.theory) == []
        assert sample.model.status is Status.CONSISTENT
        assert sample.model.max_depth >= 2
        assert 1 <= len(sample.theory.facts) <= 16
        assert 1 <= len(sample.theory.rules) <= 8


def test_attempts_exhausted():
    cfg = GenerationConfig(TheoryType.ATT, False, target_depth=30,
                           seed=1, max_attempts=50)
    with pytest.raises(AttemptsExhausted) as err:
        generate_theory(cfg)
    assert err.value.attempts == 50
    assert sum(err.value.discards.values()) == 50


def test_sample_theory_size_bounds():
    rng = rng_for(10)
    for _ in range(200):
        t = sample_theory(ATT_NEG, rng)
        assert 1 <= len(t.facts) <= 16
        assert 1 <= len(t.rules) <= 8
        assert t.signature is not None


def test_every_sampled_theory_validates():
    """The validator accepts raw sampler output, across all four classes."""
    rng = rng_for(11)
    configs = [ATT_NONEG, ATT_NEG, REL_NEG,
               GenerationConfig(TheoryType.REL, False, 0, 0)]
    for i in range(10_000):
        t = sample_theory(configs[i % 4], rng)
        violations = validate_theory(t)
        assert violations == [], violations
