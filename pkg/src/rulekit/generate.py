"""Seeded random sampling of theories: pools, signatures, facts, rules.

Sampling follows a small fixed recipe: draw a per-theory sub-signature from
the standard pools, draw facts and rules through the grammar with its
documented transition probabilities, then keep only theories that are
consistent, stratified, and reach the target inference depth
(generate-and-test). All randomness flows through numpy PCG64 generators;
``rng_for(seed, *key)`` derives independent child streams (one per theory
index in the dataset pipeline), so builds are reproducible across platforms
and worker counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .engine import Model, Status, forward_chain
from .model import (
    VARIABLE_SYNONYMS,
    Atom,
    Literal,
    Rule,
    Signature,
    Term,
    Theory,
    TheoryType,
    infer_signature,
)

#: Attribute-only theories: people names, no relations.
ATT_POOLS = Signature(
    names=("anne", "bob", "charlie", "dave", "erin", "fiona", "gary", "harry"),
    attributes=("red", "blue", "green", "kind", "nice", "big", "cold",
                "young", "round", "rough", "white", "smart", "quiet", "furry"),
    relations=(),
)

#: Relational theories: animal names, a shorter attribute list, six relations.
REL_POOLS = Signature(
    names=("cat", "dog", "bald eagle", "rabbit", "mouse", "tiger", "lion",
           "bear", "squirrel", "cow"),
    attributes=("red", "blue", "green", "kind", "nice", "big", "cold",
                "young", "round", "rough"),
    relations=("likes", "chases", "eats", "sees", "visits", "needs"),
)

#: Grammar transition probabilities.
P_RELATIONAL_FACT = 0.7   # relational vs "is" fact in relational theories
P_NEGATIVE = 0.2          # "-" polarity when negation is enabled
P_GROUNDED_FIRST_ARG = 0.2  # a name (vs a variable) opening a rule

FACT_COUNT_RANGE = (1, 16)
RULE_COUNT_RANGE = (1, 8)
RULE_CONDITION_RANGE = (1, 2)
SIGNATURE_NAME_RANGE = (2, 4)
SIGNATURE_ATTRIBUTE_RANGE = (1, 5)
SIGNATURE_RELATION_RANGE = (1, 4)


class AttemptsExhausted(Exception):
    def __init__(self, attempts: int, discards: Counter):
        super().__init__(
            f"no acceptable theory in {attempts} attempts "
            f"(discards: {dict(discards)})"
        )
        self.attempts = attempts
        self.discards = discards


@dataclass(frozen=True)
class GenerationConfig:
    theory_type: TheoryType = TheoryType.ATT
    negation_enabled: bool = False
    target_depth: int = 0
    seed: int = 0
    max_attempts: int = 20_000


@dataclass
class TheorySample:
    theory: Theory
    model: Model
    attempts: int
    discards: Counter = field(default_factory=Counter)


def rng_for(seed: int, *key: int) -> np.random.Generator:
    """An independent child stream of the root seed.

    Stream selection is by spawn key, so ``rng_for(seed, i)`` for distinct
    ``i`` gives statistically independent, individually reproducible streams.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def randint(rng: np.random.Generator, lo: int, hi: int) -> int:
    """Uniform integer on the inclusive range [lo, hi]."""
    return int(rng.integers(lo, hi + 1))


def choose(rng: np.random.Generator, items):
    return items[int(rng.integers(len(items)))]


def pools_for(theory_type: TheoryType) -> Signature:
    return ATT_POOLS if theory_type is TheoryType.ATT else REL_POOLS


def sample_signature(config: GenerationConfig, rng: np.random.Generator) -> Signature:
    """A random sub-signature; repeated symbols make theories interact."""
    pools = pools_for(config.theory_type)

    def subset(pool: tuple[str, ...], count: int) -> tuple[str, ...]:
        picked = rng.permutation(len(pool))[:count]
        return tuple(pool[i] for i in sorted(int(x) for x in picked))

    names = subset(pools.names, randint(rng, *SIGNATURE_NAME_RANGE))
    attributes = subset(pools.attributes, randint(rng, *SIGNATURE_ATTRIBUTE_RANGE))
    if config.theory_type is TheoryType.ATT:
        relations: tuple[str, ...] = ()
    else:
        relations = subset(pools.relations, randint(rng, *SIGNATURE_RELATION_RANGE))
    return Signature(names, attributes, relations)


def _sample_polarity(config: GenerationConfig, rng: np.random.Generator) -> bool:
    if not config.negation_enabled:
        return True
    return rng.random() >= P_NEGATIVE


def _relational(config: GenerationConfig, sig: Signature,
                rng: np.random.Generator) -> bool:
    if config.theory_type is TheoryType.ATT or not sig.relations:
        return False
    return rng.random() < P_RELATIONAL_FACT


def sample_fact(sig: Signature, config: GenerationConfig,
                rng: np.random.Generator) -> Literal:
    arg1 = Term(choose(rng, sig.names))
    if _relational(config, sig, rng):
        atom = Atom(choose(rng, sig.relations), arg1, choose(rng, sig.names))
    else:
        atom = Atom("is", arg1, choose(rng, sig.attributes))
    return Literal(atom, _sample_polarity(config, rng))


def sample_rule(sig: Signature, config: GenerationConfig,
                rng: np.random.Generator) -> Rule:
    """One rule, built condition by condition.

    The opening argument is a variable most of the time (occasionally a name,
    to include some fully grounded rules); later first-arguments reuse a term
    already mentioned; second arguments prefer symbols new to the rule and
    are never variables.
    """
    n_conditions = randint(rng, *RULE_CONDITION_RANGE)
    synonym = Term(choose(rng, VARIABLE_SYNONYMS))
    used_terms: list[Term] = []
    used_symbols: set[str] = set()

    def note(term: Term) -> None:
        if term not in used_terms:
            used_terms.append(term)
        if not term.is_variable:
            used_symbols.add(term.text)

    def fresh(pool: tuple[str, ...]) -> str:
        unused = [s for s in pool if s not in used_symbols]
        return choose(rng, unused if unused else pool)

    def build(first: bool) -> Literal:
        if first:
            if rng.random() < P_GROUNDED_FIRST_ARG:
                arg1 = Term(choose(rng, sig.names))
            else:
                arg1 = synonym
        else:
            arg1 = choose(rng, used_terms)
        note(arg1)
        if _relational(config, sig, rng):
            obj = fresh(sig.names)
            atom = Atom(choose(rng, sig.relations), arg1, obj)
            note(Term(obj))
        else:
            attribute = fresh(sig.attributes)
            atom = Atom("is", arg1, attribute)
            used_symbols.add(attribute)
        return Literal(atom, _sample_polarity(config, rng))

    conditions = [build(first=(i == 0)) for i in range(n_conditions)]
    conclusion = build(first=False)
    return Rule(tuple(conditions), conclusion)


def sample_theory(config: GenerationConfig, rng: np.random.Generator) -> Theory:
    """One unchecked draw: signature, facts, rules.

    The stored signature is narrowed to the symbols the draw actually used,
    so a theory means the same thing after an emit/parse round trip (records
    carry only the statement text, and inference grounds over the theory's
    own domain).
    """
    sig = sample_signature(config, rng)
    n_facts = randint(rng, *FACT_COUNT_RANGE)
    n_rules = randint(rng, *RULE_COUNT_RANGE)
    facts = tuple(sample_fact(sig, config, rng) for _ in range(n_facts))
    rules = tuple(sample_rule(sig, config, rng) for _ in range(n_rules))
    in_use = infer_signature(facts, rules)
    return Theory(facts, rules, in_use, config.theory_type, config.negation_enabled)


def generate_theory(config: GenerationConfig,
                    rng: np.random.Generator | None = None) -> TheorySample:
    """Generate-and-test until a theory meets the bar, tracking discards.

    A draw is discarded when inference finds it inconsistent or
    unstratifiable, when its deepest derived fact falls short of the target
    depth, or (rarely) when proof recording overflows its cap.
    """
    if rng is None:
        rng = rng_for(config.seed)
    discards: Counter = Counter()
    for attempt in range(1, config.max_attempts + 1):
        t = sample_theory(config, rng)
        quick = forward_chain(t, record_proofs=False)
        if quick.status is Status.INCONSISTENT:
            discards["inconsistent"] += 1
            continue
        if quick.status is Status.UNSTRATIFIED:
            discards["unstratified"] += 1
            continue
        if quick.max_depth < config.target_depth:
            discards["too_shallow"] += 1
            continue
        model = forward_chain(t, record_proofs=True)
        if model.proof_cap_hit:
            discards["proof_cap"] += 1
            continue
        return TheorySample(t, model, attempt, discards)
    raise AttemptsExhausted(config.max_attempts, discards)
