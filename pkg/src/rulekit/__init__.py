"""Rule-theory toolkit: reasoning engine, theory sampling, QA dataset builds.

The library centers on small logic theories (ground facts plus single-variable
implication rules) with negation-as-failure semantics under a closed-world
assumption. It can parse and emit them, compute their minimal supported model
with proofs and depth annotations, sample new theories against target
inference depths, phrase everything in synthetic English, assemble balanced
true/false question datasets, and analyze how conclusions depend on
individual context sentences.
"""

from .model import (
    Atom,
    Literal,
    Rule,
    Signature,
    Substitution,
    Term,
    Theory,
    TheoryType,
    UnboundVariable,
    Violation,
    entity,
    ground_rule,
    infer_signature,
    is_fact,
    rel_fact,
    rule,
    substitute,
    theory,
    validate_theory,
    variable,
)
from .syntax import (
    ParseError,
    SourceSpan,
    emit_literal,
    emit_rule,
    emit_theory,
    parse_literal,
    parse_theory,
)
from .engine import (
    CriticalSet,
    GivenFact,
    InconsistentTheory,
    Model,
    NotProven,
    ProofStep,
    ProvenAtom,
    RuleApplication,
    Status,
    answer,
    critical_sentences,
    failure_depth,
    forward_chain,
    stratify,
)

__version__ = "0.1.0"

from .generate import (  # noqa: E402
    ATT_POOLS,
    REL_POOLS,
    AttemptsExhausted,
    GenerationConfig,
    TheorySample,
    generate_theory,
    rng_for,
)
from .questions import (  # noqa: E402
    Provenance,
    QuestionRecord,
    generate_questions,
    partition_unproven,
)
from .english import (  # noqa: E402
    RuleStyle,
    StyleNotApplicable,
    render_fact,
    render_question,
    render_rule,
    render_theory,
)
