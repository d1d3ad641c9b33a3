"""Core data model for the rule language: terms, atoms, literals, rules, theories.

A theory is a list of ground facts plus implication rules with at most one
universally quantified variable. Everything here is immutable and hashable so
values can be shared freely across threads and used as dict keys.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Mapping, Sequence

VARIABLE_SYNONYMS = ("something", "someone", "thing")

IS_PREDICATE = "is"


class UnboundVariable(Exception):
    """A substitution left a variable in a literal that had to be ground."""


def normalize_symbol(symbol: str) -> str:
    return " ".join(symbol.split()).lower()


@dataclass(frozen=True, slots=True)
class Term:
    """Either an entity name or one of the three variable synonyms."""

    text: str

    @property
    def is_variable(self) -> bool:
        return self.text in VARIABLE_SYNONYMS


def entity(name: str) -> Term:
    term = Term(normalize_symbol(name))
    if term.is_variable:
        raise ValueError(f"{name!r} is a reserved variable synonym")
    return term


def variable(synonym: str = "something") -> Term:
    term = Term(normalize_symbol(synonym))
    if not term.is_variable:
        raise ValueError(f"variable synonym must be one of {VARIABLE_SYNONYMS}")
    return term


@dataclass(frozen=True, slots=True)
class Atom:
    """``is(arg1, attribute)`` or ``relation(arg1, entity)``.

    Only arg1 may be a variable; arg2 is always a plain symbol (an attribute
    for ``is``, an entity name for relations).
    """

    predicate: str
    arg1: Term
    arg2: str

    @property
    def is_attribute(self) -> bool:
        return self.predicate == IS_PREDICATE

    @property
    def is_ground(self) -> bool:
        return not self.arg1.is_variable

    def __str__(self) -> str:
        arg1 = f"?{self.arg1.text}" if self.arg1.is_variable else self.arg1.text
        return f"{self.predicate}({arg1}, {self.arg2})"


@dataclass(frozen=True, slots=True)
class Literal:
    atom: Atom
    positive: bool = True

    @property
    def is_ground(self) -> bool:
        return self.atom.is_ground

    def negated(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"not {self.atom}"


def is_fact(subject: str, attribute: str, positive: bool = True) -> Literal:
    """Convenience constructor for a ground attribute literal."""
    return Literal(Atom(IS_PREDICATE, entity(subject), normalize_symbol(attribute)), positive)


def rel_fact(subject: str, relation: str, obj: str, positive: bool = True) -> Literal:
    """Convenience constructor for a ground relational literal."""
    return Literal(Atom(normalize_symbol(relation), entity(subject), normalize_symbol(obj)), positive)


@dataclass(frozen=True, slots=True)
class Rule:
    """Conjunctive implication ``condition [and condition]* -> conclusion``."""

    conditions: tuple[Literal, ...]
    conclusion: Literal
    id: str = ""

    @property
    def is_ground(self) -> bool:
        return self.conclusion.is_ground and all(c.is_ground for c in self.conditions)

    def variables(self) -> tuple[str, ...]:
        seen: list[str] = []
        for lit in (*self.conditions, self.conclusion):
            if lit.atom.arg1.is_variable and lit.atom.arg1.text not in seen:
                seen.append(lit.atom.arg1.text)
        return tuple(seen)

    def __str__(self) -> str:
        body = " and ".join(str(c) for c in self.conditions)
        return f"{body} -> {self.conclusion}"


def rule(conditions: Sequence[Literal], conclusion: Literal, id: str = "") -> Rule:
    return Rule(tuple(conditions), conclusion, id)


class TheoryType(str, Enum):
    """Attribute-only theories use people names; relational ones use animals."""

    ATT = "att"
    REL = "rel"


@dataclass(frozen=True, slots=True)
class Signature:
    """The name/attribute/relation symbols a theory draws from."""

    names: tuple[str, ...]
    attributes: tuple[str, ...]
    relations: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class Theory:
    """Ground facts plus rules; the sentence order is facts then rules.

    Sentence indices (used by the perturbation probes) address this order, so
    duplicate facts keep distinct identities.
    """

    facts: tuple[Literal, ...]
    rules: tuple[Rule, ...]
    signature: Signature | None = None
    theory_type: TheoryType = TheoryType.ATT
    negation_enabled: bool = True

    def __post_init__(self) -> None:
        if any(not r.id for r in self.rules):
            numbered = tuple(
                r if r.id else replace(r, id=f"rule{i + 1}")
                for i, r in enumerate(self.rules)
            )
            object.__setattr__(self, "rules", numbered)

    @property
    def sentence_count(self) -> int:
        return len(self.facts) + len(self.rules)

    def sentence(self, index: int) -> Literal | Rule:
        if index < len(self.facts):
            return self.facts[index]
        return self.rules[index - len(self.facts)]

    def sentence_is_fact(self, index: int) -> bool:
        return index < len(self.facts)

    def without_sentence(self, index: int) -> "Theory":
        """The same theory with one sentence removed (rule ids preserved)."""
        if not 0 <= index < self.sentence_count:
            raise IndexError(index)
        if index < len(self.facts):
            facts = self.facts[:index] + self.facts[index + 1 :]
            return replace(self, facts=facts)
        j = index - len(self.facts)
        return replace(self, rules=self.rules[:j] + self.rules[j + 1 :])

    def effective_signature(self) -> Signature:
        """The declared signature, or one inferred from the symbols in use."""
        if self.signature is not None:
            return self.signature
        return infer_signature(self.facts, self.rules)


def theory(
    facts: Iterable[Literal],
    rules: Iterable[Rule],
    signature: Signature | None = None,
    theory_type: TheoryType = TheoryType.ATT,
    negation_enabled: bool = True,
) -> Theory:
    return Theory(tuple(facts), tuple(rules), signature, theory_type, negation_enabled)


def infer_signature(facts: Iterable[Literal], rules: Iterable[Rule]) -> Signature:
    names: list[str] = []
    attributes: list[str] = []
    relations: list[str] = []

    def see(bucket: list[str], symbol: str) -> None:
        if symbol not in bucket:
            bucket.append(symbol)

    def see_atom(atom: Atom) -> None:
        if not atom.arg1.is_variable:
            see(names, atom.arg1.text)
        if atom.is_attribute:
            see(attributes, atom.arg2)
        else:
            see(relations, atom.predicate)
            see(names, atom.arg2)

    for fact in facts:
        see_atom(fact.atom)
    for r in rules:
        for lit in (*r.conditions, r.conclusion):
            see_atom(lit.atom)
    return Signature(tuple(names), tuple(attributes), tuple(relations))


# ---------------------------------------------------------------------------
# Substitution and grounding

Substitution = Mapping[str, str]


def substitute(literal: Literal, sub: Substitution) -> Literal:
    """Replace the literal's variable using ``sub``; ground inputs pass through."""
    term = literal.atom.arg1
    if not term.is_variable:
        return literal
    if term.text not in sub:
        raise UnboundVariable(f"no binding for variable {term.text!r}")
    atom = replace(literal.atom, arg1=entity(sub[term.text]))
    return replace(literal, atom=atom)


def substitute_rule(r: Rule, sub: Substitution) -> Rule:
    return Rule(
        tuple(substitute(c, sub) for c in r.conditions),
        substitute(r.conclusion, sub),
        r.id,
    )


def ground_rule(r: Rule, entities: Sequence[str]) -> list[Rule]:
    """One ground instance per entity bound to the rule's variable.

    Ground rules yield exactly themselves; instance order follows the entity
    order given, so grounding is deterministic.
    """
    names = r.variables()
    if not names:
        return [r]
    sub = {name: None for name in names}
    out = []
    for e in entities:
        for name in sub:
            sub[name] = e
        out.append(substitute_rule(r, sub))
    return out


# ---------------------------------------------------------------------------
# Validation

#: Generated rules use 1-2 conditions; hand-authored rulebases go up to 3.
MAX_RULE_CONDITIONS = 3


@dataclass(frozen=True, slots=True)
class Violation:
    sentence: int
    message: str

    def __str__(self) -> str:
        return f"sentence {self.sentence}: {self.message}"


def validate_theory(t: Theory) -> list[Violation]:
    """All grammar/shape violations in the theory; empty means valid.

    Violations are data, not errors: the caller decides whether to reject.
    """
    out: list[Violation] = []
    sig = t.signature

    def check_atom(idx: int, atom: Atom, where: str) -> None:
        if atom.arg2 in VARIABLE_SYNONYMS:
            out.append(Violation(idx, f"{where}: arg2 must be a symbol, not a variable"))
        if sig is not None and not atom.arg1.is_variable:
            if atom.arg1.text not in sig.names:
                out.append(Violation(idx, f"{where}: unknown entity {atom.arg1.text!r}"))
        if sig is not None:
            if atom.is_attribute:
                if atom.arg2 not in sig.attributes:
                    out.append(Violation(idx, f"{where}: unknown attribute {atom.arg2!r}"))
            else:
                if atom.predicate not in sig.relations:
                    out.append(Violation(idx, f"{where}: unknown relation {atom.predicate!r}"))
                if atom.arg2 not in sig.names:
                    out.append(Violation(idx, f"{where}: unknown entity {atom.arg2!r}"))

    for i, fact in enumerate(t.facts):
        if not fact.is_ground:
            out.append(Violation(i, "facts must be ground"))
        check_atom(i, fact.atom, "fact")

    for j, r in enumerate(t.rules):
        idx = len(t.facts) + j
        if not r.conditions:
            out.append(Violation(idx, "rule needs at least one condition"))
        if len(r.conditions) > MAX_RULE_CONDITIONS:
            out.append(
                Violation(idx, f"rules allow at most {MAX_RULE_CONDITIONS} conditions")
            )
        if len(r.variables()) > 1:
            out.append(Violation(idx, "rules allow at most one variable"))
        # A variable may only be introduced by the first condition; later
        # conditions and the conclusion must reuse it.
        introduced = bool(r.conditions) and r.conditions[0].atom.arg1.is_variable
        for k, cond in enumerate(r.conditions):
            if k > 0 and cond.atom.arg1.is_variable and not introduced:
                out.append(
                    Violation(idx, f"condition {k + 1} introduces a fresh variable")
                )
            check_atom(idx, cond.atom, f"condition {k + 1}")
        if r.conclusion.atom.arg1.is_variable and not introduced:
            out.append(Violation(idx, "conclusion variable is unbound"))
        check_atom(idx, r.conclusion.atom, "conclusion")
    return out
