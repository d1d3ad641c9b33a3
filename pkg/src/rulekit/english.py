"""One-way rendering of theories, rules, and statements into synthetic English.

Surface conventions, reconstructed from the printed examples the grammar is
meant to produce:

* Attribute-theory subjects are bare capitalized names ("Bob is big."); in
  relational theories every entity gets a definite article ("the bald eagle").
* A rule variable reads as its synonym on first mention and as a pronoun
  afterwards: "someone ... they", "something"/"thing" ... "it". Repeated
  entity names stay names ("If Bob is not green then Bob is nice.").
* Runs of attribute conditions about one subject merge: "If someone is young
  and round then they are kind."
* Attribute-only variable rules can also render as "All X people are Y." or
  bare "X people are Y."; relational or grounded rules only get the if-then
  template.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .model import Literal, Rule, Term, Theory, TheoryType

#: Third-person-singular relation verbs and their bare forms for "does not".
_VERB_BASE_OVERRIDES = {"has": "have", "is": "be"}


class StyleNotApplicable(Exception):
    """The requested rule template cannot express this rule."""


class RuleStyle(Enum):
    IF_THEN = "if_then"
    ALL_PEOPLE_THINGS = "all_people_things"
    BARE_PLURAL = "bare_plural"


def verb_base(verb3sg: str) -> str:
    """Base form of an inflected relation verb ("likes" -> "like")."""
    first, _, rest = verb3sg.partition(" ")
    base = _VERB_BASE_OVERRIDES.get(first)
    if base is None:
        base = first[:-1] if first.endswith("s") else first
    return f"{base} {rest}" if rest else base


def _pronoun(synonym: str) -> str:
    return "they" if synonym == "someone" else "it"


def _entity_phrase(name: str, theory_type: TheoryType) -> str:
    if theory_type is TheoryType.ATT:
        return name[:1].upper() + name[1:]
    return f"the {name}"


def _sentence(text: str) -> str:
    text = text[:1].upper() + text[1:]
    return text + "."


class _Subjects:
    """Tracks which terms have been mentioned inside one rule rendering."""

    def __init__(self, theory_type: TheoryType):
        self.theory_type = theory_type
        self.seen: set[Term] = set()

    def phrase(self, term: Term) -> tuple[str, bool]:
        """The subject phrase and whether it takes plural agreement."""
        first_mention = term not in self.seen
        self.seen.add(term)
        if not term.is_variable:
            return _entity_phrase(term.text, self.theory_type), False
        if first_mention:
            return term.text, False
        pronoun = _pronoun(term.text)
        return pronoun, pronoun == "they"


def _clause(lit: Literal, subject: str, plural: bool,
            theory_type: TheoryType) -> str:
    atom = lit.atom
    if atom.is_attribute:
        copula = "are" if plural else "is"
        if lit.positive:
            return f"{subject} {copula} {atom.arg2}"
        return f"{subject} {copula} not {atom.arg2}"
    obj = _entity_phrase(atom.arg2, theory_type)
    if lit.positive:
        verb = verb_base(atom.predicate) if plural else atom.predicate
        return f"{subject} {verb} {obj}"
    negation = "do not" if plural else "does not"
    return f"{subject} {negation} {verb_base(atom.predicate)} {obj}"


def render_fact(lit: Literal, theory_type: TheoryType) -> str:
    """A ground literal as one sentence ("The bald eagle does not eat the dog.")."""
    subject = _entity_phrase(lit.atom.arg1.text, theory_type)
    return _sentence(_clause(lit, subject, plural=False, theory_type=theory_type))


def render_question(statement: Literal, theory_type: TheoryType) -> str:
    return render_fact(statement, theory_type) + " True/false?"


def applicable_styles(r: Rule) -> tuple[RuleStyle, ...]:
    """The templates able to express this rule (if-then always qualifies)."""
    attribute_only = (
        all(l.atom.is_attribute for l in (*r.conditions, r.conclusion))
        and all(l.atom.arg1.is_variable for l in (*r.conditions, r.conclusion))
        and all(l.positive for l in r.conditions)
    )
    if attribute_only:
        return (RuleStyle.IF_THEN, RuleStyle.ALL_PEOPLE_THINGS, RuleStyle.BARE_PLURAL)
    return (RuleStyle.IF_THEN,)


def choose_style(r: Rule, rng: np.random.Generator) -> RuleStyle:
    styles = applicable_styles(r)
    return styles[int(rng.integers(len(styles)))]


def render_rule(r: Rule, style: RuleStyle, theory_type: TheoryType) -> str:
    if style is not RuleStyle.IF_THEN and style not in applicable_styles(r):
        raise StyleNotApplicable(f"{style.value} cannot express rule {r.id or r}")

    if style is RuleStyle.IF_THEN:
        return _render_if_then(r, theory_type)

    group = "people" if theory_type is TheoryType.ATT else "things"
    attributes = ", ".join(c.atom.arg2 for c in r.conditions)
    tail = "are" if r.conclusion.positive else "are not"
    if style is RuleStyle.ALL_PEOPLE_THINGS:
        return _sentence(f"all {attributes} {group} {tail} {r.conclusion.atom.arg2}")
    return _sentence(f"{attributes} {group} {tail} {r.conclusion.atom.arg2}")


def _render_if_then(r: Rule, theory_type: TheoryType) -> str:
    subjects = _Subjects(theory_type)
    clauses: list[str] = []
    previous: Literal | None = None
    for cond in r.conditions:
        mergeable = (
            previous is not None
            and cond.atom.is_attribute
            and previous.atom.is_attribute
            and cond.atom.arg1 == previous.atom.arg1
        )
        if mergeable:
            extra = cond.atom.arg2 if cond.positive else f"not {cond.atom.arg2}"
            clauses[-1] = f"{clauses[-1]} and {extra}"
        else:
            subject, plural = subjects.phrase(cond.atom.arg1)
            clauses.append(_clause(cond, subject, plural, theory_type))
        previous = cond
    condition_text = " and ".join(clauses)
    subject, plural = subjects.phrase(r.conclusion.atom.arg1)
    conclusion_text = _clause(r.conclusion, subject, plural, theory_type)
    return _sentence(f"if {condition_text} then {conclusion_text}")


def render_theory(t: Theory, rng: np.random.Generator) -> tuple[str, list[str]]:
    """The context paragraph plus one sentence per theory sentence index.

    Facts come first, then rules; the list index of each sentence equals its
    sentence index in the theory, which the perturbation analyses rely on.
    """
    sentences = [render_fact(f, t.theory_type) for f in t.facts]
    for r in t.rules:
        sentences.append(render_rule(r, choose_style(r, rng), t.theory_type))
    return " ".join(sentences), sentences
