from __future__ import annotations

import pytest

from rulekit.model import (
    Theory,
    TheoryType,
    is_fact,
    rel_fact,
    rule,
    theory,
    variable,
)
from rulekit.model import Atom, Literal, Term


def attr(subject: str, attribute: str, positive: bool = True) -> Literal:
    """Attribute literal whose subject may be a variable synonym."""
    return Literal(Atom("is", Term(subject), attribute), positive)


def rel(subject: str, relation: str, obj: str, positive: bool = True) -> Literal:
    return Literal(Atom(relation, Term(subject), obj), positive)


@pytest.fixture
def people_theory() -> Theory:
    """Four people, four attribute rules; the intro example.

    The chain to know: bob is big, therefore rough, therefore green.
    """
    return theory(
        facts=[
            is_fact("alan", "blue"),
            is_fact("alan", "rough"),
            is_fact("alan", "young"),
            is_fact("bob", "big"),
            is_fact("bob", "round"),
            is_fact("charlie", "big"),
            is_fact("charlie", "blue"),
            is_fact("charlie", "green"),
            is_fact("dave", "green"),
            is_fact("dave", "rough"),
        ],
        rules=[
            rule([attr("something", "big")], attr("something", "rough")),
            rule(
                [attr("someone", "young"), attr("someone", "round")],
                attr("someone", "kind"),
            ),
            rule(
                [attr("someone", "round"), attr("someone", "big")],
                attr("someone", "blue"),
            ),
            rule([attr("something", "rough")], attr("something", "green")),
        ],
        theory_type=TheoryType.ATT,
        negation_enabled=False,
    )


@pytest.fixture
def animals_theory() -> Theory:
    """Relations with negation; rabbit eats the bald eagle, so it is furry."""
    return theory(
        facts=[
            rel_fact("bald eagle", "eats", "dog", positive=False),
            rel_fact("cat", "chases", "dog"),
            rel_fact("cat", "eats", "bald eagle"),
            is_fact("cat", "nice"),
            rel_fact("cat", "likes", "dog"),
            rel_fact("cat", "likes", "rabbit"),
            is_fact("dog", "furry"),
            rel_fact("rabbit", "chases", "bald eagle"),
            rel_fact("rabbit", "eats", "bald eagle"),
        ],
        rules=[
            rule(
                [rel("someone", "eats", "cat", positive=False)],
                rel("someone", "eats", "dog", positive=False),
            ),
            rule(
                [rel("someone", "likes", "bald eagle")],
                rel("someone", "likes", "rabbit", positive=False),
            ),
            rule(
                [
                    rel("someone", "eats", "bald eagle"),
                    rel("someone", "eats", "rabbit", positive=False),
                ],
                attr("someone", "furry"),
            ),
            rule([attr("someone", "furry")], rel("someone", "likes", "cat")),
        ],
        theory_type=TheoryType.REL,
        negation_enabled=True,
    )


@pytest.fixture
def birds_theory() -> Theory:
    """The abnormality-predicate puzzle: only unwounded non-ostriches fly."""
    return theory(
        facts=[
            is_fact("arthur", "bird"),
            is_fact("arthur", "wounded", positive=False),
            is_fact("bill", "ostrich"),
            is_fact("colin", "bird"),
            is_fact("colin", "wounded"),
            is_fact("dave", "ostrich", positive=False),
            is_fact("dave", "wounded"),
        ],
        rules=[
            rule(
                [attr("someone", "bird"), attr("someone", "abnormal", positive=False)],
                attr("someone", "flying"),
            ),
            rule([attr("someone", "ostrich")], attr("someone", "bird")),
            rule([attr("someone", "ostrich")], attr("someone", "abnormal")),
            rule([attr("someone", "ostrich")], attr("someone", "flying", positive=False)),
            rule(
                [attr("someone", "bird"), attr("someone", "wounded")],
                attr("someone", "abnormal"),
            ),
            rule([attr("someone", "wounded")], attr("someone", "flying", positive=False)),
        ],
        theory_type=TheoryType.ATT,
        negation_enabled=True,
    )
