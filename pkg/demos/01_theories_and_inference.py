"""
Theories, inference, and proofs
===============================

A theory is a handful of ground facts plus implication rules with at most one
universally quantified variable. The engine grounds the rules over the
theory's entities, layers atoms so negation-as-failure is well defined, and
derives the minimal supported model with every proof recorded.
"""

from rulekit import (
    answer,
    critical_sentences,
    emit_theory,
    failure_depth,
    forward_chain,
    is_fact,
    parse_theory,
)

# The formal text format: quoted tokens, one statement per line, // comments.
text = """
("bob" "is" "big" "+")            // a stated fact
("bob" "is" "round" "+")
("dave" "is" "green" "+")
((("something" "is" "big" "+")) -> ("something" "is" "rough" "+"))
((("something" "is" "rough" "+")) -> ("something" "is" "green" "+"))
"""

theory = parse_theory(text)
print("parsed", len(theory.facts), "facts and", len(theory.rules), "rules")
print("round-trips to:\n" + emit_theory(theory))

model = forward_chain(theory)
print("status:", model.status.value)
for literal in model.derived_order:
    print(f"  depth {model.depth[literal]}:", literal)

# Answers follow the closed-world assumption: underivable means false.
print("bob is green?", answer(model, is_fact("bob", "green")))
print("bob is kind?", answer(model, is_fact("bob", "kind")))
print("bob is not kind?", answer(model, is_fact("bob", "kind", positive=False)))

# Every proof is recorded, so we can ask which sentences carry a conclusion.
crit = critical_sentences(model, is_fact("bob", "green"))
print("critical sentences for 'bob is green':", sorted(crit.critical))
for index in sorted(crit.critical):
    print("   ", theory.sentence(index))

# Unproven atoms get a failure depth: how deep the best attempt ran.
from rulekit.model import Atom, Term

print("failure depth of is(dave, rough):",
      failure_depth(model, Atom("is", Term("dave"), "rough")))
