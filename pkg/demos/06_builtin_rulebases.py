"""
The built-in rulebases
======================

Hand-authored fixtures ship with the package: the two demo theories, the
birds puzzle in two phrasings, four circuit rulebases of growing complexity
with probabilistic scenario specs, and the counterfactual sequence where
editing one class statement flips a conclusion.
"""

from collections import Counter

from rulekit.corpora import corpus_names, generate_scenarios, load_corpus
from rulekit.engine import answer, forward_chain
from rulekit.generate import rng_for

print("available:", ", ".join(corpus_names()))

# The birds puzzle: abnormality blocks flight for all but arthur.
(birds,) = load_corpus("birds2")
model = forward_chain(birds.theory)
print("\nbirds2:")
for question in birds.questions:
    verdict = answer(model, question.statement)
    assert verdict is question.answer
    print(f"  {question.english} -> {'T' if verdict else 'F'}")

# Circuit scenarios: facts sampled per the sidecar probabilities, reasoning
# always consistent, appliances light up only when current flows.
rng = rng_for(99)
lit = Counter()
for scenario in generate_scenarios("electricity2", 400, rng):
    m = forward_chain(scenario, record_proofs=False)
    from rulekit.model import is_fact
    lit["glowing"] += answer(m, is_fact("light bulb", "glowing"))
    lit["scenarios"] += 1
print("\nelectricity2: bulb glows in", lit["glowing"], "of", lit["scenarios"],
      "sampled scenarios")

# The counterfactual sequence: same question, different worlds.
print("\ncounterfactuals:")
for case in load_corpus("counterfactuals"):
    m = forward_chain(case.theory)
    (question,) = case.questions
    verdict = answer(m, question.statement)
    print(f"  [{case.name}] {question.english} -> {'TRUE' if verdict else 'FALSE'}")
    assert verdict is question.answer
