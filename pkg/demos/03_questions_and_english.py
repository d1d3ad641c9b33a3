"""
Question sets and synthetic English
===================================

A theory built for depth d yields up to 4(d+1) balanced true/false questions:
per depth layer one provable statement and one negated provable statement,
plus questions about underivable atoms, half kept positive (false under the
closed-world assumption) and half flipped to negated form (true). Facts and
rules render to simple English; rules draw one of three templates.
"""

from rulekit.english import RuleStyle, render_rule, render_theory
from rulekit.generate import GenerationConfig, generate_theory, rng_for
from rulekit.model import TheoryType
from rulekit.questions import generate_questions

config = GenerationConfig(
    theory_type=TheoryType.ATT,
    negation_enabled=False,
    target_depth=2,
    seed=77,
)
sample = generate_theory(config)
stream = rng_for(config.seed, 1)

context, sentences = render_theory(sample.theory, stream)
print("context:")
for index, sentence in enumerate(sentences):
    print(f"  [{index}] {sentence}")

print("\nquestions:")
for q in generate_questions(sample.theory, sample.model, 2, stream):
    label = "T" if q.answer else "F"
    print(f"  [{label}] depth={q.depth:<2} {q.provenance.value:<15} {q.english}")

# The three rule templates, shown on one rule that qualifies for all of them.
rule = next(
    r for r in sample.theory.rules
    if all(l.atom.is_attribute and l.atom.arg1.is_variable and l.positive
           for l in (*r.conditions, r.conclusion))
)
print("\none rule, three templates:")
for style in RuleStyle:
    print("  ", render_rule(rule, style, sample.theory.theory_type))
