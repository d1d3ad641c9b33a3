"""Record real service responses into tests/fixtures/recorded.json.

The UI tests replay these verbatim, so displayed answers in tests are exactly
what the service produced. Re-run after changing the service:

    python3 scripts/record_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from rulekit.corpora import load_corpus
from rulekit.service import create_app
from rulekit.syntax import emit_theory

client = TestClient(create_app())
prove: dict[str, dict] = {}
corpora: dict[str, dict] = {}


def record_prove(theory_text: str, statement: str) -> None:
    response = client.post(
        "/v1/prove", json={"theory": theory_text, "statement": statement}
    )
    response.raise_for_status()
    prove[theory_text + "\x00" + statement] = response.json()


for name in ("counterfactuals", "attributes-demo"):
    corpora[name] = client.get(f"/v1/corpora/{name}").json()

# The counterfactual toggle: with and without the class-bridging rule.
plastic_metal = load_corpus("counterfactuals")[3]
conducting = '("nail" "is" "conducting" "+")'
bridge = plastic_metal.english.index("Plastic is a metal.")
record_prove(emit_theory(plastic_metal.theory), conducting)
record_prove(emit_theory(plastic_metal.theory.without_sentence(bridge)), conducting)

# The chain question with three critical sentences.
(attributes_demo,) = load_corpus("attributes-demo")
record_prove(emit_theory(attributes_demo.theory), '("bob" "is" "green" "+")')

out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "recorded.json"
out.parent.mkdir(parents=True, exist_ok=True)
out.write_text(json.dumps({"prove": prove, "corpora": corpora}, indent=2) + "\n")
print(f"wrote {out} ({len(prove)} prove responses, {len(corpora)} corpora)")
