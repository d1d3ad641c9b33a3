"""
The reasoning service
=====================

The HTTP facade is stateless: every request carries its whole theory, so
counterfactual exploration is just editing the text and proving again. This
demo drives the app in process; `rulekit serve --port 8000` runs the same
app for the browser playground (`frontend/`).
"""

from fastapi.testclient import TestClient

from rulekit.service import create_app

client = TestClient(create_app())

print("corpora:", client.get("/v1/corpora").json()["corpora"])

# Load the counterfactual preset and ask about conduction.
detail = client.get("/v1/corpora/counterfactuals").json()
bridged = next(c for c in detail["cases"] if c["name"] == "plastic-metal")
statement = '("nail" "is" "conducting" "+")'

body = client.post("/v1/prove", json={
    "theory": bridged["theory"], "statement": statement,
}).json()
print("\nwith 'Plastic is a metal.':", body["answer"],
      "| depth:", body["depth"],
      "| critical sentences:", body["critical_sentences"])

# Drop the bridging rule: the same question now fails.
lines = [l for l in bridged["theory"].splitlines()
         if '"plastic"' not in l or "->" not in l or '"metal"' not in l]
body = client.post("/v1/prove", json={
    "theory": "\n".join(lines), "statement": statement,
}).json()
print("without it:", body["answer"])

# Server-side generation, deterministic per seed.
generated = client.post("/v1/generate", json={
    "theory_type": "rel", "negation": True, "target_depth": 2, "seed": 11,
}).json()
print("\ngenerated theory reaches depth", generated["model"]["max_depth"],
      "after", generated["attempts"], "attempts")
for q in generated["questions"][:4]:
    print("  ", q["question"], "->", "T" if q["answer"] else "F")

# Error shapes: syntax errors come back with a source span.
bad = client.post("/v1/prove", json={
    "theory": '("bob" "is" "big")', "statement": statement,
})
print("\nmalformed theory ->", bad.status_code, bad.json())
