"""Stateless HTTP facade: parse, prove, explain, generate, corpora.

Theories travel with every request (no sessions); a request's work is pure,
so identical requests get identical responses in any order. The app also
serves the playground's static assets when a build directory is supplied.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .corpora import UnknownCorpus, corpus_names, load_corpus
from .engine import (
    Model,
    Status,
    answer,
    critical_sentences,
    failure_depth,
    forward_chain,
)
from .english import render_theory
from .generate import AttemptsExhausted, GenerationConfig, generate_theory, rng_for
from .model import Literal, TheoryType, validate_theory
from .questions import generate_questions
from .records import proof_json
from .syntax import ParseError, emit_literal, emit_theory, parse_literal, parse_theory

DEFAULT_SENTENCE_CAP = 200
DEFAULT_ENTITY_CAP = 12


class ProveRequest(BaseModel):
    theory: str
    statement: str


class GenerateRequest(BaseModel):
    theory_type: str = "att"
    negation: bool = False
    target_depth: int = 1
    seed: int = 0
    max_attempts: int = 20_000


def _parse_error(err: ParseError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={
            "error": err.message,
            "span": {"start": err.span.start, "end": err.span.end},
        },
    )


def statement_depth(model: Model, statement: Literal) -> int:
    """The inference depth needed to answer the statement.

    Derived literals report their proof depth; everything else reports the
    failure depth of the positive atom it rests on.
    """
    if statement in model.derived:
        return model.depth[statement]
    if not statement.positive and statement.negated() in model.derived:
        return model.depth[statement.negated()]
    return failure_depth(model, statement.atom)


def create_app(
    sentence_cap: int = DEFAULT_SENTENCE_CAP,
    entity_cap: int = DEFAULT_ENTITY_CAP,
    static_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="rule reasoning service")

    @app.post("/v1/prove")
    def prove(request: ProveRequest):
        try:
            theory = parse_theory(request.theory)
            statement = parse_literal(request.statement)
        except ParseError as err:
            return _parse_error(err)
        if theory.sentence_count > sentence_cap:
            raise HTTPException(413, f"theory exceeds {sentence_cap} sentences")
        if len(theory.effective_signature().names) > entity_cap:
            raise HTTPException(413, f"theory exceeds {entity_cap} entities")
        if not statement.is_ground:
            return JSONResponse(
                status_code=400,
                content={"error": "statement must be ground",
                         "span": {"start": 0, "end": len(request.statement)}},
            )
        violations = validate_theory(theory)
        if violations:
            return JSONResponse(
                status_code=400,
                content={
                    "error": "theory violates the rule grammar",
                    "violations": [
                        {"sentence": v.sentence, "message": v.message}
                        for v in violations
                    ],
                },
            )

        model = forward_chain(theory)
        _, sentences = render_theory(theory, rng_for(0))
        if model.status is not Status.CONSISTENT:
            return {
                "status": model.status.value,
                "answer": None,
                "depth": None,
                "proofs": [],
                "critical_sentences": None,
                "context_sentences": sentences,
                "model": {"derived": [], "max_depth": 0},
            }

        verdict = answer(model, statement)
        proofs = [proof_json(p) for p in model.proofs.get(statement, ())]
        critical = None
        if statement in model.derived:
            critical = sorted(critical_sentences(model, statement).critical)
        return {
            "status": model.status.value,
            "answer": verdict,
            "depth": statement_depth(model, statement),
            "proofs": proofs,
            "critical_sentences": critical,
            "context_sentences": sentences,
            "model": {
                "derived": [
                    {"literal": emit_literal(lit), "depth": model.depth[lit]}
                    for lit in model.derived_order
                ],
                "max_depth": model.max_depth,
            },
        }

    @app.post("/v1/generate")
    def generate(request: GenerateRequest):
        if request.theory_type not in ("att", "rel"):
            raise HTTPException(400, "theory_type must be 'att' or 'rel'")
        if request.target_depth < 0 or request.max_attempts < 1:
            raise HTTPException(400, "bad generation parameters")
        config = GenerationConfig(
            theory_type=TheoryType(request.theory_type),
            negation_enabled=request.negation,
            target_depth=request.target_depth,
            seed=request.seed,
            max_attempts=request.max_attempts,
        )
        try:
            sample = generate_theory(config)
        except AttemptsExhausted as err:
            raise HTTPException(422, str(err))
        stream = rng_for(config.seed, 1)
        questions = generate_questions(
            sample.theory, sample.model, config.target_depth, stream
        )
        context, sentences = render_theory(sample.theory, stream)
        return {
            "theory": emit_theory(sample.theory),
            "context": context,
            "context_sentences": sentences,
            "questions": [
                {
                    "statement": emit_literal(q.statement),
                    "question": q.english,
                    "answer": q.answer,
                    "depth": q.depth,
                    "provenance": q.provenance.value,
                }
                for q in questions
            ],
            "model": {"max_depth": sample.model.max_depth},
            "attempts": sample.attempts,
        }

    @app.get("/v1/corpora")
    def corpora_index():
        return {"corpora": list(corpus_names())}

    @app.get("/v1/corpora/{name}")
    def corpora_detail(name: str):
        try:
            cases = load_corpus(name)
        except UnknownCorpus:
            raise HTTPException(404, f"unknown corpus {name!r}")
        return {
            "name": name,
            "cases": [
                {
                    "name": case.name,
                    "theory": emit_theory(case.theory),
                    "english": list(case.english),
                    "questions": [
                        {
                            "statement": emit_literal(q.statement),
                            "english": q.english,
                            "answer": q.answer,
                        }
                        for q in case.questions
                    ],
                    "has_scenario": case.scenario is not None,
                }
                for case in cases
            ],
        }

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def run(port: int = 8000, sentence_cap: int = DEFAULT_SENTENCE_CAP,
        entity_cap: int = DEFAULT_ENTITY_CAP, static_dir: str | None = None):
    import uvicorn

    uvicorn.run(
        create_app(sentence_cap, entity_cap, static_dir),
        host="0.0.0.0",
        port=port,
    )
