"""Command-line entry points for the dataset pipeline, analyses, and service.

Verbs:

    generate            build a dataset from a config file (plus overrides)
    scramble            rewrite a dataset with a systematic word substitution
    assemble-para       build a dataset from a paraphrase bank
    verify              re-check every record of a dataset against the engine
    stats               dataset statistics
    probe               build sentence-removal probes from a dataset
    score-flips         score a prediction file against probes
    score-explanations  score predicted critical sets against proof-derived ones
    serve               run the HTTP reasoning service
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from .analysis import (
    Probe,
    build_probes,
    engine_predictions,
    proof_based_critical_sets,
    score_explanations,
    score_predictions,
)
from .pipeline import (
    ParaphraseConfig,
    PipelineConfig,
    assemble_paraphrased,
    build_dataset,
    dataset_stats,
    load_bank,
    scramble_vocabulary,
    verify_dataset,
)
from .records import read_dataset


def _read_records(directory: str):
    records = []
    for split in ("train", "dev", "test"):
        path = Path(directory) / f"{split}.jsonl"
        if path.exists():
            records.extend(read_dataset(path))
    return records


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_generate(args) -> int:
    if args.config:
        config = PipelineConfig.from_file(args.config)
    else:
        config = PipelineConfig()
    seed = args.seed
    if seed is None and "RULEKIT_SEED" in os.environ:
        seed = int(os.environ["RULEKIT_SEED"])
    overrides = {
        "name": args.name,
        "target_depth": args.depth,
        "total_examples": args.examples,
        "seed": seed,
        "output_dir": args.out,
    }
    fields = {k: v for k, v in overrides.items() if v is not None}
    if fields:
        base = config.to_dict()
        base.update(fields)
        if args.examples is not None:
            # a new total invalidates any configured quotas; resplit evenly
            base.pop("quotas", None)
        config = PipelineConfig.from_dict(base)
    manifest = build_dataset(config)
    _emit(manifest)
    return 0


def cmd_scramble(args) -> int:
    mapping = scramble_vocabulary(args.input, args.out, args.seed)
    _emit({"replaced_words": len(mapping), "output": args.out})
    return 0


def cmd_assemble_para(args) -> int:
    bank = load_bank(args.bank)
    config = ParaphraseConfig(
        name=args.name or "para",
        total_examples=args.examples or 200,
        target_depth=args.depth if args.depth is not None else 3,
        seed=args.seed or 0,
        output_dir=args.out,
    )
    manifest = assemble_paraphrased(bank, config)
    _emit(manifest)
    return 0


def cmd_verify(args) -> int:
    report = verify_dataset(args.dataset)
    _emit(report)
    return 0 if report["ok"] else 1


def cmd_stats(args) -> int:
    _emit(dataset_stats(args.dataset))
    return 0


def cmd_probe(args) -> int:
    records = _read_records(args.dataset)
    probes = build_probes(records)
    with open(args.out, "w", encoding="utf-8") as handle:
        for probe in probes:
            handle.write(json.dumps(dataclasses.asdict(probe)) + "\n")
    _emit({"probes": len(probes), "output": args.out})
    return 0


def _load_probes(path) -> list[Probe]:
    out = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                out.append(Probe(**json.loads(line)))
    return out


def cmd_score_flips(args) -> int:
    probes = _load_probes(args.probes)
    if args.predictions:
        predictions = {}
        with open(args.predictions, encoding="utf-8") as handle:
            for line in handle:
                if line.strip():
                    row = json.loads(line)
                    predictions[row["id"]] = bool(row["answer"])
    else:
        predictions = engine_predictions(probes)
    report = score_predictions(probes, predictions)
    _emit(dataclasses.asdict(report))
    return 0


def cmd_score_explanations(args) -> int:
    records = _read_records(args.dataset)
    actual = proof_based_critical_sets(records)
    predicted = {}
    with open(args.predictions, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                row = json.loads(line)
                predicted[row["id"]] = set(row["critical"])
    score = score_explanations(predicted, actual)
    _emit(
        {
            "questions": len(score.per_question),
            "macro_precision": score.macro_precision,
            "macro_recall": score.macro_recall,
            "macro_f1": score.macro_f1,
            "f1_histogram": score.histogram,
        }
    )
    return 0


def cmd_serve(args) -> int:
    from .service import run

    run(port=args.port, sentence_cap=args.size_cap, static_dir=args.static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rulekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a dataset")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--name")
    p.add_argument("--depth", type=int)
    p.add_argument("--examples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("scramble", help="systematic vocabulary substitution")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_scramble)

    p = sub.add_parser("assemble-para", help="assemble from a paraphrase bank")
    p.add_argument("--bank", help="bank JSON (default: bundled sample)")
    p.add_argument("--name")
    p.add_argument("--depth", type=int)
    p.add_argument("--examples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_assemble_para)

    p = sub.add_parser("verify", help="re-check a dataset against the engine")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="dataset statistics")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("probe", help="build sentence-removal probes")
    p.add_argument("dataset")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("score-flips", help="score probe predictions")
    p.add_argument("probes")
    p.add_argument("--predictions",
                   help="JSONL of {id, answer}; defaults to the engine")
    p.set_defaults(func=cmd_score_flips)

    p = sub.add_parser("score-explanations",
                       help="score predicted critical sentence sets")
    p.add_argument("dataset")
    p.add_argument("--predictions", required=True,
                   help="JSONL of {id, critical: [sentence indices]}")
    p.set_defaults(func=cmd_score_explanations)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--size-cap", type=int, default=200)
    p.add_argument("--static", help="directory of UI assets to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
