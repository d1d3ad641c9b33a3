"""End-to-end dataset builds: generate, split, scramble, assemble, verify.

A build is driven by one config (JSON file or dict) and a root seed. Each
theory index gets its own RNG child stream, theories go wholly into a single
split (weighted by the split's remaining example quota, trimmed at the
boundary), and identical theories are never admitted twice, so split files
are byte-reproducible and share no theory. The manifest echoes the config and
accumulates discard and distribution statistics.
"""

from __future__ import annotations

import hashlib
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .engine import forward_chain
from .english import render_theory
from .generate import (
    ATT_POOLS,
    AttemptsExhausted,
    GenerationConfig,
    choose,
    generate_theory,
    randint,
    rng_for,
)
from .model import Atom, Literal, Rule, Term, Theory, TheoryType, is_fact
from .questions import Provenance, QuestionRecord, generate_questions
from .records import (
    SPLITS,
    DatasetRecord,
    proof_json,
    read_dataset,
    write_dataset,
)
from .syntax import emit_literal, emit_theory, parse_literal, parse_theory

#: The four generation cells: theory type crossed with negation.
CELLS = (
    ("att_noneg", TheoryType.ATT, False),
    ("att_neg", TheoryType.ATT, True),
    ("rel_noneg", TheoryType.REL, False),
    ("rel_neg", TheoryType.REL, True),
)


class BankTooSmall(Exception):
    pass


@dataclass
class PipelineConfig:
    name: str = "dataset"
    target_depth: int = 1
    total_examples: int = 400
    quotas: dict[str, int] = field(default_factory=dict)
    split_ratios: tuple[float, float, float] = (0.7, 0.1, 0.2)
    seed: int = 0
    output_dir: str = "dataset_out"
    max_attempts: int = 50_000
    oversample_unaligned: bool = False

    def __post_init__(self) -> None:
        if not self.quotas:
            base, extra = divmod(self.total_examples, len(CELLS))
            self.quotas = {
                key: base + (1 if i < extra else 0)
                for i, (key, _, _) in enumerate(CELLS)
            }
        if sum(self.quotas.values()) != self.total_examples:
            raise ValueError("quotas must sum to total_examples")
        if abs(sum(self.split_ratios) - 1.0) > 1e-9:
            raise ValueError("split ratios must sum to 1")

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        if "split_ratios" in data:
            data = {**data, "split_ratios": tuple(data["split_ratios"])}
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "PipelineConfig":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "target_depth": self.target_depth,
            "total_examples": self.total_examples,
            "quotas": dict(self.quotas),
            "split_ratios": list(self.split_ratios),
            "seed": self.seed,
            "output_dir": self.output_dir,
            "max_attempts": self.max_attempts,
            "oversample_unaligned": self.oversample_unaligned,
        }


def split_quota(total: int, ratios) -> dict[str, int]:
    """Integer split sizes that sum exactly to the total.

    Floors first, then hands remainders to the largest fractional parts
    (ties in split order).
    """
    raw = [total * r for r in ratios]
    sizes = [int(x) for x in raw]
    remainder = total - sum(sizes)
    by_fraction = sorted(
        range(len(ratios)), key=lambda i: (-(raw[i] - sizes[i]), i)
    )
    for i in by_fraction[:remainder]:
        sizes[i] += 1
    return dict(zip(SPLITS, sizes))


def theory_hash(t: Theory) -> str:
    return hashlib.sha256(emit_theory(t).encode("utf-8")).hexdigest()


def _question_proofs(record: QuestionRecord, model) -> list:
    if record.provenance is Provenance.PROVEN:
        proven = record.statement
    elif record.provenance is Provenance.NEGATED_PROVEN:
        proven = record.statement.negated()
    else:
        return []
    return [proof_json(step) for step in model.proofs[proven]]


def build_dataset(config: PipelineConfig) -> dict:
    """Generate all splits plus a manifest; returns the manifest."""
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    per_split: dict[str, list[DatasetRecord]] = {s: [] for s in SPLITS}
    split_theories: dict[str, set[str]] = {s: set() for s in SPLITS}
    discards: Counter = Counter()
    depth_histogram: Counter = Counter()
    answers: Counter = Counter()
    sentence_counts: list[int] = []
    seen_hashes: set[str] = set()

    for cell_index, (key, theory_type, negation) in enumerate(CELLS):
        quota = config.quotas.get(key, 0)
        remaining = split_quota(quota, config.split_ratios)
        gen_config = GenerationConfig(
            theory_type=theory_type,
            negation_enabled=negation,
            target_depth=config.target_depth,
            seed=config.seed,
            max_attempts=config.max_attempts,
        )
        theory_index = 0
        while any(remaining.values()):
            stream = rng_for(config.seed, cell_index, theory_index)
            theory_index += 1
            try:
                sample = generate_theory(gen_config, stream)
            except AttemptsExhausted as err:
                err.discards["examples_emitted"] = sum(
                    len(v) for v in per_split.values()
                )
                raise
            discards.update(sample.discards)
            digest = theory_hash(sample.theory)
            if digest in seen_hashes:
                discards["duplicate_theory"] += 1
                continue
            seen_hashes.add(digest)

            questions = generate_questions(
                sample.theory, sample.model, config.target_depth, stream,
                oversample_unaligned=config.oversample_unaligned,
            )
            context, _ = render_theory(sample.theory, stream)

            open_splits = [s for s in SPLITS if remaining[s] > 0]
            weights = [remaining[s] for s in open_splits]
            pick = stream.random() * sum(weights)
            acc = 0.0
            split = open_splits[-1]
            for s, w in zip(open_splits, weights):
                acc += w
                if pick < acc:
                    split = s
                    break

            take = min(len(questions), remaining[split])
            remaining[split] -= take
            split_theories[split].add(digest)
            theory_text = emit_theory(sample.theory)
            for q_index, q in enumerate(questions[:take]):
                record = DatasetRecord(
                    id=f"{config.name}-{key}-t{theory_index - 1}-q{q_index}",
                    theory_formal=theory_text,
                    context=context,
                    question=q.english,
                    statement_formal=emit_literal(q.statement),
                    answer=q.answer,
                    depth=q.depth,
                    provenance=q.provenance.value,
                    proofs=_question_proofs(q, sample.model),
                    split=split,
                )
                per_split[split].append(record)
                depth_histogram[q.depth] += 1
                answers["true" if q.answer else "false"] += 1
            sentence_counts.append(sample.theory.sentence_count)

    for split in SPLITS:
        write_dataset(out_dir / f"{split}.jsonl", per_split[split])

    manifest = {
        "tool": {"name": "rulekit", "version": __version__},
        "config": config.to_dict(),
        "counts": {s: len(per_split[s]) for s in SPLITS},
        "theories": {s: len(split_theories[s]) for s in SPLITS},
        "discards": dict(sorted(discards.items())),
        "question_depth_histogram": {
            str(k): v for k, v in sorted(depth_histogram.items())
        },
        "answers": dict(sorted(answers.items())),
        "mean_sentences_per_theory": (
            round(sum(sentence_counts) / len(sentence_counts), 3)
            if sentence_counts else 0.0
        ),
    }
    with open(out_dir / "manifest.json", "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return manifest


# ---------------------------------------------------------------------------
# Vocabulary scrambling

_WORD = re.compile(r"[A-Za-z]+")


def _load_wordlist() -> list[str]:
    text = resources.files("rulekit").joinpath("data/wordlist.txt").read_text()
    return [w for w in text.split() if w]


def scramble_vocabulary(in_dir, out_dir, seed: int) -> dict[str, str]:
    """Rewrite every English word by one corpus-wide substitution map.

    The same word maps to the same replacement everywhere; capitalization and
    punctuation keep their positions; formal fields, answers, and depths are
    untouched. Returns the substitution map.
    """
    in_dir, out_dir = Path(in_dir), Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    datasets = {
        split: read_dataset(in_dir / f"{split}.jsonl")
        for split in SPLITS
        if (in_dir / f"{split}.jsonl").exists()
    }

    vocabulary = sorted(
        {
            token.lower()
            for records in datasets.values()
            for record in records
            for text in (record.context, record.question)
            for token in _WORD.findall(text)
        }
    )
    wordlist = _load_wordlist()
    rng = rng_for(seed, 0xC0DE)
    order = [int(i) for i in rng.permutation(len(wordlist))]
    mapping: dict[str, str] = {}
    for i, word in enumerate(vocabulary):
        replacement = wordlist[order[i % len(order)]]
        if i >= len(order):
            replacement = f"{replacement}{i // len(order)}"
        mapping[word] = replacement

    def rewrite(text: str) -> str:
        def repl(match: re.Match) -> str:
            token = match.group(0)
            word = mapping[token.lower()]
            if token[0].isupper():
                return word[:1].upper() + word[1:]
            return word

        return _WORD.sub(repl, text)

    for split, records in datasets.items():
        for record in records:
            record.context = rewrite(record.context)
            record.question = rewrite(record.question)
        write_dataset(out_dir / f"{split}.jsonl", records)

    manifest_path = in_dir / "manifest.json"
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text())
        manifest["scramble"] = {"seed": seed, "vocabulary_size": len(vocabulary)}
        with open(out_dir / "manifest.json", "w", encoding="utf-8") as handle:
            json.dump(manifest, handle, indent=2, sort_keys=True)
            handle.write("\n")
    return mapping


# ---------------------------------------------------------------------------
# Paraphrase-bank assembly

@dataclass(frozen=True)
class FactGroupTemplate:
    template: str
    attributes: tuple[str, ...]
    family: str = ""

    def instantiate(self, name: str) -> tuple[str, list[Literal]]:
        display = name[:1].upper() + name[1:]
        text = self.template.replace("{name}", display)
        return text, [is_fact(name, attribute) for attribute in self.attributes]


@dataclass(frozen=True)
class RuleParaphrase:
    text: str
    rule: Rule
    family: str = ""


@dataclass
class ParaphraseBank:
    fact_groups: list[FactGroupTemplate]
    rules: list[RuleParaphrase]


def load_bank(path=None) -> ParaphraseBank:
    """Load a paraphrase bank, checking template/attribute agreement.

    Every template text must mention each of its attributes as a whole word
    and no other attribute from the standard pool (the acceptance check the
    crowdsourced rewrites went through).
    """
    if path is None:
        raw = json.loads(
            resources.files("rulekit")
            .joinpath("data/sample_paraphrase_bank.json")
            .read_text()
        )
    else:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)

    pool = set(ATT_POOLS.attributes)

    def check(text: str, attributes: tuple[str, ...], where: str) -> None:
        mentioned = {t.lower() for t in _WORD.findall(text)} & pool
        if mentioned != set(attributes):
            raise ValueError(
                f"{where}: text mentions {sorted(mentioned)}, "
                f"declared {sorted(attributes)}"
            )

    def attribute_literal(attribute: str) -> Literal:
        return Literal(Atom("is", Term("someone"), attribute), True)

    groups = []
    for i, spec in enumerate(raw["fact_groups"]):
        attributes = tuple(spec["attributes"])
        check(spec["template"], attributes, f"fact_groups[{i}]")
        groups.append(
            FactGroupTemplate(spec["template"], attributes, spec.get("family", ""))
        )
    rules = []
    for i, spec in enumerate(raw["rules"]):
        conditions = tuple(spec["conditions"])
        conclusion = spec["conclusion"]
        check(spec["text"], conditions + (conclusion,), f"rules[{i}]")
        underlying = Rule(
            tuple(attribute_literal(c) for c in conditions),
            attribute_literal(conclusion),
        )
        rules.append(RuleParaphrase(spec["text"], underlying, spec.get("family", "")))
    return ParaphraseBank(groups, rules)


@dataclass
class ParaphraseConfig:
    name: str = "para"
    total_examples: int = 200
    target_depth: int = 3
    split_ratios: tuple[float, float, float] = (0.7, 0.1, 0.2)
    seed: int = 0
    output_dir: str = "para_out"
    max_attempts: int = 20_000


def _allocate(units: list, ratios, rng) -> dict[str, list]:
    """Shuffle allocation units across the splits, at least one each."""
    if len(units) < len(SPLITS):
        raise BankTooSmall(
            f"need at least {len(SPLITS)} allocation units, have {len(units)}"
        )
    order = [units[int(i)] for i in rng.permutation(len(units))]
    sizes = split_quota(len(units), ratios)
    for split in SPLITS:
        if sizes[split] == 0:
            sizes[split] = 1
    while sum(sizes.values()) > len(units):
        biggest = max(SPLITS, key=lambda s: sizes[s])
        sizes[biggest] -= 1
    out = {}
    start = 0
    for split in SPLITS:
        out[split] = order[start : start + sizes[split]]
        start += sizes[split]
    return out


def partition_bank(
    bank: ParaphraseBank, ratios, rng
) -> tuple[dict[str, list], dict[str, list]]:
    """Disjoint template partitions per split; no template appears twice.

    A fully family-annotated bank moves whole families, with one shared
    family-to-split assignment for fact groups and rules (a tiny bank needs
    each partition to keep a complete reasoning chain and its base facts
    together). Unannotated banks partition template by template, which suits
    crowdsourced banks at scale.
    """
    items = [*bank.fact_groups, *bank.rules]
    families = sorted({item.family for item in items if item.family})
    if families and all(item.family for item in items):
        allocation = _allocate(families, ratios, rng)
        group_parts = {
            split: [g for g in bank.fact_groups if g.family in set(chosen)]
            for split, chosen in allocation.items()
        }
        rule_parts = {
            split: [r for r in bank.rules if r.family in set(chosen)]
            for split, chosen in allocation.items()
        }
        for split in SPLITS:
            if not group_parts[split] or not rule_parts[split]:
                raise BankTooSmall(
                    f"family allocation leaves the {split} split without "
                    "fact groups or rules"
                )
        return group_parts, rule_parts
    return (
        _allocate(bank.fact_groups, ratios, rng),
        _allocate(bank.rules, ratios, rng),
    )


def assemble_paraphrased(bank: ParaphraseBank, config: ParaphraseConfig) -> dict:
    """Build a dataset from instantiated fact-group templates plus rules.

    Each split draws only from its own template partition. The underlying
    logic of every sentence is tracked, so inference, depth gating, and
    question generation run exactly as for generated theories.
    """
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = rng_for(config.seed, 0xBA)
    group_parts, rule_parts = partition_bank(bank, config.split_ratios, rng)

    quotas = split_quota(config.total_examples, config.split_ratios)
    per_split: dict[str, list[DatasetRecord]] = {s: [] for s in SPLITS}
    discards: Counter = Counter()
    seen_hashes: set[str] = set()

    for split in SPLITS:
        groups = group_parts[split]
        rules = rule_parts[split]
        remaining = quotas[split]
        theory_index = 0
        attempts = 0
        while remaining > 0:
            stream = rng_for(config.seed, SPLITS.index(split), theory_index)
            theory_index += 1
            attempts += 1
            if attempts > config.max_attempts:
                raise AttemptsExhausted(config.max_attempts, discards)

            names = [
                ATT_POOLS.names[int(i)]
                for i in sorted(stream.permutation(len(ATT_POOLS.names))
                                [: randint(stream, 2, 4)])
            ]
            sentences: list[str] = []
            facts: list[Literal] = []
            for name in names:
                template = choose(stream, groups)
                text, literals = template.instantiate(name)
                sentences.append(text)
                facts.extend(literals)
            k = randint(stream, min(4, len(rules)), min(8, len(rules)))
            picked = [rules[int(i)] for i in stream.permutation(len(rules))[:k]]
            theory = Theory(
                tuple(dict.fromkeys(facts)),
                tuple(p.rule for p in picked),
                None,
                TheoryType.ATT,
                False,
            )
            sentences.extend(p.text for p in picked)

            model = forward_chain(theory)
            if not model.consistent:
                discards["inconsistent"] += 1
                continue
            if model.max_depth < config.target_depth:
                discards["too_shallow"] += 1
                continue
            if model.proof_cap_hit:
                discards["proof_cap"] += 1
                continue
            digest = theory_hash(theory)
            if digest in seen_hashes:
                discards["duplicate_theory"] += 1
                continue
            seen_hashes.add(digest)

            questions = generate_questions(
                theory, model, config.target_depth, stream
            )
            context = " ".join(sentences)
            take = min(len(questions), remaining)
            remaining -= take
            theory_text = emit_theory(theory)
            for q_index, q in enumerate(questions[:take]):
                per_split[split].append(
                    DatasetRecord(
                        id=f"{config.name}-{split}-t{theory_index - 1}-q{q_index}",
                        theory_formal=theory_text,
                        context=context,
                        question=q.english,
                        statement_formal=emit_literal(q.statement),
                        answer=q.answer,
                        depth=q.depth,
                        provenance=q.provenance.value,
                        proofs=_question_proofs(q, model),
                        split=split,
                    )
                )

    for split in SPLITS:
        write_dataset(out_dir / f"{split}.jsonl", per_split[split])
    manifest = {
        "tool": {"name": "rulekit", "version": __version__},
        "config": {
            "name": config.name,
            "total_examples": config.total_examples,
            "target_depth": config.target_depth,
            "split_ratios": list(config.split_ratios),
            "seed": config.seed,
        },
        "counts": {s: len(per_split[s]) for s in SPLITS},
        "bank": {
            "fact_groups": {s: len(group_parts[s]) for s in SPLITS},
            "rules": {s: len(rule_parts[s]) for s in SPLITS},
        },
        "discards": dict(sorted(discards.items())),
    }
    with open(out_dir / "manifest.json", "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return manifest


# ---------------------------------------------------------------------------
# Re-verification and statistics

def verify_dataset(directory) -> dict:
    """Re-run the engine over every record; report mismatches and overlap."""
    directory = Path(directory)
    models: dict[str, tuple] = {}
    mismatches: list[str] = []
    hashes: dict[str, set[str]] = {s: set() for s in SPLITS}
    total = 0

    from .engine import answer as engine_answer, failure_depth

    for split in SPLITS:
        path = directory / f"{split}.jsonl"
        if not path.exists():
            continue
        for record in read_dataset(path):
            total += 1
            key = hashlib.sha256(record.theory_formal.encode()).hexdigest()
            hashes[split].add(key)
            if key not in models:
                theory = parse_theory(record.theory_formal)
                models[key] = (theory, forward_chain(theory, record_proofs=False))
            theory, model = models[key]
            statement = parse_literal(record.statement_formal)
            if engine_answer(model, statement) is not record.answer:
                mismatches.append(f"{record.id}: answer mismatch")
                continue
            if record.provenance == "proven":
                ok = model.depth.get(statement) == record.depth
            elif record.provenance == "negated_proven":
                ok = model.depth.get(statement.negated()) == record.depth
            else:
                ok = failure_depth(model, statement.atom) == record.depth
            if not ok:
                mismatches.append(f"{record.id}: depth mismatch")

    overlap = (
        (hashes["train"] & hashes["dev"])
        | (hashes["train"] & hashes["test"])
        | (hashes["dev"] & hashes["test"])
    )
    return {
        "records": total,
        "theories": len(models),
        "mismatches": mismatches,
        "split_overlap": len(overlap),
        "ok": not mismatches and not overlap,
    }


def dataset_stats(directory) -> dict:
    directory = Path(directory)
    stats: dict = {"splits": {}, "depth_histogram": {}, "answers": {}}
    depth_histogram: Counter = Counter()
    answers: Counter = Counter()
    provenance: Counter = Counter()
    sentence_counts: list[int] = []
    seen_theories: set[str] = set()
    for split in SPLITS:
        path = directory / f"{split}.jsonl"
        if not path.exists():
            continue
        records = read_dataset(path)
        stats["splits"][split] = len(records)
        for record in records:
            depth_histogram[record.depth] += 1
            answers["true" if record.answer else "false"] += 1
            provenance[record.provenance] += 1
            key = record.theory_formal
            if key not in seen_theories:
                seen_theories.add(key)
                sentence_counts.append(parse_theory(key).sentence_count)
    stats["depth_histogram"] = {str(k): v for k, v in sorted(depth_histogram.items())}
    stats["answers"] = dict(sorted(answers.items()))
    stats["provenance"] = dict(sorted(provenance.items()))
    stats["theories"] = len(seen_theories)
    stats["mean_sentences_per_theory"] = (
        round(sum(sentence_counts) / len(sentence_counts), 3)
        if sentence_counts else 0.0
    )
    return stats
