"""Balanced true/false question sets with depth annotations.

A theory built for depth d yields up to 4(d+1) questions: per depth layer
0..d one provable statement (true) and one negated provable statement
(false), plus 2(d+1) questions about underivable atoms, drawn equally from
unsatisfied instantiated rule conclusions and from the rest of the ground
atom domain. Half of those keep their positive form (false under the
closed-world assumption) and half flip to negated form (true), alternating
in sampling order. Empty layers or thin pools shrink the set, which is why
the bound is "up to".
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import english
from .engine import Model, failure_depth
from .model import Atom, Literal, Term, Theory


class Provenance(str, Enum):
    PROVEN = "proven"
    NEGATED_PROVEN = "negated_proven"
    CWA_FALSE = "cwa_false"
    FLIPPED_TRUE = "flipped_true"


@dataclass(frozen=True)
class QuestionRecord:
    statement: Literal
    english: str
    answer: bool
    depth: int
    provenance: Provenance


def domain_atoms(theory: Theory) -> list[Atom]:
    """Every ground atom expressible over the theory's signature."""
    sig = theory.effective_signature()
    atoms = [Atom("is", Term(n), a) for n in sig.names for a in sig.attributes]
    atoms.extend(
        Atom(r, Term(n1), n2)
        for r in sig.relations
        for n1 in sig.names
        for n2 in sig.names
    )
    return atoms


def partition_unproven(theory: Theory, model: Model) -> tuple[list[Atom], list[Atom]]:
    """Split the underivable positive atoms into two pools.

    The first pool holds conclusions of ground rule instances that never
    fired (positive heads only); the second holds every other underivable
    positive atom in the signature domain. The pools are disjoint and
    together cover exactly the domain's underivable positive atoms.
    """
    unsatisfied: list[Atom] = []
    seen: set[Atom] = set()
    for inst in model.instances:
        atom = inst.conclusion.atom
        if (
            inst.conclusion.positive
            and not model.positive_derived(atom)
            and atom not in seen
        ):
            unsatisfied.append(atom)
            seen.add(atom)
    rest = [
        atom
        for atom in domain_atoms(theory)
        if not model.positive_derived(atom) and atom not in seen
    ]
    return unsatisfied, rest


def _unaligned_conclusion(model: Model, atom: Atom) -> bool:
    """True when no instance concluding the atom shares its first argument
    with any of that instance's conditions (a rare shape worth oversampling
    when probing generalization blind spots)."""
    for inst in model.instances:
        if inst.conclusion.positive and inst.conclusion.atom == atom:
            if any(c.atom.arg1 == atom.arg1 for c in inst.conditions):
                return False
    return True


def generate_questions(
    theory: Theory,
    model: Model,
    target_depth: int,
    rng: np.random.Generator,
    oversample_unaligned: bool = False,
) -> list[QuestionRecord]:
    """The question set for one theory (model must be consistent)."""
    if not model.consistent:
        raise ValueError(f"cannot generate questions: model is {model.status.value}")

    def pick(candidates: list):
        return candidates[int(rng.integers(len(candidates)))]

    layers: dict[int, list[Literal]] = {}
    for lit in model.derived_order:
        layers.setdefault(model.depth[lit], []).append(lit)

    records: list[QuestionRecord] = []
    used: set[Literal] = set()

    def emit(statement: Literal, answer: bool, depth: int, provenance: Provenance):
        used.add(statement)
        records.append(
            QuestionRecord(
                statement,
                english.render_question(statement, theory.theory_type),
                answer,
                depth,
                provenance,
            )
        )

    for depth in range(target_depth + 1):
        layer = layers.get(depth, [])
        provable = [lit for lit in layer if lit not in used]
        if provable:
            emit(pick(provable), True, depth, Provenance.PROVEN)
        deniable = [lit for lit in layer if lit.negated() not in used]
        if deniable:
            emit(pick(deniable).negated(), False, depth, Provenance.NEGATED_PROVEN)

    unsatisfied, rest = partition_unproven(theory, model)
    if oversample_unaligned:
        favored = [a for a in unsatisfied if _unaligned_conclusion(model, a)]
        unsatisfied = favored + [a for a in unsatisfied if a not in favored]

    sampled: list[Atom] = []
    taken: set[Atom] = set()
    per_pool = target_depth + 1

    def free(atom: Atom) -> bool:
        """Neither surface form of the atom is taken by an earlier question."""
        return (
            atom not in taken
            and Literal(atom, True) not in used
            and Literal(atom, False) not in used
        )

    for pool in (unsatisfied, rest):
        for _ in range(per_pool):
            open_atoms = [a for a in pool if free(a)]
            if not open_atoms:
                break
            atom = open_atoms[0] if oversample_unaligned and pool is unsatisfied \
                else pick(open_atoms)
            taken.add(atom)
            sampled.append(atom)

    # Alternate the false/flipped assignment along the sampling order. The
    # phase is a coin flip so theories whose pools run short at an odd count
    # do not systematically favor one label across a corpus.
    phase = int(rng.integers(2))
    for i, atom in enumerate(sampled):
        depth = failure_depth(model, atom)
        if (i + phase) % 2 == 0:
            emit(Literal(atom, True), False, depth, Provenance.CWA_FALSE)
        else:
            emit(Literal(atom, False), True, depth, Provenance.FLIPPED_TRUE)
    return records
