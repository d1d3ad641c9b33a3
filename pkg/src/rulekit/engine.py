"""Stratified forward-chaining inference with exhaustive proof recording.

The engine grounds every rule over the theory's entity domain, layers the
ground atoms so that no atom depends through negation on its own layer, and
then runs a layerwise fixpoint. A negated condition holds when its atom is
underivable (negation as failure); anything not derived is false under the
closed-world assumption. Alongside the derived set the engine records:

* every distinct well-founded proof per derived literal (used to identify
  critical sentences: the ones appearing in all proofs);
* the inference depth of each derived literal (0 for given facts, otherwise
  one more than the deepest positive child in the shallowest proof);
* a failure depth for unproven atoms (how deep the shallowest failing branch
  of each attempted proof runs, taking the deepest such attempt).

Explicit negative literals (given or concluded) live in the derived set too;
they do not feed negation-as-failure lookups but do drive the consistency
check and can be asked about directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .model import Atom, Literal, Rule, Theory, substitute_rule


class Status(Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    UNSTRATIFIED = "unstratified"


class InconsistentTheory(Exception):
    """Raised when answers are requested from a non-consistent model."""


class ProvenAtom(Exception):
    """failure_depth was asked about an atom that is actually derivable."""


class NotProven(Exception):
    """critical_sentences was asked about a literal that is not derived."""


#: Stop recording once a literal accumulates this many distinct proofs.
#: Small theories sit far below it; a breach flags the model as suspect and
#: theory generation discards it.
PROOF_CAP = 64


@dataclass(frozen=True, slots=True)
class GivenFact:
    """A proof leaf: the literal is stated at this sentence index."""

    sentence: int


@dataclass(frozen=True, slots=True)
class RuleApplication:
    """An application of one ground rule instance.

    ``children`` hold sub-proofs for the positive conditions, in condition
    order; ``naf`` lists the atoms whose underivability satisfied the negated
    conditions (they have no sub-proof, only a completed lower layer).
    """

    rule_id: str
    sentence: int
    binding: str | None
    children: tuple["ProofStep", ...]
    naf: tuple[Atom, ...]


@dataclass(frozen=True, slots=True)
class ProofStep:
    conclusion: Literal
    via: GivenFact | RuleApplication


@dataclass(frozen=True, slots=True)
class GroundInstance:
    """One ground instantiation of a theory rule."""

    sentence: int
    rule_id: str
    binding: str | None
    conditions: tuple[Literal, ...]
    conclusion: Literal


@dataclass(frozen=True, slots=True)
class CriticalSet:
    """Sentence indices a conclusion depends on, and the rest."""

    statement: Literal
    critical: frozenset[int]
    irrelevant: frozenset[int]


@dataclass
class Model:
    """The minimal supported model of a theory, with full annotations."""

    theory: Theory
    status: Status
    derived_order: tuple[Literal, ...] = ()
    proofs: dict[Literal, tuple[ProofStep, ...]] = field(default_factory=dict)
    depth: dict[Literal, int] = field(default_factory=dict)
    strata: dict[Atom, int] = field(default_factory=dict)
    instances: tuple[GroundInstance, ...] = ()
    proof_cap_hit: bool = False

    def __post_init__(self) -> None:
        self.derived: frozenset[Literal] = frozenset(self.derived_order)
        self._given: dict[Literal, tuple[int, ...]] = {}
        for i, fact in enumerate(self.theory.facts):
            self._given.setdefault(fact, ())
            self._given[fact] += (i,)
        self._failure_cache: dict[Atom, int] = {}

    @property
    def consistent(self) -> bool:
        return self.status is Status.CONSISTENT

    @property
    def max_depth(self) -> int:
        return max(self.depth.values(), default=0)

    def holds(self, literal: Literal) -> bool:
        return literal in self.derived

    def positive_derived(self, atom: Atom) -> bool:
        return Literal(atom, True) in self.derived

    def given_sentences(self, literal: Literal) -> tuple[int, ...]:
        return self._given.get(literal, ())


def _ground_instances(theory: Theory) -> tuple[GroundInstance, ...]:
    entities = theory.effective_signature().names
    out: list[GroundInstance] = []
    for j, r in enumerate(theory.rules):
        sentence = len(theory.facts) + j
        names = r.variables()
        if not names:
            out.append(GroundInstance(sentence, r.id, None, r.conditions, r.conclusion))
            continue
        for e in entities:
            g = substitute_rule(r, {name: e for name in names})
            out.append(GroundInstance(sentence, r.id, e, g.conditions, g.conclusion))
    return tuple(out)


def stratify(theory: Theory) -> dict[Atom, int] | None:
    """Layer the ground atoms, or ``None`` when no layering exists.

    Edges run from each ground condition atom to its conclusion atom and are
    negative when the condition is negated. A valid layering keeps positive
    edges non-decreasing and negative edges strictly increasing; a cycle
    through a negative edge makes the theory unstratified.
    """
    return _stratify_instances(theory, _ground_instances(theory))


def _stratify_instances(
    theory: Theory, instances: tuple[GroundInstance, ...]
) -> dict[Atom, int] | None:
    atoms: dict[Atom, int] = {}
    edges: dict[int, list[tuple[int, bool]]] = {}

    def node(atom: Atom) -> int:
        if atom not in atoms:
            atoms[atom] = len(atoms)
            edges[atoms[atom]] = []
        return atoms[atom]

    for fact in theory.facts:
        node(fact.atom)
    for inst in instances:
        head = node(inst.conclusion.atom)
        for cond in inst.conditions:
            edges[node(cond.atom)].append((head, not cond.positive))

    n = len(atoms)
    # Tarjan's strongly connected components, iteratively.
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = itertools.count(1)
    ncomp = 0
    for root in range(n):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                index[v] = low[v] = next(counter)
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(ei, len(edges[v])):
                w = edges[v][k][0]
                if not index[w]:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    # A negative edge inside one component means a cycle through negation.
    comp_edges: dict[int, set[tuple[int, bool]]] = {c: set() for c in range(ncomp)}
    for v in range(n):
        for w, neg in edges[v]:
            if comp[v] == comp[w]:
                if neg:
                    return None
            else:
                comp_edges[comp[v]].add((comp[w], neg))

    # Longest path in the condensation, counting negative edges. Tarjan emits
    # components in reverse topological order, so walk them backwards.
    stratum = [0] * ncomp
    for c in range(ncomp - 1, -1, -1):
        for d, neg in comp_edges[c]:
            stratum[d] = max(stratum[d], stratum[c] + (1 if neg else 0))
    return {atom: stratum[comp[i]] for atom, i in atoms.items()}


def forward_chain(
    theory: Theory, record_proofs: bool = True, proof_cap: int = PROOF_CAP
) -> Model:
    """Compute the minimal supported model, layer by layer.

    Within a layer, a ground rule instance fires once all its positive
    conditions are derived and every negated condition's atom is settled as
    underivable in its lower layer. The derived set is exactly the given
    facts plus fired conclusions. Deriving both polarities of one atom stops
    inference with an inconsistent status; an unstratifiable theory is
    reported before any inference.
    """
    instances = _ground_instances(theory)
    strata = _stratify_instances(theory, instances)
    if strata is None:
        return Model(theory, Status.UNSTRATIFIED)

    derived: dict[Literal, None] = {}
    positives: set[Atom] = set()

    def add(literal: Literal) -> bool:
        """Record a derivation; False signals a contradiction."""
        if literal.negated() in derived:
            return False
        if literal not in derived:
            derived[literal] = None
            if literal.positive:
                positives.add(literal.atom)
        return True

    for fact in theory.facts:
        if not add(fact):
            return Model(theory, Status.INCONSISTENT, tuple(derived), strata=strata,
                         instances=instances)

    def satisfied(inst: GroundInstance) -> bool:
        for cond in inst.conditions:
            if cond.positive:
                if cond not in derived:
                    return False
            elif cond.atom in positives:
                return False
        return True

    max_stratum = max(strata.values(), default=0)
    for layer in range(max_stratum + 1):
        layer_instances = [
            inst for inst in instances if strata[inst.conclusion.atom] == layer
        ]
        changed = True
        while changed:
            changed = False
            for inst in layer_instances:
                if inst.conclusion in derived or not satisfied(inst):
                    continue
                if not add(inst.conclusion):
                    return Model(theory, Status.INCONSISTENT, tuple(derived),
                                 strata=strata, instances=instances)
                changed = True

    model = Model(theory, Status.CONSISTENT, tuple(derived), strata=strata,
                  instances=instances)
    fired = [inst for inst in instances if satisfied(inst)]
    model.depth = _compute_depths(theory, derived, fired)
    if record_proofs:
        _record_proofs(model, fired, proof_cap)
    return model


def _compute_depths(
    theory: Theory, derived: dict[Literal, None], fired: list[GroundInstance]
) -> dict[Literal, int]:
    """Shallowest-proof depth per derived literal.

    A given fact has depth 0. A fired instance offers one more than its
    deepest positive condition (negated conditions are lookups against a
    completed lower layer and contribute nothing). Relax to the fixpoint,
    which matches the layer index of naive breadth-first iteration.
    """
    given = set(theory.facts)
    inf = float("inf")
    depth: dict[Literal, float] = {
        lit: 0 if lit in given else inf for lit in derived
    }
    changed = True
    while changed:
        changed = False
        for inst in fired:
            pos = [depth[c] for c in inst.conditions if c.positive]
            if any(d == inf for d in pos):
                continue
            candidate = 1 + max(pos, default=0)
            if candidate < depth[inst.conclusion]:
                depth[inst.conclusion] = candidate
                changed = True
    return {lit: int(d) for lit, d in depth.items()}


def _record_proofs(model: Model, fired: list[GroundInstance], cap: int) -> None:
    """Enumerate every distinct well-founded proof per derived literal.

    A proof picks one support (a stating sentence or a fired instance) and,
    recursively, one proof per positive condition. Supports already on the
    current root-to-leaf path are skipped: a proof that revisits a literal
    can always be shortened, so path-acyclic proofs cover exactly the ways a
    literal stays derivable as sentences are removed.
    """
    supports: dict[Literal, list[GivenFact | GroundInstance]] = {}
    for lit in model.derived_order:
        supports[lit] = [GivenFact(i) for i in model.given_sentences(lit)]
    for inst in fired:
        supports.setdefault(inst.conclusion, []).append(inst)

    def expand(literal: Literal, path: frozenset[Literal]) -> list[ProofStep]:
        out: list[ProofStep] = []
        for support in supports.get(literal, ()):
            if isinstance(support, GivenFact):
                out.append(ProofStep(literal, support))
                continue
            pos = [c for c in support.conditions if c.positive]
            naf = tuple(c.atom for c in support.conditions if not c.positive)
            if any(c in path for c in pos):
                continue
            child_lists = [expand(c, path | {c}) for c in pos]
            if any(not lst for lst in child_lists):
                continue
            for combo in itertools.product(*child_lists):
                out.append(
                    ProofStep(
                        literal,
                        RuleApplication(
                            support.rule_id, support.sentence, support.binding,
                            combo, naf,
                        ),
                    )
                )
                if len(out) > cap:
                    model.proof_cap_hit = True
                    return out
        return out

    for lit in model.derived_order:
        model.proofs[lit] = tuple(expand(lit, frozenset([lit]))[: cap])


def answer(model: Model, statement: Literal) -> bool:
    """Truth of a ground statement under the closed-world assumption.

    A positive statement is true exactly when derived. A negative statement
    is true exactly when its atom is not derivable (an explicitly derived
    negation implies that, by consistency).
    """
    if not model.consistent:
        raise InconsistentTheory(f"model status is {model.status.value}")
    if statement.positive:
        return statement in model.derived
    return not model.positive_derived(statement.atom)


def failure_depth(model: Model, atom: Atom) -> int:
    """How deep proof attempts for an underivable atom run before failing.

    With no rule instance concluding the atom the failure is immediate: 0.
    Otherwise each failed instance is scored by its shallowest failing
    condition (recursing into failing positive conditions; a failing negated
    condition costs the proof depth of the atom that blocked it), plus one,
    and the deepest instance wins. Revisiting an atom already under
    evaluation contributes 0.
    """
    if model.positive_derived(atom):
        raise ProvenAtom(f"{atom} is derivable")

    cache = model._failure_cache

    def go(a: Atom, path: set[Atom]) -> tuple[int, bool]:
        if a in cache:
            return cache[a], True
        if a in path:
            return 0, False
        insts = [i for i in model.instances
                 if i.conclusion.positive and i.conclusion.atom == a]
        if not insts:
            cache[a] = 0
            return 0, True
        path.add(a)
        best = 0
        clean = True
        for inst in insts:
            costs: list[int] = []
            for cond in inst.conditions:
                if cond.positive:
                    if cond not in model.derived:
                        d, ok = go(cond.atom, path)
                        clean = clean and ok
                        costs.append(d)
                else:
                    blocker = Literal(cond.atom, True)
                    if blocker in model.derived:
                        costs.append(model.depth[blocker])
            if costs:
                best = max(best, 1 + min(costs))
        path.remove(a)
        if clean:
            cache[a] = best
        return best, clean

    return go(atom, set())[0]


def _proof_sentences(step: ProofStep) -> frozenset[int]:
    if isinstance(step.via, GivenFact):
        return frozenset([step.via.sentence])
    used = frozenset([step.via.sentence])
    for child in step.via.children:
        used |= _proof_sentences(child)
    return used


def critical_sentences(model: Model, statement: Literal) -> CriticalSet:
    """Split sentence indices into critical and irrelevant for a conclusion.

    A sentence is critical when every recorded proof of the statement uses it
    (as a stated fact or an applied rule). For negation-free theories this is
    the same as: removing the sentence flips the answer to false.
    """
    steps = model.proofs.get(statement)
    if not steps:
        raise NotProven(f"{statement} has no recorded proof")
    critical = frozenset.intersection(*(_proof_sentences(s) for s in steps))
    everything = frozenset(range(model.theory.sentence_count))
    return CriticalSet(statement, critical, everything - critical)
