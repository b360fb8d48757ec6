"""Nucleus computation, self-similarity checks, and germs at fixed rays.

The deep sections of one automorphism are easy to read off its machine:
a state holds a section at arbitrarily large depths exactly when it is
reachable from a state lying on a directed cycle (state 0 counts, via its
self-loops, as soon as it is reachable).  limit_states returns those
sections as values.

The nucleus closure starts from the identity and the deep sections of the
generators and their inverses, then repeatedly folds in the deep sections
of pairwise products.  When the family is contracting this stabilizes on
the minimal closed set; when it is not, the set keeps growing and the
search reports it exceeded its bounds instead of looping forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .activity import _sccs
from .core import Automorphism, BoundaryPoint, apply_boundary, compose, identity, invert
from .words import Word


def limit_states(g: Automorphism) -> set[Automorphism]:
    """Sections of g that occur at arbitrarily large depths."""
    reach = {g.initial}
    stack = [g.initial]
    while stack:
        s = stack.pop()
        for t in g.trans[s]:
            if t not in reach:
                reach.add(t)
                stack.append(t)
    nodes = sorted(reach)
    succ = {s: [t for t in g.trans[s]] for s in nodes}
    on_cycle = set()
    for comp in _sccs(nodes, succ):
        inside = sum(1 for s in comp for t in succ[s] if t in comp)
        if inside > 0:
            on_cycle.update(comp)
    out = set(on_cycle)
    stack = list(on_cycle)
    while stack:
        s = stack.pop()
        for t in g.trans[s]:
            if t not in out:
                out.add(t)
                stack.append(t)
    return {g._with_initial(s) for s in out}


@dataclass(frozen=True)
class NucleusResult:
    """Outcome of the nucleus closure.

    status is "found" when the closure stabilized, "exceeded" when it blew
    past max_size or max_depth (reason says which); elements then hold the
    partial set accumulated so far.  generations counts closure sweeps,
    the stabilizing sweep included.
    """

    status: str
    elements: tuple[Automorphism, ...]
    generations: int
    reason: Optional[str] = None

    @property
    def size(self) -> int:
        return len(self.elements)


def nucleus(
    gens: Mapping[str, Automorphism],
    max_size: int = 64,
    max_depth: int = 16,
) -> NucleusResult:
    if not gens:
        raise ValueError("need at least one generator")
    k = next(iter(gens.values())).k
    N: set[Automorphism] = {identity(k)}
    for g in gens.values():
        N |= limit_states(g)
        N |= limit_states(invert(g))

    def done(status, gen, reason=None):
        return NucleusResult(status, tuple(sorted(N, key=Automorphism.sort_key)), gen, reason)

    if len(N) > max_size:
        return done("exceeded", 0, "size limit")

    generations = 0
    seen_pairs: set[tuple[Automorphism, Automorphism]] = set()
    while True:
        generations += 1
        fresh: set[Automorphism] = set()
        members = sorted(N, key=Automorphism.sort_key)
        for g in members:
            for h in members:
                if (g, h) in seen_pairs:
                    continue
                seen_pairs.add((g, h))
                for s in limit_states(compose(g, h)):
                    if s not in N and s not in fresh:
                        fresh.add(s)
                        if len(N) + len(fresh) > max_size:
                            N |= fresh
                            return done("exceeded", generations, "size limit")
        if not fresh:
            return done("found", generations)
        N |= fresh
        if generations >= max_depth:
            return done("exceeded", generations, "generation limit")


# -- ball enumeration ----------------------------------------------------------


def ball(
    gens: Mapping[str, Automorphism],
    max_len: int,
    budget: int = 100000,
) -> tuple[dict[Automorphism, Word], bool]:
    """Group elements of word length <= max_len, each with a shortest word.

    Words are explored in length order, appending generators and their
    inverses on the right, and deduplicated by value, so the stored word is
    a shortest one (first in the exploration order among those).  Returns
    the element-to-word map and a flag that is True when the ball closed
    (no new elements at some length), i.e. the whole group was listed.

    Raises BudgetExceeded (with the partial map attached) past budget
    distinct elements.
    """
    from .core import BudgetExceeded

    names = sorted(gens)
    steps = []
    for name in names:
        g = gens[name]
        steps.append((Word(((name, 1),)), g))
        inv = invert(g)
        if inv != g:
            steps.append((Word(((name, -1),)), inv))

    e = identity(next(iter(gens.values())).k)
    elements: dict[Automorphism, Word] = {e: Word(())}
    layer: list[tuple[Automorphism, Word]] = [(e, Word(()))]
    for _ in range(max_len):
        nxt: list[tuple[Automorphism, Word]] = []
        for elem, word in layer:
            for wstep, gstep in steps:
                candidate = word * wstep
                if len(candidate.letters) <= len(word.letters):
                    continue  # cancellation: a shorter word already covers it
                value = compose(elem, gstep)
                if value not in elements:
                    if len(elements) >= budget:
                        raise BudgetExceeded(
                            "ball budget of %d elements exhausted" % budget,
                            partial=elements,
                        )
                    elements[value] = candidate
                    nxt.append((value, candidate))
        if not nxt:
            return elements, True
        layer = nxt
    return elements, False


# -- self-similarity -----------------------------------------------------------


@dataclass(frozen=True)
class SelfSimilarityReport:
    """verdict "yes", "no" or "inconclusive", with per-section witnesses.

    witnesses maps (generator name, letter) to the word that evaluates to
    that section, or None when the ball search did not find one.  "no" is
    only reported when the whole group was enumerated, so absence is proof.
    """

    verdict: str
    witnesses: dict

    @property
    def is_self_similar(self) -> Optional[bool]:
        return {"yes": True, "no": False}.get(self.verdict)


def is_self_similar(
    gens: Mapping[str, Automorphism],
    max_len: int = 8,
    budget: int = 100000,
) -> SelfSimilarityReport:
    """Do all first-level sections of the generators lie in the group?"""
    elements, closed = ball(gens, max_len, budget)
    witnesses = {}
    missing = False
    for name in sorted(gens):
        g = gens[name]
        for x in range(g.k):
            s = g._with_initial(g.trans[g.initial][x])
            found = elements.get(s)
            witnesses[(name, x)] = str(found) if found is not None else None
            if found is None:
                missing = True
    if not missing:
        verdict = "yes"
    elif closed:
        verdict = "no"
    else:
        verdict = "inconclusive"
    return SelfSimilarityReport(verdict, witnesses)


# -- germs at eventually periodic rays -----------------------------------------


def stabilizes(g: Automorphism, point: BoundaryPoint) -> bool:
    return apply_boundary(g, point) == point


def germ_is_trivial(g: Automorphism, point: BoundaryPoint) -> bool:
    """Is g the identity on some neighborhood of the fixed ray?

    True exactly when the state walk along the ray falls into the identity
    state, i.e. g restricted below some finite prefix of the ray is trivial.
    Raises if g does not fix the ray, since the germ is undefined there.
    """
    if not stabilizes(g, point):
        raise ValueError("germ is only defined at a fixed ray")
    s = g.initial
    for x in point.preperiod:
        s = g.trans[s][x]
    seen = set()
    while s not in seen:
        if s == 0:
            return True
        seen.add(s)
        for x in point.period:
            s = g.trans[s][x]
    return s == 0


@dataclass(frozen=True)
class GermGroupReport:
    """The group generated by germs of short stabilizer words at the ray.

    representatives[i] is a word whose germ class is i (class 0 is the
    trivial germ); table[i][j] is the class of the product of classes i
    and j.  complete is False only when closing the table would have taken
    the class count past max_order, so the listed group might be a proper
    subgroup of the full germ group.  Longer stabilizer words than max_len
    could in principle also generate more germs; for contracting families
    small radii already see them all.
    """

    point: BoundaryPoint
    order: int
    representatives: tuple[str, ...]
    complete: bool
    table: tuple[tuple[int, ...], ...]


def germ_group(
    gens: Mapping[str, Automorphism],
    point: BoundaryPoint,
    max_len: int = 6,
    budget: int = 100000,
    max_order: int = 64,
) -> GermGroupReport:
    elements, _ = ball(gens, max_len, budget)
    stab = [(word, elem) for elem, word in elements.items() if stabilizes(elem, point)]
    stab.sort(key=lambda p: (len(p[0].letters), p[0].letters))

    reps: list[tuple[Word, Automorphism]] = []

    def class_of(elem: Automorphism) -> Optional[int]:
        for i, (_, r) in enumerate(reps):
            if germ_is_trivial(compose(elem, invert(r)), point):
                return i
        return None

    e = identity(next(iter(gens.values())).k)
    reps.append((Word(()), e))
    for word, elem in stab:
        if class_of(elem) is None:
            reps.append((word, elem))

    # close the class set under products (a finite set of germs closed under
    # products is a group); words for new classes are concatenations
    done: set[tuple[int, int]] = set()
    grew = True
    while grew and len(reps) <= max_order:
        grew = False
        n = len(reps)
        for i in range(n):
            for j in range(n):
                if (i, j) in done:
                    continue
                done.add((i, j))
                prod = compose(reps[i][1], reps[j][1])
                if class_of(prod) is None:
                    reps.append((reps[i][0] * reps[j][0], prod))
                    grew = True
    complete = len(reps) <= max_order

    table = tuple(
        tuple(class_of(compose(ri, rj)) for _, rj in reps) for _, ri in reps
    ) if complete else ()

    return GermGroupReport(
        point=point,
        order=len(reps),
        representatives=tuple(str(w) for w, _ in reps),
        complete=complete,
        table=table,
    )
