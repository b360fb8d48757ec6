"""Relator search, stabilizer sampling, and freeness evidence.

Words here live over the symmetrized generator set: one letter per
generator, plus a formal inverse letter for each generator that is not an
involution.  Only opposite signs cancel, so for an involution b the word
b b is a legitimate (and typically the first) relator.

find_relations has a fast path and an exact path.  When no generator is
trivial or an involution, injectivity of evaluation on all words of half
the requested length already rules out every relator: a cyclically
reduced relator w = u v would force the distinct half-words u and the
formal inverse of v to evaluate equally.  Involutions break that argument
(u and the inverse respelling of v can be the same word), so their
presence forces the exact search.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Mapping, Optional, Union

from .core import Automorphism, BudgetExceeded, BoundaryPoint, compose, identity, invert
from .nucleus import ball, germ_is_trivial, stabilizes
from .words import Word, commutator

WordLike = Union[str, Word]


def _as_word(w: WordLike) -> Word:
    return Word.parse(w) if isinstance(w, str) else w


def _display_key(letters):
    return tuple((n, 0 if s > 0 else 1) for n, s in letters)


def _steps(gens: Mapping[str, Automorphism]):
    """Letters of the word universe with their values, involutions once."""
    steps = []
    for name in sorted(gens):
        g = gens[name]
        steps.append(((name, 1), g))
        inv = invert(g)
        if inv != g:
            steps.append(((name, -1), inv))
    return steps


@dataclass(frozen=True)
class RelationReport:
    """Relators of length at most max_len, up to rotation and inversion.

    A listed relator is cyclically reduced and contains no shorter relator
    as a cyclic factor (words like c b b c, trivial only by way of the
    inner b b, are left out).  complete means the search space was fully
    covered, so the list is exhaustive under those conventions.
    """

    max_len: int
    relators: tuple[Word, ...]
    complete: bool


class _RelatorSet:
    def __init__(self):
        self.by_class: dict[tuple, Word] = {}

    def add(self, letters: tuple):
        variants = []
        for base in (letters, tuple((n, -s) for n, s in reversed(letters))):
            for r in range(len(base)):
                variants.append(base[r:] + base[:r])
        key = min(variants)
        if key not in self.by_class:
            self.by_class[key] = Word(min(variants, key=_display_key))

    def sorted(self) -> tuple[Word, ...]:
        return tuple(
            sorted(self.by_class.values(), key=lambda w: (len(w.letters), _display_key(w.letters)))
        )


def find_relations(
    gens: Mapping[str, Automorphism],
    max_len: int,
    budget: int = 200000,
) -> RelationReport:
    if not gens:
        raise ValueError("need at least one generator")
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    steps = _steps(gens)
    e = identity(next(iter(gens.values())).k)
    spent = 0

    shortcut_ok = all(
        not g.is_identity() and not compose(g, g).is_identity() for g in gens.values()
    )
    if shortcut_ok:
        half = (max_len + 1) // 2
        elements: dict[Automorphism, tuple] = {e: ()}
        layer = [((), e)]
        injective = True
        for _ in range(half):
            if not injective:
                break
            nxt = []
            for letters, elem in layer:
                for letter, gstep in steps:
                    if letters and letters[-1] == (letter[0], -letter[1]):
                        continue
                    spent += 1
                    if spent > budget:
                        raise BudgetExceeded(
                            "relation search budget exhausted during the fast path",
                            partial=RelationReport(max_len, (), False),
                        )
                    value = compose(elem, gstep)
                    if value in elements:
                        injective = False
                        break
                    child = letters + (letter,)
                    elements[value] = child
                    nxt.append((child, value))
                if not injective:
                    break
            layer = nxt
        if injective:
            return RelationReport(max_len, (), True)

    # exact search: depth-first over the word universe, recording trivial
    # words and pruning their extensions (those factor through the prefix)
    found = _RelatorSet()
    prefix_values: list[Automorphism] = [e]
    step_by_letter = dict(steps)

    def record(letters: tuple):
        if not Word(letters).is_cyclically_reduced():
            return
        # a rotation with a trivial proper prefix exhibits a shorter
        # relator inside; skip those
        for r in range(len(letters)):
            rot = letters[r:] + letters[:r]
            elem = e
            for i in range(len(rot) - 1):
                elem = compose(elem, step_by_letter[rot[i]])
                if elem.is_identity():
                    return
        found.add(letters)

    def dfs(letters: tuple, depth: int):
        nonlocal spent
        elem = prefix_values[-1]
        if elem.is_identity() and letters:
            record(letters)
            return
        if depth == max_len:
            return
        for letter, gstep in steps:
            if letters and letters[-1] == (letter[0], -letter[1]):
                continue
            spent += 1
            if spent > budget:
                raise BudgetExceeded(
                    "relation search budget exhausted",
                    partial=RelationReport(max_len, found.sorted(), False),
                )
            prefix_values.append(compose(elem, gstep))
            dfs(letters + (letter,), depth + 1)
            prefix_values.pop()

    dfs((), 0)
    return RelationReport(max_len, found.sorted(), True)


# -- stabilizers and germs as freeness probes ----------------------------------


@dataclass(frozen=True)
class StabilizerSample:
    """Nontrivial elements of word length <= max_len fixing the ray.

    words are shortest representatives, length-lex ordered; germ_trivial
    runs parallel and marks the elements acting trivially near the ray.
    complete is True when the ball enumeration closed, i.e. the whole
    group was inspected.
    """

    point: BoundaryPoint
    max_len: int
    words: tuple[Word, ...]
    germ_trivial: tuple[bool, ...]
    complete: bool


def stabilizer_search(
    gens: Mapping[str, Automorphism],
    point: BoundaryPoint,
    max_len: int,
    budget: int = 100000,
) -> StabilizerSample:
    elements, closed = ball(gens, max_len, budget)
    hits = [
        (word, elem)
        for elem, word in elements.items()
        if not elem.is_identity() and stabilizes(elem, point)
    ]
    hits.sort(key=lambda p: (len(p[0].letters), _display_key(p[0].letters)))
    return StabilizerSample(
        point=point,
        max_len=max_len,
        words=tuple(w for w, _ in hits),
        germ_trivial=tuple(germ_is_trivial(g, point) for _, g in hits),
        complete=closed,
    )


@dataclass(frozen=True)
class FaithfulnessProbe:
    """Heuristic commutator probe on the stabilizer of a ray.

    For each pair of stabilizer elements the iterated commutator chain
    c1 = [u, v], c2 = [c1, u], c3 = [c2, v], ... is followed for up to
    4 * max_len steps.  A chain that never collapses to the identity is
    free-like behavior; every chain collapsing is weak evidence against a
    free subgroup inside this stabilizer.  No proof either way.
    """

    point: BoundaryPoint
    pairs_tested: int
    has_free_like: bool
    witness: Optional[tuple[str, str]] = None


def germ_faithfulness_probe(
    gens: Mapping[str, Automorphism],
    point: BoundaryPoint,
    max_len: int = 4,
    budget: int = 100000,
) -> FaithfulnessProbe:
    sample = stabilizer_search(gens, point, max_len, budget)
    elements, _ = ball(gens, max_len, budget)
    by_word = {word: elem for elem, word in elements.items()}
    elems = [by_word[w] for w in sample.words]

    def comm(x: Automorphism, y: Automorphism) -> Automorphism:
        return compose(compose(x, y), compose(invert(x), invert(y)))

    pairs = 0
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            pairs += 1
            u, v = elems[i], elems[j]
            c = comm(u, v)
            steps = 0
            while not c.is_identity() and steps < 4 * max_len:
                c = comm(c, u if steps % 2 == 0 else v)
                steps += 1
            if not c.is_identity():
                return FaithfulnessProbe(
                    point, pairs, True,
                    (str(sample.words[i]), str(sample.words[j])),
                )
    return FaithfulnessProbe(point, pairs, False)


# -- word-level kernel witnesses -----------------------------------------------


def kernel_witness_power(u: WordLike, v: WordLike) -> Optional[Word]:
    """A common power of u and v when they share a primitive root, else None.

    Two elements of a free group commute exactly when they are powers of
    one primitive word; in that case the returned word is a power of both
    (up to inversion) and witnesses that any evaluation killing one power
    relation kills this word too.
    """
    uw, vw = _as_word(u), _as_word(v)
    if uw.is_identity() or vw.is_identity():
        raise ValueError("kernel witnesses need nontrivial words")
    ru, nu = uw.primitive_root()
    rv, nv = vw.primitive_root()
    if ru == rv or ru == rv.inverse():
        return ru ** lcm(nu, nv)
    return None


def kernel_witness_commutator(u: WordLike, v: WordLike) -> Word:
    """The commutator [u, v], a kernel witness candidate for non-commuting words.

    Raises when the words commute as free words, since the commutator is
    then trivially trivial and witnesses nothing.
    """
    uw, vw = _as_word(u), _as_word(v)
    c = commutator(uw, vw)
    if c.is_identity():
        raise ValueError("words commute freely; the commutator is empty")
    return c


# -- pairwise freeness certificates --------------------------------------------


@dataclass(frozen=True)
class TrichotomyEvidence:
    """Outcome of testing one pair of elements for free behavior.

    status is "free_up_to" (no relation among words in the pair up to
    checked_len), "relation_found" (relation holds the collapsing pattern,
    written in the stand-in letters U and V), or "trivial_input".
    """

    status: str
    pair: tuple[str, str]
    checked_len: int
    relation: Optional[str] = None


def free_subgroup_certificate(
    gens: Mapping[str, Automorphism],
    u: WordLike,
    v: WordLike,
    max_len: int = 8,
    budget: int = 100000,
) -> TrichotomyEvidence:
    """Search for relations between two elements, as evidence of freeness.

    Evaluates all reduced patterns in the pair (as letters U, V) up to
    max_len, deduplicating by value; a collision or a trivial value is a
    relation, and a clean sweep certifies the pair generates a free group
    at least to that pattern length.
    """
    uw, vw = _as_word(u), _as_word(v)
    pair = (str(uw), str(vw))
    from .core import evaluate_word

    gu = evaluate_word(gens, uw)
    gv = evaluate_word(gens, vw)
    if gu.is_identity():
        return TrichotomyEvidence("trivial_input", pair, 0, "U")
    if gv.is_identity():
        return TrichotomyEvidence("trivial_input", pair, 0, "V")

    steps = []
    for letter_name, val in (("U", gu), ("V", gv)):
        steps.append(((letter_name, 1), val))
        inv = invert(val)
        if inv != val:
            steps.append(((letter_name, -1), inv))

    e = identity(gu.k)
    elements: dict[Automorphism, Word] = {e: Word(())}
    layer = [(Word(()), e)]
    spent = 0
    for _ in range(max_len):
        nxt = []
        for word, elem in layer:
            for letter, gstep in steps:
                cand = word * Word((letter,))
                if len(cand.letters) <= len(word.letters):
                    continue
                spent += 1
                if spent > budget:
                    raise BudgetExceeded(
                        "freeness certificate budget exhausted",
                        partial=TrichotomyEvidence("free_up_to", pair, len(word.letters)),
                    )
                value = compose(elem, gstep)
                if value in elements:
                    relation = cand * elements[value].inverse()
                    return TrichotomyEvidence(
                        "relation_found", pair, max_len, str(relation)
                    )
                elements[value] = cand
                nxt.append((cand, value))
        layer = nxt
    return TrichotomyEvidence("free_up_to", pair, max_len)
