"""Automorphisms of the rooted tree over letters 0..k-1, as finite-state machines.

An automorphism g is stored as a Mealy machine: every state carries a
permutation of the alphabet (how the corresponding section acts on the
first letter) together with one successor state per letter (the section
below that letter).  The action unfolds by

    g(x v) = g(x) . (g|_x)(v)

and sections multiply through products by (g h)|_v = g|_{h(v)} h|_v.

Values are immutable and every constructor returns the canonical minimized
form: behaviorally equivalent states are merged, states unreachable from
the initial state are dropped, and the remaining states are numbered
breadth-first from the initial state.  State 0 of every machine is the
reserved identity state (trivial permutation, all transitions to itself),
so the word problem collapses to checking `initial == 0` and equality of
automorphisms is tuple equality.

Composition is right to left throughout: (compose(g, h))(v) = g(h(v)).
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence, Union

from .words import Word

VertexLike = Union[str, Iterable[int]]


class BudgetExceeded(RuntimeError):
    """An enumeration outgrew its configured budget.

    `partial` carries whatever was computed before the budget ran out, so
    callers can report partial results instead of nothing.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def vertex(v: VertexLike) -> tuple[int, ...]:
    """Coerce a vertex to a tuple of letters.

    Accepts int sequences and digit strings ("011" means the vertex 0,1,1).
    Alphabets with more than ten letters need the sequence form.
    """
    if isinstance(v, str):
        return tuple(int(c) for c in v)
    return tuple(int(x) for x in v)


def _perm_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, image in enumerate(p):
        out[image] = i
    return tuple(out)


class BoundaryPoint:
    """An eventually periodic ray: preperiod followed by the period forever.

    Canonical form is enforced on construction: the period is primitive
    (not a power of a shorter word) and the preperiod is the shortest
    possible, letters shared with the period's tail being rotated into it.
    Equality of rays is then equality of the two tuples.
    """

    __slots__ = ("preperiod", "period")

    def __init__(self, preperiod: VertexLike = (), period: VertexLike = (0,)):
        pre = vertex(preperiod)
        per = vertex(period)
        if not per:
            raise ValueError("period must be nonempty")
        n = len(per)
        for p in range(1, n + 1):
            if n % p == 0 and per[:p] * (n // p) == per:
                per = per[:p]
                break
        while pre and pre[-1] == per[-1]:
            per = (per[-1],) + per[:-1]
            pre = pre[:-1]
        self.preperiod = pre
        self.period = per

    @classmethod
    def parse(cls, text: str) -> "BoundaryPoint":
        """Parse "pre:per" notation, e.g. ":0" for 0 0 0 ... and "1:10"."""
        pre, sep, per = text.partition(":")
        if not sep:
            raise ValueError("boundary point must be written pre:per, got %r" % text)
        return cls(vertex(pre), vertex(per))

    def __str__(self) -> str:
        digits = lambda v: "".join(str(x) for x in v)
        return "%s:%s" % (digits(self.preperiod), digits(self.period))

    def __repr__(self) -> str:
        return "BoundaryPoint(%r)" % (str(self),)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BoundaryPoint)
            and self.preperiod == other.preperiod
            and self.period == other.period
        )

    def __hash__(self) -> int:
        return hash((self.preperiod, self.period))

    def letters(self) -> Iterator[int]:
        """Yield the letters of the ray, forever."""
        yield from self.preperiod
        while True:
            yield from self.period

    def prefix(self, n: int) -> tuple[int, ...]:
        out = []
        for x in self.letters():
            if len(out) == n:
                break
            out.append(x)
        return tuple(out)

    def tail(self, n: int) -> "BoundaryPoint":
        """The ray with its first n letters removed."""
        if n <= len(self.preperiod):
            return BoundaryPoint(self.preperiod[n:], self.period)
        shift = (n - len(self.preperiod)) % len(self.period)
        return BoundaryPoint((), self.period[shift:] + self.period[:shift])


class Automorphism:
    """A tree automorphism in canonical minimized machine form.

    Do not call the constructor directly; build values through identity(),
    from_states(), the catalog, or the operations in this module.  perms[s]
    is the root permutation of state s, trans[s][x] the state of the
    section below letter x.  State 0 is the reserved identity state.
    """

    __slots__ = ("k", "perms", "trans", "initial", "_hash")

    def __init__(self, k, perms, trans, initial, _raw=False):
        if not _raw:
            raise TypeError("use identity()/from_states()/compose()/... to build values")
        self.k = k
        self.perms = perms
        self.trans = trans
        self.initial = initial
        self._hash = None

    # -- construction ---------------------------------------------------

    @staticmethod
    def _build(k: int, perms, trans, initial: int) -> "Automorphism":
        """Canonicalize a raw machine. Row 0 must already be the identity row."""
        idrow = tuple(range(k))
        assert perms[0] == idrow and all(t == 0 for t in trans[0])

        # states reachable from the initial state (state 0 always kept)
        reach = [initial] if initial != 0 else []
        seen = {0, initial}
        i = 0
        while i < len(reach):
            s = reach[i]
            i += 1
            for t in trans[s]:
                if t not in seen:
                    seen.add(t)
                    reach.append(t)
        states = [0] + reach

        # Moore refinement: seed with root permutations, refine by successor
        # blocks until the block count stops growing
        table: dict = {}
        ids = {}
        for s in states:
            ids[s] = table.setdefault(perms[s], len(table))
        while True:
            table2: dict = {}
            new = {}
            for s in states:
                sig = (ids[s], tuple(ids[trans[s][x]] for x in range(k)))
                new[s] = table2.setdefault(sig, len(table2))
            if len(table2) == len(table):
                ids = new
                break
            ids, table = new, table2

        # renumber: identity block is 0, the rest breadth-first from initial
        number = {ids[0]: 0}
        reps = {0: 0}
        if ids[initial] not in number:
            number[ids[initial]] = 1
            reps[1] = initial
            queue = [initial]
            while queue:
                s = queue.pop(0)
                for x in range(k):
                    t = trans[s][x]
                    if ids[t] not in number:
                        number[ids[t]] = len(number)
                        reps[number[ids[t]]] = t
                        queue.append(t)

        m = len(number)
        new_perms = [idrow] * m
        new_trans = [(0,) * k] * m
        for c in range(1, m):
            s = reps[c]
            new_perms[c] = perms[s]
            new_trans[c] = tuple(number[ids[trans[s][x]]] for x in range(k))
        return Automorphism(
            k, tuple(new_perms), tuple(new_trans), number[ids[initial]], _raw=True
        )

    @classmethod
    def identity(cls, k: int) -> "Automorphism":
        if k < 2:
            raise ValueError("alphabet needs at least two letters")
        return cls(k, (tuple(range(k)),), ((0,) * k,), 0, _raw=True)

    @classmethod
    def from_states(
        cls,
        k: int,
        states: Mapping[str, tuple[Sequence[int], Sequence[str]]],
        initial: str,
    ) -> "Automorphism":
        """Build an automorphism from named states.

        `states` maps a name to (perm, targets): the tuple of letter images
        and the tuple of successor state names.  The name "e" is reserved
        for the identity state; it may be used as a target freely and must
        not be declared.  `initial` names the starting state ("e" gives the
        identity automorphism).
        """
        if k < 2:
            raise ValueError("alphabet needs at least two letters")
        if "e" in states:
            raise ValueError('"e" is reserved for the identity state')
        index = {"e": 0}
        for name in states:
            index[name] = len(index)
        if initial not in index:
            raise ValueError("initial state %r is not declared" % initial)
        perms = [tuple(range(k))]
        trans = [(0,) * k]
        for name, (perm, targets) in states.items():
            perm = tuple(int(x) for x in perm)
            if sorted(perm) != list(range(k)):
                raise ValueError("state %r: %r is not a permutation of 0..%d" % (name, perm, k - 1))
            if len(targets) != k:
                raise ValueError("state %r needs %d successors, got %d" % (name, k, len(targets)))
            try:
                row = tuple(index[t] for t in targets)
            except KeyError as err:
                raise ValueError("state %r: unknown successor %s" % (name, err)) from None
            perms.append(perm)
            trans.append(row)
        return cls._build(k, perms, trans, index[initial])

    def _with_initial(self, s: int) -> "Automorphism":
        if s == self.initial:
            return self
        return Automorphism._build(self.k, self.perms, self.trans, s)

    # -- value semantics -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Automorphism)
            and self.k == other.k
            and self.initial == other.initial
            and self.perms == other.perms
            and self.trans == other.trans
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.k, self.perms, self.trans, self.initial))
        return self._hash

    def sort_key(self):
        """A deterministic total order, used to make set-valued results stable."""
        return (self.k, len(self.perms), self.perms, self.trans, self.initial)

    def __repr__(self) -> str:
        return "<Automorphism k=%d states=%d initial=%d>" % (
            self.k,
            len(self.perms),
            self.initial,
        )

    @property
    def state_count(self) -> int:
        return len(self.perms)

    # -- the action ------------------------------------------------------

    def is_identity(self) -> bool:
        return self.initial == 0

    def apply(self, v: VertexLike) -> tuple[int, ...]:
        """The image g(v) of a vertex."""
        s = self.initial
        out = []
        for x in vertex(v):
            out.append(self.perms[s][x])
            s = self.trans[s][x]
        return tuple(out)

    def __call__(self, v: VertexLike) -> tuple[int, ...]:
        return self.apply(v)

    def section(self, v: VertexLike) -> "Automorphism":
        """The section g|_v, the automorphism induced on the subtree at v."""
        s = self.initial
        for x in vertex(v):
            s = self.trans[s][x]
        return self._with_initial(s)

    def apply_boundary(self, w: BoundaryPoint) -> BoundaryPoint:
        """The image of an eventually periodic ray, again in canonical form.

        The state trajectory along the period repeats after at most
        state_count sweeps, so the image's preperiod and period are read
        off the sweeps before and inside the first repetition.
        """
        s = self.initial
        pre_out = []
        for x in w.preperiod:
            pre_out.append(self.perms[s][x])
            s = self.trans[s][x]
        starts: dict[int, int] = {}
        sweeps: list[tuple[int, ...]] = []
        while s not in starts:
            starts[s] = len(sweeps)
            out = []
            for x in w.period:
                out.append(self.perms[s][x])
                s = self.trans[s][x]
            sweeps.append(tuple(out))
        i = starts[s]
        for sweep in sweeps[:i]:
            pre_out.extend(sweep)
        per_out = []
        for sweep in sweeps[i:]:
            per_out.extend(sweep)
        return BoundaryPoint(tuple(pre_out), tuple(per_out))

    # -- group operations --------------------------------------------------

    def inverse(self) -> "Automorphism":
        k = self.k
        perms = [tuple(range(k))]
        trans = [(0,) * k]
        for s in range(1, len(self.perms)):
            inv = _perm_inverse(self.perms[s])
            perms.append(inv)
            trans.append(tuple(self.trans[s][inv[x]] for x in range(k)))
        return Automorphism._build(k, perms, trans, self.initial)

    def __invert__(self) -> "Automorphism":
        return self.inverse()

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)

    def __pow__(self, n: int) -> "Automorphism":
        if n < 0:
            return self.inverse() ** (-n)
        result = Automorphism.identity(self.k)
        base = self
        while n:
            if n & 1:
                result = compose(result, base)
            base = compose(base, base)
            n >>= 1
        return result


def identity(k: int) -> Automorphism:
    return Automorphism.identity(k)


def compose(g: Automorphism, h: Automorphism) -> Automorphism:
    """The product g h acting by (g h)(v) = g(h(v)).

    Built on reachable state pairs: the pair (p, q) behaves as the product
    of the sections at p and q, stepping by

        (p, q) --x--> (p after h's image of x, q after x)

    and only pairs reachable from (initial, initial) are materialized.
    The result is minimized, so products of elements with small canonical
    machines stay small no matter how long the generating word was.
    """
    if g.k != h.k:
        raise ValueError("alphabet mismatch: %d vs %d" % (g.k, h.k))
    if g.initial == 0:
        return h
    if h.initial == 0:
        return g
    k = g.k
    index = {(0, 0): 0, (g.initial, h.initial): 1}
    order = [(g.initial, h.initial)]
    perms = [tuple(range(k))]
    trans: list[tuple[int, ...]] = [(0,) * k]
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        gperm, hperm = g.perms[p], h.perms[q]
        perms.append(tuple(gperm[hperm[x]] for x in range(k)))
        row = []
        for x in range(k):
            pair = (g.trans[p][hperm[x]], h.trans[q][x])
            if pair == (0, 0):
                row.append(0)
            elif pair in index:
                row.append(index[pair])
            else:
                index[pair] = len(index)
                order.append(pair)
                row.append(index[pair])
        trans.append(tuple(row))
    return Automorphism._build(k, tuple(perms), tuple(trans), 1)


def invert(g: Automorphism) -> Automorphism:
    return g.inverse()


def section(g: Automorphism, v: VertexLike) -> Automorphism:
    return g.section(v)


def apply(g: Automorphism, v: VertexLike) -> tuple[int, ...]:
    return g.apply(v)


def apply_boundary(g: Automorphism, w: BoundaryPoint) -> BoundaryPoint:
    return g.apply_boundary(w)


def minimize(g: Automorphism) -> Automorphism:
    """Canonical minimized form.  A no-op: every Automorphism already is one."""
    return g


def is_identity(g: Automorphism) -> bool:
    return g.is_identity()


def evaluate_word(gens: Mapping[str, Automorphism], word: Union[Word, str]) -> Automorphism:
    """Evaluate a group word over named generators to an automorphism.

    The word multiplies left to right as written, and products act right
    to left, so the rightmost letter acts first: evaluate_word(gens, "b a")
    sends v to b(a(v)).
    """
    if isinstance(word, str):
        word = Word.parse(word)
    ks = {g.k for g in gens.values()}
    if len(ks) > 1:
        raise ValueError("generators live on different alphabets: %s" % sorted(ks))
    if not gens:
        raise ValueError("no generators")
    result = Automorphism.identity(ks.pop())
    for name, sign in word:
        if name not in gens:
            raise ValueError("unknown generator %r" % name)
        g = gens[name] if sign > 0 else gens[name].inverse()
        result = compose(result, g)
    return result
