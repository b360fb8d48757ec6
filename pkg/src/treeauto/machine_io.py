"""The plain-text machine file format.

    # adding machine
    alphabet 2
    state a
    perm 1 0
    on 0 -> e
    on 1 -> a
    initial a

Whitespace separated, UTF-8, # starts a comment.  A `state` block gives the
root permutation and one `on <letter> -> <target>` line per letter; `e` is
the reserved identity state and needs no block.  Each `initial <name>` line
exports the named state as a generator, so one file can carry a whole
generating set with shared states.
"""

from __future__ import annotations

from typing import Mapping

from .core import Automorphism


class MachineParseError(ValueError):
    """A syntax or consistency error in a machine file, with its line number."""

    def __init__(self, message: str, line: int):
        super().__init__("line %d: %s" % (line, message))
        self.line = line


def parse_machine(text: str) -> dict[str, Automorphism]:
    """Parse a machine file, returning generators in `initial` line order."""
    alphabet = None
    states: dict[str, tuple[tuple[int, ...], dict[int, str]]] = {}
    state_lines: dict[str, int] = {}
    initials: list[tuple[str, int]] = []
    current: str | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kw = fields[0]

        if kw == "alphabet":
            if alphabet is not None:
                raise MachineParseError("duplicate alphabet line", lineno)
            if len(fields) != 2 or not fields[1].isdigit():
                raise MachineParseError("expected: alphabet <k>", lineno)
            alphabet = int(fields[1])
            if alphabet < 2:
                raise MachineParseError("alphabet needs at least two letters", lineno)
            continue

        if alphabet is None:
            raise MachineParseError("alphabet line must come first", lineno)

        if kw == "state":
            if len(fields) != 2:
                raise MachineParseError("expected: state <name>", lineno)
            name = fields[1]
            if name == "e":
                raise MachineParseError('"e" is reserved for the identity state', lineno)
            if name in states:
                raise MachineParseError("state %r declared twice" % name, lineno)
            states[name] = ((), {})
            state_lines[name] = lineno
            current = name
        elif kw == "perm":
            if current is None:
                raise MachineParseError("perm line outside a state block", lineno)
            if len(fields) != alphabet + 1:
                raise MachineParseError(
                    "expected %d letter images, got %d" % (alphabet, len(fields) - 1), lineno
                )
            try:
                perm = tuple(int(x) for x in fields[1:])
            except ValueError:
                raise MachineParseError("letter images must be integers", lineno) from None
            if sorted(perm) != list(range(alphabet)):
                raise MachineParseError("%r is not a permutation of 0..%d" % (perm, alphabet - 1), lineno)
            if states[current][0]:
                raise MachineParseError("state %r has two perm lines" % current, lineno)
            states[current] = (perm, states[current][1])
        elif kw == "on":
            if current is None:
                raise MachineParseError("on line outside a state block", lineno)
            if len(fields) != 4 or fields[2] != "->":
                raise MachineParseError("expected: on <letter> -> <state>", lineno)
            try:
                letter = int(fields[1])
            except ValueError:
                raise MachineParseError("letter must be an integer", lineno) from None
            if not 0 <= letter < alphabet:
                raise MachineParseError("letter %d out of range" % letter, lineno)
            _, targets = states[current]
            if letter in targets:
                raise MachineParseError(
                    "state %r: duplicate transition on %d" % (current, letter), lineno
                )
            targets[letter] = fields[3]
        elif kw == "initial":
            if len(fields) != 2:
                raise MachineParseError("expected: initial <name>", lineno)
            initials.append((fields[1], lineno))
            current = None
        else:
            raise MachineParseError("unknown keyword %r" % kw, lineno)

    if alphabet is None:
        raise MachineParseError("missing alphabet line", 1)
    if not initials:
        raise MachineParseError("no initial lines; nothing is exported", 1)

    table = {}
    for name, (perm, targets) in states.items():
        lineno = state_lines[name]
        if not perm:
            raise MachineParseError("state %r has no perm line" % name, lineno)
        if len(targets) != alphabet:
            missing = sorted(set(range(alphabet)) - set(targets))
            raise MachineParseError(
                "state %r is missing transitions on %s" % (name, missing), lineno
            )
        for letter, target in targets.items():
            if target != "e" and target not in states:
                raise MachineParseError(
                    "state %r: unknown target %r on %d" % (name, target, letter), lineno
                )
        table[name] = (perm, tuple(targets[x] for x in range(alphabet)))

    out = {}
    for name, lineno in initials:
        if name != "e" and name not in states:
            raise MachineParseError("initial %r names no state" % name, lineno)
        if name in out:
            raise MachineParseError("generator %r exported twice" % name, lineno)
        out[name] = (
            Automorphism.identity(alphabet)
            if name == "e"
            else Automorphism.from_states(alphabet, table, name)
        )
    return out


def parse_machine_file(path) -> dict[str, Automorphism]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_machine(fh.read())


def dump_machine(gens: Mapping[str, Automorphism]) -> str:
    """Serialize named generators to the file format.

    States are the distinct sections reachable from the generators; each is
    written once.  A state that equals a generator keeps that generator's
    name, the rest are named q1, q2, ... in discovery order, so the output
    is deterministic and parse_machine(dump_machine(g)) == g.
    """
    if not gens:
        raise ValueError("nothing to dump")
    ks = {g.k for g in gens.values()}
    if len(ks) > 1:
        raise ValueError("generators live on different alphabets: %s" % sorted(ks))
    k = ks.pop()

    names: dict[Automorphism, str] = {Automorphism.identity(k): "e"}
    aliases: list[tuple[str, Automorphism]] = []
    order: list[Automorphism] = []
    queue: list[Automorphism] = []
    for name, g in gens.items():
        if g in names:
            aliases.append((name, g))
            continue
        names[g] = name
        order.append(g)
        queue.append(g)
    counter = 0
    while queue:
        g = queue.pop(0)
        for x in range(k):
            s = g.section((x,))
            if s not in names:
                counter += 1
                names[s] = "q%d" % counter
                order.append(s)
                queue.append(s)

    lines = ["alphabet %d" % k]
    for name, g in [(names[g], g) for g in order] + aliases:
        lines.append("state %s" % name)
        lines.append("perm %s" % " ".join(str(i) for i in g.perms[g.initial]))
        for x in range(k):
            lines.append("on %d -> %s" % (x, names[g.section((x,))]))
    for name in gens:
        lines.append("initial %s" % name)
    return "\n".join(lines) + "\n"
