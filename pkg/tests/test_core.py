import random

import pytest

from treeauto.catalog import builtin
from treeauto.core import (
    Automorphism,
    BoundaryPoint,
    apply,
    apply_boundary,
    compose,
    evaluate_word,
    identity,
    invert,
    is_identity,
    minimize,
    section,
    vertex,
)
from treeauto.machine_io import MachineParseError, dump_machine, parse_machine
from treeauto.words import Word

ADDING = builtin()["adding_machine"].generators
TULLIO = builtin()["tullio"].generators
A = TULLIO["a"]
B = TULLIO["b"]


def test_vertex_coercion():
    assert vertex("011") == (0, 1, 1)
    assert vertex([1, 0]) == (1, 0)
    assert vertex(()) == ()


# -- boundary points --------------------------------------------------------


def test_boundary_point_canonical_period():
    assert BoundaryPoint("", "1010") == BoundaryPoint("", "10")
    assert BoundaryPoint("", "111").period == (1,)


def test_boundary_point_absorbs_preperiod_into_period():
    # 0,1,1,0,1,0,... written two ways
    assert BoundaryPoint("011", "01") == BoundaryPoint("01", "10")
    # full absorption down to a purely periodic ray
    assert BoundaryPoint("1", "1") == BoundaryPoint("", "1")
    assert BoundaryPoint("01", "1").preperiod == (0,)


def test_boundary_point_parse_str():
    w = BoundaryPoint.parse("1:10")
    assert w.preperiod == (1,) and w.period == (1, 0)
    assert str(BoundaryPoint.parse(":0")) == ":0"
    assert BoundaryPoint.parse("011:01") == BoundaryPoint.parse("01:10")
    with pytest.raises(ValueError):
        BoundaryPoint.parse("010")
    with pytest.raises(ValueError):
        BoundaryPoint("", "")


def test_boundary_point_prefix_tail():
    w = BoundaryPoint("1", "10")
    assert w.prefix(5) == (1, 1, 0, 1, 0)
    assert w.tail(1) == BoundaryPoint("", "10")
    assert w.tail(2) == BoundaryPoint("", "01")
    assert w.tail(0) == w


# -- the adding machine acting on vertices ----------------------------------


def test_adding_machine_action():
    a = ADDING["a"]
    assert apply(a, "011") == (1, 1, 1)
    assert apply(a, "111") == (0, 0, 0)
    assert a("0") == (1,)
    # LSB-first increment on every 4-bit value
    for n in range(15):
        v = tuple((n >> i) & 1 for i in range(4))
        img = apply(a, v)
        assert sum(bit << i for i, bit in enumerate(img)) == n + 1


def test_sections_of_the_catalog_generators():
    assert section(B, "0") == B
    assert section(B, "1") == A
    assert section(A, "0").is_identity()
    assert section(A, "1") == A
    assert section(A, "11") == A


def test_compose_of_a_with_itself():
    a2 = compose(A, A)
    assert section(a2, "0") == A
    assert section(a2, "1") == A
    assert apply(a2, "00") == (0, 1)  # 0 + 2 = 2
    assert not a2.is_identity()


def test_invert():
    ainv = invert(A)
    assert apply(ainv, "000") == (1, 1, 1)
    assert compose(A, ainv).is_identity()
    assert compose(ainv, A).is_identity()
    assert invert(identity(2)).is_identity()
    assert invert(ainv) == A


def test_power_operator():
    assert A ** 3 == compose(A, compose(A, A))
    assert A ** 0 == identity(2)
    assert A ** -1 == invert(A)
    assert (A ** 8)(vertex("0000")) == (0, 0, 0, 1)


def test_evaluate_word():
    ba = evaluate_word(TULLIO, "b a")
    assert section(ba, "1") == ba  # (ba)|_1 = b|_{a(1)} a|_1 = b a
    aaa = evaluate_word(ADDING, "a a a")
    assert apply(aaa, "110") == (0, 1, 1)  # 3 + 3 = 6, LSB first
    assert evaluate_word(TULLIO, "a a^-1").is_identity()
    with pytest.raises(ValueError):
        evaluate_word(TULLIO, "z")


def test_apply_boundary():
    a = ADDING["a"]
    assert apply_boundary(a, BoundaryPoint.parse(":1")) == BoundaryPoint.parse(":0")
    assert apply_boundary(a, BoundaryPoint.parse(":10")) == BoundaryPoint.parse("01:10")
    assert apply_boundary(B, BoundaryPoint.parse(":0")) == BoundaryPoint.parse(":0")
    assert apply_boundary(B, BoundaryPoint.parse(":1")) == BoundaryPoint.parse("1:0")
    assert apply_boundary(identity(2), BoundaryPoint.parse("1:10")) == BoundaryPoint.parse("1:10")


def test_apply_boundary_matches_prefixes():
    rng = random.Random(5)
    gens = list(TULLIO.values()) + [invert(g) for g in TULLIO.values()]
    for _ in range(50):
        g = rng.choice(gens)
        w = BoundaryPoint(
            [rng.randrange(2) for _ in range(rng.randrange(3))],
            [rng.randrange(2) for _ in range(rng.randint(1, 3))],
        )
        img = apply_boundary(g, w)
        assert img.prefix(40) == apply(g, w.prefix(40))


# -- canonical form ----------------------------------------------------------


def test_trivial_machines_collapse_to_the_identity_state():
    g = Automorphism.from_states(2, {"p": ((0, 1), ("e", "p"))}, "p")
    assert g.is_identity()
    assert g == identity(2)
    assert g.state_count == 1


def test_equal_behavior_gives_equal_values():
    # two copies of the odometer through differently shaped tables
    g = Automorphism.from_states(
        2, {"x": ((1, 0), ("e", "y")), "y": ((1, 0), ("e", "x"))}, "x"
    )
    assert g == A
    assert hash(g) == hash(A)


def test_mirror_involution():
    g = Automorphism.from_states(2, {"g": ((1, 0), ("g", "g"))}, "g")
    assert compose(g, g).is_identity()
    assert invert(g) == g
    assert apply(g, "0101") == (1, 0, 1, 0)


def test_minimize_is_idempotent_on_canonical_values():
    for g in (A, B, compose(A, B), invert(B)):
        assert minimize(g) == g


def test_is_identity():
    assert is_identity(identity(3))
    assert not is_identity(A)
    assert is_identity(compose(A, invert(A)))


def test_alphabet_mismatch_rejected():
    with pytest.raises(ValueError):
        compose(A, identity(3))


# -- the section calculus, randomized ----------------------------------------


def random_element(rng, gens, max_len):
    names = sorted(gens)
    letters = [(rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]
    return evaluate_word(gens, Word(letters))


def test_restriction_identities():
    rng = random.Random(99)
    entries = [builtin()["tullio"], builtin()["grigorchuk"], builtin()["gupta_sidki_3"]]
    for _ in range(120):
        entry = rng.choice(entries)
        gens = entry.generators
        g = random_element(rng, gens, 4)
        h = random_element(rng, gens, 4)
        v = tuple(rng.randrange(entry.alphabet) for _ in range(rng.randint(0, 6)))
        gh = compose(g, h)
        assert section(gh, v) == compose(section(g, apply(h, v)), section(h, v))
        assert invert(section(g, v)) == section(invert(g), apply(g, v))
        cut = rng.randint(0, len(v))
        assert section(g, v) == section(section(g, v[:cut]), v[cut:])
        assert apply(gh, v) == apply(g, apply(h, v))


# -- machine files ------------------------------------------------------------


ADDING_FILE = """\
# the odometer
alphabet 2
state a
perm 1 0
on 0 -> e
on 1 -> a
initial a
"""


def test_parse_machine():
    gens = parse_machine(ADDING_FILE)
    assert list(gens) == ["a"]
    assert gens["a"] == A


def test_dump_parse_round_trip():
    for name in ("adding_machine", "tullio", "grigorchuk", "basilica", "gupta_sidki_3", "aleshin"):
        gens = builtin()[name].generators
        again = parse_machine(dump_machine(gens))
        assert list(again) == list(gens)
        assert again == dict(gens)


def test_dump_is_deterministic():
    gens = builtin()["grigorchuk"].generators
    assert dump_machine(gens) == dump_machine(gens)


def test_parse_errors_carry_line_numbers():
    cases = [
        ("state a\n", 1, "alphabet"),
        ("alphabet 2\nstate e\n", 2, "reserved"),
        ("alphabet 2\nstate a\nperm 1 0\non 0 -> e\ninitial a\n", 2, "missing transitions"),
        ("alphabet 2\nstate a\nperm 1 1\n", 3, "permutation"),
        ("alphabet 2\nstate a\nperm 1 0\non 0 -> e\non 0 -> a\n", 5, "duplicate"),
        ("alphabet 2\nstate a\nperm 1 0\non 0 -> e\non 1 -> zz\ninitial a\n", 2, "unknown target"),
        ("alphabet 2\n", 1, "no initial"),
        ("alphabet 2\ninitial zz\n", 2, "names no state"),
    ]
    for text, line, hint in cases:
        with pytest.raises(MachineParseError) as err:
            parse_machine(text)
        assert err.value.line == line, (text, hint)


def test_identity_generator_round_trips():
    gens = {"x": identity(2), "a": A}
    again = parse_machine(dump_machine(gens))
    assert again["x"].is_identity()
    assert again["a"] == A
