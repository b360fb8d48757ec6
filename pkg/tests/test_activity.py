import itertools
import random
from fractions import Fraction

import pytest

from treeauto.activity import (
    classify_activity,
    directions,
    empirical_measure_sequence,
    is_bounded_closed_under_product,
    singular_measure,
    theta,
    theta_sequence,
)
from treeauto.catalog import entry
from treeauto.core import (
    Automorphism,
    BoundaryPoint,
    compose,
    evaluate_word,
    identity,
    section,
)


def brute_theta(g, n):
    """Count level-n vertices with nontrivial section by enumerating them."""
    count = 0
    for v in itertools.product(range(g.k), repeat=n):
        if not section(g, v).is_identity():
            count += 1
    return count


def mirror(k=2):
    """g = (g, ..., g) after reversing the alphabet; exponential, measure 1."""
    perm = tuple(reversed(range(k)))
    return Automorphism.from_states(k, {"g": (perm, ("g",) * k)}, "g")


def test_theta_against_brute_force():
    cases = []
    for name in ("adding_machine", "tullio", "grigorchuk", "basilica", "aleshin"):
        cases.extend(entry(name).generators.values())
    cases.append(mirror())
    for g in cases:
        for n in range(7):
            assert theta(g, n) == brute_theta(g, n)


def test_theta_frozen_sequences():
    tullio = entry("tullio").generators
    assert theta_sequence(tullio["a"], 6) == [1] * 7
    assert theta_sequence(tullio["b"], 6) == [1, 2, 3, 4, 5, 6, 7]
    gupta = entry("gupta_sidki_3").generators
    assert theta_sequence(gupta["t"], 5) == [1, 3, 3, 3, 3, 3]
    assert theta_sequence(mirror(), 4) == [1, 2, 4, 8, 16]
    assert theta(identity(2), 3) == 0


def test_theta_rejects_negative_level():
    with pytest.raises(ValueError):
        theta(entry("tullio").generators["a"], -1)


def test_classification_catalog():
    tullio = entry("tullio").generators
    a = classify_activity(tullio["a"])
    assert (a.kind, a.degree) == ("bounded", None)
    b = classify_activity(tullio["b"])
    assert (b.kind, b.degree) == ("polynomial", 1)

    grig = entry("grigorchuk").generators
    ga = classify_activity(grig["a"])
    assert (ga.kind, ga.depth) == ("finitary", 1)
    for name in "bcd":
        assert classify_activity(grig[name]).kind == "bounded"

    bas = entry("basilica").generators
    assert classify_activity(bas["a"]).kind == "bounded"
    assert classify_activity(bas["b"]).kind == "bounded"

    for g in entry("aleshin").generators.values():
        assert classify_activity(g).kind == "exponential"
    assert classify_activity(mirror()).kind == "exponential"

    assert classify_activity(identity(2)) == classify_activity(identity(2))
    assert classify_activity(identity(3)).depth == 0


def test_classification_witnesses_name_real_cycles():
    tullio = entry("tullio").generators
    b = classify_activity(tullio["b"])
    assert len(b.witness["cycles"]) == 2
    for cycle in b.witness["cycles"]:
        g = tullio["b"]
        for s in cycle:
            assert any(g.trans[s][x] in cycle for x in range(g.k))
    m = classify_activity(mirror())
    assert m.witness["internal_edges"] > len(m.witness["branching_component"])


def test_polynomial_degree_grows_with_towers():
    # stacking another independent cycle on top of b raises the degree
    tullio = entry("tullio").generators
    c = Automorphism.from_states(
        2,
        {
            "c": ((0, 1), ("c", "b")),
            "b": ((0, 1), ("b", "a")),
            "a": ((1, 0), ("e", "a")),
        },
        "c",
    )
    cls = classify_activity(c)
    assert (cls.kind, cls.degree) == ("polynomial", 2)
    # stay at the top cycle (1 path) or drop into b after i steps, which
    # contributes theta_b(n-1-i) = n-i paths: 1 + n(n+1)/2 in total
    assert theta(c, 12) == 1 + 12 * 13 // 2


def test_directions_adding_machine():
    gens = entry("adding_machine").generators
    d = directions(gens["a"])
    assert d.points == (BoundaryPoint((), (1,)),)
    assert d.finitary_depth == 0
    d2 = directions(compose(gens["a"], gens["a"]))
    assert d2.points == (
        BoundaryPoint((), (1,)),
        BoundaryPoint((0,), (1,)),
    )
    assert d2.finitary_depth == 0


def test_directions_grigorchuk():
    grig = entry("grigorchuk").generators
    for name in "bcd":
        d = directions(grig[name])
        assert d.points == (BoundaryPoint((), (1,)),)
        assert d.finitary_depth == 1
    da = directions(grig["a"])
    assert da.points == ()
    assert da.finitary_depth == 1


def test_directions_are_where_sections_stay_alive():
    for name, gen in (("basilica", "a"), ("basilica", "b"), ("grigorchuk", "c")):
        g = entry(name).generators[gen]
        d = directions(g)
        for p in d.points:
            for n in (3, 6, 11):
                assert not section(g, p.prefix(n)).is_identity()


def test_directions_reject_unbounded():
    with pytest.raises(ValueError):
        directions(entry("tullio").generators["b"])
    with pytest.raises(ValueError):
        directions(mirror())


def test_singular_measure_frozen():
    assert singular_measure(identity(2)) == 0
    for name in ("adding_machine", "tullio", "grigorchuk", "basilica"):
        for g in entry(name).generators.values():
            assert singular_measure(g) == 0
    assert singular_measure(mirror()) == 1
    for g in entry("aleshin").generators.values():
        assert singular_measure(g) == 1


def test_singular_measure_strictly_between():
    # m = (g, e) with a root swap, g the full mirror: below letter 0 the
    # sections never die, below letter 1 they die at once, so the dying
    # probability is exactly 1/2
    m = Automorphism.from_states(
        2,
        {"m": ((1, 0), ("g", "e")), "g": ((1, 0), ("g", "g"))},
        "m",
    )
    assert singular_measure(m) == Fraction(1, 2)
    assert [theta(m, i) for i in range(5)] == [1, 1, 2, 4, 8]


def test_empirical_measure_sequence():
    for name in ("adding_machine", "grigorchuk", "aleshin"):
        for g in entry(name).generators.values():
            seq = empirical_measure_sequence(g, 10)
            exact = singular_measure(g)
            for a, b in zip(seq, seq[1:]):
                assert b <= a
            assert seq[-1] >= exact
    m = mirror()
    assert empirical_measure_sequence(m, 5) == [Fraction(1)] * 6


def test_empirical_converges_for_random_words():
    rng = random.Random(7)
    gens = entry("grigorchuk").generators
    names = sorted(gens)
    for _ in range(20):
        word = " ".join(rng.choice(names) for _ in range(rng.randint(1, 5)))
        g = evaluate_word(gens, word)
        seq = empirical_measure_sequence(g, 12)
        exact = singular_measure(g)
        assert exact == 0  # bounded family: always measure zero
        for a, b in zip(seq, seq[1:]):
            assert b <= a


def test_bounded_closure_report():
    bas = entry("basilica").generators
    rep = is_bounded_closed_under_product(bas["a"], bas["b"])
    assert rep.ok
    assert rep.input_kinds == ("bounded", "bounded")
    assert rep.product_kind in ("finitary", "bounded")

    grig = entry("grigorchuk").generators
    rep2 = is_bounded_closed_under_product(grig["b"], grig["c"])
    assert rep2.ok
    assert rep2.product_kind in ("finitary", "bounded")
    assert rep2.product_depth <= rep2.depth_bound

    with pytest.raises(ValueError):
        is_bounded_closed_under_product(entry("tullio").generators["b"], bas["a"])
