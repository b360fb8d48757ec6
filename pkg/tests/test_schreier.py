from fractions import Fraction

import pytest

from treeauto.activity import theta_relative
from treeauto.catalog import entry
from treeauto.core import BoundaryPoint, BudgetExceeded
from treeauto.schreier import (
    folner_candidate,
    gamma_prime_components,
    isoperimetric_profile,
    orbit,
    schreier_graph,
    symmetrize,
)


def test_symmetrize():
    adding = symmetrize(entry("adding_machine").generators)
    assert list(adding) == ["a", "a^-1"]
    grig = symmetrize(entry("grigorchuk").generators)
    # all four generators are involutions, nothing to add
    assert list(grig) == ["a", "b", "c", "d"]


def test_orbit_transitive_level():
    gens = entry("adding_machine").generators
    got = orbit(gens, (0, 0, 0))
    assert len(got) == 8
    assert got == tuple(sorted(got))


def test_orbit_proper_suborbit():
    b = {"b": entry("grigorchuk").generators["b"]}
    assert orbit(b, (0, 0, 0)) == ((0, 0, 0), (0, 1, 0))
    assert orbit(b, (1, 1, 1)) == ((1, 1, 1),)


def test_orbit_budget():
    gens = entry("adding_machine").generators
    with pytest.raises(BudgetExceeded) as info:
        orbit(gens, (0,) * 10, budget=100)
    assert len(info.value.partial) == 100


def test_orbit_rejects_bad_letters():
    with pytest.raises(ValueError):
        orbit(entry("adding_machine").generators, (0, 2))


def test_schreier_graph_adding():
    gr = schreier_graph(entry("adding_machine").generators, (0, 0, 0))
    assert gr.labels == ("a", "a^-1")
    assert len(gr.vertices) == 8
    assert len(gr.edges) == 16
    nontrivial = [e for e in gr.edges if not e[3]]
    assert len(nontrivial) == 2
    carry = {gr.vertices[e[0]] for e in nontrivial}
    assert carry == {(1, 1, 1), (0, 0, 0)}
    # the increment wraps the all-ones vertex around to all-zeros
    (i, _, t, _) = next(e for e in nontrivial if gr.vertices[e[0]] == (1, 1, 1))
    assert gr.vertices[t] == (0, 0, 0)


def test_gamma_prime_single_component():
    comps = gamma_prime_components(entry("adding_machine").generators, 3)
    assert len(comps) == 1
    assert len(comps[0]) == 8


def test_gamma_prime_splits_without_the_rooted_generator():
    b = {"b": entry("grigorchuk").generators["b"]}
    comps = gamma_prime_components(b, 3)
    sizes = sorted(len(c) for c in comps)
    assert sizes == [1, 1, 2, 2, 2]


def test_folner_adding_machine_exact():
    gens = entry("adding_machine").generators
    for n in range(1, 7):
        rep = folner_candidate(gens, n)
        assert rep.size == 2 ** n
        assert rep.boundary == 2
        assert rep.ratio == Fraction(2, 2 ** n)
        assert rep.bound == Fraction(2, 2 ** n)


def test_folner_tie_breaking():
    b = {"b": entry("grigorchuk").generators["b"]}
    rep = folner_candidate(b, 3)
    # several zero-boundary components exist; the larger wins, then lex order
    assert rep.ratio == 0
    assert rep.size == 2
    assert rep.candidate == ((0, 0, 0), (0, 1, 0))
    assert rep.bound == Fraction(1, 8)


def test_folner_respects_activity_bound():
    for name in ("adding_machine", "tullio", "grigorchuk", "basilica"):
        gens = entry(name).generators
        for rep in isoperimetric_profile(gens, 6):
            assert rep.ratio <= rep.bound
            assert sum(c.size for c in rep.components) == 2 ** rep.level


def test_folner_budget_and_args():
    gens = entry("grigorchuk").generators
    with pytest.raises(BudgetExceeded):
        folner_candidate(gens, 8, budget=100)
    with pytest.raises(ValueError):
        folner_candidate(gens, 0)


def test_theta_relative_counts_active_orbit_vertices():
    gens = entry("tullio").generators
    zero = BoundaryPoint((), (0,))
    assert theta_relative(gens, gens["b"], zero, 2) == 3
    assert theta_relative(gens, gens["b"], zero, 0) == 1
    assert theta_relative(gens, gens["a"], zero, 4) == 1
    # relative to the sub-family {b} the orbit of 00 stays small
    assert theta_relative({"b": gens["b"]}, gens["b"], zero, 2) <= 3
