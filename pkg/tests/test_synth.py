"""Synthesis: enumeration order, counting, determinism, and the two
documented targets (Z/2 in one candidate class, the dihedral segment).

The candidate counts are checked against closed-form products computed
by hand; the search results are re-verified post hoc so a bug in the
enumerator cannot hide behind the verifier.
"""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vfk.gog import gog_to_dict, load_gog
from vfk.slide import gog_equivalent
from vfk.synth import (
    BudgetExhausted,
    SynthBudget,
    default_catalog,
    enumerate_candidates,
    synthesize,
)
from vfk.verify import verify
from vfk.vfpres import load_presentation, validate

SAMPLES = Path(__file__).parent.parent / "samples"


def test_default_catalog():
    names = [t.name for t in default_catalog(6)]
    assert names == ["1", "Z/2", "Z/3", "D2", "Z/4", "Z/5", "D3", "Z/6"]
    assert all(t.order <= 4 for t in default_catalog(4))


def test_budget_validation():
    with pytest.raises(ValueError):
        SynthBudget(0, 1, 0, 0)
    with pytest.raises(ValueError):
        SynthBudget(1, 1, -1, 0)
    with pytest.raises(ValueError):
        SynthBudget(1, 2, 0, 1, catalog=("not a table",))
    assert SynthBudget(1, 2, 0, 1).catalog[0].order == 1


def test_smallest_budget_has_one_candidate():
    cands = list(enumerate_candidates(SynthBudget(1, 1, 0, 0), ("s", "s^-")))
    assert len(cands) == 1
    gog, images = cands[0]
    assert gog.vertex_order == ["P0"] and gog.delta == () and images == {}


def test_counting_against_closed_form():
    # single vertex, groups {1, Z/2}; Z/2 contributes one Delta letter with
    # 1 + |sigma| words of length <= 1
    cands = list(enumerate_candidates(SynthBudget(1, 2, 0, 1), ("s", "s^-")))
    assert len(cands) == 1 + (1 + 2)


def test_two_vertices_one_edge_is_a_segment():
    for gog, _ in enumerate_candidates(SynthBudget(2, 2, 1, 0), ("s", "s^-")):
        if len(gog.vertex_order) == 2:
            pairs = gog.undirected_pairs()
            assert len(pairs) == 1
            e = pairs[0]
            assert gog.edge_src[e] != gog.edge_tgt[e]


def test_enumeration_is_deterministic():
    budget = SynthBudget(2, 2, 1, 1)
    sigma = ("t", "t^-", "s", "s^-")
    first = [
        (gog_to_dict(g), imgs)
        for g, imgs in enumerate_candidates(budget, sigma)
    ]
    second = [
        (gog_to_dict(g), imgs)
        for g, imgs in enumerate_candidates(budget, sigma)
    ]
    assert first == second
    assert len(first) > 30


def test_trivial_group():
    p = validate({"X": [], "S": ["1"], "rules": []})
    gog, hom = synthesize(p, SynthBudget(1, 1, 0, 0))
    assert gog.vertex_order == ["P0"]
    assert gog.vertex_tables["P0"].order == 1
    assert hom.images == {}
    assert verify(hom, "P0").ok


def test_z2():
    p = load_presentation(SAMPLES / "z2.json")
    gog, hom = synthesize(p, SynthBudget(1, 2, 0, 1))
    assert gog.vertex_tables["P0"].order == 2
    assert hom.images == {"P0.g1": ("s",)}
    assert verify(hom, "P0").ok


def test_budget_monotonicity_on_z2():
    p = load_presentation(SAMPLES / "z2.json")
    small = synthesize(p, SynthBudget(1, 2, 0, 1))
    large = synthesize(p, SynthBudget(2, 3, 1, 2))
    assert small is not None and large is not None
    assert large[1].images == small[1].images
    assert gog_equivalent(large[0], small[0])


def test_exhaustion():
    p = load_presentation(SAMPLES / "dinf.json")
    assert synthesize(p, SynthBudget(1, 2, 0, 1)) is None
    with pytest.raises(BudgetExhausted) as err:
        synthesize(p, SynthBudget(1, 2, 0, 1), strict=True)
    # 1 trivial-vertex candidate + (1 + |sigma|) images on the Z/2 vertex
    assert err.value.tried == 6


def test_dinf_segment():
    """The documented search: two vertices of order <= 2, one edge,
    images of length <= 2 recover the Z/2 * Z/2 splitting."""
    p = load_presentation(SAMPLES / "dinf.json")
    out = synthesize(p, SynthBudget(2, 2, 1, 2))
    assert out is not None
    gog, hom = out
    assert sorted(t.order for t in gog.vertex_tables.values()) == [2, 2]
    assert len(gog.undirected_pairs()) == 1
    assert gog.edge_table[gog.undirected_pairs()[0]].order == 1
    assert verify(hom, gog.vertex_order[0]).ok
    assert gog_equivalent(gog, load_gog(SAMPLES / "dinf-gog.json"))
    lengths = sorted(len(w) for w in hom.images.values())
    assert lengths == [0, 0, 1, 2]  # epsilon edges, "s", "t s"
