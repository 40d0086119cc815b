"""Decomposition verifier: homomorphism / surjectivity / injectivity stages.

The infinite dihedral segment (Z/2 * Z/2) with the standard images is the
good case; targeted mutations of a single image must trip each stage in
turn, with the advertised witness.  Stage verdicts are cross-checked by
brute force over short based words.
"""
import itertools
import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vfk.fingroup import cyclic, validate_table
from vfk.gog import GraphOfGroups, gog_wp, load_gog, reduce_word, to_based_form
from vfk.langcore import load_grammar, nfa_accepts
from vfk.verify import (
    GogHom,
    check_homomorphism,
    check_injectivity,
    check_surjectivity,
    _avoider_nfa,
    forbidden_factors,
    grammar_target,
    hom_from_dict,
    hom_to_dict,
    load_hom,
    presentation_target,
    verify,
)
from vfk.vfpres import load_presentation, validate, word_problem

SAMPLES = Path(__file__).parent.parent / "samples"

KLEIN = [  # Z/2 x Z/2, index 2a+b
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]


def dinf_hom(**overrides):
    gog = load_gog(SAMPLES / "dinf-gog.json")
    base, images = load_hom(SAMPLES / "dinf-hom.json")
    images = dict(images, **overrides)
    target = presentation_target(load_presentation(SAMPLES / "dinf.json"))
    return GogHom(gog, images, target), base


def apply_images(h, w):
    out = ()
    for sym in w:
        out += h.images[sym]
    return out


def based_words(g, base, max_len):
    out = []
    stack = [((), base)]
    while stack:
        w, at = stack.pop()
        if at == base:
            out.append(w)
        if len(w) == max_len:
            continue
        for sym in g.delta:
            kind = g.resolve(sym)
            if kind[0] == "v":
                if kind[1] == at:
                    stack.append((w + (sym,), at))
            elif g.edge_src[kind[1]] == at:
                stack.append((w + (sym,), g.edge_tgt[kind[1]]))
    return out


# ---------------------------------------------------------------------------
# the good decomposition


def test_good_decomposition_passes_every_stage():
    h, base = dinf_hom()
    assert check_homomorphism(h) == (True, None)
    assert check_surjectivity(h) == (True, None)
    assert check_injectivity(h, base) == (True, None)
    report = verify(h, base)
    assert report.ok and report.stage is None and report.witness is None


def test_wp_agreement_on_short_delta_words():
    """phi transports the word problem exactly: for every Delta-word u of
    length <= 5, triviality of its based form in pi_1 coincides with
    triviality of phi(u) in the infinite dihedral group."""
    h, base = dinf_hom()
    g = h.gog
    p = load_presentation(SAMPLES / "dinf.json")
    for n in range(6):
        for u in itertools.product(g.delta, repeat=n):
            lhs = gog_wp(g, base, to_based_form(g, base, u))
            assert lhs == word_problem(p, apply_images(h, u)), u


def test_surjectivity_claim_by_brute_force():
    h, base = dinf_hom()
    p = load_presentation(SAMPLES / "dinf.json")
    words = based_words(h.gog, base, 6)
    for a in p.sigma:
        hit = any(
            word_problem(p, apply_images(h, w) + h.target.invert((a,)))
            for w in words
        )
        assert hit, f"no short preimage of {a}"


# ---------------------------------------------------------------------------
# mutations


def test_wrong_image_fails_homomorphism():
    h, base = dinf_hom(**{"Q.g1": ("t",)})
    assert check_homomorphism(h) == (False, ("vertex", "Q", 1, 1))
    report = verify(h, base)
    assert not report.ok and report.stage == "homomorphism"
    assert report.witness == ("vertex", "Q", 1, 1)


def test_collapsed_image_fails_surjectivity():
    h, base = dinf_hom(**{"Q.g1": ("s",)})
    assert check_homomorphism(h) == (True, None)
    assert check_surjectivity(h) == (False, "t")
    report = verify(h, base)
    assert not report.ok and report.stage == "surjectivity" and report.witness == "t"


def test_collapsed_image_also_has_a_kernel_witness():
    """The same mutation is non-injective; the standalone check finds a
    shortest kernel word and it has all the advertised properties."""
    h, base = dinf_hom(**{"Q.g1": ("s",)})
    ok, witness = check_injectivity(h, base)
    assert not ok
    assert witness == ("y", "Q.g1", "ybar", "P.g1")
    g = h.gog
    assert witness != ()
    assert reduce_word(g, witness) == witness  # reduced
    assert gog_wp(g, base, witness) is False  # based, nontrivial in pi_1
    assert word_problem(
        load_presentation(SAMPLES / "dinf.json"), apply_images(h, witness)
    )  # maps to the identity


def test_klein_quotient_fails_injectivity():
    """V4 onto Z/2 through a single vertex: a genuine surjective
    homomorphism whose kernel contains V.g3."""
    gog = GraphOfGroups([("V", validate_table(KLEIN))], [], [])
    target = presentation_target(load_presentation(SAMPLES / "z2.json"))
    h = GogHom(
        gog, {"V.g1": ("s",), "V.g2": ("s",), "V.g3": ()}, target
    )
    assert check_homomorphism(h) == (True, None)
    assert check_surjectivity(h) == (True, None)
    report = verify(h, "V")
    assert not report.ok and report.stage == "injectivity"
    assert report.witness == ("V.g3",)


# ---------------------------------------------------------------------------
# degenerate shapes


def test_single_vertex_identity():
    gog = GraphOfGroups([("V", cyclic(2))], [], [])
    target = presentation_target(load_presentation(SAMPLES / "z2.json"))
    h = GogHom(gog, {"V.g1": ("s",)}, target)
    assert verify(h, "V").ok


def test_all_trivial_images_fail_surjectivity():
    h, base = dinf_hom(
        **{"P.g1": (), "Q.g1": (), "y": (), "ybar": ()}
    )
    assert check_homomorphism(h) == (True, None)
    report = verify(h, base)
    assert not report.ok and report.stage == "surjectivity" and report.witness == "t"


def test_trivial_onto_trivial():
    gog = GraphOfGroups([("V", cyclic(1))], [], [])
    target = presentation_target(validate({"X": [], "S": ["1"], "rules": []}))
    h = GogHom(gog, {}, target)
    assert verify(h, "V").ok


def test_loop_edge_onto_grammar_target():
    """Z as an HNN extension of the trivial group, verified against the
    grammar back end for WP(Z)."""
    triv = cyclic(1)
    gog = GraphOfGroups(
        [("V", triv)],
        [("y", "ybar", "V", "V"), ("ybar", "y", "V", "V")],
        [("y", "ybar", triv, (0,), (0,))],
    )
    target = grammar_target(load_grammar(SAMPLES / "wpz_grammar.json"))
    h = GogHom(gog, {"y": ("a",), "ybar": ("a^-",)}, target)
    assert check_homomorphism(h) == (True, None)
    assert check_surjectivity(h) == (True, None)
    assert verify(h, "V").ok


# ---------------------------------------------------------------------------
# the avoider automaton


def test_forbidden_factors_and_avoider():
    g = load_gog(SAMPLES / "dinf-gog.json")
    factors = forbidden_factors(g)
    assert ("P.g1", "P.g1") in factors
    assert ("ybar", "y") in factors and ("y", "ybar") in factors
    avoider = _avoider_nfa(g)
    # one state per proper prefix of a factor, plus the empty one
    assert len(avoider.states) == 5
    assert nfa_accepts(avoider, ("P.g1", "y", "Q.g1", "ybar"))
    assert not nfa_accepts(avoider, ("P.g1", "P.g1"))
    assert not nfa_accepts(avoider, ("y", "Q.g1", "Q.g1"))
    assert not nfa_accepts(avoider, ("ybar", "y"))


def test_avoider_sees_edge_group_pushes():
    z2 = cyclic(2)
    g = GraphOfGroups(
        [("P", z2), ("Q", z2)],
        [("y", "ybar", "P", "Q"), ("ybar", "y", "Q", "P")],
        [("y", "ybar", z2, (0, 1), (0, 1))],
    )
    assert ("ybar", "P.g1", "y") in forbidden_factors(g)
    avoider = _avoider_nfa(g)
    assert not nfa_accepts(avoider, ("ybar", "P.g1", "y"))
    assert not nfa_accepts(avoider, ("y", "Q.g1", "ybar"))
    # wrong-vertex middles are not factors (the shape automaton rejects them)
    assert nfa_accepts(avoider, ("ybar", "Q.g1", "y"))


# ---------------------------------------------------------------------------
# hom files and validation


def test_hom_round_trip(tmp_path):
    base, images = load_hom(SAMPLES / "dinf-hom.json")
    out = tmp_path / "hom.json"
    out.write_text(json.dumps(hom_to_dict(base, images)))
    base2, images2 = load_hom(out)
    assert base2 == base and images2 == images
    assert hom_from_dict(json.loads(out.read_text())) == (base, images)


def test_hom_validation():
    gog = load_gog(SAMPLES / "dinf-gog.json")
    target = presentation_target(load_presentation(SAMPLES / "dinf.json"))
    good = {"P.g1": ("s",), "Q.g1": ("t", "s"), "y": (), "ybar": ()}
    with pytest.raises(ValueError, match="missing"):
        GogHom(gog, {k: v for k, v in good.items() if k != "y"}, target)
    with pytest.raises(ValueError, match="unknown"):
        GogHom(gog, dict(good, extra=()), target)
    with pytest.raises(ValueError, match="foreign"):
        GogHom(gog, dict(good, y=("q",)), target)
