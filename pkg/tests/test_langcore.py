"""Grammar/NFA/PDA layer: CNF+CYK, products, emptiness, rational subsets.

Where feasible the language-level operations are checked against independent
oracles: letter-count balance for the Z word problem, direct normal-form
computation for rational subsets, and brute-force word enumeration.
"""
import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from vfk.langcore import (
    AlphabetMismatch,
    NotCnf,
    chain_nfa,
    cyk_member,
    enumerate_nfa_words,
    flower_nfa,
    grammar_from_dict,
    grammar_size,
    grammar_to_dict,
    grammar_to_pda,
    intersect_pda_nfa,
    inverse_hom,
    involution_map,
    is_cnf,
    load_grammar,
    make_grammar,
    make_nfa,
    nfa_accepts,
    normalize_pda,
    pda_accepts,
    pda_empty,
    prepend_word,
    rational_member,
    shortest_accepted,
    simulate_pda,
    to_cnf,
    universal_nfa,
)
from vfk.vfpres import load_presentation, normal_form, wp_pda

SAMPLES = Path(__file__).parent.parent / "samples"

Z_LETTERS = ["a", "a^-"]


def wpz_grammar():
    return load_grammar(SAMPLES / "wpz_grammar.json")


def balanced(w):
    return list(w).count("a") == list(w).count("a^-")


# ---------------------------------------------------------------------------
# grammars


def test_cnf_shape_and_size():
    g = wpz_grammar()
    assert not is_cnf(g)
    c = to_cnf(g)
    assert is_cnf(c)
    assert is_cnf(to_cnf(c))
    # start-separated: the new start appears in no right-hand side
    assert all(c.start not in rhs for _, rhs in c.prods)
    assert grammar_size(c) > grammar_size(g)


def test_cnf_preserves_language_exhaustive():
    c = to_cnf(wpz_grammar())
    for n in range(0, 9):
        for w in itertools.product(Z_LETTERS, repeat=n):
            assert cyk_member(c, w) == balanced(w), w


@given(st.lists(st.sampled_from(Z_LETTERS), max_size=12))
def test_cnf_vs_count_oracle(word):
    c = to_cnf(wpz_grammar())
    assert cyk_member(c, tuple(word)) == balanced(word)


def test_unit_elimination():
    g = make_grammar(["S", "A"], ["a"], [("S", ("A",)), ("A", ("a",))], "S")
    c = to_cnf(g)
    assert is_cnf(c)
    assert cyk_member(c, ("a",))
    assert not cyk_member(c, ())
    assert not cyk_member(c, ("a", "a"))
    # the unit chain is gone: some production derives the terminal directly
    assert (c.start, ("a",)) in c.prods


def test_empty_word_grammar():
    g = make_grammar(["S"], ["a"], [("S", ())], "S")
    c = to_cnf(g)
    assert is_cnf(c)
    assert cyk_member(c, ())
    assert not cyk_member(c, ("a",))


def test_cyk_requires_cnf():
    with pytest.raises(NotCnf):
        cyk_member(wpz_grammar(), ("a", "a^-"))


def test_grammar_involution_round_trip():
    g = wpz_grammar()
    g2 = grammar_from_dict(grammar_to_dict(g))
    assert g2 == g
    inv = involution_map(g)
    assert inv["a"] == "a^-" and inv["a^-"] == "a"


# ---------------------------------------------------------------------------
# NFAs


def test_nfa_constructors():
    chain = chain_nfa(("a", "a^-"), Z_LETTERS)
    assert nfa_accepts(chain, ("a", "a^-"))
    assert not nfa_accepts(chain, ("a",))
    assert not nfa_accepts(chain, ())

    uni = universal_nfa(Z_LETTERS)
    assert nfa_accepts(uni, ()) and nfa_accepts(uni, ("a^-", "a^-", "a"))

    flower = flower_nfa([("a", "a"), ("a^-",)], Z_LETTERS)
    assert nfa_accepts(flower, ())
    assert nfa_accepts(flower, ("a", "a", "a^-", "a", "a"))
    assert not nfa_accepts(flower, ("a",))

    shifted = prepend_word(chain, ("a^-",))
    assert nfa_accepts(shifted, ("a^-", "a", "a^-"))
    assert not nfa_accepts(shifted, ("a", "a^-"))


def test_enumerate_nfa_words():
    flower = flower_nfa([("a", "a")], Z_LETTERS)
    words = enumerate_nfa_words(flower, 6)
    assert words == [(), ("a", "a"), ("a",) * 4, ("a",) * 6]


# ---------------------------------------------------------------------------
# PDAs


def test_grammar_to_pda_matches_cyk():
    g = wpz_grammar()
    m = grammar_to_pda(g)
    c = to_cnf(g)
    for n in range(0, 7):
        for w in itertools.product(Z_LETTERS, repeat=n):
            assert pda_accepts(m, w) == cyk_member(c, w), w


def test_normalize_pda_bounds_pushes():
    m = grammar_to_pda(wpz_grammar())  # source grammar has length-3 bodies
    assert all(len(push) <= 2 for *_, push in m.all_transitions())
    assert normalize_pda(m) is m


def test_simulate_is_bounded_tristate():
    m = grammar_to_pda(wpz_grammar())
    # nondeterministic expansion S -> SS blows any small budget without a run
    assert simulate_pda(m, ("a",), max_steps=50) is None
    # deterministic machines stay within budget and give exact answers
    d = load_presentation(SAMPLES / "dinf.json")
    w = wp_pda(d)
    assert simulate_pda(w, ("s", "s")) is True
    assert simulate_pda(w, ("s",)) is False


def test_inverse_hom_letter_doubling():
    z = load_presentation(SAMPLES / "z.json")
    m = inverse_hom(wp_pda(z), {"p": ("t", "t"), "q": ("t^-", "t^-")})
    for n in range(0, 5):
        for w in itertools.product(["p", "q"], repeat=n):
            expect = w.count("p") == w.count("q")
            assert pda_accepts(m, w) == expect, w


def test_inverse_hom_collapses_relation():
    d = load_presentation(SAMPLES / "dinf.json")
    m = inverse_hom(wp_pda(d), {"u": ("s", "s")})
    # s^2 = 1, so every power of u maps to an identity word
    for k in range(5):
        assert pda_accepts(m, ("u",) * k)


def test_inverse_hom_rejects_foreign_letters():
    z = load_presentation(SAMPLES / "z.json")
    with pytest.raises(AlphabetMismatch):
        inverse_hom(wp_pda(z), {"p": ("nope",)})


def test_intersection_against_brute_force():
    g = wpz_grammar()
    m = grammar_to_pda(g)
    c = to_cnf(g)
    even = make_nfa(
        ["e", "o"],
        Z_LETTERS,
        [(s, a, t) for (s, t) in [("e", "o"), ("o", "e")] for a in Z_LETTERS],
        ["e"],
        ["e"],
    )
    prod = intersect_pda_nfa(m, even)
    for n in range(0, 7):
        for w in itertools.product(Z_LETTERS, repeat=n):
            expect = cyk_member(c, w) and n % 2 == 0
            assert pda_accepts(prod, w) == expect, w


def test_intersection_alphabet_check():
    m = grammar_to_pda(wpz_grammar())
    with pytest.raises(AlphabetMismatch):
        intersect_pda_nfa(m, universal_nfa(["x"]))


def test_pda_empty():
    d = load_presentation(SAMPLES / "dinf.json")
    m = wp_pda(d)
    assert not pda_empty(m)
    assert pda_empty(intersect_pda_nfa(m, chain_nfa(("s",), m.input_alphabet)))
    # grammar without a terminating derivation
    g = make_grammar(["S"], ["a"], [("S", ("a", "S"))], "S")
    assert pda_empty(grammar_to_pda(g))


def test_shortest_accepted():
    d = load_presentation(SAMPLES / "dinf.json")
    m = wp_pda(d)
    inter = intersect_pda_nfa(m, chain_nfa(("s", "s"), m.input_alphabet))
    assert shortest_accepted(inter) == ("s", "s")
    assert shortest_accepted(inter, max_len=1) is None
    empty = intersect_pda_nfa(m, chain_nfa(("s",), m.input_alphabet))
    assert shortest_accepted(empty) is None
    assert shortest_accepted(grammar_to_pda(wpz_grammar())) == ()


def test_shortest_accepted_nontrivial_floor():
    # words over {t} only, equal to the identity in D-infinity: none exist
    # below length 0, and excluding the empty word the shortest is t t^-
    d = load_presentation(SAMPLES / "dinf.json")
    m = wp_pda(d)
    two = make_nfa(
        ["n0", "n1", "n2"],
        m.input_alphabet,
        [("n0", a, "n1") for a in ("t", "t^-")]
        + [("n1", a, "n2") for a in ("t", "t^-")],
        ["n0"],
        ["n2"],
    )
    got = shortest_accepted(intersect_pda_nfa(m, two))
    assert got in {("t", "t^-"), ("t^-", "t")}


# ---------------------------------------------------------------------------
# rational subsets


def test_rational_membership_dinf():
    d = load_presentation(SAMPLES / "dinf.json")
    m = wp_pda(d)
    inv = {"t": "t^-", "t^-": "t", "s": "s^-", "s^-": "s"}
    star = make_nfa(["n"], m.input_alphabet, [("n", "s", "n")], ["n"], ["n"])
    assert rational_member(m, inv, ("s", "s"), star)
    assert rational_member(m, inv, ("s",), star)
    assert rational_member(m, inv, ("t", "s", "t"), star)  # t s t = s here
    assert not rational_member(m, inv, ("t",), star)
    assert not rational_member(m, inv, ("t", "s", "t^-"), star)


def test_rational_membership_dinf_brute_force():
    d = load_presentation(SAMPLES / "dinf.json")
    m = wp_pda(d)
    inv = {"t": "t^-", "t^-": "t", "s": "s^-", "s^-": "s"}
    star = make_nfa(["n"], m.input_alphabet, [("n", "s", "n")], ["n"], ["n"])
    targets = {normal_form(d, ()), normal_form(d, ("s",))}
    for n in range(0, 4):
        for w in itertools.product(m.input_alphabet, repeat=n):
            expect = normal_form(d, w) in targets
            assert rational_member(m, inv, w, star) == expect, w


def test_rational_membership_z_even_powers():
    z = load_presentation(SAMPLES / "z.json")
    m = wp_pda(z)
    inv = {"t": "t^-", "t^-": "t"}
    even = make_nfa(
        ["e", "o"], m.input_alphabet, [("e", "t", "o"), ("o", "t", "e")],
        ["e"], ["e"],
    )
    assert rational_member(m, inv, (), even)
    assert rational_member(m, inv, ("t", "t"), even)
    assert rational_member(m, inv, ("t", "t^-"), even)
    assert not rational_member(m, inv, ("t",), even)
    # the NFA lists only non-negative even powers; t^-2 is not one of them
    assert not rational_member(m, inv, ("t^-", "t^-"), even)


def test_rational_member_validates_inputs():
    z = load_presentation(SAMPLES / "z.json")
    m = wp_pda(z)
    good = {"t": "t^-", "t^-": "t"}
    with pytest.raises(ValueError):
        rational_member(m, {"t": "t"}, (), universal_nfa(m.input_alphabet))
    with pytest.raises(AlphabetMismatch):
        rational_member(m, good, (), universal_nfa(["x"]))
    with pytest.raises(AlphabetMismatch):
        rational_member(m, good, ("x",), universal_nfa(m.input_alphabet))
