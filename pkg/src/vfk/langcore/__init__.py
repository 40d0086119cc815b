"""Context-free grammars, finite automata, and pushdown automata.

Everything needed for word problems as formal languages: CNF conversion
and CYK membership, grammar-to-PDA conversion, inverse homomorphisms,
PDA/NFA products, emptiness, and rational-subset membership.
"""
from .grammar import Grammar, NotCnf, cyk_member, grammar_size, is_cnf, to_cnf
from .grammar import grammar_from_dict, grammar_to_dict, involution_map
from .grammar import load_grammar, make_grammar
from .nfa import Nfa, chain_nfa, flower_nfa, make_nfa, nfa_accepts
from .nfa import enumerate_nfa_words, load_nfa, nfa_from_dict, nfa_to_dict
from .nfa import prepend_word, product_nfa, universal_nfa
from .pda import AlphabetMismatch, Pda, build_wp_pda, grammar_to_pda, make_pda
from .pda import intersect_pda_nfa, inverse_hom, normalize_pda, pda_accepts
from .pda import pda_empty, shortest_accepted, simulate_pda
from .rational import rational_member

__all__ = [
    "AlphabetMismatch",
    "Grammar",
    "Nfa",
    "NotCnf",
    "Pda",
    "build_wp_pda",
    "chain_nfa",
    "cyk_member",
    "enumerate_nfa_words",
    "flower_nfa",
    "grammar_from_dict",
    "grammar_size",
    "grammar_to_dict",
    "grammar_to_pda",
    "intersect_pda_nfa",
    "inverse_hom",
    "involution_map",
    "is_cnf",
    "load_grammar",
    "load_nfa",
    "make_grammar",
    "make_nfa",
    "make_pda",
    "nfa_accepts",
    "nfa_from_dict",
    "nfa_to_dict",
    "normalize_pda",
    "pda_accepts",
    "pda_empty",
    "prepend_word",
    "product_nfa",
    "rational_member",
    "shortest_accepted",
    "simulate_pda",
    "to_cnf",
    "universal_nfa",
]
