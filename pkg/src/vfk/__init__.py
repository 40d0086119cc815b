"""Decision procedures for virtually free groups.

Subpackages/modules:

- fingroup: finite groups as multiplication tables
- vfpres: virtually free presentations, normal forms, word problem
- langcore: grammars, NFAs, PDAs, rational-subset membership
- gog: graphs of groups and their fundamental-group words
- verify: the decomposition verifier (homomorphism / surjectivity / injectivity)
- slide: slide moves and the decomposition-isomorphism search
- synth: bounded guess-and-verify synthesis of decompositions
- boundscalc: the bound-constant calculators
- cayley: Cayley-graph balls, cuts, components, triangulations
- cli: the `vfk` command-line front end
"""

__version__ = "0.1.0"
