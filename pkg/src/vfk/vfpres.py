"""Virtually free presentations: rule tables, normal forms, and the word problem.

A presentation consists of free generators X, a finite set S of coset
representative names containing the distinguished identity name "1", and a
total rule table sending (r, a) with r in S\\{1} and a in X, X^-, S\\{1} to a
pair (x_word, rep).  Oriented left to right, the rules together with free
reduction form a confluent rewriting system, and every word over the working
alphabet has a unique normal form  x * s  with x freely reduced over X and
s in S.  The normal form is computed in a single left-to-right pass.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass

INVERSE_SUFFIX = "^-"
IDENTITY = "1"

Word = tuple[str, ...]


class PresentationError(Exception):
    """Base class for presentation validation and evaluation errors."""


class UnknownSymbol(PresentationError):
    def __init__(self, symbol, where="word"):
        self.symbol = symbol
        super().__init__(f"unknown symbol {symbol!r} in {where}")


class NotAGroup(PresentationError):
    """The rule table does not describe a group of coset representatives."""

    def __init__(self, rep, detail):
        self.rep = rep
        super().__init__(f"representative {rep!r}: {detail}")


class NonReducedRuleWord(PresentationError):
    def __init__(self, r, a, word):
        self.rule = (r, a)
        self.word = word
        super().__init__(
            f"rule ({r!r}, {a!r}) has non freely reduced word {' '.join(word)!r}"
        )


class NotConfluent(PresentationError):
    """Two rewriting orders produced distinct normal forms for one word."""

    def __init__(self, word, left, right):
        self.word = word
        self.left = left
        self.right = right
        super().__init__(
            f"word {format_word(word)!r} rewrites to both "
            f"{format_word(left)!r} and {format_word(right)!r}"
        )


# ---------------------------------------------------------------------------
# letters and words


def inverse_letter(a: str) -> str:
    """Formal inverse of a letter name ("t" <-> "t^-")."""
    if a.endswith(INVERSE_SUFFIX):
        return a[: -len(INVERSE_SUFFIX)]
    return a + INVERSE_SUFFIX


def invert_word(word) -> Word:
    """Reverse a word and invert each letter."""
    return tuple(inverse_letter(a) for a in reversed(tuple(word)))


def free_reduce(word) -> Word:
    """Cancel all adjacent inverse pairs."""
    out: list[str] = []
    for a in word:
        if out and out[-1] == inverse_letter(a):
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def is_freely_reduced(word) -> bool:
    word = tuple(word)
    return all(word[i + 1] != inverse_letter(word[i]) for i in range(len(word) - 1))


def parse_word(text: str) -> Word:
    """Split a whitespace-separated word; "1" parses to the empty word."""
    letters = tuple(text.split())
    if letters == (IDENTITY,):
        return ()
    return letters


def format_word(word) -> str:
    word = tuple(word)
    return " ".join(word) if word else IDENTITY


def _as_word(w) -> Word:
    if isinstance(w, str):
        return parse_word(w)
    return tuple(w)


@dataclass(frozen=True)
class NormalForm:
    free_part: Word
    rep: str

    @property
    def is_identity(self) -> bool:
        return not self.free_part and self.rep == IDENTITY

    def as_word(self) -> Word:
        if self.rep == IDENTITY:
            return self.free_part
        return self.free_part + (self.rep,)

    def __str__(self) -> str:
        return format_word(self.as_word())


# ---------------------------------------------------------------------------
# the presentation proper


class VfPresentation:
    """A validated presentation.  Use validate() to construct one.

    Attributes
    ----------
    X : tuple of generator names
    S : tuple of representative names, "1" first
    rules : dict mapping (r, a) -> (x_word, rep), the table as given
    sigma : working alphabet X + X^- + (S\\{1}) + (S\\{1})^-, in that order
    """

    def __init__(self, X, S, rules):
        self.X = tuple(X)
        self.S = (IDENTITY,) + tuple(n for n in S if n != IDENTITY)
        self.rules = dict(rules)
        self.x_letters = self.X + tuple(inverse_letter(x) for x in self.X)
        reps = tuple(n for n in self.S if n != IDENTITY)
        self.sigma = self.x_letters + reps + tuple(inverse_letter(r) for r in reps)
        # Formal inverses of representatives get derived rules: for each s the
        # map r' -> rep of r'·s permutes S, so  r·s^-  rewrites to  x^-1 · r'
        # where r' is the unique solution of  r'·s  ->  x · r.
        self._sbar_rules = self._derive_inverse_rules()
        self._scan = _build_scan_table(self)

    def _coset_map(self, s: str) -> dict:
        """rep of r'·s, as a map over all of S (identity acts trivially)."""
        out = {IDENTITY: s}
        for r in self.S[1:]:
            out[r] = self.rules[(r, s)][1]
        return out

    def _derive_inverse_rules(self):
        derived = {}
        for s in self.S[1:]:
            cmap = self._coset_map(s)
            image = set(cmap.values())
            if image != set(self.S):
                missing = sorted(set(self.S) - image)[0]
                raise NotAGroup(
                    s, f"right multiplication misses representative {missing!r}"
                )
            back = {v: k for k, v in cmap.items()}
            for r in self.S:
                src = back[r]
                x_word = () if src == IDENTITY else self.rules[(src, s)][0]
                derived[(r, inverse_letter(s))] = (invert_word(x_word), src)
        return derived

    def rule(self, r: str, a: str):
        """Full rewrite rule (x_word, rep) for state r reading letter a."""
        if (r, a) in self.rules:
            return self.rules[(r, a)]
        if (r, a) in self._sbar_rules:
            return self._sbar_rules[(r, a)]
        raise KeyError((r, a))

    def __repr__(self):
        return (
            f"VfPresentation(X={list(self.X)}, S={list(self.S)}, "
            f"{len(self.rules)} rules)"
        )


@dataclass
class ScanTable:
    """Integer-coded transition table for the left-to-right scan.

    letters[i] names letter code i; partner[i] is the code of its formal
    inverse.  entry[rep][code] = (push, new_rep): push letter codes onto the
    freely reduced prefix (with cancellation) and switch representative.
    Representative 0 is the identity.
    """

    letters: tuple
    code: dict
    partner: tuple
    reps: tuple
    rep_id: dict
    entry: tuple
    n_x: int  # codes < 2*n_x are free-part letters

    def scan(self, codes):
        stack: list[int] = []
        rep = 0
        for c in codes:
            push, rep = self.entry[rep][c]
            for d in push:
                if stack and stack[-1] == self.partner[d]:
                    stack.pop()
                else:
                    stack.append(d)
        return tuple(stack), rep

    def encode(self, word, where="word"):
        out = []
        for a in word:
            if a == IDENTITY or a == inverse_letter(IDENTITY):
                continue  # the identity representative reads as a no-op
            if a not in self.code:
                raise UnknownSymbol(a, where)
            out.append(self.code[a])
        return out

    def decode(self, codes) -> Word:
        return tuple(self.letters[c] for c in codes)


def _build_scan_table(p: VfPresentation) -> ScanTable:
    letters = p.sigma
    code = {a: i for i, a in enumerate(letters)}
    partner = tuple(code[inverse_letter(a)] for a in letters)
    reps = p.S
    rep_id = {r: i for i, r in enumerate(reps)}
    n_x = len(p.X)
    entry = []
    for r in reps:
        row = []
        for i, a in enumerate(letters):
            if r == IDENTITY and i < 2 * n_x:
                row.append(((i,), 0))  # push the free letter
            elif r == IDENTITY and a in rep_id:
                row.append(((), rep_id[a]))
            else:
                if (r, a) in p.rules:
                    x_word, s = p.rules[(r, a)]
                else:
                    x_word, s = p._sbar_rules[(r, a)]
                row.append((tuple(code[x] for x in x_word), rep_id[s]))
        entry.append(tuple(row))
    return ScanTable(letters, code, partner, reps, rep_id, tuple(entry), n_x)


# ---------------------------------------------------------------------------
# validation


def validate(data) -> VfPresentation:
    """Validate raw presentation data and return a VfPresentation.

    data is a dict with keys "X", "S" and "rules" as in the file format.
    Checks: well-formed names, a total deterministic rule table with freely
    reduced rule words, existence of inverses among the representatives
    (NotAGroup otherwise), and confluence of the left-to-right system by
    critical pair analysis (NotConfluent with a witness otherwise).
    """
    if not isinstance(data, dict):
        raise ValueError("presentation data must be a dict")
    X = list(data.get("X", ()))
    S = list(data.get("S", ()))
    raw_rules = data.get("rules", [])

    for name in X + S:
        if not isinstance(name, str) or not name or name.split() != [name]:
            raise ValueError(f"bad symbol name {name!r}")
        if name.endswith(INVERSE_SUFFIX):
            raise ValueError(f"symbol name {name!r} uses the reserved suffix ^-")
    if IDENTITY not in S:
        raise ValueError('S must contain the identity representative "1"')
    if IDENTITY in X:
        raise ValueError('"1" cannot be a generator name')
    if len(set(X)) != len(X) or len(set(S)) != len(S):
        raise ValueError("duplicate symbol names")
    if set(X) & set(S):
        raise ValueError(f"X and S overlap: {sorted(set(X) & set(S))}")

    reps = [r for r in S if r != IDENTITY]
    x_letters = set(X) | {inverse_letter(x) for x in X}
    domain_letters = list(X) + [inverse_letter(x) for x in X] + reps

    rules = {}
    for item in raw_rules:
        r, a = item["r"], item["a"]
        word = tuple(item.get("word", ()))
        rep = item["rep"]
        if r not in reps:
            raise UnknownSymbol(r, "rule left side (must be a representative)")
        if a not in domain_letters:
            raise UnknownSymbol(a, f"rule ({r!r}, ...) left side")
        for letter in word:
            if letter not in x_letters:
                raise UnknownSymbol(letter, f"rule ({r!r}, {a!r}) word")
        if rep not in S:
            raise UnknownSymbol(rep, f"rule ({r!r}, {a!r}) representative")
        if (r, a) in rules:
            raise ValueError(f"duplicate rule for ({r!r}, {a!r})")
        if not is_freely_reduced(word):
            raise NonReducedRuleWord(r, a, word)
        rules[(r, a)] = (word, rep)

    missing = [(r, a) for r in reps for a in domain_letters if (r, a) not in rules]
    if missing:
        r, a = missing[0]
        raise ValueError(
            f"rule table is not total: no rule for ({r!r}, {a!r}) "
            f"({len(missing)} missing)"
        )

    # property (i): every representative has an inverse in S
    for r in reps:
        if not any(rules[(r2, r)][1] == IDENTITY for r2 in reps):
            raise NotAGroup(r, "no representative r' with rep of r'·r equal to 1")

    p = VfPresentation(X, S, rules)  # may raise NotAGroup while deriving inverses
    _check_confluence(p)
    return p


def _ltr_normal_form(p: VfPresentation, word) -> Word:
    codes = p._scan.encode(word)
    stack, rep = p._scan.scan(codes)
    out = p._scan.decode(stack)
    if rep:
        out = out + (p._scan.reps[rep],)
    return out


def _check_confluence(p: VfPresentation) -> None:
    """Critical pair analysis of the left-to-right rules plus free reduction.

    Every overlap of two redexes spans three letters.  For each overlap both
    one-step completions are rewritten to their left-to-right normal forms; a
    disagreement yields a genuine pair of distinct irreducible descendants of
    the overlap word, which is exactly a confluence witness.
    """
    reps = p.S[1:]
    domain = list(p.x_letters) + list(reps)

    def check(word, u, v):
        nu, nv = _ltr_normal_form(p, u), _ltr_normal_form(p, v)
        if nu != nv:
            raise NotConfluent(word, nu, nv)

    for r in reps:
        for a in domain:
            x_word, s = p.rules[(r, a)]
            completed = x_word if s == IDENTITY else x_word + (s,)
            if a in p.S:
                # rule overlapping a rule:  r a a'
                for a2 in domain:
                    inner_x, inner_s = p.rules[(a, a2)]
                    inner = inner_x if inner_s == IDENTITY else inner_x + (inner_s,)
                    check((r, a, a2), completed + (a2,), (r,) + inner)
            else:
                # rule overlapping a free reduction:  r a a^-
                abar = inverse_letter(a)
                check((r, a, abar), completed + (abar,), (r,))
    # overlapping free reductions  c c^- c  join at c on both sides; nothing
    # to check beyond the table-driven shapes above.


# ---------------------------------------------------------------------------
# evaluation


def normal_form(p: VfPresentation, w) -> NormalForm:
    """Unique normal form of a word, by the single left-to-right pass."""
    codes = p._scan.encode(_as_word(w))
    stack, rep = p._scan.scan(codes)
    return NormalForm(p._scan.decode(stack), p._scan.reps[rep])


def word_problem(p: VfPresentation, w) -> bool:
    """True iff the word represents the identity."""
    return normal_form(p, w).is_identity


def size(p: VfPresentation) -> int:
    """The size measure |S|(2|X| + 2|S|) * max(|x_word| + 1)."""
    longest = max((len(x) + 1 for x, _ in p.rules.values()), default=1)
    return len(p.S) * (2 * len(p.X) + 2 * len(p.S)) * longest


def wp_pda(p: VfPresentation):
    """Deterministic pushdown automaton accepting exactly the identity words."""
    from .langcore.pda import build_wp_pda

    return build_wp_pda(p)


# ---------------------------------------------------------------------------
# positional rewriting (any strategy reaches the same normal form)


def _redexes(p: VfPresentation, word):
    """All rewritable positions: free cancellations, rule applications at a
    representative letter, and eliminations of an inverse representative."""
    xs = set(p.x_letters)
    out = []
    for i, a in enumerate(word):
        if a in xs:
            if i + 1 < len(word) and word[i + 1] == inverse_letter(a):
                out.append((i, 2, ()))
        elif a in p.S:
            if i + 1 < len(word):
                x_word, s = p.rule(a, word[i + 1])
                repl = x_word if s == IDENTITY else x_word + (s,)
                out.append((i, 2, repl))
        else:  # inverse representative: replace by its own normal form
            x_word, s = p._sbar_rules[(IDENTITY, a)]
            repl = x_word if s == IDENTITY else x_word + (s,)
            out.append((i, 1, repl))
    return out


def rewrite(p: VfPresentation, w, strategy="leftmost", rng=None) -> NormalForm:
    """Rewrite to normal form applying one redex at a time.

    strategy is "leftmost", "rightmost" or "random"; all three terminate in
    the same normal form on a validated presentation (confluence).
    """
    word = list(_as_word(w))
    for a in word:
        if a not in p._scan.code and a not in (IDENTITY, inverse_letter(IDENTITY)):
            raise UnknownSymbol(a)
    word = [a for a in word if a not in (IDENTITY, inverse_letter(IDENTITY))]
    if rng is None:
        rng = random.Random(0)
    guard = 4 * (len(word) + 2) ** 2 * max(len(p.S), 2) ** 2
    for _ in range(guard):
        reds = _redexes(p, word)
        if not reds:
            break
        if strategy == "leftmost":
            i, n, repl = reds[0]
        elif strategy == "rightmost":
            i, n, repl = reds[-1]
        elif strategy == "random":
            i, n, repl = rng.choice(reds)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        word[i : i + n] = repl
    else:
        raise RuntimeError("rewriting did not terminate (table is not valid)")
    if word and word[-1] in p.S:
        return NormalForm(tuple(word[:-1]), word[-1])
    return NormalForm(tuple(word), IDENTITY)


# ---------------------------------------------------------------------------
# serialization


def to_dict(p: VfPresentation) -> dict:
    return {
        "X": list(p.X),
        "S": list(p.S),
        "rules": [
            {"r": r, "a": a, "word": list(x_word), "rep": s}
            for (r, a), (x_word, s) in sorted(p.rules.items())
        ],
    }


def load_presentation(path) -> VfPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return validate(json.load(fh))
