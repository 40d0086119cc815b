"""Context-free grammars, Chomsky normal form, and CYK membership."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass


class NotCnf(Exception):
    pass


@dataclass(frozen=True)
class Grammar:
    variables: tuple
    terminals: tuple
    prods: tuple  # pairs (lhs, rhs tuple)
    start: str
    involution: tuple = ()  # optional letter-inverse pairs, for group languages

    def __post_init__(self):
        declared = set(self.variables) | set(self.terminals)
        if set(self.variables) & set(self.terminals):
            raise ValueError("variables and terminals overlap")
        if self.start not in self.variables:
            raise ValueError(f"start symbol {self.start!r} is not a variable")
        for lhs, rhs in self.prods:
            if lhs not in self.variables:
                raise ValueError(f"production head {lhs!r} is not a variable")
            for sym in rhs:
                if sym not in declared:
                    raise ValueError(f"undeclared symbol {sym!r} in a production")
        for a, b in self.involution:
            if a not in self.terminals or b not in self.terminals:
                raise ValueError("involution letters must be terminals")

    def bodies(self, lhs):
        return [rhs for h, rhs in self.prods if h == lhs]


def make_grammar(variables, terminals, prods, start, involution=()) -> Grammar:
    return Grammar(
        tuple(variables),
        tuple(terminals),
        tuple((lhs, tuple(rhs)) for lhs, rhs in prods),
        start,
        tuple((a, b) for a, b in involution),
    )


def grammar_size(g: Grammar) -> int:
    """|V| + |terminals| + total length of production bodies."""
    return len(g.variables) + len(g.terminals) + sum(len(r) for _, r in g.prods)


def involution_map(g: Grammar) -> dict:
    out = {}
    for a, b in g.involution:
        out[a] = b
        out[b] = a
    return out


def is_cnf(g: Grammar) -> bool:
    """Start-separated CNF: A -> BC, A -> a, and optionally start -> empty."""
    has_eps = False
    for lhs, rhs in g.prods:
        if len(rhs) == 0:
            if lhs != g.start:
                return False
            has_eps = True
        elif len(rhs) == 1:
            if rhs[0] not in g.terminals:
                return False
        elif len(rhs) == 2:
            if not all(s in g.variables for s in rhs):
                return False
        else:
            return False
    if has_eps and any(g.start in rhs for _, rhs in g.prods):
        return False
    return True


def _fresh(base: str, used: set) -> str:
    if base not in used:
        used.add(base)
        return base
    for i in itertools.count():
        name = f"{base}{i}"
        if name not in used:
            used.add(name)
            return name


def to_cnf(g: Grammar) -> Grammar:
    """Chomsky normal form by START, TERM, BIN, DEL, UNIT."""
    used = set(g.variables) | set(g.terminals)
    prods = list(dict.fromkeys(g.prods))

    # START: a fresh start symbol never occurring on a right side
    start = _fresh("S0", used)
    prods.insert(0, (start, (g.start,)))

    # TERM: terminals inside long bodies become proxy variables
    proxy = {}
    out = []
    for lhs, rhs in prods:
        if len(rhs) >= 2:
            new = []
            for sym in rhs:
                if sym in g.terminals:
                    if sym not in proxy:
                        proxy[sym] = _fresh(f"T_{sym}", used)
                    new.append(proxy[sym])
                else:
                    new.append(sym)
            out.append((lhs, tuple(new)))
        else:
            out.append((lhs, rhs))
    prods = out + [(v, (a,)) for a, v in proxy.items()]

    # BIN: split bodies longer than two
    out = []
    for lhs, rhs in prods:
        while len(rhs) > 2:
            head = _fresh("B", used)
            out.append((lhs, (rhs[0], head)))
            lhs, rhs = head, rhs[1:]
        out.append((lhs, rhs))
    prods = out

    # DEL: remove nullable occurrences
    nullable = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in prods:
            if lhs not in nullable and all(s in nullable for s in rhs):
                nullable.add(lhs)
                changed = True
    out = []
    for lhs, rhs in prods:
        positions = [i for i, s in enumerate(rhs) if s in nullable]
        for keep in itertools.product([False, True], repeat=len(positions)):
            body = list(rhs)
            for flag, i in zip(keep, positions):
                if not flag:
                    body[i] = None
            body = tuple(s for s in body if s is not None)
            if body or lhs == start:
                out.append((lhs, body))
    prods = list(dict.fromkeys(out))

    # UNIT: shortcut chains of single-variable bodies
    variables = {start}
    for lhs, rhs in prods:
        variables.add(lhs)
        variables.update(s for s in rhs if s not in g.terminals)
    unit = {v: {v} for v in variables}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in prods:
            if len(rhs) == 1 and rhs[0] in variables:
                for v in list(unit):
                    if lhs in unit[v] and rhs[0] not in unit[v]:
                        unit[v].add(rhs[0])
                        changed = True
    out = []
    for v in sorted(variables, key=str):
        for w in sorted(unit[v], key=str):
            for lhs, rhs in prods:
                if lhs != w:
                    continue
                if len(rhs) == 1 and rhs[0] in variables:
                    continue
                if not rhs and v != start:
                    continue
                out.append((v, rhs))
    prods = list(dict.fromkeys(out))

    # drop unreachable symbols for a tidy result
    reach = {start}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in prods:
            if lhs in reach:
                for s in rhs:
                    if s in variables and s not in reach:
                        reach.add(s)
                        changed = True
    prods = [(l, r) for l, r in prods if l in reach]
    variables = [v for v in sorted(reach, key=str)]
    variables.remove(start)
    variables.insert(0, start)

    return make_grammar(variables, g.terminals, prods, start, g.involution)


def cyk_member(g: Grammar, w) -> bool:
    """CYK membership for a grammar in CNF."""
    if not is_cnf(g):
        raise NotCnf("cyk_member needs a grammar in Chomsky normal form")
    w = tuple(w)
    if not w:
        return (g.start, ()) in g.prods
    n = len(w)
    # table[i][l] = variables deriving w[i:i+l]
    table = [[set() for _ in range(n + 1)] for _ in range(n)]
    for i, a in enumerate(w):
        for lhs, rhs in g.prods:
            if rhs == (a,):
                table[i][1].add(lhs)
    for l in range(2, n + 1):
        for i in range(n - l + 1):
            cell = table[i][l]
            for split in range(1, l):
                left, right = table[i][split], table[i + split][l - split]
                for lhs, rhs in g.prods:
                    if len(rhs) == 2 and rhs[0] in left and rhs[1] in right:
                        cell.add(lhs)
    return g.start in table[0][n]


def grammar_from_dict(data) -> Grammar:
    return make_grammar(
        data["V"],
        data["Sigma"],
        [(p["lhs"], p["rhs"]) for p in data["prods"]],
        data["start"],
        data.get("involution", ()),
    )


def grammar_to_dict(g: Grammar) -> dict:
    out = {
        "V": list(g.variables),
        "Sigma": list(g.terminals),
        "start": g.start,
        "prods": [{"lhs": lhs, "rhs": list(rhs)} for lhs, rhs in g.prods],
    }
    if g.involution:
        out["involution"] = [list(p) for p in g.involution]
    return out


def load_grammar(path) -> Grammar:
    with open(path, "r", encoding="utf-8") as fh:
        return grammar_from_dict(json.load(fh))
