"""Generator for a sample presentation of Z/2 * Z/3.

Z/2 * Z/3 is the modular group PSL(2,Z).  Its congruence subgroup of level
two is free of rank two on u = [[1,2],[0,1]] and v = [[1,0],[2,1]], with
index six; the six transversal matrices are built from T = [[1,1],[0,1]]
and U = [[1,0],[1,1]] and are distinguished by their images mod 2.  Every
rule  r·a -> x·s  is computed by matrix arithmetic: s is the transversal
element congruent to mat(r)·mat(a) mod 2, and the free part
mat(r)·mat(a)·mat(s)^-1 is decomposed into u/v syllables by the Euclidean
peeling that the ping-pong structure of the congruence subgroup affords.

The result is frozen in samples/z2z3.json; test_pslgen guards drift.
"""
from __future__ import annotations

T = ((1, 1), (0, 1))
U = ((1, 0), (1, 1))
ID = ((1, 0), (0, 1))

FREE_MATS = {
    "u": ((1, 2), (0, 1)),
    "u^-": ((1, -2), (0, 1)),
    "v": ((1, 0), (2, 1)),
    "v^-": ((1, 0), (-2, 1)),
}


def mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def inv(m):
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def neg(m):
    return tuple(tuple(-x for x in row) for row in m)


def mod2(m):
    return tuple(tuple(x % 2 for x in row) for row in m)


TRANSVERSAL = {
    "1": ID,
    "c": T,
    "d": U,
    "cd": mul(T, U),
    "dc": mul(U, T),
    "cdc": mul(mul(T, U), T),
}


def free_word(m):
    """Write a level-two congruence matrix as a word in u, v (up to sign)."""
    word = []

    def emit(letter, n):
        if n:
            word.extend([letter if n > 0 else letter + "^-"] * abs(n))

    while m[1][0] != 0:
        (a, _), (c, _) = m
        if abs(a) > abs(c):
            n = round(a / (2 * c))
            emit("u", n)
            m = mul(inv_pow("u", n), m)
        else:
            n = round(c / (2 * a))
            emit("v", n)
            m = mul(inv_pow("v", n), m)
    (a, b), _ = m
    emit("u", b // 2 if a == 1 else -b // 2)
    return tuple(word)


def inv_pow(letter, n):
    out = ID
    step = FREE_MATS[letter + "^-"] if n > 0 else FREE_MATS[letter]
    for _ in range(abs(n)):
        out = mul(out, step)
    return out


def mat_of_word(word):
    out = ID
    for letter in word:
        out = mul(out, FREE_MATS[letter])
    return out


def build_z2z3_data():
    reps = [n for n in TRANSVERSAL if n != "1"]
    classes = {mod2(m): n for n, m in TRANSVERSAL.items()}
    assert len(classes) == 6  # a genuine transversal mod 2
    letters = {**FREE_MATS, **{n: TRANSVERSAL[n] for n in reps}}
    rules = []
    for r in reps:
        for a in ["u", "u^-", "v", "v^-"] + reps:
            m = mul(TRANSVERSAL[r], letters[a])
            s = classes[mod2(m)]
            x = mul(m, inv(TRANSVERSAL[s]))
            word = free_word(x)
            got = mat_of_word(word)
            assert got == x or got == neg(x), (r, a)
            rules.append({"r": r, "a": a, "word": list(word), "rep": s})
    return {"X": ["u", "v"], "S": ["1", "c", "d", "cd", "dc", "cdc"], "rules": rules}


def psl2_oracle(p):
    """Word-problem oracle: multiply matrices, compare with ±identity."""
    from vfk.scankernel import Oracle

    letters = p.sigma
    mats = {}
    for name, m in {**FREE_MATS, **TRANSVERSAL}.items():
        if name == "1":
            continue
        mats[name] = m
        mats[name + "^-"] = inv(m)

    def step(state, c):
        m = mul(state, mats[letters[c]])
        # canonical sign so that ±m share a state
        for row in m:
            for x in row:
                if x:
                    return m if x > 0 else neg(m)
        return m

    return Oracle(initial=ID, step=step, accepts=lambda m: m in (ID, neg(ID)))


if __name__ == "__main__":
    import json
    import pathlib

    data = build_z2z3_data()
    out = pathlib.Path(__file__).resolve().parent.parent / "samples" / "z2z3.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {out} with {len(data['rules'])} rules")
