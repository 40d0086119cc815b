"""Command-line front end.

One executable, `vfk`, with a subcommand per module operation.  Exit
codes follow a single convention everywhere:

    0   success / yes
    1   no
    2   bad input (file, flags, validation)
    3   inconclusive / budget exhausted / window too small

Every subcommand has a human mode and a machine mode (`--json`).  All
output is deterministic: sorted keys, canonical symbol order.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cayley
from .boundscalc import NotCnf, bound_table, bounds_for_grammar, bounds_for_presentation
from .fingroup import validate_table
from .gog import (
    IllFormed,
    NotBasedAtP,
    UnknownSymbol,
    gog_to_dict,
    gog_wp,
    is_reduced_gog,
    load_gog,
    reduce_word,
)
from .langcore.grammar import cyk_member, grammar_from_dict, grammar_to_dict, load_grammar, to_cnf
from .langcore.nfa import load_nfa
from .langcore.pda import AlphabetMismatch
from .langcore.rational import rational_member
from .slide import (
    InvalidMove,
    NotReduced,
    ResultNotReduced,
    SlideMove,
    apply_slide,
    enumerate_slides,
    iso_decide,
)
from .synth import SynthBudget, synthesize
from .verify import (
    GogHom,
    grammar_target,
    hom_to_dict,
    load_hom,
    presentation_target,
    verify,
)
from .vfpres import (
    format_word,
    load_presentation,
    normal_form,
    parse_word,
    size,
    validate,
    word_problem,
)


class CliError(Exception):
    """Carries the exit code alongside the message."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# input loading


def _read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise CliError(2, f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise CliError(2, f"{path} is not valid JSON: {e}")


def _presentation(path):
    try:
        return validate(_read_json(path))
    except ValueError as e:
        raise CliError(2, f"{path}: {e}")


def _group_file(path):
    """Sniff a presentation ({X,S,rules}) or a grammar ({prods,...})."""
    data = _read_json(path)
    if not isinstance(data, dict):
        raise CliError(2, f"{path}: expected a JSON object")
    try:
        if "prods" in data:
            return "grammar", grammar_from_dict(data)
        return "presentation", validate(data)
    except (ValueError, KeyError) as e:
        raise CliError(2, f"{path}: {e}")


def _wp_target(path):
    kind, obj = _group_file(path)
    try:
        target = presentation_target(obj) if kind == "presentation" else grammar_target(obj)
    except ValueError as e:
        raise CliError(2, f"{path}: {e}")
    return kind, obj, target


def _gog(path):
    try:
        return load_gog(path)
    except OSError as e:
        raise CliError(2, f"cannot read {path}: {e}")
    except (IllFormed, ValueError, KeyError) as e:
        raise CliError(2, f"{path}: {e}")


def _emit(args, doc, lines):
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _words(ws):
    return [format_word(w) for w in ws]


# ---------------------------------------------------------------------------
# presentation commands


def _cmd_validate(args):
    p = _presentation(args.file)
    doc = {
        "ok": True,
        "X": list(p.X),
        "S": list(p.S),
        "sigma": list(p.sigma),
        "size": size(p),
    }
    _emit(args, doc, [f"ok: |X|={len(p.X)} |S|={len(p.S)} |sigma|={len(p.sigma)} size={size(p)}"])
    return 0


def _cmd_nf(args):
    p = _presentation(args.file)
    try:
        nf = normal_form(p, parse_word(args.word))
    except (ValueError, KeyError) as e:
        raise CliError(2, str(e))
    doc = {
        "word": args.word,
        "normal_form": list(nf.as_word()),
        "trivial": nf.is_identity,
    }
    _emit(args, doc, [format_word(nf.as_word())])
    return 0


def _cmd_wp(args):
    p = _presentation(args.file)
    try:
        trivial = word_problem(p, parse_word(args.word))
    except (ValueError, KeyError) as e:
        raise CliError(2, str(e))
    _emit(args, {"trivial": trivial}, ["trivial" if trivial else "nontrivial"])
    return 0 if trivial else 1


def _cmd_size(args):
    p = _presentation(args.file)
    _emit(args, {"size": size(p)}, [str(size(p))])
    return 0


# ---------------------------------------------------------------------------
# language commands


def _cmd_grammar_cnf(args):
    try:
        g = to_cnf(load_grammar(args.file))
    except OSError as e:
        raise CliError(2, str(e))
    except (ValueError, KeyError) as e:
        raise CliError(2, f"{args.file}: {e}")
    doc = grammar_to_dict(g)
    lines = [f"{lhs} -> {' '.join(rhs) if rhs else '<empty>'}" for lhs, rhs in g.prods]
    _emit(args, doc, lines)
    return 0


def _cmd_grammar_member(args):
    try:
        g = to_cnf(load_grammar(args.file))
    except OSError as e:
        raise CliError(2, str(e))
    except (ValueError, KeyError) as e:
        raise CliError(2, f"{args.file}: {e}")
    w = parse_word(args.word)
    bad = [a for a in w if a not in g.terminals]
    if bad:
        raise CliError(2, f"letter {bad[0]!r} outside the grammar alphabet")
    member = cyk_member(g, w)
    _emit(args, {"member": member}, ["yes" if member else "no"])
    return 0 if member else 1


def _cmd_member(args):
    _kind, _obj, target = _wp_target(args.wp)
    try:
        n = load_nfa(args.nfa)
    except OSError as e:
        raise CliError(2, str(e))
    except (ValueError, KeyError) as e:
        raise CliError(2, f"{args.nfa}: {e}")
    try:
        member = rational_member(target.pda(), target.inv, parse_word(args.word), n)
    except AlphabetMismatch as e:
        raise CliError(2, str(e))
    _emit(args, {"member": member}, ["yes" if member else "no"])
    return 0 if member else 1


# ---------------------------------------------------------------------------
# graph-of-groups commands


def _cmd_gog_check(args):
    g = _gog(args.file)
    reduced, witness = is_reduced_gog(g)
    doc = {
        "ok": True,
        "vertices": {v: g.vertex_tables[v].order for v in g.vertex_order},
        "edges": list(g.edge_order),
        "reduced": reduced,
    }
    lines = [
        f"ok: {len(g.vertex_order)} vertices, {len(g.edge_order) // 2} edges",
        "reduced" if reduced else f"not reduced (edge {witness})",
    ]
    _emit(args, doc, lines)
    return 0


def _cmd_gog_reduce(args):
    g = _gog(args.file)
    try:
        r = reduce_word(g, parse_word(args.word))
    except UnknownSymbol as e:
        raise CliError(2, str(e))
    _emit(args, {"reduced": list(r)}, [format_word(r)])
    return 0


def _cmd_gog_wp(args):
    g = _gog(args.file)
    if args.base not in g.vertex_order:
        raise CliError(2, f"base {args.base!r} is not a vertex")
    try:
        trivial = gog_wp(g, args.base, parse_word(args.word))
    except NotBasedAtP as e:
        raise CliError(2, f"word not based at {args.base}: {e}")
    except UnknownSymbol as e:
        raise CliError(2, str(e))
    _emit(args, {"trivial": trivial}, ["trivial" if trivial else "nontrivial"])
    return 0 if trivial else 1


# ---------------------------------------------------------------------------
# verification and synthesis


def _cmd_verify(args):
    _kind, _obj, target = _wp_target(args.group)
    g = _gog(args.gog)
    try:
        base, images = load_hom(args.hom)
    except OSError as e:
        raise CliError(2, str(e))
    except (ValueError, KeyError) as e:
        raise CliError(2, f"{args.hom}: {e}")
    if base not in g.vertex_order:
        raise CliError(2, f"base {base!r} is not a vertex of the graph")
    try:
        h = GogHom(g, images, target)
    except ValueError as e:
        raise CliError(2, str(e))
    rep = verify(h, base)
    doc = {"ok": rep.ok, "stage": rep.stage, "witness": _json_safe(rep.witness)}
    if rep.ok:
        _emit(args, doc, ["isomorphism"])
        return 0
    _emit(args, doc, [f"failed at {rep.stage}: {rep.witness!r}"])
    return 1


def _json_safe(x):
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(_json_safe(v) for v in x)
    return x


def _cmd_slide_list(args):
    g = _gog(args.file)
    moves = enumerate_slides(g)
    doc = [{"x": m.x, "y": m.y, "g": m.g} for m in moves]
    _emit(args, doc, [f"slide x={m.x} across y={m.y} with g={m.g}" for m in moves])
    return 0


def _cmd_slide_apply(args):
    g = _gog(args.file)
    try:
        out = apply_slide(g, SlideMove(args.x, args.y, args.g))
    except InvalidMove as e:
        raise CliError(2, str(e))
    except ResultNotReduced as e:
        raise CliError(2, f"result is not reduced: {e}")
    print(json.dumps(gog_to_dict(out), indent=2, sort_keys=True))
    return 0


def _cmd_iso(args):
    g1, g2 = _gog(args.gog1), _gog(args.gog2)
    try:
        verdict = iso_decide(g1, g2, max_depth=args.max_depth)
    except NotReduced as e:
        raise CliError(2, f"{e.which} input is not reduced (edge {e.edge})")
    doc = {
        "kind": verdict.kind,
        "moves": [{"x": m.x, "y": m.y, "g": m.g} for m in verdict.moves],
        "detail": verdict.detail,
    }
    lines = [verdict.kind]
    if verdict.kind == "iso":
        lines += [f"  slide x={m.x} across y={m.y} with g={m.g}" for m in verdict.moves]
    elif verdict.detail:
        lines.append(f"  {verdict.detail}")
    _emit(args, doc, lines)
    return {"iso": 0, "not-iso": 1}.get(verdict.kind, 3)


def _cmd_synth(args):
    kind, obj, _target = _wp_target(args.group)
    catalog = ()
    if args.catalog:
        raw = _read_json(args.catalog)
        try:
            catalog = tuple(
                validate_table(entry["table"], entry.get("name", f"G{i}"))
                for i, entry in enumerate(raw)
            )
        except (ValueError, KeyError, TypeError) as e:
            raise CliError(2, f"{args.catalog}: {e}")
    try:
        budget = SynthBudget(
            max_vertices=args.max_vertices,
            max_group_order=args.max_order,
            max_edges=args.max_edges,
            max_image_length=args.max_image_len,
            catalog=catalog,
        )
    except ValueError as e:
        raise CliError(2, str(e))
    found = synthesize(obj, budget)
    if found is None:
        print("budget exhausted", file=sys.stderr)
        return 3
    gog, h = found
    base = gog.vertex_order[0]
    doc = {"gog": gog_to_dict(gog), "hom": hom_to_dict(base, h.images)}
    if args.out:
        gog_path = f"{args.out}.gog.json"
        hom_path = f"{args.out}.hom.json"
        for path, part in ((gog_path, doc["gog"]), (hom_path, doc["hom"])):
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(part, fh, indent=2, sort_keys=True)
                fh.write("\n")
        _emit(args, doc, [f"wrote {gog_path}", f"wrote {hom_path}"])
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_bounds(args):
    kind, obj = _group_file(args.file)
    try:
        bs = bounds_for_presentation(obj) if kind == "presentation" else bounds_for_grammar(obj)
    except NotCnf as e:
        raise CliError(2, str(e))
    doc = {
        "source": bs.source,
        "N": bs.N,
        "d": bs.d,
        "k": bs.k,
        "K": bs.K,
        "R": bs.R,
        "Xi": bs.Xi,
        "Theta": bs.Theta,
        "Lambda": bs.Lambda,
        "phi_len": bs.phi_len,
    }
    if bs.Xi_sharp is not None:
        doc["Xi_sharp"] = bs.Xi_sharp
    _emit(args, doc, bound_table(bs).splitlines())
    return 0


# ---------------------------------------------------------------------------
# cayley commands


def _cmd_cayley_ball(args):
    p = _presentation(args.file)
    try:
        ball = cayley.build_ball(p, args.radius, cap=args.cap)
    except ValueError as e:
        raise CliError(2, str(e))
    except cayley.ExplosionGuard as e:
        print(str(e), file=sys.stderr)
        return 3
    dot = cayley.to_dot(ball)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot + "\n")
        _emit(
            args,
            {"vertices": len(ball), "edges": len(ball.edges) // 2, "wrote": args.dot},
            [f"wrote {args.dot} ({len(ball)} vertices)"],
        )
        return 0
    doc = {
        "radius": ball.radius,
        "vertices": _words(ball.vertices),
        "distances": {format_word(v): d for v, d in ball.distance.items()},
        "edges": [[format_word(g), a, format_word(h)] for g, a, h in ball.edges],
    }
    _emit(args, doc, dot.splitlines())
    return 0


def _cmd_cut(args):
    p = _presentation(args.file)
    try:
        c = cayley.prefix_cut(p, parse_word(args.prefix))
    except ValueError as e:
        raise CliError(2, str(e))
    try:
        rep = cayley.cut_boundary(p, c, args.radius, cap=args.cap)
    except cayley.NotStabilized as e:
        print(f"{e}; increase -r", file=sys.stderr)
        return 3
    except cayley.ExplosionGuard as e:
        print(str(e), file=sys.stderr)
        return 3
    doc = {
        "prefix": args.prefix,
        "radius": rep.radius,
        "weight": rep.weight,
        "edges": [[format_word(g), a, format_word(h)] for g, a, h in rep.dedges],
        "inner_boundary": sorted(_words(rep.inner)),
        "vertex_boundary": sorted(_words(rep.beta)),
    }
    lines = [f"weight {rep.weight}"] + [
        f"  {format_word(g)} --{a}--> {format_word(h)}" for g, a, h in rep.dedges
    ]
    _emit(args, doc, lines)
    return 0


def _cmd_components(args):
    p = _presentation(args.file)
    try:
        comps = cayley.component_cuts(p, args.radius, args.probe, cap=args.cap)
    except ValueError as e:
        raise CliError(2, str(e))
    except cayley.ExplosionGuard as e:
        print(str(e), file=sys.stderr)
        return 3
    doc = [
        {
            "size": len(c.vertices),
            "boundary": _words(c.boundary),
            "diam": c.diam,
        }
        for c in comps
    ]
    lines = [f"{len(comps)} components"] + [
        f"  size={len(c.vertices)} diam(boundary)={c.diam} boundary={_words(c.boundary)}"
        for c in comps
    ]
    _emit(args, doc, lines)
    return 0


def _cmd_triangulate(args):
    p = _presentation(args.file)
    try:
        seq = [normal_form(p, parse_word(w)).as_word() for w in args.seq]
    except (ValueError, KeyError) as e:
        raise CliError(2, str(e))
    radius = max((len(w) for w in seq), default=0)
    try:
        ball = cayley.build_ball(p, radius, cap=args.cap)
    except cayley.ExplosionGuard as e:
        print(str(e), file=sys.stderr)
        return 3
    try:
        chords = cayley.triangulate_tree_sequence(ball, seq, args.k)
    except cayley.NotATree:
        raise CliError(2, "the Cayley graph of this presentation is not a tree")
    except cayley.StepTooLong as e:
        raise CliError(2, str(e))
    except ValueError as e:
        raise CliError(2, str(e))
    doc = {"chords": [list(c) for c in chords], "n": len(seq) - 1}
    lines = [f"{len(chords)} chords"] + [f"  {i} - {j}" for i, j in chords]
    _emit(args, doc, lines)
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=cayley.DEFAULT_CAP, help="explosion-guard vertex cap")
    common.add_argument("--seed", type=int, default=None, help="accepted and ignored (everything is deterministic)")

    top = argparse.ArgumentParser(prog="vfk", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="cmd", required=True)

    def leaf(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = leaf("validate", _cmd_validate, help="check a presentation file")
    sp.add_argument("file")

    sp = leaf("nf", _cmd_nf, help="normal form of a word")
    sp.add_argument("file")
    sp.add_argument("word")

    sp = leaf("wp", _cmd_wp, help="word problem: is the word trivial?")
    sp.add_argument("file")
    sp.add_argument("word")

    sp = leaf("size", _cmd_size, help="presentation size measure")
    sp.add_argument("file")

    gram = sub.add_parser("grammar", help="context-free grammar tools")
    gsub = gram.add_subparsers(dest="sub", required=True)
    sp = gsub.add_parser("cnf", parents=[common], help="convert to Chomsky normal form")
    sp.set_defaults(fn=_cmd_grammar_cnf)
    sp.add_argument("file")
    sp = gsub.add_parser("member", parents=[common], help="CYK membership")
    sp.set_defaults(fn=_cmd_grammar_member)
    sp.add_argument("file")
    sp.add_argument("word")

    sp = leaf("member", _cmd_member, help="rational-subset membership relative to a word problem")
    sp.add_argument("--wp", required=True, help="presentation or grammar file")
    sp.add_argument("--nfa", required=True)
    sp.add_argument("word")

    gog = sub.add_parser("gog", help="graph-of-groups tools")
    gog_sub = gog.add_subparsers(dest="sub", required=True)
    sp = gog_sub.add_parser("check", parents=[common], help="validate a graph-of-groups file")
    sp.set_defaults(fn=_cmd_gog_check)
    sp.add_argument("file")
    sp = gog_sub.add_parser("reduce", parents=[common], help="reduce a groupoid word")
    sp.set_defaults(fn=_cmd_gog_reduce)
    sp.add_argument("file")
    sp.add_argument("word")
    sp = gog_sub.add_parser("wp", parents=[common], help="fundamental-group word problem")
    sp.set_defaults(fn=_cmd_gog_wp)
    sp.add_argument("file")
    sp.add_argument("word")
    sp.add_argument("--base", required=True)

    sp = leaf("verify", _cmd_verify, help="verify a decomposition homomorphism")
    sp.add_argument("--group", required=True, help="presentation or grammar file")
    sp.add_argument("--gog", required=True)
    sp.add_argument("--hom", required=True)

    slide = sub.add_parser("slide", help="slide moves")
    slide_sub = slide.add_subparsers(dest="sub", required=True)
    sp = slide_sub.add_parser("list", parents=[common], help="enumerate legal slides")
    sp.set_defaults(fn=_cmd_slide_list)
    sp.add_argument("file")
    sp = slide_sub.add_parser("apply", parents=[common], help="apply one slide")
    sp.set_defaults(fn=_cmd_slide_apply)
    sp.add_argument("file")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--g", required=True, type=int)

    sp = leaf("iso", _cmd_iso, help="slide-move isomorphism search")
    sp.add_argument("gog1")
    sp.add_argument("gog2")
    sp.add_argument("--max-depth", type=int, default=None)

    sp = leaf("synth", _cmd_synth, help="bounded decomposition synthesis")
    sp.add_argument("--group", required=True)
    sp.add_argument("--max-vertices", type=int, required=True)
    sp.add_argument("--max-order", type=int, required=True)
    sp.add_argument("--max-edges", type=int, required=True)
    sp.add_argument("--max-image-len", type=int, required=True)
    sp.add_argument("--catalog", default=None)
    sp.add_argument("--out", default=None, help="write <out>.gog.json and <out>.hom.json")

    sp = leaf("bounds", _cmd_bounds, help="decomposition bound formulas")
    sp.add_argument("file")

    cay = sub.add_parser("cayley", help="Cayley-graph tools")
    cay_sub = cay.add_subparsers(dest="sub", required=True)
    sp = cay_sub.add_parser("ball", parents=[common], help="BFS ball in DOT form")
    sp.set_defaults(fn=_cmd_cayley_ball)
    sp.add_argument("file")
    sp.add_argument("-r", "--radius", type=int, required=True)
    sp.add_argument("--dot", default=None, help="write DOT text to this path")

    sp = leaf("cut", _cmd_cut, help="prefix-cut boundary")
    sp.add_argument("file")
    sp.add_argument("--prefix", required=True)
    sp.add_argument("-r", "--radius", type=int, required=True)

    sp = leaf("components", _cmd_components, help="components outside a ball")
    sp.add_argument("file")
    sp.add_argument("-r", "--radius", type=int, required=True)
    sp.add_argument("--probe", type=int, required=True)

    sp = leaf("triangulate", _cmd_triangulate, help="triangulate a closed vertex sequence")
    sp.add_argument("file")
    sp.add_argument("--seq", nargs="+", required=True)
    sp.add_argument("-k", type=int, required=True)

    return top


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        return args.fn(args)
    except CliError as e:
        print(f"vfk: {e}", file=sys.stderr)
        return e.code


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
