"""``posact`` command line: validate, props, green, enumerate, verify, search."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import fixtures
from .core import PosactError, Pomonoid, Poset, SPoset, SPosetMap, ValidationError
from .textio import SliceObject, Workspace, serialize

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


def default_cache_dir() -> str:
    env = os.environ.get("POSACT_CACHE_DIR")
    if env:
        return env
    return str(Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "posact")


def _workspace(args) -> Workspace:
    return Workspace([Path.cwd()], fallback=fixtures.get)


def _load(ws: Workspace, ref: str):
    p = Path(ref)
    if p.suffix == ".pos" or p.exists():
        return ws.load(p)
    return ws.get(ref)


def _cache(args):
    return None if args.no_cache else (args.cache_dir or default_cache_dir())


def _label(P, x) -> str:
    return P.label(x)


# ---------------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    ws = _workspace(args)
    try:
        obj = _load(ws, args.file)
    except ValidationError as e:
        print(str(e), file=out)
        return EXIT_ERROR
    kind = type(obj).__name__
    size = getattr(obj, "size", None)
    if isinstance(obj, SPosetMap):
        size = obj.dom.size
    print("valid: %s size=%s" % (kind, size), file=out)
    return EXIT_OK


def _prop_lines(A: SPoset, args) -> list:
    from .decide import (
        is_cyclic_projective,
        is_d_injective,
        is_free,
        is_generator,
        is_projective,
    )
    from .search import Budget

    budget = Budget(args.budget) if args.budget else None
    verdicts = [
        is_generator(A, budget=budget),
        is_cyclic_projective(A),
        is_projective(A),
        is_free(A),
        is_d_injective(A, "all"),
        is_d_injective(A, "principal"),
    ]
    return [v.line() for v in verdicts]


def _slice_lines(f: SPosetMap, args) -> list:
    from .slice import find_section, incomplete_fiber, is_slice_emb_injective_bounded
    from .search import Budget

    g = find_section(f)
    tf = lambda b: "true" if b else "false"  # noqa: E731
    lines = ["property=split_epi value=%s mode=exact witness=%s" % (
        tf(g is not None), "-" if g is None else ",".join(
            "%s->%s" % (f.cod.poset.label(b), f.dom.poset.label(a)) for b, a in enumerate(g.table)))]
    bad = incomplete_fiber(f)
    lines.append("property=fibers_complete value=%s mode=exact witness=%s" % (
        tf(bad is None), "-" if bad is None else "{%s}" % ",".join(f.dom.poset.label(a) for a in bad[1])))
    budget = Budget(args.budget) if args.budget else None
    v = is_slice_emb_injective_bounded(f, args.bound, budget=budget)
    lines.append(v.line())
    return lines


def cmd_props(args, out) -> int:
    ws = _workspace(args)
    if args.over:
        S = _load(ws, args.over)
        ws.add(Path(args.over).stem, S)
        ws.add("S", S)
    obj = _load(ws, args.object)
    if isinstance(obj, SliceObject):
        obj = obj.f
    if isinstance(obj, Pomonoid):
        from .constructions import regular_representation

        obj = regular_representation(obj)
    if isinstance(obj, SPosetMap):
        lines = _slice_lines(obj, args)
    elif isinstance(obj, SPoset):
        lines = _prop_lines(obj, args)
    else:
        raise PosactError("props needs an S-poset, pomonoid or map")
    for line in lines:
        print(line, file=out)
    return EXIT_OK


def _classes(S, rel) -> str:
    from .green import green_classes

    return " ".join("{%s}" % ",".join(S.poset.label(x) for x in c) for c in green_classes(S, rel))


def green_summary(S: Pomonoid) -> list:
    from .green import idempotents, is_left_simple, is_regular_pomonoid, is_right_simple

    yn = lambda b: "yes" if b else "no"  # noqa: E731
    return [
        "J-classes: %s; regular: %s; left-simple: %s; right-simple: %s" % (
            _classes(S, "J"), yn(is_regular_pomonoid(S)), yn(is_left_simple(S)), yn(is_right_simple(S))),
        "R-classes: %s" % _classes(S, "R"),
        "D-classes: %s" % _classes(S, "D"),
        "idempotents: %s" % " ".join(S.poset.label(e) for e in idempotents(S)),
    ]


def cmd_green(args, out) -> int:
    S = _load(_workspace(args), args.pomonoid)
    if not isinstance(S, Pomonoid):
        raise PosactError("green needs a pomonoid")
    for line in green_summary(S):
        print(line, file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    from . import enumeration as en

    cache = _cache(args)
    refs = None
    if args.kind == "monoid":
        objs = [en.validate_pomonoid(Poset(len(t), tuple(tuple(i == j for j in range(len(t)))
                                                          for i in range(len(t)))), t, 0)
                for t in en.enumerate_monoids(args.size)]
    elif args.kind == "poset":
        objs = list(en.enumerate_posets(args.size))
    elif args.kind == "pomonoid":
        objs = en.enumerate_pomonoids(args.size, cache)
    elif args.kind == "sposet":
        if not args.over:
            raise PosactError("sposet enumeration needs --over")
        S = _load(_workspace(args), args.over)
        objs = en.enumerate_sposets(S, args.size, cache)
        # memoised objects may hold an equal copy of S rather than S itself
        refs = {id(x): Path(args.over).stem for x in [S] + [A.over for A in objs]}
    else:
        raise PosactError("unknown kind", args.kind)
    print("kind=%s size=%d count=%d" % (args.kind, args.size, len(objs)), file=out)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        width = len(str(max(len(objs) - 1, 0)))
        for i, obj in enumerate(objs):
            name = "%s%d_%0*d" % (args.kind, args.size, width, i)
            (d / (name + ".pos")).write_text(serialize(obj, name=name, refs=refs), encoding="utf-8")
    return EXIT_OK


def _universe(args):
    from .harness import Universe

    return Universe(max_order=args.max_order, max_size=args.max_size, bound=args.bound,
                    cache=_cache(args), budget=args.budget, max_hom=args.max_hom)


def _theorem_ids(ids) -> list:
    from .harness import EXACT_SUITE, REGISTRY

    out = []
    for tid in ids:
        if tid == "all":
            out.extend(REGISTRY)
        elif tid == "exact":
            out.extend(EXACT_SUITE)
        else:
            out.append(tid)
    return out


def cmd_verify(args, out) -> int:
    from .harness import verify

    U = _universe(args)
    texts, worst = [], EXIT_OK
    for tid in _theorem_ids(args.theorem):
        rep = verify(tid, U, jobs=args.jobs, witness_dir=args.witness_dir)
        texts.append(rep.text())
        if rep.violations:
            worst = EXIT_VIOLATION
    text = "".join(texts)
    out.write(text)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    return worst


def cmd_replay(args, out) -> int:
    from .harness import load_witness, replay

    tid, _ = load_witness(args.witness)
    status, msg = replay(args.witness, _universe(args))
    print("theorem=%s status=%s%s" % (tid, status, " # " + msg if msg else ""), file=out)
    return EXIT_VIOLATION if status == "violation" else EXIT_OK


def cmd_search(args, out) -> int:
    from .harness import counterexample_search, write_counterexample

    U = _universe(args)
    pomonoids = None
    if args.over:
        pomonoids = [_load(_workspace(args), args.over)]
    w = counterexample_search(args.claim, U, pomonoids)
    print("claim=%s universe=%s found=%s" % (args.claim, U.describe(), "yes" if w else "no"), file=out)
    if w:
        refs = {id(v): k for k, v in w.items()}
        for key in sorted(w, key=lambda k: (not isinstance(w[k], Pomonoid), k)):
            out.write(serialize(w[key], name=key, refs=refs))
        if args.out:
            write_counterexample(args.out, args.claim, w)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _universe_flags(p, max_order=4, max_size=4):
    p.add_argument("--max-order", type=int, default=max_order)
    p.add_argument("--max-size", type=int, default=max_size)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--max-hom", type=int, default=256)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="posact", description="finite pomonoids and S-posets")
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("--no-cache", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--budget", type=int, default=None, help="search node limit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="load a file and check every axiom")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("props", help="decide properties of an S-poset or a slice map")
    p.add_argument("object")
    p.add_argument("--over")
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("green", help="Green's relations of a pomonoid")
    p.add_argument("pomonoid")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("enumerate", help="enumerate structures up to isomorphism")
    p.add_argument("kind", choices=["monoid", "poset", "pomonoid", "sposet"])
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--over")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check theorems over a universe ('all', 'exact' or ids)")
    p.add_argument("theorem", nargs="+")
    _universe_flags(p)
    p.add_argument("--report")
    p.add_argument("--witness-dir")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="re-run a check on a serialized witness")
    p.add_argument("witness")
    _universe_flags(p)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("search", help="look for a counterexample to a claim")
    p.add_argument("claim")
    _universe_flags(p)
    p.add_argument("--over")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ValidationError as e:
        print(str(e), file=out)
        return EXIT_ERROR
    except PosactError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
