"""Command-line front end: every subcommand prints one JSON report and exits 0 iff all checks pass."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb

from . import catalog, cohomology, cotriple, cubical, operads, simplicial
from .chains import ChainComplex, WindowTooSmall
from .exactlin import Matrix

EXIT_FAIL, EXIT_ERROR = 1, 2

THEORIES = {
    "S-Z": lambda: cohomology.CochainTheory("Z"),
    "S-Q": lambda: cohomology.CochainTheory("Q"),
    "sullivan": cohomology.SullivanForms,
    "broken": cohomology.broken_theory,
}

SIMPLICIAL_OPERADS = {
    "ass": operads.ass,
    "com": operads.trivial_operad,
    "interval": operads.interval_operad,
    "circle": operads.circle_operad,
}

CUBICAL_OPERADS = {
    "ass": lambda: operads.CubicalGapOperad(interval=False),
    "interval": lambda: operads.CubicalGapOperad(interval=True),
}


def _encode(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot encode {type(x).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1, default=_encode)


def _check(name, ok, degrees=None, **extra) -> dict:
    rec = {"name": name, "status": "PASS" if ok else "FAIL", "degrees_verified": degrees}
    rec.update(extra)
    return rec


def _window(w):
    if w is not None and w < 0:
        raise WindowTooSmall(f"window must be non-negative, got {w}")
    return w


def _homology_json(C: ChainComplex, upto=None) -> list[dict]:
    top = C.exact_top if upto is None else min(upto, C.exact_top)
    return [{"degree": n, "betti": h.betti, "torsion": list(h.torsion), "group": str(h)}
            for n, h in C.homology_all(top).items()]


# ---------------------------------------------------------------------------
# subcommands


def cmd_homology(args) -> dict:
    X = catalog.load_space(args.space)
    w = _window(args.window)
    kind = "cubical" if isinstance(X, cubical.CubicalSet) else "simplicial"
    if (args.model == "simplicial") != (kind == "simplicial"):
        raise catalog.ParseError(f"model {args.model} needs a {args.model.split('-')[0]} space, got {kind}")
    if args.model == "simplicial":
        C = simplicial.normalized_chains(X, w)
    elif args.model == "cubical":
        C = cubical.normalized_cubical(X, w if w is not None else X.dim)
    else:
        C = cubical.ordered_chains(X, w)
    C.check_d_squared()
    H = _homology_json(C, w)
    return {"space": X.name, "model": args.model, "window": w, "homology": H,
            "checks": [_check(f"d-squared[{X.name}]", True, [h["degree"] for h in H])]}


def cmd_ez_check(args) -> dict:
    X, Y = catalog.load_space(args.x), catalog.load_space(args.y)
    for Z in (X, Y):
        if not isinstance(Z, simplicial.SimplicialSet):
            raise catalog.ParseError("ez-check needs simplicial spaces")
    w = _window(args.window)
    top = min(w, X.dim + Y.dim)
    pairs = [(p, n - p) for n in range(top + 1) for p in range(n + 1) if p <= X.dim and n - p <= Y.dim]
    sh = all(simplicial.check_shuffle_chain_map(X, Y, p, q, normalized=True) for p, q in pairs)
    aw = all(simplicial.check_aw_chain_map(X, Y, n, normalized=True) for n in range(top + 1))
    awsh = all(simplicial.check_aw_sh_identity(X, Y, p, q) for p, q in pairs)
    sym = all(simplicial.check_shuffle_symmetry(X, Y, p, q, normalized=True) for p, q in pairs)
    count = all(simplicial.shuffle_term_count(p, q) == comb(p + q, p) for p, q in pairs)
    kun = [simplicial.kunneth_morphism(X, Y, n) for n in range(top + 1)]
    degrees = list(range(top + 1))
    tag = f"{X.name},{Y.name}"
    return {"spaces": [X.name, Y.name], "window": w, "kunneth": kun,
            "product_betti": [k["target_dim"] for k in kun],
            "checks": [_check(f"shuffle-chain-map[{tag}]", sh, degrees),
                       _check(f"aw-chain-map[{tag}]", aw, degrees),
                       _check(f"aw-sh-identity[{tag}]", awsh, degrees),
                       _check(f"shuffle-symmetric[{tag}]", sym, degrees),
                       _check(f"shuffle-term-count[{tag}]", count, degrees),
                       _check(f"kunneth[{tag}]", all(k["isomorphism"] for k in kun), degrees)]}


def _target(name):
    if name in cotriple.CATALOG_FACETS:
        return cotriple.catalog_target(name)
    return cotriple.VertexComplex.from_simplicial_set(catalog.load_space(name))


def cmd_bar_check(args) -> dict:
    params = cotriple.TruncationParams.parse(args.params)
    X = _target(args.space)
    checks = []
    checks += cotriple.check_cotriple_laws(X, params)
    checks += cotriple.check_kappa(X, cotriple.catalog_target("point"), params)
    for normalized in (False, True):
        checks.append(cotriple.check_acyclic_models(params, normalized))
    for F in cotriple.FUNCTORS:
        checks += cotriple.check_presentability(F, X, params, budget=args.budget)["checks"]
    if params.K == 1 or args.gbg:
        g = cotriple.check_gbg_contraction(X, params)
        checks += g["checks"] if "checks" in g else [g]
    return {"space": X.name, "params": params.to_json(), "checks": checks}


def _operad(name, functor, window, max_arity):
    if name == "endomorphism":
        V = ChainComplex([1, 1], {0: Matrix.zeros(0, 1), 1: Matrix.zeros(1, 1)})
        return operads.endomorphism_operad(V, max_arity=max_arity, window=window)
    table = CUBICAL_OPERADS if functor == "C_ord" else SIMPLICIAL_OPERADS
    if name not in table:
        raise catalog.ParseError(f"operad {name!r} is not available for functor {functor}")
    return operads.induce_operad(functor, table[name](), window=window, max_arity=max_arity)


def cmd_operad_check(args) -> dict:
    w = _window(args.window)
    # compositions of arity <= max_arity with total input count <= max_arity + 1 must be stored
    O = _operad(args.operad, args.functor, w, args.max_arity + 1)
    checks = operads.check_operad_axioms(O, max_arity=args.max_arity, max_total=args.max_arity + 1)
    hom = {str(l): O.homology(l, w) for l in sorted(O.complexes)}
    return {"operad": O.name, "functor": args.functor, "window": w, "summary": O.summary(),
            "homology": hom, "checks": checks}


def cmd_theory_compare(args) -> dict:
    A, B = THEORIES[args.a](), THEORIES[args.b]()
    X = catalog.load_space(args.space)
    if not isinstance(X, simplicial.SimplicialSet):
        raise catalog.ParseError("theory-compare needs a simplicial space")
    checks, axioms = [], {}
    for T in (A, B):
        rep = cohomology.check_axioms(T, 3, 3, min(args.cutoff, 3))
        axioms[T.name] = rep
        checks += rep["checks"]
    out = {"space": X.name, "cutoff": args.cutoff, "window": args.window}
    if all(c["status"] == "PASS" for c in checks):
        cmp = cohomology.compare_theories(A, B, X, args.window, args.cutoff, check=False)
        out["sides"] = cmp["sides"]
        checks += cmp["checks"]
    else:
        checks.append(_check(f"compare[{A.name},{B.name},{X.name}]", False, [], reason="axiom failure"))
    out["checks"] = checks
    return out


def cmd_cone_identity(args) -> dict:
    r = cubical.verify_cone_contraction(args.n_max)
    checks = [_check(f"cone-contraction[n={c['n']}]", c["identity"] and c["equivariant"], [c["n"]],
                     equivariant=c["equivariant"]) for c in r["checks"]]
    return {"n_max": args.n_max, "checks": checks}


def cmd_catalog(args) -> dict:
    return {"spaces": catalog.listing(), "targets": sorted(cotriple.CATALOG_FACETS),
            "operads": {"S": sorted(SIMPLICIAL_OPERADS) + ["endomorphism"], "C_ord": sorted(CUBICAL_OPERADS)},
            "theories": sorted(THEORIES), "checks": []}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here as well as to stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    ap = argparse.ArgumentParser(prog="chainmodels", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", parents=[common], help="betti numbers and torsion of a space")
    p.add_argument("space", help="JSON file or catalog name such as circle or torus.cubical")
    p.add_argument("--model", choices=["simplicial", "cubical", "cubical-ordered"], default="simplicial")
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("ez-check", parents=[common], help="shuffle / Alexander-Whitney checks on X x Y")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--window", type=int, default=3)
    p.set_defaults(func=cmd_ez_check)

    p = sub.add_parser("bar-check", parents=[common], help="cotriple laws and bar augmentation")
    p.add_argument("space", help="delta0, delta1, delta2, boundary2, point or a simplicial JSON file")
    p.add_argument("--params", default="2,1,2,2", help="N,R,K,W")
    p.add_argument("--budget", type=int, default=cotriple.DEFAULT_BUDGET)
    p.add_argument("--gbg", action="store_true", help="also run the extra-degeneracy check when K > 1")
    p.set_defaults(func=cmd_bar_check)

    p = sub.add_parser("operad-check", parents=[common], help="axioms of an induced dg operad")
    p.add_argument("operad", help="ass, com, interval, circle or endomorphism")
    p.add_argument("--functor", choices=list(operads.FUNCTORS), default="S_normalized")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--max-arity", type=int, default=3)
    p.set_defaults(func=cmd_operad_check)

    p = sub.add_parser("theory-compare", parents=[common], help="compare two cohomology theories on X")
    p.add_argument("a", choices=sorted(THEORIES))
    p.add_argument("b", choices=sorted(THEORIES))
    p.add_argument("space")
    p.add_argument("--window", type=int)
    p.add_argument("--cutoff", type=int, default=4)
    p.set_defaults(func=cmd_theory_compare)

    p = sub.add_parser("cone-identity", parents=[common], help="symbolic cubical cone contraction")
    p.add_argument("n_max", type=int, nargs="?", default=6)
    p.set_defaults(func=cmd_cone_identity)

    p = sub.add_parser("catalog", parents=[common], help="list shipped spaces, operads and theories")
    p.set_defaults(func=cmd_catalog)
    return ap


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except (catalog.ParseError, WindowTooSmall, cohomology.CutoffRequired, ValueError) as exc:
        report = {"error": type(exc).__name__, "message": str(exc), "checks": []}
        code = EXIT_ERROR
    else:
        code = 0 if all(c["status"] == "PASS" for c in report["checks"]) else EXIT_FAIL
    report = {"command": args.command, "seed": args.seed, "passed": code == 0, **report}
    text = dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
