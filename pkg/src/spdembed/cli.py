"""Command-line interface: ``python -m spdembed <command> ...``.

Exit status is 0 on success, 1 on I/O or usage errors and 2 when an input
fails validation (the violations go to stderr as JSON).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import generators as gens
from .embed import EmbedParams, embed, load_embedding, save_embedding
from .graph import GraphError, apsp, dumps_graph, read_graph
from .lowerbound import diamond_distortion_lower_bound, diamond_poincare, diamond_weighted_distance_sum
from .metrics import distortion, distortion_csv, max_support
from .spd import (
    SPD,
    PathDecomposition,
    SPDValidationError,
    build_spd_from_path_decomposition,
    build_spd_greedy,
    validate_spd,
)

FAMILIES = ("path", "cycle", "star", "clique", "grid", "two-path", "diamond", "diamondfold", "buffered-diamondfold")
EXPERIMENT_COLUMNS = ["family", "size", "seed", "n", "depth", "dim", "lower_bound", "distortion", "max_support"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ----------------------------------------------------------------------------
# generation


def generate(family: str, n=None, a=None, b=None, k=None, eps=None):
    """Return ``(graph, pd or None, spd or None)`` for a family name."""
    def need(val, flag):
        if val is None:
            raise UsageError(f"family {family!r} needs {flag}")
        return val

    if family == "path":
        return gens.path(need(n, "--n")), None, None
    if family == "cycle":
        return gens.cycle(need(n, "--n")), None, None
    if family == "star":
        return gens.star(need(n, "--n")), None, None
    if family == "clique":
        return gens.clique(need(n, "--n")), None, None
    if family == "grid":
        return gens.grid(need(a, "--a"), need(b, "--b")), None, None
    if family == "two-path":
        g, spd = gens.two_path_gadget(need(n, "--n"))
        return g, None, spd
    if family == "diamond":
        g, _ = gens.diamond(need(k, "--k"))
        return g, gens.diamond_path_decomposition(k), None
    if family == "diamondfold":
        return gens.diamondfold(need(k, "--k")).graph, None, None
    if family == "buffered-diamondfold":
        k = need(k, "--k")
        bd = gens.buffered_diamondfold(k, eps if eps is not None else 1.0 / (20 * 4**k))
        return bd.graph, None, bd.spd
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def cmd_gen(args) -> int:
    g, pd, spd = generate(args.family, args.n, args.a, args.b, args.k, args.eps)
    if args.out is None:
        sys.stdout.write(dumps_graph(g))
        return 0
    out = Path(args.out)
    out.with_suffix(".graph").write_text(dumps_graph(g))
    written = [out.with_suffix(".graph")]
    if pd is not None:
        out.with_suffix(".pd").write_text(pd.dumps())
        written.append(out.with_suffix(".pd"))
    if spd is not None:
        out.with_suffix(".spd.json").write_text(spd.to_json())
        written.append(out.with_suffix(".spd.json"))
    print(f"n={g.n} m={g.m} " + " ".join(str(p) for p in written))
    return 0


# ----------------------------------------------------------------------------
# decomposition and embedding


def _load_spd(graph, path) -> SPD:
    spd = SPD.from_json(Path(path).read_text())
    validate_spd(graph, spd)
    return spd


def cmd_spd(args) -> int:
    g = read_graph(args.graph)
    if args.pd:
        spd = build_spd_from_path_decomposition(g, PathDecomposition.loads(Path(args.pd).read_text()))
    else:
        spd = build_spd_greedy(g)
    depth = validate_spd(g, spd)
    if args.out:
        Path(args.out).write_text(spd.to_json())
    print(f"depth={depth}")
    return 0


def _params(args) -> EmbedParams:
    if args.seed is None:
        raise UsageError("--seed is required for stochastic commands")
    return EmbedParams(p=args.p, m=args.m, c_m=args.cm, seed=args.seed, compact=args.compact, m_code=args.mcode)


def cmd_embed(args) -> int:
    g = read_graph(args.graph)
    spd = _load_spd(g, args.spd)
    params = _params(args)
    emb = embed(g, spd, params)
    if args.out:
        save_embedding(emb, args.out, binary=args.binary)
    msg = f"n={emb.n} D={emb.dim} m={emb.m} depth={spd.depth}"
    if params.compact:
        code = max((c.index for c in emb.coords if c.kind == "folded_path"), default=-1) + 1
        msg += f" dimension_bound={spd.depth * code + 2 * spd.depth * emb.m}"
    print(msg)
    return 0


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    emb = load_embedding(args.embedding)
    if emb.n != g.n:
        raise SPDValidationError([f"embedding has {emb.n} rows, graph has {g.n} vertices"])
    D = apsp(g)
    text = distortion_csv(D, emb)
    rep = distortion(D, emb)
    summary = f"distortion={rep.distortion!r} max_support={max_support(emb)}"
    if args.spd:
        spd = _load_spd(g, args.spd)
        summary += f" support_bound={3 * spd.depth * emb.m}"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return 0


def cmd_certify(args) -> int:
    emb = load_embedding(args.embedding)
    g, levels = gens.diamond(args.k)
    if emb.n != g.n:
        raise SPDValidationError([f"embedding has {emb.n} rows, D_{args.k} has {g.n} vertices"])
    lhs, rhs = diamond_poincare(emb.points, levels, args.p)
    D = apsp(g)
    rep = distortion(D, emb)
    bound = diamond_distortion_lower_bound(args.k, args.p)
    print(f"lhs={lhs!r}")
    print(f"rhs={rhs!r}")
    print(f"inequality_holds={lhs <= rhs + 1e-9 * max(1.0, rhs)}")
    print(f"weighted_distance_sum={diamond_weighted_distance_sum(levels, D, args.p)!r}")
    print(f"lower_bound={bound!r}")
    print(f"measured_distortion={rep.distortion!r}")
    return 0


# ----------------------------------------------------------------------------
# experiments


def _experiment_rows(spec: dict):
    family = spec["family"]
    seeds = spec["seeds"]
    p = float(spec.get("p", 2.0))
    for size in spec["sizes"]:
        kw = {"n": size} if family in ("path", "cycle", "star", "clique", "two-path") else {"k": size}
        if family == "grid":
            kw = {"a": size, "b": size}
        g, pd, spd = generate(family, **kw)
        if spd is None:
            spd = build_spd_from_path_decomposition(g, pd) if pd is not None else build_spd_greedy(g)
        D = apsp(g)
        lb = diamond_distortion_lower_bound(size, p) if family == "diamond" and p >= 2 else None
        for seed in seeds:
            params = EmbedParams(p=p, m=spec.get("m"), c_m=spec.get("c_m", 12.0), seed=int(seed),
                                 compact=bool(spec.get("compact", False)), m_code=spec.get("m_code"))
            emb = embed(g, spd, params)
            yield {
                "family": family, "size": size, "seed": seed, "n": g.n, "depth": spd.depth, "dim": emb.dim,
                "lower_bound": lb, "distortion": distortion(D, emb).distortion, "max_support": max_support(emb),
            }


def run_experiment(spec: dict) -> str:
    missing = [key for key in ("family", "sizes", "seeds") if not spec.get(key)]
    if missing:
        raise UsageError(f"experiment spec lacks {', '.join(missing)}")
    rows = list(_experiment_rows(spec))
    out = io.StringIO()
    out.write("# " + json.dumps(spec, sort_keys=True) + "\n")
    w = csv.DictWriter(out, EXPERIMENT_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    if len(spec["seeds"]) > 1:
        for size in spec["sizes"]:
            vals = np.array([r["distortion"] for r in rows if r["size"] == size])
            base = next(r for r in rows if r["size"] == size)
            for stat, val in (("mean", vals.mean()), ("std", vals.std(ddof=1))):
                w.writerow({**base, "seed": stat, "distortion": float(val), "dim": "", "max_support": ""})
    return out.getvalue()


def cmd_experiment(args) -> int:
    try:
        spec = json.loads(Path(args.spec).read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad experiment spec: {exc}") from exc
    if not isinstance(spec, dict):
        raise UsageError("experiment spec must be a JSON object")
    text = run_experiment(spec)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="spdembed", description="Shortest-path-decomposition embeddings into l_p.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a graph family")
    p.add_argument("family", choices=FAMILIES)
    for flag in ("--n", "--a", "--b", "--k"):
        p.add_argument(flag, type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--out", help="output prefix; writes .graph plus .pd/.spd.json sidecars")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("spd", help="build and validate a shortest path decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("--pd")
    p.add_argument("--out")
    p.set_defaults(func=cmd_spd)

    p = sub.add_parser("embed", help="embed a graph given its decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("--spd", required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--m", type=int)
    p.add_argument("--cm", type=float, default=12.0)
    p.add_argument("--mcode", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--compact", action="store_true")
    p.add_argument("--binary", action="store_true", help="store the matrix as raw float64")
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="measure distortion and support of an embedding")
    p.add_argument("--graph", required=True)
    p.add_argument("--embedding", required=True)
    p.add_argument("--spd")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="evaluate the diamond lower-bound certificate")
    p.add_argument("--embedding", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("experiment", help="run a family sweep from a JSON spec")
    p.add_argument("spec")
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_help(sys.stderr)
            return 1
        return args.func(args)
    except SPDValidationError as exc:
        print(json.dumps({"violations": exc.violations}), file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, GraphError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
