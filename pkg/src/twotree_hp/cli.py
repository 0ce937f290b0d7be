"""Command-line front end.

    twotree-hp check FILE
    twotree-hp path FILE [--explain] [--dot OUT]
    twotree-hp verify [--n-max N] [--count K] [--seed0 S]
    twotree-hp gen --n N [--profile P] [--seed S] [--out FILE]
    twotree-hp bench [--sizes N,N,...] [--profile P] [--seed S] [--repeat R]

Exit codes: 0 = has a Hamiltonian path / success, 1 = no path /
disagreement, 2 = bad input.
"""

from __future__ import annotations

import argparse
import contextlib
import gc
import sys
import time
from collections.abc import Iterator, Sequence

from . import oracle
from .edgelist import format_edge_list, read_edge_list, write_edge_list
from .errors import Disconnected, InfeasibleProfile, NotTwoTree, ParseError, TwoTreeError
from .generator import GenSpec, Profile, generate
from .graph import Graph, edge_key
from .hamiltonian_engine import HPResult, hamiltonian_path, validate_path

EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2

VERIFY_PROFILES = ("any", "3pf", "force3:1", "force3:2", "force4", "strip", "strip-hp")
DEFAULT_BENCH_SIZES = (100_000, 200_000, 400_000, 800_000)


@contextlib.contextmanager
def no_cyclic_gc() -> Iterator[None]:
    """Pause the cycle collector; the solver builds no reference cycles and
    its many small containers otherwise trigger repeated full scans."""
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def _load(path: str) -> Graph:
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def explain_lines(g: Graph, result: HPResult) -> list[str]:
    """Stage-by-stage dump: edge lists, E-set provenance, the outcome."""
    out = [f"case {result.case}"]
    tr = result.trace
    if tr is not None and tr.g0 is not None:
        g0 = tr.g0
        out.append(f"G0 vertices={len(g0.graph)} pruned={' '.join(map(str, g0.pruned_order)) or '-'}")
        for a, b in g0.graph.edges():
            if (a, b) in g0.blue.blue_edges:
                lab = " ".join(map(str, g0.blue.label(a, b)))
                out.append(f"  {a} {b} blue {lab}".rstrip())
            else:
                out.append(f"  {a} {b}")
    if tr is not None and tr.g1 is not None:
        g1 = tr.g1
        out.append(
            f"G1 vertices={len(g1.graph)} s={g1.s} nbrs={g1.s_nbrs[0]},{g1.s_nbrs[1]}"
            f" t={g1.t} nbrs={g1.t_nbrs[0]},{g1.t_nbrs[1]}"
        )
        out.append("  sigma " + " ".join(map(str, g1.sigma.order)))
        for a, b in g1.graph.edges():
            tag = " blue" if (a, b) in g1.blue.blue_edges else ""
            out.append(f"  {a} {b}{tag}")
    if tr is not None:
        for att in tr.attempts:
            e = att.ends
            types = ",".join(map(str, e.types))
            out.append(f"ends u={e.u} v={e.v} x={e.x} w={e.w} types={types}")
            out.extend(f"  pruned {line}" for line in att.prune.dump())
            out.append(f"  G2 edges={att.g2.graph.num_edges()}")
            for a, b in att.g2.graph.edges():
                out.append(f"    {a} {b}")
            if att.witness is not None:
                out.append(f"  rejected {att.witness}")
            elif att.fallback:
                out.append("  path found by exact search")
    if result.path is not None:
        out.append("path " + " ".join(map(str, result.path)))
    else:
        out.append(f"no path: {result.witness}")
    return out


def to_dot(g: Graph, result: HPResult) -> str:
    """DOT rendering: blue edges carry their labels, path edges are bold."""
    blue: dict[tuple[int, int], tuple[int, ...]] = {}
    if result.trace is not None and result.trace.g0 is not None:
        b0 = result.trace.g0.blue
        for e in b0.blue_edges:
            blue[e] = b0.labels.get(e, ())
    on_path = set()
    if result.path is not None:
        on_path = {edge_key(a, b) for a, b in zip(result.path, result.path[1:])}
    lines = ["graph twotree {", "  node [shape=circle];"]
    for v in g.vertices:
        lines.append(f"  {v};")
    for a, b in g.edges():
        attrs = []
        if (a, b) in blue:
            attrs.append("color=blue")
            if blue[a, b]:
                attrs.append(f'label="{" ".join(map(str, blue[a, b]))}"')
        if (a, b) in on_path:
            attrs.append("penwidth=3")
        else:
            attrs.append("style=dashed")
        lines.append(f"  {a} -- {b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_check(args: argparse.Namespace) -> int:
    g = _load(args.file)
    with no_cyclic_gc():
        result = hamiltonian_path(g)
    print(f"case: {result.case}")
    if result.has_path:
        print("hamiltonian path: yes")
        return EXIT_YES
    print("hamiltonian path: no")
    print(f"witness: {result.witness}")
    return EXIT_NO


def cmd_path(args: argparse.Namespace) -> int:
    g = _load(args.file)
    with no_cyclic_gc():
        result = hamiltonian_path(g)
    if args.explain:
        sys.stderr.write("\n".join(explain_lines(g, result)) + "\n")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(to_dot(g, result))
    if result.path is None:
        print(f"no path: {result.witness}", file=sys.stderr)
        return EXIT_NO
    if not validate_path(g, result.path):
        raise AssertionError("solver returned an invalid path")
    print(" ".join(map(str, result.path)))
    return EXIT_YES


def verify_corpus(n_max: int, count: int, seed0: int) -> Iterator[tuple[int, int, Profile, Graph]]:
    """(seed, n, profile, graph) for seeds seed0 .. seed0+count-1.

    n cycles through 2..n_max; the profile steps through VERIFY_PROFILES
    once per full sweep of n, falling back to ``any`` when infeasible.
    """
    span = max(n_max - 1, 1)
    for seed in range(seed0, seed0 + count):
        n = 2 + seed % span
        prof = Profile.parse(VERIFY_PROFILES[(seed // span) % len(VERIFY_PROFILES)])
        spec = GenSpec(n, seed, prof)
        try:
            spec.check()
        except InfeasibleProfile:
            spec = GenSpec(n, seed, Profile.parse("any"))
        yield seed, n, spec.profile, generate(spec)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.n_max < 2:
        return _fail("--n-max must be at least 2")
    if args.n_max > oracle.oracle_bound():
        return _fail(f"--n-max {args.n_max} exceeds the oracle bound {oracle.oracle_bound()}")
    agree = 0
    first = None
    for seed, n, prof, g in verify_corpus(args.n_max, args.count, args.seed0):
        truth = oracle.hamiltonian_path(g) is not None
        try:
            result = hamiltonian_path(g)
            got = result.has_path
            ok = got == truth and (not got or validate_path(g, result.path))
        except TwoTreeError as exc:
            got, ok = f"error {type(exc).__name__}", False
        if ok:
            agree += 1
        elif first is None:
            first = f"seed={seed} n={n} profile={prof} solver={got} oracle={truth}"
    print(f"{agree}/{args.count} agree")
    if first is not None:
        print(f"first disagreement: {first}")
        return EXIT_NO
    return EXIT_YES


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        spec = GenSpec(args.n, args.seed, Profile.parse(args.profile))
        g = generate(spec)
    except (InfeasibleProfile, ValueError) as exc:
        return _fail(str(exc))
    if args.out:
        write_edge_list(g, args.out)
        print(f"seed {args.seed}")
    else:
        sys.stdout.write(format_edge_list(g))
        print(f"seed {args.seed}", file=sys.stderr)
    return EXIT_YES


def time_solve(g: Graph, repeat: int) -> tuple[float, HPResult]:
    """Best wall time over ``repeat`` solves."""
    best, result = float("inf"), None
    for _ in range(repeat):
        gc.collect()
        with no_cyclic_gc():
            t0 = time.perf_counter()
            result = hamiltonian_path(g)
            best = min(best, time.perf_counter() - t0)
    return best, result


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        prof = Profile.parse(args.profile)
    except ValueError as exc:
        return _fail(str(exc))
    sizes = _sizes(args.sizes)
    if sizes is None:
        return _fail(f"bad --sizes {args.sizes!r}")
    print("n,edges,seconds,has_path")
    for n in sizes:
        g = generate(GenSpec(n, args.seed, prof))
        secs, result = time_solve(g, args.repeat)
        print(f"{n},{g.num_edges()},{secs:.4f},{int(result.has_path)}", flush=True)
    return EXIT_YES


def _sizes(text: str) -> list[int] | None:
    try:
        return [int(float(s)) for s in text.split(",") if s.strip()]
    except ValueError:
        return None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twotree-hp", description="Hamiltonian paths in 2-trees.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify a graph and decide whether it has a path")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("path", help="print a Hamiltonian path")
    p.add_argument("file")
    p.add_argument("--explain", action="store_true", help="dump stage traces to stderr")
    p.add_argument("--dot", metavar="OUT", help="write a Graphviz rendering")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("verify", help="compare the solver with the brute-force oracle")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--count", type=int, default=2000)
    p.add_argument("--seed0", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a random 2-tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--profile", default="any")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the solver, CSV on stdout")
    p.add_argument("--sizes", default=",".join(map(str, DEFAULT_BENCH_SIZES)))
    p.add_argument("--profile", default="3pf")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(str(exc))
    except (NotTwoTree, Disconnected) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
