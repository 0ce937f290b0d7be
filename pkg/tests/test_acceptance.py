"""Acceptance suite.  Each test carries a ``criterion`` mark; the run summary
prints one PASS/FAIL line per criterion."""

from __future__ import annotations

import functools
import os
import subprocess
import sys
from dataclasses import dataclass

import pytest

from conftest import build, reach_g1
from twotree_hp import oracle
from twotree_hp.cli import main
from twotree_hp.edge_pruning import build_g2, classify_edges
from twotree_hp.errors import ConstructionFailed
from twotree_hp.generator import GenSpec, Profile, enumerate_small, generate
from twotree_hp.graph import Graph, components, edge_key
from twotree_hp.hamiltonian_engine import (
    HPResult,
    endpoint_assignments,
    hamiltonian_cycle_3pf,
    hamiltonian_path,
    hp_one_pyramid,
    validate_path,
)
from twotree_hp.pyramids import CaseLabel, classify, pyramid_report

PROFILES = ["any", "3pf", "force3:1", "force3:2", "force3:3", "force4", "strip", "strip-hp"]
RANDOM_COUNT = 8000


@dataclass
class Case:
    g: Graph
    label: str
    result: HPResult | None
    truth: bool
    failure: str | None = None


def _random_specs():
    for seed in range(RANDOM_COUNT):
        n = 9 + seed % 6
        yield GenSpec(n, seed, Profile.parse(PROFILES[(seed // 6) % len(PROFILES)]))


def _graphs():
    for n in range(2, 9):
        for k, g in enumerate(enumerate_small(n)):
            yield g, f"small n={n} #{k}"
    for spec in _random_specs():
        yield generate(spec), f"seed={spec.seed} n={spec.n} profile={spec.profile}"


@functools.lru_cache(maxsize=1)
def corpus() -> tuple[Case, ...]:
    out = []
    for g, label in _graphs():
        truth = oracle.hamiltonian_path(g) is not None
        try:
            out.append(Case(g, label, hamiltonian_path(g), truth))
        except ConstructionFailed as exc:
            out.append(Case(g, label, None, truth, str(exc)))
    return tuple(out)


@pytest.mark.criterion(1, "solver agrees with the oracle on n <= 8 (all) and n 9-14 (random)")
def test_oracle_equivalence():
    cases = corpus()
    assert sum(c.label.startswith("small") for c in cases) == 11465
    assert sum(not c.label.startswith("small") for c in cases) >= 5000
    seen_profiles = {c.label.split("profile=")[1] for c in cases if "profile=" in c.label}
    assert seen_profiles == set(PROFILES)
    wrong = []
    for c in cases:
        if c.result is None:
            wrong.append((c.label, "construction failed"))
        elif c.result.has_path != c.truth:
            wrong.append((c.label, f"solver={c.result.has_path} oracle={c.truth}"))
        elif c.result.has_path and not validate_path(c.g, c.result.path):
            wrong.append((c.label, "invalid path"))
    assert not wrong, wrong[:5]
    yes = sum(c.truth for c in cases)
    print(f"criterion 1: {len(cases)} instances, {yes} with a path, 0 disagreements")


@pytest.mark.criterion(2, "components after removing an edge's ends equal its common-neighbour count")
def test_edge_cut_identity():
    bad = []
    edges = 0
    for c in corpus():
        counts = pyramid_report(c.g).counts
        for a, b in c.g.edges():
            edges += 1
            if len(components(c.g, (a, b))) != counts[a, b]:
                bad.append((c.label, (a, b)))
    assert not bad, bad[:5]
    print(f"criterion 2: {edges} edges checked")


def _single_ring(g: Graph, ring_edges: set) -> bool:
    nxt: dict[int, list[int]] = {v: [] for v in g.adj}
    for a, b in ring_edges:
        nxt[a].append(b)
        nxt[b].append(a)
    if any(len(ns) != 2 for ns in nxt.values()):
        return False
    start = min(g.adj)
    prev, cur, steps = start, nxt[start][0], 1
    while cur != start:
        prev, cur = cur, nxt[cur][0] if nxt[cur][0] != prev else nxt[cur][1]
        steps += 1
    return steps == len(g.adj)


@pytest.mark.criterion(3, "pyramid-free 2-trees have the boundary Hamiltonian cycle; pyramids have none")
def test_cycle_characterisation():
    for k in range(500):
        n = 3 + (k * 1997) // 499
        g = generate(GenSpec(n, k, Profile.parse("3pf")))
        counts = pyramid_report(g).counts
        ring = {e for e, c in counts.items() if c == 1}
        assert _single_ring(g, ring), (n, k)
        cyc = hamiltonian_cycle_3pf(g)
        assert validate_path(g, cyc) and g.has_edge(cyc[0], cyc[-1])
    checked = 0
    for k in range(200):
        prof = ("force3:1", "force3:2", "force3:3", "force4")[k % 4]
        spec = GenSpec(9 + k % 4, 10_000 + k, Profile.parse(prof))
        g = generate(spec)
        assert pyramid_report(g).max_count() >= 3
        assert oracle.hamiltonian_cycle(g) is None, spec
        checked += 1
    assert checked == 200


@pytest.mark.criterion(4, "4-pyramids are rejected; the separating set of the no-path fixture is found")
def test_no_path_witnesses():
    for k in range(200):
        g = generate(GenSpec(6 + k % 7, 20_000 + k, Profile.parse("force4")))
        res = hamiltonian_path(g)
        assert not res.has_path and res.witness.kind == "FourPyramid"
        (e,) = res.witness.detail
        assert pyramid_report(g).counts[e] >= 4
        assert oracle.hamiltonian_path(g) is None
    g = build("NOHP")
    s = oracle.chvatal_check(g)
    assert s == {0, 3, 4}
    assert len(components(g, s)) == 5


@pytest.mark.criterion(5, "single-pyramid construction validates and the oracle agrees")
def test_one_pyramid_construction():
    for k in range(200):
        g = generate(GenSpec(5 + k % 10, 30_000 + k, Profile.parse("force3:1")))
        rep = pyramid_report(g)
        assert classify(rep) is CaseLabel.EXACTLY_ONE_THREE_PYRAMID
        (e,) = rep.three_pyramid_edges
        path = hp_one_pyramid(g, e)
        assert validate_path(g, path)
        assert oracle.hamiltonian_path(g) is not None


@pytest.mark.criterion(6, "edge pruning keeps covering (u, x)-paths: G1 and G2 agree, pruned edges unused")
def test_pruning_soundness():
    agree = spot = 0
    for c in corpus():
        if c.result is None or c.result.case is not CaseLabel.TWO_PLUS_THREE_PYRAMIDS:
            continue
        g1 = reach_g1(c.g)
        if g1 is None:
            continue
        table = classify_edges(g1)
        blue = g1.blue.blue_edges
        for ends in endpoint_assignments(g1):
            g2, sets = build_g2(g1, ends, table)
            before = oracle.covering_hp(g1.graph, blue, [ends.u], [ends.x]) is not None
            after = oracle.covering_hp(g2.graph, blue, [ends.u], [ends.x]) is not None
            assert before == after, (c.label, ends)
            agree += 1
            if before and sets.all_edges():
                paths = oracle.all_covering_hps(g1.graph, blue, [ends.u], [ends.x])
                used = {edge_key(a, b) for p in paths for a, b in zip(p, p[1:])}
                assert not used & sets.all_edges(), (c.label, ends)
                spot += 1
    assert agree > 0 and spot >= 100, (agree, spot)
    print(f"criterion 6: {agree} endpoint choices compared, {spot} spot-checked edge by edge")


@pytest.mark.criterion(7, "construction never fails after the checks pass")
def test_construction_never_fails():
    failed = [(c.label, c.failure) for c in corpus() if c.failure is not None]
    assert not failed, failed[:5]


def _bench(capsys, argv):
    code = main(["bench", *argv])
    out = capsys.readouterr().out
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    return [(int(n), float(secs), ok == "1") for n, _, secs, ok in rows]


@pytest.mark.criterion(8, "solve time roughly doubles per doubling of n, n = 800000 under 5 s")
def test_linear_time(capsys):
    rows = _bench(capsys, [])
    assert [n for n, _, _ in rows] == [100_000, 200_000, 400_000, 800_000]
    assert all(ok for _, _, ok in rows)
    for (_, t1, _), (_, t2, _) in zip(rows, rows[1:]):
        assert t2 / t1 <= 2.5, rows
    assert rows[-1][1] < 5.0, rows
    print("criterion 8: " + ", ".join(f"n={n} {t:.2f}s" for n, t, _ in rows))


def test_pipeline_scaling(capsys):
    """The full pruning pipeline stays near-linear at smaller sizes: eight
    times the input may cost at most sixteen times the time (a quadratic
    step would cost 64)."""
    rows = _bench(capsys, ["--profile", "strip-hp", "--sizes", "12500,25000,50000,100000"])
    assert all(ok for _, _, ok in rows)
    assert rows[-1][1] / rows[0][1] <= 16, rows
    print("pipeline: " + ", ".join(f"n={n} {t:.2f}s" for n, t, _ in rows))


def _cli(args, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    proc = subprocess.run(
        [sys.executable, "-m", "twotree_hp.cli", *args],
        capture_output=True,
        env=env,
        check=False,
    )
    return proc.returncode, proc.stdout, proc.stderr


@pytest.mark.criterion(9, "gen and path output is byte-identical across runs")
def test_determinism(tmp_path):
    specs = [("any", 40, 1), ("3pf", 2000, 2), ("force3:3", 30, 3), ("strip-hp", 500, 4), ("strip", 14, 5)]
    for prof, n, seed in specs:
        args = ["gen", "--n", str(n), "--profile", prof, "--seed", str(seed)]
        first, second = _cli(args, 1), _cli(args, 2)
        assert first == second and first[0] == 0
        path = tmp_path / f"{prof}.txt"
        path.write_bytes(first[1])
        runs = [_cli(["path", str(path), "--explain"], h) for h in (3, 4)]
        assert runs[0] == runs[1]
