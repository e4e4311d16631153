"""Executable expressivity checks: every separation and property suite the package reproduces.

Each ``check_*`` function returns a :class:`CheckResult`; :func:`run_all`
runs them in order.  A check passes only if its assertions hold *and* it
finished inside its time budget.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bag_wl import Tester, corpus_classes, power_matrix
from .generators import (
    csl,
    cycle,
    disjoint_cycles,
    gnp,
    path,
    random_permutation,
    rooks4,
    shrikhande,
    sr_parameters,
    star,
)
from .graph import ColorInterner, Graph, apply_permutation, partitions_equal
from .iso import are_isomorphic, bags_isomorphic, enumerate_graphs
from .policies import ED, ND, PolicySpec, apply_policy, ego
from .sampling import SampleConfig, vote_test
from .wl import initial_colors, wl_step


@dataclass
class CheckResult:
    name: str
    passed: bool
    observed: dict
    expected: dict
    seconds: float = 0.0
    budget: float = math.inf
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.seconds:.2f}s / {self.budget:g}s budget)"


def _timed(name: str, budget: float, fn: Callable[[], tuple[bool, dict, dict, list[str]]]) -> CheckResult:
    start = time.perf_counter()
    ok, observed, expected, notes = fn()
    seconds = time.perf_counter() - start
    if seconds > budget:
        notes = [*notes, f"exceeded time budget: {seconds:.2f}s > {budget}s"]
    return CheckResult(name, ok and seconds <= budget, observed, expected, seconds, budget, notes)


def _verdict(tester: str, g1: Graph, g2: Graph) -> str:
    return str(Tester.parse(tester).run(g1, g2))


# 1 ---------------------------------------------------------------------------


def check_csl_separation() -> CheckResult:
    def body():
        bad = []
        count = 0
        for n in (12, 13, 16):
            base = csl(n, 2)
            for k in range(3, n // 2):
                other = csl(n, k)
                for t in ("ds:nd", "ds:ego:1", "ds:ego+:1", "dss:nd", "dss:ego:1", "dss:ego+:1"):
                    count += 1
                    v = Tester.parse(t).run(base, other)
                    if not v.distinguished:
                        bad.append(f"{t} CSL({n},2) vs CSL({n},{k}): {v}")
            ks = range(2, n // 2)
            for a, b in combinations(ks, 2):
                count += 1
                v = Tester.parse("wl").run(csl(n, a), csl(n, b))
                if v.distinguished:
                    bad.append(f"wl CSL({n},{a}) vs CSL({n},{b}): {v}")
        return (
            not bad,
            {"tests": count, "failures": bad},
            {"bag testers": "DISTINGUISHED on (CSL(n,2), CSL(n,k))", "wl": "POSSIBLY_ISOMORPHIC"},
            [],
        )

    return _timed("1 CSL separation", 10, body)


# 2 ---------------------------------------------------------------------------


def check_ego_depth() -> CheckResult:
    def body():
        g1, g2 = csl(12, 3), csl(12, 5)
        got = {t: _verdict(t, g1, g2).split("@")[0] for t in ("ds:ego:1", "ds:ego:2", "ds:ego:3")}
        want = {"ds:ego:1": "POSSIBLY_ISOMORPHIC", "ds:ego:2": "DISTINGUISHED", "ds:ego:3": "POSSIBLY_ISOMORPHIC"}
        return got == want, got, want, []

    return _timed("2 EGO depth sensitivity on CSL(12,3)/CSL(12,5)", 1, body)


# 3 ---------------------------------------------------------------------------


def check_c6_ed() -> CheckResult:
    def body():
        g1, g2 = cycle(6), disjoint_cycles([3, 3])
        got = {t: Tester.parse(t).run(g1, g2) for t in ("dss:ed", "ds:ed", "wl")}
        ok = (
            got["dss:ed"].distinguished and got["dss:ed"].round <= 2
            and got["ds:ed"].distinguished and got["ds:ed"].round <= 2
            and not got["wl"].distinguished and got["wl"].round <= 1
        )
        want = {"dss:ed": "DISTINGUISHED@<=2", "ds:ed": "DISTINGUISHED@<=2", "wl": "POSSIBLY_ISOMORPHIC@<=1"}
        return ok, {k: str(v) for k, v in got.items()}, want, []

    return _timed("3 ED separates C6 from 2xC3", 1, body)


# 4 ---------------------------------------------------------------------------

# Node colors after each refinement for the edge-deleted subgraphs (edge 1-2
# in 1-based grid numbering).  Index 0 is round 1.
ROOK_ED_TABLE = ("bbcccccccccccccc", "ddeeffggffggffgg", "hhiijjkkjjkkjjkk")
SHRIK_ED_TABLE = ("bbcccccccccccccc", "ddfffefgggggefgf", "hhjjlmlnkkkkmlnl")


def _joint_ed_rounds(rounds: int) -> tuple[list[list[int]], list[list[int]]]:
    interner = ColorInterner()
    subs = []
    for g in (rooks4(), shrikhande()):
        subs.append(g.with_edges(g.edges - {(0, 1)}))
    hist: tuple[list[list[int]], list[list[int]]] = ([], [])
    cols = [initial_colors(s, interner) for s in subs]
    for _ in range(rounds):
        cols = [wl_step(s.adjacency, c, interner) for s, c in zip(subs, cols)]
        hist[0].append(cols[0])
        hist[1].append(cols[1])
    return hist


def _letters_match(rook: list[int], shrik: list[int], rook_row: str, shrik_row: str) -> bool:
    """Colors and table letters must correspond one-to-one across both graphs."""
    pairs = set(zip(rook + shrik, rook_row + shrik_row))
    return len(pairs) == len({c for c, _ in pairs}) == len({s for _, s in pairs})


def check_strongly_regular() -> CheckResult:
    def body():
        R, S = rooks4(), shrikhande()
        observed: dict = {}
        notes = []
        params = sr_parameters(R)
        n, k, lam, mu = params.as_tuple()
        verdicts = {t: Tester.parse(t).run(R, S) for t in ("ds:nd", "ds:ego+:16", "ds:ed")}
        observed["verdicts"] = {t: str(v) for t, v in verdicts.items()}
        ok = not verdicts["ds:nd"].distinguished and not verdicts["ds:ego+:16"].distinguished
        ok &= verdicts["ds:ed"].distinguished and verdicts["ds:ed"].round == 3

        formula = sorted([2, lam, 2 * (k - 1 - lam), n + lam - 2 * k])
        sizes2, sizes3 = {}, {}
        for name, g in (("rooks4", R), ("shrikhande", S)):
            bag = apply_policy(g, ED)
            per_round = set()
            for sub in bag.subgraphs:
                interner = ColorInterner()
                cols = initial_colors(sub, interner)
                hist = []
                for _ in range(3):
                    cols = wl_step(sub.adjacency, cols, interner)
                    hist.append(tuple(sorted(Counter(cols).values())))
                per_round.add(tuple(hist))
            # every edge deletion of either graph yields the same class sizes
            ok &= len(per_round) == 1
            (hist,) = per_round
            sizes2[name], sizes3[name] = list(hist[1]), list(hist[2])
        observed["round2_sizes"] = sizes2
        observed["round3_sizes"] = sizes3
        observed["formula_sizes"] = formula
        ok &= sizes2["rooks4"] == sizes2["shrikhande"] == formula == [2, 2, 6, 6]
        ok &= sizes3["rooks4"] == [2, 2, 6, 6] and sizes3["shrikhande"] == [2, 2, 2, 2, 4, 4]

        hist_r, hist_s = _joint_ed_rounds(3)
        table_ok = all(
            partitions_equal(hist_r[t], [ord(c) for c in ROOK_ED_TABLE[t]])
            and partitions_equal(hist_s[t], [ord(c) for c in SHRIK_ED_TABLE[t]])
            and _letters_match(hist_r[t], hist_s[t], ROOK_ED_TABLE[t], SHRIK_ED_TABLE[t])
            for t in range(3)
        )
        observed["ed_color_tables_match"] = table_ok
        ok &= table_ok
        notes.append("round t is the coloring after t updates; reference iteration k is round k-1")
        expected = {
            "verdicts": {"ds:nd": "POSSIBLY_ISOMORPHIC", "ds:ego+:16": "POSSIBLY_ISOMORPHIC", "ds:ed": "DISTINGUISHED@3"},
            "round2_sizes": [2, 2, 6, 6],
            "round3_sizes": {"rooks4": [2, 2, 6, 6], "shrikhande": [2, 2, 2, 2, 4, 4]},
            "ed_color_tables_match": True,
        }
        return ok, observed, expected, notes

    return _timed("4 strongly regular trichotomy (rooks4 vs shrikhande)", 30, body)


# 5 ---------------------------------------------------------------------------


def check_fwl2_base() -> CheckResult:
    def body():
        R, S = rooks4(), shrikhande()
        got = {
            "fwl2 rooks4/shrikhande": _verdict("fwl2", R, S),
            "ds:ego+:1^:fwl2 rooks4/shrikhande": _verdict("ds:ego+:1^:fwl2", R, S),
            "fwl2 C6/2xC3": _verdict("fwl2", cycle(6), disjoint_cycles([3, 3])),
        }
        want = {
            "fwl2 rooks4/shrikhande": "POSSIBLY_ISOMORPHIC",
            "ds:ego+:1^:fwl2 rooks4/shrikhande": "DISTINGUISHED",
            "fwl2 C6/2xC3": "DISTINGUISHED",
        }
        ok = all(got[k].split("@")[0] == want[k] for k in want)
        return ok, got, want, []

    return _timed("5 3-WL-equivalent base encoder", 60, body)


# 6 ---------------------------------------------------------------------------


def check_se_policy() -> CheckResult:
    def body():
        p4, s3 = path(4), star(3)
        ds = Tester.parse("ds:se").run(p4, s3)
        dss = Tester.parse("dss:se").run(p4, s3)
        ok = not ds.distinguished and dss.distinguished and dss.round == 1
        c6, t2 = cycle(6), disjoint_cycles([3, 3])
        reported = {
            "dss:se^ C6/2xC3": _verdict("dss:se^", c6, t2),
            "dss:se^:loo C6/2xC3": _verdict("dss:se^:loo", c6, t2),
            "ds:se^ C6/2xC3": _verdict("ds:se^", c6, t2),
        }
        observed = {"ds:se path4/star3": str(ds), "dss:se path4/star3": str(dss), "reported": reported}
        want = {"ds:se path4/star3": "POSSIBLY_ISOMORPHIC", "dss:se path4/star3": "DISTINGUISHED@1"}
        return ok, observed, want, ["augmented-SE C6/2xC3 verdicts are reported, not asserted"]

    return _timed("6 DSS vs DS separation under SE", 1, body)


# 7 ---------------------------------------------------------------------------


def _distinguished_pairs(graphs: list[Graph], tester: str) -> set[tuple[int, int]]:
    ids = corpus_classes(graphs, tester)
    return {(i, j) for i, j in combinations(range(len(graphs)), 2) if ids[i] != ids[j]}


def check_hierarchy(max_n: int = 6) -> CheckResult:
    def body():
        violations: dict[str, int] = {}
        examples: list[str] = []
        sizes = {}
        for n in range(1, max_n + 1):
            graphs = list(enumerate_graphs(n))
            sizes[n] = len(graphs)
            wl = _distinguished_pairs(graphs, "wl")
            for pol in ("nd", "ed", "ego:2"):
                ds = _distinguished_pairs(graphs, f"ds:{pol}")
                dss = _distinguished_pairs(graphs, f"dss:{pol}")
                ds_aug = _distinguished_pairs(graphs, f"ds:{pol}^")
                for rel, bad in (
                    (f"wl <= dss:{pol}", wl - dss),
                    (f"wl <= ds:{pol}^", wl - ds_aug),
                    (f"ds:{pol} <= dss:{pol}", ds - dss),
                ):
                    violations[rel] = violations.get(rel, 0) + len(bad)
                    for i, j in sorted(bad)[:2]:
                        examples.append(f"n={n} {rel}: {sorted(graphs[i].edges)} vs {sorted(graphs[j].edges)}")
        total = sum(violations.values())
        observed = {"classes_per_n": sizes, "violations": violations, "examples": examples}
        return total == 0, observed, {"violations": 0}, ["pairs compared within equal node count"]

    return _timed(f"7 refinement hierarchy over all graphs with n <= {max_n}", 300, body)


# 8 ---------------------------------------------------------------------------

SOUNDNESS_POLICIES = ("nd", "ed", "se", "ego:1", "ego:2", "ego+:1", "ego+:2")


def soundness_testers() -> list[str]:
    out = ["wl", "fwl2"]
    for p in SOUNDNESS_POLICIES:
        for aug in ("", "^"):
            out += [f"ds:{p}{aug}", f"dss:{p}{aug}"]
    out += ["ds:nd:fwl2", "ds:ego+:1^:fwl2"]
    return out


def random_corpus(count: int, seed: int, max_n: int = 10) -> list[tuple[Graph, list[int]]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        g = gnp(n, rng.choice((0.1, 0.3, 0.5, 0.7, 0.9)), rng)
        out.append((g, random_permutation(n, rng)))
    return out


def check_soundness(count: int = 200, seed: int = 2024) -> CheckResult:
    def body():
        corpus = random_corpus(count, seed)
        failures = []
        for t in soundness_testers():
            tester = Tester.parse(t)
            for idx, (g, sigma) in enumerate(corpus):
                v = tester.run(g, apply_permutation(g, sigma))
                if v.distinguished:
                    failures.append(f"{t} on graph #{idx}: {v}")
        rates = {}
        for ratio in (0.05, 0.2, 0.5):
            for t in ("ds:nd", "dss:nd", "ds:ed", "dss:ed"):
                cfg = SampleConfig(ratio, votes=5, seed=seed)
                hits = runs = 0
                for g, sigma in corpus:
                    if g.num_edges == 0 and "ed" in t:
                        continue  # empty bag, nothing to sample
                    runs += 1
                    hits += vote_test(g, apply_permutation(g, sigma), t, cfg).verdict.distinguished
                rates[f"{t}@{ratio}"] = round(hits / runs, 3)
        observed = {"deterministic_failures": failures[:10], "failure_count": len(failures),
                    "sampled_false_distinguish_rate": rates}
        return not failures, observed, {"failure_count": 0}, ["sampled rates are reported, not asserted"]

    return _timed("8 isomorphism soundness on random (g, sigma.g)", 120, body)


# 9 ---------------------------------------------------------------------------

INVARIANCE_POLICIES = (ND, ED, ego(1), ego(1, plus=True), PolicySpec.parse("se"))


def check_policy_invariance(count: int = 100, seed: int = 7) -> CheckResult:
    def body():
        failures = []
        for idx, (g, sigma) in enumerate(random_corpus(count, seed)):
            moved = apply_permutation(g, sigma)
            for p in INVARIANCE_POLICIES:
                if not bags_isomorphic(apply_policy(moved, p), apply_policy(g, p).permuted(sigma)):
                    failures.append(f"{p} on graph #{idx}")
        return not failures, {"failures": failures}, {"failures": []}, []

    return _timed("9 policy invariance under node permutation", 120, body)


# 10 --------------------------------------------------------------------------


def check_csl_homogeneity() -> CheckResult:
    def body():
        observed = {}
        ok = True
        for k in (2, 3):
            g = csl(8, k)
            for p in (ND, ego(1)):
                subs = apply_policy(g, p).subgraphs
                same = all(are_isomorphic(subs[0], s).isomorphic for s in subs[1:])
                observed[f"CSL(8,{k}) {p}"] = same
                ok &= same
        return ok, observed, {key: True for key in observed}, []

    return _timed("10 CSL node-deleted and ego-net homogeneity", 30, body)


# 11 --------------------------------------------------------------------------


def check_complexity(sizes: tuple[int, ...] = (16, 32, 64), repeats: int = 5) -> CheckResult:
    def body():
        tester = Tester.parse("ds:nd")
        rng = random.Random(11)
        times = {}
        for n in sizes:
            g = csl(n, 2)
            h = apply_permutation(g, random_permutation(n, rng))
            samples = []
            for _ in range(repeats):
                start = time.perf_counter()
                tester.run(g, h)
                samples.append(time.perf_counter() - start)
            times[n] = statistics.median(samples)
        slope = float(np.polyfit(np.log(list(times)), np.log(list(times.values())), 1)[0])
        observed = {"median_seconds": {n: round(t, 5) for n, t in times.items()}, "fitted_exponent": round(slope, 3)}
        return slope < 3.0, observed, {"fitted_exponent": "< 3.0"}, []

    return _timed("11 ds:nd runtime scaling on CSL(n,2)", 120, body)


# 12 --------------------------------------------------------------------------

CSL41_SKIPS = (2, 3, 4, 5, 6, 9, 11, 12, 13, 16)


def check_csl41() -> CheckResult:
    def body():
        graphs = [csl(41, k) for k in CSL41_SKIPS]
        rows = power_matrix(graphs, ["dss:nd"])["dss:nd"]
        missed = [
            (CSL41_SKIPS[i], CSL41_SKIPS[j])
            for i, j in combinations(range(len(graphs)), 2)
            if not rows[i][j].distinguished
        ]
        g9, g12 = csl(41, 9), csl(41, 12)
        ego_got = {t: _verdict(t, g9, g12) for t in ("ds:ego:2", "ds:ego:3", "ds:ego:4")}
        ego_want = {"ds:ego:2": "POSSIBLY_ISOMORPHIC", "ds:ego:3": "POSSIBLY_ISOMORPHIC", "ds:ego:4": "DISTINGUISHED"}
        ok = not missed and all(ego_got[t].split("@")[0] == ego_want[t] for t in ego_want)
        observed = {
            "dss:nd pairs": missed if missed else "all 45 distinguished",
            "ego on CSL(41,9)/CSL(41,12)": ego_got,
        }
        return ok, observed, {"dss:nd pairs": "all 45 distinguished", "ego on CSL(41,9)/CSL(41,12)": ego_want}, []

    return _timed("12 CSL(41, k) matrix and EGO depth 4", 180, body)


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_csl_separation,
    check_ego_depth,
    check_c6_ed,
    check_strongly_regular,
    check_fwl2_base,
    check_se_policy,
    check_hierarchy,
    check_soundness,
    check_policy_invariance,
    check_csl_homogeneity,
    check_complexity,
    check_csl41,
)


def run_all() -> list[CheckResult]:
    return [check() for check in CHECKS]
