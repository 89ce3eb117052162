"""Named verification suites: each one checks a theorem instance by instance.

A suite takes a parameter grid, runs every instance independently (optionally
in worker processes) and returns a ``SuiteReport``.  Failing instances carry
a counterexample: the code in ``.code`` format and the generators or group
that were used, so the failure can be replayed with ``hamnt certify``.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

from .codes import (
    Code,
    diag_stabilizer,
    format_code,
    is_completely_transitive,
    is_connected,
    is_diagonally_nt,
    is_nt,
    is_s_regular,
    neighbour_set,
    orbit,
    setwise_stabilizer,
)
from .families import (
    all_fpa,
    blowup_aut,
    inj,
    matching_cases,
    perm_code,
    rep,
    rep_p_blowup,
    replace_block,
    w_half,
    x_group,
)
from .hamming import (
    HammingAut,
    all_vertices,
    diag_wreath_elements,
    diag_wreath_order,
    distance,
    full_wreath_elements,
    neighbours,
)
from .perm import (
    all_subgroups,
    identity,
    is_2_transitive,
    normalizer_in_sym,
    symmetric_group,
)


@dataclass
class InstanceResult:
    params: dict
    passed: bool
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None


@dataclass
class SuiteReport:
    name: str
    grid: dict
    instances: list[InstanceResult]
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.instances)

    def failures(self) -> list[InstanceResult]:
        return [r for r in self.instances if not r.passed]

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.name,
            "grid": self.grid,
            "passed": self.passed,
            "instances": [asdict(r) for r in self.instances],
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _counterexample(C: Code, group: list[HammingAut] | None = None, note: str = "") -> dict:
    out = {"code": format_code(C, note or None)}
    if group is not None:
        out["group_order"] = len(group)
        out["generators"] = [str(x) for x in group[:16]]
    return out


def _run(name: str, grid: dict, fn: Callable, params: list[dict], workers: int) -> SuiteReport:
    start = time.perf_counter()
    if workers > 1 and len(params) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, params))
    else:
        results = [fn(p) for p in params]
    return SuiteReport(name, grid, results, time.perf_counter() - start)


# --- family theorem: NT, full stabiliser, minimum distance ------------------

FAMILY_GRID = {
    "rep": [(m, q) for m in (2, 3, 4) for q in (2, 3, 4)],
    "inj": [(2, 3), (2, 4), (3, 4)],
    "whalf": [3, 5],
    "all": [(1, 3), (2, 2), (1, 4), (2, 3)],
}
FAMILY_GRID_FULL = {
    "rep": [(m, q) for m in (2, 3, 4, 5) for q in (2, 3, 4, 5)],
    "inj": [(2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)],
    "whalf": [3, 5, 7, 9],
    "all": [(1, 3), (2, 2), (1, 4), (2, 3), (3, 2), (4, 2), (1, 5)],
}


def _family_code(family: str, args) -> tuple[Code, int]:
    """The code and its expected minimum distance."""
    if family == "rep":
        m, q = args
        return rep(m, q), m
    if family == "inj":
        return inj(*args), 1
    if family == "whalf":
        return w_half(args), 1
    if family == "all":
        return all_fpa(*args), 2
    raise ValueError(f"unknown family {family!r}")


def _check_family(params: dict) -> InstanceResult:
    C, delta = _family_code(params["family"], params["args"])
    cert = is_diagonally_nt(C)
    order = diag_wreath_order(C.m, C.q)
    details = {
        "nt": cert.verdict,
        "stabilizer_order": cert.group_order,
        "expected_order": order,
        "delta": C.delta,
        "expected_delta": delta,
    }
    ok = cert.verdict and cert.group_order == order and C.delta == delta
    return InstanceResult(params, ok, details, None if ok else _counterexample(C, cert.witness_group))


def suite_family_theorem(full: bool = False, workers: int = 1, grid: dict | None = None) -> SuiteReport:
    grid = grid or (FAMILY_GRID_FULL if full else FAMILY_GRID)
    params = [{"family": fam, "args": args} for fam, items in grid.items() for args in items]
    return _run("thm-codes", grid, _check_family, params, workers)


# --- no automorphisms outside the diagonal group ----------------------------

WREATH_GRID = [("rep", (3, 2)), ("rep", (3, 3)), ("whalf", 3), ("all", (2, 2))]


def _check_wreath(params: dict) -> InstanceResult:
    C, _ = _family_code(params["family"], params["args"])
    full = setwise_stabilizer(C, full_wreath_elements(C.m, C.q))
    diag = set(diag_wreath_elements(C.m, C.q))
    outside = [x for x in full if x not in diag]
    ok = not outside and len(full) == len(diag)
    details = {"aut_order": len(full), "diag_order": len(diag), "outside": len(outside)}
    return InstanceResult(params, ok, details, None if ok else _counterexample(C, outside))


def suite_full_wreath(full: bool = False, workers: int = 1) -> SuiteReport:
    params = [{"family": f, "args": a} for f, a in WREATH_GRID]
    return _run("aut-wreath", {"instances": WREATH_GRID}, _check_wreath, params, workers)


# --- covering radius and the far cell --------------------------------------

RADIUS_GRID = {"whalf": [3, 5, 7], "all": [(1, 3), (2, 2), (2, 3), (1, 4)], "ct": [3, 5]}
RADIUS_GRID_FULL = {"whalf": [3, 5, 7, 9, 11], "all": [(1, 3), (2, 2), (2, 3), (1, 4), (3, 2), (4, 2), (1, 5)],
                    "ct": [3, 5, 7]}


def _check_radius(params: dict) -> InstanceResult:
    kind = params["kind"]
    if kind == "whalf":
        m = params["m"]
        C = w_half(m)
        rho, far = (m - 1) // 2, rep(m, 2)
    elif kind == "all":
        p, q = params["p"], params["q"]
        C = all_fpa(p, q)
        rho, far = p * (q - 1), rep(p * q, q)
    else:
        m = params["m"]
        ok_w = _completely_transitive(w_half(m))
        ok_r = _completely_transitive(rep(m, 2))
        ok = ok_w and ok_r
        return InstanceResult(params, ok, {"whalf_ct": ok_w, "rep_ct": ok_r},
                              None if ok else _counterexample(w_half(m) if not ok_w else rep(m, 2)))
    got_far = C.partition.cells[-1]
    ok = C.rho == rho and got_far == far.wordset
    details = {"rho": C.rho, "expected_rho": rho, "far_cell_size": len(got_far), "far_is_rep": got_far == far.wordset}
    return InstanceResult(params, ok, details, None if ok else _counterexample(C))


def _completely_transitive(C: Code) -> bool:
    return is_completely_transitive(C, diag_stabilizer(C), check=False)


def suite_radius(full: bool = False, workers: int = 1) -> SuiteReport:
    grid = RADIUS_GRID_FULL if full else RADIUS_GRID
    params = [{"kind": "whalf", "m": m} for m in grid["whalf"]]
    params += [{"kind": "all", "p": p, "q": q} for p, q in grid["all"]]
    params += [{"kind": "ct", "m": m} for m in grid["ct"]]
    return _run("cor-radius", grid, _check_radius, params, workers)


# --- connectivity of Inj and W, and proper subcodes meeting C_1 ------------

CONNECTED_GRID = {"inj": [(2, 3), (2, 4), (3, 4)], "whalf": [3, 5, 7]}
CONNECTED_GRID_FULL = {"inj": [(2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)], "whalf": [3, 5, 7, 9]}


def _check_connected(params: dict) -> InstanceResult:
    D = inj(*params["args"]) if params["family"] == "inj" else w_half(params["args"])
    rng = random.Random(params["seed"])
    connected = is_connected(D.words)
    misses = []
    for _ in range(params["samples"]):
        size = rng.randrange(1, len(D))
        sub = Code(D.m, D.q, tuple(rng.sample(D.words, size)))
        if not (neighbour_set(sub) & D.wordset):
            misses.append(sub)
    ok = connected and not misses
    details = {"connected": connected, "samples": params["samples"], "misses": len(misses)}
    bad = misses[0] if misses else D
    return InstanceResult(params, ok, details, None if ok else _counterexample(bad))


def suite_connected(full: bool = False, workers: int = 1, samples: int = 100, seed: int = 0) -> SuiteReport:
    grid = CONNECTED_GRID_FULL if full else CONNECTED_GRID
    params = [{"family": "inj", "args": a, "samples": samples, "seed": seed} for a in grid["inj"]]
    params += [{"family": "whalf", "args": m, "samples": samples, "seed": seed} for m in grid["whalf"]]
    return _run("lemma-connected", {**grid, "samples": samples, "seed": seed}, _check_connected, params, workers)


# --- exhaustive classification ---------------------------------------------

CLASSIFY_GRID = [(2, 2), (3, 2), (4, 2), (2, 3), (2, 4)]
# positives per instance, from a first run cross-checked against a sweep over
# all subgroups of Diag_m(S_q) x| L and their orbits
KNOWN_POSITIVES = {
    (2, 2): {"Singleton": 2, "Repetition": 1, "FPASubset": 3},
    (3, 2): {"Singleton": 2, "Repetition": 1, "MiddleWeight": 1},
    (4, 2): {"Singleton": 2, "Repetition": 1, "FPASubset": 13},
    (2, 3): {"Singleton": 3, "Repetition": 1, "Injection": 1},
    (2, 4): {"Singleton": 4, "Repetition": 1, "Injection": 1},
}
MAX_SWEEP_VERTICES = 16


def sweep_diagonally_nt(m: int, q: int) -> list[Code]:
    """Every diagonally neighbour-transitive code in H(m, q), by trying all subsets."""
    V = all_vertices(m, q)
    if len(V) > MAX_SWEEP_VERTICES:
        raise ValueError(f"H({m}, {q}) has {len(V)} vertices; the sweep is capped at {MAX_SWEEP_VERTICES}")
    found = []
    for mask in range(1, 2 ** len(V)):
        C = Code(m, q, tuple(V[i] for i in range(len(V)) if mask >> i & 1))
        if is_diagonally_nt(C).verdict:
            found.append(C)
    return found


def _check_classify(params: dict) -> InstanceResult:
    m, q = params["m"], params["q"]
    positives = sweep_diagonally_nt(m, q)
    counts: Counter = Counter()
    bad = []
    for C in positives:
        cases = matching_cases(C)
        if len(cases) != 1:
            bad.append(C)
            continue
        counts[cases[0].variant.value] += 1
    expected = KNOWN_POSITIVES.get((m, q))
    ok = not bad and (expected is None or dict(counts) == expected)
    details = {
        "candidates": 2 ** (q**m) - 1,
        "positives": len(positives),
        "by_case": dict(sorted(counts.items())),
        "expected_by_case": expected,
        "unclassified": len(bad),
    }
    return InstanceResult(params, ok, details, _counterexample(bad[0]) if bad else None)


def suite_classification(full: bool = False, workers: int = 1, grid: list | None = None) -> SuiteReport:
    grid = grid or CLASSIFY_GRID
    params = [{"m": m, "q": q} for m, q in grid]
    return _run("thm-main2", {"instances": grid}, _check_classify, params, workers)


# --- permutation codes: 1-regular with delta = 2 only for the full group ------

ONE_REG_QS = [3, 4, 5]


def _one_regular_delta2(C: Code) -> bool:
    return len(C) > 1 and C.delta == 2 and is_s_regular(C, 1)


def _check_one_reg(params: dict) -> InstanceResult:
    q = params["q"]
    sym = symmetric_group(q)
    if params["subsets"]:
        elems = sorted(sym.elements)
        candidates = [[elems[i] for i in range(len(elems)) if mask >> i & 1]
                      for mask in range(1, 2 ** len(elems))]
    else:
        candidates = [sorted(T.elements) for T in all_subgroups(q)]
    hits = []
    wrong = []
    for T in candidates:
        C = perm_code(T)
        got = _one_regular_delta2(C)
        if got:
            hits.append(len(T))
        if got != (len(T) == sym.order):
            wrong.append(C)
    ok = not wrong
    details = {"candidates": len(candidates), "hits": len(hits), "hit_orders": hits}
    return InstanceResult(params, ok, details, _counterexample(wrong[0]) if wrong else None)


def suite_one_regular(full: bool = False, workers: int = 1, qs: list[int] | None = None) -> SuiteReport:
    qs = qs or ONE_REG_QS
    params = [{"q": q, "subsets": q <= 3} for q in qs]
    return _run("lemma-1reg", {"q": qs}, _check_one_reg, params, workers)


# --- permutation codes of groups: NT iff the normaliser is 2-transitive ------

PERMIFF_QS = [3, 4, 5]


def _check_permiff_q(params: dict) -> InstanceResult:
    q = params["q"]
    rows = []
    wrong = []
    for T in all_subgroups(q):
        C = perm_code(T)
        nt = is_diagonally_nt(C).verdict
        N = normalizer_in_sym(T)
        two = is_2_transitive(N)
        witness = None
        if two:
            # the explicit group <A(T), Diag(T)> must also witness it
            witness = is_nt(C, x_group(T), check=False).verdict
        rows.append({"order": T.order, "normalizer_order": N.order, "nt": nt, "two_transitive": two})
        if nt != two or witness is False:
            wrong.append((C, T))
    ok = not wrong
    details = {
        "subgroups": len(rows),
        "nt_count": sum(r["nt"] for r in rows),
        "by_order": _tally(rows),
    }
    ce = None
    if wrong:
        C, T = wrong[0]
        ce = _counterexample(C, note="generators: " + "; ".join(g.cycle_str() for g in T.generators))
    return InstanceResult(params, ok, details, ce)


def _tally(rows: list[dict]) -> list[list]:
    c = Counter((r["order"], r["normalizer_order"], r["nt"]) for r in rows)
    return [[o, n, nt, k] for (o, n, nt), k in sorted(c.items())]


def suite_permiff(full: bool = False, workers: int = 1, qs: list[int] | None = None) -> SuiteReport:
    qs = qs or PERMIFF_QS
    return _run("thm-permiff", {"q": qs}, _check_permiff_q, [{"q": q} for q in qs], workers)


# --- Rep_p blow-up keeps neighbour transitivity when delta >= 2 --------------

BLOWUP_QS = [3, 4]


def product_with_sym(X: list[HammingAut], p: int) -> list[HammingAut]:
    """X x S_p acting on p-tuples of vertices."""
    return [blowup_aut(x, tau) for x in X for tau in sorted(symmetric_group(p).elements)]


def _check_blowup_q(params: dict) -> InstanceResult:
    q, p = params["q"], params["p"]
    checked = []
    wrong = []
    for T in all_subgroups(q):
        C = perm_code(T)
        if len(C) < 2 or C.delta < 2 or not is_diagonally_nt(C).verdict:
            continue
        X = x_group(T)
        a1 = identity(q).images
        stab = [x for x in X if x(a1) == a1]
        sphere = frozenset(neighbours(a1, q))
        local = orbit(min(sphere), stab) == sphere
        XS = product_with_sym(X, p)
        B = rep_p_blowup(C, p)
        nt = is_nt(B, XS, check=False).verdict
        diagonal = all(x.is_diagonal() for x in XS)
        fpa = all(sorted(w) == sorted(list(range(q)) * p) for w in B.words)
        diag_nt = is_diagonally_nt(B).verdict
        checked.append({"order": T.order, "x_order": len(X), "local": local, "nt": nt, "diag_nt": diag_nt})
        if not (local and nt and diagonal and fpa and diag_nt):
            wrong.append(B)
    ok = not wrong and bool(checked)
    details = {"codes": checked}
    return InstanceResult(params, ok, details, _counterexample(wrong[0]) if wrong else None)


def delta1_separation(C: Code, p: int) -> dict:
    """Neighbours of Rep_p(C) that Aut(C) x S_p cannot swap when delta = 1.

    For codewords a, b at distance 1 and a neighbour v of a outside C, the
    vertices rep_p(a) with its first block replaced by v, respectively by b,
    are both neighbours of Rep_p(C) but lie in different orbits.
    """
    aut = setwise_stabilizer(C, full_wreath_elements(C.m, C.q))
    G = product_with_sym(aut, p)
    B = rep_p_blowup(C, p)
    nbrs = neighbour_set(B)
    c1 = neighbour_set(C)
    pairs = 0
    separated = 0
    for a in C.words:
        ra = a * p
        for b in C.words:
            if distance(a, b) != 1:
                continue
            for v in neighbours(a, C.q):
                if v not in c1:
                    continue
                n1 = replace_block(ra, C.m, 0, v)
                n2 = replace_block(ra, C.m, 0, b)
                pairs += 1
                if n1 in nbrs and n2 in nbrs and n2 not in orbit(n1, G):
                    separated += 1
    return {"aut_order": len(aut), "pairs": pairs, "separated": separated}


def suite_blowup(full: bool = False, workers: int = 1, qs: list[int] | None = None, p: int = 2) -> SuiteReport:
    qs = qs or BLOWUP_QS
    params = [{"q": q, "p": p} for q in qs]
    report = _run("lemma-rep", {"q": qs, "p": p}, _check_blowup_q, params, workers)
    start = time.perf_counter()
    C = inj(2, 3)
    sep = delta1_separation(C, p)
    ok = sep["pairs"] > 0 and sep["separated"] == sep["pairs"]
    report.instances.append(InstanceResult({"delta1": "Inj(2,3)", "p": p}, ok, sep,
                                           None if ok else _counterexample(rep_p_blowup(C, p))))
    report.wall_time += time.perf_counter() - start
    return report


SUITES = {
    "thm-codes": suite_family_theorem,
    "aut-wreath": suite_full_wreath,
    "cor-radius": suite_radius,
    "lemma-connected": suite_connected,
    "thm-main2": suite_classification,
    "lemma-1reg": suite_one_regular,
    "thm-permiff": suite_permiff,
    "lemma-rep": suite_blowup,
}
