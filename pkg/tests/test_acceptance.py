"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed as they happen
and again in the pytest terminal summary.  Run this file directly to get
just the twelve lines.
"""
import math
import random
import time

from machines import A_EQ, A_EQSTAR, brute_zero_turn, random_pdas, zero_turn_suite
from turnpda import languages as L
from turnpda.catalog import lookup, sample_stream
from turnpda.decision import decide_zero_turn
from turnpda.mathkit import TOLERANCE, lg, logk, logstar
from turnpda.normal import normalize
from turnpda.search import enumerate_accepting, min_turns, turn_curve, turn_table
from turnpda.tm import build_invalid_oca, build_pnotvalid_oca, split_blocks, tm_halting_after, tm_run

RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, detail: str, started: float, budget: float) -> None:
    elapsed = time.perf_counter() - started
    in_time = elapsed < budget
    status = "PASS" if ok and in_time else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title} ({detail}; {elapsed:.2f}s of {budget:g}s)"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def test_criterion_01_turn_ground_truth():
    start = time.perf_counter()
    bad = []
    for j in range(1, 5):
        for k in range(1, 6):
            w = ("a" * j + "b" * j) * k
            r = min_turns(A_EQSTAR, w)
            runs = enumerate_accepting(A_EQSTAR, w)
            if not (r.min_turns == k == runs.min_turns and not runs.pruned):
                bad.append((j, k, r.min_turns, runs.min_turns))
    report(1, "min_turns(A_eq*, (a^j b^j)^k) = k, j<=4, k<=5, oracle agrees", not bad,
           f"20 cases, {len(bad)} mismatches", start, 1.0)


def test_criterion_02_normal_form():
    start = time.perf_counter()
    machines = [("eq", A_EQ, "ab"), ("eqstar", A_EQSTAR, "ab"), ("lsq", L.build_lsq_oca(), "0ab"),
                ("L1", L.build_Lk_oca(1), "01$ab"), ("L2", L.build_Lk_oca(2), "01$ab")]
    machines += [(f"random{i}", p, "ab") for i, p in enumerate(random_pdas())]
    bad = []
    words = 0
    rng = random.Random(0)
    for name, pda, alphabet in machines:
        norm = normalize(pda)
        original, p1 = turn_table(pda, alphabet, 8)
        normal, p2 = turn_table(norm, alphabet, 8)
        words += len(original)
        if p1 or p2 or original != normal:
            bad.append(name)
            continue
        # spot check the table against the single-word search on both sides
        for w in rng.sample(sorted(original), min(10, len(original))):
            if not min_turns(pda, w).min_turns == min_turns(norm, w).min_turns == original[w]:
                bad.append(name)
    report(2, "normal form keeps language and min turns, |w|<=8", not bad,
           f"{len(machines)} machines, {words} accepted words, mismatches: {bad or 'none'}", start, 120.0)


def test_criterion_03_zero_turn_decision():
    start = time.perf_counter()
    suite = zero_turn_suite()
    suite["L2"] = L.build_Lk_oca(2)
    suite["ustar"] = L.build_Ustar_oca()
    suite["invalid_tm1"] = build_invalid_oca(tm_halting_after(1))
    verdicts = {name: decide_zero_turn(pda) for name, pda in suite.items()}
    brute = {name: brute_zero_turn(pda, 6) for name, pda in suite.items()}
    required = (verdicts["eq"] is False and verdicts["stackless"] is True
                and all(v for n, v in verdicts.items() if n.startswith("push_free")))
    disagree = [n for n in suite if verdicts[n] != brute[n]]
    report(3, "zero-turn decision vs brute force on the suite", required and not disagree,
           f"{len(suite)} machines, {sum(verdicts.values())} accept in 0 turns, disagreements: {disagree or 'none'}",
           start, 60.0)


def test_criterion_04_lsq_upper_bound():
    start = time.perf_counter()
    pda = L.build_lsq_oca()
    bad = []
    words = ["".join("0" * i + "ab" for i in range(1, m + 1)) for m in range(1, 9)]
    table = turn_curve(pda, words, len(words[-1]))
    for m, row in enumerate(table, 1):
        if row.max_min_turns != m or m > math.ceil(math.sqrt(2 * row.n)) + 1:
            bad.append((m, row.n, row.max_min_turns))
    report(4, "Lsq curve: max_min_turns = m <= ceil(sqrt(2n)) + 1, m<=8", not bad and len(table.rows) == 8,
           f"rows {[(r.n, r.max_min_turns) for r in table]}", start, 30.0)


def test_criterion_05_lk_upper_bound():
    start = time.perf_counter()
    bad = []
    counts = []
    for k in (1, 2):
        entry = lookup(f"Lk:{k}")
        stream = list(sample_stream(entry, 500, 3, random.Random(k), 10))
        table = turn_curve(entry.build(), stream, 500)
        counts.append((k, len(stream), max(r.max_min_turns or 0 for r in table)))
        for row in table:
            if row.flagged or row.max_min_turns > max(1, logk(k, row.n)) + TOLERANCE:
                bad.append((k, row.n, row.max_min_turns))
    report(5, "L^(k) curves within max(1, logk(k,n)) up to n=500, k=1,2", not bad,
           f"(k, samples, max turns) {counts}, violations: {bad or 'none'}", start, 120.0)


def test_criterion_06_lk_lower_bound():
    start = time.perf_counter()
    bad = []
    seen = []
    for t, k in [(2, 1), (3, 1)]:
        pda = L.build_Lk_oca(k)
        w = L.gen_lb_witness_Lk(t, k, 1)
        below = enumerate_accepting(pda, w, turn_limit=t - 1)
        best = min_turns(pda, w).min_turns
        seen.append((t, k, len(w), best))
        if below or below.pruned or best != t:
            bad.append((t, k))
    report(6, "lower-bound witnesses need t turns, (t,k) in {(2,1),(3,1)}", not bad,
           f"(t, k, |w|, min turns) {seen}", start, 120.0)


def test_criterion_07_ustar():
    start = time.perf_counter()
    pda = L.build_Ustar_oca()
    ys = [L.gen_listbin(m) for m in (16, 4, 2, 1)]

    def u(zs):
        return "".join(y + z for y, z in zip(ys, zs))

    turns = [min_turns(pda, L.gen_uk(k, 1)).min_turns for k in (1, 2, 3)]
    example = u(["ab"] * 4)
    example_turns = min_turns(pda, example).min_turns
    # membership bullets: no (a), no (b), and u in U^(4) iff every z_i is in Eq
    verdicts_ok = (L.u_conditions(example) == {"c"} and L.decide_Uk(example, 4)
                   and not L.decide_Uk(u(["ab", "ab", "ba", "ab"]), 4)
                   and not L.decide_Uk(u(["ab", "aab", "ab", "ab"]), 4)
                   and L.decide_Uk(u(["aabb", "ab", "aaabbb", "ab"]), 4))
    entry = lookup("ustar")
    stream = list(sample_stream(entry, 400, 3, random.Random(7), 10))
    table = turn_curve(pda, stream, 400)
    curve_ok = all(not r.flagged and r.max_min_turns <= logstar(r.n) for r in table)
    ok = turns == [1, 2, 3] and example_turns == 4 and verdicts_ok and curve_ok
    report(7, "U*: u_k needs k turns, the k=4 string needs 4, curve <= log* n", ok,
           f"u_k turns {turns}, example {example_turns}, verdicts {verdicts_ok}, curve rows {len(table.rows)} ok {curve_ok}",
           start, 120.0)


def test_criterion_08_l2_profiles():
    start = time.perf_counter()
    w1 = "1$10$11$100$$1$10$$ab$ab$aabb$"
    w2 = "1$10$11$100$101$110$111$1000$$1$10$11$$ab$ba$"
    w3 = "1$10$11$100$101$110$111$1000$$1$10$11$$aabb$"
    profiles = [L.lk_conditions(w, 2) for w in (w1, w2, w3)]
    ok = all(L.decide_Lk(w, 2) for w in (w1, w2, w3)) and profiles == [{"b", "c"}, {"b"}, {"c"}]
    report(8, "condition profiles of w1, w2, w3 under L^(2)", ok,
           f"profiles {[''.join(sorted(p)) for p in profiles]}", start, 1.0)


def test_criterion_09_listbin_and_wtk_sizes():
    start = time.perf_counter()
    bad = []
    for m in range(1, 1001):
        y = L.gen_listbin(m)
        last = L.last_block(y)
        if not (len(last) <= lg(len(y)) + TOLERANCE
                and y.count("$") == m == int(last, 2) >= 2 ** (len(last) - 1)
                and len(y) <= 2 * m + m * lg(m) + TOLERANCE):
            bad.append(m)
    sizes = []
    for t, k in [(3, 1), (4, 1), (3, 2)]:
        size, n = len(L.gen_wtk(t, k)), L.gen_ntk(t, k)
        sizes.append((t, k, size, n * n))
        if not size < n * n:
            bad.append((t, k))
    report(9, "ListBin properties for m<=1000 and |w_tk| < n_tk^2", not bad,
           f"(t, k, |w|, n^2) {sizes}", start, 10.0)


def test_criterion_10_log_inequalities():
    start = time.perf_counter()
    rng = random.Random(0)
    bad = 0
    samples = 20000
    for _ in range(samples):
        beta = rng.randint(2, 10**6 - 1)
        alpha = rng.randint(beta + 1, 10**6)
        if not lg(alpha * beta) < 2 * lg(alpha) + TOLERANCE:
            bad += 1
        for k in (2, 3, 4):
            if not logk(k, alpha * beta) < 1 + logk(k, alpha) + TOLERANCE:
                bad += 1
    report(10, "lg(ab) < 2 lg a and logk(k, ab) < 1 + logk(k, a), k<=4", bad == 0,
           f"{samples} sampled pairs, {bad} violations", start, 5.0)


def test_criterion_11_pnotvalid():
    start = time.perf_counter()
    found = []
    for m in (1, 2, 3):
        tm = tm_halting_after(m)
        pda = build_pnotvalid_oca(tm)
        blocks = split_blocks(tm_run(tm))
        for j in range(1, 5):
            z = ("a",) * j + ("b",) * j
            x = tuple(s for block in blocks for s in block + z)
            found.append((m, j, min_turns(pda, x).min_turns))
    ok = all(turns == m for m, _, turns in found)
    report(11, "pNotValid witnesses need m turns for m=1..3, z up to a^4b^4", ok,
           f"(m, j, turns) {found}", start, 120.0)


def test_criterion_12_logstar():
    start = time.perf_counter()
    landmarks = (logstar(65536), logstar(65537), logstar(16))
    band = all(logstar(n) == 4 for n in list(range(17, 200)) + list(range(65000, 65537)))
    ok = landmarks == (4, 5, 3) and band
    report(12, "log* landmarks 65536->4, 65537->5, 16->3", ok,
           f"values {landmarks}, log* n = 4 on sampled 16 < n <= 65536: {band}", start, 1.0)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
