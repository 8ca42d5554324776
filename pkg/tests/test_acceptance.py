"""Acceptance criteria, one test per criterion, each printing a pass/fail line.

All checks are exact integer comparisons.  Criterion 4's "max = 2 exactly for
C2^3 and C2xC4" clause is asserted strictly and is expected to fail: the
complete sweep finds max delta* = 2 for C6 as well (witness {e, 3e}), which
is forced by the even-order construction together with the monoid Davenport
constant D = 4 that criterion 5 itself demands.  The counterexample is a
property of the monoid, not of the implementation.
"""

import json
import random
import time

from pmzs import (
    Sequence,
    atom_length_profile,
    davenport,
    davenport_monoid,
    delta_star,
    enumerate_atoms,
    make_group,
    min_delta,
    min_delta_of_atoms,
    parse_group,
    parse_subset,
    rho_k,
)
from pmzs.cli import main as cli_main
from pmzs.relations import Factorizer
from pmzs.suite import small_groups
from helpers import gcd_of_length_differences_up_to_3


def _report(criterion: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    print(f"acceptance {criterion}: {status}" + (f"  ({detail})" if detail else ""))
    return ok


def test_criterion_1_single_generator_law():
    start = time.perf_counter()
    failures = []
    for group in small_groups(16):
        for i in range(1, group.order):
            g = group.element_at(i)
            d = g.order()
            atoms = enumerate_atoms(group, [g])
            lengths = sorted(atoms.lengths())
            md = min_delta_of_atoms(atoms)
            if d % 2 == 1:
                ok = lengths == [2, d] and md == d - 2
            else:
                ok = lengths == [2] and md is None
            if not ok:
                failures.append((str(group), str(g), lengths, md))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1.0
    assert _report("1 single-generator law", ok, f"{elapsed:.2f}s"), failures
    assert elapsed < 1.0


def test_criterion_2_min_delta_goldens():
    start = time.perf_counter()
    g5 = make_group([5])
    ok = min_delta(g5, [g5.element(1)]) == 3

    g8 = make_group([8])
    ok &= min_delta(g8, parse_subset(g8, "[(1),(3)]")) == 2

    g16 = make_group([2, 2, 2, 2])
    coset = [g16.element(1, a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    atoms = enumerate_atoms(g16, coset)
    ok &= min_delta_of_atoms(atoms) == 1
    ok &= atom_length_profile(atoms).gcd_lengths_minus_2 == 2

    g17 = make_group([17])
    ok &= min_delta(g17, parse_subset(g17, "[(1),(4)]")) == 3

    elapsed = time.perf_counter() - start
    assert _report("2 min-delta golden values", ok and elapsed < 30.0, f"{elapsed:.2f}s")


def test_criterion_3_delta_star_tables():
    start = time.perf_counter()
    expected = {
        "C3": (1,),
        "C4": (1,),
        "C2xC2": (1,),
        "C5": (1, 3),
        "C7": (1, 5),
        "C9": (1, 7),
        "C2xC2xC2": (1, 2),
    }
    mismatches = []
    reports = {}
    for group in small_groups(9):
        reports[str(group)] = delta_star(group)
    for spec, values in expected.items():
        if reports[spec].delta_star != values:
            mismatches.append((spec, reports[spec].delta_star, values))
    if reports["C2xC4"].max_delta != 2:
        mismatches.append(("C2xC4 max", reports["C2xC4"].max_delta, 2))
    c8_start = time.perf_counter()
    c8 = delta_star(parse_group("C8"))
    c8_elapsed = time.perf_counter() - c8_start
    if not (c8.max_delta == 3 and {1, 2, 3} <= set(c8.delta_star)):
        mismatches.append(("C8", c8.delta_star, "max 3, contains {1,2,3}"))
    elapsed = time.perf_counter() - start
    ok = not mismatches and all(reports[s].complete for s in reports) and elapsed < 600 and c8_elapsed < 120
    assert _report("3 delta-star tables", ok, f"sweeps<=9 {elapsed:.2f}s, C8 {c8_elapsed:.2f}s"), mismatches


def test_criterion_4_theorem_suites():
    from pmzs import check_elementary_p_gcd, check_odd_order_sandwich, check_parity

    failures = []
    for group in small_groups(10):
        report = delta_star(group)
        sandwich = check_odd_order_sandwich(group, report)
        parity = check_parity(group, report)
        if sandwich.status == "fail":
            failures.append((str(group), "odd-order-sandwich", sandwich.details))
        if parity.status == "fail":
            failures.append((str(group), "parity", parity.details))
    elp = check_elementary_p_gcd(parse_group("C3xC3"))
    if elp.status != "pass":
        failures.append(("C3xC3", "elementary-p-gcd", elp.details))
    assert _report("4 theorem suites (sandwich, parity, elementary-p)", not failures), failures


def test_criterion_4_small_max_classification():
    maxima = {str(g): delta_star(g).max_delta for g in small_groups(10)}
    max1_expected = {s for s in maxima if parse_group(s).exponent == 3} | {"C2xC2", "C4"}
    max1_got = {s for s, m in maxima.items() if m == 1}
    ok1 = max1_got == max1_expected

    max2_expected = {"C2xC2xC2", "C2xC4"}
    max2_got = {s for s, m in maxima.items() if m == 2}
    ok2 = max2_got == max2_expected

    _report("4 small-max classification", ok1 and ok2,
            f"max=1: {sorted(max1_got)}; max=2: {sorted(max2_got)}")
    assert ok1, (max1_got, max1_expected)
    # Known genuine discrepancy: the sweep also finds max delta* = 2 for C6
    # (witness {e, 3e}: atoms e^2, (3e)^2, e^3(3e), kernel vector (3,1,-2)).
    # That value is forced by D(monoid over C6) = 4, the very value criterion
    # 5 checks, so this classification cannot hold as stated.
    assert ok2, (
        "computed max-2 groups "
        f"{sorted(max2_got)} != expected {sorted(max2_expected)}; "
        "C6 is a genuine counterexample, see notes in the test module docstring"
    )


def test_criterion_5_davenport_cross_checks():
    failures = []
    for spec in ("C3", "C5", "C7", "C9", "C3xC3"):
        group = parse_group(spec)
        nonzero = [group.element_at(i) for i in range(1, group.order)]
        d_monoid = davenport_monoid(group, nonzero)
        if d_monoid != davenport(group):
            failures.append((spec, d_monoid, davenport(group)))
    for m in (2, 3, 4):
        group = make_group([2 * m])
        nonzero = [group.element_at(i) for i in range(1, group.order)]
        d_monoid = davenport_monoid(group, nonzero)
        if d_monoid != m + 1:
            failures.append((str(group), d_monoid, m + 1))
    for group in small_groups(8):
        nonzero = [group.element_at(i) for i in range(1, group.order)]
        r2 = rho_k(group, nonzero, 2)
        d_monoid = davenport_monoid(group, nonzero)
        if r2 != d_monoid:
            failures.append((str(group), "rho2", r2, d_monoid))
    assert _report("5 davenport cross-checks", not failures), failures


def test_criterion_6_kernel_oracle_equivalence():
    rng = random.Random(20260809)
    instances = 0
    failures = []
    for group in small_groups(9):
        nonzero = list(range(1, group.order))
        if len(nonzero) >= 4:
            sizes = [1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4]
        else:
            sizes = [1, 2] * 9
        for size in sizes:
            size = min(size, len(nonzero))
            subset_idx = sorted(rng.sample(nonzero, size))
            subset = [group.element_at(i) for i in subset_idx]
            atoms = enumerate_atoms(group, subset)
            kernel_value = min_delta_of_atoms(atoms)
            oracle_value = gcd_of_length_differences_up_to_3(atoms.vectors)
            instances += 1
            if kernel_value != oracle_value:
                failures.append((str(group), subset_idx, kernel_value, oracle_value))
            if kernel_value is not None:
                g = atom_length_profile(atoms).gcd_lengths_minus_2
                if g % kernel_value or (2 * kernel_value) % g:
                    failures.append((str(group), subset_idx, "sandwich", kernel_value, g))
    ok = not failures and instances >= 200
    assert _report("6 kernel/oracle equivalence", ok, f"{instances} instances"), failures[:5]
    assert instances >= 200


def test_criterion_7_square_length_sets():
    g36 = make_group([3, 6])
    subset = [g36.element(1, 1), g36.element(0, 1)]
    atoms36 = enumerate_atoms(g36, subset)
    u = Sequence.from_items(g36, [(g36.element(1, 1), 3), (g36.element(0, 1), 3)])
    ok = Factorizer(atoms36).length_set(u.power(2)) == (2, 6)

    checked = 0
    for group in small_groups(8):
        nonzero = [group.element_at(i) for i in range(1, group.order)]
        atoms = enumerate_atoms(group, nonzero)
        fz = Factorizer(atoms)
        for k in range(len(atoms)):
            atom_seq = atoms.sequence(k)
            lengths = set(fz.length_set(atom_seq.power(2)))
            checked += 1
            if not {2, len(atom_seq)} <= lengths:
                ok = False
    for spec, literal in [("C5", "[(1)]"), ("C8", "[(1),(3)]"), ("C17", "[(1),(4)]")]:
        group = parse_group(spec)
        atoms = enumerate_atoms(group, parse_subset(group, literal))
        fz = Factorizer(atoms)
        for k in range(len(atoms)):
            atom_seq = atoms.sequence(k)
            checked += 1
            if not {2, len(atom_seq)} <= set(fz.length_set(atom_seq.power(2))):
                ok = False
    assert _report("7 square length sets", ok, f"{checked} atoms checked")


def test_criterion_8_verify_determinism(capsys):
    code1 = cli_main(["verify", "all-small", "--format", "json", "--jobs", "1"])
    out1 = capsys.readouterr().out
    code8 = cli_main(["verify", "all-small", "--format", "json", "--jobs", "8"])
    out8 = capsys.readouterr().out
    ok = out1 == out8 and code1 == code8
    json.loads(out1)  # well-formed artifact
    _report("8 verify determinism across job counts", ok)
    assert ok
