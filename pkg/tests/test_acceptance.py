"""Acceptance gate: one test per criterion, each logging a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines are also collected in
the terminal summary) or ``python tests/test_acceptance.py``.
"""

import time
from pathlib import Path

from narayana.identities import fixed_forms, general_form, perturb, self_convolution
from narayana.oeis import cross_check, load_bfile
from narayana.polynomial import discriminant, one_minus_x_minus_xk, x_power_mod
from narayana.sequences import combine_initial, fibonacci_spec, narayana_spec, term_at, terms
from narayana.verify import (
    DEFAULT_THETAS,
    CampaignConfig,
    check_form,
    check_lemma1,
    check_lemma2,
    check_proof_reconstruction,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
MOD = 1_000_000_007


def _failures(records):
    return [r.to_line() for r in records if not r.passed]


def criterion_1():
    t0 = time.perf_counter()
    recs = []
    for k in range(2, 13):
        recs += check_form(general_form(k), 500, "theorem1")
    dt = time.perf_counter() - t0
    cells = sum(r.cells_checked for r in recs)
    bad = _failures(recs)
    ok = not bad and cells == 11 * 501 and dt < 30
    return ok, f"general identity k=2..12 n<=500: {cells} cells, {dt:.1f}s" + (f"; {bad[0]}" if bad else "")


def criterion_2():
    want = {
        3: (31, [(9, (1, 1), 2), (-3, (1, 3), 1), (-2, (1, 2), 0)]),
        4: (283, [(64, (1, 2), 3), (-16, (1, 5), 2), (-12, (1, 4), 1), (-9, (1, 3), 0)]),
    }
    got_d = [general_form(k).lhs_multiplier for k in (2, 3, 4)]
    ok = got_d == [5, 31, 283]
    for k, (d, coeffs) in want.items():
        f = general_form(k)
        got = sorted((t.coeff, t.n_weight, t.index_offset) for t in f.rhs_terms)
        ok = ok and f.lhs_multiplier == d and got == sorted(coeffs)
    return ok, f"multipliers {got_d}; k=3 and k=4 coefficient lists"


def criterion_3():
    t0 = time.perf_counter()
    names = {"fibonacci-2n", "fibonacci-prev", "fibonacci-outer", "fibonacci-lucas", "lucas", "rabinowitz"}
    forms = [f for f in fixed_forms() if f.name in names]
    recs = []
    for f in forms:
        recs += check_form(f, 1000, "catalog")
    dt = time.perf_counter() - t0
    rab = next(r for r in recs if r.params["form"] == "rabinowitz")
    bad = _failures(recs)
    ok = not bad and len(recs) == 6 and rab.params["n_min"] == 2 and rab.cells_checked == 999 and dt < 10
    return ok, f"{len(recs)} catalog forms to n=1000, {sum(r.cells_checked for r in recs)} cells, {dt:.1f}s" + (f"; {bad[0]}" if bad else "")


def criterion_4():
    t0 = time.perf_counter()
    recs = check_proof_reconstruction(CampaignConfig(k_min=2, k_max=8, series_order=200))
    dt = time.perf_counter() - t0
    bad = _failures(recs)
    kinds = {r.check_id for r in recs}
    ok = not bad and len(recs) == 5 * 7 and kinds == {"proof-gf", "proof-B", "proof-C", "proof-cancel", "proof-A"} and dt < 60
    return ok, f"series reconstruction k=2..8 order 200: {len(recs)} checks, {dt:.1f}s" + (f"; {bad[0]}" if bad else "")


def criterion_5():
    recs = [check_lemma1(t.numerator, t.denominator, 64) for t in DEFAULT_THETAS]
    recs.append(check_lemma2(range(2, 65), 64))
    bad = _failures(recs)
    ok = not bad and len(DEFAULT_THETAS) == 6 and recs[-1].cells_checked == 63 * 65
    return ok, f"lemma1 for {len(DEFAULT_THETAS)} thetas m<=64; lemma2 {recs[-1].cells_checked} cells" + (f"; {bad[0]}" if bad else "")


def criterion_6():
    got = [discriminant(one_minus_x_minus_xk(k)) for k in (2, 3, 4)]
    return got == [5, -31, -283], f"discriminants {got}"


def criterion_7():
    t0 = time.perf_counter()
    mismatch = None
    for k in range(2, 9):
        spec = narayana_spec(k)
        values = terms(spec, 10_000).values
        for n in range(10_001):
            if term_at(spec, n) != values[n]:
                mismatch = (k, n)
                break
        if mismatch:
            break
    small_dt = time.perf_counter() - t0

    n = 10**12
    a, b = 10**6, 10**6 - 1
    c = n - a * b
    consistent = True
    for k in range(2, 9):
        spec = narayana_spec(k)
        char = spec.characteristic_polynomial()
        direct = [term_at(spec, n + j, MOD) for j in range(k + 1)]
        # (x^a)^b * x^c with everything reduced mod the characteristic polynomial and MOD
        xa = x_power_mod(a, char, MOD)
        residue = (xa.pow_mod(b, char, MOD) * x_power_mod(c, char, MOD)).rem_monic(char, MOD)
        split = combine_initial(spec, residue, MOD)
        recurrent = (direct[k - 1] + direct[0]) % MOD == direct[k]
        consistent = consistent and split == direct[0] and recurrent
    ok = mismatch is None and consistent
    detail = f"term_at = iteration for n<=10^4, k=2..8 ({small_dt:.1f}s); n=10^12 mod {MOD}: two decompositions agree and satisfy the recurrence"
    if mismatch:
        detail += f"; first mismatch k={mismatch[0]} n={mismatch[1]}"
    if not consistent:
        detail += "; large-n consistency failed"
    return ok, detail


def _mutants(k):
    base = general_form(k)
    yield "D", perturb(base, None)
    for i in range(len(base.rhs_terms)):
        for field in ("coeff", "alpha", "beta"):
            yield f"term{i}.{field}", perturb(base, i, field)


def criterion_8():
    escaped = []
    total = 0
    worst = 0
    for k in range(2, 7):
        for label, form in _mutants(k):
            total += 1
            (rec,) = check_form(form, k + 3, "theorem1")
            if rec.passed:
                escaped.append(f"k={k} {label}")
            else:
                worst = max(worst, rec.counterexample["inputs"]["n"] - k)
    ok = not escaped
    detail = f"{total} single-field mutants for k=2..6 all fail by n<=k+3 (latest: n=k+{worst})"
    if escaped:
        detail = f"{len(escaped)} of {total} mutants survive n<=k+3: {', '.join(escaped[:5])}"
    return ok, detail


def criterion_9():
    fib = load_bfile(FIXTURES / "A001629.txt")
    nar = load_bfile(FIXTURES / "A000930.txt")
    r1 = cross_check(fib, self_convolution(fibonacci_spec(), fib.indices[-1]))
    r2 = cross_check(nar, terms(narayana_spec(3), nar.indices[-1] + 1), offset=1)
    ok = r1.passed and r2.passed and r1.cells_checked >= 100 and r2.cells_checked >= 100
    return ok, f"A001629 {r1.status} over {r1.cells_checked} entries; A000930 (offset 1) {r2.status} over {r2.cells_checked} entries"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


def _run(number, criterion_log):
    ok, detail = CRITERIA[number - 1]()
    criterion_log(number, ok, detail)
    assert ok, detail


def test_criterion_1_general_identity_grid(criterion_log):
    _run(1, criterion_log)


def test_criterion_2_named_constants(criterion_log):
    _run(2, criterion_log)


def test_criterion_3_catalog_grid(criterion_log):
    _run(3, criterion_log)


def test_criterion_4_series_reconstruction(criterion_log):
    _run(4, criterion_log)


def test_criterion_5_lemma_suite(criterion_log):
    _run(5, criterion_log)


def test_criterion_6_discriminants(criterion_log):
    _run(6, criterion_log)


def test_criterion_7_fast_terms(criterion_log):
    _run(7, criterion_log)


def test_criterion_8_mutation_sensitivity(criterion_log):
    _run(8, criterion_log)


def test_criterion_9_oeis_fixtures(criterion_log):
    _run(9, criterion_log)


if __name__ == "__main__":
    import sys

    failed = 0
    for i, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        failed += not ok
        print(f"criterion {i}: {'PASS' if ok else 'FAIL'} | {detail}")
    sys.exit(1 if failed else 0)
