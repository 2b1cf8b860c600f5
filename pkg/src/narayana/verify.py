"""Verification campaigns over identity grids, the two summation lemmas and
the generating-function reconstruction.

Every check returns :class:`~narayana.report.CheckRecord` objects; failures
are report content, never exceptions.  Grids are walked in increasing ``n``
so the recorded counterexample is always the smallest failing one.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import series
from .identities import (
    IdentityForm,
    evaluate_rhs,
    fixed_forms,
    general_form,
    perturb,
    self_convolution,
    terms_for,
)
from .report import CheckRecord, VerificationReport
from .sequences import narayana_spec, terms as sequence_terms

CHECK_GROUPS = ("theorem1", "catalog", "lemma1", "lemma2", "proof")
DEFAULT_THETAS = (Fraction(2), Fraction(3), Fraction(1, 2), Fraction(3, 2), Fraction(-1), Fraction(5, 7))


@dataclass(frozen=True)
class CampaignConfig:
    k_min: int = 2
    k_max: int = 8
    n_max: int = 200
    series_order: int = 200
    lemma_m_max: int = 64
    forms: Optional[tuple[str, ...]] = None
    modulus: Optional[int] = None
    thetas: tuple[Fraction, ...] = DEFAULT_THETAS
    mutate: bool = False

    def __post_init__(self):
        if self.k_min < 2:
            raise ValueError(f"k_min must be >= 2, got {self.k_min}")
        if self.k_max < self.k_min:
            raise ValueError(f"empty k range [{self.k_min}, {self.k_max}]")
        for name in ("n_max", "series_order", "lemma_m_max"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if self.forms is not None:
            known = set(CHECK_GROUPS) | {f.name for f in fixed_forms()}
            unknown = [f for f in self.forms if f not in known]
            if unknown:
                raise ValueError(f"unknown check or form name(s): {', '.join(unknown)}")

    @property
    def k_range(self) -> range:
        return range(self.k_min, self.k_max + 1)

    def wants(self, group: str) -> bool:
        if self.forms is None:
            return True
        if group in self.forms:
            return True
        # naming a single catalog identity implies the catalog group
        return group == "catalog" and any(f not in CHECK_GROUPS for f in self.forms)


class _Timer:
    def __init__(self, record: CheckRecord):
        self.record = record

    def __enter__(self):
        self.t0 = time.perf_counter_ns()
        return self.record

    def __exit__(self, *exc):
        self.record.elapsed_ns = time.perf_counter_ns() - self.t0
        return False


# lemmas


def check_lemma1(theta_num: int, theta_den: int, m_max: int) -> CheckRecord:
    """Closed forms of ``sum theta^i`` and ``sum i theta^i`` against direct summation."""
    if theta_den == 0:
        raise ValueError("theta denominator must be nonzero")
    theta = Fraction(theta_num, theta_den)
    if theta in (0, 1):
        raise ValueError(f"theta must not be 0 or 1, got {theta}")
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    rec = CheckRecord("lemma1", {"theta": theta, "m_max": m_max})
    with _Timer(rec):
        for m in range(m_max + 1):
            plain = sum(theta**i for i in range(m + 1))
            weighted = sum(i * theta**i for i in range(m + 1))
            plain_closed = (theta ** (m + 1) - 1) / (theta - 1)
            weighted_closed = theta * (1 - theta**m) / (theta - 1) ** 2 + m * theta ** (m + 1) / (theta - 1)
            rec.cells_checked += 1
            if plain != plain_closed:
                rec.fail({"m": m, "sum": "geometric"}, plain, plain_closed)
                break
            if weighted != weighted_closed:
                rec.fail({"m": m, "sum": "weighted"}, weighted, weighted_closed)
                break
    return rec


def lemma2_lhs(k: int, m: int) -> Fraction:
    """``k^(k-2-m) (k-1)^m sum_{i=0}^m (k/(k-1))^i (k+i)`` as an exact rational."""
    theta = Fraction(k, k - 1)
    total = sum(theta**i * (k + i) for i in range(m + 1))
    return Fraction(k) ** (k - 2 - m) * (k - 1) ** m * total


def check_lemma2(k_range: Iterable[int], m_max: Optional[int], check_id: str = "lemma2") -> CheckRecord:
    """Check the weighted-sum lemma on a (k, m) grid.

    ``m_max=None`` restricts each ``k`` to ``0 <= m <= k-4``, the range the
    generating-function argument actually uses.
    """
    ks = list(k_range)
    if any(k < 2 for k in ks):
        raise ValueError("k must be >= 2")
    params = {"k_min": min(ks), "k_max": max(ks), "m_max": "k-4" if m_max is None else m_max}
    rec = CheckRecord(check_id, params)
    with _Timer(rec):
        for k in ks:
            top = k - 4 if m_max is None else m_max
            for m in range(top + 1):
                lhs = lemma2_lhs(k, m)
                rhs = k ** (k - 1) * (m + 1)
                rec.cells_checked += 1
                if lhs != rhs:
                    rec.fail({"k": k, "m": m}, lhs, rhs)
                    return rec
    return rec


# identity grids


def mutated_general_form(k: int) -> IdentityForm:
    """The general identity with its leading coefficient bumped by one; must fail."""
    return perturb(general_form(k), 0)


def check_form(form: IdentityForm, n_max: int, check_id: str, modulus: Optional[int] = None) -> list[CheckRecord]:
    """``D * conv(n)`` from the brute-force oracle against the right-hand side for ``min_n <= n <= n_max``."""
    params = {"form": form.name, "n_min": form.min_n, "n_max": n_max}
    if isinstance(form.k, int):
        params = {"k": form.k, **params}
    rec = CheckRecord(check_id, params)
    records = [rec]
    with _Timer(rec):
        conv = self_convolution(form.conv_spec, n_max)
        tv = terms_for(form, n_max)
        exact = []
        for n in range(form.min_n, n_max + 1):
            lhs = form.lhs_multiplier * conv[n].value
            rhs = evaluate_rhs(form, tv, n)
            rec.cells_checked += 1
            exact.append((lhs, rhs))
            if lhs != rhs:
                rec.fail({"n": n}, lhs, rhs)
                break
    if modulus is not None:
        records.append(_modular_recheck(form, n_max, check_id, modulus, exact))
    return records


def _modular_recheck(form, n_max, check_id, modulus, exact) -> CheckRecord:
    # both sides recomputed from residues only, then compared with the exact values reduced
    params = {"form": form.name, "n_max": n_max, "modulus": modulus}
    if isinstance(form.k, int):
        params = {"k": form.k, **params}
    rec = CheckRecord(check_id + "-mod", params)
    with _Timer(rec):
        tv = terms_for(form, n_max, modulus)
        a = tv[form.conv_role].values
        for idx, n in enumerate(range(form.min_n, form.min_n + len(exact))):
            conv = sum(a[i] * a[n - i] for i in range(n + 1)) % modulus
            lhs = form.lhs_multiplier * conv % modulus
            rhs = evaluate_rhs(form, tv, n) % modulus
            ex_lhs, ex_rhs = exact[idx]
            rec.cells_checked += 1
            if lhs != ex_lhs % modulus or rhs != ex_rhs % modulus or lhs != rhs:
                rec.fail({"n": n}, lhs, rhs, exact_lhs_mod=ex_lhs % modulus, exact_rhs_mod=ex_rhs % modulus)
                break
    return rec


def check_theorem1(config: CampaignConfig, form_factory: Optional[Callable[[int], IdentityForm]] = None) -> list[CheckRecord]:
    """The general k-step identity for every k in the config's range and ``0 <= n <= n_max``."""
    if form_factory is None:
        form_factory = mutated_general_form if config.mutate else general_form
    out = []
    for k in config.k_range:
        out.extend(check_form(form_factory(k), config.n_max, "theorem1", config.modulus))
    return out


def _selected_fixed_forms(config: CampaignConfig) -> list[IdentityForm]:
    forms = fixed_forms()
    if config.forms is None or "catalog" in config.forms:
        return forms
    names = set(config.forms)
    return [f for f in forms if f.name in names]


def check_catalog(config: CampaignConfig) -> list[CheckRecord]:
    """Every identity with explicit numeric coefficients, each from its own ``min_n``."""
    out = []
    for form in _selected_fixed_forms(config):
        out.extend(check_form(form, config.n_max, "catalog", config.modulus))
    return out


# generating functions


def _compare_series(rec: CheckRecord, got: series.LaurentSeries, want: series.LaurentSeries, k: int) -> None:
    ok, low, high, first = got.agrees_with(want)
    rec.params["exponents"] = f"{low}..{high}"
    rec.cells_checked += high - low + 1
    if not ok:
        rec.fail({"k": k, "exponent": first}, got.coefficient(first), want.coefficient(first))


def check_proof_reconstruction(config: CampaignConfig, ks: Optional[Sequence[int]] = None) -> list[CheckRecord]:
    """Rebuild the generating functions for each k and check that they all line up.

    Per k: the Narayana generating function reproduces the iterated terms; the
    definitional and closed series for both right-hand parts agree; their
    difference equals the convolution side; and that side equals ``D_k`` times
    the brute-force convolution.
    """
    order = config.series_order
    out = []
    for k in (config.k_range if ks is None else ks):
        with _Timer(CheckRecord("proof-gf", {"k": k, "order": order})) as rec:
            gf = series.narayana_gf(k, order)
            tv = sequence_terms(narayana_spec(k), order).values
            _compare_series(rec, gf, series.LaurentSeries.from_coeffs(tv, order), k)
        out.append(rec)

        with _Timer(CheckRecord("proof-B", {"k": k, "order": order})) as rec:
            b_closed = series.B_gf_closed(k, order)
            _compare_series(rec, b_closed, series.B_gf_def(k, order), k)
        out.append(rec)

        with _Timer(CheckRecord("proof-C", {"k": k, "order": order})) as rec:
            c_closed = series.C_gf_closed(k, order)
            _compare_series(rec, c_closed, series.C_gf_def(k, order), k)
        out.append(rec)

        with _Timer(CheckRecord("proof-cancel", {"k": k, "order": order})) as rec:
            a = series.A_gf(k, order)
            diff = b_closed - c_closed
            _compare_series(rec, diff, a, k)
            if rec.passed and not (diff.is_integral() and a.is_integral()):
                bad = next(e for e, c in diff.items() if c.denominator != 1)
                rec.fail({"k": k, "exponent": bad, "reason": "non-integral coefficient"}, diff.coefficient(bad), a.coefficient(bad))
        out.append(rec)

        with _Timer(CheckRecord("proof-A", {"k": k, "order": order})) as rec:
            _compare_series(rec, a, series.convolution_gf(k, order), k)
        out.append(rec)
    return out


# campaigns


def _task_list(config: CampaignConfig) -> list[tuple[str, tuple]]:
    tasks: list[tuple[str, tuple]] = []
    if config.wants("lemma1"):
        for t in config.thetas:
            tasks.append(("lemma1", (t.numerator, t.denominator, config.lemma_m_max)))
    if config.wants("lemma2"):
        tasks.append(("lemma2-proof", (config.k_min, config.k_max)))
        tasks.append(("lemma2", (config.k_min, config.k_max, config.lemma_m_max)))
    if config.wants("theorem1"):
        for k in config.k_range:
            tasks.append(("theorem1", (config, k)))
    if config.wants("catalog"):
        tasks.append(("catalog", (config,)))
    if config.wants("proof"):
        for k in config.k_range:
            tasks.append(("proof", (config, k)))
    return tasks


def _run_task(task: tuple[str, tuple]) -> list[CheckRecord]:
    kind, args = task
    if kind == "lemma1":
        return [check_lemma1(*args)]
    if kind == "lemma2-proof":
        k_min, k_max = args
        return [check_lemma2(range(k_min, k_max + 1), None, "lemma2-proof")]
    if kind == "lemma2":
        k_min, k_max, m_max = args
        return [check_lemma2(range(k_min, k_max + 1), m_max)]
    if kind == "theorem1":
        config, k = args
        factory = mutated_general_form if config.mutate else general_form
        return check_form(factory(k), config.n_max, "theorem1", config.modulus)
    if kind == "catalog":
        return check_catalog(*args)
    if kind == "proof":
        config, k = args
        return check_proof_reconstruction(config, [k])
    raise ValueError(f"unknown task kind {kind!r}")


def run_campaign(config: CampaignConfig, jobs: Optional[int] = None) -> VerificationReport:
    """Run every selected check.  Record order depends only on ``config``, not on ``jobs``."""
    tasks = _task_list(config)
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(tasks) <= 1:
        results = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    report = VerificationReport()
    for recs in results:
        report.extend(recs)
    return report
