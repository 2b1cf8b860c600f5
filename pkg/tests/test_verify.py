import csv
import io
import json
from fractions import Fraction

import pytest

from narayana.identities import general_form, perturb
from narayana.verify import (
    CampaignConfig,
    check_catalog,
    check_form,
    check_lemma1,
    check_lemma2,
    check_proof_reconstruction,
    check_theorem1,
    lemma2_lhs,
    mutated_general_form,
    run_campaign,
)


def test_lemma1_examples():
    assert sum(i * 2**i for i in range(4)) == 34
    assert check_lemma1(2, 1, 3).passed
    assert check_lemma1(2, 1, 0).passed
    assert sum(Fraction(3, 2) ** i for i in range(3)) == Fraction(19, 4)
    rec = check_lemma1(3, 2, 2)
    assert rec.passed and rec.cells_checked == 3


@pytest.mark.parametrize("theta", [(2, 1), (3, 1), (1, 2), (3, 2), (-1, 1), (5, 7)])
def test_lemma1_default_thetas(theta):
    assert check_lemma1(*theta, 64).passed


@pytest.mark.parametrize("theta", [(0, 1), (1, 1), (3, 3)])
def test_lemma1_rejects_degenerate_theta(theta):
    with pytest.raises(ValueError):
        check_lemma1(*theta, 5)


def test_lemma2_examples():
    assert lemma2_lhs(3, 0) == 9
    assert lemma2_lhs(4, 1) == 128
    assert lemma2_lhs(2, 0) == 2


def test_lemma2_grid_and_proof_range():
    rec = check_lemma2(range(2, 31), 40)
    assert rec.passed and rec.cells_checked == 29 * 41
    proof = check_lemma2(range(2, 9), None, "lemma2-proof")
    # m ranges over 0..k-4, empty for k < 4
    assert proof.passed and proof.cells_checked == sum(max(k - 3, 0) for k in range(2, 9))
    assert proof.params["m_max"] == "k-4"


def test_lemma2_negative_exponent_is_rational():
    assert isinstance(lemma2_lhs(3, 5), Fraction)
    assert lemma2_lhs(3, 5) == 3**2 * 6


def test_theorem1_examples():
    cfg = CampaignConfig(k_min=3, k_max=3, n_max=8)
    (rec,) = check_theorem1(cfg)
    assert rec.passed and rec.cells_checked == 9
    (rec,) = check_form(general_form(2), 4, "theorem1")
    assert rec.passed and rec.cells_checked == 5
    (rec,) = check_form(general_form(6), 0, "theorem1")
    assert rec.passed


def test_catalog_examples():
    recs = check_catalog(CampaignConfig(n_max=60))
    assert len(recs) == 9 and all(r.passed for r in recs)
    assert {r.params["form"] for r in recs} >= {"lucas", "rabinowitz", "fibonacci-outer"}
    rab = next(r for r in recs if r.params["form"] == "rabinowitz")
    assert rab.params["n_min"] == 2 and rab.cells_checked == 59


def test_catalog_subset_by_name():
    recs = check_catalog(CampaignConfig(n_max=10, forms=("lucas",)))
    assert [r.params["form"] for r in recs] == ["lucas"]


def test_proof_reconstruction_small():
    recs = check_proof_reconstruction(CampaignConfig(series_order=50), ks=[2, 3, 7])
    assert [r.check_id for r in recs[:5]] == ["proof-gf", "proof-B", "proof-C", "proof-cancel", "proof-A"]
    assert all(r.passed for r in recs)


def test_proof_reconstruction_detects_bad_series(monkeypatch):
    from narayana import series

    real = series.C_gf_closed
    monkeypatch.setattr(series, "C_gf_closed", lambda k, order=None: real(k, order).scale(2))
    recs = check_proof_reconstruction(CampaignConfig(series_order=20), ks=[3])
    assert not all(r.passed for r in recs)


@pytest.mark.parametrize("k", range(2, 7))
def test_mutation_is_caught_early(k):
    (rec,) = check_form(mutated_general_form(k), 50, "theorem1")
    assert not rec.passed
    assert rec.counterexample["inputs"]["n"] <= k + 3


def test_counterexample_is_smallest_n():
    form = perturb(general_form(3), None)  # D off by one fails wherever conv != 0
    (rec,) = check_form(form, 20, "theorem1")
    assert rec.counterexample["inputs"] == {"n": 2}


def test_config_validation():
    with pytest.raises(ValueError):
        CampaignConfig(k_min=1)
    with pytest.raises(ValueError):
        CampaignConfig(k_min=5, k_max=4)
    with pytest.raises(ValueError):
        CampaignConfig(forms=("nope",))
    with pytest.raises(ValueError):
        CampaignConfig(modulus=1)


def test_modular_recheck():
    cfg = CampaignConfig(k_min=2, k_max=4, n_max=60, modulus=1_000_000_007, forms=("theorem1",))
    report = run_campaign(cfg, jobs=1)
    ids = [r.check_id for r in report.records]
    assert ids.count("theorem1") == 3 and ids.count("theorem1-mod") == 3
    assert report.passed


def test_modular_recheck_small_modulus_still_consistent():
    (exact, mod) = check_form(general_form(5), 80, "theorem1", modulus=7)
    assert exact.passed and mod.passed and mod.cells_checked == 81


SMALL = CampaignConfig(k_min=2, k_max=4, n_max=40, series_order=40, lemma_m_max=12)


def test_campaign_deterministic_across_jobs():
    a = run_campaign(SMALL, jobs=1)
    b = run_campaign(SMALL, jobs=2)
    assert a.to_tree(with_timing=False) == b.to_tree(with_timing=False)
    assert a.passed


def test_campaign_groups():
    report = run_campaign(SMALL, jobs=1)
    ids = {r.check_id for r in report.records}
    assert ids == {"lemma1", "lemma2", "lemma2-proof", "theorem1", "catalog", "proof-gf", "proof-B", "proof-C", "proof-cancel", "proof-A"}


def test_mutated_campaign_fails():
    cfg = CampaignConfig(k_min=2, k_max=3, n_max=20, forms=("theorem1",), mutate=True)
    report = run_campaign(cfg, jobs=1)
    assert not report.passed
    assert "first counterexample" in report.to_text()


def test_report_formats():
    cfg = CampaignConfig(k_min=3, k_max=3, n_max=10, forms=("theorem1", "lemma1"), lemma_m_max=4)
    report = run_campaign(cfg, jobs=1)
    tree = json.loads(report.to_json())
    assert tree["schema"] == "narayana.report/1" and tree["status"] == "pass"
    assert tree == report.to_tree()
    lemma = next(r for r in tree["records"] if r["check_id"] == "lemma1" and r["params"]["theta"] == "1/2")
    assert lemma["cells_checked"] == 5
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert len(rows) == len(report.records)
    assert json.loads(rows[-1]["params"]) == {"form": "general-k3", "k": 3, "n_max": 10, "n_min": 0}
    text = report.to_text().splitlines()
    assert text[-1].startswith("overall: PASS")
    assert len(text) == len(report.records) + 1
