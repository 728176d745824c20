import json
import math

import pytest

from quintsect import catalog
from quintsect.catalog import (CASES, RECORD_FIELDS, CaseStatus, case_lhs, dump_catalog, get_case, load_catalog,
                               verify_all, verify_case)
from quintsect.identities import Verdict
from quintsect.series import ToleranceConfig

EXPECTED_DISCREPANT = {"eq4.8-E", "eq4.17-incgamma", "eq4.18-incgamma"}


def test_every_printed_equation_once():
    assert len(CASES) == 20
    labels = [c.label for c in CASES.values()]
    # duplicated printed labels: sin/cos pairs, and one incomplete-gamma plus two conformal-power forms
    assert labels.count("(4.1)") == 2 and labels.count("(4.2)") == 2 and labels.count("(4.17)") == 3
    assert {"eq4.1a-sin", "eq4.1b-cos", "eq4.6-arctan", "eq4.19-conformal"} <= set(CASES)


def test_arctan_closed_form_example():
    res = verify_case("eq4.6-arctan", 0.5)
    assert res.verdict is Verdict.PASS
    assert abs(res.rhs - 0.031239833430268277) < 1e-15
    assert abs(0.031239833430268277 - math.atan(0.5**5)) < 1e-17


@pytest.mark.parametrize("x", [i / 10 for i in range(1, 10)])
def test_arctan_closed_form_grid(x):
    res = verify_case("eq4.6-arctan", x)
    assert res.residual <= 1e-10
    assert abs(res.rhs - math.atan(x**5)) <= 1e-12


def test_trivial_points():
    res = verify_case("eq4.2-sin", 0)
    assert res.lhs == 0 and res.rhs == 0 and res.verdict is Verdict.PASS
    res = verify_case("eq4.13-K", 0)
    assert abs(res.lhs - 5 * math.pi / 2) < 1e-14 and abs(res.rhs - 5 * math.pi / 2) < 1e-14


def test_out_of_domain_is_not_evaluable():
    assert verify_case("eq4.6-arctan", 1.5).verdict is Verdict.NOT_EVALUABLE
    assert verify_case("eq4.13-K", 0.95).verdict is Verdict.PASS
    # inside the disk but the decimated series at x^10 = 0.99999 needs more than the default term cap
    res = verify_case("eq4.13-K", 0.999999)
    assert res.verdict is Verdict.NOT_EVALUABLE and res.rhs_status == "max-terms-exceeded"
    assert "max-terms-exceeded" in res.detail


def test_unknown_case():
    with pytest.raises(KeyError):
        get_case("eq9.9-nothing")
    with pytest.raises(ValueError):
        verify_case("eq4.6-arctan", 0.5, params={"a": 2})


def test_default_sample_points():
    assert get_case("eq4.2-sin").points() == (0.4, 0.9, 1.4)
    assert get_case("eq4.13-K").points() == (0.2, 0.45, 0.7)


def test_verify_all_statuses():
    reports = verify_all()
    assert [r.case.case_id for r in reports] == sorted(CASES)
    status = {r.case.case_id: r.status for r in reports}
    assert {k for k, v in status.items() if v is CaseStatus.DISCREPANT} == EXPECTED_DISCREPANT
    assert all(v is not CaseStatus.UNVERIFIED for v in status.values())
    for r in reports:
        if r.status is CaseStatus.DISCREPANT:
            assert all(ratio is not None and math.isfinite(abs(ratio)) for ratio in r.ratios())


def test_printed_constant_in_fourth_order_e_case():
    # the 15/10 entry makes the printed right side drift from the left side as x grows
    ratios = [abs(verify_case("eq4.8-E", x).ratio) for x in (0.45, 0.7)]
    assert abs(ratios[0] - 0.99995) < 1e-5
    assert ratios[1] < ratios[0] < 1


@pytest.mark.parametrize("case_id", ["eq4.17-incgamma", "eq4.18-incgamma"])
@pytest.mark.parametrize("a", [1, 2, 3])
def test_incomplete_gamma_cases_hold_for_integer_a(case_id, a):
    for x in (0.4, 0.9, 1.4):
        assert verify_case(case_id, x, params={"a": a}).verdict is Verdict.PASS


def test_incomplete_gamma_continued_branch():
    # with (x alpha^k)^{2a} continued as x^{2a} alpha^{2ak}, the printed even form holds for fractional a
    case = get_case("eq4.17-incgamma")
    a, x = 0.5, 0.9
    from quintsect.numerics import alpha_power, fifth_root
    from quintsect.hypergeom import eval_pfq
    from quintsect.special import eval_oracle
    lhs = 0j
    for k, e in enumerate(case.weights({"a": a})):
        t = (x * fifth_root(k)) ** 2
        # gamma(a, t) = t^a * (entire part); swap the principal t^a for the continued one
        entire = eval_oracle("lower-incomplete-gamma", t, {"a": a}) / t**a
        lhs += alpha_power(e) * x ** (2 * a) * alpha_power(2 * a * k) * entire
    pre, spec, arg = case.rhs(x, {"a": a})
    rhs = pre * eval_pfq(spec, arg).value
    assert abs(lhs - rhs) < 1e-12 * (1 + abs(rhs))


@pytest.mark.parametrize("gamma_", [0.75, 1.0, 2.5])
def test_conformal_cases_for_other_gamma(gamma_):
    for case_id in ("eq4.19-conformal", "eq4.20-conformal"):
        for x in (0.2, 0.6):
            assert verify_case(case_id, x, params={"gamma": gamma_}).verdict is Verdict.PASS


def test_verified_cases_stable_under_tighter_tolerance():
    tight = ToleranceConfig(rel_tol=1e-15)
    for r in verify_all():
        if r.status is CaseStatus.VERIFIED:
            for x in r.points:
                assert verify_case(r.case.case_id, x, tight).verdict is Verdict.PASS


def test_lhs_uses_rotated_arguments():
    case = get_case("eq4.2b-cos")
    from quintsect.numerics import fifth_root
    import cmath
    x = 0.8
    expected = sum(fifth_root(k) * cmath.cos(x * fifth_root(k)) for k in range(5))
    assert abs(case_lhs(case, x) - expected) < 1e-14


def test_dump_load_roundtrip(tmp_path):
    path = tmp_path / "catalog.jsonl"
    dump_catalog(path)
    lines = path.read_text().splitlines()
    assert len(lines) == 20
    for line in lines:
        assert tuple(json.loads(line)) == RECORD_FIELDS
    loaded = load_catalog(path)
    assert [c.case_id for c in loaded] == sorted(CASES)
    for c in loaded:
        assert c.record() == CASES[c.case_id].record()
    dump_catalog(tmp_path / "again.jsonl", loaded)
    assert (tmp_path / "again.jsonl").read_text() == path.read_text()


def test_load_overrides_params_and_points(tmp_path):
    rec = get_case("eq4.17-incgamma").record()
    rec.update(params={"a": 2.0}, sample_points=[0.5, 1.0])
    path = tmp_path / "one.jsonl"
    path.write_text(json.dumps(rec) + "\n")
    (case,) = load_catalog(path)
    assert case.params == {"a": 2.0} and case.points() == (0.5, 1.0)
    (report,) = verify_all(cases=[case])
    assert report.status is CaseStatus.VERIFIED
    # the built-in case is untouched
    assert CASES["eq4.17-incgamma"].params == {"a": 0.5}


def test_load_rejects_bad_records(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps({"case_id": "eq4.6-arctan"}) + "\n")
    with pytest.raises(ValueError):
        load_catalog(path)
    rec = get_case("eq4.6-arctan").record()
    rec["label"] = "(4.99)"
    path.write_text(json.dumps(rec) + "\n")
    with pytest.raises(ValueError):
        load_catalog(path)


def test_status_string_values():
    assert {s.value for s in catalog.CaseStatus} == {"verified", "discrepant", "unverified"}
