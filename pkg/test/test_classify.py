from pathlib import Path

import pytest

from branchforge.core.errors import InconsistentInvariantsError, OutOfRangeError
from branchforge.invariants.classify import (
    RULE_AMBIGUOUS,
    RULE_COMPOSED,
    RULE_GENUS2_BOUND,
    RULE_K2_RANGE,
    RULE_KOD_NONNEG,
    RULE_NO_CASE,
    RULE_NOT_ENRIQUES,
    RULE_NOT_NINE,
    RULE_PG_Q,
    CaseRecord,
    Phi2Constraint,
    SurfaceProfile,
    bicanonical_target_dim,
    case_one_K2,
    case_two_K2,
    check_profile,
    classify_summary,
    enriques_exclusion,
    k3_even_node_set,
    phi2_degree_relation,
    profile_from_chain,
    theorem_table,
)
from branchforge.invariants.covers import SurfaceInvariants, load_cover_config, run_chain

COVERS_DIR = Path(__file__).resolve().parent.parent / "configs" / "covers"

K3 = SurfaceInvariants(K2=0, chi=2, pg=1, q=0, kod=0)


def _profile(**kwargs) -> SurfaceProfile:
    values = dict(KS2=6, pg=1, q=1, quotient=K3, r_list=[4], KPdelta=0,
                  has_genus2_fibration=False, phi2_birational=False, deg_phi2=2)
    values.update(kwargs)
    return SurfaceProfile(**values)


def test_theorem_table():
    table = theorem_table()
    assert [record.case_id for record in table] == ["a-i", "a-ii", "a-iii", "b"]
    a_i, a_ii, a_iii, b = table
    assert (a_i.kod_quotient, a_i.K2_range, a_i.deg_phi2.describe()) == (2, (2, 2), "= 8")
    assert (a_ii.kod_quotient, a_ii.K2_range, a_ii.deg_phi2.describe()) == (1, (2, 4), "≥ 4")
    assert (a_iii.kod_quotient, a_iii.K2_range, a_iii.deg_phi2.value) == (0, (3, 6), 4)
    assert (b.K2_range, b.genus_albanese) == ((2, 9), "not-2")
    assert CaseRecord.from_dict(b.to_dict()) == b


def test_case_record_rejects_empty_range():
    with pytest.raises(OutOfRangeError):
        CaseRecord("x", 0, 2, (5, 3), Phi2Constraint("unknown"), "2")


def test_phi2_constraint():
    assert Phi2Constraint("exact", 4).admits(4)
    assert not Phi2Constraint("exact", 4).admits(2)
    assert Phi2Constraint("at_least", 4).admits(8)
    assert Phi2Constraint("unknown").admits(3)
    assert Phi2Constraint("exact", 8).admits(None)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("todorov_mod", "b"),
        ("example2", "a-ii"),
        ("example3", "a-i"),
    ],
)
def test_shipped_configs_classify(name, expected):
    config = load_cover_config(COVERS_DIR / f"{name}.json")
    verdict = check_profile(profile_from_chain(config, run_chain(config)))
    assert verdict.ok
    assert verdict.case.case_id == expected
    assert verdict.describe() == f"case {expected}"


def test_todorov_is_not_pg_q_one():
    config = load_cover_config(COVERS_DIR / "todorov.json")
    verdict = check_profile(profile_from_chain(config, run_chain(config)))
    assert not verdict.ok
    assert verdict.violations == [RULE_PG_Q]


@pytest.mark.parametrize(
    "overrides, rule",
    [
        (dict(KS2=1), RULE_K2_RANGE),
        (dict(KS2=7, has_genus2_fibration=True), RULE_GENUS2_BOUND),
        (dict(KS2=9), RULE_NOT_NINE),
        (dict(quotient=SurfaceInvariants(K2=9, chi=1, pg=0, q=0, kod=-1), KPdelta=None), RULE_KOD_NONNEG),
        (dict(quotient=SurfaceInvariants(K2=0, chi=1, pg=0, q=0, kod=0), KPdelta=None), RULE_NOT_ENRIQUES),
        (dict(r_list=[]), RULE_COMPOSED),
    ],
)
def test_violations(overrides, rule):
    verdict = check_profile(_profile(**overrides))
    assert rule in verdict.violations
    assert verdict.case is None


def test_birational_bicanonical_map_skips_composed_test():
    verdict = check_profile(_profile(r_list=[], phi2_birational=True, deg_phi2=None))
    assert RULE_COMPOSED not in verdict.violations


def test_no_matching_case():
    verdict = check_profile(_profile(has_genus2_fibration=True, deg_phi2=2))
    assert verdict.violations == [RULE_NO_CASE]


def test_ambiguous_profile():
    verdict = check_profile(_profile(KS2=4, r_list=[4], has_genus2_fibration=None, deg_phi2=4))
    assert not verdict.ok
    assert verdict.violations == [f"{RULE_AMBIGUOUS}: a-iii, b"]


def test_profile_requires_pg_q():
    config = load_cover_config(COVERS_DIR / "todorov_mod.json")
    result = run_chain(config)
    result.pg = None
    with pytest.raises(InconsistentInvariantsError):
        profile_from_chain(config, result)


def test_classify_summary():
    profile = _profile()
    summary = classify_summary(check_profile(profile), profile)
    assert summary["verdict"] == {"case": "b", "violations": []}
    assert summary["kod_quotient"] == "0"
    assert summary["bicanonical_target_dim"] == 6


@pytest.mark.parametrize("KS2, expected", [(2, 4), (5, 10), (9, 18)])
def test_enriques_exclusion_is_positive(KS2, expected):
    assert enriques_exclusion(KS2) == expected


def test_enriques_exclusion_range():
    with pytest.raises(OutOfRangeError):
        enriques_exclusion(10)


@pytest.mark.parametrize("KS2, image_degree, expected", [(6, 12, 2), (3, 12, 1), (2, 1, 8)])
def test_phi2_degree_relation(KS2, image_degree, expected):
    assert phi2_degree_relation(KS2, image_degree) == expected


def test_phi2_degree_relation_errors():
    with pytest.raises(InconsistentInvariantsError):
        phi2_degree_relation(6, 7)
    with pytest.raises(OutOfRangeError):
        phi2_degree_relation(6, 0)


def test_numerical_corollaries():
    assert case_one_K2(0) == 2
    assert case_two_K2(-4) == 2
    with pytest.raises(OutOfRangeError):
        case_two_K2(2)
    with pytest.raises(InconsistentInvariantsError):
        case_one_K2(1)
    assert bicanonical_target_dim(6, 1) == 6
    assert bicanonical_target_dim(2, 1) == 2
    assert k3_even_node_set(8)
    assert not k3_even_node_set(6)
    with pytest.raises(OutOfRangeError):
        k3_even_node_set(17)
