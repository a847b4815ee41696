import json
from pathlib import Path

import numpy as np
import pytest

from branchforge.core.errors import (
    ConfigSchemaError,
    InconsistentInvariantsError,
    OutOfRangeError,
    ParityError,
    TreeError,
)
from branchforge.invariants.covers import (
    KOD_NEG_INF,
    BranchData,
    CoverConfig,
    SingularityTree,
    SurfaceInvariants,
    bicanonical_test,
    canonical_resolution,
    chi_double_cover,
    check_mrg2,
    cover_config_from_dict,
    load_cover_config,
    minimal_model_adjust,
    nodes_count,
    pg_q,
    resolve_all,
    resolved_numerics,
    run_chain,
    smooth_cover,
)

COVERS_DIR = Path(__file__).resolve().parent.parent / "configs" / "covers"

K3 = SurfaceInvariants(K2=0, chi=2, pg=1, q=0, kod=0)
PLANE = SurfaceInvariants(K2=9, chi=1, pg=0, q=0, kod=KOD_NEG_INF)


@pytest.mark.parametrize(
    "tree, r_list, delta_chi, delta_K2",
    [
        (2, (2,), 0, 0),
        (3, (2,), 0, 0),
        (4, (4,), -1, -2),
        (6, (6,), -3, -8),
        ([3, 3], (2, 4), -1, -2),
        ([4, 4], (4, 4), -2, -4),
        ({"m": 5, "children": [{"m": 3}, {"m": 2}]}, (4, 4, 2), -2, -4),
    ],
)
def test_canonical_resolution(tree, r_list, delta_chi, delta_K2):
    delta = canonical_resolution(SingularityTree.from_json(tree))
    assert delta.r_list == r_list
    assert (delta.delta_chi, delta.delta_K2) == (delta_chi, delta_K2)


def test_tree_constructors():
    assert SingularityTree.infinitely_near(3) == SingularityTree.from_json([3, 3])
    assert SingularityTree.ordinary(4).size() == 1
    tree = SingularityTree.from_json({"m": 4, "children": [[3, 3]]})
    assert tree.size() == 3
    assert SingularityTree.from_json(tree.to_json()) == tree


@pytest.mark.parametrize("bad", [[], "4", [4, "3"], {"children": []}, {"m": 4, "children": 3}, True])
def test_tree_schema_errors(bad):
    with pytest.raises(ConfigSchemaError):
        SingularityTree.from_json(bad)


def test_tree_multiplicity_must_be_at_least_two():
    with pytest.raises(TreeError):
        SingularityTree(1)


def test_smooth_cover_of_plane_sextic():
    # 分歧于光滑六次曲线的 P² 双覆盖是 K3 曲面
    assert smooth_cover(PLANE, L2=9, KL=-9) == (0, 2)
    assert chi_double_cover(1, 6 * (-6) + 36) == 2
    with pytest.raises(ParityError):
        smooth_cover(PLANE, L2=1, KL=0)
    with pytest.raises(ParityError):
        chi_double_cover(1, 4)


def test_branch_parity():
    with pytest.raises(ParityError):
        BranchData(B2=-14, KB=0)
    with pytest.raises(ParityError):
        BranchData(B2=-16, KB=1)
    with pytest.raises(OutOfRangeError):
        BranchData(B2=-16, KB=0, nodal_components=-1)
    branch = BranchData(B2=-28, KB=2)
    assert (branch.L2, branch.KL) == (-7, 1)


def test_surface_invariants_consistency():
    with pytest.raises(InconsistentInvariantsError):
        SurfaceInvariants(K2=0, chi=3, pg=1, q=0)
    assert K3.to_dict()["kod"] == "0"
    assert PLANE.to_dict()["kod"] == "-inf"


def test_small_formulas():
    assert minimal_model_adjust(-8, 16) == 8
    with pytest.raises(OutOfRangeError):
        minimal_model_adjust(-8, -1)
    assert nodes_count(6, 2, 1, 0) == 16
    with pytest.raises(InconsistentInvariantsError):
        nodes_count(0, 0, 2, 0)
    assert bicanonical_test(2, 1, 0, 0, [4])
    assert not bicanonical_test(2, 1, 0, 0, [])
    with pytest.raises(ParityError):
        bicanonical_test(2, 1, 0, 0, [3])
    assert pg_q(K3, 0, 1) == (1, 1)
    with pytest.raises(InconsistentInvariantsError):
        pg_q(SurfaceInvariants(K2=0, chi=2), 0, 0)
    assert check_mrg2(2, 1, -1, 2, 0)
    assert not check_mrg2(2, 1, 0, 0, 0)


def test_resolved_numerics():
    delta = resolve_all([SingularityTree(4), SingularityTree.infinitely_near(3)])
    assert delta.r_list == (4, 2, 4)
    assert resolved_numerics(9, -12, 16, delta) == (6, -7, 7)


def test_todorov_chain():
    config = CoverConfig(base=K3, branch=BranchData(B2=-16, KB=0, nodal_components=16, h0_KL=0, h0_2KL=0),
                         contracted=16)
    result = run_chain(config)
    assert (result.KV2, result.KS2, result.chiS) == (-8, 8, 2)
    assert (result.pg, result.q, result.t_check) == (1, 0, 16)
    assert result.bicanonical_composed is True
    assert result.mrg2_holds is True
    assert result.r_list == []


@pytest.mark.parametrize(
    "name, KV2, KS2, chiS, pg, q, t",
    [
        ("todorov", -8, 8, 2, 1, 0, 16),
        ("todorov_mod", -10, 6, 1, 1, 1, 16),
        ("example2", -10, 4, 1, 1, 1, 14),
        ("example3", -10, 2, 1, 1, 1, 12),
    ],
)
def test_shipped_configs(name, KV2, KS2, chiS, pg, q, t):
    config = load_cover_config(COVERS_DIR / f"{name}.json")
    assert config.name == name
    result = run_chain(config)
    assert (result.KV2, result.KS2, result.chiS) == (KV2, KS2, chiS)
    assert (result.pg, result.q, result.t_check) == (pg, q, t)
    assert result.bicanonical_composed is True
    assert result.mrg2_holds is True
    assert "q 由 χ = 1 − q + p_g 推出" in result.notes


@pytest.mark.parametrize("name, KW2, chiW", [("example2", 0, 2), ("example3", 1, 2)])
def test_construction_reproduces_base(name, KW2, chiW):
    result = run_chain(load_cover_config(COVERS_DIR / f"{name}.json"))
    assert (result.construction.KS2, result.construction.chiS) == (KW2, chiW)
    assert result.construction.pg is None
    assert result.to_dict()["construction"]["KS2"] == KW2


def test_construction_mismatch_is_rejected():
    data = json.loads((COVERS_DIR / "example2.json").read_text(encoding="utf-8"))
    data["construction"]["contracted"] = 1
    with pytest.raises(InconsistentInvariantsError):
        run_chain(cover_config_from_dict(data))


@pytest.mark.parametrize(
    "data",
    [
        {"branch": {"B2": -16, "KB": 0}},
        {"base": {"K2": 0, "chi": 2}, "branch": {"B2": -16}},
        {"base": {"K2": "0", "chi": 2}, "branch": {"B2": -16, "KB": 0}},
        {"base": {"K2": 0, "chi": 2, "kod": 3}, "branch": {"B2": -16, "KB": 0}},
        {"base": {"K2": 0, "chi": 2}, "branch": {"B2": -16, "KB": 0, "trees": 4}},
        {"base": {"K2": 0, "chi": 2}, "branch": {"B2": -16, "KB": 0}, "phi2_birational": "no"},
        {"base": {"K2": 0, "chi": 3, "pg": 1, "q": 0}, "branch": {"B2": -16, "KB": 0}},
    ],
)
def test_config_schema_errors(data):
    with pytest.raises(ConfigSchemaError):
        cover_config_from_dict(data)


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigSchemaError):
        load_cover_config(path)


def _random_tree(rng, depth=0, low=2, high=7):
    m = int(rng.integers(low, high + 1))
    width = int(rng.integers(0, 3)) if depth < 2 else 0
    return SingularityTree(m, tuple(_random_tree(rng, depth + 1, low, high) for _ in range(width)))


def _random_config(rng):
    base = SurfaceInvariants(int(rng.integers(-2, 10)), int(rng.integers(1, 5)))
    L2 = int(rng.integers(-4, 13))
    # K·L 与 L² 同奇偶
    KL = 2 * int(rng.integers(-4, 7)) + L2 % 2
    trees = tuple(_random_tree(rng) for _ in range(int(rng.integers(0, 4))))
    branch = BranchData(4 * L2, 2 * KL, trees=trees, h0_2KL=int(rng.integers(0, 2)))
    return CoverConfig(base, branch, contracted=int(rng.integers(0, 5)))


@pytest.mark.parametrize("seed", range(50))
def test_random_chain_matches_resolved_formulas(seed):
    rng = np.random.default_rng(seed)
    config = _random_config(rng)
    base, branch = config.base, config.branch
    delta = resolve_all(branch.trees)
    K2, KL, L2 = resolved_numerics(base.K2, branch.KL, branch.L2, delta)
    KV2, chiS = smooth_cover(SurfaceInvariants(K2, base.chi), L2, KL)
    expected_t = 2 * K2 + 3 * KL + L2 + config.contracted + 2 * base.chi - 2 * branch.h0_2KL

    if expected_t < 0:
        with pytest.raises(InconsistentInvariantsError):
            run_chain(config)
        return
    result = run_chain(config)
    assert (result.KV2, result.chiS) == (KV2, chiS)
    assert result.KS2 == KV2 + config.contracted
    assert result.resolved_base == (K2, KL, L2)
    assert result.t_check == nodes_count(result.KS2, base.chi, result.chiS, branch.h0_2KL) == expected_t


@pytest.mark.parametrize("seed", range(10))
def test_negligible_trees_leave_invariants_unchanged(seed):
    rng = np.random.default_rng(seed)
    root = int(rng.integers(2, 4))
    tree = SingularityTree(root, tuple(_random_tree(rng, 1, 2, 2) for _ in range(int(rng.integers(0, 3)))))
    delta = canonical_resolution(tree)
    assert (delta.delta_chi, delta.delta_K2) == (0, 0)
    assert set(delta.r_list) == {2}
    assert len(delta.r_list) == tree.size()
