import pytest

import chipgame as cg


def test_rules():
    s = cg.PieceSet([1, 1, 1])
    assert cg.apply(s, cg.Exchange.rule1(["C1", "C2", "C3"])) == cg.PieceSet([0, 0, 0], 1, 1)
    assert cg.apply(cg.PieceSet([0, 0, 0], 0, 3), cg.Exchange.rule2()).jokers == 7
    assert len(cg.legal_exchanges(cg.PieceSet([1, 1, 1], 1))) == 4
    assert cg.canonicalize(cg.PieceSet([1, 3, 2])).chips == [3, 2, 1]


def test_errors_carry_codes():
    with pytest.raises(cg.ChipGameError) as info:
        cg.apply(cg.PieceSet([0, 0, 0], 0, 2), cg.Exchange.rule2())
    assert info.value.code == "IllegalExchange"
    with pytest.raises(cg.ChipGameError):
        cg.Exchange.rule1(["C1", "C1"])


def test_policy_and_plans():
    run = cg.run_cooperative(4, cg.PieceSet([4, 3, 1]))
    assert run["stop"] == "goal"
    assert run["cost"] == 8
    assert cg.survival_plan(6, cg.PieceSet([4, 4, 4]))["cost"] == 10
    assert cg.worst_case_cost(4)["formulaCost"] == 8
    assert cg.best_case_cost(6)["planCost"] == 10
    assert cg.general_upper_bound(6)["cap"] == 22
    assert cg.joker_collapse_plan(9)["final"]["dominoes"] == 4
    assert cg.domino_creation_plan(1)["cost"] == 9


def test_solvability_and_search():
    assert cg.solvable(cg.PieceSet([3, 3, 1]))["witness"]["id"] == "M"
    assert not cg.solvable(cg.PieceSet([7, 2, 1]))["solvable"]
    assert not cg.achieves_d3(cg.PieceSet([7, 2, 1]))
    r = cg.min_exchanges(cg.PieceSet([3, 3, 1]), 3)
    assert r["status"] == "optimal"
    assert r["cost"] == 3
    report = cg.verify_minimal_sufficient(7)
    assert [t for t in report["minimal"]] == [[3, 2, 2], [3, 3, 1]]
    assert cg.rule1_only_enumerate(cg.PieceSet([6, 5, 5]))["maxDominoes"] == 7
