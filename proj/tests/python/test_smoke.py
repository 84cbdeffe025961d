import pytest

import capcover


def test_generate_validates_and_solves_lp():
    text = capcover.generate(6, 4, "uniform", seed=7)
    assert text.startswith("capcover-instance v1\n")
    capcover.validate(text)
    res = capcover.lp_solve(text)
    assert res["feasible"]
    assert isinstance(res["cost"], str)
    assert res["y"]


def test_solve_produces_a_verified_cover():
    text = capcover.generate(6, 4, "monotonic", seed=11)
    out = capcover.solve(text)
    assert out["feasible"]
    assert out["verified"]
    assert out["opened"] == len(out["open"])
    assert set(out["assignment"].keys()) == set(range(6))
    assert out["solution"].startswith("capcover-solution v1\n")
    assert out["trace"].startswith("capcover-trace v1\n")
    rep = capcover.verify(text, out["solution"])
    assert rep["ok"]
    assert rep["cost"] == str(out["opened"])


def test_set_cover_reduction_matches_brute_force():
    text = capcover.from_set_cover([[0, 1], [1, 2], [2, 3]])
    opt = capcover.optimal_size(text)
    assert opt == 2
    greedy = capcover.greedy_size(text)
    assert greedy is None or greedy >= opt


def test_malformed_instance_raises():
    with pytest.raises(capcover.ParseError):
        capcover.validate("not an instance\n")
    with pytest.raises(ValueError):
        capcover.generate(3, 2, "hexagonal", seed=1)


def test_alternate_alpha_still_verifies():
    text = capcover.generate(5, 3, "uniform", seed=3)
    out = capcover.solve(text, alpha="1/61")
    assert out["verified"]
