from fractions import Fraction

import pytest

import conecurve as cc

TENT = [(0, 0), (Fraction(1, 2), 1), (1, 0)]


def squares(n):
    return [(Fraction(i - n, n), Fraction(i - n, n) ** 2) for i in range(2 * n + 1)]


def test_versions():
    assert cc.schema_version == "1.0"
    assert cc.version == "0.1.0"


def test_sample_affine():
    spec = {"kind": "affine", "params": {"slope": "1", "intercept": "0"}, "domain": ["0", "1"], "grid": {"uniform": 3}}
    assert cc.sample(spec) == [(0, 0), (Fraction(1, 2), Fraction(1, 2)), (1, 1)]


def test_sequence_matches_recursion():
    b = [None, Fraction(0), Fraction(1, 4)]
    for k in range(3, 30):
        b.append((b[k - 1] + b[k - 2]) / 2)
    for k in range(1, 30):
        assert cc.sequence_b(k) == b[k]
    assert cc.sequence_b(2, 3) == Fraction(3, 4)


def test_central_slope():
    for lam in (1, 3, Fraction(7, 2)):
        for k in range(1, 8):
            assert cc.central_slope(k, lam) == Fraction(lam) / 3


def test_lipschitz_tent():
    assert cc.lipschitz(TENT)["constant"] == "2"


def test_convex_passes_vertical_cone():
    v = cc.verify(squares(10), 1, 2)
    assert v["ok"] is True
    assert int(v["max_count"]) <= 2


def test_cube_root_fails_with_three_points():
    spec = {"kind": "cube_root", "domain": ["-1", "1"], "grid": {"uniform": 9, "graded": 12}}
    pts = cc.sample(spec)
    v = cc.verify(pts, 1, 2, workers=2)
    assert v["ok"] is False
    assert len(v["witness_points"]) >= 3


def test_counterexample_verifies():
    pts = cc.counterexample(1, 4, 8)
    xs = [x for x, _ in pts]
    assert xs == sorted(xs) and len(set(xs)) == len(xs)
    assert all(0 <= y <= Fraction(1, 4) for _, y in pts)
    v = cc.verify(pts, Fraction(21, 20), 3)
    assert v["ok"] is True
    assert v["max_count"] == "3"


def test_analyze_convex():
    r = cc.analyze(squares(8), 1)
    assert r["conclusion_verified"] is True


def test_cover_and_find_cone():
    pts = cc.counterexample(1, 6, 8)
    rep = cc.cover(pts, 3, 2, 0, Fraction(1, 8))
    assert rep["valid"] is True
    res = cc.find_cone([(0, 0), (1, 1)], (Fraction(1, 2), Fraction(1, 2)), 2, 1)
    assert res["outcome"] == "found"
    assert res["triple"] is not None


def test_box_dimension_segment():
    d = cc.box_dimension([(0, 0), (1, Fraction(1, 3))], range(3, 9))
    assert abs(d["slope"] - 1) < 0.05


def test_errors():
    with pytest.raises(TypeError):
        cc.verify([(0.5, 0), (1, 1)], 1, 2)
    with pytest.raises(cc.ConecurveError):
        cc.find_cone(TENT, (Fraction(1, 3), 0), 1, 2)
    with pytest.raises(cc.ConecurveError):
        cc.verify([(0, 0), (1, 1)], "x", 2)
    with pytest.raises(ValueError):
        cc.verify(TENT, 1, 2, policy="loose")
