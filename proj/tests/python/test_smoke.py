import math

import pytest

import thinstruct as ts


def test_laakso_generate_and_verify():
    g = ts.gen_laakso(2, 4.0, 0.25)
    assert g.n == 30
    assert g.dim == 3
    assert g.kind == "laakso"
    assert g.copies == 7
    r = ts.verify(g)
    assert r["pass"]
    assert r["worst"] < 1e-12
    assert r["violations"] == []


def test_laakso_endpoint_distance():
    g = ts.gen_laakso(3, 2.0, 0.1)
    s = g.index_of("L0:s")
    t = g.index_of("L0:t")
    assert g.dist(s, t) == pytest.approx(2.0, abs=1e-15)
    assert len(g.point(s)) == g.dim


def test_diamond_generate_and_verify():
    g = ts.gen_diamond(2, 2.0, 0.1, 3)
    assert g.n == 23
    assert g.branching == 3
    r = ts.verify(g, rel_tol=1e-9)
    assert r["pass"]


def test_bad_parameters_raise():
    with pytest.raises(ValueError):
        ts.gen_laakso(2, 4.0, -0.1)
    with pytest.raises(ValueError):
        ts.gen_diamond(2, math.inf, 0.1, 3)
    with pytest.raises(ValueError):
        ts.gen_diamond(2, 2.0, 0.1, 99)


def test_identity_distortion_matches_bound():
    b = ts.lower_bound_uc(3, 2.0, 4.0, 0.125)
    g = ts.gen_laakso(3, 4.0, b["eps_star"])
    r = ts.distortion(g, "identity", 2.0)
    assert r["colip"] == pytest.approx(1.0, abs=1e-12)
    assert r["distortion"] >= b["D_min"]
    assert r["distortion"] <= (3 + 1) ** 0.25 + 1e-12
    assert len(r["D_j"]) == 3


def test_random_projection_distortion():
    g = ts.gen_laakso(2, 4.0, 0.25)
    r = ts.distortion(g, "randproj:2:7", 2.0)
    assert r["distortion"] > 1.0
    again = ts.distortion(g, "randproj:2:7", 2.0)
    assert again["distortion"] == r["distortion"]


def test_doubling_bracket():
    g = ts.gen_laakso(2, 3.0, 0.1)
    d = ts.doubling(g)
    assert 1 <= d["lower"] <= d["upper"]
    assert d["upper"] == 7


def test_mid_set_on_thin_branch():
    g = ts.gen_laakso(2, 4.0, 0.25)
    m = ts.mid_set(g, "L0:s", "L0:t", 0.05)
    assert sorted(m["members"]) == ["L0::m1", "L0::m2"]
    assert m["diameter"] == pytest.approx(0.25 * 2.0, rel=1e-12)


def test_four_point_flat_quadruple():
    pts = [[0.0, 0.0], [1.0, 1.0], [2.0, 0.0], [1.0, -1.0]]
    r = ts.four_point(pts, q=math.inf, p=2.0, C=4.0)
    assert r["violated"]
    assert r["lemma_range"]
    assert r["max_ratio"] == pytest.approx(2.0, abs=1e-12)


def test_contract_identity_passes():
    b = ts.lower_bound_uc(2, 2.0, 4.0, 0.125)
    g = ts.gen_laakso(2, 4.0, b["eps_star"])
    a = ts.contract(g, family="uc")
    assert a["failures"] == 0
    assert a["copies"] == 7
    assert a["worst_margin"] > 0


def test_contract_inflated_model_fails():
    b = ts.lower_bound_uc(2, 2.0, 4.0, 0.125)
    g = ts.gen_laakso(2, 4.0, b["eps_star"])
    a = ts.contract(g, family="uc", c=1.25, power=2.0)
    assert a["failures"] > 0


def test_bounds_closed_form():
    b = ts.lower_bound_uc(2, 2.0, 4.0, 0.125)
    assert b["gamma_max"] == pytest.approx(1.0 / 16.0, rel=1e-15)
    assert b["gamma"] == pytest.approx(1.0 / 32.0, rel=1e-15)
    assert b["eps_star"] == pytest.approx(0.35355339059327373, rel=1e-12)
    rb = ts.lower_bound_rb(2, 2.0, 4.0, 0.125)
    assert rb["gamma_max"] < b["gamma_max"]


def test_uc_modulus_close_to_hilbert_value():
    e = ts.uc_modulus(2.0, 8, [1.0], restarts=4, iters=200)
    exact = 1.0 - math.sqrt(1.0 - 0.25)
    assert e["value"][0] == pytest.approx(exact, abs=1e-3)


def test_amuc_modulus_matches_lp_formula():
    e = ts.amuc_modulus(2.0, 64, 33, [0.5], samples=16)
    exact = (1.0 + 0.25) ** 0.5 - 1.0
    assert e["value"][0] == pytest.approx(exact, rel=0.05)


def test_cloud_roundtrip(tmp_path):
    g = ts.gen_laakso(2, 4.0, 0.25)
    path = str(tmp_path / "cloud.json")
    ts.save_cloud(path, g)
    h = ts.load_cloud(path)
    assert h.labels == g.labels
    assert h.dist(0, 1) == g.dist(0, 1)
    assert ts.verify(h)["pass"]


def test_graph_counts():
    c = ts.graph_counts("laakso", 3)
    assert c["vertices"] == 174
    assert c["edges"] == 216
    c = ts.graph_counts("k2b", 2, b=3)
    assert c["vertices"] == 23
    assert c["edges"] == 36
