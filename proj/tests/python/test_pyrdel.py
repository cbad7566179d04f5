import json
import math

import pytest

import pyrdel


def test_closed_forms():
    p = pyrdel.SceneParams()
    p.delta = 0.01
    n = pyrdel.scene_points(p)
    center, radius = pyrdel.circumcenter([n[k] for k in ("u", "v", "w", "p0")])
    assert center == pytest.approx([0.5, 0.5, 0.005, p.Delta], abs=1e-9)
    assert radius**2 == pytest.approx(0.5 + 0.01**2 / 4, abs=1e-12)
    assert math.dist(n["c"], n["p"]) == pytest.approx(math.dist(n["c"], n["u"]), abs=1e-12)


def test_validation_raises():
    p = pyrdel.SceneParams()
    p.mu = 0.9
    with pytest.raises(ValueError):
        p.validate()


def test_scene_a_report():
    s = pyrdel.build_scene("A")
    assert not s.aborted
    r = pyrdel.verify_scene(s, "A")
    assert r.overall()
    assert r.find("tet_certified").passed
    doc = json.loads(r.to_json())
    assert doc["overall"] is True
    assert len(doc["claims"]) == len(r.claims)
    tet = s.simplex(["u", "v", "w", "p"])
    assert len(tet) == 4


def test_building_blocks():
    torus = pyrdel.Manifold.torus(3.0, 1.0)
    assert torus.field([4.0, 0.0, 0.0]) == pytest.approx(0.0, abs=1e-15)
    circle = pyrdel.Manifold.sphere([0.0, 0.0], 1.0)
    s = pyrdel.sample(circle, 0.1)
    assert s["sparsity"] > 0.2
    rd = pyrdel.restricted_delaunay(s["points"], circle)
    assert not rd["ambiguous"]
    edges = rd["simplices"][1]
    assert len(edges) == len(s["points"])
    assert pyrdel.betti_numbers_mod2(edges) == [1, 1]

    square = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.2]]
    dt = pyrdel.delaunay(square)
    assert len(dt[2]) == 2
    wc = pyrdel.witness_complex(square, [[0.5, 0.1], [0.1, 0.5]], 1)
    assert [0, 1] in wc[1]
    assert pyrdel.euler_characteristic([[0, 1, 2], [1, 2, 3]]) == 1


def test_manifold_json_round_trip():
    m = pyrdel.Manifold.hypercube(4, 20.0 / 3)
    back = pyrdel.Manifold.from_json(m.to_json())
    assert back.to_json() == m.to_json()
