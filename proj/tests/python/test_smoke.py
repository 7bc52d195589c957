import math
import os

import pytest

import tvsph


def test_sixj_value():
    # frozen from an independent 40-digit evaluation
    v = tvsph.sixj([2, 2, 2, 2, 2, 2], 5, convention="classical")
    assert v == pytest.approx(-0.381966011250105152, abs=1e-13)
    # convention sign: six colors sum to an even doubled total here
    assert tvsph.sixj([2, 2, 2, 2, 2, 2], 5) == pytest.approx(v, abs=1e-13)
    assert tvsph.sixj([1, 1, 1, 1, 1, 1], 5, convention="classical") == 0.0


def test_quantum_integer_and_total_weight():
    r = 7
    assert tvsph.quantum_integer(2, r) == pytest.approx(2 * math.cos(math.pi / r))
    assert tvsph.delta_total(r) == pytest.approx(r / (2 * math.sin(math.pi / r) ** 2))


def test_tv_on_the_five_cell():
    t = tvsph.fivecell()
    assert (t.num_vertices, t.num_edges, t.num_faces, t.num_tets) == (5, 10, 10, 5)
    assert tvsph.validate(t) == []
    for r in (3, 4, 5):
        value, count = tvsph.tv(t, r)
        assert value == pytest.approx(2 / r * math.sin(math.pi / r) ** 2, rel=1e-10)
        assert count > 0


def test_move_invariance():
    t = tvsph.fivecell()
    u = tvsph.pachner_23(t, [1, 2, 3])
    assert (u.num_vertices, u.num_edges, u.num_faces, u.num_tets) == (5, 11, 12, 6)
    v1, _ = tvsph.tv(t, 4)
    v2, _ = tvsph.tv(u, 4)
    assert v2 == pytest.approx(v1, rel=1e-10)


def test_load_corpus():
    data = os.environ.get("TVSPH_DATA")
    if not data:
        pytest.skip("TVSPH_DATA not set")
    t = tvsph.load_triangulation(os.path.join(data, "fivecell_23.json"))
    assert tvsph.validate(t) == []
    assert t.num_tets == 6


def test_geometry():
    orthant = [math.pi / 2] * 6
    assert tvsph.gram_det(orthant) == pytest.approx(1.0)
    assert tvsph.spherical_volume(orthant) == pytest.approx(math.pi**2 / 8, abs=1e-6)
    assert tvsph.dihedral_angles(orthant) == pytest.approx([math.pi / 2] * 6)
    with pytest.raises(tvsph.GeometryError):
        tvsph.spherical_volume([0.1, 0.1, 0.1, 2.0, 2.0, 2.0])


def test_semiclassical_values():
    assert tvsph.normalization_value([1.0, 1.2, 0.9, 1.1, 1.3, 0.8]) == pytest.approx(
        math.pi, abs=1e-7
    )
    assert tvsph.delinfty_value(1.0) == pytest.approx(math.pi, abs=1e-8)
    assert tvsph.invariant_s3_total() == pytest.approx(32 / math.pi**3, abs=1e-6)
    max_rel, sign, _ = tvsph.verify_sjac(1, 10)
    assert sign == -1
    assert max_rel <= 2e-4
