import random

import pytest

from quivergrass.core import (
    Params,
    component_fixed_point,
    component_subsets,
    lengths_to_jug,
    perm_length,
    shift_sum,
)
from quivergrass.affine_flag import (
    FlagPoint,
    SatoPoint,
    aut_to_iwahori,
    check_flag_point,
    embed_fixed_point,
    is_lower_triangular,
    sato_weyl,
    schubert_union_check,
    w_of_subset,
)
from quivergrass.linear_geometry import RationalMatrix, identity_aut, random_aut
from conftest import guarded_triples, workspace


def test_sato_point_canonical_form():
    s = SatoPoint.make(0, {1, 3})  # 1 is adjacent, absorbed
    assert s.threshold == 1 and s.extras == frozenset({3})
    assert s.charge == 2
    assert 1 in s and 3 in s and 2 not in s and -7 in s
    assert s.shift(2).threshold == 3 and s.shift(2).extras == frozenset({5})
    with pytest.raises(ValueError):
        SatoPoint.make(0, {0})


def test_sato_difference():
    a = SatoPoint.make(-1, {0, 2})  # actually absorbs 0 -> threshold 0, extras {2}
    b = SatoPoint.make(-2, {2})
    assert a.minus(b) == [-1, 0]
    assert b.minus(a) == []


def test_embed_examples():
    p = Params(1, 2, 2)
    bottom = lengths_to_jug(p, (2, 2))
    fp = embed_fixed_point(p, bottom)
    assert fp.points[0] == SatoPoint.make(0)
    assert fp.points[1] == SatoPoint.make(1)
    top = lengths_to_jug(p, (4, 0))
    fp = embed_fixed_point(p, top)
    assert fp.points[1] == SatoPoint.make(-1, {0, 2})
    for i in range(p.n + 1):
        assert fp.points[i].charge == i
    assert fp.sato(3) == fp.points[1].shift(2)


@pytest.mark.parametrize("trip", [t for t in guarded_triples(6) if t[1] * t[2] <= 6])
def test_embedded_points_are_valid_flags(trip):
    ws = workspace(*trip)
    for jug in ws.patterns:
        assert check_flag_point(embed_fixed_point(ws.p, jug)).ok


def test_flag_violations_are_itemized():
    p = Params(1, 2, 1)
    good = embed_fixed_point(p, lengths_to_jug(p, (1, 1)))
    # wrong charge
    bad = FlagPoint(p, (SatoPoint.make(1), good.points[1], good.points[2]))
    report = check_flag_point(bad)
    assert not report.ok and any("charge" in v for v in report.violations)
    # non-singleton difference / broken nesting
    bad = FlagPoint(p, (SatoPoint.make(0), SatoPoint.make(-1, {1, 3}), good.points[2]))
    report = check_flag_point(bad)
    assert not report.ok
    # broken periodicity: charge-2 space is not the shift of charge-0
    bad = FlagPoint(p, (SatoPoint.make(0), SatoPoint.make(1), SatoPoint.make(0, {3, 4})))
    report = check_flag_point(bad)
    assert not report.ok and any("periodicity" in v for v in report.violations)


def test_sato_weyl_examples():
    p = Params(1, 2, 2)
    expected = {
        (2, 2): (1, 2),
        (3, 1): (0, 3),
        (1, 3): (2, 1),
        (4, 0): (-1, 4),
        (0, 4): (3, 0),
    }
    for ell, w in expected.items():
        assert sato_weyl(embed_fixed_point(p, lengths_to_jug(p, ell))) == w
        assert shift_sum(w) == 0


def test_w_of_subset_examples():
    p = Params(1, 2, 2)
    assert w_of_subset(p, (2,)) == (-1, 4)
    assert w_of_subset(p, (1,)) == (3, 0)
    q = Params(3, 3, 2)
    assert w_of_subset(q, (1, 2, 3)) == (1, 2, 3)
    with pytest.raises(ValueError):
        w_of_subset(p, (1, 2))


@pytest.mark.parametrize("trip", [t for t in guarded_triples(6) if t[1] * t[2] <= 6])
def test_component_windows(trip):
    p = Params(*trip)
    for subset in component_subsets(p):
        jug = component_fixed_point(p, subset)
        assert sato_weyl(embed_fixed_point(p, jug)) == w_of_subset(p, subset)


@pytest.mark.parametrize("trip", [t for t in guarded_triples(6) if t[1] * t[2] <= 6])
def test_window_lengths_match_cell_dimension(trip):
    ws = workspace(*trip)
    for jug, length in zip(ws.patterns, ws.lengths):
        assert perm_length(sato_weyl(embed_fixed_point(ws.p, jug))) == length


def test_schubert_union_1_2_2():
    report = schubert_union_check(Params(1, 2, 2))
    assert report.ok
    assert report.fixed_point_count == report.union_count == 5
    windows = {sato_weyl(embed_fixed_point(Params(1, 2, 2), j)) for j in workspace(1, 2, 2).patterns}
    assert windows == {(1, 2), (2, 1), (0, 3), (3, 0), (-1, 4)}


@pytest.mark.parametrize("trip", [(1, 2, 1), (1, 3, 1), (2, 3, 1), (2, 2, 2), (1, 3, 2)])
def test_schubert_union_small(trip):
    report = schubert_union_check(Params(*trip))
    assert report.ok, str(report)
    assert report.fixed_point_count == len(workspace(*trip).tuples)


def test_iwahori_identity_and_shape():
    p = Params(1, 2, 2)
    gm = aut_to_iwahori(identity_aut(p))
    assert gm.eval_at(0) == RationalMatrix.identity(2)
    assert gm.eval_at(7) == RationalMatrix.identity(2)
    rng = random.Random(17)
    for trip in [(1, 2, 2), (2, 3, 1), (1, 3, 2), (2, 4, 2)]:
        q = Params(*trip)
        for _ in range(20):
            A = random_aut(q, rng)
            gz = aut_to_iwahori(A)
            z0 = gz.eval_at(0)
            assert is_lower_triangular(z0)
            for s in range(q.n):
                assert z0.rows[s][s] == A.param(-s, 1) != 0


def test_iwahori_entry_structure():
    # at z=1 every entry collects all parameters of its superscript class
    p = Params(2, 3, 2)
    rng = random.Random(23)
    A = random_aut(p, rng)
    gm = aut_to_iwahori(A)
    z1 = gm.eval_at(1)
    for s in range(1, p.n + 1):
        for c in range(1, p.n + 1):
            base = s - c + 1 if s >= c else p.n + s - c + 1
            expected = sum(A.param(1 - c, base + p.n * l) for l in range(p.omega))
            assert z1.rows[s - 1][c - 1] == expected
