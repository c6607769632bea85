from __future__ import annotations

import random
from fractions import Fraction

import pytest

from linkforge.kawasaki import BadInput, angle_between, kawasaki_rigid

F = Fraction


def test_square_cross_is_foldable():
    assert kawasaki_rigid([90, 90, 90, 90]) is False


def test_three_creases_no_two_collinear_is_rigid():
    assert kawasaki_rigid([100, 120, 140]) is True
    assert kawasaki_rigid([F(100), F(120), F(140)]) is True


def test_collinear_pair_detected_exactly():
    assert kawasaki_rigid([F(60), F(120), F(90), F(90)]) is False  # 60+120 = 180


def test_exact_vector_angles():
    # vectors around a vertex: 3-4-5 style rational directions
    a1 = (F(4), F(3))    # atan2(3,4)
    a2 = (F(-4), F(3))   # supplementary partner: a1+a2 spans... build 4 angles
    # angle from (1,0) to (4,3), from (4,3) to (-4,3), etc.
    # Use angle_between on rational points around origin.
    pts = [(F(1), F(0)), (F(4), F(3)), (F(-1), F(0)), (F(-4), F(-3))]
    o = (F(0), F(0))
    angs = []
    for i in range(4):
        angs.append(angle_between(pts[i], o, pts[(i + 1) % 4]))
    total = sum(a.degrees for a in angs)
    assert total == pytest.approx(360.0)
    # angle(pts0 -> pts2) spans exactly 180 via the first two corners
    assert kawasaki_rigid(angs) is False


def test_bad_input_sum():
    with pytest.raises(BadInput):
        kawasaki_rigid([90, 90, 90])


def test_permutation_and_rotation_invariance():
    rng = random.Random(2)
    base = [F(97), F(83), F(95), F(85)]  # 97+83 = 180
    for _ in range(10):
        mixed = base[:]
        rng.shuffle(mixed)
        assert kawasaki_rigid(mixed) is False
    rigid = [F(91), F(89, 2), F(100), F(249, 2)]  # no subset hits 180
    for _ in range(10):
        mixed = rigid[:]
        rng.shuffle(mixed)
        assert kawasaki_rigid(mixed) is True
