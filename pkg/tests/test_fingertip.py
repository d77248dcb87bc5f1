import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import mask_from_strings
from fingertrace.errors import NoForeground
from fingertrace.fingertip import (
    Fingertip,
    VisitCounter,
    finger_edge_mask,
    intensity_ramp,
    locate_fingertips,
    ramp_levels,
    scanline_profile,
)
from fingertrace.geometry import Side
from fingertrace.raster import BinaryMask, GrayImage

masks = arrays(np.bool_, st.tuples(st.integers(1, 24), st.integers(1, 24))).filter(lambda b: b.any())


def test_profile_wrist_to_tip():
    bits = mask_from_strings(
        "..#..",
        ".##..",
        "####.",
    )
    assert scanline_profile(BinaryMask(bits), Side.BOTTOM).tolist() == [4, 2, 1]
    assert scanline_profile(BinaryMask(bits[::-1]), Side.TOP).tolist() == [4, 2, 1]


def test_profile_left_is_per_column():
    bits = mask_from_strings(
        "##..",
        "#...",
        "#..#",
    )
    assert scanline_profile(BinaryMask(bits), Side.LEFT).tolist() == [3, 1, 0, 1]
    assert scanline_profile(BinaryMask(bits), Side.RIGHT).tolist() == [1, 0, 1, 3]


def _ramp_lines(mask, side):
    ramp = intensity_ramp(mask, side).values
    return ramp.max(axis=1) if side.vertical else ramp.max(axis=0)


def test_ramp_extent_five():
    mask = BinaryMask(np.ones((5, 3), bool))
    assert _ramp_lines(mask, Side.BOTTOM).tolist() == [255, 204, 153, 102, 51]
    assert _ramp_lines(mask, Side.TOP).tolist() == [51, 102, 153, 204, 255]


def test_ramp_single_line():
    assert intensity_ramp(BinaryMask(np.ones((1, 4), bool)), Side.BOTTOM).values.tolist() == [[255] * 4]


def test_ramp_identity_scaling():
    mask = BinaryMask(np.ones((1, 255), bool))
    assert _ramp_lines(mask, Side.LEFT).tolist() == list(range(1, 256))


def test_ramp_background_stays_zero():
    bits = mask_from_strings("#.", "##")
    ramp = intensity_ramp(BinaryMask(bits), Side.BOTTOM).values
    assert ramp.tolist() == [[255, 0], [128, 128]]


def test_ramp_empty_raises():
    with pytest.raises(NoForeground):
        intensity_ramp(BinaryMask.zeros(3, 3), Side.BOTTOM)


def test_ramp_levels_never_zero_on_long_extents():
    levels = ramp_levels(700)
    assert levels.min() == 1 and levels[-1] == 255


def test_ramp_counts_visits():
    counter = VisitCounter()
    intensity_ramp(BinaryMask(np.ones((4, 6), bool)), Side.LEFT, counter)
    assert counter.count == 24


@given(masks, st.sampled_from(list(Side)))
def test_ramp_range_and_monotonicity(bits, side):
    ramp = intensity_ramp(BinaryMask(bits), side).values
    fg = ramp[bits]
    assert (ramp[~bits] == 0).all()
    assert fg.min() >= 1
    # the farthest crop line carries 255 when it is occupied
    far = {Side.BOTTOM: bits[0], Side.TOP: bits[-1], Side.RIGHT: bits[:, 0], Side.LEFT: bits[:, -1]}[side]
    if far.any():
        assert fg.max() == 255
    # along the scan, farther lines never get smaller values
    oriented = {Side.BOTTOM: ramp[::-1], Side.TOP: ramp, Side.RIGHT: ramp.T[::-1], Side.LEFT: ramp.T}[side]
    line_max = oriented.max(axis=1)
    occupied = line_max[line_max > 0]
    assert (np.diff(occupied.astype(int)) >= 0).all()
    line_min = np.where(oriented > 0, oriented.astype(int), 256).min(axis=1)
    assert (line_min[line_max > 0] == occupied).all()


def _ramp_d5():
    return intensity_ramp(BinaryMask(np.ones((5, 2), bool)), Side.BOTTOM)


def test_finger_edge_literal_rule():
    assert finger_edge_mask(_ramp_d5(), 255).bits[:, 0].tolist() == [True, False, False, False, False]


def test_finger_edge_thresholds():
    assert finger_edge_mask(_ramp_d5(), 235).bits[:, 0].tolist() == [True, False, False, False, False]
    assert finger_edge_mask(_ramp_d5(), 200).bits[:, 0].tolist() == [True, True, False, False, False]


def test_finger_edge_bad_threshold():
    with pytest.raises(ValueError):
        finger_edge_mask(_ramp_d5(), 0)


def test_two_clusters_give_two_tips():
    bits = mask_from_strings(
        ".#.......#.",
        "###.....###",
        "###.....###",
        "###########",
    )
    ramp = intensity_ramp(BinaryMask(bits), Side.BOTTOM)
    cand = finger_edge_mask(ramp, 150)
    tips = locate_fingertips(cand, ramp, Side.BOTTOM, min_cluster=1, min_separation=3)
    assert [(t.x, t.y, t.ramp_value) for t in tips] == [(1, 0, 255), (9, 0, 255)]
    assert [t.cluster_size for t in tips] == [4, 4]


def test_single_pixel_cluster():
    ramp = GrayImage(np.array([[0, 0], [0, 240]], np.uint8))
    tips = locate_fingertips(finger_edge_mask(ramp, 235), ramp, Side.BOTTOM, min_cluster=1)
    assert tips == [Fingertip(1, 1, 240, 1)]
    assert locate_fingertips(finger_edge_mask(ramp, 235), ramp, Side.BOTTOM, min_cluster=2) == []


def test_max_tips_keeps_highest_ramp():
    values = np.zeros((1, 23), np.uint8)
    for i, v in enumerate([240, 250, 236, 255, 245, 238]):
        values[0, 4 * i : 4 * i + 2] = v
    ramp = GrayImage(values)
    tips = locate_fingertips(finger_edge_mask(ramp, 235), ramp, Side.BOTTOM, min_separation=1, max_tips=5)
    assert sorted(t.ramp_value for t in tips) == [238, 240, 245, 250, 255]
    assert [t.x for t in tips] == sorted(t.x for t in tips)


def test_tied_peak_uses_centroid():
    ramp = GrayImage(np.array([[0, 250, 250, 250, 0], [0, 240, 240, 240, 0]], np.uint8))
    (tip,) = locate_fingertips(finger_edge_mask(ramp, 235), ramp, Side.BOTTOM)
    assert (tip.x, tip.y, tip.cluster_size) == (2, 0, 6)


def test_close_tips_merge_to_higher_ramp():
    values = np.zeros((2, 10), np.uint8)
    values[0, 0:2] = 250
    values[0, 4:6] = 255
    ramp = GrayImage(values)
    tips = locate_fingertips(finger_edge_mask(ramp, 235), ramp, Side.BOTTOM, min_separation=8)
    assert [(t.x, t.ramp_value) for t in tips] == [(5, 255)]  # tied pixels at x=4,5; 4.5 rounds up


def test_offset_translates_to_frame():
    ramp = GrayImage(np.array([[255, 255]], np.uint8))
    (tip,) = locate_fingertips(finger_edge_mask(ramp, 235), ramp, Side.BOTTOM, offset=(10, 20))
    assert (tip.x, tip.y) == (11, 20)


def test_empty_candidates():
    ramp = GrayImage(np.zeros((3, 3), np.uint8))
    assert locate_fingertips(BinaryMask.zeros(3, 3), ramp, Side.LEFT) == []


@given(masks, st.sampled_from(list(Side)), st.integers(1, 255), st.integers(0, 6))
def test_tip_invariants(bits, side, threshold, max_tips):
    ramp = intensity_ramp(BinaryMask(bits), side)
    tips = locate_fingertips(finger_edge_mask(ramp, threshold), ramp, side, min_cluster=1, max_tips=max_tips)
    assert 0 <= len(tips) <= max_tips
    for t in tips:
        assert t.ramp_value >= threshold
        assert 0 <= t.x < bits.shape[1] and 0 <= t.y < bits.shape[0]
