import numpy as np
import pytest

from fingertrace.errors import SpecUnsatisfiable
from fingertrace.geometry import Side
from fingertrace.skin import SkinBand, skin_mask
from fingertrace.synth import SyntheticHandSpec, corpus_specs, generate_hand, render_silhouette, spec_from_dict


def test_deterministic_for_seed():
    spec = SyntheticHandSpec(finger_count=3, wrist_side=Side.BOTTOM, seed=7)
    a, ta = generate_hand(spec)
    b, tb = generate_hand(spec)
    assert a == b
    assert ta == tb


def test_different_seeds_differ():
    a, _ = generate_hand(SyntheticHandSpec(finger_count=3, seed=1))
    b, _ = generate_hand(SyntheticHandSpec(finger_count=3, seed=2))
    assert a != b


def test_five_apexes():
    _, truth = generate_hand(SyntheticHandSpec(finger_count=5))
    assert len(truth.tips) == 5


def test_finger_longer_than_frame():
    with pytest.raises(SpecUnsatisfiable):
        generate_hand(SyntheticHandSpec(finger_length=(600, 600)))


def test_palm_off_frame():
    with pytest.raises(SpecUnsatisfiable):
        generate_hand(SyntheticHandSpec(cross_center=20))


def test_colours_checked_against_band():
    with pytest.raises(ValueError):
        SyntheticHandSpec(skin_color=(40, 90, 160))
    with pytest.raises(ValueError):
        SyntheticHandSpec(background_color=(220, 170, 140))
    with pytest.raises(ValueError):
        SyntheticHandSpec(noise=0.2)


@pytest.mark.parametrize("side", list(Side))
def test_apex_is_topmost_pixel_of_its_finger(side):
    spec = SyntheticHandSpec(wrist_side=side, finger_count=4, seed=3)
    image, truth = generate_hand(spec)
    mask = skin_mask(image, SkinBand()).bits
    assert (image.width, image.height) == spec.frame_size
    for x, y in truth.tips:
        assert mask[y, x]
        # one step further toward the finger side leaves the hand
        dx, dy = {Side.BOTTOM: (0, -1), Side.TOP: (0, 1), Side.LEFT: (1, 0), Side.RIGHT: (-1, 0)}[side]
        assert not mask[y + dy, x + dx]


def test_forearm_touches_wrist_edge():
    canvas, _ = render_silhouette(SyntheticHandSpec())
    assert canvas[-1].any()
    assert not canvas[0].any()


def test_noise_flips_pixels():
    clean, _ = generate_hand(SyntheticHandSpec(seed=5))
    noisy, _ = generate_hand(SyntheticHandSpec(seed=5, noise=0.02))
    changed = np.any(clean.pixels != noisy.pixels, axis=2).mean()
    assert 0.01 < changed < 0.03


def test_corpus_covers_sides_and_counts():
    specs = corpus_specs(40, seed=1)
    assert {s.wrist_side for s in specs} == set(Side)
    assert {s.finger_count for s in specs} == {1, 2, 3, 4, 5}
    assert all(s.noise == 0 for s in specs)
    for s in specs[:8]:
        generate_hand(s)


def test_spec_from_dict():
    spec = spec_from_dict({"wrist_side": "left", "finger_count": 2, "finger_length": [90, 95], "seed": 4})
    assert spec.wrist_side is Side.LEFT
    assert spec.finger_length == (90, 95)
