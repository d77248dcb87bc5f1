import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from oracles import flood_fill_partition, partition_from_labels

from conftest import mask_from_strings
from fingertrace.blobs import label_components, largest_blob_mask
from fingertrace.errors import NoForeground
from fingertrace.raster import BinaryMask

masks = arrays(np.bool_, st.tuples(st.integers(1, 16), st.integers(1, 16)))


def test_two_squares():
    bits = mask_from_strings(
        "##...",
        "##...",
        ".....",
        "...##",
        "...##",
    )
    _, blobs = label_components(BinaryMask(bits))
    assert [b.area for b in blobs] == [4, 4]
    assert blobs[0].bbox == (0, 0, 1, 1)
    assert blobs[1].bbox == (3, 3, 4, 4)


def test_diagonal_connectivity():
    bits = mask_from_strings("#.", ".#")
    assert len(label_components(BinaryMask(bits), 4)[1]) == 2
    assert len(label_components(BinaryMask(bits), 8)[1]) == 1


def test_empty_mask():
    labels, blobs = label_components(BinaryMask.zeros(4, 3))
    assert blobs == []
    assert not labels.labels.any()
    with pytest.raises(NoForeground):
        largest_blob_mask(BinaryMask.zeros(4, 3))


def test_keeps_largest_component():
    bits = np.zeros((6, 8), bool)
    bits[0:2, 0:5] = True  # area 10
    bits[4:5, 5:8] = True  # area 3
    out, blob = largest_blob_mask(BinaryMask(bits))
    assert blob.area == 10
    expected = np.zeros_like(bits)
    expected[0:2, 0:5] = True
    assert out.bits.tolist() == expected.tolist()


def test_single_component_is_identity():
    bits = mask_from_strings(".##", "##.", "#..")
    out, _ = largest_blob_mask(BinaryMask(bits))
    assert out == BinaryMask(bits)


def test_tie_goes_to_first_raster_component():
    bits = mask_from_strings(
        "....##",
        "......",
        "##....",
    )
    out, blob = largest_blob_mask(BinaryMask(bits))
    assert blob.bbox == (4, 0, 5, 0)
    assert out.bits[0, 4] and not out.bits[2, 0]


def test_labels_follow_raster_order_of_first_pixel():
    # a U shape: scipy meets the right arm's top before the left arm joins it
    bits = mask_from_strings(
        "#.#.#",
        "#.#.#",
        "###.#",
    )
    labels, blobs = label_components(BinaryMask(bits), 4)
    assert labels.labels[0, 0] == 1
    assert labels.labels[0, 4] == 2
    assert sorted(b.label for b in blobs) == [1, 2]


@pytest.mark.parametrize("connectivity", [4, 8])
@given(bits=masks)
def test_matches_flood_fill(bits, connectivity):
    labels, blobs = label_components(BinaryMask(bits), connectivity)
    assert partition_from_labels(labels.labels) == flood_fill_partition(bits, connectivity)
    assert sum(b.area for b in blobs) == int(bits.sum())
    # dense labels, ordered by first raster pixel
    firsts = [np.flatnonzero(labels.labels.ravel() == b.label)[0] for b in sorted(blobs, key=lambda b: b.label)]
    assert firsts == sorted(firsts)
    assert sorted(b.label for b in blobs) == list(range(1, len(blobs) + 1))


@given(bits=masks)
def test_blob_invariants(bits):
    labels, blobs = label_components(BinaryMask(bits))
    for b in blobs:
        ys, xs = np.nonzero(labels.labels == b.label)
        assert b.area == len(ys) >= 1
        assert b.bbox == (xs.min(), ys.min(), xs.max(), ys.max())
        assert b.area <= (b.bbox[2] - b.bbox[0] + 1) * (b.bbox[3] - b.bbox[1] + 1)
    assert [b.area for b in blobs] == sorted((b.area for b in blobs), reverse=True)


@given(bits=masks.filter(lambda b: b.any()))
def test_largest_blob_is_subset_and_maximal(bits):
    out, best = largest_blob_mask(BinaryMask(bits))
    assert not (out.bits & ~bits).any()
    assert out.count == best.area
    assert all(best.area >= len(p) for p in flood_fill_partition(bits, 8))
