# Third-Party Imports
import numpy as np
import pytest

# Project-Specific Imports
from cslb.data import synth_blobs, subsample, subsample_indices, train_test_split
from cslb.errors import InvalidInputError
from cslb.nn import build_model, train, evaluate_accuracy


class TestSynthBlobs:

    def test_empty(self):
        dataset = synth_blobs(3, 0, 4, 10.0, seed=0)
        assert len(dataset) == 0

    def test_deterministic(self):
        a = synth_blobs(3, 20, 4, 10.0, seed=5)
        b = synth_blobs(3, 20, 4, 10.0, seed=5)
        np.testing.assert_array_equal(a.images, b.images)
        np.testing.assert_array_equal(a.labels, b.labels)

    def test_layout_and_range(self, blobs):
        assert blobs.images.shape == (400, 1, 1, 4)
        assert blobs.images.min() >= 0.0 and blobs.images.max() <= 1.0
        assert np.bincount(blobs.labels).tolist() == [200, 200]

    def test_rejects_nonpositive_separation(self):
        with pytest.raises(InvalidInputError):
            synth_blobs(2, 10, 4, 0.0, seed=0)

    def test_linearly_separable(self, blob_split):
        train_set, test_set = blob_split
        model = build_model('linear', train_set.sample_shape, 2, seed=0)
        model = train(model, train_set, epochs=30, learning_rate=0.5, batch_size=32, seed=0)
        assert evaluate_accuracy(model, test_set) >= 0.99


class TestSubsample:

    def test_full_draw_is_permutation(self, blobs):
        indices = subsample_indices(blobs, len(blobs), seed=3)
        np.testing.assert_array_equal(np.sort(indices), np.arange(len(blobs)))

    def test_zero(self, blobs):
        assert len(subsample(blobs, 0, seed=0)) == 0

    def test_deterministic(self, blobs):
        np.testing.assert_array_equal(subsample_indices(blobs, 50, seed=9), subsample_indices(blobs, 50, seed=9))

    def test_too_many(self, blobs):
        with pytest.raises(InvalidInputError):
            subsample(blobs, len(blobs) + 1, seed=0)

    def test_split_sizes(self, blobs):
        train_set, test_set = train_test_split(blobs, 0.25, seed=0)
        assert (len(train_set), len(test_set)) == (300, 100)
