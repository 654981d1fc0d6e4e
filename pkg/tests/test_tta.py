"""Variant family shape and prediction aggregation."""

import numpy as np
import pytest

from seglift.core import PointCloud
from seglift.errors import DimMismatch
from seglift.tta import aggregate_tta, default_variants, emit_variants


def random_cloud(n, seed):
    rng = np.random.default_rng(seed)
    return PointCloud(rng.uniform(-10, 10, (n, 3)), rng.uniform(0, 1, n))


class TestVariants:
    def test_twelve_distinct_entries_identity_first(self):
        variants = default_variants()
        assert len(variants) == 12
        assert variants[0].kind == "identity"
        assert len({v.name for v in variants}) == 12
        kinds = [v.kind for v in variants]
        assert kinds.count("flip") == 3 and kinds.count("yaw") == 8

    def test_yaw_angles_are_forty_degree_steps(self):
        angles = [v.angle_deg for v in default_variants() if v.kind == "yaw"]
        assert angles == [40.0 * k for k in range(1, 9)]

    def test_variant_zero_is_bitwise_input(self):
        cloud = random_cloud(50, 0)
        clouds, manifest = emit_variants(cloud)
        np.testing.assert_array_equal(clouds[0].xyz, cloud.xyz)
        assert manifest[0] == {"name": "identity", "kind": "identity"}

    def test_manifest_lists_parameters(self):
        _, manifest = emit_variants(random_cloud(5, 1))
        assert {"name": "flip_x", "kind": "flip", "axis": "x"} in manifest
        assert {"name": "yaw_120", "kind": "yaw", "angle_deg": 120.0} in manifest

    def test_point_order_preserved_in_every_variant(self):
        cloud = random_cloud(80, 2)
        clouds, _ = emit_variants(cloud)
        r_in = np.linalg.norm(cloud.xyz[:, :2], axis=1)
        for out in clouds:
            assert len(out) == len(cloud)
            np.testing.assert_array_equal(out.intensity, cloud.intensity)
            np.testing.assert_allclose(np.linalg.norm(out.xyz[:, :2], axis=1), r_in,
                                       atol=1e-6)

    def test_flip_variant_is_involution(self):
        cloud = random_cloud(30, 3)
        clouds, _ = emit_variants(cloud)
        flipped_back = clouds[1].xyz.copy()
        flipped_back[:, 0] = -flipped_back[:, 0]
        np.testing.assert_allclose(flipped_back, cloud.xyz, atol=1e-6)


class TestAggregate:
    def test_identical_tensors_pass_through(self):
        rng = np.random.default_rng(4)
        probs = rng.dirichlet(np.ones(5), size=100).astype(np.float32)
        out = aggregate_tta([probs] * 12)
        np.testing.assert_allclose(out, probs, atol=1e-7)

    def test_two_one_hot_rows_average_to_half(self):
        a = np.array([[1.0, 0.0]], dtype=np.float32)
        b = np.array([[0.0, 1.0]], dtype=np.float32)
        np.testing.assert_array_equal(aggregate_tta([a, b]), [[0.5, 0.5]])

    def test_mean_stays_normalized(self):
        rng = np.random.default_rng(5)
        tensors = [rng.dirichlet(np.ones(4), size=60).astype(np.float32) for _ in range(12)]
        out = aggregate_tta(tensors)
        np.testing.assert_allclose(out.sum(axis=1), 1.0, atol=1e-5)

    def test_variant_order_does_not_matter(self):
        rng = np.random.default_rng(6)
        tensors = [rng.dirichlet(np.ones(4), size=30).astype(np.float32) for _ in range(12)]
        fwd = aggregate_tta(tensors)
        rev = aggregate_tta(tensors[::-1])
        np.testing.assert_allclose(fwd, rev, atol=1e-6)

    def test_shape_mismatch(self):
        with pytest.raises(DimMismatch):
            aggregate_tta([np.zeros((3, 2), np.float32), np.zeros((4, 2), np.float32)])

    def test_empty_list_rejected(self):
        with pytest.raises(DimMismatch):
            aggregate_tta([])
