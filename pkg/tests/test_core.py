"""Container validation: PointCloud, RigidTransform, CalibrationRig, ClassMap."""

import numpy as np
import pytest

from seglift.core import CalibrationRig, ClassMap, PointCloud, RigidTransform


def random_cloud(n, seed=0):
    rng = np.random.default_rng(seed)
    return PointCloud(rng.uniform(-30, 30, (n, 3)), rng.uniform(0, 1, n))


class TestPointCloud:
    def test_roundtrip_array(self):
        cloud = random_cloud(10)
        again = PointCloud.from_array(cloud.to_array())
        np.testing.assert_array_equal(cloud.xyz, again.xyz)
        np.testing.assert_array_equal(cloud.intensity, again.intensity)

    def test_empty_cloud_is_valid(self):
        cloud = PointCloud(np.zeros((0, 3)), np.zeros(0))
        assert len(cloud) == 0

    def test_rejects_nan_coordinates(self):
        xyz = np.zeros((2, 3))
        xyz[1, 0] = np.nan
        with pytest.raises(ValueError):
            PointCloud(xyz, np.zeros(2))

    def test_rejects_inf_coordinates(self):
        xyz = np.zeros((2, 3))
        xyz[0, 2] = np.inf
        with pytest.raises(ValueError):
            PointCloud(xyz, np.zeros(2))

    def test_rejects_intensity_outside_unit_interval(self):
        with pytest.raises(ValueError):
            PointCloud(np.zeros((1, 3)), np.array([1.5]))

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            PointCloud(np.zeros((3, 3)), np.zeros(2))


class TestRigidTransform:
    def test_identity(self):
        t = RigidTransform.identity()
        pts = np.array([[1.0, 2.0, 3.0]])
        np.testing.assert_array_equal(t.apply(pts), pts)

    def test_rejects_non_orthonormal(self):
        with pytest.raises(ValueError):
            RigidTransform(np.eye(3) * 2.0, np.zeros(3))

    def test_rejects_reflection(self):
        with pytest.raises(ValueError):
            RigidTransform(np.diag([-1.0, 1.0, 1.0]), np.zeros(3))

    def test_inverse_roundtrip(self):
        rng = np.random.default_rng(3)
        t = RigidTransform.yaw(rng.uniform(0, 2 * np.pi))
        t = RigidTransform(t.rotation, rng.uniform(-5, 5, 3))
        pts = rng.uniform(-10, 10, (50, 3))
        back = t.inverse().apply(t.apply(pts))
        np.testing.assert_allclose(back, pts, atol=1e-5)

    def test_matrix_roundtrip(self):
        t = RigidTransform.yaw(0.7)
        again = RigidTransform.from_matrix(t.matrix())
        np.testing.assert_allclose(again.rotation, t.rotation)


class TestCalibrationRig:
    def test_valid_rig(self):
        rig = CalibrationRig(
            P=np.array([[100.0, 0, 0, 0], [0, 100.0, 0, 0], [0, 0, 1.0, 0]]),
            T=np.eye(4), width=640, height=480,
        )
        assert rig.width == 640

    def test_rejects_bad_rotation_block(self):
        t = np.eye(4)
        t[0, 0] = 2.0
        with pytest.raises(ValueError):
            CalibrationRig(P=np.zeros((3, 4)), T=t, width=10, height=10)

    def test_rejects_nonpositive_size(self):
        with pytest.raises(ValueError):
            CalibrationRig(P=np.zeros((3, 4)), T=np.eye(4), width=0, height=10)


class TestClassMap:
    def test_basic(self):
        cm = ClassMap(["unlabeled", "car"])
        assert cm.num_classes == 2
        assert cm.name_of(1) == "car"
        assert 1 in cm and 2 not in cm

    def test_rejects_wrong_zero_name(self):
        with pytest.raises(ValueError):
            ClassMap(["void", "car"])

    def test_rejects_duplicate_names(self):
        with pytest.raises(ValueError):
            ClassMap(["unlabeled", "car", "car"])
