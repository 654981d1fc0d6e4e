"""seglift: lift 2D segmentation probabilities onto LiDAR point clouds.

Library surface: geometric transforms, dataset I/O, camera-model
probability lifting, KNN label refinement, class-balanced pseudo-label
thresholding, FOV slicing, TTA variants, greedy weight soups, and
segmentation evaluation.  The ``seglift`` CLI chains the stages over
datasets in the standard odometry layout.
"""

from .core import IGNORE_ID, CalibrationRig, ClassMap, PointCloud, RigidTransform
from .projection import FovMask, fov_mask, lift_probs, project_points, slice_cloud
from .refinement import (
    KdTree,
    build_tree,
    refine_confidence_avg,
    refine_distance_weighted,
    refine_majority,
)
from .thresholding import (
    ThresholdConfig,
    apply_threshold,
    class_thresholds,
    histogram,
    static_thresholds,
)
from .evaluation import ConfusionMatrix, accumulate, iou, report
from .tta import TtaVariant, aggregate_tta, default_variants, emit_variants
from .soup import SoupResult, greedy_soup

__version__ = "0.1.0"

__all__ = [
    "IGNORE_ID",
    "CalibrationRig",
    "ClassMap",
    "ConfusionMatrix",
    "FovMask",
    "KdTree",
    "PointCloud",
    "RigidTransform",
    "SoupResult",
    "ThresholdConfig",
    "TtaVariant",
    "accumulate",
    "aggregate_tta",
    "apply_threshold",
    "build_tree",
    "class_thresholds",
    "default_variants",
    "emit_variants",
    "fov_mask",
    "greedy_soup",
    "histogram",
    "iou",
    "lift_probs",
    "project_points",
    "refine_confidence_avg",
    "refine_distance_weighted",
    "refine_majority",
    "report",
    "slice_cloud",
    "static_thresholds",
    "__version__",
]
