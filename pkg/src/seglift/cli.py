"""Command-line pipeline driver.

Datasets follow the usual odometry layout: ``<root>/sequences/<NN>/``
holding ``velodyne/*.bin``, ``labels/*.label``, ``calib.txt``, and
teacher maps in a parallel ``probs_2d/*.ptns`` tree (``probs_2d/cam<id>/``
when several cameras are configured).  Every output is written atomically
(temp file + rename) and depends only on the inputs, the config, and the
seed, never on the parallelism degree.

Exit codes: 0 success, 1 typed pipeline error (message names the file and
cause), 2 configuration or usage error.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import io, soup, synthetic, tta
from .config import (
    REFINEMENT_SCHEMES,
    PipelineConfig,
    override,
    read_config,
)
from .core import IGNORE_ID
from .errors import ConfigError, ToolkitError
from .evaluation import ConfusionMatrix, report
from .projection import FovMask, lift_probs, merge_lifted, slice_cloud
from .refinement import build_tree, refine_confidence_avg, refine_distance_weighted, refine_majority
from .thresholding import ThresholdConfig, apply_threshold, class_thresholds, histogram, static_thresholds

# Sub-directory names inside each sequence.
D_VELO = "velodyne"
D_LABELS = "labels"
D_PROBS2D = "probs_2d"
D_PROBS3D = "probs_3d"
D_MASK = "fov_mask"
D_REFINED = "refined_labels"
D_CONF = "confidences"
D_PSEUDO = "pseudo_labels"
D_SLICED = "velodyne_fov"
D_LABELS_FOV = "labels_fov"
D_INDEX = "index_map"
D_TTA = "tta"
D_AGG = "probs_agg"


# ---------------------------------------------------------------------------
# Dataset walking


def _sequences(root: Path) -> list[Path]:
    base = root / "sequences"
    if not base.is_dir():
        raise ConfigError(f"{root}: no sequences/ directory")
    seqs = sorted(p for p in base.iterdir() if p.is_dir())
    if not seqs:
        raise ConfigError(f"{base}: no sequence directories")
    return seqs


def _frames(seq_dir: Path, subdir: str, suffix: str) -> list[str]:
    d = seq_dir / subdir
    if not d.is_dir():
        raise ConfigError(f"{d}: missing input directory")
    return sorted(p.stem for p in d.glob(f"*{suffix}"))


def _run_tasks(worker, tasks, jobs: int) -> list:
    if jobs <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


# ---------------------------------------------------------------------------
# Per-scan workers (module level so they pickle into worker processes)


def _lift_worker(task: dict):
    cloud = io.read_cloud_bin(task["cloud"])
    lifted, masks = [], []
    for cam in task["cameras"]:
        prob_map = io.read_tensor(cam["probs"])
        if prob_map.ndim != 3:
            raise ConfigError(f"{cam['probs']}: teacher map must be (H, W, C)")
        size = task["image_size"] or (prob_map.shape[1], prob_map.shape[0])
        rig = io.read_calib(task["calib"], image_size=size, camera=cam["id"])
        p, m = lift_probs(prob_map, cloud, rig, sampling=task["sampling"])
        lifted.append(p)
        masks.append(m)
    if len(lifted) == 1:
        probs, mask = lifted[0], masks[0]
    else:
        probs, mask = merge_lifted(lifted, masks)
    io.write_tensor(probs.astype(np.float32), task["out_probs"])
    io.write_tensor(mask.mask.astype(np.uint8), task["out_mask"])
    return task["stem"]


def _refine_worker(task: dict):
    cloud = io.read_cloud_bin(task["cloud"])
    probs = io.read_tensor(task["probs"]).astype(np.float64)
    mask = FovMask(io.read_tensor(task["mask"]).astype(bool))
    if len(mask) != len(cloud) or probs.shape[0] != len(cloud):
        raise ConfigError(f"{task['probs']}: lift outputs do not match the cloud")
    # Sparse scans must not abort a batch: clamp k to the indexed points
    # (keeping it odd) and fall back to all-ignore when nothing is indexed.
    limit = mask.count if task["include_self"] else mask.count - 1
    if limit < 1:
        labels = np.zeros(len(cloud), dtype=np.uint16)
        conf = np.zeros(len(cloud), dtype=np.float32)
    else:
        tree = build_tree(cloud, mask)
        k = min(task["k"], limit)
        if k % 2 == 0:
            k -= 1
        scheme = task["scheme"]
        if scheme == "majority":
            labels = refine_majority(probs, tree, k, task["include_self"], task["tie_break"])
            conf = probs.max(axis=1)
        elif scheme == "distance_weighted":
            labels = refine_distance_weighted(probs, tree, k, task["include_self"])
            conf = probs.max(axis=1)
        else:
            labels, refined = refine_confidence_avg(probs, tree, k, task["include_self"])
            conf = refined.max(axis=1)
        conf = conf.astype(np.float32)
    io.write_labels(labels, task["out_labels"])
    io.write_tensor(conf, task["out_conf"])
    return task["stem"]


def _threshold_worker(task: dict):
    labels, _ = io.read_labels(task["labels"])
    conf = io.read_tensor(task["conf"]).astype(np.float64)
    thresholds = np.asarray(task["thresholds"], dtype=np.float64)
    out, _ = apply_threshold(labels, conf, thresholds)
    labeled = int((labels != IGNORE_ID).sum())
    removed = labeled - int((out != IGNORE_ID).sum())
    io.write_labels(out, task["out_labels"])
    return task["stem"], removed, labeled


def _slice_worker(task: dict):
    cloud = io.read_cloud_bin(task["cloud"])
    mask = io.read_tensor(task["mask"]).astype(bool)
    sliced, index_map = slice_cloud(cloud, mask)
    io.write_cloud_bin(sliced, task["out_cloud"])
    io.write_tensor(index_map.astype(np.uint32), task["out_index"])
    if task.get("labels"):
        labels, _ = io.read_labels(task["labels"])
        if labels.shape[0] != len(cloud):
            raise ConfigError(f"{task['labels']}: label count does not match the cloud")
        io.write_labels(labels[index_map], task["out_labels"])
    return task["stem"]


def _tta_emit_worker(task: dict):
    cloud = io.read_cloud_bin(task["cloud"])
    clouds, _ = tta.emit_variants(cloud)
    for i, variant_cloud in enumerate(clouds):
        io.write_cloud_bin(variant_cloud, task["out_dir"] / f"{task['frame']}_v{i:02d}.bin")
    return task["stem"]


def _tta_agg_worker(task: dict):
    tensors = [io.read_tensor(p) for p in task["inputs"]]
    io.write_tensor(tta.aggregate_tta(tensors), task["out"])
    return task["stem"]


# ---------------------------------------------------------------------------
# Stage drivers (shared by the individual commands and `pipeline`)


def _resolve(cfg: PipelineConfig, args, **extra) -> PipelineConfig:
    updates = dict(
        dataset_root=getattr(args, "dataset_root", None),
        output_root=getattr(args, "output_root", None),
        class_map=getattr(args, "class_map", None),
        jobs=getattr(args, "jobs", None),
        seed=getattr(args, "seed", None),
    )
    updates.update(extra)
    return override(cfg, **updates)


def _need(cfg: PipelineConfig, *fields) -> None:
    for name in fields:
        if getattr(cfg, name) in (None, ""):
            raise ConfigError(f"missing required setting {name!r} (flag or config)")


def _probs2d_path(seq_dir: Path, cfg: PipelineConfig, cam: int, stem: str) -> Path:
    if len(cfg.cameras) == 1:
        return seq_dir / D_PROBS2D / f"{stem}.ptns"
    return seq_dir / D_PROBS2D / f"cam{cam}" / f"{stem}.ptns"


def _stage_lift(cfg: PipelineConfig) -> int:
    _need(cfg, "dataset_root", "output_root")
    tasks = []
    for seq_dir in _sequences(Path(cfg.dataset_root)):
        out_seq = Path(cfg.output_root) / "sequences" / seq_dir.name
        for stem in _frames(seq_dir, D_VELO, ".bin"):
            tasks.append({
                "stem": f"{seq_dir.name}/{stem}",
                "cloud": seq_dir / D_VELO / f"{stem}.bin",
                "calib": seq_dir / "calib.txt",
                "cameras": [{"id": cam, "probs": _probs2d_path(seq_dir, cfg, cam, stem)}
                            for cam in cfg.cameras],
                "image_size": cfg.image_size,
                "sampling": cfg.lift_sampling,
                "out_probs": out_seq / D_PROBS3D / f"{stem}.ptns",
                "out_mask": out_seq / D_MASK / f"{stem}.ptns",
            })
    _run_tasks(_lift_worker, tasks, cfg.jobs)
    print(f"lift: {len(tasks)} scans -> {cfg.output_root}")
    return len(tasks)


def _stage_refine(cfg: PipelineConfig) -> int:
    _need(cfg, "dataset_root", "output_root")
    ref = cfg.refinement
    if ref.k < 1 or ref.k % 2 == 0:
        raise ConfigError(f"refinement.k must be an odd integer >= 1, got {ref.k}")
    if ref.scheme not in REFINEMENT_SCHEMES:
        raise ConfigError(f"unknown refinement scheme {ref.scheme!r}")
    tasks = []
    for seq_dir in _sequences(Path(cfg.dataset_root)):
        out_seq = Path(cfg.output_root) / "sequences" / seq_dir.name
        for stem in _frames(seq_dir, D_VELO, ".bin"):
            tasks.append({
                "stem": f"{seq_dir.name}/{stem}",
                "cloud": seq_dir / D_VELO / f"{stem}.bin",
                "probs": out_seq / D_PROBS3D / f"{stem}.ptns",
                "mask": out_seq / D_MASK / f"{stem}.ptns",
                "scheme": ref.scheme,
                "k": ref.k,
                "include_self": ref.include_self,
                "tie_break": ref.tie_break,
                "out_labels": out_seq / D_REFINED / f"{stem}.label",
                "out_conf": out_seq / D_CONF / f"{stem}.ptns",
            })
    _run_tasks(_refine_worker, tasks, cfg.jobs)
    print(f"refine[{ref.scheme}, k={ref.k}]: {len(tasks)} scans")
    return len(tasks)


def _stage_stats(cfg: PipelineConfig) -> np.ndarray:
    _need(cfg, "output_root", "class_map")
    class_map = io.read_class_map(cfg.class_map)
    out_root = Path(cfg.output_root)

    def refined_labels():
        for seq_dir in _sequences(out_root):
            for stem in _frames(seq_dir, D_REFINED, ".label"):
                labels, _ = io.read_labels(seq_dir / D_REFINED / f"{stem}.label",
                                           class_map=class_map)
                yield labels

    counts = histogram(refined_labels(), class_map.num_classes)
    lines = "".join(f"{i},{int(c)}\n" for i, c in enumerate(counts))
    with io.atomic_write(out_root / "histogram.csv") as fh:
        fh.write(lines.encode())
    print(f"stats: histogram over {int(counts.sum())} labels -> histogram.csv")
    return counts


def _stage_threshold(cfg: PipelineConfig) -> None:
    _need(cfg, "output_root", "class_map")
    class_map = io.read_class_map(cfg.class_map)
    out_root = Path(cfg.output_root)
    tcfg = cfg.threshold
    if tcfg.mode == "static":
        thresholds = static_thresholds(tcfg, class_map.num_classes)
    else:
        hist_path = out_root / "histogram.csv"
        if not hist_path.exists():
            raise ConfigError(f"{hist_path}: run `seglift stats` first (class-balanced mode)")
        counts = _read_histogram_csv(hist_path, class_map.num_classes)
        thresholds = class_thresholds(counts, tcfg)
    with io.atomic_write(out_root / "thresholds.csv") as fh:
        fh.write("".join(f"{i},{t:.12f}\n" for i, t in enumerate(thresholds)).encode())

    tasks = []
    for seq_dir in _sequences(out_root):
        for stem in _frames(seq_dir, D_REFINED, ".label"):
            tasks.append({
                "stem": f"{seq_dir.name}/{stem}",
                "labels": seq_dir / D_REFINED / f"{stem}.label",
                "conf": seq_dir / D_CONF / f"{stem}.ptns",
                "thresholds": thresholds.tolist(),
                "out_labels": seq_dir / D_PSEUDO / f"{stem}.label",
            })
    results = _run_tasks(_threshold_worker, tasks, cfg.jobs)
    removed = sum(r for _, r, _ in results)
    labeled = sum(n for _, _, n in results)
    lines = [f"{stem},{r},{n},{r / n if n else 0.0:.6f}" for stem, r, n in results]
    lines.append(f"total,{removed},{labeled},{removed / labeled if labeled else 0.0:.6f}")
    with io.atomic_write(out_root / "reduction.csv") as fh:
        fh.write(("\n".join(lines) + "\n").encode())
    frac = removed / labeled if labeled else 0.0
    print(f"threshold[{tcfg.mode}]: removed {removed}/{labeled} labels ({frac:.2%})")


def _read_histogram_csv(path: Path, num_classes: int) -> np.ndarray:
    counts = np.zeros(num_classes, dtype=np.int64)
    for lineno, cid, count in io._csv_pairs(path):
        try:
            i, n = int(cid), int(count)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad histogram row") from exc
        if not 0 <= i < num_classes:
            raise ConfigError(f"{path}:{lineno}: class {i} outside the class map")
        counts[i] = n
    return counts


# ---------------------------------------------------------------------------
# Commands


def cmd_synth(args) -> int:
    if args.scenes < 1:
        raise ConfigError("--scenes must be >= 1")
    if not (0.0 <= args.border_rate <= 1.0 and 0.0 <= args.body_rate <= 1.0):
        raise ConfigError("error rates must lie in [0, 1]")
    synthetic.generate_corpus(
        args.out,
        num_scenes=args.scenes,
        seed=args.seed,
        error_rate_border=args.border_rate,
        error_rate_body=args.body_rate,
    )
    print(f"synth: {args.scenes} scenes (border={args.border_rate}, "
          f"body={args.body_rate}, seed={args.seed}) -> {args.out}")
    return 0


def _base_config(args) -> PipelineConfig:
    cfg = read_config(args.config) if args.config else PipelineConfig()
    return _resolve(cfg, args)


def cmd_lift(args) -> int:
    _stage_lift(_base_config(args))
    return 0


def cmd_refine(args) -> int:
    cfg = _base_config(args)
    if args.scheme or args.k:
        ref = cfg.refinement
        if args.scheme:
            ref = replace(ref, scheme=args.scheme)
        if args.k:
            ref = replace(ref, k=args.k)
        cfg = override(cfg, refinement=ref)
    _stage_refine(cfg)
    return 0


def cmd_stats(args) -> int:
    _stage_stats(_base_config(args))
    return 0


def cmd_threshold(args) -> int:
    cfg = _base_config(args)
    if args.mode:
        if args.mode == "static":
            if args.tau is None:
                raise ConfigError("static mode needs --tau")
            cfg = override(cfg, threshold=ThresholdConfig.static(args.tau))
        else:
            tau_min = args.tau_min if args.tau_min is not None else cfg.threshold.tau_min
            tau_max = args.tau_max if args.tau_max is not None else cfg.threshold.tau_max
            cfg = override(cfg, threshold=ThresholdConfig(tau_min, tau_max, "class_balanced"))
    elif args.tau is not None or args.tau_min is not None or args.tau_max is not None:
        raise ConfigError("--tau/--tau-min/--tau-max need an explicit --mode")
    _stage_threshold(cfg)
    return 0


def cmd_slice(args) -> int:
    cfg = _base_config(args)
    _need(cfg, "dataset_root", "output_root")
    tasks = []
    for seq_dir in _sequences(Path(cfg.dataset_root)):
        out_seq = Path(cfg.output_root) / "sequences" / seq_dir.name
        mask_root = Path(args.masks) if args.masks else out_seq
        for stem in _frames(seq_dir, D_VELO, ".bin"):
            label_path = seq_dir / D_LABELS / f"{stem}.label"
            tasks.append({
                "stem": f"{seq_dir.name}/{stem}",
                "cloud": seq_dir / D_VELO / f"{stem}.bin",
                "mask": mask_root / D_MASK / f"{stem}.ptns",
                "labels": label_path if label_path.exists() else None,
                "out_cloud": out_seq / D_SLICED / f"{stem}.bin",
                "out_labels": out_seq / D_LABELS_FOV / f"{stem}.label",
                "out_index": out_seq / D_INDEX / f"{stem}.ptns",
            })
    _run_tasks(_slice_worker, tasks, cfg.jobs)
    print(f"slice: {len(tasks)} scans -> {cfg.output_root}")
    return 0


def cmd_eval(args) -> int:
    class_map = io.read_class_map(args.class_map)
    gt_dir, pred_dir = Path(args.gt), Path(args.pred)
    remap = io.read_remap(args.remap) if args.remap else None
    stems = sorted(p.stem for p in gt_dir.glob("*.label"))
    if not stems:
        raise ConfigError(f"{gt_dir}: no .label files")
    matrices = []
    for stem in stems:
        gt, _ = io.read_labels(gt_dir / f"{stem}.label", class_map=class_map, remap=remap)
        pred, _ = io.read_labels(pred_dir / f"{stem}.label", class_map=class_map)
        mask = None
        if args.masks:
            mask = io.read_tensor(Path(args.masks) / f"{stem}.ptns").astype(bool)
        matrices.append(ConfusionMatrix(class_map.num_classes).update(gt, pred, mask))
    result = report(matrices, class_map)
    print(result.to_text())
    if args.out:
        with io.atomic_write(args.out) as fh:
            fh.write(result.to_csv().encode())
    return 0


def cmd_tta(args) -> int:
    cfg = _base_config(args)
    _need(cfg, "dataset_root", "output_root")
    tasks = []
    if args.action == "emit":
        for seq_dir in _sequences(Path(cfg.dataset_root)):
            out_seq = Path(cfg.output_root) / "sequences" / seq_dir.name
            for stem in _frames(seq_dir, D_VELO, ".bin"):
                tasks.append({
                    "stem": f"{seq_dir.name}/{stem}",
                    "frame": stem,
                    "cloud": seq_dir / D_VELO / f"{stem}.bin",
                    "out_dir": out_seq / D_TTA,
                })
        _run_tasks(_tta_emit_worker, tasks, cfg.jobs)
        manifest = [v.manifest_entry() for v in tta.default_variants()]
        with io.atomic_write(Path(cfg.output_root) / "tta_manifest.json") as fh:
            fh.write(json.dumps(manifest, indent=2).encode())
    else:  # aggregate
        n_variants = len(tta.default_variants())
        for seq_dir in _sequences(Path(cfg.dataset_root)):
            out_seq = Path(cfg.output_root) / "sequences" / seq_dir.name
            probs_dir = seq_dir / args.probs_subdir
            stems = sorted({p.stem.rsplit("_v", 1)[0] for p in probs_dir.glob("*_v*.ptns")})
            if not stems:
                raise ConfigError(f"{probs_dir}: no per-variant tensors (<stem>_vNN.ptns)")
            for stem in stems:
                tasks.append({
                    "stem": f"{seq_dir.name}/{stem}",
                    "inputs": [probs_dir / f"{stem}_v{i:02d}.ptns" for i in range(n_variants)],
                    "out": out_seq / D_AGG / f"{stem}.ptns",
                })
        _run_tasks(_tta_agg_worker, tasks, cfg.jobs)
    print(f"tta {args.action}: {len(tasks)} scans")
    return 0


def cmd_soup(args) -> int:
    result = soup.greedy_soup(args.candidates, shlex.split(args.eval_cmd))
    io.write_tensor(result.vector, args.out)
    log_path = args.log or (str(args.out) + ".log.json")
    with io.atomic_write(log_path) as fh:
        fh.write(json.dumps(result.log_entries(), indent=2).encode())
    print(f"soup: {len(result.included)}/{len(args.candidates)} candidates, "
          f"metric {result.final_metric:.6f} -> {args.out}")
    return 0


def cmd_pipeline(args) -> int:
    cfg = _base_config(args)
    _need(cfg, "dataset_root", "output_root", "class_map")
    _stage_lift(cfg)
    _stage_refine(cfg)
    if cfg.threshold.mode == "class_balanced":
        _stage_stats(cfg)
    _stage_threshold(cfg)
    print(f"pipeline: pseudo-labels in {cfg.output_root}")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing


def _add_common(sp, dataset=True, output=True):
    sp.add_argument("--config", help="JSON pipeline config")
    if dataset:
        sp.add_argument("--dataset-root", help="input dataset root (sequences/ layout)")
    if output:
        sp.add_argument("--output-root", help="output root")
    sp.add_argument("--class-map", help="class map CSV")
    sp.add_argument("--jobs", type=int, help="worker processes (default 1)")
    sp.add_argument("--seed", type=int, help="base seed")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="seglift",
        description="Lift 2D segmentation probabilities onto LiDAR clouds, refine, "
                    "threshold, slice, augment, ensemble, and evaluate.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("synth", help="generate a synthetic corpus")
    sp.add_argument("--out", required=True)
    sp.add_argument("--scenes", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--border-rate", type=float, default=0.5)
    sp.add_argument("--body-rate", type=float, default=0.05)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("lift", help="lift teacher maps onto clouds")
    _add_common(sp)
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("refine", help="KNN-refine lifted probabilities")
    _add_common(sp)
    sp.add_argument("--scheme", choices=REFINEMENT_SCHEMES)
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_refine)

    sp = sub.add_parser("stats", help="corpus class histogram over refined labels")
    _add_common(sp, dataset=False)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("threshold", help="apply confidence thresholds")
    _add_common(sp, dataset=False)
    sp.add_argument("--mode", choices=("static", "class_balanced"))
    sp.add_argument("--tau", type=float, help="static threshold")
    sp.add_argument("--tau-min", type=float)
    sp.add_argument("--tau-max", type=float)
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("slice", help="cut clouds to the camera field of view")
    _add_common(sp)
    sp.add_argument("--masks", help="root holding fov_mask/ (defaults to output root)")
    sp.set_defaults(func=cmd_slice)

    sp = sub.add_parser("eval", help="mIoU of predictions against ground truth")
    sp.add_argument("--gt", required=True, help="directory of ground-truth .label files")
    sp.add_argument("--pred", required=True, help="directory of predicted .label files")
    sp.add_argument("--class-map", required=True)
    sp.add_argument("--masks", help="directory of fov masks (.ptns) to restrict scoring")
    sp.add_argument("--remap", help="CSV raw_id,train_id remap applied to ground truth")
    sp.add_argument("--out", help="write the CSV summary here")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("tta", help="emit the 12 variants / aggregate their predictions")
    sp.add_argument("action", choices=("emit", "aggregate"))
    _add_common(sp)
    sp.add_argument("--probs-subdir", default=D_TTA,
                    help="sequence subdir holding per-variant tensors (aggregate)")
    sp.set_defaults(func=cmd_tta)

    sp = sub.add_parser("soup", help="greedy-soup average of checkpoint weight vectors")
    sp.add_argument("--candidates", nargs="+", required=True)
    sp.add_argument("--eval-cmd", required=True,
                    help="command that prints one scalar given a weight file path")
    sp.add_argument("--out", required=True)
    sp.add_argument("--log", help="JSON inclusion log (default <out>.log.json)")
    sp.set_defaults(func=cmd_soup)

    sp = sub.add_parser("pipeline", help="lift -> refine -> stats -> threshold")
    _add_common(sp)
    sp.set_defaults(func=cmd_pipeline)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"seglift: config error: {exc}", file=sys.stderr)
        return 2
    except (ToolkitError, OSError) as exc:
        print(f"seglift: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
