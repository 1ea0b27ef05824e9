# Copyright 2026 The scene4d Authors
# SPDX-License-Identifier: Apache-2.0

import json
import math

import numpy as np
import pytest

import scene4d


def test_version():
    assert scene4d.__version__ == "0.1.0"


def test_pose_on_axis():
    e = scene4d.pose_to_extrinsics(scene4d.PoseDescription(0.0, 0.0, 15.0))
    assert np.allclose(e[:3, 3], [15, 0, 1])
    assert np.allclose(e[:3, 2], [-1, 0, 0])
    rel = scene4d.relative_extrinsics(e, e)
    assert np.allclose(rel, np.eye(4))


def test_intrinsics_and_bucket():
    k = scene4d.intrinsics_from_fov(384, 256, 90.0)
    assert k.fx == pytest.approx(192.0)
    assert scene4d.motion_bucket(45, 15) == 128
    u, v, z = scene4d.project(k, np.array([0.0, 0.0, 5.0]))
    assert (u, v, z) == (k.cx, k.cy, 5.0)


def test_trajectory():
    src = scene4d.PoseDescription(0.0, 5.0, 15.0)
    dst = scene4d.PoseDescription(90.0, 5.0, 15.0)
    poses = scene4d.build_trajectory(src, dst, "gradual", 14)
    assert len(poses) == 14
    assert np.allclose(poses[-1], scene4d.pose_to_extrinsics(dst))
    s, d = scene4d.sample_pose_pair(3, "max90", 5.0)
    assert s.elevation_deg == 5.0


def test_metrics():
    rng = np.random.default_rng(0)
    gt = rng.random((32, 32, 3), dtype=np.float32)
    assert scene4d.psnr(gt, gt) == 100.0
    assert scene4d.ssim(gt, gt) == 1.0
    off = np.clip(gt + 16 / 255, None, None).astype(np.float32)
    assert scene4d.psnr(off, gt) == pytest.approx(20 * math.log10(255 / 16), abs=1e-3)
    labels = np.array([[1, 1], [2, 2]], dtype=np.uint16)
    assert scene4d.miou(labels, labels, [1, 2]) == 1.0


def test_render_axis_point():
    k = scene4d.Intrinsics(32, 24, 30.0, 30.0, 16.0, 12.0)
    img, depth, cov = scene4d.render_points(np.array([[0.0, 0.0, 5.0]]), np.array([[1.0, 0.0, 0.0]], np.float32),
                                            k, np.eye(4), 0)
    assert cov.sum() == 1
    assert depth[12, 16] == 5.0
    assert img[12, 16, 0] == 1.0


def test_training_math():
    assert scene4d.focal_fraction(2500) == pytest.approx(0.55)
    pred = np.zeros((1, 2, 2, 1))
    target = np.sqrt(np.array([1.0, 2.0, 3.0, 4.0])).reshape(1, 2, 2, 1)
    assert scene4d.focal_l2(pred, target, 0.5) == pytest.approx(3.5)
    enc = scene4d.fourier_encode(0, 0, 0)
    assert len(enc) == 48
    assert scene4d.ballistic_height(5.0, 0.0, 0.5, 9.81, 0.6, 0.5) == pytest.approx(3.77375)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        scene4d.intrinsics_from_fov(0, 10, 60.0)
    with pytest.raises(OSError):
        scene4d.fuse("/nonexistent/scene")


def test_pipeline(tmp_path):
    cfg = {"resolution": "48x32", "scene_frames": 14, "camera_count": 2, "seed": 1}
    scene4d.synth(tmp_path, cfg)
    scene = tmp_path / "scene_0000"
    fused = scene4d.fuse(scene, cfg)
    assert fused["total_points"] > 0
    traj = json.loads((tmp_path / "trajectories.json").read_text())["trajectories"][0]["trajectory"]
    out = scene4d.render(scene, traj, tmp_path / "run", cfg)
    assert out["frames"] == 14
    report = scene4d.evaluate(tmp_path / "run", scene, tmp_path / "report.json", cfg)
    assert report["run_count"] == 1
    assert (tmp_path / "report.json").exists()
