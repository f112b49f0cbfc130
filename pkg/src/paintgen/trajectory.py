"""Painting trajectories: ordered canvas frames plus their target, and disk I/O.

On disk a trajectory is a directory of 8-bit PNGs (frame_0000.png ...,
target.png) plus manifest.json and the committed stroke parameters, enough to
re-render every frame bit-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .canvas import blank_canvas, load_png, save_png
from .strokes import Stroke, render_stroke


@dataclass
class Trajectory:
    frames: list[np.ndarray]
    target: np.ndarray
    strokes: list[Stroke]
    stroke_count: int
    seed: int
    schedule: dict = field(default_factory=dict)

    @property
    def resolution(self) -> tuple[int, int]:
        return self.frames[0].shape[:2]


def render_trajectory(strokes: list[Stroke], resolution: tuple[int, int],
                      target: np.ndarray | None = None, seed: int = 0) -> Trajectory:
    """Composite strokes in order from a blank canvas, keeping every frame.

    When no target is given the final frame doubles as the target.
    """
    if not strokes:
        raise ValueError("render_trajectory needs at least one stroke")
    frame = blank_canvas(resolution)
    frames = [frame]
    for s in strokes:
        frame = render_stroke(frame, s)
        frames.append(frame)
    return Trajectory(
        frames=frames,
        target=frames[-1].copy() if target is None else target,
        strokes=list(strokes),
        stroke_count=len(strokes),
        seed=seed,
    )


def save_trajectory(traj: Trajectory, directory) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for i, frame in enumerate(traj.frames):
        save_png(frame, d / f"frame_{i:04d}.png")
    save_png(traj.target, d / "target.png")
    manifest = {
        "stroke_count": traj.stroke_count,
        "seed": traj.seed,
        "resolution": list(traj.resolution),
        "schedule": traj.schedule,
        "engine_version": __version__,
    }
    (d / "manifest.json").write_text(json.dumps(manifest, indent=2))
    (d / "strokes.json").write_text(json.dumps([s.to_dict() for s in traj.strokes]))


def load_trajectory(directory) -> Trajectory:
    d = Path(directory)
    manifest = json.loads((d / "manifest.json").read_text())
    n = manifest["stroke_count"]
    frames = [load_png(d / f"frame_{i:04d}.png") for i in range(n + 1)]
    strokes = [Stroke.from_dict(s) for s in json.loads((d / "strokes.json").read_text())]
    return Trajectory(
        frames=frames,
        target=load_png(d / "target.png"),
        strokes=strokes,
        stroke_count=n,
        seed=manifest["seed"],
        schedule=manifest.get("schedule", {}),
    )
