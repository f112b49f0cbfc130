"""Greedy coarse-to-fine painting agent.

Recreates a target image stroke by stroke: propose randomly initialized
candidates around high-error regions, locally refine the best one by
coordinate descent against pixel L2, and commit only strokes that strictly
reduce the L2 distance to the target. A three-stage width schedule moves from
broad blocking-in strokes to fine detail, which keeps intermediate frames
looking like plausible partial paintings.

Candidate search runs on the rasterizer's cheap single-sample path; every
commit is re-scored with the exact renderer, so the monotonicity guarantee
holds for the frames a trajectory actually stores.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canvas import blank_canvas, check_canvas
from .strokes import Stroke, _alpha_patch, composite
from .trajectory import Trajectory

# commits must beat this SSE gain so recomputed full-frame L2 stays monotone
# under float reassociation
_MIN_GAIN = 1e-6


@dataclass(frozen=True)
class StageSpec:
    frac: float
    w_min: float
    w_max: float


@dataclass(frozen=True)
class CoarseToFineSchedule:
    stages: tuple[StageSpec, ...] = (
        StageSpec(0.20, 0.10, 0.28),
        StageSpec(0.40, 0.035, 0.10),
        StageSpec(0.40, 0.008, 0.035),
    )
    candidates: int = 5
    refine_passes: int = 2
    retries: int = 8

    def stage_for(self, k: int, n_strokes: int) -> StageSpec:
        frac = k / max(1, n_strokes)
        acc = 0.0
        for st in self.stages:
            acc += st.frac
            if frac < acc:
                return st
        return self.stages[-1]

    def to_dict(self) -> dict:
        return {
            "stages": [[s.frac, s.w_min, s.w_max] for s in self.stages],
            "candidates": self.candidates,
            "refine_passes": self.refine_passes,
            "retries": self.retries,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CoarseToFineSchedule":
        return cls(
            stages=tuple(StageSpec(*row) for row in d["stages"]),
            candidates=int(d.get("candidates", 5)),
            refine_passes=int(d.get("refine_passes", 2)),
            retries=int(d.get("retries", 8)),
        )


def _clip01(x):
    return float(np.clip(x, 0.0, 1.0))


def _mean_color(target: np.ndarray, cx: float, cy: float, radius_px: float) -> np.ndarray:
    h, w = target.shape[:2]
    r = max(1, int(round(radius_px)))
    x, y = int(cx * w), int(cy * h)
    x0, x1 = max(0, x - r), min(w, x + r + 1)
    y0, y1 = max(0, y - r), min(h, y + r + 1)
    if x0 >= x1 or y0 >= y1:
        return target.reshape(-1, 3).mean(axis=0)
    return target[y0:y1, x0:x1].reshape(-1, 3).mean(axis=0)


def _propose(rng: np.random.Generator, err_map: np.ndarray, stage: StageSpec,
             target: np.ndarray, dot: bool = False) -> Stroke:
    h, w = err_map.shape
    flat = err_map.reshape(-1)
    total = flat.sum()
    if dot or total <= 0.0:
        # corrective dot at the single worst pixel
        idx = int(np.argmax(flat))
        cy, cx = (idx // w + 0.5) / h, (idx % w + 0.5) / w
        col = target[idx // w, idx % w]
        wid = 1.2 / min(h, w)
        jit = rng.uniform(-0.2, 0.2, size=2) / min(h, w)
        p = (_clip01(cx + jit[0]), _clip01(cy + jit[1]))
        return Stroke(p0=p, p1=p, p2=p, w0=wid, w1=wid,
                      color=tuple(float(np.clip(c, 0, 1)) for c in col), opacity=1.0)

    idx = rng.choice(flat.size, p=flat / total)
    cy, cx = (idx // w + 0.5) / h, (idx % w + 0.5) / w
    wid = float(rng.uniform(stage.w_min, stage.w_max))
    length = float(rng.uniform(1.0, 4.0)) * wid
    theta = float(rng.uniform(0.0, 2.0 * np.pi))
    dx, dy = 0.5 * length * np.cos(theta), 0.5 * length * np.sin(theta)
    bend = rng.normal(0.0, 0.35 * wid, size=2)
    p0 = (_clip01(cx - dx), _clip01(cy - dy))
    p2 = (_clip01(cx + dx), _clip01(cy + dy))
    p1 = (_clip01(cx + bend[0]), _clip01(cy + bend[1]))
    col = _mean_color(target, cx, cy, wid * min(h, w))
    col = col + rng.normal(0.0, 0.02, size=3)
    return Stroke(
        p0=p0, p1=p1, p2=p2,
        w0=_clip01(wid * rng.uniform(0.8, 1.2)),
        w1=_clip01(wid * rng.uniform(0.8, 1.2)),
        color=tuple(float(np.clip(c, 0, 1)) for c in col),
        opacity=float(rng.uniform(0.65, 1.0)),
    )


def _gain(frame: np.ndarray, target: np.ndarray, stroke: Stroke, exact: bool) -> tuple[float, tuple | None]:
    """SSE reduction of compositing `stroke` onto `frame`, over the stroke bbox."""
    patch = _alpha_patch(stroke, frame.shape[:2], exact=exact)
    if patch is None:
        return 0.0, None
    alpha, box = patch
    y0, y1, x0, x1 = box
    old = frame[y0:y1, x0:x1].astype(np.float64)
    tgt = target[y0:y1, x0:x1].astype(np.float64)
    col = np.asarray(stroke.color, dtype=np.float64)
    new = (1.0 - alpha[..., None]) * old + alpha[..., None] * col
    # quantize to float32 exactly as composite() stores it
    new = np.clip(new, 0.0, 1.0).astype(np.float32).astype(np.float64)
    sse_old = ((old - tgt) ** 2).sum()
    sse_new = ((new - tgt) ** 2).sum()
    return float(sse_old - sse_new), (alpha, box)


_MUTATIONS = (
    ("p0", 0, 1.0), ("p0", 1, 1.0), ("p1", 0, 1.0), ("p1", 1, 1.0),
    ("p2", 0, 1.0), ("p2", 1, 1.0),
    ("w0", None, 0.35), ("w1", None, 0.35),
    ("color", 0, 0.08), ("color", 1, 0.08), ("color", 2, 0.08),
    ("opacity", None, 0.12),
)


def _mutate(stroke: Stroke, field: str, comp: int | None, delta: float) -> Stroke:
    d = stroke.to_dict()
    if comp is None:
        d[field] = _clip01(d[field] + delta)
    else:
        d[field][comp] = _clip01(d[field][comp] + delta)
    return Stroke.from_dict(d)


def _refine(stroke: Stroke, frame: np.ndarray, target: np.ndarray, base_gain: float,
            stage: StageSpec, passes: int) -> tuple[Stroke, float]:
    best, best_gain = stroke, base_gain
    scale = max(stage.w_min, 0.5 * (stage.w_min + stage.w_max))
    for p in range(passes):
        step = scale * (0.6 ** p)
        for field, comp, rel in _MUTATIONS:
            for sign in (1.0, -1.0):
                cand = _mutate(best, field, comp, sign * rel * step)
                g, _ = _gain(frame, target, cand, exact=False)
                if g > best_gain:
                    best, best_gain = cand, g
    return best, best_gain


def paint_target(target: np.ndarray, n_strokes: int, seed: int,
                 schedule: CoarseToFineSchedule | None = None,
                 resolution: tuple[int, int] | None = None) -> Trajectory:
    """Greedily paint `target`, returning the full trajectory of frames.

    Commits at most `n_strokes` strokes; stops early only if no improving
    stroke can be found, which at working resolution effectively means the
    target has been reproduced to the bit.
    """
    if n_strokes < 1:
        raise ValueError("n_strokes must be >= 1")
    if schedule is None:
        schedule = CoarseToFineSchedule()
    check_canvas(target, resolution)
    res = target.shape[:2]
    rng = np.random.default_rng(seed)

    frame = blank_canvas(res)
    frames = [frame]
    strokes: list[Stroke] = []
    err_map = ((frame.astype(np.float64) - target.astype(np.float64)) ** 2).sum(axis=2)

    for k in range(n_strokes):
        stage = schedule.stage_for(k, n_strokes)
        committed = False
        for attempt in range(schedule.retries):
            dots = attempt >= schedule.retries // 2
            cands = [_propose(rng, err_map, stage, target, dot=dots) for _ in range(schedule.candidates)]
            scored = [(_gain(frame, target, c, exact=False)[0], i) for i, c in enumerate(cands)]
            g0, i0 = max(scored)
            best = cands[i0]
            if not dots:
                best, g0 = _refine(best, frame, target, g0, stage, schedule.refine_passes)
            exact_gain, patch = _gain(frame, target, best, exact=True)
            if exact_gain > _MIN_GAIN and patch is not None:
                alpha, box = patch
                frame = composite(frame, alpha, best.color, box)
                y0, y1, x0, x1 = box
                diff = frame[y0:y1, x0:x1].astype(np.float64) - target[y0:y1, x0:x1].astype(np.float64)
                err_map[y0:y1, x0:x1] = (diff ** 2).sum(axis=2)
                frames.append(frame)
                strokes.append(best)
                committed = True
                break
        if not committed:
            break

    return Trajectory(
        frames=frames,
        target=target.copy(),
        strokes=strokes,
        stroke_count=len(strokes),
        seed=seed,
        schedule=schedule.to_dict(),
    )


def l2_to_target(traj: Trajectory) -> np.ndarray:
    """Mean squared error of every frame against the trajectory target."""
    tgt = traj.target.astype(np.float64)
    return np.array([((f.astype(np.float64) - tgt) ** 2).mean() for f in traj.frames])
