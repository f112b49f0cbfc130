"""Procedural face-like sprite corpus.

Identity is a small parameter vector (head shape, skin tone, hair, eyes,
mouth curvature, background); rendering is analytic SDF compositing, so the
same identity can be re-rendered under pose/lighting augmentations. The
mouth-curvature parameter gives the domain a real "smile" factor that latent
edit directions can pick up.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class SpriteParams:
    skin: tuple[float, float, float]
    bg_top: tuple[float, float, float]
    bg_bottom: tuple[float, float, float]
    head_cx: float
    head_cy: float
    head_rx: float
    head_ry: float
    hair_color: tuple[float, float, float]
    hair_size: float
    bang: float
    eye_dy: float
    eye_dx: float
    eye_r: float
    iris: tuple[float, float, float]
    brow_tilt: float
    brow_drop: float
    mouth_dy: float
    mouth_w: float
    smile: float
    mouth_thick: float
    # pose/lighting, not identity
    shift_x: float = 0.0
    shift_y: float = 0.0
    scale: float = 1.0
    brightness: float = 0.0


def sample_params(rng: np.random.Generator) -> SpriteParams:
    skin_base = rng.uniform(0.45, 0.9)
    skin = (skin_base, skin_base * rng.uniform(0.75, 0.88), skin_base * rng.uniform(0.6, 0.78))
    hair_kind = rng.integers(0, 4)
    if hair_kind == 0:
        hair = tuple(rng.uniform(0.05, 0.25, size=3))
    elif hair_kind == 1:
        base = rng.uniform(0.35, 0.6)
        hair = (base, base * 0.7, base * 0.35)
    elif hair_kind == 2:
        base = rng.uniform(0.7, 0.95)
        hair = (base, base * rng.uniform(0.8, 1.0), base * rng.uniform(0.4, 0.7))
    else:
        hair = tuple(rng.uniform(0.2, 0.9, size=3))
    bg_hue = rng.uniform(0.3, 0.95, size=3)
    return SpriteParams(
        skin=tuple(float(c) for c in skin),
        bg_top=tuple(float(c) for c in np.clip(bg_hue + rng.uniform(0.0, 0.1), 0, 1)),
        bg_bottom=tuple(float(c) for c in np.clip(bg_hue - rng.uniform(0.0, 0.2), 0, 1)),
        head_cx=float(rng.uniform(0.47, 0.53)),
        head_cy=float(rng.uniform(0.5, 0.56)),
        head_rx=float(rng.uniform(0.2, 0.28)),
        head_ry=float(rng.uniform(0.25, 0.34)),
        hair_color=tuple(float(c) for c in hair),
        hair_size=float(rng.uniform(0.9, 1.35)),
        bang=float(rng.uniform(0.25, 0.6)),
        eye_dy=float(rng.uniform(-0.06, 0.0)),
        eye_dx=float(rng.uniform(0.09, 0.14)),
        eye_r=float(rng.uniform(0.025, 0.045)),
        iris=tuple(float(c) for c in rng.uniform(0.05, 0.6, size=3)),
        brow_tilt=float(rng.uniform(-0.25, 0.25)),
        brow_drop=float(rng.uniform(0.035, 0.06)),
        mouth_dy=float(rng.uniform(0.13, 0.2)),
        mouth_w=float(rng.uniform(0.07, 0.13)),
        smile=float(rng.uniform(-0.4, 1.0)),
        mouth_thick=float(rng.uniform(0.012, 0.022)),
    )


def augment_params(p: SpriteParams, rng: np.random.Generator) -> SpriteParams:
    """Pose/lighting jitter that preserves identity."""
    return replace(
        p,
        shift_x=float(rng.uniform(-0.03, 0.03)),
        shift_y=float(rng.uniform(-0.03, 0.03)),
        scale=float(rng.uniform(0.93, 1.07)),
        brightness=float(rng.uniform(-0.06, 0.06)),
    )


def _fill(img: np.ndarray, sdf_px: np.ndarray, color, aa: float = 1.0) -> None:
    alpha = np.clip(0.5 - sdf_px / aa, 0.0, 1.0)[..., None]
    img *= 1.0 - alpha
    img += alpha * np.asarray(color, dtype=np.float64)


def _ellipse(gx, gy, cx, cy, rx, ry):
    # approximate SDF, exact enough for 1px antialiasing
    q = np.hypot((gx - cx) / rx, (gy - cy) / ry)
    scale = min(rx, ry)
    return (q - 1.0) * scale


def _capsule_arc(gx, gy, x0, y0, x1, y1, bend, half_w, samples: int = 24):
    """Distance to a quadratic arc capsule minus half-width (all in px units)."""
    mx, my = 0.5 * (x0 + x1), 0.5 * (y0 + y1) + bend
    ts = np.linspace(0.0, 1.0, samples)
    omt = 1.0 - ts
    bx = omt * omt * x0 + 2 * omt * ts * mx + ts * ts * x1
    by = omt * omt * y0 + 2 * omt * ts * my + ts * ts * y1
    d = np.min(np.hypot(gx[..., None] - bx, gy[..., None] - by), axis=-1)
    return d - half_w


def render_sprite(p: SpriteParams, resolution: tuple[int, int] = (64, 64)) -> np.ndarray:
    h, w = resolution
    s = min(h, w)
    ys, xs = np.meshgrid(np.arange(h) + 0.5, np.arange(w) + 0.5, indexing="ij")
    # normalized coords with pose applied (inverse transform of the sprite)
    gx = ((xs / w) - 0.5 - p.shift_x) / p.scale + 0.5
    gy = ((ys / h) - 0.5 - p.shift_y) / p.scale + 0.5
    gx_px, gy_px = gx * s, gy * s

    top = np.asarray(p.bg_top, dtype=np.float64)
    bot = np.asarray(p.bg_bottom, dtype=np.float64)
    img = top[None, None, :] + (bot - top)[None, None, :] * (ys / h)[..., None]

    cx, cy = p.head_cx * s, p.head_cy * s
    rx, ry = p.head_rx * s, p.head_ry * s

    # hair behind the head
    hair_sdf = _ellipse(gx_px, gy_px, cx, cy - 0.25 * ry, rx * p.hair_size, ry * p.hair_size)
    _fill(img, hair_sdf, p.hair_color)
    # head
    _fill(img, _ellipse(gx_px, gy_px, cx, cy, rx, ry), p.skin)
    # bang: hair cap over the forehead
    bang_sdf = np.maximum(
        _ellipse(gx_px, gy_px, cx, cy - 0.15 * ry, rx * 1.02, ry * 1.02),
        (gy_px - (cy - ry * (1.0 - p.bang))),
    )
    _fill(img, bang_sdf, p.hair_color)

    ex, ey = p.eye_dx * s, (p.eye_dy + 0.02) * s
    eye_r = p.eye_r * s
    for side in (-1.0, 1.0):
        ecx, ecy = cx + side * ex, cy + ey - 0.05 * s
        _fill(img, _ellipse(gx_px, gy_px, ecx, ecy, eye_r * 1.35, eye_r), (0.97, 0.97, 0.97))
        _fill(img, _ellipse(gx_px, gy_px, ecx, ecy, eye_r * 0.62, eye_r * 0.62), p.iris)
        _fill(img, _ellipse(gx_px, gy_px, ecx, ecy, eye_r * 0.28, eye_r * 0.28), (0.05, 0.05, 0.05))
        # brow
        bx0, bx1 = ecx - eye_r * 1.3, ecx + eye_r * 1.3
        by0 = ecy - p.brow_drop * s - side * p.brow_tilt * eye_r
        by1 = ecy - p.brow_drop * s + side * p.brow_tilt * eye_r
        brow = _capsule_arc(gx_px, gy_px, bx0, by0, bx1, by1, 0.0, 0.2 * eye_r + 0.4, samples=8)
        _fill(img, brow, tuple(c * 0.5 for c in p.hair_color))

    # mouth: bend > 0 pulls the arc middle downward relative to corners = smile
    mx0, mx1 = cx - p.mouth_w * s, cx + p.mouth_w * s
    my = cy + p.mouth_dy * s
    bend = p.smile * 0.55 * p.mouth_w * s
    corner_lift = -0.5 * bend
    mouth = _capsule_arc(gx_px, gy_px, mx0, my + corner_lift, mx1, my + corner_lift,
                         bend, p.mouth_thick * s)
    _fill(img, mouth, (0.55, 0.15, 0.18))

    img = np.clip(img + p.brightness, 0.0, 1.0)
    return img.astype(np.float32)


def make_corpus(n: int, seed: int, resolution: tuple[int, int] = (64, 64)):
    """n sprites with their identity params; deterministic per seed."""
    rng = np.random.default_rng(seed)
    params = [sample_params(rng) for _ in range(n)]
    return [render_sprite(p, resolution) for p in params], params


def smile_pair(p: SpriteParams, low: float = -0.3, high: float = 1.0,
               resolution: tuple[int, int] = (64, 64)) -> tuple[np.ndarray, np.ndarray]:
    """Same identity rendered with neutral vs smiling mouth."""
    return (
        render_sprite(replace(p, smile=low), resolution),
        render_sprite(replace(p, smile=high), resolution),
    )
