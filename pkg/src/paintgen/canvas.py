"""Canvas representation and image conversion helpers.

A canvas is a float32 numpy array of shape (H, W, 3) with values in [0, 1].
User paintings, agent frames and model outputs all share this format; the
neural modules convert to channel-first torch tensors at their boundaries.
"""

from __future__ import annotations

import io

import numpy as np
import torch
from PIL import Image

WHITE = 1.0


def blank_canvas(resolution: tuple[int, int], value: float = WHITE) -> np.ndarray:
    """Uniform canvas of shape (H, W, 3). Default background is white."""
    h, w = resolution
    return np.full((h, w, 3), value, dtype=np.float32)


def is_valid_canvas(canvas: np.ndarray) -> bool:
    return (
        isinstance(canvas, np.ndarray)
        and canvas.ndim == 3
        and canvas.shape[2] == 3
        and np.isfinite(canvas).all()
        and canvas.min() >= 0.0
        and canvas.max() <= 1.0
    )


def check_canvas(canvas: np.ndarray, resolution: tuple[int, int] | None = None) -> None:
    if not isinstance(canvas, np.ndarray) or canvas.ndim != 3 or canvas.shape[2] != 3:
        raise ValueError(f"canvas must be an (H, W, 3) array, got {getattr(canvas, 'shape', type(canvas))}")
    if resolution is not None and canvas.shape[:2] != tuple(resolution):
        raise ValueError(f"canvas resolution {canvas.shape[:2]} does not match expected {tuple(resolution)}")
    if not np.isfinite(canvas).all():
        raise ValueError("canvas contains non-finite values")


def to_tensor(canvas: np.ndarray, dtype: torch.dtype = torch.float32) -> torch.Tensor:
    """(H, W, 3) [0,1] numpy -> (1, 3, H, W) torch."""
    t = torch.from_numpy(np.ascontiguousarray(canvas.transpose(2, 0, 1)))
    return t.unsqueeze(0).to(dtype)


def to_canvas(tensor: torch.Tensor) -> np.ndarray:
    """(3, H, W) or (1, 3, H, W) torch -> (H, W, 3) float32 numpy, clipped to [0,1]."""
    if tensor.ndim == 4:
        if tensor.shape[0] != 1:
            raise ValueError(f"expected a single image, got batch of {tensor.shape[0]}")
        tensor = tensor[0]
    arr = tensor.detach().cpu().numpy().transpose(1, 2, 0).astype(np.float32)
    return np.clip(arr, 0.0, 1.0)


def stack_canvases(canvases: list[np.ndarray], dtype: torch.dtype = torch.float32) -> torch.Tensor:
    """List of (H, W, 3) canvases -> (B, 3, H, W) tensor."""
    arr = np.stack([c.transpose(2, 0, 1) for c in canvases])
    return torch.from_numpy(np.ascontiguousarray(arr)).to(dtype)


def quantize(canvas: np.ndarray) -> np.ndarray:
    """Round-trip through 8-bit, as PNG storage does."""
    return (np.clip(np.rint(canvas * 255.0), 0, 255) / 255.0).astype(np.float32)


def to_png_bytes(canvas: np.ndarray) -> bytes:
    u8 = np.clip(np.rint(canvas * 255.0), 0, 255).astype(np.uint8)
    img = Image.fromarray(u8, mode="RGB")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def from_png_bytes(data: bytes) -> np.ndarray:
    img = Image.open(io.BytesIO(data)).convert("RGB")
    return (np.asarray(img, dtype=np.float32) / 255.0).astype(np.float32)


def save_png(canvas: np.ndarray, path) -> None:
    with open(path, "wb") as f:
        f.write(to_png_bytes(canvas))


def load_png(path) -> np.ndarray:
    with open(path, "rb") as f:
        return from_png_bytes(f.read())
