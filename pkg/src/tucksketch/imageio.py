"""Binary PPM (P6) and PGM (P5) image I/O with maxval 255.

Images are tensors of shape (height, width, channels) with float entries in
[0, 255]; channels is 1 for grayscale and 3 for color. The file payload is
row-major with interleaved channels, as the formats define.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ImageFormatError", "load_image_tensor", "save_image_tensor"]


class ImageFormatError(ValueError):
    """Raised for malformed or unsupported image files."""


def _read_header_tokens(blob: bytes, count: int) -> tuple[list[bytes], int]:
    """First `count` whitespace-separated header tokens, skipping # comments."""
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < count:
        if pos >= len(blob):
            raise ImageFormatError("truncated header")
        c = blob[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            end = blob.find(b"\n", pos)
            if end == -1:
                raise ImageFormatError("truncated header")
            pos = end + 1
        else:
            end = pos
            while end < len(blob) and not blob[end : end + 1].isspace():
                end += 1
            tokens.append(blob[pos:end])
            pos = end
    # exactly one whitespace byte separates the header from the payload
    if pos >= len(blob):
        raise ImageFormatError("truncated header")
    return tokens, pos + 1


def load_image_tensor(path) -> np.ndarray:
    """Read a P5/P6 file into an (H, W, C) float64 tensor with values 0-255."""
    with open(path, "rb") as f:
        blob = f.read()
    tokens, payload_start = _read_header_tokens(blob, 4)
    magic, width_s, height_s, maxval_s = tokens
    if magic not in (b"P5", b"P6"):
        raise ImageFormatError(f"unsupported magic {magic!r}; expected P5 or P6")
    try:
        width, height, maxval = int(width_s), int(height_s), int(maxval_s)
    except ValueError as exc:
        raise ImageFormatError("non-numeric header field") from exc
    if width < 1 or height < 1:
        raise ImageFormatError("image dimensions must be positive")
    if maxval != 255:
        raise ImageFormatError(f"unsupported maxval {maxval}; expected 255")
    channels = 3 if magic == b"P6" else 1
    expected = width * height * channels
    payload = blob[payload_start:]
    if len(payload) < expected:
        raise ImageFormatError(
            f"truncated payload: expected {expected} bytes, found {len(payload)}"
        )
    pixels = np.frombuffer(payload, dtype=np.uint8, count=expected)
    return pixels.reshape((height, width, channels)).astype(np.float64)


def save_image_tensor(x: np.ndarray, path) -> None:
    """Write an (H, W, C) tensor as P5/P6, clamping to [0, 255] and rounding."""
    x = np.asarray(x)
    if x.ndim != 3 or x.shape[2] not in (1, 3):
        raise ValueError(f"expected an (H, W, 1|3) tensor, got shape {x.shape}")
    height, width, channels = x.shape
    magic = b"P6" if channels == 3 else b"P5"
    payload = np.clip(np.rint(x), 0, 255).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(magic + b"\n%d %d\n255\n" % (width, height))
        f.write(payload.tobytes())
