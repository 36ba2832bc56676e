"""Optional image cleanup used during corpus building (off by default)."""

from __future__ import annotations

import io

from PIL import Image


def crop_uniform_border(image_bytes: bytes, tolerance: int = 8) -> bytes:
    """Trim uniform-color borders (social-media sidebars, letterboxing).

    Compares against the top-left pixel with a per-channel tolerance and
    crops to the bounding box of differing content. Returns the original
    bytes when nothing (or everything) would be cropped.
    """
    with Image.open(io.BytesIO(image_bytes)) as img:
        rgb = img.convert("RGB")
        width, height = rgb.size
        base = rgb.getpixel((0, 0))
        pixels = rgb.load()

        def differs(x, y):
            p = pixels[x, y]
            return any(abs(p[c] - base[c]) > tolerance for c in range(3))

        left, right, top, bottom = width, -1, height, -1
        for y in range(height):
            for x in range(width):
                if differs(x, y):
                    left = min(left, x)
                    right = max(right, x)
                    top = min(top, y)
                    bottom = max(bottom, y)
        if right < 0 or (left == 0 and top == 0 and right == width - 1 and bottom == height - 1):
            return image_bytes
        cropped = rgb.crop((left, top, right + 1, bottom + 1))
        out = io.BytesIO()
        cropped.save(out, format="PNG")
        return out.getvalue()
