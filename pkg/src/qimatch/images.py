"""Grayscale image loading, pair validation, and position-register encoding.

Images are square with power-of-two side lengths.  A matching instance is a
pair (big, small) with sides 2**n and 2**m, n > m >= 0, sharing a common bit
depth.  The encoder flattens an image into the uniform-superposition form used
by the simulator: one (position, intensity) entry per pixel, every entry
carrying the implicit amplitude 1/2**n.

Position convention: k = y * side + x with y the row counted from the top,
i.e. plain row-major order.  A column-major reading would permute k but leaves
every probability unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class PgmError(ValueError):
    """Malformed PGM stream (bad header, bad maxval, truncated raster)."""


class ValidationError(ValueError):
    """Image pair violates the matcher's size contract."""


@dataclass(frozen=True)
class Image:
    """A grayscale raster.

    ``pixels`` is row-major, top-left first.  ``bit_depth`` is the number of
    bits per pixel implied by the source maxval; every value satisfies
    0 <= v < 2**bit_depth.  Squareness and power-of-two sides are *not*
    enforced here; :func:`validate_pair` owns those checks so that a parseable
    but unusable file is reported as a validation error, not a parse error.
    """

    width: int
    height: int
    bit_depth: int
    pixels: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.pixels) != self.width * self.height:
            raise ValueError("pixel count does not match dimensions")

    def pixel(self, x: int, y: int) -> int:
        return self.pixels[y * self.width + x]


@dataclass(frozen=True)
class MatchDims:
    """Validated dimensions of a matching instance.

    ``n`` and ``m`` are the log2 side lengths of the big and small image,
    ``bit_depth`` the common bit depth, ``side`` = 2**n.
    """

    n: int
    m: int
    bit_depth: int
    side: int


@dataclass(frozen=True)
class GqirImage:
    """Classical stand-in for the uniform intensity-position superposition.

    ``values[k]`` is the intensity at position index k.  Every entry carries
    the same implicit amplitude 1/2**side_log2, so the squared amplitudes sum
    to one.
    """

    side_log2: int
    bit_depth: int
    values: tuple[int, ...]

    @property
    def side(self) -> int:
        return 1 << self.side_log2

    @property
    def amplitude(self) -> float:
        return 1.0 / (1 << self.side_log2)

    def entries(self) -> Iterator[tuple[int, int]]:
        return iter(enumerate(self.values))


def _is_power_of_two(v: int) -> bool:
    return v > 0 and (v & (v - 1)) == 0


def _header_tokens(data: bytes) -> Iterator[tuple[bytes, int]]:
    """Yield (token, end_offset) pairs, skipping whitespace and '#' comments."""
    i, size = 0, len(data)
    while i < size:
        c = data[i : i + 1]
        if c.isspace():
            i += 1
        elif c == b"#":
            nl = data.find(b"\n", i)
            i = size if nl < 0 else nl + 1
        else:
            j = i
            while j < size and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            yield data[i:j], j
            i = j


def load_pgm(data: bytes) -> Image:
    """Parse a PGM stream (P2 ASCII or P5 binary) into an :class:`Image`.

    The header is whitespace-delimited (magic, width, height, maxval) and may
    contain '#' comment lines.  P5 rasters use one byte per pixel, or two
    big-endian bytes when maxval > 255.  The derived bit depth is the smallest
    q with maxval <= 2**q - 1.

    Raises :class:`PgmError` for malformed input.  Geometry (squareness,
    power-of-two sides) is deliberately not checked here.
    """
    tokens = _header_tokens(data)
    try:
        magic, _ = next(tokens)
    except StopIteration:
        raise PgmError("empty stream") from None
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"unsupported magic {magic!r}, expected P2 or P5")

    header: list[int] = []
    raster_start = 0
    for token, end in tokens:
        try:
            header.append(int(token))
        except ValueError:
            raise PgmError(f"non-numeric header token {token!r}") from None
        if len(header) == 3:
            raster_start = end
            break
    if len(header) < 3:
        raise PgmError("truncated header")
    width, height, maxval = header
    if width <= 0 or height <= 0:
        raise PgmError(f"bad dimensions {width}x{height}")
    if not 1 <= maxval <= 65535:
        raise PgmError(f"maxval {maxval} outside [1, 65535]")
    count = width * height

    if magic == b"P2":
        values = []
        for token, _ in _header_tokens(data[raster_start:]):
            try:
                values.append(int(token))
            except ValueError:
                raise PgmError(f"non-numeric pixel token {token!r}") from None
        if len(values) != count:
            raise PgmError(f"expected {count} pixels, found {len(values)}")
    else:
        # Exactly one whitespace byte separates maxval from the raster.
        if raster_start >= len(data) or not data[raster_start : raster_start + 1].isspace():
            raise PgmError("missing raster separator")
        raster = data[raster_start + 1 :]
        stride = 2 if maxval > 255 else 1
        if len(raster) < count * stride:
            raise PgmError(f"raster too short: {len(raster)} bytes for {count} pixels")
        if stride == 1:
            values = list(raster[:count])
        else:
            values = [
                (raster[2 * i] << 8) | raster[2 * i + 1] for i in range(count)
            ]

    bad = [v for v in values if v < 0 or v > maxval]
    if bad:
        raise PgmError(f"pixel value {bad[0]} outside [0, {maxval}]")
    return Image(width, height, maxval.bit_length(), tuple(values))


def write_pgm(img: Image, binary: bool = True) -> bytes:
    """Serialize an :class:`Image` back to PGM (P5 by default, P2 otherwise)."""
    maxval = (1 << img.bit_depth) - 1
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n{maxval}\n"
    if not binary:
        rows = []
        for y in range(img.height):
            row = img.pixels[y * img.width : (y + 1) * img.width]
            rows.append(" ".join(str(v) for v in row))
        return header.encode() + ("\n".join(rows) + "\n").encode()
    if maxval > 255:
        raster = b"".join(v.to_bytes(2, "big") for v in img.pixels)
    else:
        raster = bytes(img.pixels)
    return header.encode() + raster


def validate_pair(big: Image, small: Image) -> MatchDims:
    """Check a (big, small) pair and derive the instance dimensions.

    Both images must be square with power-of-two sides and the big side must
    strictly exceed the small side.  Bit depths may differ; the pair is
    compared at the wider depth (zero extension changes no pixel value).
    """
    for name, img in (("big", big), ("small", small)):
        if img.width != img.height:
            raise ValidationError(f"{name} image is {img.width}x{img.height}, not square")
        if not _is_power_of_two(img.width):
            raise ValidationError(f"{name} image side {img.width} is not a power of two")
    n = big.width.bit_length() - 1
    m = small.width.bit_length() - 1
    if n <= m:
        raise ValidationError(
            f"big side 2^{n} must exceed small side 2^{m}"
        )
    return MatchDims(n=n, m=m, bit_depth=max(big.bit_depth, small.bit_depth), side=big.width)


def encode_gqir(img: Image, dims: MatchDims) -> GqirImage:
    """Encode a validated image into its uniform-superposition table.

    ``img`` must be the big or the small member of the pair described by
    ``dims``; the entry at position index k holds pixel (x, y) with
    k = y * side + x.
    """
    side_log2 = img.width.bit_length() - 1
    if img.width != img.height or side_log2 not in (dims.n, dims.m):
        raise ValidationError(
            f"image {img.width}x{img.height} matches neither side of the validated pair"
        )
    # Row-major pixels already obey the k = y*side + x convention.
    return GqirImage(side_log2=side_log2, bit_depth=dims.bit_depth, values=img.pixels)
