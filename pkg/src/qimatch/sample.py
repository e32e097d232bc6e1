"""Built-in demonstration pair: a 4x4 grayscale patch and its 2x2 center.

The small image sits at upper-left corner (1, 1) of the big one, and its
top-left value 160 occurs exactly once in the big image, so the anchor-pixel
predicate and the full-block ground truth agree on a unique location.
"""

from __future__ import annotations

from .images import Image, load_pgm

SAMPLE_BIG_PGM = (
    b"P2\n4 4\n255\n"
    b"162 156 161 165\n"
    b"161 160 164 166\n"
    b"161 164 165 167\n"
    b"168 165 166 166\n"
)

SAMPLE_SMALL_PGM = b"P2\n2 2\n255\n160 164\n164 165\n"


def sample_pair() -> tuple[Image, Image]:
    """The (big, small) demonstration images."""
    return load_pgm(SAMPLE_BIG_PGM), load_pgm(SAMPLE_SMALL_PGM)
