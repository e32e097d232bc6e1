"""Loading PGM images and encoding them as uniform superposition tables.

Walks through the input layer: parsing P2/P5 streams, validating a (big,
small) pair, and flattening each image into its position-indexed table.
"""

from qimatch import encode_gqir, load_pgm, validate_pair, write_pgm
from qimatch.sample import SAMPLE_BIG_PGM, SAMPLE_SMALL_PGM

big = load_pgm(SAMPLE_BIG_PGM)
small = load_pgm(SAMPLE_SMALL_PGM)

print("parsed big image :", big.width, "x", big.height, "bit depth", big.bit_depth)
print("parsed small image:", small.width, "x", small.height, "bit depth", small.bit_depth)
print()

print("big image pixels (row-major):")
for y in range(big.height):
    row = big.pixels[y * big.width : (y + 1) * big.width]
    print("   ", " ".join(f"{v:3d}" for v in row))
print("small image pixels:")
for y in range(small.height):
    row = small.pixels[y * small.width : (y + 1) * small.width]
    print("   ", " ".join(f"{v:3d}" for v in row))
print()

dims = validate_pair(big, small)
print(f"validated pair: n={dims.n}, m={dims.m}, side={dims.side}, "
      f"bit depth {dims.bit_depth}")
print()

encoded = encode_gqir(big, dims)
print(f"encoded big image: {len(encoded.values)} entries, each with amplitude "
      f"{encoded.amplitude}")
print("first entries (position k -> intensity), position k = y*side + x:")
for k, value in list(encoded.entries())[:6]:
    x, y = k % dims.side, k // dims.side
    print(f"    k={k:2d} (x={x}, y={y}) -> {value}")
print()

# the binary and ASCII serializations parse back to the same image
assert load_pgm(write_pgm(big, binary=True)) == big
assert load_pgm(write_pgm(big, binary=False)) == big
print("write/read round trip holds for both P5 and P2 serializations")
