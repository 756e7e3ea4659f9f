"""Keccak-256 (the pre-NIST padding variant used by Ethereum).

Self-contained sponge over Keccak-f[1600]: rate 136 bytes, capacity 512
bits, multi-rate padding 0x01..0x80. Note this is NOT hashlib's sha3_256,
which pads with 0x06 and produces different digests.

The state is a flat list of 25 lanes indexed x + 5*y; the rho/pi step uses
a precomputed destination/rotation table.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_RATE = 136

_ROUND_CONSTANTS = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)

# rho rotation offsets for lane x + 5*y
_ROTATION = (
    0, 1, 62, 28, 27,
    36, 44, 6, 55, 20,
    3, 10, 43, 25, 39,
    41, 45, 15, 21, 8,
    18, 2, 61, 56, 14,
)

# pi: lane (x, y) moves to (y, 2x + 3y); destination index per source lane
_PI_DEST = tuple((i // 5 + 5 * ((2 * (i % 5) + 3 * (i // 5)) % 5)) for i in range(25))


def _permute(lanes: list[int]) -> list[int]:
    for rc in _ROUND_CONSTANTS:
        # theta
        c = [
            lanes[x] ^ lanes[x + 5] ^ lanes[x + 10] ^ lanes[x + 15] ^ lanes[x + 20]
            for x in range(5)
        ]
        for x in range(5):
            cx = c[(x + 1) % 5]
            d = c[(x - 1) % 5] ^ (((cx << 1) | (cx >> 63)) & _MASK)
            for y in range(0, 25, 5):
                lanes[x + y] ^= d
        # rho and pi
        moved = [0] * 25
        for i in range(25):
            r = _ROTATION[i]
            v = lanes[i]
            moved[_PI_DEST[i]] = ((v << r) | (v >> (64 - r))) & _MASK if r else v
        # chi
        for y in range(0, 25, 5):
            row = moved[y:y + 5]
            for x in range(5):
                lanes[x + y] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5] & _MASK)
        # iota
        lanes[0] ^= rc
    return lanes


def keccak256(data: bytes) -> bytes:
    pad_len = _RATE - (len(data) % _RATE)
    if pad_len == 1:
        padded = data + b"\x81"
    else:
        padded = data + b"\x01" + b"\x00" * (pad_len - 2) + b"\x80"

    lanes = [0] * 25
    for offset in range(0, len(padded), _RATE):
        block = padded[offset:offset + _RATE]
        for i in range(17):  # 136 / 8 lanes per block
            lanes[i] ^= int.from_bytes(block[8 * i:8 * i + 8], "little")
        lanes = _permute(lanes)

    return b"".join(lanes[i].to_bytes(8, "little") for i in range(4))


def keccak256_hex(data: bytes) -> str:
    return "0x" + keccak256(data).hex()
