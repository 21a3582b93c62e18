"""Bit-exact binary strings and the FNV-1a block stream behind synthetic workloads.

Every payload the shuffle engine touches (files, intermediate values, signals)
is a plain bit string. Lengths are not required to be byte multiples, so the
representation here is an integer plus an explicit bit count, with the first
bit of the string stored in the most significant position.
"""

from __future__ import annotations

from dataclasses import dataclass

FNV64_OFFSET = 14695981039346656037
FNV64_PRIME = 1099511628211

_MASK64 = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash of a byte string."""
    h = FNV64_OFFSET
    for byte in data:
        h = ((h ^ byte) * FNV64_PRIME) & _MASK64
    return h


def le64(value: int) -> bytes:
    """Encode an integer as 8 little-endian bytes (reduced modulo 2**64)."""
    return (value & _MASK64).to_bytes(8, "little")


@dataclass(frozen=True)
class Bits:
    """Immutable bit string of length ``nbits``; bit 0 is the most significant
    bit of ``value``."""

    value: int
    nbits: int

    def __post_init__(self):
        if self.nbits < 0:
            raise ValueError("negative bit length")
        if not 0 <= self.value < (1 << self.nbits):
            raise ValueError(f"value does not fit in {self.nbits} bits")

    def __len__(self) -> int:
        return self.nbits

    def __add__(self, other: "Bits") -> "Bits":
        """Concatenation: self's bits first."""
        return Bits((self.value << other.nbits) | other.value, self.nbits + other.nbits)

    def __xor__(self, other: "Bits") -> "Bits":
        if self.nbits != other.nbits:
            raise ValueError(f"xor of unequal lengths ({self.nbits} vs {other.nbits})")
        return Bits(self.value ^ other.value, self.nbits)

    def split(self, parts: int) -> list["Bits"]:
        """Cut into ``parts`` contiguous equal-length pieces, first piece first."""
        if parts <= 0 or self.nbits % parts != 0:
            raise ValueError(f"cannot split {self.nbits} bits into {parts} equal parts")
        size = self.nbits // parts
        mask = (1 << size) - 1
        return [
            Bits((self.value >> (self.nbits - (i + 1) * size)) & mask, size)
            for i in range(parts)
        ]

    def to_bytes(self) -> bytes:
        """Pack MSB-first; unused low bits of the final byte are zero."""
        pad = -self.nbits % 8
        return (self.value << pad).to_bytes((self.nbits + pad) // 8, "big")

    @staticmethod
    def concat(pieces) -> "Bits":
        value, nbits = 0, 0
        for piece in pieces:
            value = (value << piece.nbits) | piece.value
            nbits += piece.nbits
        return Bits(value, nbits)


def block_stream(header: bytes, payload: bytes, nbits: int) -> Bits:
    """First ``nbits`` of the stream b_0 || b_1 || ... where block j is the
    64-bit FNV-1a hash of header || LE64(j) || payload, appended MSB first.

    This single construction generates synthetic files (empty payload),
    map outputs (payload = file bytes) and reduce outputs (payload =
    concatenated intermediate values).
    """
    if nbits < 0:
        raise ValueError("negative bit length")
    nblocks = -(-nbits // 64)
    value = 0
    for j in range(nblocks):
        value = (value << 64) | fnv1a64(header + le64(j) + payload)
    return Bits(value >> (nblocks * 64 - nbits) if nblocks else 0, nbits)
