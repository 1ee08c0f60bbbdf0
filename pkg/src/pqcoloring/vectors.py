"""Binary vectors, prefix projections, and block decompositions.

Every coloring in this package reads its two endpoint vectors through
*blocks*: contiguous coordinate segments whose lengths come from a chain of
resolutions r_0 | r_1 | ... | r_{p+1} with r_0 = 1.  A vector of length
alpha splits at resolution d into a_d blocks of length r_d followed by one
tail block of length b_d, where alpha = a_d * r_d + b_d and 1 <= b_d <= r_d.
(When r_d divides alpha the tail is a full-length block, so the tail always
starts at the largest multiple of r_d strictly below alpha.)

Coordinates are 1-based and coordinate 1 is the leftmost character of the
textual form, which is a plain '0'/'1' string.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def check_bits(bits: str) -> str:
    """Validate a '0'/'1' string and return it unchanged."""
    if not isinstance(bits, str):
        raise TypeError(f"expected a bit string, got {type(bits).__name__}")
    if not bits:
        raise ValueError("bit vector must have length >= 1")
    if bits.strip("01"):
        raise ValueError(f"bit vector may contain only '0'/'1': {bits!r}")
    return bits


def as_bits(v: "BitVector | str") -> str:
    """Coerce a BitVector or raw bit string to a validated string."""
    if isinstance(v, BitVector):
        return v.bits
    return check_bits(v)


@dataclass(frozen=True, order=True)
class BitVector:
    """A vector in {0,1}^alpha.  Ordering and equality are lexicographic."""

    bits: str

    def __post_init__(self) -> None:
        check_bits(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits

    def __getitem__(self, coordinate: int) -> str:
        """1-based coordinate access."""
        if not 1 <= coordinate <= len(self.bits):
            raise IndexError(f"coordinate {coordinate} out of range 1..{len(self.bits)}")
        return self.bits[coordinate - 1]


@dataclass(frozen=True)
class ResolutionChain:
    """The block-length chain r_0..r_{p+1}: r_0 = 1, each entry divides the next.

    The chain length fixes the nesting depth p >= 1 of the coloring built on
    it: entry d is the block length used at resolution d.
    """

    resolutions: tuple[int, ...]

    def __post_init__(self) -> None:
        rs = self.resolutions
        if not isinstance(rs, tuple):
            raise TypeError("resolutions must be a tuple of ints")
        if len(rs) < 3:
            raise ValueError("chain needs at least r_0, r_1, r_2 (depth p >= 1)")
        if any(not isinstance(r, int) or r < 1 for r in rs):
            raise ValueError(f"resolutions must be positive integers: {rs}")
        if rs[0] != 1:
            raise ValueError(f"chain must start at r_0 = 1, got {rs[0]}")
        for lo, hi in zip(rs, rs[1:]):
            if hi % lo:
                raise ValueError(f"each resolution must divide the next: {lo} does not divide {hi}")

    @classmethod
    def parse(cls, text: str) -> "ResolutionChain":
        """Parse the comma syntax, e.g. '1,2,4,8'."""
        try:
            rs = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"chain entries must be integers: {text!r}") from None
        return cls(rs)

    @classmethod
    def geometric(cls, p: int, beta: int) -> "ResolutionChain":
        """The chain r_d = beta**d for d = 0..p+1."""
        if p < 1:
            raise ValueError(f"depth p must be >= 1, got {p}")
        if beta < 1:
            raise ValueError(f"beta must be >= 1, got {beta}")
        return cls(tuple(beta**d for d in range(p + 2)))

    @property
    def p(self) -> int:
        """Nesting depth: the chain lists r_0..r_{p+1}."""
        return len(self.resolutions) - 2

    def __getitem__(self, d: int) -> int:
        if not 0 <= d <= self.p + 1:
            raise IndexError(f"resolution index {d} out of range 0..{self.p + 1}")
        return self.resolutions[d]

    def prefix(self, p: int) -> "ResolutionChain":
        """The sub-chain r_0..r_{p+1} driving the depth-p coloring, 1 <= p <= self.p."""
        if not 1 <= p <= self.p:
            raise ValueError(f"prefix depth must lie in 1..{self.p}, got {p}")
        return ResolutionChain(self.resolutions[: p + 2])

    def __str__(self) -> str:
        return ",".join(str(r) for r in self.resolutions)


@dataclass(frozen=True)
class BlockDecomposition:
    """A vector split into blocks at one resolution.

    ``full_blocks`` is the count a_d of leading blocks of exactly the
    resolution length; ``tail_length`` is the length b_d of the final block,
    with 1 <= b_d <= r_d.
    """

    resolution: int
    blocks: tuple[BitVector, ...]
    full_blocks: int
    tail_length: int

    def __str__(self) -> str:
        return "|".join(b.bits for b in self.blocks)


def block_bounds(alpha: int, r: int) -> list[tuple[int, int]]:
    """0-based [start, end) bounds of the resolution-r blocks of a length-alpha vector."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if r < 1:
        raise ValueError("resolution must be >= 1")
    count = (alpha - 1) // r + 1
    return [(k * r, min((k + 1) * r, alpha)) for k in range(count)]


def decompose(v: "BitVector | str", d: int, chain: ResolutionChain) -> BlockDecomposition:
    """Split ``v`` into its resolution-d blocks under ``chain``."""
    bits = as_bits(v)
    r = chain[d]
    bounds = block_bounds(len(bits), r)
    blocks = tuple(BitVector(bits[s:e]) for s, e in bounds)
    tail = bounds[-1][1] - bounds[-1][0]
    return BlockDecomposition(resolution=r, blocks=blocks, full_blocks=len(bounds) - 1, tail_length=tail)


def project(v: "BitVector | str", idx: "int | Iterable[int]") -> BitVector:
    """Restrict ``v`` to a prefix length or to a set of 1-based coordinates.

    An int selects the prefix of that length; an iterable selects the given
    coordinates in increasing order (duplicates collapse).
    """
    bits = as_bits(v)
    if isinstance(idx, int):
        if not 1 <= idx <= len(bits):
            raise ValueError(f"prefix length {idx} out of range 1..{len(bits)}")
        return BitVector(bits[:idx])
    coords = sorted(set(idx))
    if not coords:
        raise ValueError("projection needs at least one coordinate")
    if coords[0] < 1 or coords[-1] > len(bits):
        raise ValueError(f"coordinates {coords} out of range 1..{len(bits)}")
    return BitVector("".join(bits[i - 1] for i in coords))


def binary_universe(alpha: int) -> list[str]:
    """All of {0,1}^alpha as bit strings in lexicographic (numeric) order."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    return [format(i, f"0{alpha}b") for i in range(2**alpha)]
