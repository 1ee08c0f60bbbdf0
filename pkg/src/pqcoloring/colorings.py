"""Edge colorings of complete graphs built from block differences.

The central construction colors the edge {v, w} of the complete graph on
{0,1}^alpha by a stack of *difference profiles*, one per resolution level of
a chain r_0 | r_1 | ... | r_{p+1}:

* ``block_diff(d, v, w)`` records the position of the first resolution-d
  block where v and w differ, together with the unordered pair of the two
  block values.  Equal inputs give the distinguished ``ZERO`` atom.
* ``diff_profile(d, v, w)`` cuts v and w into resolution-(d+1) blocks and
  applies ``block_diff`` at resolution d to every block pair.
* ``color(v, w)`` is the tuple of profiles for d = p down to d = 0.

Two variants share the machinery: ``unindexed_diff``/``unindexed_color``
drop the block index and keep only the value pair, and ``mubayi_color``
is the classical one-level coloring on [m]^t that the recursion boot-straps
from (first differing coordinate value pair plus the 0/1 pattern of all
differing coordinates).

``split_color`` re-expresses a color as (color of the longest proper prefix
cut at a multiple of r_d, block_diff of the remaining tail at resolution
d-1); the full color always refines this split form.

Every value is canonical and hashable: unordered pairs store the
lexicographically smaller element first.  ``encode``/``decode`` give the
bit-exact wire format used by tables, censuses, and reports:

    eta     ::= "Z" | "(" index ":" bits "," bits ")"
    pair    ::= "Z" | "(" bits "," bits ")"
    profile ::= "[" entry (";" entry)* "]"
    color   ::= "{" profile ("|" profile)* "}"
    mubayi  ::= "0" | "({" x "," y "}:" index ":" bits ")"
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .vectors import BitVector, ResolutionChain, as_bits, block_bounds


class _ZeroType:
    """Shared 'inputs were equal' outcome for block diffs; a singleton atom."""

    __slots__ = ()
    _instance: "_ZeroType | None" = None

    def __new__(cls) -> "_ZeroType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Zero"

    def __reduce__(self):
        return (_ZeroType, ())


ZERO = _ZeroType()


def _check_block_pair(blocks: tuple[str, str]) -> None:
    a, b = blocks
    if not a or a.strip("01") or not b or b.strip("01"):
        raise ValueError(f"pair entries must be nonempty bit strings: {blocks!r}")
    if len(a) != len(b):
        raise ValueError(f"pair entries must have equal length: {blocks!r}")
    if not a < b:
        raise ValueError(f"pair must be two distinct blocks, smaller first: {blocks!r}")


@dataclass(frozen=True)
class BlockDiff:
    """First differing block between two vectors: 1-based index plus the block pair."""

    index: int
    blocks: tuple[str, str]

    def __post_init__(self) -> None:
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"block index must be a positive integer: {self.index!r}")
        a, b = self.blocks
        if b < a:
            object.__setattr__(self, "blocks", (b, a))
        _check_block_pair(self.blocks)


@dataclass(frozen=True)
class BlockPair:
    """An unordered pair of differing blocks with the position forgotten."""

    blocks: tuple[str, str]

    def __post_init__(self) -> None:
        a, b = self.blocks
        if b < a:
            object.__setattr__(self, "blocks", (b, a))
        _check_block_pair(self.blocks)


DiffEntry = "BlockDiff | BlockPair | _ZeroType"


def _entry_kind(entries: Iterable[object], where: str) -> type | None:
    """Check entries are diff values of one kind; return that kind (None if all zero)."""
    kind: type | None = None
    for e in entries:
        if e is ZERO:
            continue
        if not isinstance(e, (BlockDiff, BlockPair)):
            raise ValueError(f"{where} entries must be BlockDiff, BlockPair, or ZERO: {e!r}")
        if kind is None:
            kind = type(e)
        elif type(e) is not kind:
            raise ValueError(f"{where} mixes indexed and unindexed entries")
    return kind


@dataclass(frozen=True)
class DiffProfile:
    """Per-block diffs of one resolution level, in block order."""

    entries: tuple

    def __post_init__(self) -> None:
        if not isinstance(self.entries, tuple) or not self.entries:
            raise ValueError("profile needs a nonempty tuple of entries")
        _entry_kind(self.entries, "profile")

    def is_zero(self) -> bool:
        return all(e is ZERO for e in self.entries)


@dataclass(frozen=True)
class Color:
    """A full edge color: difference profiles for d = p down to d = 0."""

    levels: tuple[DiffProfile, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.levels, tuple) or not self.levels:
            raise ValueError("color needs a nonempty tuple of profiles")
        if any(not isinstance(lv, DiffProfile) for lv in self.levels):
            raise ValueError("color levels must be DiffProfile values")
        _entry_kind((e for lv in self.levels for e in lv.entries), "color")

    def is_zero(self) -> bool:
        return all(lv.is_zero() for lv in self.levels)


@dataclass(frozen=True)
class MubayiColor:
    """One-level coloring value on [m]^t: value pair at the first differing
    coordinate, that coordinate's index, and the 0/1 pattern of all
    differing coordinates.  All fields are None for the zero (equal inputs)."""

    pair: tuple[int, int] | None
    index: int | None
    diff: str | None

    def __post_init__(self) -> None:
        fields = (self.pair, self.index, self.diff)
        if all(f is None for f in fields):
            return
        if any(f is None for f in fields):
            raise ValueError("mubayi color must be all-zero or fully populated")
        x, y = self.pair
        if y < x:
            object.__setattr__(self, "pair", (y, x))
            x, y = self.pair
        if not (isinstance(x, int) and isinstance(y, int) and 1 <= x < y):
            raise ValueError(f"pair must be two distinct positive symbols: {self.pair!r}")
        d = self.diff
        if not d or d.strip("01") or "1" not in d:
            raise ValueError(f"difference pattern must be a nonzero bit string: {d!r}")
        if self.index != d.index("1") + 1:
            raise ValueError(f"index {self.index} must point at the first 1 of {d!r}")

    def is_zero(self) -> bool:
        return self.pair is None


MUBAYI_ZERO = MubayiColor(None, None, None)


@dataclass(frozen=True, order=True)
class SymbolVector:
    """A vector in [m]^t with symbols 1..m; ``base`` is m."""

    symbols: tuple[int, ...]
    base: int

    def __post_init__(self) -> None:
        if not isinstance(self.symbols, tuple) or not self.symbols:
            raise ValueError("symbol vector needs at least one coordinate")
        if self.base < 2:
            raise ValueError(f"symbol base must be >= 2, got {self.base}")
        for s in self.symbols:
            if not isinstance(s, int) or not 1 <= s <= self.base:
                raise ValueError(f"symbols must lie in 1..{self.base}: {self.symbols}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return ",".join(str(s) for s in self.symbols)

    @classmethod
    def parse(cls, text: str, base: int) -> "SymbolVector":
        try:
            symbols = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"symbol vector entries must be integers: {text!r}") from None
        return cls(symbols, base)


def grid_universe(m: int, t: int) -> list[SymbolVector]:
    """All of [m]^t in lexicographic order."""
    if m < 2 or t < 1:
        raise ValueError(f"grid needs m >= 2 and t >= 1, got m={m}, t={t}")
    out: list[SymbolVector] = []
    stack = [()]
    for _ in range(t):
        stack = [prefix + (s,) for prefix in stack for s in range(1, m + 1)]
    return [SymbolVector(sym, m) for sym in stack]


# --- raw string kernels (hot paths work on validated bit strings) ---


def _first_diff(a: str, b: str) -> int:
    """0-based position of the first differing coordinate; -1 if equal."""
    if a == b:
        return -1
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    raise AssertionError("unreachable: unequal strings with no differing position")


def _block_diff_raw(r: int, a: str, b: str):
    pos = _first_diff(a, b)
    if pos < 0:
        return ZERO
    k = pos // r
    start = k * r
    end = min(start + r, len(a))
    x, y = a[start:end], b[start:end]
    return BlockDiff(k + 1, (x, y) if x < y else (y, x))


def _unindexed_raw(r: int, a: str, b: str):
    pos = _first_diff(a, b)
    if pos < 0:
        return ZERO
    k = pos // r
    start = k * r
    end = min(start + r, len(a))
    x, y = a[start:end], b[start:end]
    return BlockPair((x, y) if x < y else (y, x))


def _profile_raw(r_lo: int, r_hi: int, a: str, b: str, unindexed: bool) -> DiffProfile:
    kernel = _unindexed_raw if unindexed else _block_diff_raw
    entries = tuple(
        kernel(r_lo, a[s:e], b[s:e]) for s, e in block_bounds(len(a), r_hi)
    )
    return DiffProfile(entries)


def _color_raw(resolutions: tuple[int, ...], a: str, b: str, unindexed: bool = False) -> Color:
    p = len(resolutions) - 2
    return Color(
        tuple(
            _profile_raw(resolutions[d], resolutions[d + 1], a, b, unindexed)
            for d in range(p, -1, -1)
        )
    )


def _pair_bits(v, w) -> tuple[str, str]:
    a, b = as_bits(v), as_bits(w)
    if len(a) != len(b):
        raise ValueError(f"vectors must share a length: {len(a)} vs {len(b)}")
    return a, b


# --- public coloring operations ---


def block_diff(d: int, v, w, chain: ResolutionChain):
    """First differing resolution-d block of v and w, or ZERO: 0 <= d <= p+1."""
    a, b = _pair_bits(v, w)
    return _block_diff_raw(chain[d], a, b)


def diff_profile(d: int, v, w, chain: ResolutionChain) -> DiffProfile:
    """Resolution-d diffs of each resolution-(d+1) block pair: 0 <= d <= p."""
    if not 0 <= d <= chain.p:
        raise ValueError(f"profile level must lie in 0..{chain.p}, got {d}")
    a, b = _pair_bits(v, w)
    return _profile_raw(chain[d], chain[d + 1], a, b, unindexed=False)


def color(v, w, chain: ResolutionChain) -> Color:
    """The full edge color: profiles for d = p down to 0."""
    a, b = _pair_bits(v, w)
    return _color_raw(chain.resolutions, a, b)


def unindexed_diff(d: int, v, w, chain: ResolutionChain):
    """The block pair of the first differing resolution-d block, index dropped."""
    a, b = _pair_bits(v, w)
    return _unindexed_raw(chain[d], a, b)


def unindexed_color(v, w, chain: ResolutionChain) -> Color:
    """The color variant built from unindexed diffs at every level."""
    a, b = _pair_bits(v, w)
    return _color_raw(chain.resolutions, a, b, unindexed=True)


def mubayi_color(v: SymbolVector, w: SymbolVector) -> MubayiColor:
    """The one-level coloring on [m]^t."""
    if not isinstance(v, SymbolVector) or not isinstance(w, SymbolVector):
        raise TypeError("mubayi_color expects SymbolVector endpoints")
    if v.base != w.base or len(v) != len(w):
        raise ValueError("endpoints must come from the same [m]^t")
    if v.symbols == w.symbols:
        return MUBAYI_ZERO
    diff = "".join("1" if x != y else "0" for x, y in zip(v.symbols, w.symbols))
    i = diff.index("1") + 1
    x, y = v.symbols[i - 1], w.symbols[i - 1]
    return MubayiColor((min(x, y), max(x, y)), i, diff)


def split_color(d: int, v, w, chain: ResolutionChain):
    """Re-expression of the color at the last resolution-d boundary.

    Cuts at the largest multiple of r_d strictly below alpha (so 1 <= d <= p+1
    and alpha > r_d) and returns (color of the prefixes, resolution-(d-1)
    block diff of the tails).
    """
    if not 1 <= d <= chain.p + 1:
        raise ValueError(f"split level must lie in 1..{chain.p + 1}, got {d}")
    a, b = _pair_bits(v, w)
    alpha = len(a)
    r = chain[d]
    if alpha <= r:
        raise ValueError(f"split needs alpha > r_d: alpha={alpha}, r_{d}={r}")
    cut = ((alpha - 1) // r) * r
    prefix_color = _color_raw(chain.resolutions, a[:cut], b[:cut])
    tail_diff = _block_diff_raw(chain[d - 1], a[cut:], b[cut:])
    return prefix_color, tail_diff


# --- wire format ---


class DecodeError(ValueError):
    """Malformed encoding; ``position`` is the 0-based offset of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def encode(value) -> str:
    """Canonical text encoding; equal values have equal encodings."""
    if value is ZERO:
        return "Z"
    if isinstance(value, BlockDiff):
        return f"({value.index}:{value.blocks[0]},{value.blocks[1]})"
    if isinstance(value, BlockPair):
        return f"({value.blocks[0]},{value.blocks[1]})"
    if isinstance(value, DiffProfile):
        return "[" + ";".join(encode(e) for e in value.entries) + "]"
    if isinstance(value, Color):
        return "{" + "|".join(encode(lv) for lv in value.levels) + "}"
    if isinstance(value, MubayiColor):
        if value.is_zero():
            return "0"
        x, y = value.pair
        return f"({{{x},{y}}}:{value.index}:{value.diff})"
    raise TypeError(f"cannot encode {type(value).__name__}")


class _Decoder:
    __slots__ = ("text", "pos")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, position: int | None = None):
        raise DecodeError(message, self.pos if position is None else position)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, expected: str) -> None:
        if self.peek() != expected:
            self.fail(f"expected {expected!r}")
        self.pos += 1

    def _run(self, charset: str) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in charset:
            self.pos += 1
        return self.text[start : self.pos]

    def number(self, what: str) -> int:
        start = self.pos
        run = self._run("0123456789")
        if not run:
            self.fail(f"expected {what}", start)
        if run[0] == "0":
            self.fail(f"{what} must not have leading zeros", start)
        return int(run)

    def bits(self) -> str:
        start = self.pos
        run = self._run("01")
        if not run:
            self.fail("expected bits", start)
        return run

    def value(self):
        c = self.peek()
        if c == "Z":
            self.pos += 1
            return ZERO
        if c == "0":
            self.pos += 1
            return MUBAYI_ZERO
        if c == "(":
            return self.paren()
        if c == "[":
            return self.profile()
        if c == "{":
            return self.color()
        self.fail("expected a value")

    def checked(self, build, start: int):
        try:
            return build()
        except ValueError as exc:
            self.fail(str(exc), start)

    def paren(self):
        start = self.pos
        self.take("(")
        if self.peek() == "{":
            return self.mubayi_tail(start)
        run_start = self.pos
        run = self._run("0123456789")
        if not run:
            self.fail("expected an index or bits", run_start)
        if self.peek() == ":":
            if run[0] == "0":
                self.fail("index must not have leading zeros", run_start)
            index = int(run)
            self.take(":")
            first = self.bits()
            self.take(",")
            second = self.bits()
            self.take(")")
            return self.checked(lambda: _strict_diff(index, first, second), start)
        if self.peek() == ",":
            if run.strip("01"):
                self.fail("pair entries must be bits", run_start)
            self.take(",")
            second = self.bits()
            self.take(")")
            return self.checked(lambda: _strict_pair(run, second), start)
        self.fail("expected ':' or ',' after digits")

    def mubayi_tail(self, start: int):
        self.take("{")
        x = self.number("symbol")
        self.take(",")
        y = self.number("symbol")
        self.take("}")
        self.take(":")
        index = self.number("index")
        self.take(":")
        diff = self.bits()
        self.take(")")
        return self.checked(lambda: _strict_mubayi(x, y, index, diff), start)

    def profile(self) -> DiffProfile:
        start = self.pos
        self.take("[")
        entries = [self.entry()]
        while self.peek() == ";":
            self.pos += 1
            entries.append(self.entry())
        self.take("]")
        return self.checked(lambda: DiffProfile(tuple(entries)), start)

    def entry(self):
        c = self.peek()
        if c == "Z":
            self.pos += 1
            return ZERO
        if c == "(":
            value = self.paren()
            if isinstance(value, MubayiColor):
                self.fail("mubayi value cannot appear inside a profile")
            return value
        self.fail("expected a profile entry")

    def color(self) -> Color:
        start = self.pos
        self.take("{")
        levels = [self.profile()]
        while self.peek() == "|":
            self.pos += 1
            levels.append(self.profile())
        self.take("}")
        return self.checked(lambda: Color(tuple(levels)), start)


def _strict_diff(index: int, a: str, b: str) -> BlockDiff:
    if not a < b:
        raise ValueError(f"pair not in canonical order: {a},{b}")
    return BlockDiff(index, (a, b))


def _strict_pair(a: str, b: str) -> BlockPair:
    if not a < b:
        raise ValueError(f"pair not in canonical order: {a},{b}")
    return BlockPair((a, b))


def _strict_mubayi(x: int, y: int, index: int, diff: str) -> MubayiColor:
    if not x < y:
        raise ValueError(f"pair not in canonical order: {x},{y}")
    return MubayiColor((x, y), index, diff)


def decode(text: str):
    """Inverse of ``encode``; raises DecodeError (with position) on bad input."""
    if not isinstance(text, str):
        raise TypeError("decode expects a string")
    dec = _Decoder(text)
    value = dec.value()
    if dec.pos != len(text):
        dec.fail("trailing characters")
    return value


# --- pair-encoding closures used by censuses, verifiers, and the CLI ---


def chain_encoder(chain: ResolutionChain) -> Callable:
    """Encoded full color of a vertex pair, as a function of two bit vectors."""
    resolutions = chain.resolutions

    def encode_pair(v, w) -> str:
        a, b = _pair_bits(v, w)
        return encode(_color_raw(resolutions, a, b))

    return encode_pair


def unindexed_chain_encoder(chain: ResolutionChain) -> Callable:
    """Encoded unindexed-variant color of a vertex pair."""
    resolutions = chain.resolutions

    def encode_pair(v, w) -> str:
        a, b = _pair_bits(v, w)
        return encode(_color_raw(resolutions, a, b, unindexed=True))

    return encode_pair


def mubayi_encoder() -> Callable:
    """Encoded one-level color of a pair of SymbolVectors."""

    def encode_pair(v: SymbolVector, w: SymbolVector) -> str:
        return encode(mubayi_color(v, w))

    return encode_pair
