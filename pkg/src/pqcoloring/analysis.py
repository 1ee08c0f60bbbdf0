"""Executable combinatorics on top of the colorings.

This module carries the machinery that turns the construction into checkable
statements:

* ``refines`` decides whether one finite function refines another (equal
  f-values force equal g-values) and produces a witness when it does not.
* ``analyze_subset`` decomposes the colors a vertex subset receives at a
  resolution cut into inherited and emerging parts, with fibers and
  multiplicities — the objects the clique-coloring argument counts.
* ``emerging_injection`` builds the level-to-level injection showing the
  emerging color classes can only grow with the resolution level.
* ``count_colors`` / ``sampled_color_lower_bound`` census the distinct
  encoded colors on a vertex set.
* ``choose_params`` / ``bound`` pick the geometric chain for a target vertex
  count and evaluate the color-count bound it guarantees.
* ``grid_counterexample`` / ``three_cube_counterexample`` exhibit vertex
  sets on which the one-level coloring uses too few colors.
* ``lower_bound_chain`` iterates the product recursion that lifts a color
  lower bound from (p, q) to (p+1, q+1).
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import mpmath

from .vectors import ResolutionChain, as_bits
from .colorings import (
    ZERO,
    Color,
    SymbolVector,
    _block_diff_raw,
    _color_raw,
    grid_universe,
    mubayi_encoder,
)

PAIR_BUDGET = 2**30


class BudgetExceeded(RuntimeError):
    """An enumeration was refused because it would exceed the configured budget."""

    def __init__(self, needed: int, budget: int, suggestion: str = ""):
        self.needed = needed
        self.budget = budget
        message = f"refused: {needed} evaluations exceed the budget of {budget}"
        if suggestion:
            message += f"; {suggestion}"
        super().__init__(message)


def refines(f: Callable, g: Callable, domain: Iterable):
    """True if equal f-values force equal g-values on ``domain``.

    Returns the literal ``True`` on success, otherwise a witness pair
    (a, a2) with f(a) == f(a2) but g(a) != g(a2).  Callers should compare
    with ``is True`` since a witness tuple is also truthy.
    """
    seen: dict = {}
    for a in domain:
        key = f(a)
        if key in seen:
            rep, g_rep = seen[key]
            if g(a) != g_rep:
                return (rep, a)
        else:
            seen[key] = (a, g(a))
    return True


@dataclass(frozen=True)
class SubsetAnalysis:
    """The color decomposition of a vertex subset at one resolution cut.

    ``prefix_length`` is the largest multiple of r_level strictly below the
    vector length; prefixes are taken at that cut.  Full colors split into
    ``full_inherited`` (endpoint prefixes differ) and ``full_emerging``
    (prefixes equal).  ``inherited`` holds the reduced form (prefix color,
    tail diff at resolution level-1); ``emerging`` holds the unordered tail
    pairs, with ``multiplicity`` counting the vertex pairs realizing each;
    ``base`` is the set of colors appearing among the distinct prefixes.
    """

    subset: tuple[str, ...]
    level: int
    prefix_length: int
    prefixes: frozenset[str]
    fibers: dict[str, tuple[str, ...]]
    full_inherited: frozenset[Color]
    full_emerging: frozenset[Color]
    inherited: frozenset[tuple]
    emerging: frozenset[tuple[str, str]]
    multiplicity: dict[tuple[str, str], int]
    base: frozenset[Color]


def analyze_subset(subset: Iterable, level: int, chain: ResolutionChain) -> SubsetAnalysis:
    """Decompose the colors of ``subset`` at resolution ``level`` (1 <= level <= p+1)."""
    vecs = sorted({as_bits(v) for v in subset})
    if not vecs:
        raise ValueError("subset must be nonempty")
    alpha = len(vecs[0])
    if any(len(v) != alpha for v in vecs):
        raise ValueError("subset vectors must share a length")
    if not 1 <= level <= chain.p + 1:
        raise ValueError(f"level must lie in 1..{chain.p + 1}, got {level}")
    r = chain[level]
    if alpha <= r:
        raise ValueError(f"analysis needs alpha > r_level: alpha={alpha}, r_{level}={r}")
    cut = ((alpha - 1) // r) * r
    resolutions = chain.resolutions
    r_prev = chain[level - 1]

    fibers: dict[str, list[str]] = {}
    for v in vecs:
        fibers.setdefault(v[:cut], []).append(v)

    full_inherited: set[Color] = set()
    full_emerging: set[Color] = set()
    inherited: set[tuple] = set()
    multiplicity: Counter = Counter()
    for i, v in enumerate(vecs):
        for w in vecs[i + 1 :]:
            full = _color_raw(resolutions, v, w)
            if v[:cut] != w[:cut]:
                full_inherited.add(full)
                inherited.add(
                    (
                        _color_raw(resolutions, v[:cut], w[:cut]),
                        _block_diff_raw(r_prev, v[cut:], w[cut:]),
                    )
                )
            else:
                full_emerging.add(full)
                tail = (v[cut:], w[cut:])
                if tail[1] < tail[0]:
                    tail = (tail[1], tail[0])
                multiplicity[tail] += 1

    prefixes = sorted(fibers)
    base = {
        _color_raw(resolutions, x, y)
        for i, x in enumerate(prefixes)
        for y in prefixes[i + 1 :]
    }
    return SubsetAnalysis(
        subset=tuple(vecs),
        level=level,
        prefix_length=cut,
        prefixes=frozenset(prefixes),
        fibers={k: tuple(v) for k, v in fibers.items()},
        full_inherited=frozenset(full_inherited),
        full_emerging=frozenset(full_emerging),
        inherited=frozenset(inherited),
        emerging=frozenset(multiplicity),
        multiplicity=dict(multiplicity),
        base=frozenset(base),
    )


@dataclass(frozen=True)
class EmergingInjection:
    """The constructed map from level-1 emerging pairs into level-d emerging pairs."""

    level: int
    mapping: dict[tuple[str, str], tuple[str, str]]
    identity_holds: bool
    injective: bool
    image_contained: bool


def emerging_injection(subset: Iterable, level: int, chain: ResolutionChain) -> EmergingInjection:
    """Build the injection from emerging pairs at ``level``-1 to those at ``level``.

    For an emerging tail pair {x, y} at the lower cut, pick the
    lexicographically least shared prefix realizing it, keep that prefix's
    segment between the two cuts, and prepend it to x and y.  Dropping the
    prepended segment (the unindexed tail diff at level-1) recovers {x, y},
    which forces injectivity; 2 <= level <= p.
    """
    if not 2 <= level <= chain.p:
        raise ValueError(f"level must lie in 2..{chain.p}, got {level}")
    low = analyze_subset(subset, level - 1, chain)
    high = analyze_subset(subset, level, chain)
    r_prev = chain[level - 1]

    mapping: dict[tuple[str, str], tuple[str, str]] = {}
    identity_holds = True
    for pair in sorted(low.emerging):
        x, y = pair
        prefix = min(
            shared
            for shared, members in low.fibers.items()
            if {shared + x, shared + y} <= set(members)
        )
        middle = prefix[high.prefix_length :]
        image = (middle + x, middle + y)
        if image[1] < image[0]:
            image = (image[1], image[0])
        mapping[pair] = image
        recovered = _block_diff_raw(r_prev, image[0], image[1])
        if recovered is ZERO or recovered.blocks != pair:
            identity_holds = False
    injective = len(set(mapping.values())) == len(mapping)
    image_contained = set(mapping.values()) <= high.emerging
    return EmergingInjection(
        level=level,
        mapping=mapping,
        identity_holds=identity_holds,
        injective=injective,
        image_contained=image_contained,
    )


def count_colors(vertices: Sequence, encoder: Callable, *, budget: int = PAIR_BUDGET) -> int:
    """Exact census of distinct encoded colors over all vertex pairs."""
    n = len(vertices)
    pairs = n * (n - 1) // 2
    if pairs > budget:
        raise BudgetExceeded(
            pairs, budget, "use sampled_color_lower_bound for a seeded estimate"
        )
    seen: set[str] = set()
    for j in range(1, n):
        w = vertices[j]
        for i in range(j):
            seen.add(encoder(vertices[i], w))
    return len(seen)


def sampled_color_lower_bound(
    vertices: Sequence, encoder: Callable, samples: int, seed: int = 0
) -> int:
    """Distinct encoded colors over ``samples`` seeded random pairs (a lower bound)."""
    n = len(vertices)
    if n < 2:
        return 0
    rng = random.Random(seed)
    seen: set[str] = set()
    for _ in range(samples):
        i, j = rng.sample(range(n), 2)
        seen.add(encoder(vertices[i], vertices[j]))
    return len(seen)


def choose_params(n: int, p: int) -> tuple[int, int, ResolutionChain]:
    """Least beta >= 2 with 2**(beta**(p+1)) >= n, with the geometric chain.

    Returns (beta, alpha, chain) where alpha = beta**(p+1) is the padded
    vector length and the chain is r_d = beta**d.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    need = (n - 1).bit_length()  # ceil(log2 n)
    beta = 2
    while beta ** (p + 1) < need:
        beta += 1
    alpha = beta ** (p + 1)
    return beta, alpha, ResolutionChain.geometric(p, beta)


@dataclass(frozen=True)
class BoundReport:
    """The color-count guarantee for the depth-p coloring padded to 2**alpha vertices.

    The guaranteed exponent is 4 * (p+1) * beta**p * log2(beta), i.e. the
    bound is 2 to that power evaluated at the padded vertex count.
    ``bound_log2_exact`` is set when beta is a power of two (the exponent is
    then an exact integer); ``bound_log2`` is always a high-precision value.
    """

    n: int
    p: int
    beta: int
    alpha: int
    bound_log2_exact: int | None
    bound_log2: mpmath.mpf
    color_count: int | None = None

    def bound_exact(self) -> int | None:
        if self.bound_log2_exact is None:
            return None
        return 1 << self.bound_log2_exact

    def admits(self, count: int) -> bool:
        """Whether a color census of ``count`` respects the bound."""
        if self.bound_log2_exact is not None:
            return count <= self.bound_exact()
        return mpmath.mpf(count) <= mpmath.power(2, self.bound_log2)


def bound(n: int, p: int, *, color_count: int | None = None) -> BoundReport:
    """Evaluate the guaranteed color bound at the padded size for (n, p)."""
    beta, alpha, _ = choose_params(n, p)
    scale = 4 * (p + 1) * beta**p
    exact: int | None = None
    if beta & (beta - 1) == 0:
        exact = scale * (beta.bit_length() - 1)
    with mpmath.workdps(50):
        log2 = mpmath.mpf(scale) * mpmath.log(beta, 2)
        value = +log2
    return BoundReport(
        n=n,
        p=p,
        beta=beta,
        alpha=alpha,
        bound_log2_exact=exact,
        bound_log2=value,
        color_count=color_count,
    )


@dataclass(frozen=True)
class GridCounterexample:
    """A vertex set on which the one-level coloring beats a claimed color count.

    ``violated`` is the (p, q) statement the census contradicts: some
    ``violated[0]``-vertex subset spans fewer than ``violated[1]`` colors.
    """

    label: str
    m: int
    t: int
    vertices: tuple[SymbolVector, ...]
    census: int
    stated_bound: int
    violated: tuple[int, int]


def _grid_case(
    m: int, t: int, label: str, violated_of: Callable[[int], tuple[int, int]]
) -> GridCounterexample:
    vertices = grid_universe(m, t)
    pairs = len(vertices) * (len(vertices) - 1) // 2
    if pairs > PAIR_BUDGET:
        raise BudgetExceeded(pairs, PAIR_BUDGET, "grid too large for an exact census")
    census = count_colors(vertices, mubayi_encoder())
    return GridCounterexample(
        label=label,
        m=m,
        t=t,
        vertices=tuple(vertices),
        census=census,
        stated_bound=math.comb(m, 2) * 2**t,
        violated=violated_of(census),
    )


def grid_counterexample(s: int) -> GridCounterexample:
    """The full grid [2**s]^s under the one-level coloring, s <= 3.

    The census k is below 2**(s*s), so the grid itself violates the claim
    that every 2**(s*s)-vertex set spans at least k+1 colors.
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if s > 3:
        raise BudgetExceeded(
            math.comb((2**s) ** s, 2), PAIR_BUDGET, "grids beyond s=3 are refused"
        )
    m, t = 2**s, s
    return _grid_case(m, t, f"[{m}]^{t}", lambda census: (m**t, census + 1))


def three_cube_counterexample() -> GridCounterexample:
    """The 27-point grid [3]^3: at most 24 colors, so 26 points cannot span 25."""
    return _grid_case(3, 3, "[3]^3", lambda census: (26, 25))


@dataclass(frozen=True)
class LowerBoundStep:
    """One link of the lower-bound recursion: at least ``colors`` colors are
    needed for every (p, q)-coloring of the complete graph on ``n`` vertices."""

    n: int
    p: int
    q: int
    colors: int

    def __str__(self) -> str:
        return f"f({self.n},{self.p},{self.q}) >= {self.colors}"


def lower_bound_chain(base: tuple[int, int, int, int], steps: int) -> list[LowerBoundStep]:
    """Iterate n -> n*k, p -> p+1, q -> q+1 from a base bound f(n,p,q) >= k.

    The caller supplies the base fact (for example from ``exact_min_colors``);
    each step multiplies the vertex count by the color bound k, which stays
    fixed along the chain.  Exact big-integer arithmetic throughout.
    """
    n, p, q, k = base
    if n < 2 or p < 2 or q < 1 or k < 1:
        raise ValueError(f"base must satisfy n >= 2, p >= 2, q >= 1, k >= 1: {base}")
    if q > math.comb(p, 2):
        raise ValueError(f"base q must be at most C(p,2): {base}")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    out = [LowerBoundStep(n, p, q, k)]
    for _ in range(steps):
        n, p, q = n * k, p + 1, q + 1
        out.append(LowerBoundStep(n, p, q, k))
    return out
