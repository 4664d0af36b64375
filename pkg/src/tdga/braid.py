"""Braid words and the combinatorial data of their closures.

A braid word is a list of Artin generators sigma_k^{+-1} on ``n`` strands,
written bottom to top.  Strand positions are numbered 1..n; sigma_k crosses
the strands currently at positions k and k+1 (positively for sign +1).

Permutation convention: ``permutation(B)[i] = j`` means the strand entering
at bottom position i leaves at top position j.  Under concatenation
(B followed by B2) this composes as perm(B + B2) = perm(B2) o perm(B).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BraidParseError, DgaError


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group B_n.  ``letters`` are (index, sign) pairs."""

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strand count must be >= 1")
        for k, s in self.letters:
            if not 1 <= k <= self.strands - 1:
                raise ValueError(f"generator index {k} out of range for n={self.strands}")
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +-1, got {s}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(k * s) for k, s in self.letters) or "(trivial)"

    def word_text(self) -> str:
        """Signed-integer text form, parseable by parse_braid."""
        return " ".join(str(k * s) for k, s in self.letters)


@dataclass(frozen=True)
class ComponentData:
    """Link components of a braid closure and their writhes.

    ``alpha[i]`` (1-based via dict) is the component number of strand i;
    components are numbered by increasing minimal strand index.  ``leading``
    holds the minimal strand of each component.  ``writhe_per_component``
    counts signed crossings both of whose strands lie in that component.
    """

    r: int
    alpha: dict[int, int]
    leading: frozenset[int]
    writhe_per_component: dict[int, int]
    total_writhe: int


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse whitespace/comma-separated signed generator indices.

    ``strands`` defaults to max |k| + 1 (or 1 for the empty word); an explicit
    larger value pads the braid with idle strands.
    """
    tokens = text.replace(",", " ").split()
    letters = []
    for tok in tokens:
        try:
            v = int(tok)
        except ValueError:
            raise BraidParseError(f"non-integer token {tok!r}") from None
        if v == 0:
            raise BraidParseError("token 0 is not a braid generator")
        letters.append((abs(v), 1 if v > 0 else -1))
    n = strands if strands is not None else (max((k for k, _ in letters), default=0) + 1)
    if n < 1:
        raise BraidParseError(f"invalid strand count {n}")
    for k, _ in letters:
        if k >= n:
            raise BraidParseError(f"generator index {k} needs at least {k + 1} strands, have {n}")
    return BraidWord(n, tuple(letters))


def permutation(braid: BraidWord) -> dict[int, int]:
    """Bottom-to-top endpoint permutation; letter signs are irrelevant."""
    # pos[p] = strand currently at position p
    pos = list(range(braid.strands + 1))  # index 0 unused
    for k, _ in braid.letters:
        pos[k], pos[k + 1] = pos[k + 1], pos[k]
    perm = {}
    for p in range(1, braid.strands + 1):
        perm[pos[p]] = p
    return perm


def link_components(braid: BraidWord) -> ComponentData:
    perm = permutation(braid)
    n = braid.strands
    alpha: dict[int, int] = {}
    leading = []
    for i in range(1, n + 1):
        if i in alpha:
            continue
        comp = len(leading) + 1
        leading.append(i)
        j = i
        while j not in alpha:
            alpha[j] = comp
            j = perm[j]
    writhes = {c: 0 for c in range(1, len(leading) + 1)}
    total = 0
    pos = list(range(n + 1))
    for k, s in braid.letters:
        u, v = pos[k], pos[k + 1]
        total += s
        if alpha[u] == alpha[v]:
            writhes[alpha[u]] += s
        pos[k], pos[k + 1] = pos[k + 1], pos[k]
    return ComponentData(
        r=len(leading),
        alpha=alpha,
        leading=frozenset(leading),
        writhe_per_component=writhes,
        total_writhe=total,
    )


def self_linking(braid: BraidWord) -> int:
    """Self-linking number of the closure: writhe minus braid index (knots only)."""
    comp = link_components(braid)
    if comp.r != 1:
        raise DgaError(f"self-linking needs a knot closure, got {comp.r} components")
    return comp.total_writhe - braid.strands


def inverse_braid(braid: BraidWord) -> BraidWord:
    return BraidWord(braid.strands,
                     tuple((k, -s) for k, s in reversed(braid.letters)))


def concat(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.strands != b.strands:
        raise ValueError("strand counts differ")
    return BraidWord(a.strands, a.letters + b.letters)
