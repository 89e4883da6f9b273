"""Braid words and the combinatorics of their closures."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import BraidSyntaxError, PositionOutOfRange

_GRAMMAR = "N: w1 w2 ...  (N strands; each w is a nonzero integer, +p for sigma_p, -p for its inverse)"


@dataclass(frozen=True)
class BraidWord:
    """A braid on ``strands`` strands; ``letters`` are (position, sign) pairs
    read from the bottom of the braid upward."""

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise PositionOutOfRange("a braid needs at least one strand")
        for p, s in self.letters:
            if s not in (1, -1):
                raise BraidSyntaxError(f"sign must be +-1, got {s}")
            if not 1 <= p <= self.strands - 1:
                raise PositionOutOfRange(f"generator {p} out of range for {self.strands} strands")

    @classmethod
    def from_word(cls, strands: int, word) -> "BraidWord":
        return cls(strands, tuple((abs(w), 1 if w > 0 else -1) for w in word))

    @property
    def word(self) -> list[int]:
        return [p * s for p, s in self.letters]

    def __str__(self):
        return f"{self.strands}:" + "".join(f" {w}" for w in self.word)

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": self.word}

    @classmethod
    def from_json(cls, data) -> "BraidWord":
        return cls.from_word(int(data["strands"]), [int(w) for w in data["word"]])

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((p, -s) for p, s in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def free_reduce(self) -> "BraidWord":
        out: list[tuple[int, int]] = []
        for p, s in self.letters:
            if out and out[-1] == (p, -s):
                out.pop()
            else:
                out.append((p, s))
        return BraidWord(self.strands, tuple(out))

    def writhe(self) -> int:
        return sum(s for _, s in self.letters)


def parse_braid(text: str) -> BraidWord:
    m = re.fullmatch(r"\s*(\d+)\s*:\s*((?:[+-]?\d+\s*)*)", text)
    if not m:
        raise BraidSyntaxError(f"cannot parse {text!r}; expected {_GRAMMAR}")
    n = int(m.group(1))
    word = [int(w) for w in m.group(2).split()]
    if any(w == 0 for w in word):
        raise BraidSyntaxError(f"generator 0 is not allowed; expected {_GRAMMAR}")
    if n < 1:
        raise PositionOutOfRange("a braid needs at least one strand")
    for w in word:
        if abs(w) > n - 1:
            raise PositionOutOfRange(f"generator {w} out of range for {n} strands")
    return BraidWord.from_word(n, word)


def format_braid(b: BraidWord) -> str:
    return str(b)


@dataclass(frozen=True)
class LinkClosure:
    """Closure data.  Components are 0-based here; the t-variable of
    component ``j`` is ``t{j+1}``."""

    L: int
    component_of_strand: tuple[int, ...]
    strands_per_component: tuple[int, ...]
    linking: tuple[tuple[int, ...], ...]  # off-diagonal l_ij, diagonal l_jj
    crossing_components: tuple[tuple[int, int], ...]
    permutation: tuple[int, ...]  # bottom strand -> its top position
    top_order: tuple[int, ...] = field(default=())  # bottom strand sitting at each top position

    def lk(self, i: int, j: int) -> int:
        return self.linking[i][j]

    def self_linking(self, j: int) -> int:
        return self.linking[j][j]

    def column_sum(self, j: int) -> int:
        """sum_i l_ij including the diagonal term."""
        return sum(self.linking[i][j] for i in range(self.L))

    def offdiag_sum(self, j: int) -> int:
        return sum(self.linking[i][j] for i in range(self.L) if i != j)


def close(b: BraidWord) -> LinkClosure:
    n = b.strands
    at = list(range(n))  # at[pos] = bottom strand currently at pos
    for p, _ in b.letters:
        at[p - 1], at[p] = at[p], at[p - 1]
    perm = [0] * n
    for pos, s in enumerate(at):
        perm[s] = pos
    comp = [-1] * n
    L = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        s = start
        while comp[s] < 0:
            comp[s] = L
            s = perm[s]
        L += 1
    counts = [0] * L
    for c in comp:
        counts[c] += 1
    twice = [[0] * L for _ in range(L)]
    crossing = []
    at = list(range(n))
    for p, s in b.letters:
        a, c = comp[at[p - 1]], comp[at[p]]
        crossing.append((a, c))
        if a == c:
            twice[a][a] += 2 * s
        else:
            twice[a][c] += s
            twice[c][a] += s
        at[p - 1], at[p] = at[p], at[p - 1]
    link = []
    for i in range(L):
        row = []
        for j in range(L):
            if twice[i][j] % 2:
                raise AssertionError("odd inter-component crossing count")
            row.append(twice[i][j] // 2)
        link.append(tuple(row))
    return LinkClosure(
        L=L,
        component_of_strand=tuple(comp),
        strands_per_component=tuple(counts),
        linking=tuple(link),
        crossing_components=tuple(crossing),
        permutation=tuple(perm),
        top_order=tuple(at),
    )


def conjugate(b: BraidWord, p: int, s: int) -> BraidWord:
    """g b g^{-1} with g = sigma_p^s, freely reduced."""
    return BraidWord(b.strands, ((p, s),) + b.letters + ((p, -s),)).free_reduce()


def stabilize(b: BraidWord, s: int = 1) -> BraidWord:
    return BraidWord(b.strands + 1, b.letters + ((b.strands, s),))


def markov_moves(b: BraidWord) -> list[BraidWord]:
    """All one-step conjugations by generators and both stabilizations."""
    out = []
    for p in range(1, b.strands):
        for s in (1, -1):
            out.append(conjugate(b, p, s))
    out.append(stabilize(b, 1))
    out.append(stabilize(b, -1))
    return out


def delete_component(b: BraidWord, comp_index: int) -> tuple[BraidWord, dict[int, int]]:
    """Remove every strand of one component.

    Returns the braid of the sublink and a map from old component indices
    to the component indices of the new closure.
    """
    c = close(b)
    keep = [s for s in range(b.strands) if c.component_of_strand[s] != comp_index]
    if not keep:
        raise ValueError("cannot delete the only component")
    at = list(range(b.strands))
    letters = []
    for p, s in b.letters:
        x, y = at[p - 1], at[p]
        if c.component_of_strand[x] != comp_index and c.component_of_strand[y] != comp_index:
            newp = sum(1 for z in at[: p - 1] if c.component_of_strand[z] != comp_index) + 1
            letters.append((newp, s))
        at[p - 1], at[p] = at[p], at[p - 1]
    sub = BraidWord(len(keep), tuple(letters))
    csub = close(sub)
    mapping = {}
    for new_pos, old_strand in enumerate(keep):
        mapping[c.component_of_strand[old_strand]] = csub.component_of_strand[new_pos]
    return sub, mapping
