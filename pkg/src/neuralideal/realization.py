"""Finite receptive-field arrangements and the set algebra on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .code import Codeword, NeuralCode


@dataclass(frozen=True)
class Realization:
    """A finite stimulus space ``points`` with receptive fields ``regions[0..n-1]``."""

    points: tuple[str, ...]
    regions: tuple[frozenset[str], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "regions", tuple(frozenset(r) for r in self.regions))
        if not self.points:
            raise ValueError("the stimulus space must be nonempty")
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point identifiers")
        if not self.regions:
            raise ValueError("a realization needs at least one region")
        space = set(self.points)
        for i, r in enumerate(self.regions, start=1):
            if not r <= space:
                raise ValueError(f"U{i} contains unknown points {sorted(r - space)}")

    @property
    def n(self) -> int:
        return len(self.regions)

    @property
    def space(self) -> frozenset[str]:
        return frozenset(self.points)

    def codeword(self, p: str) -> Codeword:
        """c(p): the codeword whose support is the set of regions containing ``p``."""
        return Codeword(tuple(1 if p in r else 0 for r in self.regions))

    def U(self, i: int) -> frozenset[str]:
        return self.regions[i - 1]


def realize(code: NeuralCode) -> Realization:
    """Canonical realization: one point per codeword, U_i = words with bit i set.

    Points are named by their binary codeword strings.
    """
    if not code:
        raise ValueError("the empty code has no realization")
    words = list(code)
    points = tuple(str(w) for w in words)
    regions = tuple(
        frozenset(str(w) for w in words if w.bits[i]) for i in range(code.n)
    )
    return Realization(points, regions)


def code_of_realization(R: Realization) -> NeuralCode:
    return NeuralCode(R.n, (R.codeword(p) for p in R.points))


def region(R: Realization, sigma: Iterable[int], tau: Iterable[int] = ()) -> frozenset[str]:
    """U_sigma intersected with the complements of U_j for j in tau (U_empty = X)."""
    out = set(R.points)
    for i in sigma:
        out &= R.U(i)
    for j in tau:
        out -= R.U(j)
    return frozenset(out)


def union(R: Realization, indices: Iterable[int]) -> frozenset[str]:
    out: set[str] = set()
    for i in indices:
        out |= R.U(i)
    return frozenset(out)


def check_realizes(R: Realization, code: NeuralCode) -> None:
    """Raise ``ValueError`` unless ``R`` is a realization of ``code``."""
    if R.n != code.n:
        raise ValueError(f"realization has {R.n} regions, code has {code.n} neurons")
    got = code_of_realization(R)
    if got != code:
        raise ValueError(f"realization has code {{{got}}}, expected {{{code}}}")


def parse_realization(text: str, n: int) -> Realization:
    """Parse lines of the form ``point_id: i,j,k`` (``-`` for no regions)."""
    points: list[str] = []
    regions: list[set[str]] = [set() for _ in range(n)]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        pid, sep, rest = line.partition(":")
        pid, rest = pid.strip(), rest.strip()
        if not sep or not pid:
            raise ValueError(f"line {lineno}: expected 'point_id: i,j,k'")
        points.append(pid)
        if rest == "-":
            continue
        for tok in rest.split(","):
            tok = tok.strip()
            if not tok.isdigit() or not 1 <= int(tok) <= n:
                raise ValueError(f"line {lineno}: bad region index {tok!r} for n={n}")
            regions[int(tok) - 1].add(pid)
    return Realization(tuple(points), tuple(frozenset(r) for r in regions))


def format_realization(R: Realization) -> str:
    lines = []
    for p in R.points:
        idx = [str(i) for i in range(1, R.n + 1) if p in R.U(i)]
        lines.append(f"{p}: {','.join(idx) if idx else '-'}")
    return "\n".join(lines) + "\n"
