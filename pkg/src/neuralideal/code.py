"""Binary neural codes: codewords, supports, text formats and enumeration."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

DEFAULT_ENUMERATION_CAP = 4

_BINARY_RE = re.compile(r"[01]+")
_SHORTHAND_RE = re.compile(r"[1-9]+")
_EMPTY_TOKENS = ("e", "∅")


class CodeFormatError(ValueError):
    """Raised when a code string cannot be parsed."""


@dataclass(frozen=True, order=True)
class Codeword:
    """A firing pattern of ``n`` neurons, stored as a tuple of bits."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"codeword bits must be 0/1, got {self.bits!r}")

    @classmethod
    def from_string(cls, s: str) -> "Codeword":
        if not _BINARY_RE.fullmatch(s):
            raise ValueError(f"not a binary string: {s!r}")
        return cls(tuple(int(ch) for ch in s))

    @classmethod
    def from_support(cls, supp: Iterable[int], n: int) -> "Codeword":
        supp = set(supp)
        bad = [i for i in supp if not 1 <= i <= n]
        if bad:
            raise ValueError(f"support indices {sorted(bad)} outside [1, {n}]")
        return cls(tuple(1 if i in supp else 0 for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, b in enumerate(self.bits) if b)

    def flip(self, i: int) -> "Codeword":
        if not 1 <= i <= self.n:
            raise IndexError(f"bit index {i} outside [1, {self.n}]")
        bits = list(self.bits)
        bits[i - 1] ^= 1
        return Codeword(tuple(bits))

    def shorthand(self) -> str:
        if self.n > 9:
            raise ValueError("support shorthand is limited to n <= 9")
        supp = sorted(self.support)
        return "".join(map(str, supp)) if supp else "e"

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def support(c: Codeword) -> frozenset[int]:
    """Return the 1-based positions of the 1-bits of ``c``."""
    return c.support


@dataclass(frozen=True)
class NeuralCode:
    """An immutable set of length-``n`` codewords.

    The empty code is representable; operations that need a stimulus
    space (see :mod:`neuralideal.realization`) reject it.
    """

    n: int
    words: frozenset[Codeword]

    def __init__(self, n: int, words: Iterable[Codeword | str | Iterable[int]] = ()):
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        ws = set()
        for w in words:
            if isinstance(w, str):
                w = Codeword.from_string(w)
            elif not isinstance(w, Codeword):
                w = Codeword(tuple(w))
            if w.n != n:
                raise ValueError(f"codeword {w} has length {w.n}, expected {n}")
            ws.add(w)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "words", frozenset(ws))

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], n: int) -> "NeuralCode":
        return cls(n, (Codeword.from_support(s, n) for s in supports))

    @classmethod
    def full(cls, n: int) -> "NeuralCode":
        return cls(n, all_words(n))

    def __iter__(self) -> Iterator[Codeword]:
        return iter(sorted(self.words))

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w) -> bool:
        if isinstance(w, str):
            w = Codeword.from_string(w)
        return w in self.words

    def __bool__(self) -> bool:
        return bool(self.words)

    def complement(self) -> list[Codeword]:
        """Non-codewords in lexicographic order."""
        return [w for w in all_words(self.n) if w not in self.words]

    def __str__(self) -> str:
        return format_code(self)

    def __repr__(self) -> str:
        return f"NeuralCode(n={self.n}, words={{{format_code(self)}}})"


def all_words(n: int) -> list[Codeword]:
    """All of F_2^n in lexicographic order of the binary strings."""
    return [Codeword(tuple((k >> (n - 1 - j)) & 1 for j in range(n))) for k in range(2**n)]


def _parse_token(tok: str, n: int) -> Codeword:
    if tok in _EMPTY_TOKENS:
        return Codeword((0,) * n)
    # a length-n 0/1 string is read as binary; only "1"*n could also be
    # shorthand, and that would need a repeated digit
    if len(tok) == n and _BINARY_RE.fullmatch(tok):
        return Codeword.from_string(tok)
    if _SHORTHAND_RE.fullmatch(tok):
        digits = [int(ch) for ch in tok]
        too_big = [d for d in digits if d > n]
        if too_big:
            raise CodeFormatError(f"token {tok!r}: neuron {too_big[0]} exceeds n={n}")
        if len(set(digits)) != len(digits):
            raise CodeFormatError(f"token {tok!r}: repeated neuron index")
        return Codeword.from_support(digits, n)
    if _BINARY_RE.fullmatch(tok):
        raise CodeFormatError(f"binary token {tok!r} has length {len(tok)}, expected {n}")
    raise CodeFormatError(f"token {tok!r} is neither a binary word nor a support shorthand")


def parse_code(text: str, n: int) -> NeuralCode:
    """Parse a comma separated list of binary words and/or support shorthands.

    >>> str(parse_code("e,3,13,23", 3))
    '000,001,011,101'
    """
    if n < 1:
        raise CodeFormatError(f"n must be positive, got {n}")
    if not text.strip():
        raise CodeFormatError("empty token list")
    tokens = [t.strip() for t in text.split(",")]
    if any(not t for t in tokens):
        raise CodeFormatError(f"empty token in {text!r}")
    return NeuralCode(n, (_parse_token(t, n) for t in tokens))


def format_code(code: NeuralCode, notation: str = "binary") -> str:
    """Canonical text form: tokens sorted lexicographically, joined by commas."""
    if notation == "binary":
        toks = [str(w) for w in code.words]
    elif notation == "support":
        toks = [w.shorthand() for w in code.words]
    else:
        raise ValueError(f"unknown notation {notation!r}")
    return ",".join(sorted(toks))


def bitflip_code(code: NeuralCode, i: int) -> NeuralCode:
    """Toggle neuron ``i`` in every codeword (support symmetric difference with {i})."""
    if not 1 <= i <= code.n:
        raise IndexError(f"bit index {i} outside [1, {code.n}]")
    return NeuralCode(code.n, (w.flip(i) for w in code.words))


def enumerate_codes(
    n: int, include_empty_code: bool = False, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[NeuralCode]:
    """Yield every subset of F_2^n exactly once.

    Codes are produced in increasing order of their membership bitmask,
    where bit ``k`` stands for the ``k``-th word of :func:`all_words`.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    words = all_words(n)
    start = 0 if include_empty_code else 1
    for mask in range(start, 2 ** len(words)):
        yield NeuralCode(n, (w for k, w in enumerate(words) if mask >> k & 1))


def code_from_mask(n: int, mask: int) -> NeuralCode:
    """The code selected by ``mask`` in the enumeration order of :func:`enumerate_codes`."""
    words = all_words(n)
    if not 0 <= mask < 2 ** len(words):
        raise ValueError(f"mask {mask} out of range for n={n}")
    return NeuralCode(n, (w for k, w in enumerate(words) if mask >> k & 1))
