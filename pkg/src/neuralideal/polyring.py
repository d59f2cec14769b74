"""Sparse polynomials over F_2[x_1, ..., x_n].

Monomials are plain exponent tuples.  Exponents are never reduced by
``x^2 = x``: the ring is F_2[x], not the ring of Boolean functions, so
``(1 + x1)^2`` and ``1 + x1^2`` are the same nonzero polynomial and
``x1 + x1^2`` is not the zero polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .code import Codeword

Monomial = tuple[int, ...]

ORDER_KINDS = ("lex", "grlex", "grevlex")


# -- monomials ------------------------------------------------------------

def degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def one_monomial(n: int) -> Monomial:
    return (0,) * n


def squarefree_monomial(indices: Iterable[int], n: int) -> Monomial:
    s = set(indices)
    return tuple(1 if i in s else 0 for i in range(1, n + 1))


# -- orders ---------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``lex``, ``grlex`` or ``grevlex``.

    ``priority`` lists 1-based variable indices from most to least
    significant; ``None`` means x1 > x2 > ... > xn.
    """

    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None
    _memo: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}; expected one of {ORDER_KINDS}")
        if self.priority is not None:
            p = tuple(self.priority)
            if sorted(p) != list(range(1, len(p) + 1)):
                raise ValueError(f"priority {p} is not a permutation of 1..{len(p)}")
            object.__setattr__(self, "priority", p)

    def key(self, m: Monomial):
        """Sort key: larger key means larger monomial."""
        k = self._memo.get(m)
        if k is None:
            k = self._memo[m] = self._compute_key(m)
        return k

    def _compute_key(self, m: Monomial):
        if self.priority is not None:
            if len(self.priority) != len(m):
                raise ValueError(f"order defined for {len(self.priority)} variables, monomial has {len(m)}")
            m = tuple(m[p - 1] for p in self.priority)
        if self.kind == "lex":
            return m
        if self.kind == "grlex":
            return (sum(m), m)
        return (sum(m), tuple(-e for e in reversed(m)))

    def reversed_priority(self, n: int) -> "MonomialOrder":
        base = self.priority or tuple(range(1, n + 1))
        return MonomialOrder(self.kind, tuple(reversed(base)))

    def __str__(self) -> str:
        if self.priority is None:
            return self.kind
        return f"{self.kind}[{'>'.join(f'x{i}' for i in self.priority)}]"


DEFAULT_ORDER = MonomialOrder("grevlex")


def compare(order: MonomialOrder, a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


# -- polynomials ----------------------------------------------------------

class Polynomial:
    """An immutable polynomial over F_2: a finite set of monomials."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Iterable[Monomial] = ()):
        acc: set[Monomial] = set()
        for t in terms:
            t = tuple(int(e) for e in t)
            if len(t) != n or any(e < 0 for e in t):
                raise ValueError(f"bad monomial {t} for n={n}")
            acc ^= {t}
        self.n = n
        self.terms = frozenset(acc)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: frozenset) -> "Polynomial":
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, frozenset())

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls._raw(n, frozenset({one_monomial(n)}))

    @classmethod
    def var(cls, i: int, n: int) -> "Polynomial":
        if not 1 <= i <= n:
            raise IndexError(f"variable x{i} outside x1..x{n}")
        return cls._raw(n, frozenset({squarefree_monomial([i], n)}))

    @classmethod
    def monomial(cls, m: Monomial) -> "Polynomial":
        return cls(len(m), [m])

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"ring mismatch: n={self.n} vs n={other.n}")
        return None

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Polynomial._raw(self.n, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self._check(other) is NotImplemented:
            return NotImplemented
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                m = tuple(x + y for x, y in zip(a, b))
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return Polynomial._raw(self.n, frozenset(acc))

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def mul_monomial(self, m: Monomial) -> "Polynomial":
        return Polynomial._raw(self.n, frozenset(mono_mul(m, t) for t in self.terms))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.terms))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __call__(self, c) -> int:
        return evaluate(self, c)

    @property
    def total_degree(self) -> int:
        return max((sum(t) for t in self.terms), default=-1)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for t in self.terms for e in t)

    def leading_monomial(self, order: MonomialOrder = DEFAULT_ORDER) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def sorted_terms(self, order: MonomialOrder = DEFAULT_ORDER) -> list[Monomial]:
        return sorted(self.terms, key=order.key, reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, {format_poly(self)!r})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def evaluate(f: Polynomial, c) -> int:
    """Value of ``f`` at the 0/1 point ``c`` (a Codeword or bit sequence)."""
    bits = c.bits if isinstance(c, Codeword) else tuple(c)
    if len(bits) != f.n:
        raise ValueError(f"point of length {len(bits)} for a polynomial in {f.n} variables")
    val = 0
    for t in f.terms:
        for e, b in zip(t, bits):
            if e and not b:
                break
        else:
            val ^= 1
    return val


# -- pseudo-monomials -----------------------------------------------------

@dataclass(frozen=True)
class PseudoMonomial:
    """``prod_{i in sigma} x_i * prod_{j in tau} (1 + x_j)`` with disjoint index sets."""

    n: int
    sigma: frozenset[int]
    tau: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "sigma", frozenset(self.sigma))
        object.__setattr__(self, "tau", frozenset(self.tau))
        if self.sigma & self.tau:
            raise ValueError(f"sigma and tau overlap in {sorted(self.sigma & self.tau)}")
        bad = [i for i in self.sigma | self.tau if not 1 <= i <= self.n]
        if bad:
            raise ValueError(f"indices {sorted(bad)} outside [1, {self.n}]")

    def expand(self) -> Polynomial:
        return expand(self)

    def __str__(self) -> str:
        factors = [f"x{i}" for i in sorted(self.sigma)]
        factors += [f"(1+x{j})" for j in sorted(self.tau)]
        return "*".join(factors) if factors else "1"


def expand(pm: PseudoMonomial) -> Polynomial:
    """The 2^|tau| squarefree terms x_sigma * x_tau' for tau' a subset of tau."""
    n = pm.n
    tau = sorted(pm.tau)
    base = [1 if i in pm.sigma else 0 for i in range(1, n + 1)]
    terms = []
    for mask in range(2 ** len(tau)):
        m = list(base)
        for k, j in enumerate(tau):
            if mask >> k & 1:
                m[j - 1] = 1
        terms.append(tuple(m))
    return Polynomial._raw(n, frozenset(terms))


def sigma_tau_product(sigma: Iterable[int], tau: Iterable[int], n: int) -> Polynomial:
    """``x_sigma * prod_{j in tau} (1 + x_j)`` for arbitrary, possibly overlapping, index sets."""
    sigma, tau = frozenset(sigma), frozenset(tau)
    if not sigma & tau:
        return expand(PseudoMonomial(n, sigma, tau))
    f = Polynomial.monomial(squarefree_monomial(sigma, n))
    for j in sorted(tau):
        f = f * (Polynomial.one(n) + Polynomial.var(j, n))
    return f


def char_poly(v: Codeword) -> PseudoMonomial:
    """Characteristic pseudo-monomial of ``v``: equals 1 at ``v`` and 0 elsewhere on F_2^n."""
    supp = v.support
    return PseudoMonomial(v.n, supp, frozenset(range(1, v.n + 1)) - supp)


def bitflip_poly(f: Polynomial, i: int) -> Polynomial:
    """Apply the substitution x_i -> 1 + x_i."""
    if not 1 <= i <= f.n:
        raise IndexError(f"variable index {i} outside [1, {f.n}]")
    k = i - 1
    acc: set[Monomial] = set()
    for t in f.terms:
        e = t[k]
        # (1 + x)^e = sum of x^j over j with binom(e, j) odd, i.e. j a bit-submask of e
        j = e
        while True:
            m = t[:k] + (j,) + t[k + 1:]
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
            if j == 0:
                break
            j = (j - 1) & e
    return Polynomial._raw(f.n, frozenset(acc))


# -- text format ----------------------------------------------------------

def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e >= 2:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(f: Polynomial, order: MonomialOrder = DEFAULT_ORDER) -> str:
    """Fully expanded form, terms in descending ``order``; ``0`` for the zero polynomial."""
    if not f.terms:
        return "0"
    return "+".join(format_monomial(m) for m in f.sorted_terms(order))


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class _PolyParser:
    # expr := term ('+' term)* ; term := factor ('*' factor)*
    # factor := primary ('^' uint)* ; primary := '0' | '1' | 'x' uint | '(' expr ')'

    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def error(self, msg: str):
        raise PolynomialSyntaxError(msg, self.pos)

    def uint(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def parse(self) -> Polynomial:
        f = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.text[self.pos]!r}")
        return f

    def expr(self) -> Polynomial:
        f = self.term()
        while self.peek() == "+":
            self.pos += 1
            f = f + self.term()
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while self.peek() == "*":
            self.pos += 1
            f = f * self.factor()
        return f

    def factor(self) -> Polynomial:
        f = self.primary()
        while self.peek() == "^":
            self.pos += 1
            f = f ** self.uint()
        return f

    def primary(self) -> Polynomial:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            f = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return f
        if ch == "x":
            start = self.pos
            self.pos += 1
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                self.error("expected a variable index after 'x'")
            i = self.uint()
            if not 1 <= i <= self.n:
                self.pos = start
                self.error(f"variable x{i} outside x1..x{self.n}")
            return Polynomial.var(i, self.n)
        if ch in "01":
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.error("only the constants 0 and 1 are allowed")
            return Polynomial.one(self.n) if ch == "1" else Polynomial.zero(self.n)
        self.error(f"unexpected {ch!r}")


def parse_poly(text: str, n: int) -> Polynomial:
    """Parse a polynomial expression such as ``"(1+x1)*(1+x2)"`` and expand it over F_2."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return _PolyParser(text, n).parse()


def parse_monomial_order(name: str, n: int | None = None) -> MonomialOrder:
    """Order from its CLI name; a ``-rev`` suffix reverses the variable priority."""
    if name.endswith("-rev"):
        if n is None:
            raise ValueError("reversed priority needs n")
        return MonomialOrder(name[:-4]).reversed_priority(n)
    return MonomialOrder(name)

