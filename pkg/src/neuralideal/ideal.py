"""Neural ideals, vanishing ideals and Groebner-basis membership over F_2."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .code import NeuralCode
from .polyring import (
    DEFAULT_ORDER,
    Monomial,
    MonomialOrder,
    Polynomial,
    PseudoMonomial,
    char_poly,
    evaluate,
    expand,
    mono_div,
    mono_lcm,
    mono_mul,
)

DEFAULT_MAX_PAIRS = 200_000


class BudgetExceeded(RuntimeError):
    """Buchberger ran past its pair or degree budget; membership is undecided."""


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of an ideal of F_2[x_1..x_n]; zero generators are dropped."""

    n: int
    generators: tuple[Polynomial, ...]
    pseudo_monomials: tuple[PseudoMonomial, ...] | None = None

    def __init__(self, n: int, generators: Iterable[Polynomial], pseudo_monomials=None):
        gens = []
        for g in generators:
            if g.n != n:
                raise ValueError(f"generator in {g.n} variables for an ideal in {n}")
            if g:
                gens.append(g)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(
            self, "pseudo_monomials", tuple(pseudo_monomials) if pseudo_monomials is not None else None
        )

    def __len__(self) -> int:
        return len(self.generators)


def neural_ideal_generators(code: NeuralCode) -> IdealPresentation:
    """Characteristic pseudo-monomials of the non-codewords, in lexicographic word order."""
    pms = [char_poly(v) for v in code.complement()]
    return IdealPresentation(code.n, (expand(pm) for pm in pms), pms)


def member_I(f: Polynomial, code: NeuralCode) -> bool:
    """True iff ``f`` vanishes on every codeword (vacuously true for the empty code)."""
    if f.n != code.n:
        raise ValueError(f"polynomial in {f.n} variables, code on {code.n} neurons")
    return all(evaluate(f, c) == 0 for c in code.words)


# -- division -------------------------------------------------------------

def _divide(terms: Iterable[Monomial], divisors, key) -> set[Monomial]:
    # divisors: sequence of (leading monomial, terms); first divisor wins
    p = set(terms)
    rem = set()
    while p:
        lt = max(p, key=key)
        for lm, gterms in divisors:
            if all(a <= b for a, b in zip(lm, lt)):
                q = tuple(b - a for a, b in zip(lm, lt))
                for t in gterms:
                    m = tuple(x + y for x, y in zip(q, t))
                    if m in p:
                        p.remove(m)
                    else:
                        p.add(m)
                break
        else:
            p.remove(lt)
            rem.add(lt)
    return rem


def reduce(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = DEFAULT_ORDER) -> Polynomial:
    """Remainder of ``f`` on multivariate division by ``basis``.

    No term of the result is divisible by a leading monomial of the
    basis.  When several basis elements could divide a term, the first
    one in ``basis`` is used.
    """
    if any(not g for g in basis):
        raise ValueError("division by the zero polynomial")
    divisors = [(g.leading_monomial(order), g.terms) for g in basis]
    return Polynomial._raw(f.n, frozenset(_divide(f.terms, divisors, order.key)))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEFAULT_ORDER) -> Polynomial:
    if not f or not g:
        raise ValueError("S-polynomial of the zero polynomial")
    a, b = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(a, b)
    return f.mul_monomial(mono_div(lcm, a)) + g.mul_monomial(mono_div(lcm, b))


# -- Groebner bases -------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    n: int
    _divisors: tuple = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_divisors", tuple((g.leading_monomial(self.order), g.terms) for g in self.basis)
        )

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.n != self.n:
            raise ValueError(f"polynomial in {f.n} variables, basis in {self.n}")
        return Polynomial._raw(f.n, frozenset(_divide(f.terms, self._divisors, self.order.key)))

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def leading_monomials(self) -> list[Monomial]:
        return [lm for lm, _ in self._divisors]

    def is_zero_ideal(self) -> bool:
        return not self.basis

    def is_unit_ideal(self) -> bool:
        return any(lm == (0,) * self.n for lm in self.leading_monomials())

    def same_ideal(self, other: "GroebnerBasis") -> bool:
        """Reduced bases under one order are unique, so set equality decides ideal equality."""
        if self.order != other.order:
            raise ValueError("comparing reduced bases computed under different orders")
        return set(self.basis) == set(other.basis)

    def is_groebner(self) -> bool:
        """Buchberger's criterion: every S-polynomial reduces to zero."""
        for f, g in itertools.combinations(self.basis, 2):
            if self.reduce(s_polynomial(f, g, self.order)):
                return False
        return True

    def is_reduced(self) -> bool:
        lms = self.leading_monomials()
        for k, g in enumerate(self.basis):
            for j, lm in enumerate(lms):
                if j == k:
                    continue
                if any(all(a <= b for a, b in zip(lm, t)) for t in g.terms):
                    return False
        return True

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)


def _interreduce(polys: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    key = order.key
    polys = sorted(polys, key=lambda g: key(g.leading_monomial(order)))
    minimal: list[Polynomial] = []
    for g in polys:
        lm = g.leading_monomial(order)
        if not any(all(a <= b for a, b in zip(h.leading_monomial(order), lm)) for h in minimal):
            minimal.append(g)
    # reducedness depends only on the leading monomials of the others, which
    # minimality leaves untouched
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        out.append(reduce(g, others, order) if others else g)
    return sorted(out, key=lambda g: key(g.leading_monomial(order)), reverse=True)


def buchberger(
    gens: IdealPresentation | Sequence[Polynomial],
    order: MonomialOrder = DEFAULT_ORDER,
    *,
    n: int | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_degree: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed lowest lcm degree first, and pairs whose leading
    monomials are coprime are skipped.  Exceeding ``max_pairs`` or
    producing a basis element above ``max_degree`` raises
    :class:`BudgetExceeded`.
    """
    if isinstance(gens, IdealPresentation):
        n = gens.n
        polys = list(gens.generators)
    else:
        polys = [g for g in gens if g]
        if n is None:
            if not polys:
                raise ValueError("n is required for an empty generator list")
            n = polys[0].n
    one = Polynomial.one(n)
    if not polys:
        return GroebnerBasis(order, (), n)

    G: list[Polynomial] = []
    lms: list[Monomial] = []
    seen = set()
    for g in polys:
        if g not in seen:
            seen.add(g)
            G.append(g)
            lms.append(g.leading_monomial(order))
    if any(sum(lm) == 0 for lm in lms):
        return GroebnerBasis(order, (one,), n)

    heap: list = []
    counter = itertools.count()

    def push(i: int, j: int):
        lcm = mono_lcm(lms[i], lms[j])
        heapq.heappush(heap, (sum(lcm), next(counter), i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)

    processed = 0
    key = order.key
    while heap:
        _, _, i, j = heapq.heappop(heap)
        a, b = lms[i], lms[j]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        processed += 1
        if processed > max_pairs:
            raise BudgetExceeded(f"more than {max_pairs} S-pairs processed")
        lcm = mono_lcm(a, b)
        s = G[i].mul_monomial(mono_div(lcm, a)) + G[j].mul_monomial(mono_div(lcm, b))
        divisors = list(zip(lms, (g.terms for g in G)))
        r = Polynomial._raw(n, frozenset(_divide(s.terms, divisors, key)))
        if not r:
            continue
        lm = r.leading_monomial(order)
        if sum(lm) == 0:
            return GroebnerBasis(order, (one,), n)
        if max_degree is not None and r.total_degree > max_degree:
            raise BudgetExceeded(f"intermediate degree {r.total_degree} exceeds {max_degree}")
        G.append(r)
        lms.append(lm)
        new = len(G) - 1
        for k in range(new):
            push(k, new)
    return GroebnerBasis(order, tuple(_interreduce(G, order)), n)


@lru_cache(maxsize=8192)
def code_groebner_basis(
    code: NeuralCode,
    order: MonomialOrder = DEFAULT_ORDER,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_degree: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the neural ideal of ``code``, cached per (code, order)."""
    return buchberger(neural_ideal_generators(code), order, max_pairs=max_pairs, max_degree=max_degree)


def member_J(
    f: Polynomial,
    code: NeuralCode,
    order: MonomialOrder = DEFAULT_ORDER,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_degree: int | None = None,
) -> bool:
    """Decide ``f`` in the neural ideal by reduction modulo its reduced Groebner basis."""
    if f.n != code.n:
        raise ValueError(f"polynomial in {f.n} variables, code on {code.n} neurons")
    return code_groebner_basis(code, order, max_pairs, max_degree).contains(f)


# -- linear-span certificates ---------------------------------------------

def _monomials_up_to(n: int, d: int):
    for total in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            m = [0] * n
            for v in combo:
                m[v] += 1
            yield tuple(m)


def span_certificate(
    f: Polynomial, gens: IdealPresentation, max_degree: int
) -> list[tuple[Monomial, int]] | None:
    """Search for ``f`` as an F_2-sum of products ``m * g`` with degree at most ``max_degree``.

    Returns a list of ``(multiplier, generator index)`` pairs whose
    products sum to ``f``, or ``None`` when no such combination exists
    at this degree.  ``None`` is inconclusive, not a proof of
    non-membership.
    """
    if f.n != gens.n:
        raise ValueError(f"polynomial in {f.n} variables, ideal in {gens.n}")
    if not f:
        return []
    if f.total_degree > max_degree:
        return None
    index: dict[Monomial, int] = {}

    def vec(terms) -> int:
        v = 0
        for t in terms:
            k = index.setdefault(t, len(index))
            v ^= 1 << k
        return v

    columns: list[tuple[Monomial, int]] = []
    pivots: dict[int, tuple[int, int]] = {}
    for gi, g in enumerate(gens.generators):
        room = max_degree - g.total_degree
        if room < 0:
            continue
        for m in _monomials_up_to(gens.n, room):
            c = len(columns)
            columns.append((m, gi))
            v, combo = vec(mono_mul(m, t) for t in g.terms), 1 << c
            while v:
                hb = v.bit_length() - 1
                if hb not in pivots:
                    pivots[hb] = (v, combo)
                    break
                pv, pc = pivots[hb]
                v ^= pv
                combo ^= pc

    target, combo = vec(f.terms), 0
    while target:
        hb = target.bit_length() - 1
        if hb not in pivots:
            return None
        pv, pc = pivots[hb]
        target ^= pv
        combo ^= pc
    return [columns[c] for c in range(len(columns)) if combo >> c & 1]


def expand_certificate(cert: Sequence[tuple[Monomial, int]], gens: IdealPresentation) -> Polynomial:
    """Recombine a certificate into the polynomial it represents."""
    total = Polynomial.zero(gens.n)
    for m, gi in cert:
        total = total + gens.generators[gi].mul_monomial(m)
    return total


# -- membership oracles ---------------------------------------------------

@dataclass(frozen=True)
class Membership:
    """Membership oracle for J_C (Groebner reduction) and I(C) (evaluation)."""

    order: MonomialOrder = DEFAULT_ORDER
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_degree: int | None = None

    def in_J(self, f: Polynomial, code: NeuralCode) -> bool:
        return member_J(f, code, self.order, self.max_pairs, self.max_degree)

    def in_I(self, f: Polynomial, code: NeuralCode) -> bool:
        return member_I(f, code)


@dataclass(frozen=True)
class NegatedMembership(Membership):
    """Deliberately wrong oracle used to check that the harness notices."""

    def in_J(self, f: Polynomial, code: NeuralCode) -> bool:
        return not super().in_J(f, code)

    def in_I(self, f: Polynomial, code: NeuralCode) -> bool:
        return not super().in_I(f, code)
