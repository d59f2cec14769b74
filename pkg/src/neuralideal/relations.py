"""Receptive-field relations of Types 1-6 and their modified forms.

Each relation pairs a polynomial (the left-hand side, tested for
membership in the neural ideal J_C and the vanishing ideal I(C)) with a
set-theoretic statement about the receptive fields (the right-hand side,
evaluated on a realization of the code).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .code import NeuralCode, all_words
from .ideal import Membership
from .polyring import (
    Polynomial,
    PseudoMonomial,
    char_poly,
    expand,
    sigma_tau_product,
    squarefree_monomial,
)
from .realization import Realization, check_realizes, realize, region, union

DEFAULT_SCAN_CAP = 4


class RelationKind(str, Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"
    T4mod = "T4mod"
    T5mod = "T5mod"
    T6mod = "T6mod"

    def __str__(self) -> str:
        return self.value


FAMILY_KINDS = frozenset(
    {RelationKind.T5, RelationKind.T6, RelationKind.T5mod, RelationKind.T6mod}
)
PAIR_KINDS = frozenset({RelationKind.T4, RelationKind.T4mod})


class InvalidParams(ValueError):
    pass


def _fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


@dataclass(frozen=True)
class RelationParams:
    """Index sets for a relation; only the fields its kind uses are set."""

    sigma: frozenset[int] = frozenset()
    tau: frozenset[int] = frozenset()
    sigma1: frozenset[int] = frozenset()
    tau1: frozenset[int] = frozenset()
    sigma2: frozenset[int] = frozenset()
    tau2: frozenset[int] = frozenset()
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("sigma", "tau", "sigma1", "tau1", "sigma2", "tau2"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(self, "indices", tuple(self.indices))

    @classmethod
    def single(cls, sigma=(), tau=()) -> "RelationParams":
        return cls(sigma=frozenset(sigma), tau=frozenset(tau))

    @classmethod
    def pair(cls, sigma1=(), tau1=(), sigma2=(), tau2=()) -> "RelationParams":
        return cls(sigma1=frozenset(sigma1), tau1=frozenset(tau1),
                   sigma2=frozenset(sigma2), tau2=frozenset(tau2))

    @classmethod
    def family(cls, indices: Iterable[int]) -> "RelationParams":
        return cls(indices=tuple(indices))

    def text(self, kind: RelationKind) -> str:
        kind = RelationKind(kind)
        if kind is RelationKind.T1:
            return f"σ={_fmt_set(self.sigma)}"
        if kind is RelationKind.T2:
            return f"σ={_fmt_set(self.sigma)} τ={_fmt_set(self.tau)}"
        if kind is RelationKind.T3:
            return f"τ={_fmt_set(self.tau)}"
        if kind in PAIR_KINDS:
            return (f"σ1={_fmt_set(self.sigma1)} τ1={_fmt_set(self.tau1)} "
                    f"σ2={_fmt_set(self.sigma2)} τ2={_fmt_set(self.tau2)}")
        return "i=(" + ",".join(map(str, self.indices)) + ")"


def validate_params(kind: RelationKind, params: RelationParams, n: int) -> None:
    kind = RelationKind(kind)
    used = params.sigma | params.tau | params.sigma1 | params.tau1 | params.sigma2 | params.tau2
    used |= set(params.indices)
    bad = [i for i in used if not 1 <= i <= n]
    if bad:
        raise InvalidParams(f"indices {sorted(bad)} outside [1, {n}]")
    single = bool(params.sigma or params.tau)
    pair = bool(params.sigma1 or params.tau1 or params.sigma2 or params.tau2)
    if (kind in PAIR_KINDS and (single or params.indices)) or (
        kind in FAMILY_KINDS and (single or pair)
    ) or (kind not in PAIR_KINDS and kind not in FAMILY_KINDS and (pair or params.indices)):
        raise InvalidParams(f"parameters {params.text(kind)!r} do not fit {kind}")
    if kind is RelationKind.T1 and params.tau:
        raise InvalidParams("T1 takes no tau")
    if kind is RelationKind.T3 and params.sigma:
        raise InvalidParams("T3 takes no sigma")
    if kind is RelationKind.T1 and not params.sigma:
        raise InvalidParams("T1 needs a nonempty sigma")
    if kind is RelationKind.T2:
        if not params.sigma or not params.tau:
            raise InvalidParams("T2 needs nonempty sigma and tau")
        if params.sigma & params.tau:
            raise InvalidParams("T2 needs disjoint sigma and tau")
    if kind is RelationKind.T3 and not params.tau:
        raise InvalidParams("T3 needs a nonempty tau")
    if kind is RelationKind.T4mod:
        if (params.sigma1 | params.sigma2) & (params.tau1 | params.tau2):
            raise InvalidParams("T4mod needs sigma1∪sigma2 disjoint from tau1∪tau2")
    if kind in FAMILY_KINDS:
        idx = params.indices
        if len(idx) < 2:
            raise InvalidParams(f"{kind} needs at least two indices")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise InvalidParams(f"{kind} indices must be strictly increasing")


def relation_polynomial(kind: RelationKind, params: RelationParams, n: int) -> Polynomial:
    """The left-hand side polynomial; a modified kind shares its original's polynomial."""
    return _relation_polynomial(RelationKind(kind), params, n)


@lru_cache(maxsize=1 << 16)
def _relation_polynomial(kind: RelationKind, params: RelationParams, n: int) -> Polynomial:
    validate_params(kind, params, n)
    if kind in (RelationKind.T1, RelationKind.T2, RelationKind.T3):
        return expand(PseudoMonomial(n, params.sigma, params.tau))
    if kind in PAIR_KINDS:
        return (sigma_tau_product(params.sigma1, params.tau1, n)
                + sigma_tau_product(params.sigma2, params.tau2, n))
    f = Polynomial(n, [squarefree_monomial([i], n) for i in params.indices])
    if kind in (RelationKind.T6, RelationKind.T6mod):
        f = f + Polynomial.one(n)
    return f


class RhsResult(NamedTuple):
    holds: bool | None  # None: the relation's hypothesis does not apply
    witness: str | None


def rhs_holds(kind: RelationKind, params: RelationParams, R: Realization) -> RhsResult:
    """Evaluate the receptive-field side of a relation on ``R``.

    A failing statement comes with a witness naming a point of ``R``
    (and, for T5mod, the odd index set it violates).
    """
    kind = RelationKind(kind)
    validate_params(kind, params, R.n)
    X = R.space

    def first(points) -> str:
        return next(p for p in R.points if p in points)

    if kind is RelationKind.T1:
        U = region(R, params.sigma)
        return RhsResult(True, None) if not U else RhsResult(False, f"p={first(U)}")
    if kind is RelationKind.T2:
        bad = region(R, params.sigma) - union(R, params.tau)
        return RhsResult(True, None) if not bad else RhsResult(False, f"p={first(bad)}")
    if kind is RelationKind.T3:
        bad = X - union(R, params.tau)
        return RhsResult(True, None) if not bad else RhsResult(False, f"p={first(bad)}")
    if kind in PAIR_KINDS:
        A = region(R, params.sigma1, params.tau1)
        B = region(R, params.sigma2, params.tau2)
        bad = A ^ B
        return RhsResult(True, None) if not bad else RhsResult(False, f"p={first(bad)}")

    idx = params.indices
    m = len(idx)
    if kind is RelationKind.T5:
        for k in range(m):
            rest = [idx[j] for j in range(m) if j != k]
            bad = R.U(idx[k]) - union(R, rest)
            if bad:
                return RhsResult(False, f"k={k + 1} p={first(bad)}")
        if m % 2 == 1:
            common = region(R, idx)
            if common:
                return RhsResult(False, f"common p={first(common)}")
        return RhsResult(True, None)
    if kind is RelationKind.T5mod:
        for mask in range(1, 2**m):
            if bin(mask).count("1") % 2 == 0:
                continue
            inside = [idx[k] for k in range(m) if mask >> k & 1]
            outside = [idx[k] for k in range(m) if not mask >> k & 1]
            bad = region(R, inside) - union(R, outside)
            if bad:
                return RhsResult(False, f"S={_fmt_set(inside)} p={first(bad)}")
        return RhsResult(True, None)
    if kind is RelationKind.T6:
        bad = X - union(R, idx)
        return RhsResult(True, None) if not bad else RhsResult(False, f"p={first(bad)}")
    # T6mod
    for a, b in itertools.combinations(idx, 2):
        overlap = R.U(a) & R.U(b)
        if overlap:
            return RhsResult(None, f"U{a}∩U{b} p={first(overlap)}")
    bad = X - union(R, idx)
    return RhsResult(True, None) if not bad else RhsResult(False, f"p={first(bad)}")


@dataclass(frozen=True)
class RelationVerdict:
    kind: RelationKind
    params: RelationParams
    lhs_in_J: bool
    lhs_in_I: bool
    rhs_holds: bool | None
    witness: str | None = None

    @property
    def params_text(self) -> str:
        return self.params.text(self.kind)

    def to_record(self) -> dict:
        return {
            "kind": str(self.kind),
            "params": self.params_text,
            "in_J": self.lhs_in_J,
            "in_I": self.lhs_in_I,
            "rhs": self.rhs_holds,
            "witness": self.witness,
        }

    def text(self) -> str:
        rhs = "-" if self.rhs_holds is None else int(self.rhs_holds)
        line = f"{self.kind} {self.params_text}: J={int(self.lhs_in_J)} I={int(self.lhs_in_I)} RHS={rhs}"
        if self.witness:
            line += f" [{self.witness}]"
        return line


def check_relation(
    code: NeuralCode,
    kind: RelationKind,
    params: RelationParams,
    membership: Membership | None = None,
    realization: Realization | None = None,
) -> RelationVerdict:
    """Three-way verdict: LHS in J_C, LHS in I(C), and the RHS on a realization of C."""
    kind = RelationKind(kind)
    membership = membership or Membership()
    if not code:
        raise ValueError("relations need a nonempty code")
    if realization is None:
        realization = realize(code)
    else:
        check_realizes(realization, code)
    return _verdict(code, kind, params, membership, realization)


def _verdict(code, kind, params, membership, realization) -> RelationVerdict:
    f = relation_polynomial(kind, params, code.n)
    rhs = rhs_holds(kind, params, realization)
    return RelationVerdict(
        kind, params, membership.in_J(f, code), membership.in_I(f, code), rhs.holds, rhs.witness
    )


# -- parameter sweeps -----------------------------------------------------

def _subset(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def iter_params(kind: RelationKind, n: int) -> Iterator[RelationParams]:
    """Every valid parameter assignment, index sets in increasing bitmask order.

    Counts: T1 and T3 have 2^n - 1; T2 has 3^n - 2^(n+1) + 1; T4 has
    16^n (overlaps allowed); T4mod has 7^n; the T5/T6 families have
    2^n - n - 1 (one per index set of size at least two).
    """
    kind = RelationKind(kind)
    full = 2**n
    if kind is RelationKind.T1:
        for s in range(1, full):
            yield RelationParams.single(sigma=_subset(s))
    elif kind is RelationKind.T2:
        for s in range(1, full):
            for t in range(1, full):
                if not s & t:
                    yield RelationParams.single(_subset(s), _subset(t))
    elif kind is RelationKind.T3:
        for t in range(1, full):
            yield RelationParams.single(tau=_subset(t))
    elif kind in PAIR_KINDS:
        for s1, t1, s2, t2 in itertools.product(range(full), repeat=4):
            if kind is RelationKind.T4mod and (s1 | s2) & (t1 | t2):
                continue
            yield RelationParams.pair(_subset(s1), _subset(t1), _subset(s2), _subset(t2))
    else:
        for mask in range(full):
            if bin(mask).count("1") >= 2:
                yield RelationParams.family(sorted(_subset(mask)))


def param_count(kind: RelationKind, n: int) -> int:
    kind = RelationKind(kind)
    if kind in (RelationKind.T1, RelationKind.T3):
        return 2**n - 1
    if kind is RelationKind.T2:
        return 3**n - 2 ** (n + 1) + 1
    if kind is RelationKind.T4:
        return 16**n
    if kind is RelationKind.T4mod:
        return 7**n
    return 2**n - n - 1


def scan_relations(
    code: NeuralCode,
    kinds: Iterable[RelationKind],
    membership: Membership | None = None,
    cap: int = DEFAULT_SCAN_CAP,
) -> list[RelationVerdict]:
    """Verdicts for every valid parameter assignment of each requested kind."""
    if code.n > cap:
        raise ValueError(f"n={code.n} exceeds the scan cap {cap}")
    membership = membership or Membership()
    if not code:
        raise ValueError("relations need a nonempty code")
    R = realize(code)
    order = list(RelationKind)
    out = []
    for kind in sorted({RelationKind(k) for k in kinds}, key=order.index):
        for params in iter_params(kind, code.n):
            out.append(_verdict(code, kind, params, membership, R))
    return out


# -- symbolic identities used in the modified Type 4-6 proofs --------------

def modified_t5_sum(m: int) -> Polynomial:
    """Sum over odd-size S of [m] of x_S * prod_{j not in S} (1 + x_j), expanded."""
    if m < 1:
        raise ValueError("m must be at least 1")
    full = frozenset(range(1, m + 1))
    f = Polynomial.zero(m)
    for mask in range(1, 2**m):
        S = _subset(mask)
        if len(S) % 2:
            f = f + expand(PseudoMonomial(m, S, full - S))
    return f


def modified_t6_sum(m: int) -> Polynomial:
    """prod (1 + x_i) plus every x_S with |S| >= 2, expanded."""
    if m < 1:
        raise ValueError("m must be at least 1")
    full = frozenset(range(1, m + 1))
    f = expand(PseudoMonomial(m, frozenset(), full))
    for mask in range(2**m):
        S = _subset(mask)
        if len(S) >= 2:
            f = f + Polynomial.monomial(squarefree_monomial(S, m))
    return f


def t4_case1_sum(code: NeuralCode, sigma1: Iterable[int], sigma2: Iterable[int]) -> Polynomial:
    """Sum of p_c over words c containing exactly one of sigma1, sigma2.

    Only ``code.n`` is used: the sum ranges over all of F_2^n.
    """
    n = code.n
    s1, s2 = frozenset(sigma1), frozenset(sigma2)
    if not s1 or not s2 or s1 == s2:
        raise InvalidParams("sigma1 and sigma2 must be nonempty and distinct")
    if any(not 1 <= i <= n for i in s1 | s2):
        raise InvalidParams(f"indices outside [1, {n}]")
    f = Polynomial.zero(n)
    for w in all_words(n):
        supp = w.support
        if (s1 <= supp) != (s2 <= supp):
            f = f + expand(char_poly(w))
    return f
