"""Executable checks of the counterexamples and theorems about Type 1-6 relations.

Every check produces a :class:`Claim` record.  Claims are data: each one
names a universe of codes, the relation kinds it sweeps and a predicate
on individual verdicts, so new checks can be added to the tables below
without touching the sweep machinery.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .code import NeuralCode, bitflip_code, code_from_mask, enumerate_codes, format_code, parse_code
from .ideal import BudgetExceeded, Membership, buchberger, code_groebner_basis, neural_ideal_generators
from .polyring import DEFAULT_ORDER, MonomialOrder, bitflip_poly
from .realization import realize
from .relations import (
    RelationKind,
    RelationParams,
    RelationVerdict,
    _verdict,
    check_relation,
    iter_params,
)

K = RelationKind
MAX_STORED_COUNTEREXAMPLES = 25
DEFAULT_SAMPLE = 1000
DEFAULT_SEED = 1


@dataclass
class Claim:
    id: str
    universe: str
    counterexamples: list[dict] = field(default_factory=list)
    codes_checked: int = 0
    params_checked: int = 0
    violations: int = 0
    undecided: int = 0

    @property
    def status(self) -> str:
        if self.violations:
            return "fail"
        if self.undecided:
            return "undecided"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def add_violation(self, record: dict) -> None:
        self.violations += 1
        if len(self.counterexamples) < MAX_STORED_COUNTEREXAMPLES:
            self.counterexamples.append(record)

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "universe": self.universe,
            "status": self.status,
            "counterexamples": sorted(self.counterexamples, key=_cx_sort_key),
            "counts": {
                "codes": self.codes_checked,
                "params": self.params_checked,
                "violations": self.violations,
                "undecided": self.undecided,
            },
        }

    def summary(self) -> str:
        return (f"{self.status.upper():9s} {self.id}: codes={self.codes_checked} "
                f"params={self.params_checked} violations={self.violations} "
                f"undecided={self.undecided}  [{self.universe}]")


def _cx_sort_key(rec: dict):
    return (rec.get("n", 0), rec.get("code", ""), rec.get("kind", ""), rec.get("params", ""))


def counterexample_record(code: NeuralCode, verdict: RelationVerdict) -> dict:
    return {
        "n": code.n,
        "code": format_code(code),
        "kind": str(verdict.kind),
        "params": verdict.params_text,
        "verdict": verdict.to_record(),
    }


def merge_claims(claims: Iterable[Claim]) -> list[Claim]:
    """Combine claims sharing an id by adding counts; output sorted by id."""
    merged: dict[str, Claim] = {}
    for c in claims:
        m = merged.get(c.id)
        if m is None:
            merged[c.id] = Claim(c.id, c.universe, list(c.counterexamples), c.codes_checked,
                                 c.params_checked, c.violations, c.undecided)
            continue
        if c.universe not in m.universe.split("; "):
            m.universe = f"{m.universe}; {c.universe}"
        m.codes_checked += c.codes_checked
        m.params_checked += c.params_checked
        m.violations += c.violations
        m.undecided += c.undecided
        room = MAX_STORED_COUNTEREXAMPLES - len(m.counterexamples)
        m.counterexamples.extend(c.counterexamples[:max(room, 0)])
    for m in merged.values():
        m.counterexamples.sort(key=_cx_sort_key)
    return sorted(merged.values(), key=lambda c: c.id)


# -- params text round trip (for replaying counterexamples) ---------------

_SET_RE = re.compile(r"(σ1|τ1|σ2|τ2|σ|τ)=\{([0-9,]*)\}")
_IDX_RE = re.compile(r"i=\(([0-9,]*)\)")
_FIELD = {"σ": "sigma", "τ": "tau", "σ1": "sigma1", "τ1": "tau1", "σ2": "sigma2", "τ2": "tau2"}


def parse_params_text(text: str) -> RelationParams:
    m = _IDX_RE.fullmatch(text.strip())
    if m:
        return RelationParams.family(int(x) for x in m.group(1).split(",") if x)
    fields = {}
    for name, body in _SET_RE.findall(text):
        fields[_FIELD[name]] = frozenset(int(x) for x in body.split(",") if x)
    if not fields:
        raise ValueError(f"cannot parse relation parameters {text!r}")
    return RelationParams(**fields)


def replay(record: dict, membership: Membership | None = None) -> RelationVerdict:
    """Recompute the verdict of a stored counterexample record."""
    code = parse_code(record["code"], record["n"])
    return check_relation(code, K(record["kind"]), parse_params_text(record["params"]), membership)


# -- counterexamples ------------------------------------------------------

@dataclass(frozen=True)
class _Instance:
    id: str
    code: str
    n: int
    kind: RelationKind
    params: RelationParams
    expect: dict  # verdict field -> required value


COUNTEREXAMPLES = (
    # converse of Type 4 fails at J_C, yet the polynomial lies in I(C)
    _Instance("thm-3.2-t4", "e,1,2,12", 2, K.T4, RelationParams.pair({1}, {1}, {2}, {2}),
              {"rhs_holds": True, "lhs_in_J": False, "lhs_in_I": True}),
    # the I(C)-level converse of Type 4 holds on the same instance
    _Instance("rem-3-t4-in-I", "e,1,2,12", 2, K.T4, RelationParams.pair({1}, {1}, {2}, {2}),
              {"rhs_holds": True, "lhs_in_I": True}),
    _Instance("lem-3.1-t5", "e,12,13,14,123", 4, K.T5, RelationParams.family((1, 2, 3, 4)),
              {"rhs_holds": True, "lhs_in_I": False, "lhs_in_J": False}),
    _Instance("lem-3.1-t5-odd", "e,12,13,14,123,145", 5, K.T5, RelationParams.family((1, 2, 3, 4, 5)),
              {"rhs_holds": True, "lhs_in_I": False, "lhs_in_J": False}),
    _Instance("lem-3.1-t6", "1,2,12", 2, K.T6, RelationParams.family((1, 2)),
              {"rhs_holds": True, "lhs_in_I": False, "lhs_in_J": False}),
)


def verify_counterexamples(membership: Membership | None = None) -> list[Claim]:
    """Reproduce the verdict pattern of each published counterexample."""
    out = []
    for inst in COUNTEREXAMPLES:
        code = parse_code(inst.code, inst.n)
        claim = Claim(inst.id, f"n={inst.n}: C={{{inst.code}}}, {inst.kind} {inst.params.text(inst.kind)}")
        try:
            v = check_relation(code, inst.kind, inst.params, membership)
        except BudgetExceeded:
            claim.undecided += 1
        else:
            claim.codes_checked = claim.params_checked = 1
            if any(getattr(v, k) != want for k, want in inst.expect.items()):
                claim.add_violation(counterexample_record(code, v))
        out.append(claim)
    return out


# -- sweeps ---------------------------------------------------------------

Predicate = Callable[[RelationVerdict], "bool | None"]


def _iff(*xs) -> bool:
    return all(x == xs[0] for x in xs)


def _applicable(v: RelationVerdict) -> bool:
    return v.rhs_holds is not None


@dataclass(frozen=True)
class SweepClaim:
    id: str
    kinds: tuple[RelationKind, ...]
    # returns True (holds), False (violation) or None (instance not covered)
    predicate: Predicate


EQUIVALENCE_CLAIMS = (
    SweepClaim("prop-2.5", (K.T1, K.T2, K.T3),
               lambda v: _iff(v.lhs_in_J, v.lhs_in_I, v.rhs_holds)),
    SweepClaim("prop-2.6", (K.T4, K.T5, K.T6),
               lambda v: (not v.lhs_in_J) or bool(v.rhs_holds)),
    SweepClaim("thm-4.1", (K.T4mod, K.T5mod, K.T6mod),
               lambda v: _iff(v.lhs_in_J, v.rhs_holds) if _applicable(v) else None),
    SweepClaim("thm-4.2", (K.T4mod, K.T5mod, K.T6mod),
               lambda v: _iff(v.lhs_in_I, v.rhs_holds) if _applicable(v) else None),
    SweepClaim("cor-4.3", (K.T4mod, K.T5mod, K.T6mod),
               lambda v: _iff(v.lhs_in_J, v.lhs_in_I, v.rhs_holds) if _applicable(v) else None),
    SweepClaim("cor-4.4", (K.T4,),
               lambda v: _iff(v.lhs_in_I, v.rhs_holds)),
)

SMALL_N_CLAIMS = {
    # converses of the original relations, which hold at these small n
    "thm-3.3-t4": (SweepClaim("thm-3.3-t4", (K.T4,), lambda v: (not v.rhs_holds) or v.lhs_in_J), (1,)),
    "thm-3.3-t5": (SweepClaim("thm-3.3-t5", (K.T5,), lambda v: (not v.rhs_holds) or v.lhs_in_J), (1, 2, 3)),
    "thm-3.3-t6": (SweepClaim("thm-3.3-t6", (K.T6,), lambda v: (not v.rhs_holds) or v.lhs_in_J), (1,)),
}

# cor-4.4 sweeps 16^n parameter sets per code, which is only desk-scale for n <= 3
FULL_SWEEP_MAX_N = 3


def _sweep(
    claims: Sequence[SweepClaim],
    codes: Iterable[NeuralCode],
    universe: str,
    membership: Membership,
    fail_fast: bool = False,
) -> list[Claim]:
    results = {c.id: Claim(c.id, universe) for c in claims}
    kinds = []
    for c in claims:
        kinds.extend(k for k in c.kinds if k not in kinds)
    by_kind = {k: [c for c in claims if k in c.kinds] for k in kinds}
    for code in codes:
        R = realize(code)
        for c in claims:
            results[c.id].codes_checked += 1
        try:
            for kind in kinds:
                for params in iter_params(kind, code.n):
                    v = _verdict(code, kind, params, membership, R)
                    for c in by_kind[kind]:
                        ok = c.predicate(v)
                        if ok is None:
                            continue
                        res = results[c.id]
                        res.params_checked += 1
                        if not ok:
                            res.add_violation(counterexample_record(code, v))
        except BudgetExceeded:
            for c in claims:
                results[c.id].undecided += 1
        if fail_fast and all(r.violations for r in results.values()):
            break
    return [results[c.id] for c in claims]


def _codes(n: int, sample: int | None, seed: int | None) -> tuple[Iterator[NeuralCode], str]:
    total = 2 ** (2**n) - 1
    if sample is None or sample >= total:
        return enumerate_codes(n, cap=max(n, 4)), f"n={n}: all {total} nonempty codes"
    seed = DEFAULT_SEED if seed is None else seed
    rng = random.Random(seed)
    masks = sorted(rng.sample(range(1, total + 1), sample))
    return (code_from_mask(n, m) for m in masks), f"n={n}: {sample} codes sampled (seed {seed})"


def verify_small_n(
    claim_id: str, membership: Membership | None = None, fail_fast: bool = False
) -> Claim:
    """Exhaustive check of a small-n converse (thm-3.3-t4, -t5 or -t6)."""
    if claim_id not in SMALL_N_CLAIMS:
        raise KeyError(f"unknown small-n claim {claim_id!r}; expected one of {sorted(SMALL_N_CLAIMS)}")
    claim_def, ns = SMALL_N_CLAIMS[claim_id]
    membership = membership or Membership()
    parts = []
    for n in ns:
        codes, universe = _codes(n, None, None)
        parts.extend(_sweep([claim_def], codes, universe, membership, fail_fast))
    return merge_claims(parts)[0]


def verify_equivalences(
    n: int,
    sample: int | None = None,
    seed: int | None = None,
    membership: Membership | None = None,
    claim_ids: Sequence[str] | None = None,
    fail_fast: bool = False,
) -> list[Claim]:
    """Sweep codes on ``n`` neurons against the iff / forward-implication claims.

    ``n <= 3`` is exhaustive by default.  ``n = 4`` needs ``sample`` (or
    ``sample=0`` for all 65535 codes), and leaves out ``cor-4.4`` unless
    it is named in ``claim_ids``.  With ``fail_fast`` the sweep stops
    once every claim has a violation, so counts are partial.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > 4:
        raise ValueError(f"n={n} exceeds the verification cap 4")
    if n == 4 and sample is None:
        raise ValueError("n=4 requires a sample size (0 for exhaustive)")
    if sample == 0:
        sample = None
    membership = membership or Membership()
    if claim_ids is None:
        defs = [c for c in EQUIVALENCE_CLAIMS if n <= FULL_SWEEP_MAX_N or c.id != "cor-4.4"]
    else:
        known = {c.id: c for c in EQUIVALENCE_CLAIMS}
        missing = [i for i in claim_ids if i not in known]
        if missing:
            raise KeyError(f"unknown claim ids {missing}")
        defs = [known[i] for i in claim_ids]
    codes, universe = _codes(n, sample, seed)
    return _sweep(defs, codes, universe, membership, fail_fast)


def verify_bitflip_ideal(n: int, order: MonomialOrder = DEFAULT_ORDER) -> Claim:
    """Check that flipping x_i in the generators of J_C gives J of the flipped code."""
    if n > 3:
        raise ValueError(f"n={n} exceeds the bit-flip check cap 3")
    claim = Claim("thm-4.1-bitflip", f"n={n}: all {2 ** (2**n) - 1} nonempty codes, all i")
    for code in enumerate_codes(n):
        claim.codes_checked += 1
        gens = neural_ideal_generators(code).generators
        for i in range(1, n + 1):
            claim.params_checked += 1
            try:
                flipped = buchberger([bitflip_poly(g, i) for g in gens], order, n=n)
                direct = code_groebner_basis(bitflip_code(code, i), order)
            except BudgetExceeded:
                claim.undecided += 1
                continue
            if not flipped.same_ideal(direct):
                claim.add_violation({"n": n, "code": format_code(code), "kind": "bitflip",
                                     "params": f"i={i}",
                                     "verdict": {"flipped_gens_gb": [str(g) for g in flipped],
                                                 "flipped_code_gb": [str(g) for g in direct]}})
    return claim


CLAIM_IDS = (
    [c.id for c in COUNTEREXAMPLES]
    + sorted(SMALL_N_CLAIMS)
    + [c.id for c in EQUIVALENCE_CLAIMS]
    + ["thm-4.1-bitflip"]
)


def verify_claim(
    claim_id: str,
    n: int = 3,
    sample: int | None = None,
    seed: int | None = None,
    membership: Membership | None = None,
) -> list[Claim]:
    """Run one claim (or ``"all"``); sweep claims cover every n' from 1 to ``n``."""
    if claim_id == "all":
        return verify_all(n, sample, seed, membership)
    if claim_id in {c.id for c in COUNTEREXAMPLES}:
        return [c for c in verify_counterexamples(membership) if c.id == claim_id]
    if claim_id in SMALL_N_CLAIMS:
        return [verify_small_n(claim_id, membership)]
    if claim_id == "thm-4.1-bitflip":
        order = membership.order if membership else DEFAULT_ORDER
        return merge_claims(verify_bitflip_ideal(k, order) for k in range(1, min(n, 3) + 1))
    if claim_id in {c.id for c in EQUIVALENCE_CLAIMS}:
        parts = []
        for k in range(1, n + 1):
            s = (DEFAULT_SAMPLE if sample is None else sample) if k >= 4 else None
            parts.extend(verify_equivalences(k, s, seed, membership, [claim_id]))
        return merge_claims(parts)
    raise KeyError(f"unknown claim id {claim_id!r}; known: {', '.join(CLAIM_IDS)}")


def verify_all(
    n: int = 3,
    sample: int | None = None,
    seed: int | None = None,
    membership: Membership | None = None,
) -> list[Claim]:
    """Every claim; sweeps cover n' = 1..n (n' = 4 sampled, default 1000 codes)."""
    claims = list(verify_counterexamples(membership))
    claims.extend(verify_small_n(cid, membership) for cid in sorted(SMALL_N_CLAIMS))
    for k in range(1, n + 1):
        s = (DEFAULT_SAMPLE if sample is None else sample) if k >= 4 else None
        claims.extend(verify_equivalences(k, s, seed, membership))
    order = membership.order if membership else DEFAULT_ORDER
    claims.extend(verify_bitflip_ideal(k, order) for k in range(1, min(n, 3) + 1))
    return merge_claims(claims)
