"""End-to-end acceptance criteria, each run against its time limit.

Every test appends one PASS/FAIL line, shown in the "acceptance criteria"
section of the terminal summary.
"""

import random
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES
from neuralideal.cli import run
from neuralideal.code import NeuralCode, all_words, enumerate_codes, parse_code
from neuralideal.ideal import (
    NegatedMembership,
    expand_certificate,
    member_I,
    member_J,
    neural_ideal_generators,
    span_certificate,
)
from neuralideal.polyring import MonomialOrder, Polynomial
from neuralideal.relations import modified_t5_sum, modified_t6_sum, t4_case1_sum
from neuralideal.verify import (
    SMALL_N_CLAIMS,
    verify_bitflip_ideal,
    verify_counterexamples,
    verify_equivalences,
    verify_small_n,
)

CODES_UP_TO_3 = 3 + 15 + 255


@contextmanager
def criterion(number, title, limit):
    """Time the body; record one line and fail if it raised or ran over ``limit`` seconds."""
    state = {"detail": ""}
    start = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        in_time = elapsed < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        detail = f" {state['detail']}" if state["detail"] else ""
        ACCEPTANCE_LINES.append(
            f"[{verdict}] criterion {number:2d}: {title} ({elapsed:.1f}s, limit {limit:g}s){detail}"
        )
    assert in_time, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


def _summary(claims):
    return "; ".join(f"{c.id} {c.status} codes={c.codes_checked} params={c.params_checked}" for c in claims)


def _call(*argv):
    import io

    out = io.StringIO()
    rc = run(list(argv), out, io.StringIO())
    return rc, out.getvalue()


def test_criterion_01_reference_ideals():
    with criterion(1, "ideal gens on reference codes", 1):
        assert _call("ideal", "gens", "--n", "2", "--code", "10,01,00") == (0, "x1*x2\n")
        assert _call("ideal", "gens", "--n", "2", "--code", "1,2,12") == (0, "(1+x1)*(1+x2)\n")
        assert _call("ideal", "gens", "--n", "2", "--code", "00,01,10,11") == (0, "")


PATTERNS = {
    "thm-3.2-t4": {"rhs": True, "in_J": False, "in_I": True},
    "rem-3-t4-in-I": {"rhs": True, "in_J": False, "in_I": True},
    "lem-3.1-t5": {"rhs": True, "in_I": False},
    "lem-3.1-t5-odd": {"rhs": True, "in_I": False},
    "lem-3.1-t6": {"rhs": True, "in_I": False},
}


def test_criterion_02_counterexamples():
    from neuralideal.verify import COUNTEREXAMPLES
    from neuralideal.relations import check_relation

    with criterion(2, "five counterexample claims", 5) as st:
        claims = verify_counterexamples()
        st["detail"] = ", ".join(f"{c.id}={c.status}" for c in claims)
        assert [c.id for c in claims] == list(PATTERNS)
        assert all(c.passed for c in claims)
        for inst in COUNTEREXAMPLES:
            rec = check_relation(parse_code(inst.code, inst.n), inst.kind, inst.params).to_record()
            assert {k: rec[k] for k in PATTERNS[inst.id]} == PATTERNS[inst.id], inst.id


def test_criterion_03_small_n_converses():
    with criterion(3, "small-n converses exhaustive", 120) as st:
        claims = [verify_small_n(cid) for cid in sorted(SMALL_N_CLAIMS)]
        st["detail"] = _summary(claims)
        t4, t5, t6 = claims
        assert all(c.passed and c.violations == 0 for c in claims)
        assert t4.codes_checked == 3 and t4.params_checked == 3 * 16
        # T5 needs m >= 2 indices, so n = 1 contributes codes but no instances
        assert t5.codes_checked == CODES_UP_TO_3
        assert t5.params_checked == 15 * 1 + 255 * 4
        assert t6.codes_checked == 3 and t6.params_checked == 0


def test_criterion_04_modified_relations():
    ids = ["thm-4.1", "thm-4.2", "cor-4.3"]
    with criterion(4, "modified relations iff, n <= 3 exhaustive", 600) as st:
        parts = [verify_equivalences(n, claim_ids=ids) for n in (1, 2, 3)]
        claims = [c for part in parts for c in part]
        st["detail"] = "violations=" + str(sum(c.violations for c in claims))
        assert all(c.passed for c in claims), _summary(claims)
        for cid in ids:
            assert sum(c.codes_checked for c in claims if c.id == cid) == CODES_UP_TO_3
    with criterion(4, "modified relations iff, n = 4 sample of 1000 (seed 1)", 1800) as st:
        claims = verify_equivalences(4, sample=1000, seed=1, claim_ids=ids)
        st["detail"] = _summary(claims)
        assert all(c.passed and c.codes_checked == 1000 for c in claims)


def test_criterion_05_original_t4_at_I():
    with criterion(5, "original Type 4 iff at I, n <= 3 exhaustive", 600) as st:
        claims = [c for n in (1, 2, 3) for c in verify_equivalences(n, claim_ids=["cor-4.4"])]
        st["detail"] = f"params={sum(c.params_checked for c in claims)}"
        assert all(c.passed for c in claims), _summary(claims)
        assert sum(c.params_checked for c in claims) == 3 * 16 + 15 * 256 + 255 * 4096


def test_criterion_06_types_1_to_3():
    with criterion(6, "Types 1-3 iff at J and I, n <= 3 exhaustive", 120) as st:
        claims = [c for n in (1, 2, 3) for c in verify_equivalences(n, claim_ids=["prop-2.5"])]
        st["detail"] = f"params={sum(c.params_checked for c in claims)}"
        assert all(c.passed for c in claims), _summary(claims)
        # per code: T1 and T3 have 2^n - 1 each, T2 has 3^n - 2^(n+1) + 1
        assert sum(c.params_checked for c in claims) == 3 * 2 + 15 * 8 + 255 * 26


def test_criterion_07_symbolic_identities():
    import itertools

    with criterion(7, "symbolic sum identities", 10) as st:
        checked = 0
        for m in range(1, 7):
            xs = Polynomial(m, [tuple(int(j == i) for j in range(m)) for i in range(m)])
            assert modified_t5_sum(m) == xs
            assert modified_t6_sum(m) == xs + Polynomial.one(m)
            checked += 2
        for n in range(1, 5):
            subsets = [frozenset(s) for k in range(1, n + 1)
                       for s in itertools.combinations(range(1, n + 1), k)]
            for s1, s2 in itertools.permutations(subsets, 2):
                mono = [tuple(int(i + 1 in s) for i in range(n)) for s in (s1, s2)]
                assert t4_case1_sum(NeuralCode.full(n), s1, s2) == Polynomial(n, mono)
                checked += 1
        st["detail"] = f"identities={checked}"


def test_criterion_08_bitflip():
    with criterion(8, "bit-flip ideal equality, n <= 3", 300) as st:
        claims = [verify_bitflip_ideal(n) for n in (1, 2, 3)]
        st["detail"] = f"checks={sum(c.params_checked for c in claims)}"
        assert all(c.passed for c in claims)
        assert sum(c.params_checked for c in claims) == 3 * 1 + 15 * 2 + 255 * 3


def _random_poly(rng, n):
    terms = [tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(rng.randint(0, 5))]
    return Polynomial(n, terms)


def _corpus(size, seed):
    """Random (f, C, bound) triples; about half are built inside J_C by construction."""
    rng = random.Random(seed)
    for _ in range(size):
        n = rng.choice((1, 2, 3, 3, 3))
        words = all_words(n)
        code = NeuralCode(n, [w for w in words if rng.random() < 0.5] or [rng.choice(words)])
        gens = neural_ideal_generators(code).generators
        if gens and rng.random() < 0.5:
            f, bound = Polynomial.zero(n), 0
            for _ in range(rng.randint(1, 3)):
                g = rng.choice(gens)
                m = tuple(rng.randint(0, 1) for _ in range(n))
                f = f + g.mul_monomial(m)
                bound = max(bound, sum(m) + g.total_degree)
            yield f, code, bound
        else:
            yield _random_poly(rng, n), code, None


def test_criterion_09_oracle_consistency():
    orders = [MonomialOrder(k) for k in ("lex", "grlex", "grevlex")]
    with criterion(9, "oracle consistency on 10^4 random pairs", 300) as st:
        pairs = members = certs = 0
        for f, code, bound in _corpus(10_000, seed=20240601):
            pairs += 1
            answers = {member_J(f, code, o) for o in orders}
            assert len(answers) == 1, (f, code)
            in_J = answers.pop()
            assert member_I(f, code) or not in_J, (f, code)
            members += in_J
            gens = neural_ideal_generators(code)
            if bound is not None:
                assert in_J
            cert = span_certificate(f, gens, bound if bound is not None else f.total_degree + 1)
            if bound is not None:
                assert cert is not None, (f, code)
            if cert is not None:
                certs += 1
                assert in_J
                assert expand_certificate(cert, gens) == f
        st["detail"] = f"pairs={pairs} in_J={members} certificates={certs}"
        assert pairs == 10_000 and certs >= 4_000


def test_criterion_10_mutation():
    neg = NegatedMembership()
    with criterion(10, "negated membership fails claims of criteria 2-6", 60) as st:
        groups = {
            2: verify_counterexamples(neg),
            3: [verify_small_n(cid, neg, fail_fast=True) for cid in sorted(SMALL_N_CLAIMS)],
            4: [c for n in (1, 2, 3) for c in verify_equivalences(
                n, membership=neg, claim_ids=["thm-4.1", "thm-4.2", "cor-4.3"], fail_fast=True)],
            5: [c for n in (1, 2, 3) for c in verify_equivalences(
                n, membership=neg, claim_ids=["cor-4.4"], fail_fast=True)],
            6: [c for n in (1, 2, 3) for c in verify_equivalences(
                n, membership=neg, claim_ids=["prop-2.5"], fail_fast=True)],
        }
        failed = {k: any(c.status == "fail" for c in cs) for k, cs in groups.items()}
        st["detail"] = "failed=" + ",".join(str(k) for k, v in failed.items() if v)
        assert all(failed.values())
        # every claim that checks at least one instance is caught on its own;
        # thm-3.3-t6 has no instances at n = 1 and cannot fail
        for cs in groups.values():
            for c in cs:
                if c.params_checked:
                    assert c.status == "fail", c.summary()
