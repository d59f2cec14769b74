import itertools
import random

import pytest

from neuralideal.code import NeuralCode, code_from_mask, enumerate_codes, parse_code
from neuralideal.realization import (
    Realization,
    check_realizes,
    code_of_realization,
    format_realization,
    parse_realization,
    realize,
    region,
    union,
)


def test_canonical_fig1_code():
    R = realize(parse_code("e,3,13,23", 3))
    assert len(R.points) == 4
    assert R.U(1) == {"101"}
    assert R.U(2) == {"011"}
    assert R.U(3) == {"001", "101", "011"}
    assert region(R, {1, 2}) == frozenset()


def test_region_and_union_conventions():
    R = realize(parse_code("e,3,13,23", 3))
    assert region(R, ()) == R.space
    assert region(R, {3}, {1}) == {"001", "011"}
    assert union(R, ()) == frozenset()
    assert union(R, {1, 2}) == {"101", "011"}


def test_realize_rejects_empty_code():
    with pytest.raises(ValueError):
        realize(NeuralCode(2, []))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_round_trip_exhaustive(n):
    for code in enumerate_codes(n):
        assert code_of_realization(realize(code)) == code


def test_round_trip_sampled_n4():
    rng = random.Random(7)
    for mask in rng.sample(range(1, 2**16), 300):
        code = code_from_mask(4, mask)
        assert code_of_realization(realize(code)) == code


@pytest.mark.parametrize("n", [1, 2, 3])
def test_regions_match_supports(n):
    for code in enumerate_codes(n):
        R = realize(code)
        for s, t in itertools.product(range(2**n), repeat=2):
            sigma = {i + 1 for i in range(n) if s >> i & 1}
            tau = {i + 1 for i in range(n) if t >> i & 1}
            got = region(R, sigma, tau)
            for w in code:
                assert (str(w) in got) == (sigma <= w.support and not (tau & w.support))


def test_parse_format_round_trip():
    text = "a: 1,2\nb: -\nc: 3  # note\n"
    R = parse_realization(text, 3)
    assert R.points == ("a", "b", "c")
    assert R.U(1) == {"a"} and R.U(3) == {"c"}
    assert parse_realization(format_realization(R), 3) == R
    assert code_of_realization(R) == parse_code("000,001,110", 3)


@pytest.mark.parametrize("text", ["a 1", "a: 4", "a: x", ": 1"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_realization(text, 3)


def test_validation():
    with pytest.raises(ValueError):
        Realization((), (frozenset(),))
    with pytest.raises(ValueError):
        Realization(("a", "a"), (frozenset(),))
    with pytest.raises(ValueError):
        Realization(("a",), (frozenset({"b"}),))
    R = realize(parse_code("1,2", 2))
    check_realizes(R, parse_code("1,2", 2))
    with pytest.raises(ValueError):
        check_realizes(R, parse_code("1,2,12", 2))
    with pytest.raises(ValueError):
        check_realizes(R, parse_code("1", 1))
