import json
from fractions import Fraction
from math import gcd
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab.arith import binom_poly
from syzlab.catalog import compressed_gorenstein, eagon_northcott, koszul
from syzlab.nodes import SyzygyId, dual, line_sum, syzygy, tensor, twist
from syzlab.resolution import (
    InvalidResolution,
    PureResolution,
    betti_inequalities,
    dualize,
    euler_char,
    hilbert_defect,
    hk_betti,
    normalize,
    require_valid,
    syzygy_rank_c1,
    validate,
)

from corpus import corpus


def defect_values(res, ts):
    n = res.n
    return [
        sum((-1) ** i * b * binom_poly(t - d + n, n) for i, (d, b) in enumerate(zip(res.degrees, res.betti)))
        for t in ts
    ]


def from_binomial_basis(coeffs, t):
    return sum(c * binom_poly(t, k) for k, c in enumerate(coeffs))


degree_seqs = st.integers(min_value=2, max_value=5).flatmap(
    lambda n: st.lists(st.integers(min_value=1, max_value=18), min_size=n + 1, max_size=n + 1, unique=True).map(
        lambda xs: (n, (0, *sorted(xs)))
    )
)


def test_validate_examples():
    assert validate(PureResolution(2, (0, 1, 2, 3), (1, 3, 3, 1))).ok
    bad = validate(PureResolution(2, (0, 1, 2, 3), (1, 3, 3, 2)))
    assert not bad.ok and bad.defect is not None and any(bad.defect)
    mono = validate(PureResolution(2, (0, 2, 1, 3), (1, 3, 3, 1)))
    assert any("strictly increasing" in v for v in mono.violations)
    assert any("not positive" in v for v in validate(PureResolution(2, (0, 1, 2, 3), (1, 3, 0, 1))).violations)


def test_construction_rejects_bad_shapes():
    with pytest.raises(InvalidResolution):
        PureResolution(1, (0, 1, 2), (1, 2, 1))
    with pytest.raises(InvalidResolution):
        PureResolution(2, (0, 1, 2), (1, 3, 3, 1))
    with pytest.raises(InvalidResolution):
        require_valid(PureResolution(2, (0, 1, 2, 3), (1, 3, 3, 2)))


def test_defect_examples():
    assert hilbert_defect(koszul(3)) == (0, 0, 0, 0)
    assert hilbert_defect(PureResolution(3, (0, 2, 3, 4, 5), (1, 10, 20, 15, 4))) == (0, 0, 0, 0)
    bad = PureResolution(2, (0, 1, 2, 3), (1, 3, 3, 2))
    coeffs = hilbert_defect(bad)
    # the extra O(-3) contributes -chi(O(t-3)) = -binom_poly(t-1, 2)
    for t in range(-6, 7):
        assert from_binomial_basis(coeffs, t) == -binom_poly(t - 1, 2)


@given(degree_seqs, st.lists(st.integers(min_value=1, max_value=9), min_size=7, max_size=7))
def test_defect_coefficients_match_evaluation(nd, bs):
    n, degrees = nd
    res = PureResolution(n, degrees, tuple(bs[: n + 2]))
    coeffs = hilbert_defect(res)
    for t, value in zip(range(-8, 9), defect_values(res, range(-8, 9))):
        assert from_binomial_basis(coeffs, t) == value
    # a degree-n polynomial vanishes iff it vanishes at n+1 points
    assert (not any(coeffs)) == (not any(defect_values(res, range(n + 1))))


def test_hk_examples():
    assert hk_betti((0, 1, 2, 3)) == (1, 3, 3, 1)
    assert hk_betti((0, 3, 4, 7), 2) == (1, 7, 7, 1)
    assert hk_betti((0, 2, 4, 6, 8), 3) == (1, 4, 6, 4, 1)
    with pytest.raises(InvalidResolution):
        hk_betti((0, 2, 1, 3))
    with pytest.raises(InvalidResolution):
        hk_betti((0, 1, 2, 3), 3)


def nullspace_vector(n, degrees):
    """Independent oracle: solve the exactness system by Gaussian elimination."""
    rows = [[Fraction((-1) ** i * binom_poly(t - d + n, n)) for i, d in enumerate(degrees)] for t in range(n + 1)]
    m = n + 2
    pivots = []
    r = 0
    for c in range(m):
        p = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                rows[k] = [a - rows[k][c] * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    assert len(free) == 1
    vec = [Fraction(0)] * m
    vec[free[0]] = Fraction(1)
    for row, c in zip(rows, pivots):
        vec[c] = -row[free[0]]
    den = reduce(lambda a, b: a * b // gcd(a, b), [x.denominator for x in vec])
    ints = [int(x * den) for x in vec]
    g = reduce(gcd, ints)
    ints = [x // g for x in ints]
    return tuple(ints) if ints[0] > 0 else tuple(-x for x in ints)


@settings(max_examples=60, deadline=None)
@given(degree_seqs)
def test_hk_matches_linear_solve(nd):
    n, degrees = nd
    betti = hk_betti(degrees, n)
    assert betti == nullspace_vector(n, degrees)
    assert all(b > 0 for b in betti)
    assert reduce(gcd, betti) == 1
    assert validate(PureResolution(n, degrees, betti)).ok


def test_normalize():
    assert normalize(PureResolution(2, (1, 2, 3, 4), (1, 3, 3, 1))).degrees == (0, 1, 2, 3)
    r = koszul(2)
    assert normalize(r) is r
    assert normalize(PureResolution(2, (-2, 0, 1, 3), (1, 5, 5, 1))).degrees == (0, 2, 3, 5)


def test_dualize_examples():
    assert dualize(koszul(2)) == koszul(2)
    g = PureResolution(2, (0, 3, 4, 7), (1, 7, 7, 1))
    assert dualize(g) == g
    en = PureResolution(3, (0, 2, 3, 4, 5), (1, 10, 20, 15, 4))
    assert dualize(en) == PureResolution(3, (0, 1, 2, 3, 5), (4, 15, 20, 10, 1))
    assert dualize(dualize(en)) == en


@settings(deadline=None)
@given(degree_seqs)
def test_dualize_involution_keeps_exactness(nd):
    n, degrees = nd
    res = PureResolution(n, degrees, hk_betti(degrees, n))
    assert dualize(dualize(res)) == res
    assert validate(dualize(res)).ok


def test_betti_inequalities_examples():
    assert all(c.holds for c in betti_inequalities(koszul(3)))
    assert all(c.holds for c in betti_inequalities(PureResolution(3, (0, 2, 3, 4, 5), (1, 10, 20, 15, 4))))
    hypo = betti_inequalities(PureResolution(2, (0, 1, 2, 3), (1, 2, 3, 1)))
    assert not hypo[0].holds and hypo[0].value == 1


def test_minimal_betti_vector_can_break_the_inequalities():
    # exactness alone does not force b_1 - b_0 >= n for the primitive vector
    res = PureResolution(2, (0, 1, 3, 4), hk_betti((0, 1, 3, 4)))
    assert res.betti == (1, 2, 2, 1)
    assert validate(res).ok
    assert [c.holds for c in betti_inequalities(res)] == [False, False]


def test_inequality_index_ranges():
    names = [c.name for c in betti_inequalities(koszul(5))]
    assert names == [
        "b_1 - b_0 >= n",
        "b_2 >= 2n-2i+3",
        "b_3 >= 2n-2i+3",
        "b_3 >= 2i+1",
        "b_4 >= 2i+1",
        "b_n - b_{n+1} >= n",
    ]


def test_rank_c1_examples():
    assert syzygy_rank_c1(koszul(2), SyzygyId("F", 1)) == (2, -3)
    assert syzygy_rank_c1(koszul(3), SyzygyId("F", 2))[0] == 3
    for res in [koszul(4), PureResolution(3, (0, 2, 3, 4, 5), (1, 10, 20, 15, 4))]:
        n = res.n
        assert syzygy_rank_c1(res, SyzygyId("G", n - 1))[0] == res.betti[1] - res.betti[0]
    with pytest.raises(ValueError):
        syzygy_rank_c1(koszul(2), SyzygyId("F", 2))


@pytest.mark.parametrize(
    "res", [koszul(2), koszul(5), eagon_northcott(3, 1, 2), eagon_northcott(4, 2, 3), compressed_gorenstein(3, 2)]
)
def test_rank_lower_bound_on_catalog(res):
    for side in "FG":
        for i in range(1, res.n):
            assert syzygy_rank_c1(res, SyzygyId(side, i))[0] >= res.n + 1 - i


def test_rank_c1_consistent_with_euler():
    # rank is the leading behaviour of chi(F_i(t)) ~ rank * t^n / n!
    res = eagon_northcott(3, 1, 2)
    for i in (1, 2):
        rank, _ = syzygy_rank_c1(res, SyzygyId("F", i))
        diffs = [euler_char(res, syzygy("F", i), t) for t in range(10, 14)]
        for _ in range(3):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        assert diffs == [rank]


def test_euler_char_examples():
    k2 = koszul(2)
    assert euler_char(k2, syzygy("F", 1), 0) == -1
    assert euler_char(k2, tensor(SyzygyId("F", 1), SyzygyId("F", 1)), 0) == 1
    assert euler_char(k2, line_sum([(-3, 1)]), 0) == 1
    for res in corpus()[:10]:
        top, (d0, d1) = res.top, res.degrees[:2]
        assert euler_char(res, syzygy("F", 1), top) == res.betti[1] * binom_poly(d1 + res.n, res.n) - res.betti[0]


def test_euler_char_twist_and_dual_consistency():
    res = eagon_northcott(3, 1, 2)
    f2 = syzygy("F", 2)
    assert euler_char(res, twist(f2, 3), -1) == euler_char(res, f2, 2)
    # Serre duality: chi(E(t)) = (-1)^n chi(E^v(-t-n-1))
    for t in range(-8, 8):
        assert euler_char(res, f2, t) == (-1) ** 3 * euler_char(res, dual(f2), -t - 4)


def test_json_round_trip_and_big_ints():
    res = PureResolution(2, (0, 3, 4, 7), (1, 7, 7, 1))
    text = json.dumps(res.to_dict())
    assert text == '{"n": 2, "degrees": [0, 3, 4, 7], "betti": [1, 7, 7, 1]}'
    assert PureResolution.from_dict(json.loads(text)) == res
    big = 2**60
    data = PureResolution(2, (0, 1, 2, big), (1, 3, 3, 1)).to_dict()
    assert data["degrees"][-1] == str(big)
    assert PureResolution.from_dict(data).degrees[-1] == big
    with pytest.raises(InvalidResolution):
        PureResolution.from_dict({"n": 2, "degrees": [0, 1, 2, 3]})
    with pytest.raises(InvalidResolution):
        PureResolution.from_dict({"n": True, "degrees": [0, 1, 2, 3], "betti": [1, 3, 3, 1]})
