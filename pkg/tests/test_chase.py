import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab.chase import CohomDim, Inconsistent, chase_ses

from chain_oracle import blur, corrupt, projections, random_exact_chain

K, U = CohomDim.known, CohomDim.unknown


def test_cohomdim_basics():
    assert str(K(3)) == "3"
    assert str(CohomDim.interval(1, 4)) == "1..4"
    assert str(U()) == "?"
    assert str(CohomDim(2, None)) == "?"
    for text in ["0", "7", "2..5", "?"]:
        assert str(CohomDim.parse(text)) == text
    assert K(2).scale(3) == K(6)
    assert U().scale(2) == U()
    assert K(2).meet(CohomDim.interval(0, 5)) == K(2)
    with pytest.raises(Inconsistent):
        K(2).meet(K(3))
    with pytest.raises(ValueError):
        CohomDim(3, 1)
    with pytest.raises(ValueError):
        CohomDim.interval(1, 2).value


def test_squeezed_between_zeros():
    assert chase_ses([K(0), U(), K(0)]) == [K(0), K(0), K(0)]


def test_rank_nullity():
    assert chase_ses([K(4), U(), K(7)])[1] == K(11)
    # longer: zeros elsewhere in a 3(n+1) chain
    chain = [K(0)] * 9
    chain[3], chain[4], chain[5] = K(2), U(), K(5)
    assert chase_ses(chain)[4] == K(7)


def test_partial_segment():
    out = chase_ses([U(), K(5), K(3), U()])
    assert out[0] == CohomDim.interval(2, 5)
    assert out[3] == CohomDim.interval(0, 3)
    assert projections([U(), K(5), K(3), U()]) == [(2, 5), (5, 5), (3, 3), (0, 3)]


def test_inconsistent_known_chain():
    with pytest.raises(Inconsistent):
        chase_ses([K(1), K(0), K(0)])
    with pytest.raises(Inconsistent):
        chase_ses([K(1), K(3), K(1)])


def test_empty_and_singleton():
    assert chase_ses([]) == []
    assert chase_ses([U()]) == [K(0)]


def check_against_oracle(dims, chain):
    proj = projections(chain)
    assert proj is not None
    got = chase_ses(chain)
    for j, (c, (lo, hi)) in enumerate(zip(got, proj)):
        assert c.lo <= dims[j] and (c.hi is None or dims[j] <= c.hi)
        assert c.lo <= lo and (c.hi is None or hi <= c.hi)
        # bound propagation on a path is exact
        assert (c.lo, c.hi) == (lo, hi)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_solver_equals_enumeration(seed):
    rng = random.Random(seed)
    dims = random_exact_chain(rng)
    check_against_oracle(dims, blur(rng, dims))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_corrupted_chains_rejected(seed):
    rng = random.Random(seed)
    chain = corrupt(rng, random_exact_chain(rng))
    assert projections(chain) is None
    with pytest.raises(Inconsistent):
        chase_ses(chain)


@given(st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=8))
def test_fully_known_exact_chain_is_fixed(ranks):
    ranks = [0] + ranks + [0]
    dims = [K(ranks[j] + ranks[j + 1]) for j in range(len(ranks) - 1)]
    assert chase_ses(dims) == dims
