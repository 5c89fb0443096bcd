import random

from hypothesis import given, strategies as st

from cca.perms import (cycles, from_cycles, identity, is_perm, pconj, pinv,
                       pmul, porder, ppow)


def rand_perm(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


perms = st.integers(min_value=1, max_value=9).flatmap(
    lambda n: st.permutations(list(range(n))).map(tuple))


def test_identity_and_is_perm():
    assert identity(4) == (0, 1, 2, 3)
    assert is_perm((2, 0, 1))
    assert not is_perm((0, 0, 1))


def test_product_applies_left_factor_first():
    a = (1, 2, 0)   # 0 -> 1
    b = (0, 2, 1)   # 1 -> 2
    assert pmul(a, b)[0] == b[a[0]] == 2


@given(perms)
def test_inverse(a):
    n = len(a)
    assert pmul(a, pinv(a)) == identity(n)
    assert pmul(pinv(a), a) == identity(n)


def test_associativity_random():
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randrange(2, 10)
        a, b, c = (rand_perm(rng, n) for _ in range(3))
        assert pmul(pmul(a, b), c) == pmul(a, pmul(b, c))


@given(perms, st.integers(min_value=-8, max_value=8))
def test_power_matches_repeated_product(a, k):
    n = len(a)
    expect = identity(n)
    step = a if k >= 0 else pinv(a)
    for _ in range(abs(k)):
        expect = pmul(expect, step)
    assert ppow(a, k) == expect


@given(perms)
def test_order(a):
    o = porder(a)
    assert ppow(a, o) == identity(len(a))
    for d in range(1, o):
        if o % d == 0:
            assert ppow(a, d) != identity(len(a)) or d == o


@given(perms)
def test_cycles_roundtrip(a):
    assert from_cycles(len(a), cycles(a)) == a


def test_conjugation():
    g = (1, 0, 2)
    h = (0, 2, 1)
    assert pconj(g, h) == pmul(pmul(pinv(h), g), h)
    # conjugation by h relabels the moved points through h
    assert pconj(g, h) == (2, 1, 0)
