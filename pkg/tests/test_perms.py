"""Permutation arithmetic sanity, with randomized algebraic laws."""

from hypothesis import given
from hypothesis import strategies as st

from fusionkit import perms


def perm_st(degree=6):
    return st.permutations(range(degree)).map(tuple)


@given(perm_st(), perm_st(), perm_st())
def test_mul_associative(a, b, c):
    assert perms.mul(perms.mul(a, b), c) == perms.mul(a, perms.mul(b, c))


@given(perm_st())
def test_identity_and_inverse(p):
    e = perms.identity(6)
    assert perms.mul(p, e) == p
    assert perms.mul(e, p) == p
    assert perms.mul(p, perms.inverse(p)) == e
    assert perms.mul(perms.inverse(p), p) == e


@given(perm_st())
def test_power_order(p):
    n = perms.order(p)
    assert n >= 1
    assert perms.power(p, n) == perms.identity(6)
    for k in range(1, n):
        assert perms.power(p, k) != perms.identity(6)


@given(perm_st(), perm_st(), perm_st())
def test_conjugate_is_right_action(x, g, h):
    gh = perms.mul(g, h)
    assert perms.conjugate(x, gh) == perms.conjugate(perms.conjugate(x, g), h)


@given(perm_st())
def test_power_negative_is_inverse_power(p):
    assert perms.power(p, -1) == perms.inverse(p)
    assert perms.power(p, -3) == perms.inverse(perms.power(p, 3))


def test_from_cycles_and_string():
    p = perms.from_cycles(4, [(0, 1, 2, 3)])
    assert p == (1, 2, 3, 0)
    assert perms.order(p) == 4
    assert perms.cycle_string(p) == "(0 1 2 3)"
    assert perms.cycle_string(perms.identity(3)) == "()"


@given(perm_st(4), perm_st(3))
def test_direct_sum_blocks(a, b):
    s = perms.direct_sum(a, b)
    assert len(s) == 7
    assert s[:4] == a
    assert tuple(x - 4 for x in s[4:]) == b


def test_is_perm_rejects():
    assert perms.is_perm((0, 1, 2))
    assert not perms.is_perm((0, 0, 2))
    assert not perms.is_perm((0, 1, 3))
