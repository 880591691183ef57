"""Shared suite systems, built once per session.

BUILD_SECONDS records wall-clock construction time per fixture so the
acceptance tests can account for build cost honestly even when a system
was first built by an earlier test.
"""

import time

import pytest

from fusionkit import (
    FiniteGroup,
    alternating_group,
    cyclic_group,
    direct_product,
    elementary_abelian_group,
    extraspecial_plus,
    generated_fusion,
    hom_from_images,
    semidirect_product,
    subgroup_generated,
    sylow_p,
    symmetric_group,
    transporter_fusion,
)
from fusionkit.rv import build_rv

BUILD_SECONDS: dict = {}


def _timed(name, thunk):
    t0 = time.perf_counter()
    value = thunk()
    BUILD_SECONDS[name] = time.perf_counter() - t0
    return value


def _transporter(G: FiniteGroup, p: int):
    return transporter_fusion(G, sylow_p(G.full(), p), p)


def sl33_group() -> FiniteGroup:
    """SL(3,3) acting on the 13 points of the projective plane."""
    pts = []
    for x0 in range(3):
        for x1 in range(3):
            for x2 in range(3):
                v = (x0, x1, x2)
                if v == (0, 0, 0):
                    continue
                if all(tuple(c * t % 3 for t in v) >= v for c in (1, 2)):
                    pts.append(v)
    idx = {v: i for i, v in enumerate(pts)}

    def norm(v):
        for t in v:
            if t == 1:
                return v
            if t == 2:
                return tuple(2 * s % 3 for s in v)
        raise AssertionError("zero vector")

    def mat_perm(M):
        return tuple(
            idx[norm(tuple(
                sum(M[i][j] * v[j] for j in range(3)) % 3 for i in range(3)
            ))]
            for v in pts
        )

    def elem(i, j):
        M = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
        M[i][j] = 1
        return M

    gens = [mat_perm(elem(i, j)) for i in range(3) for j in range(3) if i != j]
    G = FiniteGroup(13, gens, name="SL(3,3)")
    assert G.order == 5616
    return G


def extraspecial27_c2() -> FiniteGroup:
    """3^(1+2) extended by the inverting involution (x,y -> inverses)."""
    P = extraspecial_plus(3)
    x, y, z = P.generator_ids()
    inv = P.inverse_ids
    action = [[P.elements[inv[x]], P.elements[inv[y]], P.elements[z]]]
    return semidirect_product(P, cyclic_group(2), action)


@pytest.fixture(scope="session")
def f_s3():
    return _timed("s3_c3", lambda: _transporter(symmetric_group(3), 3))


@pytest.fixture(scope="session")
def f_s4():
    return _timed("s4_d8", lambda: _transporter(symmetric_group(4), 2))


@pytest.fixture(scope="session")
def f_a4():
    return _timed("a4_v4", lambda: _transporter(alternating_group(4), 2))


@pytest.fixture(scope="session")
def f_sl33():
    return _timed("sl33", lambda: _transporter(sl33_group(), 3))


@pytest.fixture(scope="session")
def f_a4s3_p2():
    G = direct_product(alternating_group(4), symmetric_group(3))
    return _timed("a4s3_p2", lambda: _transporter(G, 2))


@pytest.fixture(scope="session")
def f_a4s3_p3():
    G = direct_product(alternating_group(4), symmetric_group(3))
    return _timed("a4s3_p3", lambda: _transporter(G, 3))


@pytest.fixture(scope="session")
def f_es54():
    return _timed("es27_c2", lambda: _transporter(extraspecial27_c2(), 3))


@pytest.fixture(scope="session")
def saturated_suite(f_s3, f_s4, f_a4, f_sl33, f_a4s3_p2, f_a4s3_p3, f_es54):
    """Criterion-style suite: every member must be saturated."""
    return [
        ("s3_c3", f_s3),
        ("s4_d8", f_s4),
        ("a4_v4", f_a4),
        ("sl33", f_sl33),
        ("a4s3_p2", f_a4s3_p2),
        ("a4s3_p3", f_a4s3_p3),
        ("es27_c2", f_es54),
    ]


@pytest.fixture(scope="session")
def f_swap():
    """The involutory-swap generated system over the Klein four group."""
    def build():
        V = elementary_abelian_group(2, 2)
        a, b = V.generator_ids()
        dom = subgroup_generated(V, [a])
        h = hom_from_images(dom, V, [a], [b])
        return generated_fusion(V.full(), 2, [h])
    return _timed("swap_v4", build)


@pytest.fixture(scope="session")
def rv_systems():
    out = {}
    for name in ("rv1", "rv2", "rv3"):
        out[name] = _timed(name, lambda n=name: build_rv(n))
    return out
