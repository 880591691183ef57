"""Three exotic-flavoured fusion systems over the extraspecial group 7^(1+2).

Each system is generated by a chosen subgroup of the outer automorphism
group (realized as 2x2 matrices over the 7-element field acting on S/Z)
together with prescribed automorphism groups on designated rank-2
subgroups. `build_rv` seeds, closes, and certifies saturation, retrying
over the orbit-consistent assignment profiles; `certify_rv` recomputes
every advertised invariant of the result.
"""

from __future__ import annotations

from . import perms
from .classify import (
    cr_objects,
    is_centric,
    is_radical,
    is_saturated,
    is_strongly_closed,
    out_F,
)
from .fusion import FusionSystem, GeneratedFusion
from .groups import (
    FiniteGroup,
    Subgroup,
    group_isomorphic,
    hom_from_images,
    subgroup_generated,
)
from .named import (
    abelian_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    extraspecial_plus,
    semidirect_product,
)

P = 7

RV_NAMES = ("rv1", "rv2", "rv3")


# --------------------------------------------------------------------------
# matrix arithmetic over the 7-element field

def _mmul(a, b):
    return (
        ((a[0][0] * b[0][0] + a[0][1] * b[1][0]) % P,
         (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % P),
        ((a[1][0] * b[0][0] + a[1][1] * b[1][0]) % P,
         (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % P),
    )


def _mdet(a):
    return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % P


_I2 = ((1, 0), (0, 1))


def _morder(a):
    k, cur = 1, a
    while cur != _I2:
        cur = _mmul(cur, a)
        k += 1
        if k > 48 * 48:
            raise ValueError("matrix order runaway")
    return k


def _mclose(gens):
    out = {_I2}
    frontier = [_I2]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                n = _mmul(m, g)
                if n not in out:
                    out.add(n)
                    new.append(n)
        frontier = new
    return out


def _mult_by(a, b):
    """Multiplication by a + b*w on the degree-2 field extension with
    w^2 = 3, written in the basis (1, w)."""
    return ((a % P, (3 * b) % P), (b % P, a % P))


def _order16_element():
    """A field element of multiplicative order 16, as a matrix."""
    for a in range(P):
        for b in range(1, P):
            m = _mult_by(a, b)
            if _mdet(m) != 0 and _morder(m) == 16:
                return m
    raise AssertionError("no order-16 element found")


_FROBENIUS = ((1, 0), (0, P - 1))


def outer_group_matrices(name: str) -> list:
    """Generators of the outer-action subgroup for each system, acting on
    S/Z by column vectors."""
    if name == "rv1":
        return [((3, 0), (0, 1)), ((1, 0), (0, 3)), ((0, 1), (1, 0))]
    t = _order16_element()
    two_i = ((2, 0), (0, 2))
    if name == "rv2":
        return [_mmul(t, t), _FROBENIUS, two_i]
    if name == "rv3":
        return [t, _FROBENIUS, two_i]
    raise ValueError(f"unknown system name {name!r}")


OUT_ORDERS = {"rv1": 72, "rv2": 48, "rv3": 96}

FULL_TYPE_ORDER = 2016     # all invertible 2x2 matrices
HALF_TYPE_ORDER = 672      # determinant +1 or -1

# Conjugacy classes of rank-2 subgroups: (class size, automorphism group
# order) per class.  Both rv2 classes carry the order-672 group; only the
# small rv1 class gets the full 2x2 matrix group.
FCR_PROFILES = {
    "rv1": ((2, FULL_TYPE_ORDER), (6, HALF_TYPE_ORDER)),
    "rv2": ((4, HALF_TYPE_ORDER), (4, HALF_TYPE_ORDER)),
    "rv3": ((8, HALF_TYPE_ORDER),),
}


def comparison_out_group(name: str) -> FiniteGroup:
    """The advertised abstract shape of each outer group, built
    independently of any matrix realization."""
    if name == "rv1":
        base = abelian_group([6, 6])
        a, b = base.generator_ids()
        swap = [[base.elements[b], base.elements[a]]]
        return semidirect_product(base, cyclic_group(2), swap)
    if name == "rv2":
        return direct_product(dihedral_group(16), cyclic_group(3))
    if name == "rv3":
        c16 = cyclic_group(16)
        r = c16.generator_ids()[0]
        act = [[c16.elements[c16.index[perms.power(c16.elements[r], 7)]]]]
        sd32 = semidirect_product(c16, cyclic_group(2), act)
        return direct_product(sd32, cyclic_group(3))
    raise ValueError(f"unknown system name {name!r}")


# --------------------------------------------------------------------------
# lines of S/Z and lifts into the extraspecial group

def _lines() -> list:
    """Canonical generators of the eight 1-dimensional subspaces:
    (1, c) for each scalar c, plus (0, 1)."""
    return [(1, c) for c in range(P)] + [(0, 1)]


def _normalize(vec):
    u1, u2 = vec[0] % P, vec[1] % P
    if u1:
        inv = pow(u1, P - 2, P)
        return (1, (u2 * inv) % P)
    inv = pow(u2, P - 2, P)
    return (0, 1)


def _act_on_line(m, line):
    u1, u2 = line
    return _normalize((m[0][0] * u1 + m[0][1] * u2,
                       m[1][0] * u1 + m[1][1] * u2))


def _line_orbits(mats) -> list:
    todo = set(_lines())
    orbits = []
    while todo:
        start = min(todo)
        orbit = {start}
        frontier = [start]
        while frontier:
            new = []
            for ln in frontier:
                for m in mats:
                    nxt = _act_on_line(m, ln)
                    if nxt not in orbit:
                        orbit.add(nxt)
                        new.append(nxt)
            frontier = new
        todo -= orbit
        orbits.append(tuple(sorted(orbit)))
    return sorted(orbits)


class _Extraspecial:
    """The ambient group with its generator bookkeeping."""

    def __init__(self):
        self.G = extraspecial_plus(P)
        self.x, self.y, self.z = self.G.generator_ids()
        self.S = self.G.full()

    def word(self, xe: int, ye: int, ze: int) -> int:
        """The element x^xe y^ye z^ze by id."""
        g = perms.mul(
            perms.mul(perms.power(self.G.elements[self.x], xe),
                      perms.power(self.G.elements[self.y], ye)),
            perms.power(self.G.elements[self.z], ze),
        )
        return self.G.index[g]

    def lift(self, m):
        """The automorphism of S induced by the matrix m on S/Z, with z
        raised to the determinant; linear on the standard generators."""
        det = _mdet(m)
        images = [
            self.word(m[0][0], m[1][0], 0),
            self.word(m[0][1], m[1][1], 0),
            self.word(0, 0, det),
        ]
        h = hom_from_images(self.S, self.G, [self.x, self.y, self.z], images)
        if h is None or len(set(h.images)) != self.S.order:
            raise AssertionError(f"matrix {m} did not lift to an automorphism")
        return h

    def rank2_subgroup(self, line) -> Subgroup:
        v = self.word(line[0], line[1], 0)
        return subgroup_generated(self.G, [v, self.z])

    def rank2_aut_seeds(self, line, type_order: int) -> list:
        """Generators of the prescribed automorphism group of the rank-2
        subgroup over the line, in the basis (lift of line, center)."""
        V = self.rank2_subgroup(line)
        v = self.word(line[0], line[1], 0)
        if type_order == FULL_TYPE_ORDER:
            mats = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((3, 0), (0, 1))]
        elif type_order == HALF_TYPE_ORDER:
            mats = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((1, 0), (0, P - 1))]
        else:
            raise ValueError(f"unknown type order {type_order}")
        seeds = []
        for m in mats:
            imgs = [
                self._v_word(v, m[0][0], m[1][0]),
                self._v_word(v, m[0][1], m[1][1]),
            ]
            h = hom_from_images(V, self.G, [v, self.z], imgs)
            if h is None or len(set(h.images)) != V.order:
                raise AssertionError(f"matrix {m} is not invertible on V")
            seeds.append(h)
        return seeds

    def _v_word(self, v: int, ve: int, ze: int) -> int:
        g = perms.mul(perms.power(self.G.elements[v], ve),
                      perms.power(self.G.elements[self.z], ze))
        return self.G.index[g]

    def aut_group_tables(self, line, type_order: int) -> set:
        """All tables of the prescribed automorphism group on the rank-2
        subgroup over the line."""
        V = self.rank2_subgroup(line)
        v = self.word(line[0], line[1], 0)
        if type_order == FULL_TYPE_ORDER:
            mats = _mclose([((1, 1), (0, 1)), ((1, 0), (1, 1)),
                            ((3, 0), (0, 1))])
        else:
            mats = _mclose([((1, 1), (0, 1)), ((1, 0), (1, 1)),
                            ((1, 0), (0, P - 1))])
        assert len(mats) == type_order
        out = set()
        for m in mats:
            imgs = [
                self._v_word(v, m[0][0], m[1][0]),
                self._v_word(v, m[0][1], m[1][1]),
            ]
            h = hom_from_images(V, self.G, [v, self.z], imgs)
            out.add(h.images)
        return out


class RVDescriptor:
    """Name, outer-group data, and the rank-2 profile of one system.

    `profile` maps each line orbit (a tuple of lines) to the order of the
    automorphism group prescribed on its rank-2 subgroups.
    """

    def __init__(self, name: str, out_matrices: list, profile: dict):
        name = name.lower()
        if name not in RV_NAMES:
            raise ValueError(f"unknown system name {name!r}")
        self.name = name
        self.out_matrices = out_matrices
        self.profile = profile
        shape = tuple(sorted((len(orb), t) for orb, t in profile.items()))
        if shape != tuple(sorted(FCR_PROFILES[name])):
            raise ValueError(f"profile {shape} does not match {name}")

    def __repr__(self):
        return f"<RVDescriptor {self.name}>"


def _candidate_profiles(name: str, orbits: list):
    """Assignments of automorphism types to line orbits: each orbit is
    matched to a distinct profile class of the same size."""
    entries = list(FCR_PROFILES[name])
    out = []

    def assign(idx, remaining, acc):
        if idx == len(orbits):
            if not remaining:
                key = tuple(sorted(acc))
                if key not in {tuple(sorted(d.items())) for d in out}:
                    out.append(dict(acc))
            return
        orb = orbits[idx]
        for k, (size, type_order) in enumerate(remaining):
            if size == len(orb):
                assign(idx + 1, remaining[:k] + remaining[k + 1:],
                       acc + [(orb, type_order)])

    assign(0, entries, [])
    if not out:
        raise ValueError(f"orbit sizes {[len(o) for o in orbits]} cannot "
                         f"realize the {name} partition")
    return out


def build_rv(name, *, certify: bool = False):
    """Construct the named system; retries over profile assignments and
    accepts the first saturated closure. With certify=True the full
    invariant battery runs and is attached as `certificate`."""
    if isinstance(name, RVDescriptor):
        name = name.name
    name = name.lower()
    if name not in RV_NAMES:
        raise ValueError(f"unknown system name {name!r}")
    ext = _Extraspecial()
    mats = outer_group_matrices(name)
    closure = _mclose(mats)
    assert len(closure) == OUT_ORDERS[name], \
        f"outer matrix group has order {len(closure)}"
    orbits = _line_orbits(mats)
    failures = []
    for profile in _candidate_profiles(name, orbits):
        seeds = [ext.lift(m) for m in mats]
        for orb, type_order in sorted(profile.items()):
            rep = min(orb)
            seeds.extend(ext.rank2_aut_seeds(rep, type_order))
        F = GeneratedFusion(
            ext.S, P, seeds,
            descriptor={"kind": "rv", "name": name},
        )
        report = is_saturated(F)
        if report.verdict:
            F.rv = RVDescriptor(name, mats, profile)
            F.rv_extraspecial = ext
            F.rv_profile = profile
            if certify:
                F.certificate = certify_rv(F)
            return F
        failures.append(report.counterexample)
    raise RuntimeError(
        f"saturation certification failed for every {name} profile; "
        f"counterexample orders {[c.order for c in failures]}; retry with "
        "a conjugate seed"
    )


def certify_rv(F: FusionSystem) -> dict:
    """Recompute and check every advertised invariant of a built system.
    Returns the evidence dict; raises AssertionError on any mismatch."""
    ext = F.rv_extraspecial
    name = F.rv.name
    out = out_F(F, F.S)
    expected = comparison_out_group(name)
    assert out.order == OUT_ORDERS[name], \
        f"outer group order {out.order} != {OUT_ORDERS[name]}"
    assert group_isomorphic(out.full(), expected.full()) is not None, \
        "outer group shape mismatch"
    counts = {HALF_TYPE_ORDER: 0, FULL_TYPE_ORDER: 0}
    for line in _lines():
        V = F.subgroup(ext.rank2_subgroup(line).ids)
        auts = [t for t in F.hom_to_S_tables(V) if frozenset(t) == V.ids]
        counts[len(auts)] += 1
        assert is_centric(F, V) and is_radical(F, V), \
            "rank-2 subgroup not centric-radical"
    want = {HALF_TYPE_ORDER: 0, FULL_TYPE_ORDER: 0}
    for size, type_order in FCR_PROFILES[name]:
        want[type_order] += size
    assert counts == want, (counts, want)
    class_sizes = []
    seen: set = set()
    for line in _lines():
        if line in seen:
            continue
        V = F.subgroup(ext.rank2_subgroup(line).ids)
        mates = {Q.ids for Q in F.f_conjugates(V)}
        cls = [ln for ln in _lines() if ext.rank2_subgroup(ln).ids in mates]
        seen.update(cls)
        class_sizes.append(len(cls))
    assert sorted(class_sizes) == sorted(n for n, _ in FCR_PROFILES[name]), \
        f"rank-2 class sizes {sorted(class_sizes)}"
    cr = cr_objects(F)
    cr_rank2 = [Q for Q in cr if Q.order == P * P]
    assert len(cr_rank2) == 8, "rank-2 centric-radical count is not eight"
    for orb, type_order in F.rv_profile.items():
        rep = min(orb)
        V = F.subgroup(ext.rank2_subgroup(rep).ids)
        mine = {t for t in F.hom_to_S_tables(V) if frozenset(t) == V.ids}
        want = ext.aut_group_tables(rep, type_order)
        assert mine == want, "rank-2 automorphism group differs from seed"
    closed = [
        Q.order for Q in F.objects() if is_strongly_closed(F, Q)
    ]
    assert closed == [1, F.S.order], f"strongly closed orders {closed}"
    return {
        "name": name,
        "out_order": out.order,
        "out_shape": {"rv1": "6^2:2", "rv2": "D16 x 3",
                      "rv3": "SD32 x 3"}[name],
        "rank2_counts": {str(k): v for k, v in sorted(counts.items())},
        "rank2_class_sizes": sorted(class_sizes),
        "strongly_closed_orders": closed,
        "saturated": True,
    }
