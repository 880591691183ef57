"""Finite permutation groups, subgroups and the group-theoretic toolbox.

A FiniteGroup stores the fully enumerated, sorted element list of a
permutation group; everything downstream (subgroups, homomorphisms, fusion
data) refers to elements by their index into that list. Subgroups are
id-sets over a fixed ambient FiniteGroup and are cheap to hash and compare.
"""

from __future__ import annotations

import os
from math import lcm

from . import perms

DEFAULT_MAX_ORDER = 200_000


def max_group_order() -> int:
    raw = os.environ.get("FUSIONKIT_MAX_GROUP_ORDER", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_ORDER
    except ValueError:
        return DEFAULT_MAX_ORDER


class GroupTooLarge(ValueError):
    pass


class FiniteGroup:
    """A permutation group with all elements enumerated and indexed."""

    def __init__(self, degree: int, generators, *, name: str = "", elements=None):
        self.degree = degree
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != degree or not perms.is_perm(g):
                raise ValueError(f"not a permutation of degree {degree}: {g!r}")
        self.generators = gens
        self.name = name
        if elements is None:
            elements = self._close(gens)
        self.elements: tuple[tuple[int, ...], ...] = tuple(sorted(elements))
        self.index: dict[tuple[int, ...], int] = {
            p: i for i, p in enumerate(self.elements)
        }
        self.identity_id = self.index[perms.identity(degree)]
        self._inverse_ids: tuple[int, ...] | None = None
        self._order_cache: dict[int, int] = {}

    def _close(self, gens):
        cap = max_group_order()
        e = perms.identity(self.degree)
        seen = {e}
        frontier = [e]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = perms.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            if len(seen) > cap:
                raise GroupTooLarge(
                    f"group exceeds FUSIONKIT_MAX_GROUP_ORDER={cap}"
                )
            frontier = new
        return seen

    @property
    def order(self) -> int:
        return len(self.elements)

    def perm(self, i: int) -> tuple[int, ...]:
        return self.elements[i]

    def id_of(self, p) -> int:
        return self.index[tuple(p)]

    def mul_ids(self, i: int, j: int) -> int:
        return self.index[perms.mul(self.elements[i], self.elements[j])]

    @property
    def inverse_ids(self) -> tuple[int, ...]:
        if self._inverse_ids is None:
            self._inverse_ids = tuple(
                self.index[perms.inverse(p)] for p in self.elements
            )
        return self._inverse_ids

    def element_order(self, i: int) -> int:
        o = self._order_cache.get(i)
        if o is None:
            o = perms.order(self.elements[i])
            self._order_cache[i] = o
        return o

    def generator_ids(self) -> list[int]:
        return [self.index[g] for g in self.generators]

    def full(self) -> "Subgroup":
        return Subgroup(self, range(len(self.elements)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity_id,))

    def __repr__(self):
        label = self.name or f"degree {self.degree}"
        return f"<FiniteGroup {label}, order {self.order}>"


class Subgroup:
    """A subgroup of a FiniteGroup, stored as a frozen set of element ids."""

    __slots__ = ("ambient", "ids", "_sorted", "_gens", "_hash")

    def __init__(self, ambient: FiniteGroup, ids):
        self.ambient = ambient
        self.ids = ids if isinstance(ids, frozenset) else frozenset(ids)
        self._sorted: tuple[int, ...] | None = None
        self._gens: list[int] | None = None
        self._hash = None

    @property
    def order(self) -> int:
        return len(self.ids)

    @property
    def sorted_ids(self) -> tuple[int, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.ids))
        return self._sorted

    def perms(self):
        amb = self.ambient.elements
        return [amb[i] for i in self.sorted_ids]

    def __contains__(self, i: int) -> bool:
        return i in self.ids

    def has_perm(self, p) -> bool:
        i = self.ambient.index.get(tuple(p))
        return i is not None and i in self.ids

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.ambient is other.ambient
            and self.ids == other.ids
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ambient), self.ids))
        return self._hash

    def __le__(self, other: "Subgroup") -> bool:
        return self.ambient is other.ambient and self.ids <= other.ids

    def __lt__(self, other: "Subgroup") -> bool:
        return self.ambient is other.ambient and self.ids < other.ids

    def generator_ids(self) -> list[int]:
        """A small deterministic generating set (greedy over sorted ids)."""
        if self._gens is None:
            amb = self.ambient
            gens: list[int] = []
            have = {amb.identity_id}
            for i in self.sorted_ids:
                if i in have:
                    continue
                gens.append(i)
                have = _closure_ids(amb, have | {i})
                if len(have) == len(self.ids):
                    break
            self._gens = gens
        return self._gens

    def is_subgroup_closed(self) -> bool:
        amb = self.ambient
        if amb.identity_id not in self.ids:
            return False
        for i in self.ids:
            for j in self.generator_ids():
                if amb.mul_ids(i, j) not in self.ids:
                    return False
        return True

    def __repr__(self):
        return f"<Subgroup order {self.order} of {self.ambient!r}>"


def _closure_ids(amb: FiniteGroup, seed_ids) -> set[int]:
    els = amb.elements
    index = amb.index
    gens = [els[i] for i in seed_ids if i != amb.identity_id]
    seen = {amb.identity_id}
    frontier = [amb.identity_id]
    while frontier:
        new = []
        for i in frontier:
            p = els[i]
            for g in gens:
                j = index[perms.mul(p, g)]
                if j not in seen:
                    seen.add(j)
                    new.append(j)
        frontier = new
    return seen


def subgroup_generated(amb: FiniteGroup, gen_ids) -> Subgroup:
    return Subgroup(amb, _closure_ids(amb, set(gen_ids)))


def subgroup_from_perms(amb: FiniteGroup, gen_perms) -> Subgroup:
    return subgroup_generated(amb, [amb.id_of(p) for p in gen_perms])


def conjugate_subgroup(H: Subgroup, g_perm) -> Subgroup:
    amb = H.ambient
    return Subgroup(
        amb,
        frozenset(
            amb.index[perms.conjugate(amb.elements[i], g_perm)] for i in H.ids
        ),
    )


def centralizer(G: Subgroup, X: Subgroup) -> Subgroup:
    """C_G(X) for X a subgroup of the same ambient group."""
    amb = G.ambient
    els = amb.elements
    xgens = [els[i] for i in X.generator_ids()]
    out = []
    for i in G.sorted_ids:
        p = els[i]
        if all(perms.mul(p, x) == perms.mul(x, p) for x in xgens):
            out.append(i)
    return Subgroup(amb, out)


def normalizer(G: Subgroup, X: Subgroup) -> Subgroup:
    """N_G(X) for X a subgroup of the same ambient group."""
    amb = G.ambient
    els = amb.elements
    index = amb.index
    xgens = [els[i] for i in X.generator_ids()]
    xids = X.ids
    out = []
    for i in G.sorted_ids:
        p = els[i]
        if all(index[perms.conjugate(x, p)] in xids for x in xgens):
            out.append(i)
    return Subgroup(amb, out)


def center(G: Subgroup) -> Subgroup:
    return centralizer(G, G)


def intersect(A: Subgroup, B: Subgroup) -> Subgroup:
    if A.ambient is not B.ambient:
        raise ValueError("subgroups live in different ambient groups")
    return Subgroup(A.ambient, A.ids & B.ids)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def sylow_p(G: Subgroup, p: int) -> Subgroup:
    """A Sylow p-subgroup of G, grown by normalizer ascent.

    Deterministic: always picks the first usable element in sorted id order.
    """
    amb = G.ambient
    target = _p_part(G.order, p)
    if target == 1:
        return Subgroup(amb, (amb.identity_id,))
    H = None
    for i in G.sorted_ids:
        o = amb.element_order(i)
        part = _p_part(o, p)
        if part > 1:
            t = perms.power(amb.elements[i], o // part)
            H = subgroup_generated(amb, [amb.id_of(t)])
            break
    assert H is not None
    while H.order < target:
        N = normalizer(G, H)
        # N/H has order divisible by p, so some coset has order a multiple
        # of p; raise H by the p-element of that quotient.
        grown = False
        for i in N.sorted_ids:
            if i in H.ids:
                continue
            d = _coset_order(amb, H, i)
            if d % p == 0:
                j = i
                if d != p:
                    j = amb.id_of(perms.power(amb.elements[i], d // p))
                H = _extend_by_normalizing_p_element(amb, H, j, p)
                grown = True
                break
        if not grown:  # pragma: no cover - ascent cannot stall below Sylow
            raise RuntimeError("sylow ascent stalled")
    return H


def _coset_order(amb: FiniteGroup, H: Subgroup, i: int) -> int:
    d = 1
    j = i
    while j not in H.ids:
        j = amb.mul_ids(j, i)
        d += 1
    return d


def _extend_by_normalizing_p_element(
    amb: FiniteGroup, H: Subgroup, g: int, p: int
) -> Subgroup:
    """<H, g> = H u Hg u ... u Hg^(p-1) when g normalizes H and g^p in H."""
    ids = set(H.ids)
    gp = amb.elements[g]
    cur = gp
    for _ in range(p - 1):
        ids.update(amb.index[perms.mul(amb.elements[h], cur)] for h in H.ids)
        cur = perms.mul(cur, gp)
    return Subgroup(amb, ids)


def p_core(G: Subgroup, p: int) -> Subgroup:
    """O_p(G): the intersection of the normal closure orbit of one Sylow."""
    amb = G.ambient
    C = sylow_p(G, p)
    gens = [amb.elements[i] for i in G.generator_ids()]
    while True:
        cur = C
        for g in gens:
            cur = intersect(cur, conjugate_subgroup(cur, g))
        if cur == C:
            return C
        C = cur


def is_normal(G: Subgroup, X: Subgroup) -> bool:
    amb = G.ambient
    return all(
        amb.index[perms.conjugate(amb.elements[x], amb.elements[g])] in X.ids
        for g in G.generator_ids()
        for x in X.generator_ids()
    )


def is_p_group(G: Subgroup, p: int) -> bool:
    n = G.order
    while n % p == 0:
        n //= p
    return n == 1


# --------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """A homomorphism between subgroups, stored by total image table.

    images[k] is the codomain-ambient id of the image of the k-th element of
    domain.sorted_ids. Equality is extensional over (domain, codomain ambient,
    table).
    """

    __slots__ = ("domain", "codomain_ambient", "images", "_hash", "_by_id")

    def __init__(self, domain: Subgroup, codomain_ambient: FiniteGroup, images):
        self.domain = domain
        self.codomain_ambient = codomain_ambient
        self.images = tuple(images)
        if len(self.images) != domain.order:
            raise ValueError("image table does not cover the domain")
        self._hash = None
        self._by_id: dict[int, int] | None = None

    @property
    def table(self) -> dict[int, int]:
        if self._by_id is None:
            self._by_id = dict(zip(self.domain.sorted_ids, self.images))
        return self._by_id

    def apply(self, i: int) -> int:
        return self.table[i]

    def image_ids(self) -> frozenset[int]:
        return frozenset(self.images)

    def image(self) -> Subgroup:
        return Subgroup(self.codomain_ambient, self.image_ids())

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def restrict(self, sub: Subgroup) -> "GroupHom":
        if not sub.ids <= self.domain.ids:
            raise ValueError("restriction target is not inside the domain")
        t = self.table
        return GroupHom(
            sub, self.codomain_ambient, (t[i] for i in sub.sorted_ids)
        )

    def then(self, other: "GroupHom") -> "GroupHom":
        """self followed by other; image(self) must sit in other's domain."""
        t = other.table
        return GroupHom(
            self.domain,
            other.codomain_ambient,
            (t[i] for i in self.images),
        )

    def inverse_iso(self) -> "GroupHom":
        if not self.is_injective():
            raise ValueError("not injective")
        inv = dict(zip(self.images, self.domain.sorted_ids))
        img = self.image()
        return GroupHom(
            img, self.domain.ambient, (inv[i] for i in img.sorted_ids)
        )

    def is_homomorphism(self) -> bool:
        dom, cod = self.domain.ambient, self.codomain_ambient
        t = self.table
        gens = self.domain.generator_ids()
        return all(
            t[dom.mul_ids(i, g)] == cod.mul_ids(t[i], t[g])
            for i in self.domain.sorted_ids
            for g in gens
        )

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.domain == other.domain
            and self.codomain_ambient is other.codomain_ambient
            and self.images == other.images
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.domain, id(self.codomain_ambient), self.images)
            )
        return self._hash

    def __repr__(self):
        return (
            f"<GroupHom from order-{self.domain.order} subgroup, "
            f"image order {len(set(self.images))}>"
        )


def identity_hom(H: Subgroup) -> GroupHom:
    return GroupHom(H, H.ambient, H.sorted_ids)


def inclusion_hom(H: Subgroup, G: Subgroup) -> GroupHom:
    if not H.ids <= G.ids:
        raise ValueError("not a subgroup inclusion")
    return GroupHom(H, G.ambient, H.sorted_ids)


def conjugation_hom(H: Subgroup, g_perm) -> GroupHom:
    """c_g on H, x |-> g^-1 x g, landing in the same ambient group."""
    amb = H.ambient
    return GroupHom(
        H,
        amb,
        (
            amb.index[perms.conjugate(amb.elements[i], g_perm)]
            for i in H.sorted_ids
        ),
    )


def hom_from_images(
    domain: Subgroup,
    codomain_ambient: FiniteGroup,
    gen_ids,
    image_ids,
) -> GroupHom | None:
    """Extend gen |-> image to a homomorphism, or return None.

    Walks the domain Cayley graph once, checking every edge, so a returned
    map is verified multiplicative on all of domain x gens.
    """
    dom = domain.ambient
    cod = codomain_ambient
    gen_ids = list(gen_ids)
    image_ids = list(image_ids)
    table = {dom.identity_id: cod.identity_id}
    frontier = [dom.identity_id]
    while frontier:
        new = []
        for i in frontier:
            fi = table[i]
            for g, m in zip(gen_ids, image_ids):
                j = dom.mul_ids(i, g)
                fj = cod.mul_ids(fi, m)
                known = table.get(j)
                if known is None:
                    table[j] = fj
                    new.append(j)
                elif known != fj:
                    return None
        frontier = new
    if len(table) != domain.order:
        raise ValueError("gen_ids do not generate the domain")
    return GroupHom(domain, cod, (table[i] for i in domain.sorted_ids))


def _iso_candidates(domain: Subgroup, codomain: Subgroup):
    """Backtracking generator-image assignments for injective homs onto."""
    dom_amb, cod_amb = domain.ambient, codomain.ambient
    gens = domain.generator_ids()
    if not gens:  # trivial group
        yield []
        return
    by_order: dict[int, list[int]] = {}
    for i in codomain.sorted_ids:
        by_order.setdefault(cod_amb.element_order(i), []).append(i)
    gen_orders = [dom_amb.element_order(g) for g in gens]
    # pairwise product orders, for pruning partial assignments
    pair_order = {
        (a, b): dom_amb.element_order(dom_amb.mul_ids(gens[a], gens[b]))
        for a in range(len(gens))
        for b in range(a)
    }

    def extend(partial):
        k = len(partial)
        if k == len(gens):
            yield list(partial)
            return
        for cand in by_order.get(gen_orders[k], ()):
            ok = True
            for b in range(k):
                prod = cod_amb.mul_ids(partial[b], cand)
                if cod_amb.element_order(prod) != pair_order[(k, b)]:
                    ok = False
                    break
            if ok:
                partial.append(cand)
                yield from extend(partial)
                partial.pop()

    yield from extend([])


def isomorphisms(domain: Subgroup, codomain: Subgroup, *, limit=None):
    """Yield isomorphisms domain -> codomain as GroupHoms.

    Candidates are generator-image assignments pruned by element orders and
    pairwise product orders, then validated by a full Cayley-graph walk.
    """
    if domain.order != codomain.order:
        return
    dom_orders = sorted(
        domain.ambient.element_order(i) for i in domain.sorted_ids
    )
    cod_orders = sorted(
        codomain.ambient.element_order(i) for i in codomain.sorted_ids
    )
    if dom_orders != cod_orders:
        return
    gens = domain.generator_ids()
    count = 0
    for assignment in _iso_candidates(domain, codomain):
        h = hom_from_images(domain, codomain.ambient, gens, assignment)
        if h is None:
            continue
        if len(set(h.images)) != domain.order:
            continue
        if not h.image_ids() <= codomain.ids:
            continue
        yield h
        count += 1
        if limit is not None and count >= limit:
            return


def group_isomorphic(domain: Subgroup, codomain: Subgroup) -> GroupHom | None:
    for h in isomorphisms(domain, codomain, limit=1):
        return h
    return None


def automorphisms(P: Subgroup) -> list[GroupHom]:
    """All automorphisms of P, in a canonical (image-table sorted) order."""
    out = list(isomorphisms(P, P))
    out.sort(key=lambda h: h.images)
    return out


def inner_automorphisms(P: Subgroup) -> list[GroupHom]:
    amb = P.ambient
    seen = {}
    for i in P.sorted_ids:
        h = conjugation_hom(P, amb.elements[i])
        seen.setdefault(h.images, h)
    return [seen[k] for k in sorted(seen)]


# --------------------------------------------------------------------------
# subgroup enumeration


def all_subgroups(S: Subgroup) -> list[Subgroup]:
    """Every subgroup of S.

    For p-groups this climbs level by level: each subgroup of order p^(k+1)
    is H extended by a normalizing element g with g^p in H, so it is a plain
    union of p cosets of some H of order p^k. Other groups fall back to a
    join-closure over cyclic subgroups.
    """
    amb = S.ambient
    n = S.order
    prime = _sole_prime(n)
    if prime is not None:
        return _p_group_subgroups(S, prime)
    # generic fallback: close the cyclic subgroups under join
    found = {frozenset((amb.identity_id,))}
    for i in S.sorted_ids:
        found.add(subgroup_generated(amb, [i]).ids)
    frontier = list(found)
    while frontier:
        new = []
        for ids in frontier:
            for i in S.sorted_ids:
                if i in ids:
                    continue
                joined = _closure_ids(amb, set(ids) | {i})
                fz = frozenset(joined)
                if fz not in found:
                    found.add(fz)
                    new.append(fz)
        frontier = new
    return sorted(
        (Subgroup(amb, ids) for ids in found),
        key=lambda H: (H.order, H.sorted_ids),
    )


def _sole_prime(n: int) -> int | None:
    if n == 1:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        p = n
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def _p_group_subgroups(S: Subgroup, p: int) -> list[Subgroup]:
    amb = S.ambient
    level = {frozenset((amb.identity_id,))}
    out = [Subgroup(amb, ids) for ids in level]
    while level:
        nxt = set()
        for ids in level:
            H = Subgroup(amb, ids)
            if H.order == S.order:
                continue
            N = normalizer(S, H)
            for g in N.sorted_ids:
                if g in ids:
                    continue
                gp = amb.elements[g]
                if amb.id_of(perms.power(gp, p)) not in ids:
                    continue
                grown = _extend_by_normalizing_p_element(amb, H, g, p)
                nxt.add(grown.ids)
        level = nxt
        out.extend(Subgroup(amb, ids) for ids in sorted(level, key=sorted))
    uniq = {H.ids: H for H in out}
    return sorted(
        uniq.values(), key=lambda H: (H.order, H.sorted_ids)
    )


# --------------------------------------------------------------------------
# quotients


def quotient_group(S: Subgroup, T: Subgroup):
    """The quotient S/T as a permutation group on the right cosets of T.

    Returns (Q, theta) where theta maps ambient ids of S elements to Q ids.
    Raises if T is not normal in S.
    """
    amb = S.ambient
    if not T.ids <= S.ids:
        raise ValueError("T is not contained in S")
    if not is_normal(S, T):
        raise ValueError("T is not normal in S")
    els = amb.elements
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for i in S.sorted_ids:
        if i in coset_of:
            continue
        c = len(reps)
        reps.append(i)
        for t in T.ids:
            coset_of[amb.index[perms.mul(els[t], els[i])]] = c
    m = len(reps)
    qperms = set()
    images: dict[int, tuple[int, ...]] = {}
    for s in S.sorted_ids:
        sp = els[s]
        q = tuple(
            coset_of[amb.index[perms.mul(els[r], sp)]] for r in reps
        )
        images[s] = q
        qperms.add(q)
    Q = FiniteGroup(
        m,
        [images[g] for g in S.generator_ids()],
        name=f"quotient of order {m}",
        elements=qperms,
    )
    theta = {s: Q.index[images[s]] for s in S.sorted_ids}
    return Q, theta


def exponent(G: Subgroup) -> int:
    out = 1
    for i in G.sorted_ids:
        out = lcm(out, G.ambient.element_order(i))
    return out


def is_abelian(G: Subgroup) -> bool:
    amb = G.ambient
    gens = G.generator_ids()
    return all(
        amb.mul_ids(a, b) == amb.mul_ids(b, a) for a in gens for b in gens
    )
