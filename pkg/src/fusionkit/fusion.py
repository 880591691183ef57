"""Fusion systems over a finite p-group.

A FusionSystem stores, for each subgroup Q of its top group S, the full set
Hom(Q, S) of morphisms out of Q as image tables; Hom(Q, P) is the subset
whose image lies in P. Three backends fill those tables: transporter systems
sweep conjugations by an ambient group, generated systems close a seed set
of injective homomorphisms, and derived systems (quotients, normalizer
subsystems) are handed their tables by a construction.

Morphism tables are tuples aligned with Q.sorted_ids whose entries are
ambient element ids; equality of morphisms is extensional (domain, codomain,
table) and never looks at provenance.
"""

from __future__ import annotations

import hashlib
import pickle
import random

from . import perms
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_subgroups,
    centralizer,
    is_p_group,
    normalizer,
    subgroup_generated,
)


class FusionMorphism:
    """A morphism Q -> P of a fusion system, with optional provenance."""

    __slots__ = ("domain", "codomain", "images", "provenance", "_hash")

    def __init__(self, domain: Subgroup, codomain: Subgroup, images,
                 provenance=None):
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        self.provenance = provenance
        self._hash = None

    @property
    def table(self) -> dict[int, int]:
        return dict(zip(self.domain.sorted_ids, self.images))

    def apply(self, i: int) -> int:
        return self.images[self.domain.sorted_ids.index(i)]

    def image_ids(self) -> frozenset[int]:
        return frozenset(self.images)

    def image(self) -> Subgroup:
        return Subgroup(self.domain.ambient, self.image_ids())

    def is_isomorphism(self) -> bool:
        return self.image_ids() == self.codomain.ids

    def as_group_hom(self) -> GroupHom:
        return GroupHom(self.domain, self.domain.ambient, self.images)

    def restrict(self, sub: Subgroup) -> "FusionMorphism":
        t = self.table
        return FusionMorphism(
            sub, self.codomain, (t[i] for i in sub.sorted_ids),
            provenance=self.provenance,
        )

    def inverse_images(self) -> tuple[int, ...]:
        """Table of the inverse iso, aligned with image().sorted_ids."""
        inv = dict(zip(self.images, self.domain.sorted_ids))
        return tuple(inv[i] for i in sorted(inv))

    def __eq__(self, other):
        return (
            isinstance(other, FusionMorphism)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.images == other.images
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, self.codomain, self.images))
        return self._hash

    def __repr__(self):
        return (
            f"<FusionMorphism |Q|={self.domain.order} -> "
            f"|P|={self.codomain.order}>"
        )


class FusionSystem:
    """Fusion system over a p-group S, queried through its hom tables."""

    def __init__(self, S: Subgroup, p: int, backend: str, descriptor=None):
        if not is_p_group(S, p):
            raise ValueError(f"top group order {S.order} is not a power of {p}")
        self.S = S
        self.p = p
        self.ambient = S.ambient
        self.backend = backend
        self.descriptor = descriptor
        self._objects: list[Subgroup] | None = None
        self._hom: dict[frozenset, tuple] = {}
        self._prov: dict[frozenset, dict] = {}
        self._images: dict[frozenset, frozenset] = {}
        self._classes: dict[frozenset, tuple] = {}
        self._restriction_index: dict = {}
        self._sub_cache: dict[frozenset, Subgroup] = {}
        self._norm: dict[frozenset, Subgroup] = {}
        self._cent: dict[frozenset, Subgroup] = {}
        self._aut_s: dict[frozenset, tuple] = {}
        self._cosets: dict[frozenset, list] = {}

    # -- construction helpers (filled in by the factory functions) --------

    def _compute_hom(self, Q: Subgroup):
        raise NotImplementedError

    def subgroup(self, ids) -> Subgroup:
        ids = ids if isinstance(ids, frozenset) else frozenset(ids)
        sub = self._sub_cache.get(ids)
        if sub is None:
            sub = Subgroup(self.ambient, ids)
            self._sub_cache[ids] = sub
        return sub

    # -- object and hom-set queries ---------------------------------------

    def objects(self) -> list[Subgroup]:
        if self._objects is None:
            subs = all_subgroups(self.S)
            self._objects = [self.subgroup(H.ids) for H in subs]
        return self._objects

    def hom_to_S_tables(self, Q: Subgroup) -> tuple:
        if not Q.ids <= self.S.ids:
            raise ValueError("object is not a subgroup of S")
        tables = self._hom.get(Q.ids)
        if tables is None:
            tables = self._compute_hom(self.subgroup(Q.ids))
            self._hom[Q.ids] = tables
        return tables

    def hom_set(self, Q: Subgroup, P: Subgroup) -> list[FusionMorphism]:
        if not P.ids <= self.S.ids:
            raise ValueError("codomain is not a subgroup of S")
        P = self.subgroup(P.ids)
        pids = P.ids
        tables = self.hom_to_S_tables(Q)
        prov = self._prov.get(Q.ids, {})
        out = []
        for t in tables:
            if all(i in pids for i in t):
                out.append(
                    FusionMorphism(self.subgroup(Q.ids), P, t,
                                   provenance=prov.get(t))
                )
        return out

    def hom_to_S(self, Q: Subgroup) -> list[FusionMorphism]:
        return self.hom_set(Q, self.S)

    def aut_f(self, P: Subgroup) -> list[FusionMorphism]:
        P = self.subgroup(P.ids)
        prov = self._prov.get(P.ids, {})
        return [
            FusionMorphism(P, P, t, provenance=prov.get(t))
            for t in self.hom_to_S_tables(P)
            if frozenset(t) == P.ids
        ]

    def normalizer_of(self, P: Subgroup) -> Subgroup:
        """N_S(P), cached per subgroup."""
        out = self._norm.get(P.ids)
        if out is None:
            out = normalizer(self.S, self.subgroup(P.ids))
            self._norm[P.ids] = out
        return out

    def centralizer_of(self, P: Subgroup) -> Subgroup:
        """C_S(P), cached per subgroup."""
        out = self._cent.get(P.ids)
        if out is None:
            out = centralizer(self.S, self.subgroup(P.ids))
            self._cent[P.ids] = out
        return out

    def centralizer_cosets(self, Q: Subgroup) -> list:
        """Cosets of C_S(Q) in N_S(Q) as (representative, member ids)."""
        out = self._cosets.get(Q.ids)
        if out is None:
            amb = self.ambient
            C = self.centralizer_of(Q)
            N = self.normalizer_of(Q)
            covered = set()
            out = []
            for r in N.sorted_ids:
                if r in covered:
                    continue
                rp = amb.elements[r]
                coset = frozenset(
                    amb.index[perms.mul(amb.elements[c], rp)] for c in C.ids
                )
                covered |= coset
                out.append((r, coset))
            self._cosets[Q.ids] = out
        return out

    def aut_s_tables(self, P: Subgroup) -> tuple:
        cached = self._aut_s.get(P.ids)
        if cached is not None:
            return cached
        amb = self.ambient
        N = self.normalizer_of(P)
        seen = {}
        psorted = self.subgroup(P.ids).sorted_ids
        for s in N.sorted_ids:
            sp = amb.elements[s]
            t = tuple(
                amb.index[perms.conjugate(amb.elements[i], sp)]
                for i in psorted
            )
            seen.setdefault(t, s)
        cached = (tuple(sorted(seen)), seen)
        self._aut_s[P.ids] = cached
        return cached

    def aut_s(self, P: Subgroup) -> list[FusionMorphism]:
        P = self.subgroup(P.ids)
        tables, witnesses = self.aut_s_tables(P)
        return [
            FusionMorphism(P, P, t, provenance=("conjugation", witnesses[t]))
            for t in tables
        ]

    def image_sets(self, Q: Subgroup) -> frozenset:
        """Images of all morphisms out of Q, as frozensets of ids."""
        cached = self._images.get(Q.ids)
        if cached is None:
            cached = frozenset(
                frozenset(t) for t in self.hom_to_S_tables(Q)
            )
            self._images[Q.ids] = cached
        return cached

    def f_conjugates(self, P: Subgroup) -> list[Subgroup]:
        """All subgroups F-isomorphic to P (isomorphic as objects, i.e.
        with invertible morphisms both ways)."""
        cached = self._classes.get(P.ids)
        if cached is None:
            members = []
            for img in self.image_sets(P):
                if len(img) != P.order:
                    continue
                if P.ids in self.image_sets(self.subgroup(img)):
                    members.append(img)
            cached = tuple(
                sorted(members, key=lambda ids: tuple(sorted(ids)))
            )
            for ids in cached:
                self._classes[ids] = cached
        return [self.subgroup(ids) for ids in cached]

    def conjugacy_classes(self) -> list[list[Subgroup]]:
        seen = set()
        out = []
        for Q in self.objects():
            if Q.ids in seen:
                continue
            cls = self.f_conjugates(Q)
            seen.update(m.ids for m in cls)
            out.append(cls)
        return out

    def f_class_of_element(self, x) -> list[int]:
        """Directed element fusion: all phi(x) for phi in Hom(<x>, S)."""
        amb = self.ambient
        if not isinstance(x, int):
            x = amb.id_of(x)
        if x not in self.S.ids:
            raise ValueError("element is not in S")
        Q = subgroup_generated(amb, [x])
        pos = Q.sorted_ids.index(x)
        return sorted({t[pos] for t in self.hom_to_S_tables(Q)})

    # -- extension lookups (receptivity, normalizer subsystems) -----------

    def extension_index(self, N: Subgroup, Q: Subgroup) -> dict:
        """Map (restriction-to-Q table) -> one full table over N, for every
        morphism out of N; Q must be contained in N."""
        key = (N.ids, Q.ids)
        idx = self._restriction_index.get(key)
        if idx is None:
            N = self.subgroup(N.ids)
            qpos = [N.sorted_ids.index(i) for i in self.subgroup(Q.ids).sorted_ids]
            idx = {}
            for t in self.hom_to_S_tables(N):
                idx.setdefault(tuple(t[k] for k in qpos), t)
            self._restriction_index[key] = idx
        return idx

    def generating_morphisms(self) -> list[FusionMorphism]:
        raise NotImplementedError

    def __repr__(self):
        return (
            f"<FusionSystem backend={self.backend} p={self.p} "
            f"|S|={self.S.order}>"
        )


class TransporterFusion(FusionSystem):
    """F_S(G): morphisms are conjugations by elements of G."""

    def __init__(self, G: FiniteGroup, S: Subgroup, p: int):
        if S.ambient is not G:
            raise ValueError("S must be a subgroup of G")
        if not S.is_subgroup_closed():
            raise ValueError("S is not closed under the group operation")
        n, p_part = G.order, 1
        while n % p == 0:
            n //= p
            p_part *= p
        if S.order != p_part:
            raise ValueError(
                f"S (order {S.order}) is not a Sylow {p}-subgroup of G "
                f"(order {G.order})"
            )
        super().__init__(S, p, "transporter", descriptor={"group": G})
        self.G = G

    def _compute_hom(self, Q: Subgroup):
        amb = self.G
        els = amb.elements
        index = amb.index
        sids = self.S.ids
        gens_q = [els[i] for i in Q.generator_ids()]
        qsorted = Q.sorted_ids
        seen_vec = set()
        tables = {}
        prov = {}
        for g in range(amb.order):
            gp = els[g]
            vec = []
            ok = True
            for q in gens_q:
                j = index[perms.conjugate(q, gp)]
                if j not in sids:
                    ok = False
                    break
                vec.append(j)
            if not ok:
                continue
            vec = tuple(vec)
            if vec in seen_vec:
                continue
            seen_vec.add(vec)
            t = tuple(
                index[perms.conjugate(els[i], gp)] for i in qsorted
            )
            tables[t] = True
            prov[t] = ("conjugation", g)
        self._prov[Q.ids] = prov
        return tuple(sorted(tables))

    def generating_morphisms(self) -> list[FusionMorphism]:
        """One conjugation map per element of G, on its largest S-domain."""
        amb = self.G
        els = amb.elements
        index = amb.index
        sids = self.S.ids
        seen = set()
        out = []
        for g in range(amb.order):
            gp = els[g]
            dom = frozenset(
                i for i in sids
                if index[perms.conjugate(els[i], gp)] in sids
            )
            D = self.subgroup(dom)
            t = tuple(
                index[perms.conjugate(els[i], gp)] for i in D.sorted_ids
            )
            key = (dom, t)
            if key in seen:
                continue
            seen.add(key)
            out.append(
                FusionMorphism(D, self.S, t, provenance=("conjugation", g))
            )
        return out


class GeneratedFusion(FusionSystem):
    """The smallest fusion system over S containing a seed set of maps."""

    def __init__(self, S: Subgroup, p: int, gens, descriptor=None):
        super().__init__(S, p, "generated",
                         descriptor=descriptor or {"gens": len(gens)})
        amb = self.ambient
        self._gen_morphisms = []
        seeds = []
        for k, g in enumerate(gens):
            domain, images = _coerce_seed(amb, g)
            if not domain.ids <= S.ids:
                raise ValueError("generator domain is not a subgroup of S")
            if not set(images) <= S.ids:
                raise ValueError("generator image is not inside S")
            if len(set(images)) != domain.order:
                raise ValueError("generator is not injective")
            gh = GroupHom(domain, amb, images)
            if not gh.is_homomorphism():
                raise ValueError("generator is not a homomorphism")
            self._gen_morphisms.append(
                FusionMorphism(domain, S, images, provenance=("seed", k))
            )
            seeds.append((domain.ids, dict(zip(domain.sorted_ids, images))))
            # the factorization axiom forces the inverse of each seed,
            # viewed as an isomorphism onto its image, into the system
            seeds.append((frozenset(images),
                          dict(zip(images, domain.sorted_ids))))
        # conjugation seeds make every Hom_S map reachable
        for t in S.generator_ids():
            tp = amb.elements[t]
            table = {
                i: amb.index[perms.conjugate(amb.elements[i], tp)]
                for i in S.sorted_ids
            }
            seeds.append((S.ids, table))
        self._seeds = seeds
        for Q in self.objects():
            self.hom_to_S_tables(Q)

    def _compute_hom(self, Q: Subgroup):
        gens_q = Q.generator_ids()
        qsorted = Q.sorted_ids
        start_vec = tuple(gens_q)
        seen = {start_vec: qsorted}
        parents = {start_vec: None}
        frontier = [start_vec]
        seeds = self._seeds
        while frontier:
            new = []
            for vec in frontier:
                full = seen[vec]
                for k, (dom, table) in enumerate(seeds):
                    applies = True
                    for v in vec:
                        if v not in dom:
                            applies = False
                            break
                    if not applies:
                        continue
                    nvec = tuple(table[v] for v in vec)
                    if nvec in seen:
                        continue
                    seen[nvec] = tuple(table[x] for x in full)
                    parents[nvec] = (vec, k)
                    new.append(nvec)
            frontier = new
        prov = {}
        for vec, full in seen.items():
            word = []
            cur = vec
            while parents[cur] is not None:
                cur, k = parents[cur]
                word.append(k)
            prov[full] = ("word", tuple(reversed(word)))
        self._prov[Q.ids] = prov
        return tuple(sorted(seen.values()))

    def generating_morphisms(self) -> list[FusionMorphism]:
        return list(self._gen_morphisms)


class DerivedFusion(FusionSystem):
    """A fusion system whose hom tables were produced by a construction."""

    def __init__(self, S: Subgroup, p: int, tables: dict, descriptor=None,
                 provenance: dict | None = None):
        super().__init__(S, p, "derived", descriptor=descriptor)
        self._hom = {ids: tuple(sorted(ts)) for ids, ts in tables.items()}
        if provenance:
            self._prov.update(provenance)

    def _compute_hom(self, Q: Subgroup):
        raise KeyError(
            f"no hom table for subgroup of order {Q.order}; derived systems "
            "carry a fixed object list"
        )

    def generating_morphisms(self) -> list[FusionMorphism]:
        out = []
        for ids in sorted(self._hom, key=lambda s: (len(s), sorted(s))):
            Q = self.subgroup(ids)
            out.extend(self.hom_set(Q, self.S))
        return out


def _coerce_seed(amb: FiniteGroup, g):
    if isinstance(g, FusionMorphism):
        return g.domain, g.images
    if isinstance(g, GroupHom):
        if g.codomain_ambient is not amb:
            raise ValueError("generator lives in a different ambient group")
        return g.domain, g.images
    if isinstance(g, tuple) and len(g) == 2:
        domain, images = g
        return domain, tuple(images)
    raise TypeError(f"cannot interpret fusion generator {g!r}")


def transporter_fusion(G: FiniteGroup, S: Subgroup, p: int) -> FusionSystem:
    return TransporterFusion(G, S, p)


def generated_fusion(S: Subgroup, p: int, gens, descriptor=None) -> FusionSystem:
    return GeneratedFusion(S, p, gens, descriptor=descriptor)


def inner_fusion(S, p: int) -> FusionSystem:
    """F_S(S), built over S itself."""
    if isinstance(S, FiniteGroup):
        S = S.full()
    if S.ambient.order == S.order:
        return TransporterFusion(S.ambient, S, p)
    return GeneratedFusion(S, p, [])


# -- functional aliases ----------------------------------------------------


def hom_set(F: FusionSystem, Q: Subgroup, P: Subgroup):
    return F.hom_set(Q, P)


def aut_F(F: FusionSystem, P: Subgroup):
    return F.aut_f(P)


def aut_S(F: FusionSystem, P: Subgroup):
    return F.aut_s(P)


def f_conjugates(F: FusionSystem, P: Subgroup):
    return F.f_conjugates(P)


def f_class_of_element(F: FusionSystem, x):
    return F.f_class_of_element(x)


# -- equality, digests, audits --------------------------------------------


def _raw_table(F: FusionSystem, Q: Subgroup):
    """Ambient-independent form: (domain perms, sorted image-perm rows)."""
    amb = F.ambient
    dom = tuple(amb.elements[i] for i in Q.sorted_ids)
    rows = sorted(
        tuple(amb.elements[i] for i in t) for t in F.hom_to_S_tables(Q)
    )
    return dom, rows


def equal_hom_tables(F1: FusionSystem, F2: FusionSystem) -> bool:
    """Extensional equality of the two systems' full hom tables."""
    if F1.ambient is F2.ambient:
        if F1.S.ids != F2.S.ids:
            return False
        for Q in F1.objects():
            if F1.hom_to_S_tables(Q) != F2.hom_to_S_tables(Q):
                return False
        return True
    if F1.ambient.degree != F2.ambient.degree:
        return False
    s1 = sorted(F1.ambient.elements[i] for i in F1.S.ids)
    s2 = sorted(F2.ambient.elements[i] for i in F2.S.ids)
    if s1 != s2:
        return False
    objs2 = {
        frozenset(F2.ambient.elements[i] for i in Q.ids): Q
        for Q in F2.objects()
    }
    for Q in F1.objects():
        key = frozenset(F1.ambient.elements[i] for i in Q.ids)
        other = objs2.pop(key, None)
        if other is None:
            return False
        if _raw_table(F1, Q) != _raw_table(F2, other):
            return False
    return not objs2


def hom_table_digest(F: FusionSystem) -> dict:
    """Deterministic sha256 digest plus per-object cardinalities."""
    h = hashlib.sha256()
    cards = []
    payload_objs = []
    for Q in F.objects():
        tables = F.hom_to_S_tables(Q)
        payload_objs.append((Q.sorted_ids, tables))
        cards.append([Q.order, len(tables)])
    h.update(
        pickle.dumps(
            (F.ambient.degree, F.p, payload_objs), protocol=4
        )
    )
    return {
        "sha256": h.hexdigest(),
        "object_count": len(payload_objs),
        "morphism_count": sum(c for _, c in cards),
        "cardinalities": cards,
    }


def audit_axioms(F: FusionSystem, *, full: bool = False,
                 samples: int = 150, seed: int = 0) -> list[str]:
    """Check the category axioms; returns a list of violation messages.

    Verifies Hom_S(Q,S) inside the tables, injectivity and multiplicativity
    of every map, and closure under restriction and composition (on all
    pairs when full=True, otherwise on a deterministic sample).
    """
    amb = F.ambient
    problems = []
    objects = F.objects()
    by_ids = {Q.ids: Q for Q in objects}
    for Q in objects:
        tables = F.hom_to_S_tables(Q)
        table_set = set(tables)
        aut_s_tabs, _ = F.aut_s_tables(Q)
        # Hom_S(Q, S): conjugation by every s in S with Q^s <= S (always)
        for s in F.S.generator_ids():
            sp = amb.elements[s]
            t = tuple(
                amb.index[perms.conjugate(amb.elements[i], sp)]
                for i in Q.sorted_ids
            )
            if t not in table_set:
                problems.append(
                    f"missing inner map on subgroup of order {Q.order}"
                )
        for t in aut_s_tabs:
            if t not in table_set:
                problems.append(
                    f"Aut_S not inside Aut_F at order {Q.order}"
                )
        gens_q = Q.generator_ids()
        for t in tables:
            if len(set(t)) != Q.order:
                problems.append(f"non-injective map on order {Q.order}")
                continue
            d = dict(zip(Q.sorted_ids, t))
            for i in Q.sorted_ids:
                for g in gens_q:
                    if d[amb.mul_ids(i, g)] != amb.mul_ids(d[i], d[g]):
                        problems.append(
                            f"non-multiplicative map on order {Q.order}"
                        )
                        break
                else:
                    continue
                break
    rng = random.Random(seed)
    # restriction closure
    pairs = []
    for Q in objects:
        for R in objects:
            if R.ids < Q.ids:
                pairs.append((Q, R))
    if not full and len(pairs) > samples:
        pairs = rng.sample(pairs, samples)
    for Q, R in pairs:
        rpos = [Q.sorted_ids.index(i) for i in R.sorted_ids]
        sub_tables = set(F.hom_to_S_tables(R))
        for t in F.hom_to_S_tables(Q):
            if tuple(t[k] for k in rpos) not in sub_tables:
                problems.append(
                    f"restriction of an order-{Q.order} map missing at "
                    f"order {R.order}"
                )
                break
    # composition closure
    comps = []
    for Q in objects:
        for t in F.hom_to_S_tables(Q):
            comps.append((Q, t))
    rng2 = random.Random(seed + 1)
    if not full and len(comps) > samples:
        comps = rng2.sample(comps, samples)
    for Q, t in comps:
        img = frozenset(t)
        R = by_ids.get(img)
        if R is None:
            R = F.subgroup(img)
        second = F.hom_to_S_tables(R)
        table_set = set(F.hom_to_S_tables(Q))
        pos = {i: k for k, i in enumerate(R.sorted_ids)}
        for t2 in second if full else second[: max(1, samples // 10)]:
            composite = tuple(t2[pos[i]] for i in t)
            if composite not in table_set:
                problems.append(
                    f"composition escaping the table at order {Q.order}"
                )
                break
    return problems
