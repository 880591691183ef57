"""Classification predicates for fusion systems.

Implements the full battery over a FusionSystem F: fully automised,
receptive (with N_phi witnesses), saturated, fully centralised/normalised,
centric, radical (via the outer automorphism group materialized as a
permutation group), the fcr/cr object lists, strong closure, and normality.
"""

from __future__ import annotations

from . import perms
from .fusion import FusionMorphism, FusionSystem
from .groups import (
    FiniteGroup,
    Subgroup,
    p_core,
)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


class NphiWitness:
    """Evidence for one receptivity test: the morphism, its N_phi, and the
    extension found (or None when the test failed)."""

    __slots__ = ("phi", "n_phi", "extension")

    def __init__(self, phi: FusionMorphism, n_phi: Subgroup,
                 extension: FusionMorphism | None):
        self.phi = phi
        self.n_phi = n_phi
        self.extension = extension
        if extension is not None:
            rest = extension.restrict(phi.domain)
            assert rest.images == phi.images, "extension does not restrict to phi"

    def __repr__(self):
        ok = "extended" if self.extension is not None else "no extension"
        return f"<NphiWitness |Q|={self.phi.domain.order} {ok}>"


class SaturationReport:
    """Outcome of the saturation check, one row per F-conjugacy class."""

    def __init__(self, verdict: bool, per_class: list, counterexample):
        self.verdict = verdict
        self.per_class = per_class
        self.counterexample = counterexample

    def __bool__(self):
        return self.verdict

    def __repr__(self):
        return f"<SaturationReport verdict={self.verdict} " \
               f"classes={len(self.per_class)}>"


def is_fully_automised(F: FusionSystem, P: Subgroup) -> bool:
    aut_s, _ = F.aut_s_tables(P)
    aut_f = [t for t in F.hom_to_S_tables(P) if frozenset(t) == P.ids]
    if not set(aut_s) <= set(aut_f):
        raise AssertionError("Aut_S(P) escaped Aut_F(P)")
    return len(aut_s) == _p_part(len(aut_f), F.p)


def _n_phi_ids(F: FusionSystem, Q: Subgroup, table: tuple) -> frozenset:
    """N_phi for the iso given by `table` on Q, onto its image P.

    Computed over cosets of C_S(Q) in N_S(Q): inner twists land in
    Inn(P) <= Aut_S(P), so membership is constant on each coset.
    """
    amb = F.ambient
    P = F.subgroup(frozenset(table))
    aut_s_P = set(F.aut_s_tables(P)[0])
    d = dict(zip(Q.sorted_ids, table))
    d_inv = {v: k for k, v in d.items()}
    psorted = P.sorted_ids
    ids = set()
    for r, coset in F.centralizer_cosets(Q):
        rp = amb.elements[r]
        twisted = tuple(
            d[amb.index[perms.conjugate(amb.elements[d_inv[y]], rp)]]
            for y in psorted
        )
        if twisted in aut_s_P:
            ids |= coset
    return frozenset(ids)


def receptivity_witnesses(F: FusionSystem, P: Subgroup, *,
                          stop_early: bool = False):
    """(verdict, witnesses) for receptivity of P.

    Quantifies over every Q in the F-class of P and every isomorphism
    Q -> P in F; each witness records N_phi and the found extension.
    """
    P = F.subgroup(P.ids)
    witnesses = []
    verdict = True
    if P.ids == F.S.ids:
        # N_phi = S for every automorphism of S (twists stay inner), and
        # each map is its own extension
        for t in F.hom_to_S_tables(P):
            if frozenset(t) != P.ids:
                continue
            phi = FusionMorphism(P, P, t)
            witnesses.append(NphiWitness(phi, P, FusionMorphism(P, F.S, t)))
            if stop_early:
                break
        return True, witnesses
    for Q in F.f_conjugates(P):
        for t in F.hom_to_S_tables(Q):
            if frozenset(t) != P.ids:
                continue
            n_phi = F.subgroup(_n_phi_ids(F, Q, t))
            idx = F.extension_index(n_phi, Q)
            full = idx.get(t)
            phi = FusionMorphism(Q, P, t)
            if full is None:
                witnesses.append(NphiWitness(phi, n_phi, None))
                verdict = False
                if stop_early:
                    return verdict, witnesses
            else:
                ext = FusionMorphism(n_phi, F.S, full)
                witnesses.append(NphiWitness(phi, n_phi, ext))
    return verdict, witnesses


def is_receptive(F: FusionSystem, P: Subgroup) -> bool:
    verdict, _ = receptivity_witnesses(F, P, stop_early=True)
    return verdict


def is_fully_centralised(F: FusionSystem, P: Subgroup) -> bool:
    sizes = {
        Q.ids: F.centralizer_of(Q).order for Q in F.f_conjugates(P)
    }
    return sizes[P.ids] == max(sizes.values())


def is_fully_normalised(F: FusionSystem, P: Subgroup) -> bool:
    sizes = {
        Q.ids: F.normalizer_of(Q).order for Q in F.f_conjugates(P)
    }
    return sizes[P.ids] == max(sizes.values())


def is_centric(F: FusionSystem, P: Subgroup) -> bool:
    return all(
        F.centralizer_of(Q).ids <= Q.ids for Q in F.f_conjugates(P)
    )


def aut_f_group(F: FusionSystem, P: Subgroup) -> tuple[FiniteGroup, list]:
    """Aut_F(P) as a permutation group on the elements of P.

    Returns (group, tables) where tables[i] is the hom table whose
    position-permutation is group.elements[i].
    """
    P = F.subgroup(P.ids)
    pos = {i: k for k, i in enumerate(P.sorted_ids)}
    auts = [t for t in F.hom_to_S_tables(P) if frozenset(t) == P.ids]
    as_perms = {tuple(pos[v] for v in t): t for t in auts}
    grp = FiniteGroup(
        P.order, [], name=f"Aut_F on {P.order} points",
        elements=set(as_perms),
    )
    tables = [as_perms[q] for q in grp.elements]
    return grp, tables


def out_F(F: FusionSystem, P: Subgroup) -> FiniteGroup:
    """Out_F(P) = Aut_F(P)/Inn(P), as a permutation group on Inn-cosets."""
    P = F.subgroup(P.ids)
    amb = F.ambient
    grp, _tables = aut_f_group(F, P)
    pos = {i: k for k, i in enumerate(P.sorted_ids)}
    inn = set()
    for x in P.sorted_ids:
        xp = amb.elements[x]
        inn.add(tuple(
            pos[amb.index[perms.conjugate(amb.elements[i], xp)]]
            for i in P.sorted_ids
        ))
    inn_ids = frozenset(grp.index[q] for q in inn)
    if len(inn_ids) == grp.order:
        return FiniteGroup(1, [], name="trivial")
    if len(inn_ids) == 1:
        return grp
    # partition Aut_F into Inn-cosets, then act on the coset space
    coset_of = {}
    reps = []
    for i in range(grp.order):
        if i in coset_of:
            continue
        c = len(reps)
        reps.append(i)
        for j in inn_ids:
            coset_of[grp.mul_ids(j, i)] = c
    m = len(reps)
    A = grp.full()
    gen_ids = A.generator_ids()
    qgens = [
        tuple(coset_of[grp.mul_ids(r, g)] for r in reps) for g in gen_ids
    ]
    out = FiniteGroup(m, qgens, name=f"Out_F of order {m}")
    assert out.order == m, "coset action degenerated"
    return out


def is_radical(F: FusionSystem, P: Subgroup) -> bool:
    out = out_F(F, P)
    if out.order == 1:
        return True
    return p_core(out.full(), F.p).order == 1


def fcr_objects(F: FusionSystem) -> list[Subgroup]:
    """Objects that are simultaneously fully normalised, centric, radical."""
    out = []
    for cls in F.conjugacy_classes():
        rep = cls[0]
        if not is_centric(F, rep):
            continue
        if not is_radical(F, rep):
            continue
        nsizes = {Q.ids: F.normalizer_of(Q).order for Q in cls}
        best = max(nsizes.values())
        out.extend(Q for Q in cls if nsizes[Q.ids] == best)
    return sorted(out, key=lambda Q: (Q.order, Q.sorted_ids))


def cr_objects(F: FusionSystem) -> list[Subgroup]:
    """All objects in centric-radical classes."""
    out = []
    for cls in F.conjugacy_classes():
        rep = cls[0]
        if is_centric(F, rep) and is_radical(F, rep):
            out.extend(cls)
    return sorted(out, key=lambda Q: (Q.order, Q.sorted_ids))


def is_saturated(F: FusionSystem) -> SaturationReport:
    """Def-literal saturation: every class owns a fully automised and
    receptive member. Rows carry the witnessing member (or the least
    member, with its failing flags, when none exists)."""
    per_class = []
    counterexample = None
    verdict = True
    for cls in F.conjugacy_classes():
        found = None
        for Q in cls:
            if not is_fully_automised(F, Q):
                continue
            if is_receptive(F, Q):
                found = Q
                break
        if found is not None:
            per_class.append({
                "representative": found,
                "fully_automised": True,
                "receptive": True,
            })
        else:
            verdict = False
            least = cls[0]
            per_class.append({
                "representative": least,
                "fully_automised": is_fully_automised(F, least),
                "receptive": is_receptive(F, least),
            })
            if counterexample is None:
                counterexample = least
    return SaturationReport(verdict, per_class, counterexample)


def is_strongly_closed(F: FusionSystem, P: Subgroup) -> bool:
    pids = P.ids
    return all(
        set(F.f_class_of_element(x)) <= pids for x in P.sorted_ids
    )


def is_normal_in_F(F: FusionSystem, P: Subgroup) -> bool:
    """P is normal in F: every morphism Q -> R extends to one on QP that
    maps P onto itself. Quantified over the full hom table."""
    amb = F.ambient
    P = F.subgroup(P.ids)
    # the Q = S case of the definition forces P normal in S
    for s in F.S.generator_ids():
        sp = amb.elements[s]
        if any(
            amb.index[perms.conjugate(amb.elements[x], sp)] not in P.ids
            for x in P.generator_ids()
        ):
            return False
    ppos_cache: dict = {}
    for Q in F.objects():
        qp_ids = _product_ids(amb, Q, P)
        QP = F.subgroup(qp_ids)
        key = (QP.ids, Q.ids)
        idx = ppos_cache.get(key)
        if idx is None:
            qpos = [QP.sorted_ids.index(i) for i in Q.sorted_ids]
            ppos = [QP.sorted_ids.index(i) for i in P.sorted_ids]
            idx = set()
            for full in F.hom_to_S_tables(QP):
                if frozenset(full[k] for k in ppos) == P.ids:
                    idx.add(tuple(full[k] for k in qpos))
            ppos_cache[key] = idx
        for t in F.hom_to_S_tables(Q):
            if t not in idx:
                return False
    return True


def _product_ids(amb, Q: Subgroup, P: Subgroup) -> frozenset:
    """Element ids of QP for P normal in S (so the set product is a group)."""
    out = set()
    els = amb.elements
    for q in Q.ids:
        qp = els[q]
        for x in P.ids:
            out.add(amb.index[perms.mul(qp, els[x])])
    return frozenset(out)


def classifier_rows(F: FusionSystem) -> list[dict]:
    """Per-object flag rows in the report schema, objects by generator
    permutation lists (never internal indices)."""
    amb = F.ambient
    rows = []
    for Q in F.objects():
        gens = [list(amb.elements[i]) for i in Q.generator_ids()]
        rows.append({
            "object": gens,
            "fully_automised": is_fully_automised(F, Q),
            "receptive": is_receptive(F, Q),
            "centric": is_centric(F, Q),
            "radical": is_radical(F, Q),
            "fully_normalised": is_fully_normalised(F, Q),
            "strongly_closed": is_strongly_closed(F, Q),
        })
    return rows
