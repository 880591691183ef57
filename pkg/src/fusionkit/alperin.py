"""Factor fusion-system morphisms through automorphisms of fcr objects.

The decomposition theorem guarantees that in a saturated system every
morphism is a composite of restricted automorphisms of fully normalised,
centric, radical subgroups. `alperin_decompose` finds such a chain by
breadth-first search; `verify_decomposition` recomputes the three clauses.
"""

from __future__ import annotations

from .classify import fcr_objects
from .fusion import FusionMorphism, FusionSystem, GeneratedFusion
from .groups import Subgroup


class AlperinDecomposition:
    """A chain of fcr automorphisms whose composite restricts to `phi`.

    chain[i] = (P_i, Q_i, psi_i): psi_i is an automorphism of the fcr
    object Q_i carrying P_{i-1} (the previous image, P_0 = source) to P_i.
    """

    def __init__(self, source: Subgroup, target: Subgroup, chain: list,
                 phi: FusionMorphism):
        self.source = source
        self.target = target
        self.chain = chain
        self.phi = phi

    def __len__(self):
        return len(self.chain)

    def composite_table(self) -> tuple:
        """The composite of the chain restricted to the source."""
        cur = self.source.sorted_ids
        for _P, Q, psi in self.chain:
            d = dict(zip(Q.sorted_ids, psi.images))
            cur = tuple(d[x] for x in cur)
        return cur

    def __repr__(self):
        orders = [Q.order for _P, Q, _psi in self.chain]
        return f"<AlperinDecomposition k={len(self.chain)} via {orders}>"


class DecompositionCheck:
    """Falsy when a clause fails; `violated` names the first failing one."""

    __slots__ = ("violated",)

    def __init__(self, violated: str | None):
        self.violated = violated

    def __bool__(self):
        return self.violated is None

    def __repr__(self):
        if self.violated is None:
            return "<DecompositionCheck ok>"
        return f"<DecompositionCheck violated clause {self.violated}>"


def _corestrict(F: FusionSystem, phi) -> FusionMorphism:
    if isinstance(phi, tuple) and len(phi) == 2:
        domain, images = phi
        phi = FusionMorphism(domain, F.subgroup(frozenset(images)),
                             tuple(images))
    if not isinstance(phi, FusionMorphism):
        raise TypeError(f"cannot interpret {phi!r} as a morphism")
    tables = F.hom_to_S_tables(F.subgroup(phi.domain.ids))
    if phi.images not in set(tables):
        raise ValueError("morphism does not belong to the system")
    return phi


def alperin_decompose(F: FusionSystem, phi) -> AlperinDecomposition:
    """Decompose `phi` (or its isomorphism-onto-image factor) into a chain
    of fcr automorphisms. Raises LookupError when the search exhausts,
    which on a saturated system cannot happen; exhaustion therefore
    reports a theorem-hypothesis violation."""
    phi = _corestrict(F, phi)
    P = F.subgroup(phi.domain.ids)
    target = phi.images
    start = P.sorted_ids
    fcr = sorted(fcr_objects(F), key=lambda Q: (-Q.order, Q.sorted_ids))
    moves = []
    for Q in fcr:
        auts = sorted(
            t for t in F.hom_to_S_tables(Q) if frozenset(t) == Q.ids
        )
        for t in auts:
            moves.append((Q, dict(zip(Q.sorted_ids, t)), t))
    parents = {start: None}
    frontier = [start]
    while frontier and target not in parents:
        new = []
        for cur in frontier:
            cur_set = set(cur)
            for Q, d, t in moves:
                if not cur_set <= Q.ids:
                    continue
                nxt = tuple(d[x] for x in cur)
                if nxt in parents:
                    continue
                parents[nxt] = (cur, Q, t)
                new.append(nxt)
        frontier = new
    if target not in parents:
        raise LookupError(
            "no fcr decomposition found; the decomposition theorem "
            "guarantees one for saturated systems, so the input system "
            "violates the theorem hypothesis"
        )
    steps = []
    cur = target
    while parents[cur] is not None:
        prev, Q, t = parents[cur]
        psi = FusionMorphism(Q, Q, t)
        steps.append((F.subgroup(frozenset(cur)), Q, psi))
        cur = prev
    steps.reverse()
    return AlperinDecomposition(P, F.subgroup(frozenset(target)), steps, phi)


def verify_decomposition(F: FusionSystem, d: AlperinDecomposition,
                         phi=None) -> DecompositionCheck:
    """Recompute the three clauses: (a) every Q_i is fcr, (b) each psi_i
    is an F-automorphism of Q_i moving P_{i-1} onto P_i inside Q_i,
    (c) the composite restricted to the source equals phi."""
    if phi is None:
        phi = d.phi
    if isinstance(phi, tuple) and len(phi) == 2:
        phi = FusionMorphism(phi[0], F.S, tuple(phi[1]))
    fcr = {Q.ids for Q in fcr_objects(F)}
    for _P, Q, _psi in d.chain:
        if Q.ids not in fcr:
            return DecompositionCheck("a")
    prev = d.source
    for P_i, Q, psi in d.chain:
        auts = {
            t for t in F.hom_to_S_tables(Q) if frozenset(t) == Q.ids
        }
        if psi.images not in auts:
            return DecompositionCheck("b")
        if not (prev.ids <= Q.ids and P_i.ids <= Q.ids):
            return DecompositionCheck("b")
        dmap = dict(zip(Q.sorted_ids, psi.images))
        if frozenset(dmap[x] for x in prev.ids) != P_i.ids:
            return DecompositionCheck("b")
        prev = P_i
    if d.composite_table() != tuple(phi.images):
        return DecompositionCheck("c")
    return DecompositionCheck(None)


def regenerate_from_fcr(F: FusionSystem, *, generators_only: bool = False):
    """The fusion system generated by the fcr automorphism groups of F.

    For saturated F this regenerates F itself (the global content of the
    decomposition theorem). `generators_only` seeds a generating subset
    of each Aut_F(Q) instead of the full set; the closure is identical.
    """
    seeds = []
    for Q in fcr_objects(F):
        auts = sorted(
            t for t in F.hom_to_S_tables(Q) if frozenset(t) == Q.ids
        )
        if generators_only:
            from .classify import aut_f_group
            grp, tables = aut_f_group(F, Q)
            keep = [tables[i] for i in grp.full().generator_ids()]
            auts = sorted(keep)
        seeds.extend(FusionMorphism(Q, Q, t) for t in auts)
    return GeneratedFusion(F.S, F.p, seeds,
                           descriptor={"kind": "fcr-regeneration"})
