"""Strongly connected components, sink detection, and accessibility.

Components are computed over state nodes only; measurement nodes never
join a component.  A component is a *parent* when none of its states has
an arc into a different component — arcs into measurement nodes do not
count against parenthood.  A component is *matched* when its internal
bipartite restriction admits a perfect matching (equivalently, a family
of disjoint cycles covers all of its states; a singleton qualifies only
through a self-loop).
"""

from dataclasses import dataclass

from ._kernels import csr_from_edges, hopcroft_karp, tarjan_scc
from .errors import InconsistencyError, PreconditionError
from .structure import build_digraph, measurement_node, reverse_reachable


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple    # tuples of ascending state numbers, sorted by lowest member
    parent_flags: tuple  # bool per component: no arc into another component
    matched_flags: tuple  # bool per component: internal perfect matching exists
    order: tuple         # condensation DAG as (src_comp, dst_comp) index pairs

    def component_of(self, state):
        for idx, comp in enumerate(self.components):
            if state in comp:
                return idx
        raise PreconditionError(f"state {state} not in any component")

    def parent_components(self):
        return tuple(i for i, flag in enumerate(self.parent_flags) if flag)


def decompose(dg):
    """SCC decomposition of the state part of a system digraph."""
    n = dg.n
    state_edges = sorted(
        (dg.node_index(s), dg.node_index(d))
        for s, d in dg.edges
        if d.startswith("x")
    )
    indptr, indices = csr_from_edges(n, state_edges)
    comp_raw, n_comp = tarjan_scc(indptr, indices, n)

    groups = [[] for _ in range(n_comp)]
    for state0 in range(n):
        groups[comp_raw[state0]].append(state0 + 1)
    order = sorted(range(n_comp), key=lambda c: groups[c][0])
    components = tuple(tuple(groups[old]) for old in order)
    comp_of = {}
    for idx, comp in enumerate(components):
        for s in comp:
            comp_of[s] = idx

    cond = set()
    is_parent = [True] * n_comp
    for src0, dst0 in state_edges:
        cs = comp_of[src0 + 1]
        cd = comp_of[dst0 + 1]
        if cs != cd:
            cond.add((cs, cd))
            is_parent[cs] = False

    matched = []
    for comp in components:
        local = {s: i for i, s in enumerate(comp)}
        internal = []
        for src0, dst0 in state_edges:
            src, dst = src0 + 1, dst0 + 1
            if src in local and dst in local:
                internal.append((local[src], local[dst]))
        bp, bi = csr_from_edges(len(comp), sorted(internal))
        match_begin, _ = hopcroft_karp(bp, bi, len(comp), len(comp))
        matched.append(bool((match_begin >= 0).all()))

    return SccDecomposition(
        components=components,
        parent_flags=tuple(is_parent),
        matched_flags=tuple(matched),
        order=tuple(sorted(cond)),
    )


def accessibility_check(dg):
    """Split the states by whether a directed path reaches a measurement.

    Returns ``(accessible, inaccessible)``, both ascending tuples.
    """
    targets = [measurement_node(i) for i in range(1, dg.p + 1)]
    if not targets:
        return (), tuple(range(1, dg.n + 1))
    can_reach = reverse_reachable(dg, targets)
    accessible = []
    inaccessible = []
    for i in range(1, dg.n + 1):
        (accessible if f"x{i}" in can_reach else inaccessible).append(i)
    return tuple(accessible), tuple(inaccessible)


def block_form_certificate(sys):
    """State order putting inaccessible states first.

    Permuting A and H by the returned order exposes the unobservable
    block: the lower-left block of A and the leading columns of H are
    structurally zero.  Both zero blocks are verified entry by entry
    before returning.
    """
    dg = build_digraph(sys)
    _, inaccessible = accessibility_check(dg)
    if not inaccessible:
        raise PreconditionError("system has no inaccessible states")
    inacc = set(inaccessible)
    order = tuple(sorted(inacc)) + tuple(s for s in range(1, sys.n + 1) if s not in inacc)

    for (i, j) in sys.a_pattern:
        if i not in inacc and j in inacc:
            raise InconsistencyError(
                f"a_pattern entry ({i}, {j}) crosses into the zero block"
            )
    for (i, j) in sys.h_pattern:
        if j in inacc:
            raise InconsistencyError(
                f"h_pattern entry ({i}, {j}) measures an inaccessible state"
            )
    return order
