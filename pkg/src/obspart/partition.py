"""Measurement classification, equivalence classes, and sensor placement.

Candidate sensor sites fall into two families of classes, both computed
from the state pattern alone:

* rank classes — member sets of the bipartite contractions; a sensor on
  any member repairs the same unit of structural-rank deficit;
* access classes — matched parent components; a sensor on any member
  makes the whole component (and everything upstream of it) accessible.

A minimal placement hits every class once, sharing a state between a
rank class and an access class whenever their intersection allows it.
Classes within one family are disjoint, so the sharing opportunities
form a bipartite graph and the optimum is a maximum matching on it.

Existing measurement rows are labeled against the same classes: the
designated cover of a rank class is "alpha", of an access class "beta",
and anything left over is "gamma" (removable without losing generic
observability).
"""

from dataclasses import dataclass
from itertools import combinations

from ._kernels import csr_from_edges, hopcroft_karp
from .errors import (
    InconsistencyError,
    InfeasiblePlacementError,
    MalformedInputError,
    ParameterError,
    PreconditionError,
)
from .matching import s_rank, system_contractions
from .scc import accessibility_check, decompose
from .structure import StructuredSystem, build_digraph

ALPHA = "alpha"
BETA = "beta"
GAMMA = "gamma"

# Enumerating every minimal placement is exponential in principle; the
# guard keeps it to at most C(15, 7) candidate subsets.
ALL_WITNESS_LIMIT = 15


@dataclass(frozen=True)
class TheoremCheck:
    observable: bool
    failed_condition: str            # "", "accessibility", or "matching"
    inaccessible: tuple              # states with no path to a measurement
    s_rank: int                      # structural rank of the stacked pattern
    n: int


@dataclass(frozen=True)
class PartitionReport:
    alpha_classes: tuple
    beta_classes: tuple
    labels: tuple                    # one of ALPHA/BETA/GAMMA per row of H
    minimal_sets: tuple
    sensor_count: int


def theorem_check(sys):
    """Generic observability: accessibility plus full structural rank.

    When both conditions fail, accessibility is the reported reason —
    it is the cheaper one to explain and to fix.
    """
    dg = build_digraph(sys)
    _, inaccessible = accessibility_check(dg)
    rank = s_rank(sys, include_h=True)
    if inaccessible:
        failed = "accessibility"
    elif rank < sys.n:
        failed = "matching"
    else:
        failed = ""
    return TheoremCheck(
        observable=failed == "",
        failed_condition=failed,
        inaccessible=inaccessible,
        s_rank=rank,
        n=sys.n,
    )


def _strip_measurements(sys):
    return StructuredSystem(
        n=sys.n, p=0, a_pattern=sys.a_pattern, h_pattern=frozenset()
    )


def equivalence_classes(sys):
    """(rank classes, access classes) of the state pattern.

    Measurement rows are deliberately ignored: the classes describe
    candidate sensor sites, whether or not a sensor is already present.
    Access classes list every matched parent component; an unmatched
    parent yields none, because it necessarily contains a full rank
    class and the sensor that class demands already sits inside it.
    """
    bare = _strip_measurements(sys)
    alpha = tuple(c.members for c in system_contractions(bare))
    dec = decompose(build_digraph(bare))
    beta = tuple(
        comp
        for comp, is_parent, is_matched in zip(
            dec.components, dec.parent_flags, dec.matched_flags
        )
        if is_parent and is_matched
    )
    return alpha, beta


def _normalize_classes(classes, family):
    out = []
    for cls in classes:
        members = tuple(sorted(set(cls)))
        if not members:
            raise InfeasiblePlacementError(
                f"empty {family} class leaves nothing to place a sensor on",
                empty_class=tuple(cls),
            )
        out.append(members)
    out.sort()
    seen = set()
    for members in out:
        for state in members:
            if state in seen:
                raise InconsistencyError(
                    f"{family} classes overlap on state {state}"
                )
            seen.add(state)
    return tuple(out)


def forbid_states(alpha_classes, beta_classes, forbidden):
    """Drop forbidden states from every class, for what-if placement."""
    forbidden = set(forbidden)

    def reduce(classes, family):
        reduced = []
        for cls in classes:
            members = tuple(s for s in sorted(set(cls)) if s not in forbidden)
            if not members:
                raise InfeasiblePlacementError(
                    f"forbidding {sorted(forbidden)} empties the {family} "
                    f"class {tuple(sorted(set(cls)))}",
                    empty_class=tuple(sorted(set(cls))),
                )
            reduced.append(members)
        return tuple(reduced)

    return reduce(alpha_classes, "alpha"), reduce(beta_classes, "beta")


def _overlap_matching(alpha, beta):
    edges = []
    for i, a_cls in enumerate(alpha):
        a_set = set(a_cls)
        for j, b_cls in enumerate(beta):
            if a_set.intersection(b_cls):
                edges.append((i, j))
    indptr, indices = csr_from_edges(len(alpha), sorted(edges))
    match_begin, match_end = hopcroft_karp(indptr, indices, len(alpha), len(beta))
    return match_begin, match_end


def _witness(alpha, beta, match_begin, match_end):
    picks = []
    for i, a_cls in enumerate(alpha):
        j = match_begin[i]
        if j >= 0:
            picks.append(min(set(a_cls) & set(beta[j])))
        else:
            picks.append(a_cls[0])
    for j, b_cls in enumerate(beta):
        if match_end[j] < 0:
            picks.append(b_cls[0])
    witness = tuple(sorted(picks))
    if len(witness) != len(picks):
        raise InconsistencyError(
            "placement witness collided on a state; class families are "
            "not consistent with a maximum overlap matching"
        )
    return witness


def _all_witnesses(alpha, beta, count):
    candidates = sorted({s for cls in alpha for s in cls}
                        | {s for cls in beta for s in cls})
    if len(candidates) > ALL_WITNESS_LIMIT:
        raise ParameterError(
            f"witness enumeration supports at most {ALL_WITNESS_LIMIT} "
            f"candidate states, got {len(candidates)}"
        )
    classes = list(alpha) + list(beta)
    found = []
    for combo in combinations(candidates, count):
        chosen = set(combo)
        if all(chosen.intersection(cls) for cls in classes):
            found.append(combo)
    return tuple(found)


def minimal_placement(alpha_classes, beta_classes, *, sys=None, all_witnesses=False):
    """Smallest sensor set hitting every class, with witness placements.

    Returns ``(sets, count)``.  ``sets`` holds one witness by default
    (lowest-index tie-breaks throughout) or every minimal placement when
    ``all_witnesses`` is set.  When ``sys`` is given, each returned set
    is verified to make the bare state pattern generically observable.
    """
    alpha = _normalize_classes(alpha_classes, "alpha")
    beta = _normalize_classes(beta_classes, "beta")
    match_begin, match_end = _overlap_matching(alpha, beta)
    overlap = int((match_begin >= 0).sum())
    count = len(alpha) + len(beta) - overlap

    if all_witnesses:
        sets = _all_witnesses(alpha, beta, count)
    else:
        sets = (_witness(alpha, beta, match_begin, match_end),)

    if sys is not None:
        bare = _strip_measurements(sys)
        for placement in sets:
            check = theorem_check(bare.with_sensor_rows(placement))
            if not check.observable:
                raise InconsistencyError(
                    f"placement {placement} fails the observability theorem "
                    f"({check.failed_condition}); classes do not describe "
                    f"this system"
                )
    return list(sets), count


def classify_measurements(sys):
    """Label each measurement row alpha, beta, or gamma.

    Classes are covered greedily — rank classes first, then access
    classes, lowest row index first — so exactly one row is designated
    per class it is the first to reach; the rest are gamma.
    """
    if sys.p == 0:
        raise PreconditionError("classification requires at least one measurement row")
    row_states = {}
    for row in range(1, sys.p + 1):
        states = sys.row_states(row)
        if not states:
            raise MalformedInputError(f"measurement row {row} measures no state")
        row_states[row] = set(states)

    alpha, beta = equivalence_classes(sys)
    labels = {row: GAMMA for row in row_states}
    taken = set()
    for family, classes in ((ALPHA, alpha), (BETA, beta)):
        for cls in classes:
            members = set(cls)
            for row in range(1, sys.p + 1):
                if row not in taken and row_states[row] & members:
                    labels[row] = family
                    taken.add(row)
                    break
    return tuple(labels[row] for row in range(1, sys.p + 1))


def is_necessary(sys, row):
    """Would deleting this measurement row lose generic observability?"""
    if not (isinstance(row, int) and 1 <= row <= sys.p):
        raise ParameterError(
            f"row must be a measurement index in 1..{sys.p}, got {row!r}"
        )
    if not theorem_check(sys).observable:
        raise PreconditionError(
            "necessity is defined only for generically observable systems"
        )
    return not theorem_check(sys.without_row(row)).observable


def partition_report(sys, forbid=(), all_witnesses=False):
    """Full structural report: classes, row labels, minimal placements."""
    alpha, beta = equivalence_classes(sys)
    if forbid:
        alpha, beta = forbid_states(alpha, beta, forbid)
    sets, count = minimal_placement(alpha, beta, sys=sys, all_witnesses=all_witnesses)
    labels = classify_measurements(sys) if sys.p else ()
    return PartitionReport(
        alpha_classes=alpha,
        beta_classes=beta,
        labels=labels,
        minimal_sets=tuple(sets),
        sensor_count=count,
    )
