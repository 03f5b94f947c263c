"""Numeric cross-validation of structural verdicts.

Structural claims ("this pattern is generically observable", "these two
sensor sites are interchangeable") hold for almost every choice of matrix
values.  This module draws concrete realizations — log-uniform magnitudes
in [0.5, 2] with random signs, deterministic per (seed, trial) — and
checks the claims with plain linear algebra: the rank of the stacked
observability matrix [H; HA; ...; HA^(n-1)] and the eigenvector test on
[A - lambda*I; H].  Ranks are SVD-based with a relative threshold, and
verdicts are taken as the mode over several trials so a single unlucky
draw near a degenerate surface cannot flip a result.
"""

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ParameterError
from .partition import theorem_check

DEFAULT_SEED = 42
DEFAULT_TRIALS = 5
DEFAULT_TOL = 1e-8

_LOG_LO = math.log(0.5)
_LOG_HI = math.log(2.0)


@dataclass(frozen=True)
class NumericRealization:
    """One concrete (A, H) drawn on a sparsity pattern."""

    a: np.ndarray
    h: np.ndarray
    seed: int
    trial: int


def _check_tol(tol):
    if not (isinstance(tol, (int, float)) and tol > 0):
        raise ParameterError(f"tol must be positive, got {tol!r}")


def _check_trials(trials):
    if not (isinstance(trials, int) and trials >= 1):
        raise ParameterError(f"trials must be a positive integer, got {trials!r}")


def realize(sys, seed=DEFAULT_SEED, trial=0):
    """Draw values on the pattern; deterministic for a (seed, trial) pair."""
    if not (isinstance(seed, int) and seed >= 0):
        raise ParameterError(f"seed must be a non-negative integer, got {seed!r}")
    if not (isinstance(trial, int) and trial >= 0):
        raise ParameterError(f"trial must be a non-negative integer, got {trial!r}")
    rng = np.random.default_rng([seed, trial])
    a_entries = sys.sorted_a()
    h_entries = sys.sorted_h()
    count = len(a_entries) + len(h_entries)
    magnitudes = np.exp(rng.uniform(_LOG_LO, _LOG_HI, size=count))
    signs = rng.integers(0, 2, size=count) * 2 - 1
    values = magnitudes * signs
    a = np.zeros((sys.n, sys.n))
    h = np.zeros((sys.p, sys.n))
    for k, (i, j) in enumerate(a_entries):
        a[i - 1, j - 1] = values[k]
    for k, (i, j) in enumerate(h_entries):
        h[i - 1, j - 1] = values[len(a_entries) + k]
    return NumericRealization(a=a, h=h, seed=seed, trial=trial)


def _normalized_a(a):
    # Scale by the max absolute row sum so powers neither blow up nor decay
    # below the rank threshold; c*A and A normalize to the same matrix, so
    # rank verdicts are scale-invariant.  Block rows pick up s^k > 0, which
    # leaves the rank untouched.
    scale = np.abs(a).sum(axis=1).max()
    if scale > 0:
        return a / scale
    return a


def _svd_rank(matrix, tol):
    if matrix.size == 0:
        return 0
    sv = np.linalg.svd(matrix, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int((sv > tol * sv[0]).sum())


def _orth_rows(matrix, tol):
    """Orthonormal basis of the row space; directions below tol dropped."""
    _, sv, vt = np.linalg.svd(matrix, full_matrices=False)
    if sv.size == 0 or sv[0] == 0:
        return np.zeros((0, matrix.shape[1]))
    return vt[sv > tol * sv[0]]


def gramian_rank(r, tol=DEFAULT_TOL):
    """Rank of the stacked observability matrix of one realization.

    The row space of [H; HA; ...; HA^(n-1)] is grown one multiplication
    at a time, re-orthonormalizing after each step.  Forming the powers
    directly would let genuine directions decay exponentially below any
    fixed threshold on larger systems; here nothing is ever multiplied
    by A more than once before renormalization, so only true
    near-dependencies fall under ``tol``.
    """
    _check_tol(tol)
    a = _normalized_a(r.a)
    if r.h.size == 0:
        return 0
    basis = _orth_rows(r.h, tol)
    for _ in range(a.shape[1] - 1):
        grown = _orth_rows(np.vstack([basis, basis @ a]), tol)
        if grown.shape[0] == basis.shape[0]:
            break  # invariant row space: further powers add nothing
        basis = grown
    return basis.shape[0]


def modal_gramian_rank(sys, seed=DEFAULT_SEED, trials=DEFAULT_TRIALS, tol=DEFAULT_TOL):
    """(modal rank, agreement fraction) over ``trials`` realizations."""
    _check_trials(trials)
    ranks = [gramian_rank(realize(sys, seed, t), tol) for t in range(trials)]
    counts = Counter(ranks)
    best = max(counts.values())
    modal = min(r for r, c in counts.items() if c == best)
    return modal, best / trials


def pbh_check(r, tol=DEFAULT_TOL):
    """Eigenvalues of A at which [A - lambda*I; H] loses column rank.

    Works on the raw A: no powers are formed, so no pre-scaling is
    needed, and the reported eigenvalues are the system's own.
    """
    _check_tol(tol)
    a = r.a
    n = a.shape[0]
    try:
        eigenvalues = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(
            f"eigensolver failed: {exc}\nA = {np.array2string(r.a)}"
        ) from exc
    deficient = []
    for lam in sorted(eigenvalues, key=lambda z: (z.real, z.imag)):
        pencil = np.vstack([a - lam * np.eye(n), r.h])
        if _svd_rank(pencil, tol) < n:
            deficient.append(complex(lam))
    return tuple(deficient)


@dataclass(frozen=True)
class RankReport:
    """Voting summary of the numeric oracle for one system."""

    n: int
    trials: int
    tol: float
    gramian_rank: int          # modal over trials
    agreement: float           # fraction of trials voting for the mode
    gramian_ranks: tuple       # per-trial ranks
    pbh_rank_deficient_eigenvalues: tuple  # from trial 0
    pbh_observable: tuple      # per-trial eigenvector-test verdicts


def rank_report(sys, seed=DEFAULT_SEED, trials=DEFAULT_TRIALS, tol=DEFAULT_TOL):
    _check_trials(trials)
    _check_tol(tol)
    ranks = []
    pbh_verdicts = []
    pbh_first = ()
    for t in range(trials):
        r = realize(sys, seed, t)
        ranks.append(gramian_rank(r, tol))
        deficient = pbh_check(r, tol)
        pbh_verdicts.append(len(deficient) == 0)
        if t == 0:
            pbh_first = deficient
    counts = Counter(ranks)
    best = max(counts.values())
    modal = min(r for r, c in counts.items() if c == best)
    return RankReport(
        n=sys.n,
        trials=trials,
        tol=tol,
        gramian_rank=modal,
        agreement=best / trials,
        gramian_ranks=tuple(ranks),
        pbh_rank_deficient_eigenvalues=pbh_first,
        pbh_observable=tuple(pbh_verdicts),
    )


def _bare(sys):
    """The state pattern with all measurement rows dropped."""
    from .structure import StructuredSystem

    return StructuredSystem(n=sys.n, p=0, a_pattern=sys.a_pattern,
                            h_pattern=frozenset())


def _stacked_rank(sys, extra_states, seed, tol):
    """Numeric rank of a realized [A; rows on extra_states] stack."""
    probe = _bare(sys).with_sensor_rows(extra_states)
    r = realize(probe, seed, 0)
    return _svd_rank(np.vstack([r.a, r.h]), tol)


def verify_alpha_equivalence(sys, u, v, seed=DEFAULT_SEED, tol=DEFAULT_TOL):
    """Do sensors at u and v repair the same single structural-rank deficit?

    Checks that a row on u, a row on v, and both rows together each lift
    the structural rank of the bare state pattern by exactly one, then
    confirms the three ranks on a numeric realization.
    """
    from .matching import s_rank  # local import keeps module load order flat

    _check_tol(tol)
    bare = _bare(sys)
    base = s_rank(bare)
    probes = ([u], [v], [u, v])
    structural_ok = all(
        s_rank(bare.with_sensor_rows(extra), include_h=True) == base + 1
        for extra in probes
    )
    if not structural_ok:
        return False
    return all(
        _stacked_rank(sys, extra, seed, tol) == base + 1 for extra in probes
    )


def verify_beta_equivalence(
    sys, h_alpha, u, v, seed=DEFAULT_SEED, trials=DEFAULT_TRIALS, tol=DEFAULT_TOL
):
    """Are u and v interchangeable as one extra sensor on top of the
    rank-repairing rows?

    ``h_alpha`` lists the states already carrying rank sensors; the
    system's own measurement rows are ignored so the comparison is made
    against exactly that base.  True when the observability ranks with
    u, with v, and with both agree; when the base is nonempty the common
    value must also exceed the base rank by exactly one.  An empty base
    has no meaningful increment to anchor to (a lone sensor on a k-cycle
    sees all k states), so only the three-way equality is required.
    """
    _check_trials(trials)
    _check_tol(tol)
    h_alpha = list(h_alpha)
    base_sys = _bare(sys).with_sensor_rows(h_alpha)
    base_rank, _ = modal_gramian_rank(base_sys, seed, trials, tol)
    rank_u, _ = modal_gramian_rank(base_sys.with_sensor_rows([u]), seed, trials, tol)
    rank_v, _ = modal_gramian_rank(base_sys.with_sensor_rows([v]), seed, trials, tol)
    rank_uv, _ = modal_gramian_rank(
        base_sys.with_sensor_rows([u, v]), seed, trials, tol
    )
    if not (rank_u == rank_v == rank_uv):
        return False
    if h_alpha:
        return rank_u == base_rank + 1
    return True


def generic_agreement(sys, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, tol=DEFAULT_TOL):
    """Fraction of realizations whose full-rank verdict matches the
    structural test."""
    _check_trials(trials)
    _check_tol(tol)
    structural = theorem_check(sys).observable
    hits = 0
    for t in range(trials):
        numeric = gramian_rank(realize(sys, seed, t), tol) == sys.n
        if numeric == structural:
            hits += 1
    return hits / trials
