"""Consistency scoring and cluster ranking.

A candidate's score is n minus its total pairwise loss against all n
candidates (itself included, at loss 0 when it simulated cleanly). Under the
strict 0/1 loss that collapses to the cluster size for clean clusters and to
exactly 0 for failed ones; the case-wise loss grades disagreement by the
fraction of differing test cases and is kept in exact rational arithmetic.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Literal

from .model import Cluster, ExecutionTrace, Score, ScoredCluster

LossKind = Literal["strict", "case"]


def strict_loss(a: ExecutionTrace, b: ExecutionTrace) -> int:
    """1 if the traces disagree anywhere or either simulation failed, else 0."""
    if a.ok and b.ok and a.records == b.records:
        return 0
    return 1


def case_loss(a: ExecutionTrace, b: ExecutionTrace, m: int) -> Fraction:
    """Fraction of test cases on which the traces disagree; 1 on any failure."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not (a.ok and b.ok):
        return Fraction(1)
    if len(a.records) != m or len(b.records) != m:
        raise ValueError("ok traces must carry exactly m records")
    differing = sum(1 for ra, rb in zip(a.records, b.records) if ra != rb)
    return Fraction(differing, m)


def score_clusters(
    clusters: list[Cluster],
    traces: list[ExecutionTrace],
    n: int,
    loss: LossKind = "strict",
) -> list[ScoredCluster]:
    """Attach the common member score to every cluster.

    All members of a cluster share one trace, so the sum over all n
    candidates reduces to a sum over clusters weighted by member count. For
    the strict loss the closed form is used directly: member count for clean
    clusters, 0 for failed singletons.
    """
    if loss not in ("strict", "case"):
        raise ValueError(f"unknown loss kind: {loss!r}")
    covered = sorted(i for c in clusters for i in c.members)
    if covered != list(range(n)):
        raise ValueError("clusters must partition candidate indices 0..n-1")

    if loss == "strict":
        return [
            ScoredCluster(cluster=c, score=0 if c.failed else len(c.members))
            for c in clusters
        ]

    m = next((len(t.records) for t in traces if t.ok), 1)
    scored: list[ScoredCluster] = []
    for c in clusters:
        total = Fraction(0)
        for other in clusters:
            pair = case_loss(c.canonical_trace, other.canonical_trace, m)
            total += pair * len(other.members)
        scored.append(ScoredCluster(cluster=c, score=n - total))
    return scored


def rank_clusters(scored: list[ScoredCluster]) -> list[ScoredCluster]:
    """Descending by score; ties go to the smaller minimum member index.

    Failed singletons land after every clean cluster regardless of score.
    """
    return sorted(
        scored,
        key=lambda sc: (sc.cluster.failed, -sc.score, sc.cluster.min_member),
    )


def select_representatives(
    ranked: list[ScoredCluster],
    k: int,
    rng: random.Random | None = None,
) -> list[int]:
    """One candidate per cluster in rank order, at most k in total.

    Deterministic mode (rng None) picks each cluster's minimum member index;
    pass a seeded random.Random for the sampled variant. Representatives are
    never functionally equivalent to each other by construction.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    picks: list[int] = []
    for sc in ranked[:k]:
        members = sorted(sc.cluster.members)
        picks.append(members[0] if rng is None else rng.choice(members))
    return picks
