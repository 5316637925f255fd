"""Partition candidates into clusters of identical simulation behavior.

Two candidates share a cluster exactly when both simulated cleanly and their
record lists match on every test case. A failed candidate is inconsistent
with everything, including other failed candidates, so it always forms its
own singleton cluster.
"""
from __future__ import annotations

from .model import Cluster, ExecutionTrace


def cluster_traces(traces: list[ExecutionTrace]) -> list[Cluster]:
    """Group candidate indices 0..n-1 by exact trace equality.

    The returned clusters partition the candidate set and are ordered by
    their smallest member index, so the output depends only on trace content,
    not on dict iteration quirks.
    """
    if not traces:
        raise ValueError("traces must be non-empty")
    groups: dict[tuple[str, ...], list[int]] = {}
    clusters: list[Cluster] = []
    for index, trace in enumerate(traces):
        if trace.ok:
            groups.setdefault(trace.records, []).append(index)
        else:
            clusters.append(
                Cluster(members=frozenset({index}), canonical_trace=trace, failed=True)
            )
    for members in groups.values():
        clusters.append(
            Cluster(
                members=frozenset(members),
                canonical_trace=traces[members[0]],
                failed=False,
            )
        )
    clusters.sort(key=lambda c: c.min_member)
    return clusters
