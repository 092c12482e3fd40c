"""Independent reference computations shared by the test modules."""

import itertools


def pruefer_trees(k):
    if k == 1:
        yield []
        return
    if k == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(k), repeat=k - 2):
        degree = [1] * k
        for s in seq:
            degree[s] += 1
        edges = []
        for s in seq:
            leaf = min(v for v in range(k) if degree[v] == 1)
            edges.append((leaf, s))
            degree[leaf] -= 1
            degree[s] -= 1
        u, w = [v for v in range(k) if degree[v] == 1]
        edges.append((u, w))
        yield edges


def oracle_splits(k, edges, placement, labels):
    """Each edge as an unordered bipartition of the labels."""
    out = set()
    for cut in edges:
        adj = {v: set() for v in range(k)}
        for a, b in edges:
            if (a, b) != cut:
                adj[a].add(b)
                adj[b].add(a)
        side, stack = {cut[0]}, [cut[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in side:
                    side.add(w)
                    stack.append(w)
        left = frozenset(lab for lab in labels if placement[lab] in side)
        out.add(frozenset((left, frozenset(labels) - left)))
    return frozenset(out)


def brute_force_strata(labels):
    """Isomorphism classes of stable marked trees with at least one node, keyed by split sets."""
    n = len(labels)
    found = set()
    for k in range(2, n - 1):
        for edges in pruefer_trees(k):
            deg = [sum(v in e for e in edges) for v in range(k)]
            for assign in itertools.product(range(k), repeat=n):
                placement = dict(zip(labels, assign))
                if all(deg[v] + list(assign).count(v) >= 3 for v in range(k)):
                    found.add(oracle_splits(k, edges, placement, labels))
    return found
