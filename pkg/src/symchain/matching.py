"""Maximum bipartite matching (Hopcroft-Karp) over int-indexed adjacency.

Left vertices are 0..len(adj)-1, right vertices 0..n_right-1.  A seed
matching can be passed in; augmenting paths only ever grow a matching,
so every seeded pair stays matched (possibly to a new partner on the
left, never dropped on the right).  That property is what the chain
constructions rely on to feed priority targets first and then extend
to a saturating assignment.
"""

from __future__ import annotations

from collections import deque

INF = float("inf")


def hopcroft_karp(
    adj: list[list[int]],
    n_right: int,
    seed: list[int] | None = None,
) -> tuple[list[int], list[int], int]:
    """Maximum matching; returns (match_left, match_right, size).

    match_left[u] is the matched right vertex or -1; match_right mirrors it.
    """
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    size = 0
    if seed is not None:
        for u, v in enumerate(seed):
            if v != -1:
                if match_r[v] != -1 or match_l[u] != -1:
                    raise ValueError("inconsistent seed matching")
                match_l[u] = v
                match_r[v] = u
                size += 1
    # greedy pass: cheap and removes most of the augmentation work
    for u in range(n_left):
        if match_l[u] == -1:
            for v in adj[u]:
                if match_r[v] == -1:
                    match_l[u] = v
                    match_r[v] = u
                    size += 1
                    break

    dist = [INF] * n_left
    while True:
        frontier = _bfs(adj, match_l, match_r, dist)
        if frontier == INF:
            break
        for u in range(n_left):
            if match_l[u] == -1 and _augment(u, adj, match_l, match_r, dist, frontier):
                size += 1
    return match_l, match_r, size


def _bfs(adj, match_l, match_r, dist) -> float:
    q = deque()
    for u in range(len(adj)):
        if match_l[u] == -1:
            dist[u] = 0
            q.append(u)
        else:
            dist[u] = INF
    frontier = INF
    while q:
        u = q.popleft()
        du = dist[u]
        if du >= frontier:
            continue
        for v in adj[u]:
            w = match_r[v]
            if w == -1:
                if frontier == INF:
                    frontier = du + 1
            elif dist[w] == INF:
                dist[w] = du + 1
                q.append(w)
    return frontier


def _augment(u0, adj, match_l, match_r, dist, frontier) -> bool:
    """Iterative shortest-path DFS; flips the path if one is found."""
    stack = [(u0, iter(adj[u0]))]
    chosen: list[int] = []
    while stack:
        u, it = stack[-1]
        moved = False
        for v in it:
            w = match_r[v]
            if w == -1:
                if dist[u] + 1 == frontier:
                    chosen.append(v)
                    for (uu, _), vv in zip(stack, chosen):
                        match_l[uu] = vv
                        match_r[vv] = uu
                    return True
            elif dist[w] == dist[u] + 1:
                chosen.append(v)
                stack.append((w, iter(adj[w])))
                moved = True
                break
        if not moved:
            dist[u] = INF
            stack.pop()
            if chosen:
                chosen.pop()
    return False
