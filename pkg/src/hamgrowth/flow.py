"""Dinic max-flow on integer capacities, with the minimal source side of a min cut."""
from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.head = [[] for _ in range(n)]  # adjacency: edge indices
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, a: int, b: int, c: int) -> None:
        self.head[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(c)
        self.head[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)

    def _bfs(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for e in self.head[x]:
                if self.cap[e] > 0 and level[self.to[e]] < 0:
                    level[self.to[e]] = level[x] + 1
                    dq.append(self.to[e])
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, None, level, it)
                if not pushed:
                    break
                total += pushed

    def _dfs(self, s, t, limit, level, it):
        # iterative augmenting path search in the level graph
        path = []
        x = s
        while True:
            if x == t:
                flow = min(self.cap[e] for e in path)
                if limit is not None:
                    flow = min(flow, limit)
                for e in path:
                    self.cap[e] -= flow
                    self.cap[e ^ 1] += flow
                return flow
            adj = self.head[x]
            while it[x] < len(adj):
                e = adj[it[x]]
                y = self.to[e]
                if self.cap[e] > 0 and level[y] == level[x] + 1:
                    break
                it[x] += 1
            else:
                if not path:
                    return 0
                level[x] = -1  # dead end
                e = path.pop()
                x = self.to[e ^ 1]
                it[x] += 1
                continue
            path.append(adj[it[x]])
            x = self.to[adj[it[x]]]

    def source_side(self, s: int) -> set[int]:
        """Nodes reachable from s in the residual graph (minimal min-cut side)."""
        seen = {s}
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for e in self.head[x]:
                y = self.to[e]
                if self.cap[e] > 0 and y not in seen:
                    seen.add(y)
                    dq.append(y)
        return seen
