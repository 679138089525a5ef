"""Stable-birationality equivalence graph on big primitive classes.

Nodes are coprime pairs (a, b) with a > b >= 1 and a + b >= 6, playing the
role of classes a*alpha + b*beta with self-pairing chi(v,v) = -(a^2+ab+b^2)
below -22.  Three edge rules generate the equivalence:

    same-sum        all pairs with equal a + b (a clique per level)
    shift-minus-two (a, b) -- (a+1, b-2), needs b >= 3
    special         exactly (5, 4) -- (7, 1)

Connectivity across consecutive sum levels m and m+1 (m != 8) is witnessed
by a prime construction: with p the smallest odd prime not dividing m+1,
the nodes (m+1-p, p) and (m-p+2, p-2) are linked by a shift edge; the
missing 9-to-8 hop is exactly what the special edge provides.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BoundTooSmall, ExcludedSum, Unreachable

__all__ = [
    "RULE_SAME_SUM",
    "RULE_SHIFT",
    "RULE_SPECIAL",
    "BirGraph",
    "in_node_set",
    "build_graph",
    "build_graph_oracle",
    "check_connected",
    "prime_witness",
    "equivalence_path",
    "chi_self",
]

RULE_SAME_SUM = "same-sum"
RULE_SHIFT = "shift-minus-two"
RULE_SPECIAL = "special-54-71"

Node = tuple[int, int]
Edge = tuple[Node, Node, str]


def in_node_set(a: int, b: int) -> bool:
    return a > b >= 1 and a + b >= 6 and gcd(a, b) == 1


def chi_self(node: Node) -> int:
    a, b = node
    return -(a * a + a * b + b * b)


def _canonical_edge(x: Node, y: Node, rule: str) -> Edge:
    return (x, y, rule) if x <= y else (y, x, rule)


@dataclass(frozen=True)
class BirGraph:
    sum_bound: int
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]

    def adjacency(self) -> dict[Node, list[tuple[Node, str]]]:
        adj: dict[Node, list[tuple[Node, str]]] = {v: [] for v in self.nodes}
        for x, y, rule in self.edges:
            adj[x].append((y, rule))
            adj[y].append((x, rule))
        for v in adj:
            adj[v].sort()
        return adj


def _nodes_up_to(sum_bound: int) -> list[Node]:
    out = []
    for s in range(6, sum_bound + 1):
        for b in range(1, (s + 1) // 2):
            a = s - b
            if a > b and gcd(a, b) == 1:
                out.append((a, b))
    out.sort()
    return out


def build_graph(sum_bound: int) -> BirGraph:
    """All nodes with a + b <= sum_bound and every rule edge among them.

    Same-sum levels are stored as full cliques (any two equal-sum nodes are
    directly equivalent); renderers may draw only consecutive pairs.
    """
    if sum_bound < 6:
        raise BoundTooSmall("sum_bound must be >= 6")
    nodes = _nodes_up_to(sum_bound)
    node_set = set(nodes)
    edges: set[Edge] = set()
    by_sum: dict[int, list[Node]] = {}
    for v in nodes:
        by_sum.setdefault(v[0] + v[1], []).append(v)
    for level in by_sum.values():
        for i, x in enumerate(level):
            for y in level[i + 1 :]:
                edges.add(_canonical_edge(x, y, RULE_SAME_SUM))
    for a, b in nodes:
        if b >= 3 and (a + 1, b - 2) in node_set:
            edges.add(_canonical_edge((a, b), (a + 1, b - 2), RULE_SHIFT))
    if (5, 4) in node_set and (7, 1) in node_set:
        edges.add(_canonical_edge((5, 4), (7, 1), RULE_SPECIAL))
    return BirGraph(sum_bound, tuple(nodes), tuple(sorted(edges)))


def build_graph_oracle(sum_bound: int) -> BirGraph:
    """Rule-free regeneration: tests every node pair against the raw edge
    definitions.  Quadratic; for cross-checking build_graph only."""
    if sum_bound < 6:
        raise BoundTooSmall("sum_bound must be >= 6")
    nodes = _nodes_up_to(sum_bound)
    edges: set[Edge] = set()
    for i, x in enumerate(nodes):
        for y in nodes[i + 1 :]:
            if x[0] + x[1] == y[0] + y[1]:
                edges.add(_canonical_edge(x, y, RULE_SAME_SUM))
            if y == (x[0] + 1, x[1] - 2) or x == (y[0] + 1, y[1] - 2):
                edges.add(_canonical_edge(x, y, RULE_SHIFT))
            if {x, y} == {(5, 4), (7, 1)}:
                edges.add(_canonical_edge(x, y, RULE_SPECIAL))
    return BirGraph(sum_bound, tuple(nodes), tuple(sorted(edges)))


def _bfs(graph: BirGraph, start: Node) -> tuple[dict[Node, Node | None], list[Edge]]:
    adj = graph.adjacency()
    parent: dict[Node, Node | None] = {start: None}
    tree: list[Edge] = []
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w, rule in adj[v]:
                if w not in parent:
                    parent[w] = v
                    tree.append(_canonical_edge(v, w, rule))
                    nxt.append(w)
        frontier = sorted(nxt)
    return parent, tree


def check_connected(sum_bound: int) -> tuple[bool, list[Edge]]:
    """Breadth-first connectivity; returns the spanning tree as witness."""
    graph = build_graph(sum_bound)
    if not graph.nodes:
        return True, []
    parent, tree = _bfs(graph, graph.nodes[0])
    return len(parent) == len(graph.nodes), tree


def _smallest_odd_nondivisor_prime(n: int) -> int:
    def is_prime(k: int) -> bool:
        if k < 2:
            return False
        f = 2
        while f * f <= k:
            if k % f == 0:
                return False
            f += 1
        return True

    p = 3
    while True:
        if is_prime(p) and n % p != 0:
            return p
        p += 2


def prime_witness(m: int) -> tuple[Node, Node]:
    """The cross-level link between sum m+1 and sum m, for m >= 6, m != 8.

    With p the smallest odd prime not dividing m+1, returns
    ((m+1-p, p), (m-p+2, p-2)); the first node has sum m+1, the second is
    its shift-minus-two image at sum m, and both are verified to lie in
    the node set.
    """
    if m < 6 or m == 8:
        raise ExcludedSum(f"no prime witness for m = {m}")
    p = _smallest_odd_nondivisor_prime(m + 1)
    upper = (m + 1 - p, p)
    lower = (m - p + 2, p - 2)
    for node in (upper, lower):
        if not in_node_set(*node):
            raise Unreachable(f"prime witness {node} for m = {m} left the node set")
    if lower != (upper[0] + 1, upper[1] - 2):
        raise Unreachable(f"prime witness pair for m = {m} is not a shift edge")
    return upper, lower


def equivalence_path(x: Node, y: Node, sum_bound: int) -> list[Edge]:
    """A minimum-edge path from x to y in build_graph(sum_bound)."""
    for node in (x, y):
        if not in_node_set(*node) or node[0] + node[1] > sum_bound:
            raise BoundTooSmall(f"{node} is not a node within sum bound {sum_bound}")
    graph = build_graph(sum_bound)
    parent, _ = _bfs(graph, x)
    if y not in parent:
        raise Unreachable(f"{x} and {y} are not connected (bound {sum_bound})")
    path: list[Edge] = []
    rules = {}
    for a, b, rule in graph.edges:
        rules[(a, b)] = rule
        rules[(b, a)] = rule
    cur = y
    while parent[cur] is not None:
        prev = parent[cur]
        path.append(_canonical_edge(prev, cur, rules[(prev, cur)]))
        cur = prev
    path.reverse()
    return path


def graph_to_dot(graph: BirGraph) -> str:
    """Figure-style DOT: dashed same-sum chains (consecutive pairs only),
    solid shift edges, a thick special edge."""
    lines = ["graph stable_birationality {", "  node [shape=point];"]
    for a, b in graph.nodes:
        lines.append(f'  "n{a}_{b}" [xlabel="({a},{b})"];')
    by_sum: dict[int, list[Node]] = {}
    for v in graph.nodes:
        by_sum.setdefault(v[0] + v[1], []).append(v)
    for s in sorted(by_sum):
        level = sorted(by_sum[s])
        for x, y in zip(level, level[1:]):
            lines.append(f'  "n{x[0]}_{x[1]}" -- "n{y[0]}_{y[1]}" [style=dashed];')
    for x, y, rule in graph.edges:
        if rule == RULE_SHIFT:
            lines.append(f'  "n{x[0]}_{x[1]}" -- "n{y[0]}_{y[1]}";')
        elif rule == RULE_SPECIAL:
            lines.append(f'  "n{x[0]}_{x[1]}" -- "n{y[0]}_{y[1]}" [penwidth=3];')
    lines.append("}")
    return "\n".join(lines)


def graph_to_json(graph: BirGraph) -> dict:
    return {
        "sum_bound": graph.sum_bound,
        "nodes": [list(v) for v in graph.nodes],
        "edges": [[list(x), list(y), rule] for x, y, rule in graph.edges],
    }
