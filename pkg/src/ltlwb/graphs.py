"""Syntax graphs, CNF graphs, decompositions, and width computation.

Exact treewidth and pathwidth run a subset dynamic program over elimination
orderings and layouts, so they are limited to small vertex counts; larger
graphs get heuristic upper bounds or externally constructed decompositions.
"""

from __future__ import annotations

from .formula import (
    And,
    Bottom,
    Finally,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Prop,
    Top,
    Until,
)


class GraphFormatError(ValueError):
    """Raised on malformed graph or decomposition text."""


class Graph:
    """Undirected graph with named, role-labeled vertices and no self-loops."""

    __slots__ = ("names", "roles", "edges", "adj", "_index")

    def __init__(self, vertices, edges):
        names = []
        roles = []
        self._index = {}
        for name, role in vertices:
            if name in self._index:
                raise ValueError("duplicate vertex %r" % name)
            self._index[name] = len(names)
            names.append(name)
            roles.append(role)
        self.names = tuple(names)
        self.roles = tuple(roles)
        edge_set = set()
        for a, b in edges:
            if a not in self._index or b not in self._index:
                raise ValueError("edge (%r, %r) references unknown vertex" % (a, b))
            ia, ib = self._index[a], self._index[b]
            if ia == ib:
                raise ValueError("self-loop at %r" % a)
            edge_set.add((min(ia, ib), max(ia, ib)))
        self.edges = frozenset(edge_set)
        adj = [set() for _ in self.names]
        for ia, ib in self.edges:
            adj[ia].add(ib)
            adj[ib].add(ia)
        self.adj = tuple(tuple(sorted(s)) for s in adj)

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown vertex %r" % name) from None

    def edge_names(self):
        return sorted(tuple(sorted((self.names[a], self.names[b]))) for a, b in self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.names == other.names
            and self.roles == other.roles
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.names, self.roles, self.edges))


class Decomposition:
    """Bags of vertex names linked into a tree; a chain of links is a path
    decomposition.  Omitted links default to the consecutive chain."""

    __slots__ = ("bags", "links")

    def __init__(self, bags, links=None):
        self.bags = tuple(frozenset(b) for b in bags)
        if links is None:
            links = [(i, i + 1) for i in range(len(self.bags) - 1)]
        seen = set()
        for i, j in links:
            if not (0 <= i < len(self.bags)) or not (0 <= j < len(self.bags)):
                raise ValueError("link (%d, %d) references missing bag" % (i, j))
            if i == j:
                raise ValueError("self-link at bag %d" % i)
            seen.add((min(i, j), max(i, j)))
        self.links = tuple(sorted(seen))

    def link_adjacency(self):
        adj = [set() for _ in self.bags]
        for i, j in self.links:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def is_tree(self):
        n = len(self.bags)
        if n == 0:
            return False
        if len(self.links) != n - 1:
            return False
        return self._connected_bags(set(range(n)))

    def is_path(self):
        if not self.is_tree():
            return False
        return all(len(s) <= 2 for s in self.link_adjacency())

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.bags == other.bags and self.links == other.links

    def __hash__(self):
        return hash((self.bags, self.links))

    def _connected_bags(self, targets):
        if not targets:
            return True
        adj = self.link_adjacency()
        start = next(iter(targets))
        seen = {start}
        frontier = [start]
        while frontier:
            b = frontier.pop()
            for c in adj[b]:
                if c in targets and c not in seen:
                    seen.add(c)
                    frontier.append(c)
        return seen == targets


def width(d):
    """Maximal bag size minus one."""
    if not d.bags:
        raise ValueError("decomposition has no bags")
    return max(len(b) for b in d.bags) - 1


def check_decomposition(g, d):
    """Violations of the cover and connectivity conditions; empty means valid."""
    violations = []
    vertex_set = set(g.names)
    covered = set()
    for i, bag in enumerate(d.bags):
        for v in bag:
            if v not in vertex_set:
                violations.append("bag %d contains unknown vertex %s" % (i, v))
        covered |= bag & vertex_set
    for v in g.names:
        if v not in covered:
            violations.append("vertex %s not covered" % v)
    for ia, ib in sorted(g.edges):
        a, b = g.names[ia], g.names[ib]
        if not any(a in bag and b in bag for bag in d.bags):
            violations.append("edge %s %s not covered" % (a, b))
    if not d.is_tree():
        violations.append("links do not form a tree")
    else:
        for v in g.names:
            holding = {i for i, bag in enumerate(d.bags) if v in bag}
            if holding and not d._connected_bags(holding):
                violations.append("vertex %s occurs in disconnected bags" % v)
    return violations


# ---------------------------------------------------------------------------
# graph builders

_ROLE = {
    Not: "not",
    And: "and",
    Or: "or",
    Implies: "implies",
    Next: "next",
    Finally: "finally",
    Globally: "globally",
    Until: "until",
    Top: "true",
    Bottom: "false",
}


def syntax_graph(f):
    """One vertex per subformula occurrence, with all occurrences of a
    proposition merged into a single vertex; edges join each node to its
    immediate subformulas."""
    vertices = []
    prop_vertex = {}
    edges = set()
    counter = [0]

    def fresh(role):
        # "@" keeps generated ids outside the proposition alphabet
        name = "@%d" % counter[0]
        counter[0] += 1
        vertices.append((name, role))
        return name

    # preorder walk with explicit stack; parent name travels with each node
    stack = [(f, None)]
    while stack:
        node, parent = stack.pop()
        if isinstance(node, Prop):
            name = prop_vertex.get(node.name)
            if name is None:
                name = node.name
                prop_vertex[node.name] = name
                vertices.append((name, "prop"))
        else:
            name = fresh(_ROLE[type(node)])
            for child in reversed(node.children()):
                stack.append((child, name))
        if parent is not None:
            edges.add((parent, name))
    return Graph(vertices, edges)


def primal_graph(clauses, nvars=None):
    """Variables as vertices; an edge joins variables sharing a clause."""
    if nvars is None:
        nvars = max((abs(l) for cl in clauses for l in cl), default=0)
    vertices = [("x%d" % i, "var") for i in range(1, nvars + 1)]
    edges = set()
    for cl in clauses:
        seen = sorted({abs(l) for l in cl})
        for i, a in enumerate(seen):
            for b in seen[i + 1 :]:
                edges.add(("x%d" % a, "x%d" % b))
    return Graph(vertices, edges)


def incidence_graph(clauses, nvars=None):
    """Variables and clauses as vertices; an edge joins a clause to each
    variable occurring in it."""
    if nvars is None:
        nvars = max((abs(l) for cl in clauses for l in cl), default=0)
    vertices = [("x%d" % i, "var") for i in range(1, nvars + 1)]
    vertices.extend(("c%d" % j, "clause") for j in range(1, len(clauses) + 1))
    edges = set()
    for j, cl in enumerate(clauses, start=1):
        for l in cl:
            edges.add(("c%d" % j, "x%d" % abs(l)))
    return Graph(vertices, edges)


def incidence_minor_check(g, clauses):
    """Exhibit the incidence graph as a minor of a CNF syntax graph.

    Contraction recipe: merge every negation vertex into its variable, then
    contract each clause's internal disjunction spine to one vertex and drop
    the conjunction spine.  Returns violations if the residue differs from
    the incidence graph; clauses need at least two literals so the spine is
    nonempty.
    """
    violations = []
    for j, cl in enumerate(clauses, start=1):
        if len(cl) < 2:
            return ["clause %d has fewer than 2 literals" % j]

    n = len(g)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for i in range(n):
        if g.roles[i] == "not":
            props = [j for j in g.adj[i] if g.roles[j] == "prop"]
            if len(props) != 1:
                return ["negation vertex %s is not applied to a variable" % g.names[i]]
            union(i, props[0])
    for ia, ib in g.edges:
        if g.roles[ia] == "or" and g.roles[ib] == "or":
            union(ia, ib)

    classes = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(i)
    kind = {}
    for root, members in classes.items():
        roles = {g.roles[m] for m in members}
        if "prop" in roles:
            kind[root] = "var"
        elif "or" in roles:
            kind[root] = "clause"
        elif roles <= {"and"}:
            kind[root] = "drop"
        else:
            return ["unexpected vertex roles %s in contraction" % sorted(roles)]

    clause_neighbors = {}
    for ia, ib in g.edges:
        ra, rb = find(ia), find(ib)
        if ra == rb:
            continue
        kinds = {kind[ra], kind[rb]}
        if "drop" in kinds:
            continue
        if kinds == {"var"}:
            violations.append("variables left adjacent after contraction")
            continue
        if kinds == {"clause"}:
            violations.append("clauses left adjacent after contraction")
            continue
        cl, var = (ra, rb) if kind[ra] == "clause" else (rb, ra)
        var_name = next(g.names[m] for m in classes[var] if g.roles[m] == "prop")
        clause_neighbors.setdefault(cl, set()).add(var_name)

    got = sorted(tuple(sorted(s)) for s in clause_neighbors.values())
    clause_count = sum(1 for k in kind.values() if k == "clause")
    if clause_count != len(clauses):
        violations.append(
            "contraction yields %d clause vertices, expected %d"
            % (clause_count, len(clauses))
        )
    want = sorted(tuple(sorted({"x%d" % abs(l) for l in cl})) for cl in clauses)
    if got != want:
        violations.append("clause adjacency %r differs from incidence %r" % (got, want))
    var_names = {g.names[i] for i in range(n) if g.roles[i] == "prop"}
    want_vars = {"x%d" % abs(l) for cl in clauses for l in cl}
    if var_names != want_vars:
        violations.append("variable vertices %r differ from %r" % (sorted(var_names), sorted(want_vars)))
    return violations


# ---------------------------------------------------------------------------
# exact widths by subset dynamic programming

EXACT_LIMIT = 14


def _adj_masks(g):
    masks = [0] * len(g)
    for ia, ib in g.edges:
        masks[ia] |= 1 << ib
        masks[ib] |= 1 << ia
    return masks


def exact_treewidth(g, limit=EXACT_LIMIT):
    """Optimal treewidth with a certifying decomposition.

    Dynamic program over subsets: the cost of eliminating S last-vertex-first
    is min over v of max(cost(S minus v), fill degree of v after S minus v),
    where the fill degree counts vertices outside reachable through the
    eliminated set.
    """
    n = len(g)
    if n > limit:
        raise ValueError("graph too large for exact search (%d > %d)" % (n, limit))
    if n == 0:
        raise ValueError("empty graph")
    masks = _adj_masks(g)
    full = (1 << n) - 1

    def fill_degree(w_mask, v):
        # vertices outside w_mask reachable from v through w_mask
        seen = (1 << v)
        reach = 0
        frontier = masks[v] & ~seen
        while frontier:
            reach |= frontier
            expand = frontier & w_mask
            nxt = 0
            while expand:
                low = expand & -expand
                nxt |= masks[low.bit_length() - 1]
                expand ^= low
            frontier = nxt & ~(reach | seen)
        return (reach & ~w_mask & ~(1 << v)).bit_count()

    size = 1 << n
    cost = [0] * size
    choice = [0] * size
    by_count = sorted(range(size), key=lambda m: m.bit_count())
    for s in by_count:
        if s == 0:
            continue
        best = n
        best_v = -1
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            prev = s ^ low
            c = cost[prev]
            d = fill_degree(prev, v)
            if d > c:
                c = d
            if c < best:
                best = c
                best_v = v
        cost[s] = best
        choice[s] = best_v

    # recover the elimination ordering; the vertex chosen for S is last in S
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    dec = _decomposition_from_elimination(g, order)
    return cost[full], dec


def exact_pathwidth(g, limit=EXACT_LIMIT):
    """Optimal pathwidth via vertex separation over layouts.

    The cost of placing S as a layout prefix is min over v of
    max(cost(S minus v), boundary(S)) where boundary counts vertices of S
    with neighbors outside S; the optimal layout yields the bags.
    """
    n = len(g)
    if n > limit:
        raise ValueError("graph too large for exact search (%d > %d)" % (n, limit))
    if n == 0:
        raise ValueError("empty graph")
    masks = _adj_masks(g)
    full = (1 << n) - 1

    def boundary(s):
        count = 0
        rest = s
        while rest:
            low = rest & -rest
            if masks[low.bit_length() - 1] & ~s:
                count += 1
            rest ^= low
        return count

    size = 1 << n
    cost = [0] * size
    choice = [0] * size
    by_count = sorted(range(size), key=lambda m: m.bit_count())
    for s in by_count:
        if s == 0:
            continue
        b = boundary(s)
        best = n
        best_v = -1
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            c = cost[s ^ low]
            if b > c:
                c = b
            if c < best:
                best = c
                best_v = v
        cost[s] = best
        choice[s] = best_v

    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()

    # bag i holds layout[i] plus every earlier vertex still adjacent forward
    bags = []
    placed = 0
    for i, v in enumerate(order):
        ahead = full & ~placed & ~(1 << v)
        bag = {g.names[v]}
        rest = placed
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            rest ^= low
            if masks[u] & (ahead | (1 << v)):
                bag.add(g.names[u])
        bags.append(bag)
        placed |= 1 << v
    return cost[full], Decomposition(bags)


def minfill_upper(g):
    """Tree decomposition from min-fill elimination; width is an upper bound."""
    n = len(g)
    if n == 0:
        raise ValueError("empty graph")
    adj = [set(s) for s in g.adj]
    alive = set(range(n))
    order = []
    while alive:
        best_v = None
        best_fill = None
        for v in sorted(alive):
            nb = adj[v] & alive
            nb_list = sorted(nb)
            fill = 0
            for i, a in enumerate(nb_list):
                for b in nb_list[i + 1 :]:
                    if b not in adj[a]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_fill = fill
                best_v = v
        nb = sorted(adj[best_v] & alive)
        for i, a in enumerate(nb):
            for b in nb[i + 1 :]:
                adj[a].add(b)
                adj[b].add(a)
        alive.remove(best_v)
        order.append(best_v)
    dec = _decomposition_from_elimination(g, order)
    return width(dec), dec


def _decomposition_from_elimination(g, order):
    """Bags from an elimination ordering with standard tree links."""
    n = len(g)
    adj = [set(s) for s in g.adj]
    alive = set(range(n))
    position = {v: i for i, v in enumerate(order)}
    bags = []
    links = []
    for i, v in enumerate(order):
        nb = sorted(adj[v] & alive)
        bags.append({g.names[v]} | {g.names[u] for u in nb})
        for a_i, a in enumerate(nb):
            for b in nb[a_i + 1 :]:
                adj[a].add(b)
                adj[b].add(a)
        alive.remove(v)
        if nb:
            nxt = min(nb, key=lambda u: position[u])
            links.append((i, position[nxt]))
        elif i + 1 < n:
            links.append((i, i + 1))
    return Decomposition(bags, links)


# ---------------------------------------------------------------------------
# text formats

def parse_graph(text):
    """Read `v <id> <role>` and `e <id> <id>` lines."""
    vertices = []
    edges = []
    declared = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) != 3:
                raise GraphFormatError("line %d: v needs id and role" % lineno)
            if parts[1] in declared:
                raise GraphFormatError("line %d: duplicate vertex %s" % (lineno, parts[1]))
            declared.add(parts[1])
            vertices.append((parts[1], parts[2]))
        elif parts[0] == "e":
            if len(parts) != 3:
                raise GraphFormatError("line %d: e needs two ids" % lineno)
            if parts[1] not in declared or parts[2] not in declared:
                raise GraphFormatError("line %d: edge references undeclared vertex" % lineno)
            if parts[1] == parts[2]:
                raise GraphFormatError("line %d: self-loop" % lineno)
            edges.append((parts[1], parts[2]))
        else:
            raise GraphFormatError("line %d: unknown directive %r" % (lineno, parts[0]))
    return Graph(vertices, edges)


def format_graph(g):
    lines = ["v %s %s" % (name, role) for name, role in zip(g.names, g.roles)]
    lines.extend("e %s %s" % (g.names[a], g.names[b]) for a, b in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_decomposition(text):
    """Read `bag <idx> <vid> ...` and `link <idx> <idx>` lines."""
    bags = {}
    links = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "bag":
            if len(parts) < 2:
                raise GraphFormatError("line %d: bag needs an index" % lineno)
            try:
                idx = int(parts[1])
            except ValueError:
                raise GraphFormatError("line %d: bad bag index" % lineno) from None
            if idx in bags:
                raise GraphFormatError("line %d: duplicate bag %d" % (lineno, idx))
            bags[idx] = parts[2:]
        elif parts[0] == "link":
            if len(parts) != 3:
                raise GraphFormatError("line %d: link needs two indices" % lineno)
            try:
                links.append((int(parts[1]), int(parts[2])))
            except ValueError:
                raise GraphFormatError("line %d: bad link index" % lineno) from None
        else:
            raise GraphFormatError("line %d: unknown directive %r" % (lineno, parts[0]))
    if not bags:
        raise GraphFormatError("no bags")
    if sorted(bags) != list(range(len(bags))):
        raise GraphFormatError("bag indices must be 0..%d" % (len(bags) - 1))
    ordered = [bags[i] for i in range(len(bags))]
    try:
        return Decomposition(ordered, links if links else None)
    except ValueError as e:
        raise GraphFormatError(str(e)) from None


def format_decomposition(d):
    lines = []
    for i, bag in enumerate(d.bags):
        lines.append(("bag %d " % i + " ".join(sorted(bag))).rstrip())
    lines.extend("link %d %d" % (i, j) for i, j in d.links)
    return "\n".join(lines) + "\n"
