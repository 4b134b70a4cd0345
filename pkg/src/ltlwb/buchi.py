"""Generalized Büchi automata from LTL via on-the-fly tableau expansion.

The tableau works on negation normal form with an internal Release dual;
user-facing formulas never see it.  States are the expanded obligation sets
(old, next); one acceptance set guards every eventuality (U or F node of
the normal form).  The same expansion core runs standalone to build an
automaton or fused against a structure world's exact valuation, which
prunes unreachable obligation sets early; the fused route is what keeps
generated-instance model checking tractable.
"""

from __future__ import annotations

from .formula import (
    And,
    Bottom,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Prop,
    Top,
    Until,
    _Binary,
    subformulas,
)


class Release(_Binary):
    """Dual of Until; internal to the normal form."""

    __slots__ = ()
    op = "R"


def to_nnf(f):
    """Negation normal form over {literals, and, or, X, F, G, U, R}."""
    memo = {}

    def walk(node, neg):
        key = (node, neg)
        if key in memo:
            return memo[key]
        if isinstance(node, Prop):
            out = Not(node) if neg else node
        elif isinstance(node, Top):
            out = Bottom() if neg else node
        elif isinstance(node, Bottom):
            out = Top() if neg else node
        elif isinstance(node, Not):
            out = walk(node.arg, not neg)
        elif isinstance(node, And):
            cls = Or if neg else And
            out = cls(walk(node.left, neg), walk(node.right, neg))
        elif isinstance(node, Or):
            cls = And if neg else Or
            out = cls(walk(node.left, neg), walk(node.right, neg))
        elif isinstance(node, Implies):
            if neg:
                out = And(walk(node.left, False), walk(node.right, True))
            else:
                out = Or(walk(node.left, True), walk(node.right, False))
        elif isinstance(node, Next):
            out = Next(walk(node.arg, neg))
        elif isinstance(node, Finally):
            out = Globally(walk(node.arg, True)) if neg else Finally(walk(node.arg, False))
        elif isinstance(node, Globally):
            out = Finally(walk(node.arg, True)) if neg else Globally(walk(node.arg, False))
        elif isinstance(node, Until):
            cls = Release if neg else Until
            out = cls(walk(node.left, neg), walk(node.right, neg))
        elif isinstance(node, Release):
            cls = Until if neg else Release
            out = cls(walk(node.left, neg), walk(node.right, neg))
        else:
            raise TypeError("unknown formula node %r" % node)
        memo[key] = out
        return out

    return walk(f, False)


def _refuted(f, letter, memo):
    """Definite refutation of f by the current letter alone.

    Sound for pruning: a refuted branch arm dies during its own expansion
    at this letter, so skipping it drops no leaf.  Next and Finally only
    constrain later letters and are never refuted here.
    """
    v = memo.get(f)
    if v is None:
        if isinstance(f, Prop):
            v = f.name not in letter
        elif isinstance(f, Not):
            v = f.arg.name in letter
        elif isinstance(f, And):
            v = _refuted(f.left, letter, memo) or _refuted(f.right, letter, memo)
        elif isinstance(f, Or):
            v = _refuted(f.left, letter, memo) and _refuted(f.right, letter, memo)
        elif isinstance(f, Until):
            v = _refuted(f.right, letter, memo) and _refuted(f.left, letter, memo)
        elif isinstance(f, Release):
            v = _refuted(f.right, letter, memo)
        elif isinstance(f, Globally):
            v = _refuted(f.arg, letter, memo)
        else:
            v = isinstance(f, Bottom)
        memo[f] = v
    return v


def _never_true(f, union, memo):
    """f false on every suffix whose letters all draw from union.

    union is the set of propositions true somewhere in a future-closed
    region: a bare proposition outside it can never hold again, and the
    verdict propagates through the normal form.  Negated literals are
    never refutable this way, since membership in the union says nothing
    about any single letter.
    """
    v = memo.get(f)
    if v is None:
        if isinstance(f, Prop):
            v = f.name not in union
        elif isinstance(f, And):
            v = _never_true(f.left, union, memo) or _never_true(f.right, union, memo)
        elif isinstance(f, Or):
            v = _never_true(f.left, union, memo) and _never_true(f.right, union, memo)
        elif isinstance(f, (Until, Release)):
            v = _never_true(f.right, union, memo)
        elif isinstance(f, (Finally, Globally, Next)):
            v = _never_true(f.arg, union, memo)
        else:
            v = isinstance(f, Bottom)
        memo[f] = v
    return v


def _saturate(obligations, letter, refuted=None):
    """Expand obligations into fully processed (old, next) leaf pairs.

    letter is None for a free expansion (literals recorded, contradictions
    pruned) or a frozenset of true propositions that resolves literals on
    the spot.  True literals still enter `old` so acceptance witnessing
    can see them.  Non-branching obligations drain before any disjunctive
    split, and a split whose arm is already refuted follows the surviving
    arm in place, so most contradictions surface before the obligation
    sets get copied.  refuted may carry a letter-keyed memo dict shared
    across calls expanding against the same letter.
    """
    out = []
    seen = set()
    if letter is not None:
        if refuted is None:
            refuted = {}
        sf = lambda g: _refuted(g, letter, refuted)
    else:
        # free expansion: only literal clashes with old are decidable
        sf = lambda g: (
            isinstance(g, Bottom)
            or (isinstance(g, Prop) and Not(g) in old)
            or (isinstance(g, Not) and g.arg in old)
        )
    work = [(list(obligations), [], set(), set())]
    while work:
        new, split, old, nxt = work.pop()
        dead = False
        while new or split:
            if not new:
                f = split.pop()
                if f in old:
                    continue
                old.add(f)
                if isinstance(f, Or):
                    lf = sf(f.left)
                    rf = sf(f.right)
                    if lf and rf:
                        dead = True
                        break
                    if lf:
                        new.append(f.right)
                    elif rf:
                        new.append(f.left)
                    else:
                        work.append((new + [f.right], list(split), set(old), set(nxt)))
                        new.append(f.left)
                elif isinstance(f, Until):
                    lf = sf(f.left)
                    rf = sf(f.right)
                    if lf and rf:
                        dead = True
                        break
                    if rf:
                        nxt.add(f)
                        new.append(f.left)
                    elif lf:
                        new.append(f.right)
                    else:
                        defer = (new + [f.left], list(split), set(old), set(nxt))
                        defer[3].add(f)
                        work.append(defer)
                        new.append(f.right)
                elif isinstance(f, Release):
                    if sf(f.right):
                        dead = True
                        break
                    if sf(f.left):
                        nxt.add(f)
                        new.append(f.right)
                    else:
                        defer = (new + [f.right], list(split), set(old), set(nxt))
                        defer[3].add(f)
                        work.append(defer)
                        new.append(f.left)
                        new.append(f.right)
                else:  # Finally
                    if sf(f.arg):
                        nxt.add(f)
                    else:
                        defer = (list(new), list(split), set(old), set(nxt))
                        defer[3].add(f)
                        work.append(defer)
                        new.append(f.arg)
                continue
            f = new.pop()
            if f in old:
                continue
            if isinstance(f, Top):
                continue
            if isinstance(f, Bottom):
                dead = True
                break
            if isinstance(f, Prop):
                if letter is None:
                    if Not(f) in old:
                        dead = True
                        break
                elif f.name not in letter:
                    dead = True
                    break
                old.add(f)
            elif isinstance(f, Not):
                if letter is None:
                    if f.arg in old:
                        dead = True
                        break
                elif f.arg.name in letter:
                    dead = True
                    break
                old.add(f)
            elif isinstance(f, And):
                old.add(f)
                new.append(f.left)
                new.append(f.right)
            elif isinstance(f, Next):
                old.add(f)
                nxt.add(f.arg)
            elif isinstance(f, Globally):
                old.add(f)
                nxt.add(f)
                new.append(f.arg)
            elif isinstance(f, (Or, Until, Release, Finally)):
                split.append(f)
            else:
                raise TypeError("unexpected node %r in normal form" % f)
        if not dead:
            leaf = (frozenset(old), frozenset(nxt))
            if leaf not in seen:
                seen.add(leaf)
                out.append(leaf)
    return out


def _eventualities(nnf_root):
    """U and F nodes of the normal form, with their witness obligations."""
    pairs = []
    for node in subformulas(nnf_root):
        if isinstance(node, Until):
            pairs.append((node, node.right))
        elif isinstance(node, Finally):
            pairs.append((node, node.arg))
    pairs.sort(key=lambda p: str(p[0]))
    return pairs


def _witnessed(g, witness, old):
    return g not in old or witness in old or isinstance(witness, Top)


class GBA:
    """Explicit generalized Büchi automaton over proposition valuations.

    A run q0 q1 ... reads a word x0 x1 ... when every xi satisfies the
    literals of qi; it accepts when it starts in an initial state, follows
    the transition relation, and meets every acceptance set infinitely
    often.
    """

    __slots__ = ("olds", "nexts", "succ", "initial", "accept", "eventualities")

    def __init__(self, olds, nexts, succ, initial, accept, eventualities):
        self.olds = olds
        self.nexts = nexts
        self.succ = succ
        self.initial = initial
        self.accept = accept
        self.eventualities = eventualities

    def __len__(self):
        return len(self.olds)

    def literals(self, q):
        pos = frozenset(f.name for f in self.olds[q] if isinstance(f, Prop))
        neg = frozenset(f.arg.name for f in self.olds[q] if isinstance(f, Not))
        return pos, neg

    def compatible(self, q, valuation):
        pos, neg = self.literals(q)
        return pos <= valuation and not (neg & valuation)


def ltl_to_gba(f):
    """Automaton whose language is the set of models of f."""
    root = to_nnf(f)
    events = _eventualities(root)
    order = {g: i for i, g in enumerate(subformulas(root))}
    index = {}
    olds = []
    nexts = []
    succ_lists = []
    pending = []

    def intern(pairs):
        ids = []
        for old, nxt in pairs:
            key = (old, nxt)
            q = index.get(key)
            if q is None:
                q = len(olds)
                index[key] = q
                olds.append(old)
                nexts.append(nxt)
                succ_lists.append(None)
                pending.append(q)
            ids.append(q)
        return ids

    initial = tuple(dict.fromkeys(intern(_saturate([root], None))))
    while pending:
        q = pending.pop()
        if succ_lists[q] is not None:
            continue
        ids = intern(_saturate(sorted(nexts[q], key=order.__getitem__), None))
        succ_lists[q] = tuple(dict.fromkeys(ids))
    accept = tuple(
        frozenset(q for q in range(len(olds)) if _witnessed(g, w, olds[q]))
        for g, w in events
    )
    return GBA(
        tuple(olds),
        tuple(nexts),
        tuple(succ_lists),
        initial,
        accept,
        tuple(g for g, _ in events),
    )


# ---------------------------------------------------------------------------
# emptiness: accepting-lasso search over an explicit graph

def find_accepting_lasso(succ, initial, accept_sets):
    """Shortest-ish accepting lasso (prefix, cycle) as node lists, or None.

    succ: dict node -> iterable of nodes; accept_sets: list of node sets.
    A lasso is accepting when its cycle meets every acceptance set; with an
    empty family any reachable cycle qualifies.
    """
    comps = _tarjan_components(succ, initial)
    for comp in comps:
        comp_set = set(comp)
        nontrivial = len(comp) > 1 or any(
            v in succ[v] for v in comp
        )
        if not nontrivial:
            continue
        if all(comp_set & acc for acc in accept_sets):
            return _stitch_witness(succ, initial, comp_set, accept_sets)
    return None


def _tarjan_components(succ, roots):
    index = {}
    low = {}
    onstack = set()
    stack = []
    comps = []
    counter = 0
    for root in roots:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in onstack:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _bfs_path(succ, sources, targets, allowed=None, min_len=0):
    """Shortest node path from a source to a target; may require length > 0."""
    targets = set(targets)
    parent = {}
    queue = []
    if min_len == 0:
        for s in sources:
            if s in targets:
                return [s]
    for s in sources:
        if s not in parent:
            parent[s] = None
            queue.append(s)
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in succ[v]:
            if allowed is not None and w not in allowed:
                continue
            if w in targets:
                path = [w, v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def _stitch_witness(succ, initial, comp_set, accept_sets):
    prefix_path = _bfs_path(succ, list(initial), comp_set)
    anchor = prefix_path[-1]
    walk = [anchor]
    cur = anchor
    for acc in accept_sets:
        reps = comp_set & acc
        if cur in reps:
            continue
        seg = _bfs_path(succ, [cur], reps, allowed=comp_set)
        walk.extend(seg[1:])
        cur = seg[-1]
    # close the cycle with at least one edge
    starts = [w for w in succ[cur] if w in comp_set]
    if anchor in starts:
        closing = [cur, anchor]
    else:
        seg = _bfs_path(succ, starts, {anchor}, allowed=comp_set)
        closing = [cur] + seg
    walk.extend(closing[1:])
    cycle = walk[:-1]
    return prefix_path[:-1], cycle


# ---------------------------------------------------------------------------
# products

def product_lasso(s, start_world, gba):
    """Accepting lasso of structure x prebuilt automaton, as (prefix, cycle)
    lists of (world, state) pairs, or None."""
    nodes = {}
    adj = {}
    initial = []
    worklist = []
    for q in gba.initial:
        if gba.compatible(q, s.labels[start_world]):
            node = (start_world, q)
            if node not in nodes:
                nodes[node] = True
                worklist.append(node)
            initial.append(node)
    while worklist:
        w, q = worklist.pop()
        out = []
        for w2 in s.succ[w]:
            for q2 in gba.succ[q]:
                if gba.compatible(q2, s.labels[w2]):
                    node = (w2, q2)
                    out.append(node)
                    if node not in nodes:
                        nodes[node] = True
                        worklist.append(node)
        adj[(w, q)] = list(dict.fromkeys(out))
    accept_sets = [
        {n for n in adj if n[1] in acc} for acc in gba.accept
    ]
    return find_accepting_lasso(adj, initial, accept_sets)


def fused_product_lasso(s, start_world, f):
    """Accepting lasso of structure x tableau of f, expanding obligation
    sets only against the valuations actually reachable; (prefix, cycle)
    world-index lists, or None."""
    root = to_nnf(f)
    events = _eventualities(root)
    order = {g: i for i, g in enumerate(subformulas(root))}
    relevant = frozenset(g for pair in events for g in pair)
    witness_of = dict(events)
    expand_cache = {}
    refuted_memos = {}

    # union of labels over the strict future of each world: a deferred
    # eventuality whose witness can never hold over those letters cannot
    # be redeemed, so no accepting run passes through a state carrying it
    future = {}
    for w in range(len(s.names)):
        seen = set(s.succ[w])
        stack = list(seen)
        while stack:
            v = stack.pop()
            for v2 in s.succ[v]:
                if v2 not in seen:
                    seen.add(v2)
                    stack.append(v2)
        future[w] = frozenset().union(*(s.labels[v] for v in seen)) if seen else frozenset()
    future_memos = {}

    def expand(obligations_key, world):
        key = (obligations_key, world)
        hit = expand_cache.get(key)
        if hit is None:
            memo = refuted_memos.setdefault(world, {})
            fmemo = future_memos.setdefault(world, {})
            obligations = sorted(obligations_key, key=order.__getitem__)
            pairs = _saturate(obligations, s.labels[world], memo)
            hit = []
            for old, nxt in pairs:
                if any(
                    g in witness_of and _never_true(witness_of[g], future[world], fmemo)
                    for g in nxt
                ):
                    continue
                # acceptance only ever looks up eventualities and their
                # witnesses in old, so states differing elsewhere in old
                # are indistinguishable onward; fold them together
                hit.append((old & relevant, nxt))
            hit = list(dict.fromkeys(hit))
            expand_cache[key] = hit
        return hit

    adj = {}
    worklist = []

    def intern(world, pairs):
        ids = []
        for old, nxt in pairs:
            node = (world, old, nxt)
            if node not in adj:
                adj[node] = None
                worklist.append(node)
            ids.append(node)
        return list(dict.fromkeys(ids))

    initial = intern(start_world, expand(frozenset([root]), start_world))
    while worklist:
        node = worklist.pop()
        if adj[node] is not None:
            continue
        w, old, nxt = node
        out = []
        for w2 in s.succ[w]:
            out.extend(intern(w2, expand(nxt, w2)))
        adj[node] = list(dict.fromkeys(out))
    accept_sets = [
        {n for n in adj if _witnessed(g, wit, n[1])} for g, wit in events
    ]
    found = find_accepting_lasso(adj, initial, accept_sets)
    if found is None:
        return None
    prefix, cycle = found
    return [n[0] for n in prefix], [n[0] for n in cycle]
