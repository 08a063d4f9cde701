"""Seeded random generators for strudigrams and networks.

All generators are deterministic per seed.  Galled trees are grown as a
random multifurcating tree followed by repeatedly turning a tree vertex's
child list into a gall (two directed side paths meeting in a hybrid);
hybrids may absorb a leaf directly, producing non-leaf-separated cases.
"""

from __future__ import annotations

import random
from typing import Optional

from .errors import BadParameters
from .network import Network
from .recognition import assemble_gall
from .strudigram import Strudigram


def _vertex_names(n: int) -> list[str]:
    width = max(2, len(str(n - 1)))
    return [f"v{i:0{width}d}" for i in range(n)]


def _labels(count: int) -> list[str]:
    return [f"l{i}" for i in range(count)]


def gen_random_strudigram(n: int, alphabet_size: int, seed: int) -> Strudigram:
    """Uniform sigma over a fixed alphabet; vertices v00, v01, ..."""
    if n < 1 or alphabet_size < 1:
        raise BadParameters("need n >= 1 and alphabet_size >= 1")
    rng = random.Random(seed)
    verts = _vertex_names(n)
    labels = _labels(alphabet_size)
    sigma = {}
    for i in range(n):
        for j in range(i + 1, n):
            sigma[(verts[i], verts[j])] = rng.choice(labels)
    return Strudigram.from_map(verts, sigma, alphabet=labels)


class _Builder:
    """Mutable adjacency during generation; frozen into a Network at the end."""

    def __init__(self):
        self.children: dict[str, list[str]] = {}
        self.counter = 0
        self.on_gall: set[str] = set()

    def fresh(self) -> str:
        self.counter += 1
        return f"n{self.counter}"

    def add(self, v: str):
        self.children.setdefault(v, [])

    def edge(self, u: str, v: str):
        self.add(u)
        self.add(v)
        self.children[u].append(v)


def _random_tree(rng: random.Random, build: _Builder, leaves: list[str]) -> str:
    """Random multifurcating phylogenetic tree; returns the subtree root."""
    if len(leaves) == 1:
        build.add(leaves[0])
        return leaves[0]
    parts = 2
    while parts < len(leaves) and rng.random() < 0.35:
        parts += 1
    pool = leaves[:]
    rng.shuffle(pool)
    cuts = sorted(rng.sample(range(1, len(pool)), parts - 1))
    groups = [pool[a:b] for a, b in zip([0] + cuts, cuts + [len(pool)])]
    me = build.fresh()
    build.add(me)
    for g in groups:
        build.edge(me, _random_tree(rng, build, sorted(g)))
    return me


def _insert_gall(rng: random.Random, build: _Builder, v: str) -> bool:
    """Rebuild v's child list as a gall rooted at v.  Children are spread
    over the two side paths and the hybrid; a single-leaf hybrid group may
    become a hybrid leaf directly."""
    kids = build.children[v]
    if len(kids) < 2:
        return False
    cyc = rng.randint(1, min(4, len(kids) - 1))
    p = rng.randint(0, cyc)
    q = cyc - p
    pool = kids[:]
    rng.shuffle(pool)
    # one group per side-internal vertex plus one for the hybrid
    slots = cyc + 1
    cuts = sorted(rng.sample(range(1, len(pool)), slots - 1)) if slots > 1 else []
    groups = [pool[a:b] for a, b in zip([0] + cuts, cuts + [len(pool)])]
    hybrid_group = groups.pop()

    if len(hybrid_group) == 1 and not build.children[hybrid_group[0]] and rng.random() < 0.5:
        eta = hybrid_group[0]  # hybrid leaf
    else:
        eta = build.fresh()
        build.add(eta)
        for c in hybrid_group:
            build.edge(eta, c)
    build.on_gall.add(eta)

    build.children[v] = []
    for side_len in (p, q):
        prev = v
        for _ in range(side_len):
            w = build.fresh()
            build.add(w)
            build.edge(prev, w)
            build.on_gall.add(w)
            group = groups.pop()
            for c in group:
                build.edge(w, c)
            prev = w
        build.edge(prev, eta)
    build.on_gall.add(v)
    return True


def gen_random_galled_tree(
    n: int, label_count: int, seed: int, gall_attempts: Optional[int] = None
) -> Network:
    """Random labeled galled tree on n leaves, deterministic per seed."""
    if n < 1 or label_count < 1:
        raise BadParameters("need n >= 1 and label_count >= 1")
    rng = random.Random(seed)
    leaves = _vertex_names(n)
    build = _Builder()
    if n == 1:
        return Network(leaves, [])
    root = _random_tree(rng, build, leaves)
    attempts = gall_attempts if gall_attempts is not None else rng.randint(0, max(1, n // 3))
    for _ in range(attempts):
        eligible = [
            v
            for v, cs in build.children.items()
            if len(cs) >= 2 and v not in build.on_gall
        ]
        if not eligible:
            break
        _insert_gall(rng, build, sorted(eligible)[rng.randrange(len(eligible))])
    labels = _labels(label_count)
    edges = [(u, c) for u, cs in build.children.items() for c in cs]
    label_map = {
        v: rng.choice(labels)
        for v in sorted(build.children)
        if build.children[v]
    }
    return Network(build.children.keys(), edges, labels=label_map)


def gen_polar_cat_network(n: int, label_count: int, seed: int) -> Network:
    """Strong, elementary, quasi-discriminating galled tree on n leaves.

    Built directly from a random polar-cat decomposition: two labeled
    discriminating caterpillars sharing the pivot leaf in their cherries,
    joined under a fresh root with cross label distinct from both roots.
    """
    if n < 3:
        raise BadParameters("a polar-cat network needs at least 3 leaves")
    if label_count < 2 or (n == 3 and label_count < 3):
        raise BadParameters("not enough labels for a discriminating polar-cat")
    rng = random.Random(seed)
    labels = _labels(label_count)
    verts = _vertex_names(n)
    rng.shuffle(verts)
    v = verts[0]
    split = rng.randint(1, n - 2)
    w1, w2 = sorted(verts[1 : split + 1]), sorted(verts[split + 1 :])
    k = rng.choice(labels)

    def caterpillar(pool: list[str], side: int, avoid: Optional[str]) -> Network:
        # spine top-down; pivot shares the deepest vertex with the last leaf
        order = pool[:]
        rng.shuffle(order)
        spine_labels = []
        prev = k  # root label must differ from k
        for _ in range(len(order)):
            choices = [l for l in labels if l != prev]
            if not spine_labels and avoid is not None:
                choices = [l for l in choices if l != avoid] or choices
            lab = rng.choice(choices)
            spine_labels.append(lab)
            prev = lab
        vertices = []
        edges = []
        label_map = {}
        for i, leaf in enumerate(order):
            sp = f"s{side}.{i}"
            vertices.append(sp)
            label_map[sp] = spine_labels[i]
            if i:
                edges.append((f"s{side}.{i - 1}", sp))
            edges.append((sp, leaf))
        edges.append((f"s{side}.{len(order) - 1}", v))
        return Network(vertices + order + [v], edges, labels=label_map)

    cat1 = caterpillar(w1, 1, None)
    # when both sides are single-internal, three distinct labels are forced
    avoid = cat1.labels[cat1.root] if (len(w1) == 1 and len(w2) == 1) else None
    cat2 = caterpillar(w2, 2, avoid)
    return assemble_gall(v, cat1, cat2, k)


def gen_random_dag_network(
    n: int, label_count: int, seed: int, extra_edges: int = 2
) -> Network:
    """Random labeled network that need not be galled: a random tree with a
    few extra cross edges (kept acyclic, single-rooted)."""
    if n < 1 or label_count < 1:
        raise BadParameters("need n >= 1 and label_count >= 1")
    rng = random.Random(seed)
    base = gen_random_galled_tree(n, label_count, seed * 2 + 1, gall_attempts=0)
    edges = set(base.edges)
    verts = sorted(base.vertices)
    inner = [u for u in verts if not base.is_leaf(u)]

    def ancestors():
        anc = {u: {u} for u in verts}
        pending = sorted(edges)
        changed = True
        while changed:
            changed = False
            for a, b in pending:
                if not anc[a] <= anc[b]:
                    anc[b] |= anc[a]
                    changed = True
        return anc

    added = 0
    for _ in range(extra_edges * 6):
        if added >= extra_edges:
            break
        anc = ancestors()
        u = rng.choice(inner)
        w = rng.choice(verts)
        if w == base.root or w in anc[u] or u in anc[w] or (u, w) in edges:
            continue
        edges.add((u, w))
        added += 1
    return Network(verts, edges, base.leaf_name, base.labels)
