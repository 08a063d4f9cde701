"""Modules, strong modules, and the labeled modular decomposition tree.

The decomposition tree is built top-down.  At each step the unique label k
splitting the current vertex set into k-prime parts is found, if any, by
checking whether the graph of non-k pairs is disconnected: its connected
components are exactly that unique partition.  When no label disconnects,
the strudigram is prime and its maximal proper modules are recovered from
partition refinements that compute, for each vertex v, the maximal modules
avoiding v.

``strong_modules`` follows the simple closure scheme instead: the smallest
module containing each vertex pair is grown by repeatedly adding
distinguishing vertices, and the strong modules are the unions of the
overlap-components of that family (plus the trivial modules).  Everything
is cross-checked against the brute-force oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import EmptySet, NotASubset, SingletonStrudigram, TooLarge
from .network import Network, module_id
from .strudigram import PRIME, Strudigram

_PRIME_ID = -2  # internal sentinel distinct from any interned label id


# -- module predicates ---------------------------------------------------------


def is_module(s: Strudigram, M: Iterable[str]) -> bool:
    """True iff every vertex outside M sees all of M with one label."""
    mem = {str(v) for v in M}
    if not mem:
        raise EmptySet("a module is non-empty by definition")
    ranks = []
    for v in sorted(mem):
        if v not in s._rank:
            raise NotASubset(f"{v!r} is not a vertex")
        ranks.append(s.rank(v))
    if len(mem) in (1, len(s)):
        return True
    mat = s.matrix()
    outside = np.setdiff1d(np.arange(len(s)), np.array(ranks))
    sub = mat[np.ix_(outside, np.array(ranks))]
    return bool((sub == sub[:, :1]).all())


def enumerate_modules_oracle(s: Strudigram) -> set[frozenset]:
    """All modules by direct scan over every non-empty subset (|X| <= 20)."""
    n = len(s)
    if n > 20:
        raise TooLarge(f"oracle enumeration is guarded to |X| <= 20, got {n}")
    verts = s.vertices
    mat = s.matrix()
    out = set()
    idx = np.arange(n)
    for size in range(1, n + 1):
        for sel in combinations(range(n), size):
            if size in (1, n):
                out.add(frozenset(verts[i] for i in sel))
                continue
            selected = np.array(sel)
            outside = np.setdiff1d(idx, selected)
            sub = mat[np.ix_(outside, selected)]
            if (sub == sub[:, :1]).all():
                out.add(frozenset(verts[i] for i in sel))
    return out


# -- closure of a seed set to the smallest enclosing module -----------------------


def _closure(mat: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Positions of the smallest module containing the seed positions."""
    n = mat.shape[0]
    member = np.zeros(n, dtype=bool)
    member[seed] = True
    ref = int(seed[0])
    new = seed
    while new.size and not member.all():
        outs = np.flatnonzero(~member)
        block = mat[np.ix_(outs, new)]
        split = (block != mat[outs, ref][:, None]).any(axis=1)
        add = outs[split]
        member[add] = True
        new = add
    return np.flatnonzero(member)


def smallest_module(s: Strudigram, seed: Iterable[str]) -> frozenset:
    """Smallest module of S containing the given vertices."""
    ranks = np.array(sorted(s.rank(v) for v in seed))
    if ranks.size == 0:
        raise EmptySet("seed must be non-empty")
    pos = _closure(s.matrix(), ranks)
    return frozenset(s.vertices[i] for i in pos)


def strong_modules(s: Strudigram) -> set[frozenset]:
    """The overlap-free modules: trivial ones plus unions of the
    overlap-components of all smallest pair-modules."""
    verts = s.vertices
    n = len(s)
    out = {frozenset([v]) for v in verts}
    out.add(frozenset(verts))
    if n <= 2:
        return out
    mat = s.matrix()
    masks = set()
    for j in range(1, n):
        for i in range(j):
            pos = _closure(mat, np.array([i, j]))
            m = 0
            for p in pos:
                m |= 1 << int(p)
            masks.add(m)
    masks = sorted(masks)
    parent = list(range(len(masks)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(masks)):
        for b in range(a + 1, len(masks)):
            inter = masks[a] & masks[b]
            if inter and inter != masks[a] and inter != masks[b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    unions: dict[int, int] = {}
    for i, m in enumerate(masks):
        r = find(i)
        unions[r] = unions.get(r, 0) | m
    for m in unions.values():
        out.add(frozenset(verts[i] for i in range(n) if m >> i & 1))
    return out


# -- maximal strong partition (fast path) ------------------------------------------


def _components_not_k(m: np.ndarray, k: int) -> list[np.ndarray]:
    """Connected components of the graph keeping only non-k pairs."""
    n = m.shape[0]
    adj = m != k
    np.fill_diagonal(adj, False)
    comps = []
    unvisited = np.ones(n, dtype=bool)
    while unvisited.any():
        start = int(np.flatnonzero(unvisited)[0])
        comp = np.zeros(n, dtype=bool)
        comp[start] = True
        frontier = comp.copy()
        while frontier.any():
            nxt = adj[frontier].any(axis=0) & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(np.flatnonzero(comp))
        unvisited &= ~comp
    return comps


def _max_modules_avoiding(m: np.ndarray, v: int) -> list[np.ndarray]:
    """Maximal modules not containing position v: coarsest partition of the
    rest that no outside vertex (v included) distinguishes."""
    n = m.shape[0]
    others = np.array([i for i in range(n) if i != v])
    groups: dict[int, list[int]] = {}
    for i in others:
        groups.setdefault(int(m[v, i]), []).append(int(i))
    classes = [np.array(g) for g in groups.values()]
    changed = True
    while changed:
        changed = False
        nxt: list[np.ndarray] = []
        in_class = np.empty(n, dtype=np.int64)
        for ci, c in enumerate(classes):
            in_class[c] = ci
        in_class[v] = -1
        for ci, c in enumerate(classes):
            if c.size == 1:
                nxt.append(c)
                continue
            outside = np.flatnonzero(in_class != ci)
            sig = m[np.ix_(c, outside)]
            if (sig == sig[0]).all():
                nxt.append(c)
                continue
            changed = True
            buckets: dict[bytes, list[int]] = {}
            for row, vert in zip(sig, c):
                buckets.setdefault(row.tobytes(), []).append(int(vert))
            nxt.extend(np.array(b) for b in buckets.values())
        classes = nxt
    return sorted(classes, key=lambda c: int(c[0]) if c.size else -1)


def _mmax_prime(m: np.ndarray) -> list[np.ndarray]:
    """Maximal proper modules of a prime strudigram (a partition)."""
    n = m.shape[0]
    classes = _max_modules_avoiding(m, 0)
    blocks = []
    inside = {0}
    for c in classes:
        seed = np.concatenate(([0], c))
        closed = _closure(m, seed)
        if closed.size == n:
            blocks.append(c)
        else:
            inside.update(int(i) for i in closed)
    blocks.append(np.array(sorted(inside)))
    return sorted(blocks, key=lambda b: int(b[0]))


def _mmax_local(m: np.ndarray) -> tuple[int, list[np.ndarray]]:
    """Series label id (or the prime sentinel) and the maximal strong
    partition, in local positions.  Requires at least two vertices."""
    candidates = sorted(set(int(x) for x in m[0, 1:]))
    for k in candidates:
        comps = _components_not_k(m, k)
        if len(comps) > 1:
            return k, comps
    return _PRIME_ID, _mmax_prime(m)


def _mmax(s: Strudigram, idx: np.ndarray) -> tuple[int, list[np.ndarray]]:
    sub = s.matrix()[np.ix_(idx, idx)]
    label, blocks = _mmax_local(sub)
    return label, [idx[b] for b in blocks]


def maximal_strong_partition(s: Strudigram) -> list[frozenset]:
    """The unique partition of X into inclusion-maximal strong modules != X,
    ordered by smallest contained vertex."""
    if len(s) < 2:
        raise SingletonStrudigram("no maximal strong partition below a single vertex")
    _, blocks = _mmax(s, np.arange(len(s)))
    return [frozenset(s.vertices[i] for i in b) for b in blocks]


def series_label(s: Strudigram) -> str:
    """The unique k joining the maximal strong partition, or PRIME."""
    if len(s) < 2:
        raise SingletonStrudigram("series label needs at least two vertices")
    label, _ = _mmax(s, np.arange(len(s)))
    return PRIME if label == _PRIME_ID else s.alphabet[label]


def is_primitive(s: Strudigram) -> bool:
    """True iff every module of S is trivial."""
    if len(s) <= 2:
        return True
    label, blocks = _mmax(s, np.arange(len(s)))
    return label == _PRIME_ID and all(b.size == 1 for b in blocks)


def is_truly_primitive(s: Strudigram) -> bool:
    return len(s) >= 3 and is_primitive(s)


# -- the decomposition tree ---------------------------------------------------------


@dataclass(frozen=True)
class ModularDecompositionTree:
    """Hierarchy of strong modules with the series/prime labeling."""

    network: Network
    modules: dict[str, frozenset]
    tau: dict[str, str]

    @property
    def root(self) -> str:
        return self.network.root

    def children(self, vid: str) -> tuple[str, ...]:
        return self.network.children(vid)

    def label(self, vid: str) -> str:
        return self.tau[vid]

    def inner_ids(self) -> tuple[str, ...]:
        return tuple(v for v in self.network.vertices if v in self.tau)

    def prime_module_ids(self) -> tuple[str, ...]:
        return tuple(v for v in self.inner_ids() if self.tau[v] == PRIME)

    def has_prime(self) -> bool:
        return any(lab == PRIME for lab in self.tau.values())

    def leaf_lca_label(self, x: str, y: str) -> str:
        v = self.network.unique_lca((x, y))
        return self.tau[v]

    def ordered_children(self, vid: str) -> tuple[str, ...]:
        # sibling order: smallest contained vertex
        kids = self.network.children(vid)
        return tuple(sorted(kids, key=lambda c: min(self.modules[c])))

    def to_json_dict(self) -> dict:
        def node(vid):
            out: dict = {"module": sorted(self.modules[vid])}
            kids = self.ordered_children(vid)
            if kids:
                out["label"] = self.tau[vid]
                out["children"] = [node(c) for c in kids]
            return out

        return node(self.root)


def build_mdt(s: Strudigram) -> ModularDecompositionTree:
    """Decomposition tree of S: one vertex per strong module, children are
    the maximal strong partition, tau holds the series label or PRIME."""
    names = s.vertices
    modules: dict[str, frozenset] = {}
    tau: dict[str, str] = {}
    edges: list[tuple[str, str]] = []

    def fresh_id(mem: frozenset) -> str:
        vid = module_id(mem)
        while vid in modules and modules[vid] != mem:
            vid += "'"
        return vid

    def rec(idx: np.ndarray) -> str:
        mem = frozenset(names[i] for i in idx)
        vid = fresh_id(mem)
        modules[vid] = mem
        if idx.size == 1:
            return vid
        label, blocks = _mmax(s, idx)
        tau[vid] = PRIME if label == _PRIME_ID else s.alphabet[label]
        for b in blocks:
            cid = rec(b)
            edges.append((vid, cid))
        return vid

    rec(np.arange(len(s)))
    net = Network(modules.keys(), edges, labels=tau)
    return ModularDecompositionTree(network=net, modules=modules, tau=tau)
