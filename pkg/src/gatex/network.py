"""Rooted DAGs on a leaf set, clusters, LCA machinery, and galled-tree predicates.

A ``Network`` is a rooted DAG whose out-degree-0 vertices are bijectively
named by a leaf set X, optionally carrying a labeling ``t`` on inner
vertices.  Instances are immutable after validation; the per-vertex
ancestor bit-set cache is built lazily but idempotently, so concurrent
readers are safe.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    Cyclic,
    GroundSetTooSmall,
    InvalidClusteringSystem,
    LeafNameCollision,
    MultipleRoots,
    NotATree,
    TooLarge,
    UnknownVertex,
    UnlabeledInnerVertex,
    UnreachableVertex,
    ValidationError,
)


def module_id(members: Iterable[str]) -> str:
    """Canonical vertex id for a set of names: sorted members, comma-joined.

    Singletons collapse to the bare name, matching the convention that the
    Hasse diagram of a clustering system is a network on X itself.
    """
    ms = sorted(members)
    if len(ms) == 1:
        return ms[0]
    return ",".join(ms)


class Network:
    """Validated rooted DAG with named leaves and optional inner labels."""

    __slots__ = (
        "vertices",
        "edges",
        "root",
        "leaf_name",
        "labels",
        "_children",
        "_parents",
        "_index",
        "_name_to_leaf",
        "_topo",
        "_anc_masks",
        "_leaf_sets",
    )

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str]],
        leaf_names: Optional[Mapping[str, str]] = None,
        labels: Optional[Mapping[str, str]] = None,
    ):
        ids = {str(v) for v in vertices}
        edge_set = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise Cyclic(f"self-loop at {u!r}")
            edge_set.add((u, v))
            ids.add(u)
            ids.add(v)
        if not ids:
            raise ValidationError("a network needs at least one vertex")
        verts = sorted(ids)
        self.vertices: tuple[str, ...] = tuple(verts)
        self.edges: tuple[tuple[str, str], ...] = tuple(sorted(edge_set))
        self._index = {v: i for i, v in enumerate(self.vertices)}

        children: dict[str, list[str]] = {v: [] for v in self.vertices}
        parents: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            children[u].append(v)
            parents[v].append(u)
        self._children = {v: tuple(sorted(cs)) for v, cs in children.items()}
        self._parents = {v: tuple(sorted(ps)) for v, ps in parents.items()}

        roots = [v for v in self.vertices if not self._parents[v]]
        if not roots:
            raise Cyclic("no in-degree-0 vertex; the graph contains a cycle")
        if len(roots) > 1:
            raise MultipleRoots(f"multiple in-degree-0 vertices: {roots}")
        self.root = roots[0]

        self._topo = self._toposort()
        reached = set()
        stack = [self.root]
        while stack:
            v = stack.pop()
            if v in reached:
                continue
            reached.add(v)
            stack.extend(self._children[v])
        if len(reached) != len(self.vertices):
            missing = sorted(set(self.vertices) - reached)
            raise UnreachableVertex(f"not reachable from the root: {missing}")

        leaf_ids = [v for v in self.vertices if not self._children[v]]
        names = {v: v for v in leaf_ids}
        if leaf_names:
            for vid, name in leaf_names.items():
                vid, name = str(vid), str(name)
                if vid not in self._index:
                    raise UnknownVertex(f"leaf map mentions unknown vertex {vid!r}")
                if self._children[vid]:
                    raise LeafNameCollision(f"{vid!r} is not a leaf")
                names[vid] = name
        if len(set(names.values())) != len(names):
            seen: dict[str, str] = {}
            for vid, name in sorted(names.items()):
                if name in seen:
                    raise LeafNameCollision(
                        f"leaf name {name!r} used by both {seen[name]!r} and {vid!r}"
                    )
                seen[name] = vid
        self.leaf_name = dict(sorted(names.items()))
        self._name_to_leaf = {name: vid for vid, name in self.leaf_name.items()}

        labs = {}
        for v, lab in (labels or {}).items():
            v = str(v)
            if v not in self._index:
                raise UnknownVertex(f"label map mentions unknown vertex {v!r}")
            if not self._children[v]:
                raise ValidationError(f"label on leaf {v!r}; labels belong to inner vertices")
            labs[v] = str(lab)
        self.labels = labs

        self._anc_masks: Optional[dict[str, int]] = None
        self._leaf_sets: Optional[dict[str, frozenset]] = None

    def _toposort(self) -> tuple[str, ...]:
        indeg = {v: len(self._parents[v]) for v in self.vertices}
        order = []
        frontier = sorted(v for v in self.vertices if indeg[v] == 0)
        while frontier:
            v = frontier.pop()
            order.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    frontier.append(c)
            frontier.sort()
        if len(order) != len(self.vertices):
            raise Cyclic("directed cycle detected")
        return tuple(order)

    # -- basic structure ---------------------------------------------------------

    def children(self, v: str) -> tuple[str, ...]:
        return self._children[self._check(v)]

    def parents(self, v: str) -> tuple[str, ...]:
        return self._parents[self._check(v)]

    def _check(self, v: str) -> str:
        if v not in self._index:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return v

    def is_leaf(self, v: str) -> bool:
        return not self._children[self._check(v)]

    @property
    def leaves(self) -> tuple[str, ...]:
        return tuple(sorted(self.leaf_name))

    @property
    def leaf_names(self) -> tuple[str, ...]:
        return tuple(sorted(self.leaf_name.values()))

    @property
    def inner_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self._children[v])

    def leaf_by_name(self, name: str) -> str:
        try:
            return self._name_to_leaf[name]
        except KeyError:
            raise UnknownVertex(f"no leaf named {name!r}") from None

    def label(self, v: str) -> str:
        lab = self.labels.get(self._check(v))
        if lab is None:
            raise UnlabeledInnerVertex(f"vertex {v!r} has no label")
        return lab

    def in_degree(self, v: str) -> int:
        return len(self._parents[self._check(v)])

    def out_degree(self, v: str) -> int:
        return len(self._children[self._check(v)])

    def is_hybrid(self, v: str) -> bool:
        return self.in_degree(v) >= 2

    def with_labels(self, labels: Mapping[str, str]) -> "Network":
        """Copy of this network with the given inner labeling."""
        return Network(self.vertices, self.edges, self.leaf_name, labels)

    def __repr__(self):
        return (
            f"Network({len(self.vertices)} vertices, {len(self.edges)} edges, "
            f"{len(self.leaf_name)} leaves)"
        )

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.leaf_name == other.leaf_name
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.vertices, self.edges, tuple(sorted(self.leaf_name.items()))))

    # -- ancestor machinery --------------------------------------------------------

    def _ancestor_masks(self) -> dict[str, int]:
        masks = self._anc_masks
        if masks is None:
            masks = {}
            for v in self._topo:
                m = 1 << self._index[v]
                for p in self._parents[v]:
                    m |= masks[p]
                masks[v] = m
            self._anc_masks = masks
        return masks

    def descends_from(self, v: str, u: str) -> bool:
        """True iff u is an ancestor of v (reflexively)."""
        masks = self._ancestor_masks()
        return bool(masks[self._check(v)] >> self._index[self._check(u)] & 1)

    def _resolve(self, v: str) -> str:
        if v in self._index:
            return v
        if v in self._name_to_leaf:
            return self._name_to_leaf[v]
        raise UnknownVertex(f"unknown vertex or leaf name {v!r}")

    def lca_set(self, A: Iterable[str]) -> tuple[str, ...]:
        """All minimal common ancestors of A (vertex ids or leaf names)."""
        ids = [self._resolve(a) for a in A]
        if not ids:
            raise ValidationError("lca of the empty set is undefined")
        masks = self._ancestor_masks()
        common = masks[ids[0]]
        for v in ids[1:]:
            common &= masks[v]
        nonmin = 0
        m = common
        while m:
            low = m & -m
            v = self.vertices[low.bit_length() - 1]
            nonmin |= masks[v] & ~low
            m ^= low
        minimal = common & ~nonmin
        out = []
        while minimal:
            low = minimal & -minimal
            out.append(self.vertices[low.bit_length() - 1])
            minimal ^= low
        return tuple(sorted(out))

    def unique_lca(self, A: Iterable[str]) -> Optional[str]:
        vs = self.lca_set(A)
        return vs[0] if len(vs) == 1 else None

    # -- clusters -------------------------------------------------------------------

    def _leaf_cluster_sets(self) -> dict[str, frozenset]:
        sets = self._leaf_sets
        if sets is None:
            sets = {}
            for v in reversed(self._topo):
                if not self._children[v]:
                    sets[v] = frozenset([self.leaf_name[v]])
                else:
                    acc = frozenset()
                    for c in self._children[v]:
                        acc |= sets[c]
                    sets[v] = acc
            self._leaf_sets = sets
        return sets

    def cluster(self, v: str) -> frozenset:
        """Descendant leaf names of v."""
        return self._leaf_cluster_sets()[self._check(v)]

    def clusters(self) -> "ClusteringSystem":
        sets = self._leaf_cluster_sets()
        return ClusteringSystem(self.leaf_names, set(sets.values()))


def validate_network(raw: dict | Network) -> Network:
    """Validate a candidate network (JSON dict shape or Network)."""
    if isinstance(raw, Network):
        return raw
    return network_from_json_dict(raw)


# -- k-lca properties ------------------------------------------------------------


def has_k_lca_property(net: Network, k: int) -> bool:
    """True iff every non-empty leaf set of size <= k has a unique lca.

    Sizes 2 and 3 are checked exhaustively for any network; beyond that
    the subset scan is guarded to |X| <= 16.
    """
    if k < 1:
        raise ValidationError("k must be at least 1")
    names = net.leaf_names
    top = min(k, len(names))
    if top > 3 and len(names) > 16:
        raise TooLarge(f"subset scan for k={k} needs |X| <= 16, got {len(names)}")
    for size in range(2, top + 1):
        for A in combinations(names, size):
            if net.unique_lca(A) is None:
                return False
    return True


def is_global_lca(net: Network) -> bool:
    """True iff lca is well-defined for every non-empty subset of V(N).

    Pairs suffice: when lca(A) is unique, the common ancestors of A are
    exactly the ancestors of lca(A), so lca(A + {z}) = lca({lca(A), z})
    and induction reduces arbitrary subsets to vertex pairs.
    """
    masks = net._ancestor_masks()
    verts = net.vertices
    for i, u in enumerate(verts):
        mu = masks[u]
        for v in verts[i + 1 :]:
            mv = masks[v]
            if mu & (1 << net._index[v]) or mv & (1 << net._index[u]):
                continue  # comparable: the upper vertex is the unique lca
            if len(net.lca_set((u, v))) != 1:
                return False
    return True


# -- clustering systems ------------------------------------------------------------


class ClusteringSystem:
    """Family of subsets of a ground set, with all singletons and X present."""

    __slots__ = ("ground", "sets", "_masks", "_pos")

    def __init__(self, ground: Iterable[str], sets: Iterable[Iterable[str]]):
        self.ground: tuple[str, ...] = tuple(sorted({str(x) for x in ground}))
        if not self.ground:
            raise InvalidClusteringSystem("empty ground set")
        family = {frozenset(str(x) for x in c) for c in sets}
        if frozenset() in family:
            raise InvalidClusteringSystem("the empty set is not a cluster")
        gset = set(self.ground)
        for c in family:
            if not c <= gset:
                raise InvalidClusteringSystem(f"cluster {sorted(c)} exceeds the ground set")
        for x in self.ground:
            if frozenset([x]) not in family:
                raise InvalidClusteringSystem(f"missing singleton {{{x!r}}}")
        if frozenset(self.ground) not in family:
            raise InvalidClusteringSystem("missing the full ground set")
        self.sets: frozenset = frozenset(family)
        self._pos = {x: i for i, x in enumerate(self.ground)}
        masks = []
        for c in sorted(family, key=lambda c: (len(c), sorted(c))):
            m = 0
            for x in c:
                m |= 1 << self._pos[x]
            masks.append(m)
        self._masks = tuple(masks)

    def __len__(self):
        return len(self.sets)

    def __contains__(self, c) -> bool:
        return frozenset(c) in self.sets

    def __eq__(self, other):
        if not isinstance(other, ClusteringSystem):
            return NotImplemented
        return self.ground == other.ground and self.sets == other.sets

    def __hash__(self):
        return hash((self.ground, self.sets))

    def __repr__(self):
        return f"ClusteringSystem(|X|={len(self.ground)}, {len(self.sets)} clusters)"

    def members(self) -> list[frozenset]:
        return sorted(self.sets, key=lambda c: (len(c), sorted(c)))

    def _unmask(self, m: int) -> frozenset:
        return frozenset(self.ground[i] for i in range(len(self.ground)) if m >> i & 1)

    def is_hierarchy(self) -> bool:
        return not any(True for _ in self._overlapping_pairs())

    def _overlapping_pairs(self):
        ms = self._masks
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                inter = ms[i] & ms[j]
                if inter and inter != ms[i] and inter != ms[j]:
                    yield ms[i], ms[j]

    def is_closed(self) -> bool:
        """Non-empty pairwise intersections are clusters themselves."""
        have = set(self._masks)
        for a, b in self._overlapping_pairs():
            if a & b not in have:
                return False
        return True

    def property_l(self) -> bool:
        """Every cluster meets all clusters it overlaps in the same set."""
        partners: dict[int, list[int]] = {}
        for a, b in self._overlapping_pairs():
            partners.setdefault(a, []).append(b)
            partners.setdefault(b, []).append(a)
        for a, bs in partners.items():
            inters = {a & b for b in bs}
            if len(inters) > 1:
                return False
        return True

    def property_n3o(self) -> bool:
        """No three distinct pairwise overlapping clusters."""
        overlaps: dict[int, list[int]] = {}
        for a, b in self._overlapping_pairs():
            overlaps.setdefault(a, []).append(b)
            overlaps.setdefault(b, []).append(a)
        for partners in overlaps.values():
            for i in range(len(partners)):
                for j in range(i + 1, len(partners)):
                    inter = partners[i] & partners[j]
                    if inter and inter != partners[i] and inter != partners[j]:
                        return False
        return True

    def pre_k_ary(self, k: int) -> bool:
        """Every non-empty A with |A| <= k has a unique minimal superset cluster."""
        if k < 1:
            raise ValidationError("k must be at least 1")
        n = len(self.ground)
        top = min(k, n)
        if top > 3 and n > 16:
            raise TooLarge(f"pre-{k}-ary scan needs |X| <= 16, got {n}")
        for size in range(1, top + 1):
            for A in combinations(range(n), size):
                am = 0
                for i in A:
                    am |= 1 << i
                sups = [m for m in self._masks if m & am == am]
                minimal = [
                    m
                    for m in sups
                    if not any(s != m and s & m == s for s in sups)
                ]
                if len(minimal) != 1:
                    return False
        return True

    def properties(self, ks: Sequence[int] = (2, 3)) -> dict:
        out = {
            "closed": self.is_closed(),
            "L": self.property_l(),
            "N3O": self.property_n3o(),
            "hierarchy": self.is_hierarchy(),
        }
        for k in ks:
            out[f"pre_{k}_ary"] = self.pre_k_ary(k)
        return out

    def minus(self, x: str) -> "ClusteringSystem":
        """Remove element x from the ground set and every cluster; deduplicate."""
        if x not in self._pos:
            raise UnknownVertex(f"{x!r} is not in the ground set")
        if len(self.ground) <= 1:
            raise GroundSetTooSmall("cannot remove from a 1-element ground set")
        fam = {c - {x} for c in self.sets if c != frozenset([x])}
        fam.discard(frozenset())
        return ClusteringSystem([g for g in self.ground if g != x], fam)

    def hasse(self) -> Network:
        """Cover digraph, as a network on X (singletons renamed to bare names)."""
        ms = list(self._masks)  # sorted by size then members
        ids = [module_id(self._unmask(m)) for m in ms]
        edges = []
        for bi, bm in enumerate(ms):
            sups = [(ms[ai].bit_count(), ai) for ai in range(len(ms)) if ms[ai] & bm == bm and ai != bi]
            covers: list[int] = []
            for _, ai in sorted(sups):
                am = ms[ai]
                if any(ms[c] & am == ms[c] for c in covers):
                    continue
                covers.append(ai)
                edges.append((ids[ai], ids[bi]))
        return Network(ids, edges)


def clustering_minus_vertex(c: ClusteringSystem, x: str) -> ClusteringSystem:
    return c.minus(x)


def hasse(c: ClusteringSystem) -> Network:
    return c.hasse()


# -- subnetworks -------------------------------------------------------------------


def subnetwork_rooted_at(net: Network, v: str) -> Network:
    """Descendant subnetwork with degree-1/1 vertices suppressed.

    After suppression, an out-degree-1 root is deleted so the new root is
    its child.
    """
    net._check(v)
    masks = net._ancestor_masks()
    vbit = 1 << net._index[v]
    keep = {u for u in net.vertices if masks[u] & vbit}
    children = {u: [c for c in net.children(u) if c in keep] for u in keep}
    parents = {u: [p for p in net.parents(u) if p in keep] for u in keep}

    changed = True
    while changed:
        changed = False
        for u in sorted(keep):
            if u == v:
                continue
            if len(children[u]) == 1 and len(parents[u]) == 1:
                (p,), (c,) = parents[u], children[u]
                children[p].remove(u)
                parents[c].remove(u)
                if c not in children[p]:
                    children[p].append(c)
                    parents[c].append(p)
                keep.remove(u)
                del children[u], parents[u]
                changed = True
                break

    root = v
    if len(children.get(root, ())) == 1:
        child = children[root][0]
        parents[child].remove(root)
        keep.remove(root)
        del children[root], parents[root]
        root = child

    edges = [(u, c) for u in keep for c in children[u]]
    leaf_names = {u: net.leaf_name[u] for u in keep if u in net.leaf_name}
    labels = {u: net.labels[u] for u in keep if u in net.labels and children[u]}
    return Network(keep, edges, leaf_names, labels)


def leaf_extended(net: Network) -> Network:
    """Insert a tree-vertex above every hybrid leaf; leaf names preserved."""
    hybrid_leaves = [v for v in net.leaves if net.in_degree(v) >= 2]
    if not hybrid_leaves:
        return net
    taken = set(net.vertices)
    edges = list(net.edges)
    vertices = list(net.vertices)
    leaf_names = dict(net.leaf_name)
    for x in hybrid_leaves:
        vx = f"{x}^"
        while vx in taken:
            vx += "^"
        taken.add(vx)
        vertices.append(vx)
        edges = [(u, vx) if w == x else (u, w) for u, w in edges]
        edges.append((vx, x))
    return Network(vertices, edges, leaf_names, net.labels)


# -- biconnected components and galls ------------------------------------------------


@dataclass(frozen=True)
class Bicomponent:
    vertices: frozenset
    edges: tuple[tuple[str, str], ...]

    @property
    def trivial(self) -> bool:
        return len(self.vertices) < 3


@dataclass(frozen=True)
class GallDescriptor:
    root: str
    hybrid: str
    side1: tuple[str, ...]
    side2: tuple[str, ...]


def biconnected_components(net: Network) -> list[Bicomponent]:
    """Standard low-link decomposition of the underlying undirected graph."""
    adj: dict[str, list[str]] = {v: [] for v in net.vertices}
    for u, v in net.edges:
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()

    index = {}
    low = {}
    counter = [0]
    estack: list[tuple[str, str]] = []
    comps: list[Bicomponent] = []
    seen_edges = set()

    def edge_key(a, b):
        return (a, b) if (a, b) in seen_edges or (a, b) in set(net.edges) else (b, a)

    directed = set(net.edges)

    def emit(until):
        chunk = []
        while estack:
            e = estack.pop()
            chunk.append(e)
            if e == until:
                break
        verts = frozenset(x for e in chunk for x in e)
        des = tuple(sorted((u, v) if (u, v) in directed else (v, u) for u, v in chunk))
        comps.append(Bicomponent(verts, des))

    for start in net.vertices:
        if start in index:
            continue
        stack = [(start, None, iter(adj[start]))]
        index[start] = low[start] = counter[0]
        counter[0] += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    parent = None  # skip one multiplicity of the tree edge
                    continue
                if w not in index:
                    estack.append((v, w))
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                elif index[w] < index[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], index[w])
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= index[u]:
                        emit((u, v))
    return comps


def is_gall(component: Bicomponent) -> Optional[GallDescriptor]:
    """Decompose a non-trivial biconnected component into two directed sides."""
    if component.trivial:
        return None
    verts = component.vertices
    if len(component.edges) != len(verts):
        return None
    indeg = {v: 0 for v in verts}
    outdeg = {v: 0 for v in verts}
    succ = {}
    for u, v in component.edges:
        indeg[v] += 1
        outdeg[u] += 1
        succ.setdefault(u, []).append(v)
    roots = [v for v in verts if indeg[v] == 0]
    hybrids = [v for v in verts if indeg[v] == 2]
    if len(roots) != 1 or len(hybrids) != 1:
        return None
    if any(indeg[v] > 2 for v in verts) or any(outdeg[v] > 2 for v in verts):
        return None
    rho, eta = roots[0], hybrids[0]
    if outdeg[rho] != 2 or outdeg[eta] != 0:
        return None
    sides = []
    for first in sorted(succ[rho]):
        path = [rho, first]
        while path[-1] != eta:
            nxt = succ.get(path[-1])
            if not nxt or len(nxt) != 1:
                return None
            path.append(nxt[0])
            if len(path) > len(verts):
                return None
        sides.append(tuple(path))
    if len(sides) != 2:
        return None
    inner1 = set(sides[0][1:-1])
    inner2 = set(sides[1][1:-1])
    if inner1 & inner2:
        return None
    if set(sides[0]) | set(sides[1]) != verts:
        return None
    return GallDescriptor(rho, eta, sides[0], sides[1])


def galls(net: Network) -> list[GallDescriptor]:
    out = []
    for comp in biconnected_components(net):
        if comp.trivial:
            continue
        g = is_gall(comp)
        if g is not None:
            out.append(g)
    return out


# -- classification -------------------------------------------------------------------


@dataclass(frozen=True)
class NetworkClass:
    phylogenetic: bool
    tree: bool
    galled: bool
    elementary: bool
    strong: bool
    quasi_discriminating: bool
    discriminating: bool
    leaf_separated: bool


def _require_label(net: Network, v: str) -> str:
    lab = net.labels.get(v)
    if lab is None:
        raise UnlabeledInnerVertex(f"inner vertex {v!r} has no label")
    return lab


def galled_tree_classify(net: Network) -> NetworkClass:
    """Evaluate all structural flags by their literal definitions.

    The three label-dependent flags (strong in its tie-break case,
    quasi-discriminating, discriminating) raise UnlabeledInnerVertex when
    a needed label is missing.
    """
    inner = set(net.inner_vertices)
    trivial = len(net.vertices) == 1
    phylogenetic = trivial or all(
        not (net.out_degree(v) == 1 and net.in_degree(v) <= 1) for v in net.vertices
    )
    tree = all(net.in_degree(v) <= 1 for v in net.vertices)
    leaf_separated = all(net.in_degree(v) <= 1 for v in net.leaves)

    comps = [c for c in biconnected_components(net) if not c.trivial]
    gall_list = [is_gall(c) for c in comps]
    galled = phylogenetic and all(g is not None for g in gall_list)
    found = [g for g in gall_list if g is not None]

    elementary = False
    if galled and len(found) == 1 and len(comps) == 1:
        g = found[0]
        on_gall = set(g.side1) | set(g.side2)
        cond_i = all(
            v in on_gall or any(p in on_gall for p in net.parents(v))
            for v in net.vertices
        )
        cond_ii = all(
            c == g.hybrid for c in net.children(g.root) if net.is_leaf(c)
        )
        cond_iii = True
        for v in inner:
            if v == g.root:
                continue
            lc = [c for c in net.children(v) if net.is_leaf(c) and net.in_degree(c) == 1]
            if len(lc) != 1:
                cond_iii = False
                break
        elementary = cond_i and cond_ii and cond_iii

    strong = galled
    if galled:
        for g in found:
            t1 = g.side1[1:-1]
            t2 = g.side2[1:-1]
            if not t1 or not t2:
                strong = False
                break
            if len(t1) == 1 and len(t2) == 1:
                labs = {
                    _require_label(net, t1[0]),
                    _require_label(net, t2[0]),
                    _require_label(net, g.root),
                }
                if len(labs) != 3:
                    strong = False
                    break

    quasi = True
    for u, v in net.edges:
        if v in inner and net.in_degree(v) <= 1:
            if _require_label(net, u) == _require_label(net, v):
                quasi = False
                break

    discriminating = quasi
    if quasi:
        for u, v in net.edges:
            if u in inner and v in inner:
                if _require_label(net, u) == _require_label(net, v):
                    discriminating = False
                    break

    return NetworkClass(
        phylogenetic=phylogenetic,
        tree=tree,
        galled=galled,
        elementary=elementary,
        strong=strong,
        quasi_discriminating=quasi,
        discriminating=discriminating,
        leaf_separated=leaf_separated,
    )


@dataclass(frozen=True)
class Caterpillar:
    spine: tuple[str, ...]
    cherry: tuple[str, str]


def is_caterpillar(net: Network) -> Optional[Caterpillar]:
    """Caterpillar descriptor: inner vertices form one directed path, every
    spine vertex but the last has one leaf-child, the last has exactly two."""
    if any(net.in_degree(v) >= 2 for v in net.vertices):
        raise NotATree("caterpillar check expects a tree")
    if len(net.vertices) == 1:
        return None
    spine = []
    v = net.root
    while True:
        if net.is_leaf(v):
            return None
        spine.append(v)
        inner_children = [c for c in net.children(v) if not net.is_leaf(c)]
        leaf_children = [c for c in net.children(v) if net.is_leaf(c)]
        if not inner_children:
            if len(leaf_children) != 2:
                return None
            cherry = tuple(sorted(leaf_children))
            return Caterpillar(tuple(spine), (cherry[0], cherry[1]))
        if len(inner_children) != 1 or len(leaf_children) != 1:
            return None
        v = inner_children[0]


# -- serialization -----------------------------------------------------------------


def network_to_json_dict(net: Network) -> dict:
    verts = []
    for v in net.vertices:
        entry: dict = {"id": v}
        if v in net.labels:
            entry["t"] = net.labels[v]
        verts.append(entry)
    return {
        "vertices": verts,
        "edges": [[u, v] for u, v in net.edges],
        "leaves": {v: name for v, name in sorted(net.leaf_name.items())},
    }


def network_from_json_dict(data: dict) -> Network:
    if not isinstance(data, dict) or "vertices" not in data:
        raise ValidationError("network JSON needs a 'vertices' array")
    ids = []
    labels = {}
    for entry in data["vertices"]:
        if isinstance(entry, str):
            ids.append(entry)
            continue
        ids.append(entry["id"])
        if "t" in entry and entry["t"] is not None:
            labels[entry["id"]] = entry["t"]
    edges = [tuple(e) for e in data.get("edges", [])]
    return Network(ids, edges, data.get("leaves"), labels)


def network_loads(text: str) -> Network:
    return network_from_json_dict(json.loads(text))


def network_dumps(net: Network, indent: Optional[int] = None) -> str:
    return json.dumps(network_to_json_dict(net), indent=indent, sort_keys=True)


def to_dot(net: Network) -> str:
    """DOT digraph; edges run away from the root (top-down)."""
    lines = ["digraph network {", "  rankdir=TB;"]
    for v in net.vertices:
        if net.is_leaf(v):
            lines.append(f'  "{v}" [shape=box, label="{net.leaf_name[v]}"];')
        else:
            lab = net.labels.get(v, "")
            lines.append(f'  "{v}" [shape=ellipse, label="{lab}"];')
    for u, v in net.edges:
        lines.append(f'  "{u}" -> "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_extended_newick(net: Network) -> str:
    """Extended Newick string; hybrid vertices carry #H<i> at every attachment."""
    hybrids = sorted(v for v in net.vertices if net.in_degree(v) >= 2)
    tag = {v: f"#H{i + 1}" for i, v in enumerate(hybrids)}
    min_leaf: dict[str, str] = {}
    for v in reversed(net._topo):
        if net.is_leaf(v):
            min_leaf[v] = net.leaf_name[v]
        else:
            min_leaf[v] = min(min_leaf[c] for c in net.children(v))
    emitted = set()

    def annot(v):
        return f"[&t={net.labels[v]}]" if v in net.labels else ""

    def render(v):
        if v in tag:
            if net.is_leaf(v):
                return f"{net.leaf_name[v]}{tag[v]}"
            if v in emitted:
                return tag[v]
            emitted.add(v)
            kids = sorted(net.children(v), key=lambda c: min_leaf[c])
            return "(" + ",".join(render(c) for c in kids) + ")" + tag[v] + annot(v)
        if net.is_leaf(v):
            return net.leaf_name[v]
        kids = sorted(net.children(v), key=lambda c: min_leaf[c])
        return "(" + ",".join(render(c) for c in kids) + ")" + annot(v)

    return render(net.root) + ";"
