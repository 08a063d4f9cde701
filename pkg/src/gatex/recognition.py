"""Recognition of galled-tree-explainable strudigrams.

A truly-primitive strudigram is explainable by a galled-tree exactly when
it splits around one vertex v into two caterpillar-explainable halves
whose joins away from v share a single label k (a polar-cat).  General
strudigrams are handled through the decomposition tree: every prime
module's quotient must be such a polar-cat; the explaining networks of
the quotients are then grafted into the tree in place of the prime
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    FamilyMismatch,
    IdCollision,
    InvalidWitness,
    NotTrulyPrimitive,
)
from .explain import discriminating_tree, verify_explains
from .moddec import ModularDecompositionTree, build_mdt, is_truly_primitive
from .network import Caterpillar, Network, is_caterpillar
from .strudigram import PRIME, Strudigram, find_p4, find_rainbow_triangle


@dataclass(frozen=True)
class PolarCatWitness:
    """Decomposition of a polar-cat around its pivot vertex.

    ``cat1``/``cat2`` are the discriminating caterpillar trees explaining
    the two halves; the pivot is part of the cherry of both, and neither
    root carries the cross label k.
    """

    v: str
    s1: Strudigram
    s2: Strudigram
    k: str
    cat1: Network
    cat2: Network


def _caterpillar_half(s_i: Strudigram, v: str, k: str) -> Optional[Network]:
    """Discriminating caterpillar explaining one half, or None if the half
    fails any polar-cat side condition."""
    tree = discriminating_tree(s_i)
    if tree is None:
        return None
    cat = is_caterpillar(tree)
    if cat is None:
        return None
    if v not in cat.cherry:
        return None
    if tree.labels[tree.root] == k:
        return None
    return tree


def check_polar_cat(s: Strudigram):
    """Search for a polar-cat decomposition of a truly-primitive strudigram.

    Returns (witness, network) where the network is the elementary
    galled-tree assembled from the witness, or None when s is not a
    polar-cat.  The pattern vertex loop prefers a rainbow triangle over an
    induced P4 and scans candidates in canonical vertex order.
    """
    if not is_truly_primitive(s):
        raise NotTrulyPrimitive("polar-cat decomposition needs a truly-primitive input")
    pattern = find_rainbow_triangle(s) or find_p4(s)
    if pattern is None:  # truly-primitive strudigrams always contain one
        return None
    for v in sorted(pattern):
        rest = s.minus(v)
        mdt = build_mdt(rest)
        if mdt.has_prime():
            continue
        kids = mdt.ordered_children(mdt.root)
        if len(kids) != 2:
            continue
        k = mdt.tau[mdt.root]
        half1 = s.induced(mdt.modules[kids[0]] | {v})
        half2 = s.induced(mdt.modules[kids[1]] | {v})
        cat1 = _caterpillar_half(half1, v, k)
        if cat1 is None:
            continue
        cat2 = _caterpillar_half(half2, v, k)
        if cat2 is None:
            continue
        witness = PolarCatWitness(v=v, s1=half1, s2=half2, k=k, cat1=cat1, cat2=cat2)
        return witness, build_elementary_galled_tree(witness)
    return None


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def assemble_gall(v: str, cat1: Network, cat2: Network, k: str, prefix: str = "") -> Network:
    """Join two caterpillars sharing cherry leaf v under a fresh root, merge
    the two occurrences of v into a hybrid, and hang v below it.

    Root and hybrid are labeled k; the hybrid label never serves as a
    pairwise leaf lca, so the choice is observationally irrelevant.
    """
    leaf_names = set(cat1.leaf_name.values()) | set(cat2.leaf_name.values())
    taken = set(leaf_names)
    rho = _fresh(prefix + "rho", taken)
    eta = _fresh(prefix + "eta", taken)
    edges: list[tuple[str, str]] = []
    labels: dict[str, str] = {rho: k, eta: k}
    leaf_map: dict[str, str] = {}

    def graft(cat: Network, side: int) -> str:
        spine_info = is_caterpillar(cat)
        mapping = {}
        for pos, orig in enumerate(spine_info.spine):
            mapping[orig] = _fresh(f"{prefix}q{side}.{pos + 1}", taken)
            labels[mapping[orig]] = cat.labels[orig]
        for pos, orig in enumerate(spine_info.spine):
            me = mapping[orig]
            if pos + 1 < len(spine_info.spine):
                edges.append((me, mapping[spine_info.spine[pos + 1]]))
            for c in cat.children(orig):
                if not cat.is_leaf(c):
                    continue
                name = cat.leaf_name[c]
                if name == v:
                    edges.append((me, eta))
                else:
                    edges.append((me, name))
                    leaf_map[name] = name
        return mapping[spine_info.spine[0]]

    edges.append((rho, graft(cat1, 1)))
    edges.append((rho, graft(cat2, 2)))
    edges.append((eta, v))
    leaf_map[v] = v
    vertices = {rho, eta, v} | {u for e in edges for u in e}
    return Network(vertices, edges, leaf_map, labels)


def build_elementary_galled_tree(w: PolarCatWitness) -> Network:
    """Materialize the explaining galled-tree of a polar-cat witness."""
    shared = set(w.s1.vertices) & set(w.s2.vertices)
    if shared != {w.v}:
        raise InvalidWitness(f"halves must share exactly the pivot, share {sorted(shared)}")
    for s_i, cat in ((w.s1, w.cat1), (w.s2, w.cat2)):
        if w.v not in s_i.vertices:
            raise InvalidWitness("pivot missing from a half")
        shape = is_caterpillar(cat)
        if shape is None:
            raise InvalidWitness("half explanation is not a caterpillar")
        if w.v not in shape.cherry:
            raise InvalidWitness("pivot is not part of a cherry")
        if cat.labels[cat.root] == w.k:
            raise InvalidWitness("caterpillar root carries the cross label")
        ok, counter = verify_explains(cat, s_i)
        if not ok:
            raise InvalidWitness(f"caterpillar does not explain its half: {counter}")
    return assemble_gall(w.v, w.cat1, w.cat2, w.k)


@dataclass(frozen=True)
class PrimeExplainingFamily:
    """Networks explaining the quotient of every prime module, keyed by the
    module's vertex set.  Internal vertex ids are namespaced per module,
    so members are pairwise internal-vertex-disjoint by construction."""

    entries: dict  # frozenset -> Network

    def __len__(self):
        return len(self.entries)

    def modules(self):
        return sorted(self.entries, key=sorted)

    def validate(self, s: Strudigram) -> None:
        """Re-check that every entry explains its quotient (slow path)."""
        mdt = build_mdt(s)
        for pid in mdt.prime_module_ids():
            mod = mdt.modules[pid]
            if mod not in self.entries:
                raise FamilyMismatch(f"missing network for prime module {sorted(mod)}")
            q = _quotient_on_child_ids(s, mdt, pid)
            ok, counter = verify_explains(self.entries[mod], q)
            if not ok:
                raise FamilyMismatch(f"entry for {sorted(mod)} fails: {counter}")


def _quotient_on_child_ids(
    s: Strudigram, mdt: ModularDecompositionTree, pid: str
) -> Strudigram:
    """Quotient of S[M] by its maximal strong partition, with vertices named
    exactly like the decomposition-tree children of M."""
    reps = {min(mdt.modules[c]): c for c in mdt.children(pid)}
    return s.induced(reps.keys()).relabel_vertices(reps)


def prime_explaining_family(s: Strudigram) -> Optional[PrimeExplainingFamily]:
    """Galled-tree family for every prime module quotient, or None when some
    quotient is not a polar-cat (s is then not galled-tree explainable)."""
    mdt = build_mdt(s)
    entries = {}
    for pid in mdt.prime_module_ids():
        q = _quotient_on_child_ids(s, mdt, pid)
        res = check_polar_cat(q)
        if res is None:
            return None
        witness, net = res
        entries[mdt.modules[pid]] = _namespace_inner(net, f"{pid}|")
    return PrimeExplainingFamily(entries=entries)


def _namespace_inner(net: Network, prefix: str) -> Network:
    mapping = {v: (v if net.is_leaf(v) else prefix + v) for v in net.vertices}
    vertices = [mapping[v] for v in net.vertices]
    edges = [(mapping[u], mapping[w]) for u, w in net.edges]
    leaf_names = {mapping[v]: name for v, name in net.leaf_name.items()}
    labels = {mapping[v]: lab for v, lab in net.labels.items()}
    return Network(vertices, edges, leaf_names, labels)


def pvr_network(s: Strudigram, family: Optional[PrimeExplainingFamily] = None) -> Network:
    """Replace every prime vertex of the decomposition tree by its family
    network: drop the prime vertex's child edges, identify the network root
    with the prime vertex and its leaves with the corresponding children.

    With an empty family (no prime modules) this is the decomposition tree
    itself.
    """
    mdt = build_mdt(s)
    prime_ids = mdt.prime_module_ids()
    entries = dict(family.entries) if family is not None else {}
    need = {mdt.modules[p] for p in prime_ids}
    have = set(entries)
    if need != have:
        missing = [sorted(m) for m in sorted(need - have, key=sorted)]
        extra = [sorted(m) for m in sorted(have - need, key=sorted)]
        raise FamilyMismatch(f"family mismatch; missing {missing}, extra {extra}")

    vertices = set(mdt.network.vertices)
    edges = set(mdt.network.edges)
    labels = {v: lab for v, lab in mdt.tau.items() if lab != PRIME}

    used_inner: set[str] = set()
    for pid in prime_ids:
        sub = entries[mdt.modules[pid]]
        kids = set(mdt.children(pid))
        sub_leaves = set(sub.leaves)
        if sub_leaves != kids:
            raise FamilyMismatch(
                f"family network for {pid!r} has leaves {sorted(sub_leaves)}, "
                f"expected {sorted(kids)}"
            )
        rename = {sub.root: pid}
        incoming = {rename.get(v, v) for v in sub.vertices if not sub.is_leaf(v)} - {pid}
        clash = incoming & (vertices | used_inner)
        if clash:
            raise IdCollision(f"family internal ids already in use: {sorted(clash)}")
        used_inner |= incoming

        for c in kids:
            edges.discard((pid, c))
        for u, w in sub.edges:
            edges.add((rename.get(u, u), rename.get(w, w)))
        for u in sub.vertices:
            if not sub.is_leaf(u):
                vertices.add(rename.get(u, u))
                lab = sub.labels.get(u)
                if lab is not None:
                    labels[rename.get(u, u)] = lab

    return Network(vertices, edges, labels=labels)


def recognize_gatex(s: Strudigram) -> Optional[Network]:
    """The labeled galled-tree explaining s, or None when none exists."""
    family = prime_explaining_family(s)
    if family is None:
        return None
    return pvr_network(s, family)
