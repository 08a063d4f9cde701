"""The explanation relation between labeled networks and strudigrams.

A labeled network explains a strudigram when every leaf pair has a unique
least common ancestor and that ancestor's label equals the pair label.
This module derives strudigrams from networks, verifies explanations,
builds the dense quadratic-size explaining network that always exists,
restricts explanations of lca-networks to vertex subsets, and produces
the discriminating tree for tree-explainable strudigrams.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import (
    EmptySubset,
    LeafMismatch,
    No2LcaProperty,
    NotASubset,
    NotLcaNetwork,
    UnlabeledInnerVertex,
)
from .moddec import build_mdt
from .network import ClusteringSystem, Network, module_id
from .strudigram import Strudigram


def derive_strudigram(net: Network, alphabet: Optional[Iterable[str]] = None) -> Strudigram:
    """Strudigram on the leaf names, reading each pair label off its lca.

    Raises No2LcaProperty with the lexicographically first failing pair if
    some leaf pair lacks a unique lca.
    """
    names = sorted(net.leaf_name.values())
    sigma: dict[tuple[str, str], str] = {}
    for i, x in enumerate(names):
        for y in names[i + 1 :]:
            v = net.unique_lca((x, y))
            if v is None:
                raise No2LcaProperty((x, y))
            lab = net.labels.get(v)
            if lab is None:
                raise UnlabeledInnerVertex(
                    f"lca {v!r} of leaves ({x!r}, {y!r}) has no label"
                )
            sigma[(x, y)] = lab
    return Strudigram.from_map(names, sigma, alphabet=alphabet)


def verify_explains(net: Network, s: Strudigram):
    """Check that the network explains the strudigram.

    Returns (True, None), or (False, (x, y, reason)) with the
    lexicographically first counterexample pair.
    """
    names = set(net.leaf_name.values())
    if names != set(s.vertices):
        raise LeafMismatch(
            f"leaf names {sorted(names)} != strudigram vertices {list(s.vertices)}"
        )
    for i, x in enumerate(s.vertices):
        for y in s.vertices[i + 1 :]:
            lcas = net.lca_set((x, y))
            if len(lcas) != 1:
                return False, (x, y, f"no unique lca: {list(lcas)}")
            lab = net.labels.get(lcas[0])
            if lab is None:
                return False, (x, y, f"lca {lcas[0]!r} unlabeled")
            want = s.sigma(x, y)
            if lab != want:
                return False, (x, y, f"expected {want!r}, network says {lab!r}")
    return True, None


def dense_lca_network(s: Strudigram) -> Network:
    """Phylogenetic lca-network on X from all pairs plus X itself.

    Has exactly 1 + |X| + |X|(|X|-1)/2 vertices once |X| >= 3; every pair
    gets a private lca carrying its label.  The root label defaults to the
    smallest alphabet label and never serves as a pairwise lca for
    |X| >= 3, so the choice is observationally irrelevant.
    """
    verts = s.vertices
    family = {frozenset([v]) for v in verts}
    family.add(frozenset(verts))
    for (x, y), _ in s.pairs():
        family.add(frozenset((x, y)))
    net = ClusteringSystem(verts, family).hasse()
    labels: dict[str, str] = {}
    root_id = module_id(verts)
    if len(verts) >= 2:
        labels[root_id] = s.alphabet[0]
        for (x, y), lab in s.pairs():
            labels[module_id((x, y))] = lab
    return net.with_labels(labels)


def restrict_explanation(net: Network, W: Iterable[str]) -> Network:
    """Explanation of the induced substrudigram on W, from an lca-network.

    The restricted clustering system keeps the trace of every cluster on
    W; each inner vertex of its cover digraph is labeled by the label of
    the lca (in the source network) of its cluster.  Raises NotLcaNetwork
    when the source network cannot support the construction.
    """
    keep = {str(w) for w in W}
    if not keep:
        raise EmptySubset("cannot restrict to the empty set")
    names = set(net.leaf_name.values())
    if not keep <= names:
        raise NotASubset(f"{sorted(keep - names)} are not leaf names")

    source = derive_strudigram(net)  # validates the 2-lca property
    cs = net.clusters()
    if not cs.is_closed():
        raise NotLcaNetwork("clustering system is not closed")
    traces = {c & keep for c in cs.sets}
    traces.discard(frozenset())
    restricted = ClusteringSystem(sorted(keep), traces)
    out = restricted.hasse()

    labels: dict[str, str] = {}
    for v in out.inner_vertices:
        cluster = out.cluster(v)
        lcas = net.lca_set(sorted(cluster))
        if len(lcas) != 1:
            raise NotLcaNetwork(f"lca of {sorted(cluster)} is not unique in the source")
        lab = net.labels.get(lcas[0])
        if lab is None:
            raise UnlabeledInnerVertex(f"vertex {lcas[0]!r} has no label")
        labels[v] = lab
    out = out.with_labels(labels)

    ok, witness = verify_explains(out, source.induced(keep))
    if not ok:
        raise NotLcaNetwork(f"restriction failed to explain the substrudigram: {witness}")
    return out


def discriminating_tree(s: Strudigram) -> Optional[Network]:
    """The labeled tree explaining S, when one exists.

    Present exactly when the decomposition tree carries no prime label; in
    that case the tree is the decomposition tree itself, which is
    discriminating by construction.
    """
    mdt = build_mdt(s)
    if mdt.has_prime():
        return None
    return mdt.network
