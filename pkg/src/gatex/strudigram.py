"""Strudigrams: finite vertex sets with a label on every unordered vertex pair.

A strudigram bundles an ordered vertex set X, a label alphabet, and a total
symmetric map assigning one alphabet label to each 2-element subset of X.
Vertices are arbitrary strings ordered lexicographically; all "smallest
witness" guarantees refer to that order.  Labels are interned to dense
integer ids internally; the public API speaks label strings.
"""

from __future__ import annotations

import json

from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    BlockNotAModule,
    ConflictingPair,
    DuplicateVertex,
    EmptySubset,
    EmptyVertexSet,
    MissingPair,
    NotAPartition,
    ReservedLabel,
    SelfPair,
    UnknownLabel,
    UnknownVertex,
    VertexCollision,
)

#: Sentinel reserved for inner vertices of decomposition trees that cannot be
#: assigned an alphabet label.  Serialized verbatim; user alphabets must not
#: contain it.
PRIME = "__PRIME__"


def _tri_index(i: int, j: int) -> int:
    # index into the flat lower triangle, requires i < j
    return j * (j - 1) // 2 + i


class Strudigram:
    """Immutable strudigram over string vertices and string labels.

    Do not mutate the underlying arrays; instances may be shared freely
    across threads.
    """

    __slots__ = ("vertices", "alphabet", "_rank", "_label_id", "_tri", "_matrix")

    def __init__(self, vertices: Sequence[str], alphabet: Sequence[str], tri: np.ndarray):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.alphabet: tuple[str, ...] = tuple(alphabet)
        self._rank = {v: i for i, v in enumerate(self.vertices)}
        self._label_id = {a: i for i, a in enumerate(self.alphabet)}
        self._tri = tri
        self._tri.setflags(write=False)
        self._matrix: Optional[np.ndarray] = None

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_map(
        cls,
        vertices: Iterable[str],
        sigma: Mapping[tuple[str, str], str] | Mapping[frozenset, str],
        alphabet: Optional[Iterable[str]] = None,
        default_label: Optional[str] = None,
    ) -> "Strudigram":
        """Build and validate a strudigram from a pair-to-label mapping."""
        verts = [str(v) for v in vertices]
        if not verts:
            raise EmptyVertexSet("a strudigram needs at least one vertex")
        if len(set(verts)) != len(verts):
            dup = sorted({v for v in verts if verts.count(v) > 1})
            raise DuplicateVertex(f"duplicate vertex identifiers: {dup}")
        verts = sorted(verts)
        rank = {v: i for i, v in enumerate(verts)}

        entries: dict[tuple[int, int], str] = {}
        for key, label in sigma.items():
            x, y = tuple(key)
            if x not in rank or y not in rank:
                raise UnknownVertex(f"pair ({x!r}, {y!r}) mentions an unknown vertex")
            if x == y:
                raise SelfPair(x)
            i, j = sorted((rank[x], rank[y]))
            prev = entries.get((i, j))
            if prev is not None and prev != str(label):
                raise ConflictingPair(
                    f"pair ({verts[i]!r}, {verts[j]!r}) labeled both {prev!r} and {label!r}"
                )
            entries[(i, j)] = str(label)

        used = set(entries.values())
        if default_label is not None:
            used.add(str(default_label))
        if alphabet is None:
            alpha = sorted(used)
        else:
            alpha = sorted({str(a) for a in alphabet})
            missing = used - set(alpha)
            if missing:
                raise UnknownLabel(f"labels outside the alphabet: {sorted(missing)}")
        if PRIME in alpha:
            raise ReservedLabel(f"{PRIME!r} is reserved and cannot be an alphabet label")

        n = len(verts)
        label_id = {a: k for k, a in enumerate(alpha)}
        tri = np.full(n * (n - 1) // 2, -1, dtype=np.int32)
        for (i, j), label in entries.items():
            tri[_tri_index(i, j)] = label_id[label]
        if default_label is not None:
            tri[tri < 0] = label_id[str(default_label)]
        elif n > 1 and (tri < 0).any():
            k = int(np.flatnonzero(tri < 0)[0])
            # invert the triangular index to name the offending pair
            j = 1
            while _tri_index(0, j + 1) <= k:
                j += 1
            i = k - _tri_index(0, j)
            raise MissingPair(f"pair ({verts[i]!r}, {verts[j]!r}) has no label")
        return cls(verts, alpha, tri)

    @classmethod
    def monochromatic(cls, vertices: Iterable[str], label: str) -> "Strudigram":
        """All pairs carry the same label."""
        return cls.from_map(vertices, {}, alphabet=[label], default_label=label)

    # -- basic queries ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Strudigram):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.alphabet == other.alphabet
            and np.array_equal(self._tri, other._tri)
        )

    def __hash__(self):
        return hash((self.vertices, self.alphabet, self._tri.tobytes()))

    def __repr__(self):
        return f"Strudigram({len(self.vertices)} vertices, {len(self.alphabet)} labels)"

    def rank(self, v: str) -> int:
        try:
            return self._rank[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def sigma(self, x: str, y: str) -> str:
        """Label of the unordered pair {x, y}."""
        i, j = self.rank(x), self.rank(y)
        if i == j:
            raise SelfPair(x)
        if i > j:
            i, j = j, i
        return self.alphabet[self._tri[_tri_index(i, j)]]

    def pairs(self):
        """Yield ((x, y), label) for every unordered pair, in vertex order."""
        verts = self.vertices
        for j in range(1, len(verts)):
            for i in range(j):
                yield (verts[i], verts[j]), self.alphabet[self._tri[_tri_index(i, j)]]

    def matrix(self) -> np.ndarray:
        """Square label-id matrix; diagonal holds -1.  Cached, read-only."""
        if self._matrix is None:
            n = len(self.vertices)
            m = np.full((n, n), -1, dtype=np.int32)
            if n > 1:
                iu = np.triu_indices(n, k=1)
                # triu_indices orders pairs row-major; map to triangular layout
                flat = np.array([_tri_index(i, j) for i, j in zip(*iu)])
                m[iu] = self._tri[flat]
                m[(iu[1], iu[0])] = m[iu]
            m.setflags(write=False)
            self._matrix = m
        return self._matrix

    def label_name(self, label_id: int) -> str:
        return self.alphabet[label_id]

    # -- constructions ----------------------------------------------------------

    def induced(self, W: Iterable[str]) -> "Strudigram":
        """Substrudigram on W; alphabet unchanged, labels restricted."""
        sub = sorted(set(W))
        if not sub:
            raise EmptySubset("cannot induce on the empty set")
        ranks = [self.rank(v) for v in sub]
        if len(sub) == len(self.vertices):
            return self
        return self._from_ranks(sub, ranks)

    def _from_ranks(self, names: Sequence[str], ranks: Sequence[int]) -> "Strudigram":
        m = len(names)
        tri = np.empty(m * (m - 1) // 2, dtype=np.int32)
        mat = self.matrix()
        for j in range(1, m):
            for i in range(j):
                tri[_tri_index(i, j)] = mat[ranks[i], ranks[j]]
        return Strudigram(tuple(names), self.alphabet, tri)

    def minus(self, v: str) -> "Strudigram":
        """Remove one vertex (|X| must stay positive)."""
        rest = [u for u in self.vertices if u != v]
        if len(rest) == len(self.vertices):
            raise UnknownVertex(f"unknown vertex {v!r}")
        return self.induced(rest)

    def relabel_vertices(self, mapping: Mapping[str, str]) -> "Strudigram":
        """Rename vertices via a bijection; sigma carried along."""
        new = {}
        for (x, y), lab in self.pairs():
            new[(mapping[x], mapping[y])] = lab
        names = [mapping[v] for v in self.vertices]
        return Strudigram.from_map(names, new, alphabet=self.alphabet)


# -- module-level operations ----------------------------------------------------


def k_join(s1: Strudigram, s2: Strudigram, k: str) -> Strudigram:
    """Union strudigram with every cross pair labeled k."""
    common = set(s1.vertices) & set(s2.vertices)
    if common:
        raise VertexCollision(f"operands share vertices: {sorted(common)}")
    sigma: dict[tuple[str, str], str] = {}
    for (x, y), lab in s1.pairs():
        sigma[(x, y)] = lab
    for (x, y), lab in s2.pairs():
        sigma[(x, y)] = lab
    for x in s1.vertices:
        for y in s2.vertices:
            sigma[(x, y)] = k
    alpha = set(s1.alphabet) | set(s2.alphabet) | {k}
    return Strudigram.from_map(
        list(s1.vertices) + list(s2.vertices), sigma, alphabet=sorted(alpha)
    )


def find_rainbow_triangle(s: Strudigram) -> Optional[tuple[str, str, str]]:
    """Lexicographically smallest triple with three pairwise distinct labels."""
    n = len(s)
    if n < 3:
        return None
    mat = s.matrix()
    for i in range(n - 2):
        row_i = mat[i]
        for j in range(i + 1, n - 1):
            a = mat[i, j]
            ls = np.arange(j + 1, n)
            hit = (mat[j, ls] != a) & (row_i[ls] != a) & (row_i[ls] != mat[j, ls])
            if hit.any():
                l = int(ls[hit][0])
                return (s.vertices[i], s.vertices[j], s.vertices[l])
    return None


def find_p4(s: Strudigram) -> Optional[tuple[str, str, str, str]]:
    """Smallest witness (a,b,c,d) with sigma(ab)=sigma(bc)=sigma(cd)=k and
    k absent from the three non-path pairs.

    The first tuple found in lexicographic enumeration over ordered
    4-tuples is returned; since each witness also appears reversed, this is
    the minimum over both orientations.
    """
    n = len(s)
    if n < 4:
        return None
    mat = s.matrix()
    idx = np.arange(n)
    for a in range(n):
        row_a = mat[a]
        for b in range(n):
            if b == a:
                continue
            k = mat[a, b]
            row_b = mat[b]
            cs = idx[(row_b == k) & (row_a != k) & (idx != a)]
            for c in cs:
                row_c = mat[c]
                ok = (row_c == k) & (row_a != k) & (row_b != k)
                ok[[a, b, c]] = False
                ds = idx[ok]
                if ds.size:
                    d = int(ds[0])
                    return (
                        s.vertices[a],
                        s.vertices[b],
                        s.vertices[int(c)],
                        s.vertices[d],
                    )
    return None


def cr_isomorphic(s1: Strudigram, s2: Strudigram):
    """Exact color-preserving isomorphism test.

    Returns (True, mapping) with a witness bijection, or (False, None).
    Intended for small instances (|X| <= 12); prunes by per-label degree
    signatures before branching.
    """
    if len(s1) != len(s2):
        return False, None
    n = len(s1)
    if n == 1:
        return True, {s1.vertices[0]: s2.vertices[0]}
    m1, m2 = s1.matrix(), s2.matrix()

    # compare label usage as multisets via label names
    def signature(s: Strudigram, mat):
        sigs = []
        for i in range(len(s)):
            row = [s.alphabet[mat[i, j]] for j in range(len(s)) if j != i]
            counts = {}
            for lab in row:
                counts[lab] = counts.get(lab, 0) + 1
            sigs.append(tuple(sorted(counts.items())))
        return sigs

    sig1, sig2 = signature(s1, m1), signature(s2, m2)
    if sorted(sig1) != sorted(sig2):
        return False, None

    candidates = [
        [j for j in range(n) if sig2[j] == sig1[i]] for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    assignment: dict[int, int] = {}
    used = set()

    def compatible(i, j):
        for i2, j2 in assignment.items():
            if s1.alphabet[m1[i, i2]] != s2.alphabet[m2[j, j2]]:
                return False
        return True

    def backtrack(pos):
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[i]:
            if j in used or not compatible(i, j):
                continue
            assignment[i] = j
            used.add(j)
            if backtrack(pos + 1):
                return True
            del assignment[i]
            used.discard(j)
        return False

    if backtrack(0):
        mapping = {s1.vertices[i]: s2.vertices[j] for i, j in assignment.items()}
        return True, mapping
    return False, None


def quotient(s: Strudigram, blocks: Iterable[Iterable[str]]) -> Strudigram:
    """Quotient of S[M] by a partition of M into modules.

    M is the union of the blocks.  Each block must be a module of S[M] and
    the blocks must be disjoint.  The result lives on one representative
    (the smallest vertex) per block, renamed to the block identifier, and
    is cr-isomorphic to S[M] modulo the partition.
    """
    from .moddec import is_module, module_id  # local import to avoid a cycle

    blocks = [frozenset(b) for b in blocks]
    if not blocks or any(not b for b in blocks):
        raise NotAPartition("blocks must be non-empty")
    merged: set[str] = set()
    total = 0
    for b in blocks:
        total += len(b)
        merged |= b
    if total != len(merged):
        raise NotAPartition("blocks are not disjoint")
    sub = s.induced(merged)
    for b in blocks:
        if not is_module(sub, b):
            raise BlockNotAModule(f"block {sorted(b)} is not a module of S[M]")
    reps = {min(b): module_id(b) for b in blocks}
    picked = s.induced(reps.keys())
    return picked.relabel_vertices(reps)


# -- canonical JSON format --------------------------------------------------------


def to_json_dict(s: Strudigram) -> dict:
    return {
        "vertices": list(s.vertices),
        "alphabet": list(s.alphabet),
        "pairs": [[x, y, lab] for (x, y), lab in s.pairs()],
    }


def from_json_dict(data: dict) -> Strudigram:
    """Validate the canonical JSON strudigram format."""
    if not isinstance(data, dict) or "vertices" not in data:
        raise MissingPair("strudigram JSON needs a 'vertices' array")
    sigma = {}
    for entry in data.get("pairs", []):
        if len(entry) != 3:
            raise ConflictingPair(f"pair entry must be [x, y, label], got {entry!r}")
        x, y, lab = entry
        key = (str(x), str(y))
        if key in sigma and sigma[key] != str(lab):
            raise ConflictingPair(f"pair {key} labeled both {sigma[key]!r} and {lab!r}")
        prev = sigma.get((key[1], key[0]))
        if prev is not None and prev != str(lab):
            raise ConflictingPair(f"pair {key} labeled both {prev!r} and {lab!r}")
        sigma[key] = str(lab)
    return Strudigram.from_map(
        data["vertices"],
        sigma,
        alphabet=data.get("alphabet"),
        default_label=data.get("default_label"),
    )


def loads(text: str) -> Strudigram:
    return from_json_dict(json.loads(text))


def dumps(s: Strudigram, indent: Optional[int] = None) -> str:
    return json.dumps(to_json_dict(s), indent=indent, sort_keys=True)


validate = from_json_dict
