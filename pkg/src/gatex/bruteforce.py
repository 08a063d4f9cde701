"""Small brute-force oracles, kept deliberately independent of the main
algorithms: plain subset/permutation scans with no shared logic.

Used by the fuzz harness's --oracle mode and heavily by the test suite.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Optional

from .errors import TooLarge
from .network import Network
from .strudigram import Strudigram


def scan_p4(s: Strudigram) -> Optional[tuple[str, str, str, str]]:
    """First induced path pattern by plain enumeration of ordered 4-tuples."""
    verts = s.vertices
    for quad in permutations(verts, 4):
        a, b, c, d = quad
        k = s.sigma(a, b)
        if (
            s.sigma(b, c) == k
            and s.sigma(c, d) == k
            and s.sigma(a, c) != k
            and s.sigma(a, d) != k
            and s.sigma(b, d) != k
        ):
            return quad
    return None


def scan_rainbow(s: Strudigram) -> Optional[tuple[str, str, str]]:
    """First rainbow triangle by plain enumeration of sorted triples."""
    for tri in combinations(s.vertices, 3):
        a, b, c = tri
        if len({s.sigma(a, b), s.sigma(a, c), s.sigma(b, c)}) == 3:
            return tri
    return None


def exhaustive_global_lca(net: Network, limit: int = 18) -> bool:
    """Check |LCA(A)| == 1 for every non-empty vertex subset, by enumeration."""
    n = len(net.vertices)
    if n > limit:
        raise TooLarge(f"subset enumeration guarded to {limit} vertices, got {n}")
    masks = net._ancestor_masks()
    order = [masks[v] for v in net.vertices]
    seen: dict[int, bool] = {}

    def unique_min(common: int) -> bool:
        cached = seen.get(common)
        if cached is not None:
            return cached
        nonmin = 0
        m = common
        while m:
            low = m & -m
            v = net.vertices[low.bit_length() - 1]
            nonmin |= masks[v] & ~low
            m ^= low
        ok = (common & ~nonmin).bit_count() == 1
        seen[common] = ok
        return ok

    full = (1 << n) - 1

    def rec(i: int, common: int) -> bool:
        if i == n:
            return common == full or unique_min(common)
        # either skip vertex i or include it
        if not rec(i + 1, common):
            return False
        return rec(i + 1, common & order[i])

    # "common == full" flags the empty selection, which is skipped
    return rec(0, full)
