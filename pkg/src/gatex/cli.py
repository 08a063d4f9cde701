"""Command-line surface: decomposition, recognition, verification, batch fuzzing.

Exit codes: 0 accept/success, 1 reject (valid input, negative answer),
2 input error.  All commands are deterministic for fixed inputs and seeds;
fuzz reports are ordered by instance id regardless of --jobs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

from . import bruteforce
from .errors import GatexError
from .explain import (
    dense_lca_network,
    derive_strudigram,
    discriminating_tree,
    restrict_explanation,
    verify_explains,
)
from .generators import (
    gen_polar_cat_network,
    gen_random_galled_tree,
    gen_random_strudigram,
)
from .moddec import build_mdt
from .network import (
    ClusteringSystem,
    Network,
    network_from_json_dict,
    network_to_json_dict,
    to_dot,
    to_extended_newick,
)
from .recognition import recognize_gatex
from .strudigram import Strudigram, from_json_dict, to_json_dict


@dataclass
class RunReport:
    """One fuzz instance: outcome plus a machine-checkable reason on reject."""

    instance: int
    command: str
    outcome: str  # accept | reject | error
    detail: Optional[str]
    wall_time_s: float
    seed: int

    def line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_strudigram(path: str) -> Strudigram:
    return from_json_dict(_load(path))


def _load_network(path: str) -> Network:
    return network_from_json_dict(_load(path))


def _emit_network(net: Network, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(network_to_json_dict(net), sort_keys=True, indent=2) + "\n")
    elif fmt == "newick":
        out.write(to_extended_newick(net) + "\n")
    elif fmt == "dot":
        out.write(to_dot(net))
    else:
        raise GatexError(f"unknown format {fmt!r}")


def cmd_mdt(args) -> int:
    s = _load_strudigram(args.input)
    mdt = build_mdt(s)
    print(json.dumps(mdt.to_json_dict(), sort_keys=True, indent=2))
    return 0


def cmd_check(args) -> int:
    s = _load_strudigram(args.input)
    tree = discriminating_tree(s)
    if tree is not None:
        print("TREE")
        net = tree
    else:
        net = recognize_gatex(s)
        if net is not None:
            print("GATEX")
        else:
            print("NEITHER")
            return 1
    if args.network:
        with open(args.network, "w", encoding="utf-8") as fh:
            _emit_network(net, args.format, fh)
    return 0


def cmd_verify(args) -> int:
    net = _load_network(args.network)
    s = _load_strudigram(args.strudigram)
    ok, witness = verify_explains(net, s)
    if ok:
        print("ok")
        return 0
    x, y, reason = witness
    print(f"counterexample pair ({x}, {y}): {reason}")
    return 1


def cmd_explain(args) -> int:
    s = _load_strudigram(args.input)
    if args.kind == "dense":
        net = dense_lca_network(s)
    else:
        net = recognize_gatex(s)
        if net is None:
            print("not galled-tree explainable", file=sys.stderr)
            return 1
    _emit_network(net, args.format)
    return 0


def cmd_restrict(args) -> int:
    net = _load_network(args.network)
    subset = [w for w in args.subset.split(",") if w]
    out = restrict_explanation(net, subset)
    _emit_network(out, args.format)
    return 0


def cmd_props(args) -> int:
    data = _load(args.input)
    if "edges" in data:
        cs = network_from_json_dict(data).clusters()
    elif "clusters" in data:
        cs = ClusteringSystem(data["ground"], data["clusters"])
    else:
        return _fail("expected a network JSON or {'ground':..., 'clusters':...}")
    print(json.dumps(cs.properties(), sort_keys=True, indent=2))
    return 0


def cmd_gen(args) -> int:
    if args.what == "strudigram":
        s = gen_random_strudigram(args.n, args.labels, args.seed)
        print(json.dumps(to_json_dict(s), sort_keys=True, indent=2))
    else:
        if args.what == "galled-tree":
            net = gen_random_galled_tree(args.n, args.labels, args.seed)
        else:
            net = gen_polar_cat_network(args.n, args.labels, args.seed)
        _emit_network(net, args.format)
    return 0


def _fuzz_instance(task) -> dict:
    index, seed, size, labels, corrupt, oracle = task
    start = time.perf_counter()
    report = dict(instance=index, command="fuzz", seed=seed, detail=None)
    try:
        net = gen_random_galled_tree(size, labels, seed)
        s = derive_strudigram(net)
        out = recognize_gatex(s)
        if out is None:
            report["outcome"] = "error"
            report["detail"] = "derived strudigram not recognized"
        else:
            ok, witness = verify_explains(out, s)
            back = derive_strudigram(out)
            if not ok or back != s:
                report["outcome"] = "error"
                report["detail"] = f"round trip mismatch: {witness}"
            elif len(out.vertices) > 4 * len(s) - 3 and len(s) >= 1:
                report["outcome"] = "error"
                report["detail"] = f"vertex bound exceeded: {len(out.vertices)}"
            else:
                report["outcome"] = "accept"
                if discriminating_tree(s) is not None:
                    report["detail"] = "TREE"
                else:
                    report["detail"] = "GATEX"
        if oracle and report["outcome"] == "accept" and len(s) <= 9:
            tree_possible = discriminating_tree(s) is not None
            patterns = bruteforce.scan_p4(s) or bruteforce.scan_rainbow(s)
            if tree_possible != (patterns is None):
                report["outcome"] = "error"
                report["detail"] = "oracle disagreement on tree explainability"
        if corrupt and report["outcome"] == "accept" and len(s) >= 2:
            rng = random.Random(seed ^ 0xC0FFEE)
            pairs = [p for p, _ in s.pairs()]
            x, y = pairs[rng.randrange(len(pairs))]
            old = s.sigma(x, y)
            others = [l for l in s.alphabet if l != old] or [old + "!"]
            sigma = {p: l for p, l in s.pairs()}
            sigma[(x, y)] = rng.choice(others)
            corrupted = Strudigram.from_map(s.vertices, sigma)
            ok, witness = verify_explains(out, corrupted)
            if ok or witness[:2] != (x, y):
                report["outcome"] = "error"
                report["detail"] = f"corruption not pinpointed: flipped {(x, y)}, got {witness}"
            else:
                report["outcome"] = "reject"
                report["detail"] = f"corruption detected at pair ({x}, {y})"
    except GatexError as exc:
        report["outcome"] = "error"
        report["detail"] = str(exc)
    report["wall_time_s"] = round(time.perf_counter() - start, 6)
    return report


def cmd_fuzz(args) -> int:
    tasks = [
        (i, args.seed + i, args.size, args.labels, args.corrupt, args.oracle)
        for i in range(args.count)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_fuzz_instance, tasks))
    else:
        results = [_fuzz_instance(t) for t in tasks]
    results.sort(key=lambda r: r["instance"])
    bad = 0
    expected = "reject" if args.corrupt else "accept"
    for r in results:
        print(RunReport(**{k: r.get(k) for k in
                           ("instance", "command", "outcome", "detail", "wall_time_s", "seed")}).line())
    for r in results:
        if r["outcome"] != expected:
            bad += 1
    print(
        f"# {len(results)} instances, {sum(r['outcome'] == expected for r in results)} "
        f"{expected}, {bad} unexpected",
        file=sys.stderr,
    )
    return 0 if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gatex", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("mdt", help="print the modular decomposition tree as JSON")
    p.add_argument("input")
    p.set_defaults(func=cmd_mdt)

    p = sub.add_parser("check", help="classify: TREE, GATEX, or NEITHER")
    p.add_argument("input")
    p.add_argument("--network", help="write the explaining network here when one exists")
    p.add_argument("--format", choices=["json", "newick", "dot"], default="json")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="check that a network explains a strudigram")
    p.add_argument("network")
    p.add_argument("strudigram")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explain", help="emit an explaining network")
    p.add_argument("input")
    p.add_argument("--kind", choices=["dense", "galled"], default="dense")
    p.add_argument("--format", choices=["json", "newick", "dot"], default="json")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("restrict", help="restrict an lca-network explanation to a leaf subset")
    p.add_argument("network")
    p.add_argument("--subset", required=True, help="comma-separated leaf names")
    p.add_argument("--format", choices=["json", "newick", "dot"], default="json")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("props", help="clustering-system predicate report")
    p.add_argument("input")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("gen", help="generate random instances")
    p.add_argument("what", choices=["strudigram", "galled-tree", "polar-cat"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--labels", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "newick", "dot"], default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fuzz", help="generate, derive, recognize, re-verify")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--size", type=int, default=10)
    p.add_argument("--labels", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="enable brute-force cross-checks")
    p.add_argument("--corrupt", action="store_true", help="flip one pair and expect detection")
    p.set_defaults(func=cmd_fuzz)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except GatexError as exc:
        return _fail(str(exc))
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except json.JSONDecodeError as exc:
        return _fail(f"malformed JSON: {exc}")


if __name__ == "__main__":
    sys.exit(main())
