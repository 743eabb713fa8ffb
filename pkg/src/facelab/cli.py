"""Command-line front end with stable machine-readable JSON output.

Every invocation prints one JSON envelope {command, inputs, output, status}
on stdout; errors replace output with a one-line diagnostic.  Identical
invocations produce byte-identical output.  Exit codes: 0 success (and, for
verify-theorem / --verify, the certified outcome), 1 a certification or
verification failure, 2 malformed input or a violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .generators import FAMILIES, GeneratorError, GeneratorSpec, generate
from .geometry import GeometryError, Hyperplane, format_rational
from .hypergraph import (
    HypergraphError,
    build_hypergraph,
    default_workers,
    strong_connectivity,
)
from .polytope import (
    PolytopeError,
    VPolytope,
    face_lattice,
    load_polytope,
    parse_face_id,
    polar_dual,
    save_polytope,
)
from .ridgepath import BlockedSet, RidgePathError, solve_ridge_path
from .section import SectionError, parse_hyperplane, section


class CliError(ValueError):
    """Bad command line."""


_HANDLED_ERRORS = (
    CliError,
    GeometryError,
    PolytopeError,
    SectionError,
    HypergraphError,
    RidgePathError,
    GeneratorError,
    OSError,
)

_INPUT_KEY_RENAMES = {"from_id": "from", "to_id": "to"}
_INPUT_SKIP_KEYS = ("handler", "command_name", "pretty")


@dataclass
class CommandResult:
    command: str | None
    inputs: dict
    output: dict | None
    status: str
    error: str | None = None
    exit_code: int = 0
    pretty: bool = field(default=False, repr=False)

    def to_json_dict(self) -> dict:
        if self.status == "ok":
            return {
                "command": self.command,
                "inputs": self.inputs,
                "output": self.output,
                "status": self.status,
            }
        return {
            "command": self.command,
            "inputs": self.inputs,
            "status": self.status,
            "error": self.error,
        }

    def render(self) -> str:
        if self.pretty:
            return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise CliError(message)


def _hyperplane_json(h: Hyperplane) -> dict:
    return {
        "normal": [format_rational(a) for a in h.normal.coords],
        "offset": format_rational(h.offset),
    }


def _vertices_json(p: VPolytope) -> list[list[str]]:
    return [[format_rational(x) for x in v.coords] for v in p.vertices]


def _load_with_lattice(path: str):
    p = load_polytope(path)
    return p, face_lattice(p)


def _cmd_gen(ns) -> tuple[dict, int]:
    spec = GeneratorSpec(family=ns.family, dim=ns.dim, n=ns.n, seed=ns.seed, bound=ns.bound)
    p = generate(spec)
    save_polytope(p, ns.out)
    return {
        "file": ns.out,
        "family": ns.family,
        "dim": p.ambient_dim,
        "n_vertices": p.n_vertices,
    }, 0


def _cmd_lattice(ns) -> tuple[dict, int]:
    _, lattice = _load_with_lattice(ns.file)
    return lattice.to_json_dict(), 0


def _cmd_hypergraph(ns) -> tuple[dict, int]:
    _, lattice = _load_with_lattice(ns.file)
    hg = build_hypergraph(lattice, ns.k)
    return {
        "k": hg.k,
        "nodes": list(hg.nodes),
        "hyperedges": [
            {"id": eid, "nodes": sorted(members, key=parse_face_id)}
            for eid, members in hg.hyperedges
        ],
    }, 0


def _cmd_connectivity(ns) -> tuple[dict, int]:
    _, lattice = _load_with_lattice(ns.file)
    hg = build_hypergraph(lattice, ns.k)
    cap = ns.cap if ns.cap is not None else lattice.dim - ns.k
    report = strong_connectivity(hg, cap, workers=default_workers())
    payload = report.to_json_dict()
    payload["cap"] = cap
    if not ns.witness:
        payload["witness"] = None
    return payload, 0


def _cmd_ridge_path(ns) -> tuple[dict, int]:
    p, lattice = _load_with_lattice(ns.file)
    blocked_ids = [token for token in ns.blocked.split(",") if token]
    b = BlockedSet.of(ns.k, blocked_ids)
    result = solve_ridge_path(
        p, lattice, ns.k, b, ns.from_id, ns.to_id, seed=ns.seed, verify=ns.verify
    )
    payload = {
        "path": list(result.path.faces),
        "ridges": list(result.path.ridges),
        "verified": result.verified,
        "depth": result.depth,
        "hyperplanes": [_hyperplane_json(h) for h in result.hyperplanes],
    }
    code = 1 if result.verified is False else 0
    return payload, code


def _cmd_dual(ns) -> tuple[dict, int]:
    p = load_polytope(ns.file)
    dual = polar_dual(p)
    if ns.out:
        save_polytope(dual, ns.out)
    return {
        "dim": dual.ambient_dim,
        "n_vertices": dual.n_vertices,
        "vertices": _vertices_json(dual),
        "file": ns.out,
    }, 0


def _cmd_section(ns) -> tuple[dict, int]:
    p, lattice = _load_with_lattice(ns.file)
    h = parse_hyperplane(ns.plane)
    smap = section(p, lattice, h)
    phi_pairs = sorted(smap.to_slice.items(), key=lambda kv: parse_face_id(kv[0]))
    return {
        "plane": _hyperplane_json(smap.plane),
        "slice": {
            "dim": smap.slice_lattice.dim,
            "n_vertices": smap.slice_polytope.n_vertices,
            "vertices": _vertices_json(smap.slice_polytope),
            "f_vector": list(smap.slice_lattice.f_vector),
        },
        "phi": [[base, sliced] for base, sliced in phi_pairs],
    }, 0


def _cmd_verify_theorem(ns) -> tuple[dict, int]:
    _, lattice = _load_with_lattice(ns.file)
    d = lattice.dim
    ks = [ns.k] if ns.k is not None else list(range(d))
    workers = default_workers()
    results = []
    all_pass = True
    for k in ks:
        hg = build_hypergraph(lattice, k)
        bound = d - k
        cap = ns.cap_override if ns.cap_override is not None else bound
        report = strong_connectivity(hg, cap, workers=workers)
        ok = report.alpha >= bound
        all_pass = all_pass and ok
        results.append(
            {
                "k": k,
                "bound": bound,
                "cap": cap,
                "alpha": report.alpha,
                "capped": report.capped,
                "pass": ok,
            }
        )
    return {"dim": d, "results": results, "pass": all_pass}, 0 if all_pass else 1


def build_parser() -> _Parser:
    parser = _Parser(
        prog="facelab",
        description="Exact face lattices, face-hypergraph connectivity "
        "certificates, and ridge-path construction.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--pretty", action="store_true", help="indent the JSON output"
    )
    sub = parser.add_subparsers(dest="command_name", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="write a generated polytope file")
    gen.add_argument("--family", required=True, choices=FAMILIES)
    gen.add_argument("--dim", required=True, type=int)
    gen.add_argument("--n", type=int, default=None, help="vertex count (cyclic/random)")
    gen.add_argument("--seed", type=int, default=None, help="random family seed")
    gen.add_argument("--bound", type=int, default=None, help="random coordinate bound")
    gen.add_argument("--out", required=True, help="output polytope file")
    gen.set_defaults(handler=_cmd_gen)

    lattice = sub.add_parser("lattice", parents=[common], help="export the face lattice")
    lattice.add_argument("file")
    lattice.set_defaults(handler=_cmd_lattice)

    hypergraph = sub.add_parser(
        "hypergraph", parents=[common], help="export the k-face hypergraph"
    )
    hypergraph.add_argument("file")
    hypergraph.add_argument("--k", required=True, type=int)
    hypergraph.set_defaults(handler=_cmd_hypergraph)

    connectivity = sub.add_parser(
        "connectivity", parents=[common], help="certify strong connectivity exhaustively"
    )
    connectivity.add_argument("file")
    connectivity.add_argument("--k", required=True, type=int)
    connectivity.add_argument("--cap", type=int, default=None, help="default: dim - k")
    connectivity.add_argument(
        "--witness", action="store_true", help="include a disconnection witness if found"
    )
    connectivity.set_defaults(handler=_cmd_connectivity)

    ridge = sub.add_parser(
        "ridge-path", parents=[common], help="construct a ridge path avoiding blocked faces"
    )
    ridge.add_argument("file")
    ridge.add_argument("--k", required=True, type=int)
    ridge.add_argument(
        "--blocked", default="", help="comma-separated blocked k-face ids (may be empty)"
    )
    ridge.add_argument("--from", dest="from_id", required=True, metavar="FROM")
    ridge.add_argument("--to", dest="to_id", required=True, metavar="TO")
    ridge.add_argument("--seed", type=int, default=0)
    ridge.add_argument(
        "--verify", action="store_true", help="re-check the path against the lattice"
    )
    ridge.set_defaults(handler=_cmd_ridge_path)

    dual = sub.add_parser("dual", parents=[common], help="compute the polar dual")
    dual.add_argument("file")
    dual.add_argument("--out", default=None, help="also write the dual as a polytope file")
    dual.set_defaults(handler=_cmd_dual)

    section_cmd = sub.add_parser(
        "section", parents=[common], help="slice by a hyperplane missing all vertices"
    )
    section_cmd.add_argument("file")
    section_cmd.add_argument(
        "--plane", required=True, help="hyperplane as 'a1,...,ad;c' with rational entries"
    )
    section_cmd.set_defaults(handler=_cmd_section)

    verify = sub.add_parser(
        "verify-theorem",
        parents=[common],
        help="certify the (dim - k)-connectivity bound for each requested k",
    )
    verify.add_argument("file")
    group = verify.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, default=None)
    group.add_argument(
        "--all-k", action="store_true", help="all k from 0 to dim-1 (the default)"
    )
    verify.add_argument(
        "--cap-override", type=int, default=None, help="search cap instead of dim - k"
    )
    verify.set_defaults(handler=_cmd_verify_theorem)

    return parser


def run(argv: list[str]) -> CommandResult:
    """Parse and execute one invocation; never raises on bad input."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except CliError as exc:
        command = argv[0] if argv and not argv[0].startswith("-") else None
        return CommandResult(
            command=command,
            inputs={"argv": list(argv)},
            output=None,
            status="error",
            error=str(exc),
            exit_code=2,
        )
    inputs = {
        _INPUT_KEY_RENAMES.get(key, key): value
        for key, value in vars(ns).items()
        if key not in _INPUT_SKIP_KEYS
    }
    try:
        output, code = ns.handler(ns)
    except _HANDLED_ERRORS as exc:
        return CommandResult(
            command=ns.command_name,
            inputs=inputs,
            output=None,
            status="error",
            error=str(exc),
            exit_code=2,
            pretty=ns.pretty,
        )
    return CommandResult(
        command=ns.command_name,
        inputs=inputs,
        output=output,
        status="ok",
        exit_code=code,
        pretty=ns.pretty,
    )


def main(argv: list[str] | None = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    print(result.render())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
