"""Command-line surface: analysis commands, output rendering, and the lattice cache.

Every output is deterministic across runs: canonical orderings everywhere,
spectra rendered at 12 significant digits, JSON dumped with sorted keys.

Exit codes: 2 for input errors, 1 when `verify` finds an internal identity
failure (published-value discrepancy notes are informational only), 0
otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cache import cache_lookup, cache_store, signature_of
from .catalog import CATALOG_NAMES, GroupSpec, parse_group_spec, psl2, recognize_projective
from .closed_forms import census_comparison, dickson_census, f2_pgl_closed, f2_psl_closed
from .degrees import (
    f2_direct,
    f2_mobius,
    f2_split_adjacency,
    f2_split_laplacian,
    sd_direct,
    sd_spectral,
    sd_via_f2,
    verify_identities,
)
from .errors import DomainError, InputError, LatspecError, SizeError
from .graph import adjacency_matrix, build_graph, dot_export, laplacian_matrix, vertex_label
from .lattice import SubgroupLattice, enumerate_subgroups, hughes_subgroup
from .perm import format_generators
from .spectral import eigenvalues_symmetric

NOT_APPLICABLE = "not applicable (the split formula requires sd(G) != 1)"


def _fixed(value: float) -> float:
    return float(f"{value:.12g}")


class Pipeline:
    """Computes and caches the per-group artifact sections.

    `structure` holds the lattice dump, graph, and spectra; `report` holds the
    identity-verifier output. A cache entry always carries every section
    computed so far; writes are atomic.
    """

    def __init__(self, spec: GroupSpec, tol: float, cache_dir: str | None) -> None:
        self.spec = spec
        self.group = spec.group
        self.tol = tol
        self.cache_dir = cache_dir
        self._sections = (cache_lookup(cache_dir, self.group) or {}) if cache_dir else {}
        self._lattice: SubgroupLattice | None = None

    def lattice(self) -> SubgroupLattice:
        if self._lattice is None:
            stored = self._sections.get("structure")
            if stored is not None:
                self._lattice = SubgroupLattice.from_member_lists(
                    self.group, [s["members"] for s in stored["lattice"]["subgroups"]]
                )
            else:
                self._lattice = enumerate_subgroups(self.group)
        return self._lattice

    def _store(self) -> None:
        if self.cache_dir:
            cache_store(self.cache_dir, self.group, self._sections)

    def structure(self) -> dict:
        if "structure" not in self._sections:
            lattice = self.lattice()
            graph = build_graph(lattice)
            adj = eigenvalues_symmetric(adjacency_matrix(graph), self.tol)
            lap = eigenvalues_symmetric(laplacian_matrix(graph), self.tol)
            self._sections["structure"] = {
                "signature": signature_of(self.group),
                "generators": format_generators(self.group.generators),
                "lattice": lattice.to_json_dict(),
                "graph": graph.to_json_dict(),
                "spectra": {
                    "adjacency": [_fixed(v) for v in adj.values],
                    "laplacian": [_fixed(v) for v in lap.values],
                },
            }
            self._store()
        return self._sections["structure"]

    def report(self) -> dict:
        if "report" not in self._sections:
            self.structure()
            self._sections["report"] = verify_identities(self.lattice(), self.tol).to_json_dict()
            self._store()
        return self._sections["report"]


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _print_notes(spec: GroupSpec) -> None:
    for note in spec.notes:
        print(f"note: {note}")


# -- commands -----------------------------------------------------------------


def cmd_info(pipeline: Pipeline, args) -> int:
    group = pipeline.group
    pipeline.structure()
    lattice = pipeline.lattice()
    payload = {
        "name": pipeline.spec.name,
        "order": group.order,
        "degree": group.degree,
        "abelian": group.is_abelian(),
        "quasihamiltonian": lattice.is_quasihamiltonian(),
        "lattice_size": lattice.size,
        "signature": signature_of(group),
        "notes": list(pipeline.spec.notes),
    }
    if args.json:
        _print_json(payload)
        return 0
    _print_notes(pipeline.spec)
    print(f"group            {payload['name']}")
    print(f"order            {payload['order']}")
    print(f"degree           {payload['degree']}")
    print(f"abelian          {'yes' if payload['abelian'] else 'no'}")
    print(f"quasihamiltonian {'yes' if payload['quasihamiltonian'] else 'no'}")
    print(f"subgroups        {payload['lattice_size']}")
    return 0


def cmd_lattice(pipeline: Pipeline, args) -> int:
    structure = pipeline.structure()
    if args.json:
        _print_json(structure["lattice"])
        return 0
    _print_notes(pipeline.spec)
    lattice = pipeline.lattice()
    core = set(structure["lattice"]["core"])
    print(f"{lattice.size} subgroups of a group of order {pipeline.group.order}")
    for sub in lattice.subgroups:
        tag = " (core)" if sub.id in core else ""
        print(f"  #{sub.id:<3d} order {sub.order:<4d} {vertex_label(lattice, sub.id)}{tag}")
    return 0


def cmd_graph(pipeline: Pipeline, args) -> int:
    structure = pipeline.structure()
    if args.dot:
        text = dot_export(build_graph(pipeline.lattice()))
        if args.dot == "-":
            sys.stdout.write(text)
        else:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(f"wrote {args.dot}")
        return 0
    if args.matrix:
        graph = build_graph(pipeline.lattice())
        matrix = (adjacency_matrix if args.matrix == "adjacency" else laplacian_matrix)(graph)
        if args.json:
            _print_json({"matrix": args.matrix, "entries": matrix.to_lists()})
        else:
            print(matrix.to_csv())
        return 0
    if args.json:
        _print_json(structure["graph"])
        return 0
    _print_notes(pipeline.spec)
    g = structure["graph"]
    print(f"non-permutability graph: {len(g['vertices'])} vertices, {g['edge_count']} edges")
    for pair in g["edges"]:
        print(f"  {pair[0]} -- {pair[1]}")
    return 0


def cmd_spectrum(pipeline: Pipeline, args) -> int:
    structure = pipeline.structure()
    values = structure["spectra"][args.matrix]
    if args.csv:
        for v in values:
            print(f"{v:.12g}")
        return 0
    if args.json:
        _print_json({"matrix": args.matrix, "values": values})
        return 0
    _print_notes(pipeline.spec)
    print(f"{args.matrix} spectrum ({len(values)} values, ascending):")
    print("  " + ", ".join(f"{v:.12g}" for v in values))
    return 0


def cmd_mobius(pipeline: Pipeline, args) -> int:
    lattice = pipeline.lattice()
    upper = lattice.top_id if args.upper is None else args.upper
    if not 0 <= upper < lattice.size:
        raise InputError(f"no subgroup with id {upper} (lattice has {lattice.size})")
    rows = [
        {
            "id": sid,
            "order": lattice.subgroup(sid).order,
            "label": vertex_label(lattice, sid),
            "mobius": lattice.mobius(sid, upper),
        }
        for sid in lattice.down_ids(upper)
    ]
    if args.json:
        _print_json({"upper": upper, "values": rows})
        return 0
    _print_notes(pipeline.spec)
    print(f"mobius(X, #{upper}) over the {len(rows)} subgroups below #{upper}:")
    for row in rows:
        print(f"  #{row['id']:<3d} order {row['order']:<4d} {row['mobius']:>6d}  {row['label']}")
    return 0


def _sd_values(pipeline: Pipeline, method: str) -> dict[str, str]:
    lattice = pipeline.lattice()
    out: dict[str, str] = {}
    if method in ("direct", "all"):
        out["direct"] = str(sd_direct(lattice))
    if method in ("spectral", "all"):
        out["spectral"] = str(sd_spectral(lattice, build_graph(lattice)))
    if method in ("f2", "all"):
        out["via_f2"] = str(sd_via_f2(lattice))
    return out


def cmd_sd(pipeline: Pipeline, args) -> int:
    values = _sd_values(pipeline, args.method)
    if args.json:
        _print_json(values)
        return 0
    _print_notes(pipeline.spec)
    for name, value in values.items():
        print(f"sd[{name}] = {value}")
    return 0


def _closed_form_f2(pipeline: Pipeline) -> int | str:
    recognized = recognize_projective(pipeline.group)
    if recognized is None:
        return "not applicable (group is not a recognized PSL(2,q) or PGL(2,3))"
    family, q = recognized
    if family == "psl":
        return f2_psl_closed(q, pipeline.lattice().size)
    sub_size = enumerate_subgroups(psl2(q)).size
    return f2_pgl_closed(q, pipeline.lattice().size, sub_size)


def _f2_values(pipeline: Pipeline, method: str) -> dict:
    lattice = pipeline.lattice()
    out: dict = {}
    if method in ("direct", "all"):
        out["direct"] = f2_direct(lattice)
    if method in ("mobius", "all"):
        out["mobius"] = f2_mobius(lattice)
    for name, func in (("laplacian", f2_split_laplacian), ("adjacency", f2_split_adjacency)):
        if method in (name, "all"):
            try:
                out[name] = func(lattice)
            except DomainError:
                out[name] = NOT_APPLICABLE
    if method in ("closed-form", "all"):
        out["closed_form"] = _closed_form_f2(pipeline)
    return out


def cmd_f2(pipeline: Pipeline, args) -> int:
    values = _f2_values(pipeline, args.method)
    if args.json:
        _print_json(values)
        return 0
    _print_notes(pipeline.spec)
    for name, value in values.items():
        print(f"f2[{name}] = {value}")
    return 0


def cmd_hughes(pipeline: Pipeline, args) -> int:
    lattice = pipeline.lattice()
    sub = hughes_subgroup(lattice, args.p)
    payload = {
        "p": args.p,
        "id": sub.id,
        "order": sub.order,
        "label": vertex_label(lattice, sub.id),
        "members": list(sub.member_indices()),
    }
    if args.json:
        _print_json(payload)
        return 0
    _print_notes(pipeline.spec)
    print(f"Hughes subgroup for p={args.p}: #{sub.id}, order {sub.order}, "
          f"{payload['label']}")
    return 0


def cmd_census(args) -> int:
    q = args.q
    if q in (4, 5, 7):
        lattice = enumerate_subgroups(psl2(q))
        payload = census_comparison(lattice, q)
        payload["lattice_size"] = lattice.size
    else:
        payload = {
            "q": q,
            "entries": [e.to_json_dict() for e in dickson_census(q)],
            "note": f"PSL(2,{q}) is out of the enumeration budget; analytic counts only",
        }
    if args.json:
        _print_json(payload)
        return 0
    print(f"subgroup census of PSL(2,{q})"
          + (f" ({payload['lattice_size']} subgroups enumerated)" if "lattice_size" in payload else ""))
    for row in payload["entries"]:
        line = f"  {row['family']:<19s} {row['label']:<15s} count={row['count']}"
        if "brute_count" in row:
            line += f" brute={row['brute_count']}"
            if row["match"] is not None:
                line += f" match={'yes' if row['match'] else 'NO'}"
        if row.get("note"):
            line += f"  [{row['note']}]"
        print(line)
    for extra in payload.get("unmatched", ()):
        print(f"  (by subtraction)    {extra['description']}: {extra['brute_count']}")
    if "note" in payload:
        print(f"note: {payload['note']}")
    return 0


def _verify_one(name: str, tol: float, cache_dir: str | None) -> tuple[dict, bool]:
    spec = parse_group_spec(name)
    pipeline = Pipeline(spec, tol, cache_dir)
    report = pipeline.report()
    return {"name": name, "report": report}, bool(report["internal_ok"])


def cmd_verify(args, tol: float, cache_dir: str | None) -> int:
    names = list(CATALOG_NAMES) if args.catalog else [args.group]
    results = []
    all_ok = True
    for name in names:
        entry, ok = _verify_one(name, tol, cache_dir)
        results.append(entry)
        all_ok = all_ok and ok
    if args.json:
        _print_json({"tool_version": __version__, "groups": results})
    else:
        for entry in results:
            report = entry["report"]
            status = "ok" if report["internal_ok"] else "INTERNAL FAILURE"
            line = (f"{entry['name']:<12s} |L|={report['lattice_size']:<4d} "
                    f"sd={report['sd']['direct']:<10s} "
                    f"f2={report['f2']['direct']!s:<7s} {status}")
            print(line)
            for check in report["checks"] + report["trace_checks"]:
                if not check["passed"]:
                    print(f"    FAILED {check['name']}: {check['lhs']} vs {check['rhs']}")
            for note in report["notes"]:
                print(f"    note: {note}")
    return 0 if all_ok else 1


# -- parser ---------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    # shared flags may appear before or after the subcommand; SUPPRESS keeps a
    # subparser from clobbering a value already parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", metavar="DIR", default=argparse.SUPPRESS,
                        help="cache directory (default: $LATSPEC_CACHE)")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="eigensolver tolerance (default 1e-12)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON")

    parser = argparse.ArgumentParser(
        prog="latspec",
        description="Subgroup lattices, non-permutability graphs, spectra, and "
                    "exact commutativity degrees for finite permutation groups.",
        allow_abbrev=False,
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cmd(name: str, help_text: str, group_arg: bool = True):
        p = sub.add_parser(name, help=help_text, allow_abbrev=False, parents=[common])
        if group_arg:
            p.add_argument("group",
                           help="group spec, e.g. S4, D4, PSL(2,5), perm4:(1,2,3,4);(1,3)")
        return p

    add_cmd("info", "order, abelianness, quasihamiltonian flag")
    add_cmd("lattice", "list all subgroups")
    p = add_cmd("graph", "non-permutability graph")
    p.add_argument("--dot", metavar="FILE", help="write DOT to FILE ('-' for stdout)")
    p.add_argument("--matrix", choices=("adjacency", "laplacian"), default=None,
                   help="print the matrix itself (CSV, or nested lists with --json)")
    p = add_cmd("spectrum", "eigenvalues of the graph matrices")
    p.add_argument("--matrix", choices=("adjacency", "laplacian"), default="laplacian")
    p.add_argument("--csv", action="store_true", help="one value per line")
    p = add_cmd("mobius", "Möbius values mu(X, upper) for all X below upper")
    p.add_argument("--upper", type=int, default=None, metavar="ID")
    p = add_cmd("sd", "subgroup commutativity degree")
    p.add_argument("--method", choices=("direct", "spectral", "f2", "all"), default="all")
    p = add_cmd("f2", "factorization number")
    p.add_argument("--method",
                   choices=("direct", "mobius", "laplacian", "adjacency", "closed-form", "all"),
                   default="all")
    p = add_cmd("hughes", "Hughes subgroup for a prime")
    p.add_argument("-p", type=int, required=True)
    p = add_cmd("census", "subgroup census of PSL(2,q)", group_arg=False)
    p.add_argument("-q", type=int, required=True)
    p = add_cmd("verify", "run the identity verifier", group_arg=False)
    p.add_argument("group", nargs="?", help="group spec (omit with --catalog)")
    p.add_argument("--catalog", action="store_true", help="verify every built-in group")
    return parser


_GROUP_COMMANDS = {
    "info": cmd_info,
    "lattice": cmd_lattice,
    "graph": cmd_graph,
    "spectrum": cmd_spectrum,
    "mobius": cmd_mobius,
    "sd": cmd_sd,
    "f2": cmd_f2,
    "hughes": cmd_hughes,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "cache"):
        args.cache = os.environ.get("LATSPEC_CACHE") or None
    if not hasattr(args, "tol"):
        args.tol = 1e-12
    if not hasattr(args, "json"):
        args.json = False
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 2
    try:
        if args.command == "census":
            return cmd_census(args)
        if args.command == "verify":
            if not args.catalog and not args.group:
                print("error: verify needs a group spec or --catalog", file=sys.stderr)
                return 2
            return cmd_verify(args, args.tol, args.cache)
        spec = parse_group_spec(args.group)
        pipeline = Pipeline(spec, args.tol, args.cache)
        return _GROUP_COMMANDS[args.command](pipeline, args)
    except (InputError, SizeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LatspecError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
