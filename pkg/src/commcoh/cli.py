"""Command-line interface producing JSON or CSV reports.

Exit codes: 0 when every internal invariant check passes, 1 on input
errors, 2 on an internal invariant violation.  Comparisons against
published closed-form tables are informational flags and never change
the exit code; the computed output is the arbiter.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .algebra import (
    as_coefficients,
    check_module_axioms,
    classify_algebra,
    is_ideal,
    leibniz_kernel,
    make_module,
)
from .catalog import (
    AlgebraFileError,
    CatalogEntry,
    line_module_instances,
    load_catalog,
    parse_algebra_file,
    survey_enumerate,
)
from .cochain import Flavor, InclusionPair, build_tower
from .cohomology import betti_table
from .comparison import (
    build_relative_complex,
    long_exact_sequence_check,
    vanishing_propagation_report,
    verify_e2_product,
)
from .gf2 import GF2Error, Subspace
from .spectral import (
    compute_pages,
    convergence_check,
    e2_closed_form_check,
    stabilization_index,
    subalgebra_filtration,
)

COMPARISON_NAMES = {
    "lie-leibniz": InclusionPair.EXT_IN_TENSOR,
    "lie-comm": InclusionPair.EXT_IN_SYM,
    "comm-leibniz": InclusionPair.SYM_IN_TENSOR,
}


class InputError(ValueError):
    pass


def _load_algebra(spec: str):
    if spec.startswith("catalog:"):
        try:
            return load_catalog(spec.split(":", 1)[1])
        except GF2Error as exc:
            raise InputError(str(exc)) from exc
    try:
        with open(spec) as fh:
            fa = parse_algebra_file(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc}") from exc
    except AlgebraFileError as exc:
        raise InputError(f"{spec}: {exc}") from exc
    # file modules stay raw here so `check` can report axiom verdicts;
    # they are validated when a command actually uses them
    return CatalogEntry(fa.name, fa.labels, fa.table, dict(fa.modules), fa.subspaces, ())


def _resolve_module(entry: CatalogEntry, spec: str):
    if spec in entry.modules:
        return as_coefficients(entry.table, entry.modules[spec])
    try:
        return make_module(entry.table, spec)
    except GF2Error as exc:
        raise InputError(f"module {spec!r}: {exc}") from exc


def _resolve_subspace(entry: CatalogEntry, spec: str) -> Subspace:
    if spec in entry.subspaces:
        return entry.subspaces[spec]
    d = entry.table.dim
    rows = []
    for tok in spec.split(","):
        tok = tok.strip()
        if len(tok) != d or any(ch not in "01" for ch in tok):
            raise InputError(f"subspace {spec!r}: want named span or {d}-bit vectors")
        rows.append([int(ch) for ch in tok])
    return Subspace.from_rows(d, np.array(rows, dtype=np.uint8))


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(repr(p).encode())
    return h.hexdigest()[:16]


def _closed_form_flags(dims):
    """Agreement flags against the published closed-form table for the
    two-dimensional worked examples (dimension n+1 when 4 divides n)."""
    out = []
    for n, dim in enumerate(dims):
        expected = n + 1 if n % 4 == 0 else 0
        out.append({"degree": n, "computed": dim, "table": expected, "agree": dim == expected})
    return out


def cmd_check(entry, args, checks, info):
    cls = classify_algebra(entry.table)
    leib = leibniz_kernel(entry.table)
    payload = {
        "algebra": entry.name,
        "dim": entry.table.dim,
        "classification": {
            "commutative": cls.commutative,
            "alternating": cls.alternating,
            "jacobi": cls.jacobi,
            "left_leibniz": cls.left_leibniz,
        },
        "leibniz_kernel": {
            "dim": leib.dim,
            "basis": [row.tolist() for row in leib.basis.to_dense()],
        },
        "subspaces": {},
        "modules": {},
    }
    for name, sub in entry.subspaces.items():
        payload["subspaces"][name] = {
            "dim": sub.dim,
            "verdict": is_ideal(entry.table, sub).value,
        }
    for name, mod in entry.modules.items():
        res = check_module_axioms(entry.table, mod)
        payload["modules"][name] = {"dim": mod.dim, "axioms_ok": res.ok}
        checks.append((f"module-axioms[{name}]", res.ok, str(res.pair)))
    return payload


def cmd_cohomology(entry, args, checks, info):
    mod = _resolve_module(entry, args.module)
    cls = classify_algebra(entry.table)
    flavors = []
    for f in args.flavor.split(","):
        try:
            flavors.append(Flavor(f))
        except ValueError:
            raise InputError(f"unknown flavor {f!r}")
    payload = {"algebra": entry.name, "module": args.module, "tables": {}}
    for flavor in flavors:
        if flavor is Flavor.EXT and not cls.is_lie:
            info.append({"flavor": flavor.value, "skipped": "needs a Lie algebra"})
            continue
        tower = build_tower(flavor, entry.table, mod, args.max_degree + 1)
        bt = betti_table(tower)
        payload["tables"][flavor.value] = list(bt.dims)
        checks.append((f"dd-zero[{flavor.value}]", tower.check_composition(), ""))
        if flavor is Flavor.SYM and entry.ideals:
            # second route: the stable page of a marked-ideal filtration
            # must reproduce the direct table
            h = entry.subspaces[entry.ideals[0]]
            ft = subalgebra_filtration(entry.table, h, mod, args.max_degree + 1)
            conv = convergence_check(ft)
            ok = all(
                conv.per_degree[n][0] == bt[n] for n in sorted(conv.per_degree)
            )
            checks.append(("two-route[sym]", ok and conv.ok, ""))
    return payload


def cmd_hs_ss(entry, args, checks, info):
    mod = _resolve_module(entry, args.module)
    sub_spec = args.ideal or args.subalgebra
    if sub_spec is None:
        raise InputError("hs-ss needs --ideal or --subalgebra")
    h = _resolve_subspace(entry, sub_spec)
    verdict = is_ideal(entry.table, h)
    if args.ideal and verdict.value != "ideal":
        raise InputError(f"--ideal names a {verdict.value}")
    n_max = args.max_degree + 2
    ft = subalgebra_filtration(entry.table, h, mod, n_max)
    pages = compute_pages(ft, max(3, stabilization_index(ft)))
    conv = convergence_check(ft)
    checks.append(("convergence", conv.ok, ""))
    payload = {
        "algebra": entry.name,
        "module": args.module,
        "subspace": sub_spec,
        "verdict": verdict.value,
        "adapted_basis": [
            row.tolist() for row in ft.meta["split"].adapted.to_dense()
        ],
        "pages": {
            str(p.r): {f"{pq[0]},{pq[1]}": dim for pq, dim in sorted(p.entries.items())}
            for p in pages[:4]
        },
        "stable": {
            f"{n}": list(conv.per_degree[n][:2]) for n in sorted(conv.per_degree)
        },
    }
    if verdict.value == "ideal":
        rep = e2_closed_form_check(entry.table, h, mod, n_max, pages)
        checks.append(("page-closed-forms", rep.ok, str(rep.mismatches()[:4])))
        payload["subalgebra_cohomology"] = list(rep.hs_sub)
    if entry.name in ("N", "a") and args.module == "trivial":
        bt = betti_table(build_tower(Flavor.SYM, entry.table, mod, n_max))
        info.append({"closed_form_table": _closed_form_flags(bt.dims)})
    return payload


def cmd_compare(entry, args, checks, info):
    mod = _resolve_module(entry, args.module)
    cls = classify_algebra(entry.table)
    which = (
        list(COMPARISON_NAMES) if args.comparison == "all" else [args.comparison]
    )
    payload = {"algebra": entry.name, "module": args.module, "comparisons": {}}
    for name in which:
        pair = COMPARISON_NAMES.get(name)
        if pair is None:
            raise InputError(f"unknown comparison {name!r}")
        needs_lie = pair in (InclusionPair.EXT_IN_TENSOR, InclusionPair.EXT_IN_SYM)
        if needs_lie and not cls.is_lie:
            info.append({"comparison": name, "skipped": "needs a Lie algebra"})
            continue
        rep = verify_e2_product(pair, entry.table, mod, args.max_degree + 2)
        checks.append((f"convergence[{name}]", rep.convergence_ok, ""))
        mism = rep.mismatches()
        if mism:
            info.append({"comparison": name, "product_mismatches": mism})
        payload["comparisons"][name] = {
            "hr": list(rep.hr),
            "partner": list(rep.partner),
            "entries": [list(e) for e in rep.entries],
            "index_offset": rep.index_offset,
            "product_ok": not mism,
        }
    reports, tables = vanishing_propagation_report(
        entry.table, mod, args.max_degree + 2
    )
    payload["cohomology"] = {k: list(v) for k, v in tables.items()}
    payload["propagation"] = []
    for rep in reports:
        payload["propagation"].append(
            {
                "hypothesis": rep.hypothesis,
                "conclusion": rep.conclusion,
                "window": rep.window,
                "ok": rep.ok,
            }
        )
        if not rep.vacuous:
            checks.append(
                (f"propagation[{rep.hypothesis}->{rep.conclusion}]", rep.ok, "")
            )
    return payload


def cmd_les(entry, args, checks, info):
    mod = _resolve_module(entry, args.module)
    cls = classify_algebra(entry.table)
    payload = {"algebra": entry.name, "module": args.module, "sequences": {}}
    for name, pair in COMPARISON_NAMES.items():
        needs_lie = pair in (InclusionPair.EXT_IN_TENSOR, InclusionPair.EXT_IN_SYM)
        if needs_lie and not cls.is_lie:
            continue
        rel = build_relative_complex(pair, entry.table, mod, args.max_degree)
        les = long_exact_sequence_check(rel, args.max_degree + 1)
        checks.append((f"les[{name}]", les.ok, str(les.failures()[:3])))
        payload["sequences"][name] = {
            "nodes": [[desc, ok] for desc, ok in les.nodes],
            "ok": les.ok,
        }
    return payload


def cmd_survey(args, checks, info):
    res = survey_enumerate(args.dim, up_to_iso=args.up_to_iso, jobs=args.jobs)
    payload = {
        "dim": args.dim,
        "candidates": res.candidate_count,
        "valid": res.valid_count,
    }
    if args.up_to_iso:
        payload["orbits"] = res.orbit_count
        summaries = []
        for table in res.rep_tables():
            cls = classify_algebra(table)
            checks.append(
                ("survey-classification", cls.commutative and cls.jacobi, "")
            )
            tower = build_tower(
                Flavor.SYM, table, make_module(table, "trivial"), args.betti_degree + 1
            )
            summaries.append(
                {
                    "table": table.c.reshape(-1).tolist(),
                    "alternating": cls.alternating,
                    "betti_sym_trivial": list(betti_table(tower).dims),
                    "line_instances": len(line_module_instances(table)),
                }
            )
        payload["orbit_summaries"] = summaries
    return payload


def _flatten_csv(command, payload):
    buf = io.StringIO()
    w = csv.writer(buf)
    if command == "cohomology":
        w.writerow(["flavor", "degree", "dim"])
        for flavor, dims in sorted(payload["tables"].items()):
            for n, dim in enumerate(dims):
                w.writerow([flavor, n, dim])
    elif command == "hs-ss":
        w.writerow(["page", "p", "q", "dim"])
        for r, entries in sorted(payload["pages"].items()):
            for pq, dim in sorted(entries.items()):
                p, q = pq.split(",")
                w.writerow([r, p, q, dim])
    elif command == "compare":
        w.writerow(["comparison", "p", "q", "computed", "predicted", "match"])
        for name, rep in sorted(payload["comparisons"].items()):
            for p, q, c, pr, m in rep["entries"]:
                w.writerow([name, p, q, c, pr, m])
    elif command == "les":
        w.writerow(["comparison", "node", "ok"])
        for name, rep in sorted(payload["sequences"].items()):
            for desc, ok in rep["nodes"]:
                w.writerow([name, desc, ok])
    elif command == "survey":
        w.writerow(["dim", "candidates", "valid", "orbits"])
        w.writerow(
            [payload["dim"], payload["candidates"], payload["valid"], payload.get("orbits", "")]
        )
    else:
        w.writerow(["key", "value"])
        for k, v in sorted(payload.items()):
            w.writerow([k, json.dumps(v, sort_keys=True)])
    return buf.getvalue()


def build_parser():
    ap = argparse.ArgumentParser(
        prog="commcoh",
        description="Exact GF(2) cohomology of commutative Lie and Leibniz algebras",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, module=True):
        p.add_argument("--algebra", required=True, help="catalog:NAME or a file path")
        if module:
            p.add_argument("--module", default="trivial")
        p.add_argument("--max-degree", type=int, default=6)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--output", default=None)
        p.add_argument("--jobs", type=int, default=1)

    common(sub.add_parser("check", help="classification and axiom verdicts"))
    p = sub.add_parser("cohomology", help="Betti tables per flavor")
    common(p)
    p.add_argument("--flavor", default="sym")
    p = sub.add_parser("hs-ss", help="subalgebra filtration pages and checks")
    common(p)
    p.add_argument("--ideal", default=None)
    p.add_argument("--subalgebra", default=None)
    p = sub.add_parser("compare", help="relative complexes and product checks")
    common(p)
    p.add_argument("--comparison", default="all", help="all, " + ", ".join(COMPARISON_NAMES))
    common(sub.add_parser("les", help="long exact sequence exactness"))
    p = sub.add_parser("survey", help="enumerate small commutative Lie algebras")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--betti-degree", type=int, default=4)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", default=None)
    p.add_argument("--jobs", type=int, default=1)
    return ap


def run(argv=None):
    """Run one command; returns (report dict, exit code)."""
    args = build_parser().parse_args(argv)
    checks: list = []
    info: list = []
    try:
        if args.command == "survey":
            payload = cmd_survey(args, checks, info)
            digest = _digest("survey", args.dim, args.up_to_iso)
        else:
            entry = _load_algebra(args.algebra)
            digest = _digest(args.command, entry.table.c.tobytes(), vars(args))
            handler = {
                "check": cmd_check,
                "cohomology": cmd_cohomology,
                "hs-ss": cmd_hs_ss,
                "compare": cmd_compare,
                "les": cmd_les,
            }[args.command]
            payload = handler(entry, args, checks, info)
    except InputError as exc:
        return {"error": str(exc)}, 1
    except (GF2Error, ValueError) as exc:
        return {"error": f"internal check failed: {exc}"}, 2

    all_ok = all(ok for _, ok, _ in checks)
    report = {
        "schema_version": 1,
        "tool": {"name": "commcoh", "version": __version__},
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "command": args.command,
        "input_digest": digest,
        "payload": payload,
        "checks": [
            {"name": name, "passed": ok, "detail": detail}
            for name, ok, detail in checks
        ],
        "informational": info,
    }
    return report, 0 if all_ok else 2


def main(argv=None):
    args = build_parser().parse_args(argv)
    report, code = run(argv)
    if code == 1:
        print(json.dumps(report, sort_keys=True), file=sys.stderr)
        return code
    if args.format == "csv" and "payload" in report:
        text = _flatten_csv(report["command"], report["payload"])
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
