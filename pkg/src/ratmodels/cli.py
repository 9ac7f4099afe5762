"""Command-line front end.

Every subcommand builds a report dict with four top-level keys::

    command      argv echo (list of strings)
    fingerprint  sha256 of the canonical text serialization of the input(s)
    result       command-specific payload
    diagnostics  list of warning strings

``--format structured`` prints it as JSON (sorted keys, two-space indent);
``--format text`` prints the same content as an indented listing.
Exit status: 0 ok, 2 the model is malformed or violates an invariant, 1 usage.

Model arguments are file paths or ``catalog:<name>``.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from ratmodels import catalog, formats
from ratmodels.cdga import ModelError, SullivanModel
from ratmodels.dgl import FreeLieModel, LieExactnessError


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    pass


# ---------------------------------------------------------------- input


def _load(spec: str):
    if spec.startswith("catalog:"):
        key = spec.split(":", 1)[1]
        sul, lie = catalog.sullivan_catalog(), catalog.lie_catalog()
        if key in sul:
            return sul[key]
        if key in lie:
            return lie[key]
        raise UsageError(f"unknown catalog model {key!r}; known: {sorted(sul) + sorted(lie)}")
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"no such file: {spec}")
    try:
        return formats.load_model(path)
    except (formats.ParseError, ModelError, ValueError) as exc:
        raise ValidationFailure(f"{spec}: {exc}") from exc


def _sullivan(spec: str) -> SullivanModel:
    m = _load(spec)
    if not isinstance(m, SullivanModel):
        raise UsageError(f"{spec} is a Lie model; this command needs a Sullivan model")
    return m


def _lie(spec: str) -> FreeLieModel:
    m = _load(spec)
    if not isinstance(m, FreeLieModel):
        raise UsageError(f"{spec} is a Sullivan model; this command needs a Lie model")
    return m


def canonical_text(m) -> str:
    if isinstance(m, SullivanModel):
        return formats.format_sullivan(m)
    if isinstance(m, FreeLieModel):
        return formats.format_lie(m)
    return formats.format_graph(m)


def fingerprint(*objs) -> str:
    h = hashlib.sha256()
    for o in objs:
        h.update(canonical_text(o).encode())
        h.update(b"\0")
    return h.hexdigest()


def _is_arkowitz_lupton(m) -> bool:
    return isinstance(m, SullivanModel) and \
        formats.format_sullivan(m) == formats.format_sullivan(catalog.arkowitz_lupton_model())


def _al_diagnostic(n: int) -> str:
    return (f"published formal dimension {catalog.ARKOWITZ_LUPTON_PUBLISHED_DIMENSION} "
            f"conflicts with the degree formula value {n}")


# ---------------------------------------------------------------- commands


def cmd_validate(args):
    m = _load(args.model)
    m.check_d_squared()
    kind = "sullivan" if isinstance(m, SullivanModel) else "lie"
    msg = ("d^2 = 0 verified" if kind == "sullivan" else "delta^2 = 0 verified")
    return {"kind": kind, "generators": len(m.generators), "message": f"{msg}, {len(m.generators)} generators"}, [], (m,)


def cmd_cohomology(args):
    from ratmodels.cohomology import cohomology_basis

    m = _sullivan(args.model)
    dims, reps = {}, {}
    for k in range(args.max_degree + 1):
        h = cohomology_basis(m, k)
        dims[str(k)] = h.dim
        if h.dim:
            reps[str(k)] = [str(r) for r in h.representatives]
    return {"max_degree": args.max_degree, "dimensions": dims, "representatives": reps}, [], (m,)


def cmd_elliptic(args):
    from ratmodels.cohomology import cohomology_dim
    from ratmodels.elliptic import elliptic_report

    m = _sullivan(args.model)
    rep = elliptic_report(m, window=args.window)
    n = rep.formal_dimension_formula
    diags = []

    def cond(c):
        return {"ok": c.ok, "detail": c.detail}

    result = {
        "formal_dimension": n,
        "conditions": {
            "odd_at_least_even": cond(rep.odd_at_least_even),
            "degree_sums": cond(rep.degree_sums),
            "nothing_at_or_above_2n": cond(rep.below_2n),
            "no_even_above_n": cond(rep.no_even_above_n),
        },
        "top_degree_dim": rep.top_degree_dim,
        "window": {str(k): d for k, d in rep.window_checks},
        "verdict": rep.verdict,
        "violations": rep.violations,
    }
    if _is_arkowitz_lupton(m):
        pub = catalog.ARKOWITZ_LUPTON_PUBLISHED_DIMENSION
        result["published_dimension"] = {"value": pub, "dim_H": cohomology_dim(m, pub)}
        diags.append(_al_diagnostic(n))
    return result, diags, (m,)


def cmd_whitehead(args):
    from ratmodels.whitehead import ExactnessError, whitehead_table

    m = _load(args.model)
    if isinstance(m, FreeLieModel):
        from ratmodels.dgl import whitehead_lie_table

        try:
            rows = whitehead_lie_table(m, args.max_degree)
        except LieExactnessError as exc:
            raise ValidationFailure(str(exc)) from exc
        out = [{"q": r.q, "w_dim": r.w_dim, "b_shape": list(r.b_matrix.shape),
                "b_rank": r.b_matrix.rank(), "h_skeleton_dim": r.h_skel_dim,
                "h_full_dim": r.h_full_dim, "exact": True} for r in rows]
        return {"side": "lie", "rows": out}, [], (m,)
    try:
        rows = whitehead_table(m, args.max_degree)
    except ExactnessError as exc:
        raise ValidationFailure(str(exc)) from exc
    out = [{"k": r.k, "v_dim": r.v_dim, "b_shape": list(r.b_matrix.shape), "b_rank": r.b_matrix.rank(),
            "b_class": r.classification, "h_trunc_dim": r.h_trunc_dim, "h_full_dim": r.h_full_dim,
            "exact": r.exact} for r in rows]
    return {"side": "sullivan", "rows": out}, [], (m,)


def _group_payload(res):
    branches = []
    for b in res.solution_branches:
        g = b.group
        entry = {"index": b.index, "permutation": b.nontrivial_permutation,
                 "group": g.description, "free_rank": g.free_rank, "torsion_2": g.torsion_2,
                 "relations": b.system.describe()}
        if g.finite:
            entry["elements"] = [{k: str(v) for k, v in sorted(e.items())} for e in g.sample_elements]
        branches.append(entry)
    return {
        "branches_examined": len(res.branches),
        "solution_branches": len(res.solution_branches),
        "free_rank": res.free_rank,
        "finite": res.finite,
        "order": res.order,
        "identity_component": res.solution_branches[0].group.description if res.solution_branches else None,
        "branches": branches,
    }


def cmd_equiv(args):
    from ratmodels.selfequiv import infiniteness_criteria, monomial_group

    m = _sullivan(args.model)
    res = monomial_group(m)
    result = _group_payload(res)
    result["infiniteness"] = infiniteness_criteria(m).to_dict()
    diags = ["monomial automorphisms only; the full self-equivalence group may be larger"]
    return result, diags, (m,)


def cmd_reduce(args):
    from ratmodels.selfequiv import reduction_chain

    m = _sullivan(args.model)
    cert = reduction_chain(m)
    diags = [] if cert.complete else [cert.conclusion]
    return cert.to_dict(), diags, (m,)


def cmd_bound(args):
    from ratmodels.selfequiv import self_closeness_bound, skeleton_chain_report

    m = _sullivan(args.model)
    n, cert = self_closeness_bound(m)
    result = {"formal_dimension": n, "bound": n if cert.complete else None,
              "certificate": cert.to_dict(), "skeleton_chain": skeleton_chain_report(m)}
    diags = [] if cert.complete else ["reduction chain incomplete; no bound certified"]
    if _is_arkowitz_lupton(m):
        diags.append(_al_diagnostic(n))
    return result, diags, (m,)


def cmd_dgl_homology(args):
    from ratmodels.dgl import lie_homology_dim

    m = _lie(args.model)
    dims = {str(k): lie_homology_dim(m, k) for k in range(1, args.max_degree + 1)}
    return {"max_degree": args.max_degree, "dimensions": dims}, [], (m,)


def _shift_range(text: str) -> list[int]:
    try:
        if ":" in text:
            a, b = text.split(":")
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --shift-range {text!r}; use 'a:b' or 'a,b,c'") from exc


def cmd_pair_check(args):
    from ratmodels.dgl import shift_scan

    s, lie = _sullivan(args.sullivan), _lie(args.lie)
    shifts = _shift_range(args.shift_range)
    scan = shift_scan(s, lie, list(range(2, args.max_degree + 1)), shifts)
    diags = [f"shift {r['shift']}: fails at k = {r['failing_k']}" for r in scan["reports"]
             if not r["all_pass"]]
    return scan, diags, (s, lie)


def cmd_realize_graph(args):
    from ratmodels.elliptic import formal_dimension
    from ratmodels.selfequiv import monomial_group

    path = Path(args.graph)
    if not path.is_file():
        raise UsageError(f"no such file: {args.graph}")
    try:
        g = formats.parse_graph(path.read_text(encoding="utf-8"))
        auts = catalog.graph_automorphisms(g)
    except catalog.GraphTooLarge as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc
    m = catalog.costoya_viruel_model(g)
    n = formal_dimension(m)
    result = {"vertices": len(g.vertices), "edges": len(g.edges), "formal_dimension": n,
              "expected_formal_dimension": 208 + 80 * len(g.vertices),
              "automorphisms": len(auts), "model": formats.format_sullivan(m)}
    diags = []
    if args.equiv:
        res = monomial_group(m)
        result["equiv"] = _group_payload(res)
        if len(res.solution_branches) != len(auts):
            diags.append(f"{len(res.solution_branches)} solution branches vs |Aut| = {len(auts)}")
        if res.order != len(auts):
            diags.append(f"monomial group order {res.order} differs from |Aut| = {len(auts)}")
    return result, diags, (g,)


# ---------------------------------------------------------------- output


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def render_structured(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _text_lines(x, indent: int, out: list[str]):
    pad = "  " * indent
    if isinstance(x, dict):
        for k in sorted(x):
            v = x[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _text_lines(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}-")
                _text_lines(v, indent + 1, out)
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(pad + _scalar(x))


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "[]" if isinstance(v, list) else "{}"
    if isinstance(v, str) and "\n" in v:
        return "|\n" + "\n".join("    " + ln for ln in v.splitlines())
    return str(v)


def render_text(report: dict) -> str:
    out: list[str] = []
    _text_lines(_jsonable(report), 0, out)
    return "\n".join(out) + "\n"


COMMANDS = {
    "validate": cmd_validate, "cohomology": cmd_cohomology, "elliptic": cmd_elliptic,
    "whitehead": cmd_whitehead, "equiv": cmd_equiv, "reduce": cmd_reduce, "bound": cmd_bound,
    "dgl-homology": cmd_dgl_homology, "pair-check": cmd_pair_check, "realize-graph": cmd_realize_graph,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ratmodels", description="Rational homotopy model computations.")
    p.add_argument("--format", choices=["text", "structured"], default="text")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in ("validate", "equiv", "reduce", "bound"):
        sub.add_parser(name).add_argument("model")
    for name, default in (("cohomology", 12), ("whitehead", 10), ("dgl-homology", 12)):
        sp = sub.add_parser(name)
        sp.add_argument("model")
        sp.add_argument("--max-degree", type=int, default=default)
    sp = sub.add_parser("elliptic")
    sp.add_argument("model")
    sp.add_argument("--window", type=int, default=None)
    sp = sub.add_parser("pair-check")
    sp.add_argument("sullivan")
    sp.add_argument("lie")
    sp.add_argument("--shift-range", default="-1:0")
    sp.add_argument("--max-degree", type=int, default=10)
    sp = sub.add_parser("realize-graph")
    sp.add_argument("graph")
    sp.add_argument("--equiv", action="store_true", help="also solve the monomial automorphism system")
    # allow --format after the subcommand too
    for sp in sub.choices.values():
        sp.add_argument("--format", choices=["text", "structured"], default=argparse.SUPPRESS)
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("missing subcommand; choose from " + ", ".join(COMMANDS))
        for flag in ("max_degree", "window"):
            v = getattr(args, flag, None)
            if v is not None and v < 0:
                raise UsageError(f"--{flag.replace('_', '-')} must be non-negative")
        result, diags, inputs = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 1
    except (ValidationFailure, ModelError) as exc:
        print(f"validation failed: {exc}", file=stderr)
        return 2
    report = {"command": argv, "fingerprint": fingerprint(*inputs), "result": result, "diagnostics": diags}
    render = render_structured if args.format == "structured" else render_text
    stdout.write(render(report))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
