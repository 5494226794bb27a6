"""Command-line front end.

Every command prints a human table (or JSON with ``--json``) and, with
``--out DIR``, writes ``DIR/<command>.json`` plus DOT files.  Reports embed
the full configuration and are byte-identical across reruns.
"""

from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path as FsPath

import click
import jsonschema

from . import __version__, bundled_quiver, bundled_quivers
from .algebra import TruncatedAlgebra, loewy_length
from .components import (DEFAULT_PRIME, DEFAULT_SAMPLES, SamplerExhausted, classify_components,
                         generic_module, hierarchy, local_components)
from .exactlinalg import Field, FieldError
from .modrep import format_sequence, layered_graph, radical_layering
from .quiver import Quiver, QuiverError
from .reptype import classify
from .ssq import realizable_sequences
from .tilting import (TiltingError, accumulation_estimate, end_algebra, strong_tilting_module,
                      tilt_presentation, tilt_quiver, verify_tilting)

EXIT_INPUT, EXIT_SAMPLER, EXIT_VERIFY = 2, 3, 4


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


# ----------------------------------------------------------------------
# parsing


def load_quiver(spec: str) -> Quiver:
    """A JSON file, or the name of a bundled quiver."""
    path = FsPath(spec)
    try:
        if path.is_file():
            return Quiver.from_json(path.read_text())
        if spec in bundled_quivers():
            return bundled_quiver(spec)
    except QuiverError as exc:
        raise InputError(str(exc)) from exc
    raise InputError(f"no quiver file or bundled quiver named {spec!r} "
                     f"(bundled: {', '.join(bundled_quivers())})")


def parse_dim(text: str, q: Quiver) -> tuple[int, ...]:
    try:
        d = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad dimension vector {text!r}") from exc
    if len(d) != q.n or min(d) < 0:
        raise InputError(f"dimension vector needs {q.n} non-negative entries, got {text!r}")
    return d


def parse_range(text: str) -> list[int]:
    try:
        a, b = (int(x) for x in text.split(".."))
    except ValueError as exc:
        raise InputError(f"bad L range {text!r}, expected A..B") from exc
    if not 1 <= a <= b:
        raise InputError(f"bad L range {text!r}")
    return list(range(a, b + 1))


def parse_field(text: str) -> Field:
    try:
        return Field.parse(text)
    except (FieldError, ValueError) as exc:
        raise InputError(f"bad field {text!r}: {exc}") from exc


def _check_L(L):
    if L is not None and L < 1:
        raise InputError("L must be at least 1")


# ----------------------------------------------------------------------
# reports


def schema(command: str) -> dict:
    text = resources.files(__package__).joinpath("schemas", f"{command}.schema.json").read_text()
    return json.loads(text)


def report(command: str, config: dict, result: dict) -> dict:
    doc = {"command": command, "version": __version__, "config": config,
           "seed": config.get("seed", 0), "field": config.get("field", "rational"), "result": result}
    jsonschema.validate(doc, schema(command))
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit(doc: dict, table: str, as_json: bool, out: str | None, dots: dict[str, str] | None = None):
    if out:
        d = FsPath(out)
        d.mkdir(parents=True, exist_ok=True)
        (d / f"{doc['command']}.json").write_text(dumps(doc))
        for name, text in sorted((dots or {}).items()):
            (d / f"{name}.dot").write_text(text)
    click.echo(dumps(doc) if as_json else table, nl=not as_json)


def _table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def guarded(fn):
    """Map sampler and verification failures to their exit codes."""
    @functools.wraps(fn)
    def wrapper(*args, **kw):
        try:
            return fn(*args, **kw)
        except SamplerExhausted as exc:
            click.echo(f"error: generic sampler exhausted: {exc}", err=True)
            sys.exit(EXIT_SAMPLER)
        except TiltingError as exc:
            click.echo(f"error: tilting verification failed: {exc}", err=True)
            sys.exit(EXIT_VERIFY)
    return wrapper


def common(fn):
    fn = click.option("--out", type=click.Path(file_okay=False), help="Directory for JSON and DOT files.")(fn)
    fn = click.option("--json", "as_json", is_flag=True, help="Print the JSON report instead of a table.")(fn)
    fn = click.option("--quiver", "quiver_spec", required=True,
                      help="Quiver JSON file or bundled quiver name.")(fn)
    return fn


def sampling(fn):
    fn = click.option("--samples", type=int, default=DEFAULT_SAMPLES, show_default=True)(fn)
    fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
    fn = click.option("--field", "field_text", default="rational", show_default=True,
                      help="'rational' or a prime such as p101 (exhaustive searches).")(fn)
    return fn


@click.group()
@click.version_option(__version__, prog_name="quivtrunc")
def main():
    """Components, strong tilts and representation type of truncated path algebras."""


# ----------------------------------------------------------------------
# components


@main.command()
@common
@sampling
@click.option("--L", "L", type=int, required=True)
@click.option("--dim", "dim_text", required=True, help="Dimension vector d1,d2,...")
@click.option("--local-formula", is_flag=True, help="Closed form for one vertex with loops.")
@guarded
def components(quiver_spec, as_json, out, field_text, seed, samples, L, dim_text, local_formula):
    """Irreducible components of rep_d(Lambda_L)."""
    q = load_quiver(quiver_spec)
    d = parse_dim(dim_text, q)
    fld = parse_field(field_text)
    _check_L(L)
    config = {"quiver": q.to_dict(), "L": L, "dim": list(d), "field": str(fld), "seed": seed,
              "samples": samples, "prime": DEFAULT_PRIME, "local_formula": local_formula}
    if local_formula:
        if q.n != 1 or any(a.source != 1 or a.target != 1 for a in q.arrows):
            raise InputError("--local-formula needs a one-vertex quiver with loops only")
        seqs = local_components(len(q.arrows), d[0], L)
        rows = [{"sequence": s.to_list(), "display": format_sequence(s), "is_component": True,
                 "evidence": "closed_form"} for s in seqs]
    else:
        reps = classify_components(q, L, d, field=fld, seed=seed, samples=samples)
        rows = [r.to_dict() for r in reps if r.is_component]
    doc = report("components", config, {"closed_form": local_formula, "components": rows})
    table = _table(["#", "generic radical layering", "evidence"],
                   [[k, r["display"], r["evidence"]] for k, r in enumerate(rows, 1)])
    emit(doc, f"{len(rows)} component(s)\n" + table, as_json, out)


# ----------------------------------------------------------------------
# hierarchy


def _hierarchy_dot(h) -> str:
    lines = ["digraph hierarchy {", "  rankdir=BT;", "  node [shape=box];"]
    names = {}
    for L, seqs in sorted(h.levels.items()):
        for k, s in enumerate(seqs):
            names[(L, s)] = f"L{L}_{k}"
            lines.append(f'  L{L}_{k} [label="L={L}\\n{format_sequence(s)}"];')
    for a, s, b, t, v in h.edges:
        if v.is_yes:
            lines.append(f'  {names[(a, s)]} -> {names[(b, t)]};')
    lines.append("}")
    return "\n".join(lines) + "\n"


@main.command(name="hierarchy")
@common
@sampling
@click.option("--L-range", "L_range", required=True, help="A..B")
@click.option("--dim", "dim_text", required=True)
@guarded
def hierarchy_cmd(quiver_spec, as_json, out, field_text, seed, samples, L_range, dim_text):
    """Components for each L in a range and their closure containments."""
    q = load_quiver(quiver_spec)
    d = parse_dim(dim_text, q)
    fld = parse_field(field_text)
    Ls = parse_range(L_range)
    config = {"quiver": q.to_dict(), "L_range": [Ls[0], Ls[-1]], "dim": list(d), "field": str(fld),
              "seed": seed, "samples": samples, "prime": DEFAULT_PRIME}
    h = hierarchy(q, d, Ls, field=fld, seed=seed, samples=samples)
    result = h.to_dict()
    doc = report("hierarchy", config, result)
    rows = [[f"L={a} {format_sequence(s)}", f"L={b} {format_sequence(t)}", v.kind]
            for a, s, b, t, v in h.edges]
    table = _table(["component", "closure candidate", "verdict"], rows)
    emit(doc, table, as_json, out, {"hierarchy": _hierarchy_dot(h)})


# ----------------------------------------------------------------------
# tilt


def _tilt_result(q: Quiver, L: int, verify: bool = True) -> tuple[dict, dict[str, str]]:
    T = strong_tilting_module(q, L, verify=False)
    check = verify_tilting(T) if verify else None
    E = end_algebra(T)
    tq = tilt_quiver(E)
    try:
        pres = tilt_presentation(E).to_dict()
    except ValueError as exc:
        pres = {"skipped": str(exc)}
    summands, dots = [], {}
    for i, Ti in enumerate(T, 1):
        summands.append({"vertex": i, "dims": list(Ti.dims),
                         "radical_layering": radical_layering(Ti).to_list(),
                         "display": format_sequence(radical_layering(Ti))})
        dots[f"T{i}"] = layered_graph(Ti).to_dot(f"T{i}")
    dots["tilt_quiver"] = _quiver_dot(tq)
    result = {
        "L": L,
        "summands": summands,
        "verification": None if check is None else {"projective_dimensions": check.pdims,
                                                    "ext_vanishes": check.ext_vanishes,
                                                    "tree_graphs": check.tree_graphs},
        "tilt_quiver": tq.to_dict(),
        "presentation": pres,
        "loewy_length": loewy_length(TruncatedAlgebra(q, L)),
        "loewy_length_tilt": E.loewy_length,
        "loewy_length_at": {str(i): E.loewy_length_at(i) for i in q.vertices},
    }
    return result, dots


def _quiver_dot(q: Quiver) -> str:
    lines = ["digraph Q {"] + [f'  {v} [label="~{v}"];' for v in q.vertices]
    lines += [f'  {a.source} -> {a.target} [label="{a.id}"];' for a in q.arrows]
    return "\n".join(lines + ["}"]) + "\n"


@main.command(name="tilt")
@common
@click.option("--L", "L", type=int, required=True)
@click.option("--ratios", "lmax", type=int, help="Ratio table for L = 2..LMAX and accumulation points.")
@guarded
def tilt_cmd(quiver_spec, as_json, out, L, lmax):
    """Strong tilting module, its endomorphism algebra and Loewy lengths."""
    q = load_quiver(quiver_spec)
    _check_L(L)
    if lmax is not None and lmax < 2:
        raise InputError("--ratios needs LMAX >= 2")
    config = {"quiver": q.to_dict(), "L": L, "ratios": lmax, "field": "rational", "seed": 0}
    result, dots = _tilt_result(q, L)
    if lmax is not None:
        values = {}
        for k in range(2, lmax + 1):
            E = end_algebra(strong_tilting_module(q, k, verify=False))
            values[k] = (E.loewy_length, loewy_length(TruncatedAlgebra(q, k)))
        acc = accumulation_estimate(q, 2, lmax, values=values)
        result["ratios"] = [{"L": k, "loewy_length": b, "loewy_length_tilt": a,
                             "ratio": str(Fraction(a, b))} for k, (a, b) in sorted(values.items())]
        result["accumulation"] = {"points": sorted(str(x) for x in acc.points), "period": acc.period,
                                  "window": list(acc.window)}
    doc = report("tilt", config, result)
    lines = [f"LL(Lambda_{L}) = {result['loewy_length']}, LL(tilt) = {result['loewy_length_tilt']}"]
    lines.append(_table(["T_i", "dims", "radical layering"],
                        [[s["vertex"], tuple(s["dims"]), s["display"]] for s in result["summands"]]))
    lines.append("tilt quiver arrows: " + ", ".join(
        f"{a['from']}->{a['to']}" for a in result["tilt_quiver"]["arrows"]))
    if lmax is not None:
        lines.append(_table(["L", "LL", "LL tilt", "ratio"],
                            [[r["L"], r["loewy_length"], r["loewy_length_tilt"], r["ratio"]]
                             for r in result["ratios"]]))
        lines.append("accumulation points: {" + ", ".join(result["accumulation"]["points"]) + "}")
    emit(doc, "\n".join(lines), as_json, out, dots)


# ----------------------------------------------------------------------
# reptype


@main.command(name="reptype")
@common
@click.option("--L", "L", type=int, required=True)
@click.option("--tilt", "with_tilt", is_flag=True, help="Also classify the strong tilt.")
@guarded
def reptype_cmd(quiver_spec, as_json, out, L, with_tilt):
    """Representation type of Lambda_L (and of its strong tilt)."""
    q = load_quiver(quiver_spec)
    _check_L(L)
    config = {"quiver": q.to_dict(), "L": L, "tilt": with_tilt, "field": "rational", "seed": 0}
    result = {"algebra": classify(TruncatedAlgebra(q, L)).to_dict()}
    if with_tilt:
        T = strong_tilting_module(q, L)
        pres = tilt_presentation(end_algebra(T))
        result["tilt"] = classify(pres).to_dict()
        result["tilt_presentation"] = pres.to_dict()
    doc = report("reptype", config, result)
    rows = [["Lambda_L", result["algebra"]["verdict"]]]
    if with_tilt:
        rows.append(["strong tilt", result["tilt"]["verdict"]])
    emit(doc, _table(["algebra", "type"], rows), as_json, out)


# ----------------------------------------------------------------------
# realizable and graph


@main.command(name="realizable")
@common
@click.option("--L", "L", type=int, required=True)
@click.option("--dim", "dim_text", required=True)
def realizable_cmd(quiver_spec, as_json, out, L, dim_text):
    """Realizable semisimple sequences with total dimension vector d."""
    q = load_quiver(quiver_spec)
    d = parse_dim(dim_text, q)
    _check_L(L)
    seqs = realizable_sequences(q, d, L)
    config = {"quiver": q.to_dict(), "L": L, "dim": list(d), "field": "rational", "seed": 0}
    doc = report("realizable", config, {"sequences": [s.to_list() for s in seqs]})
    emit(doc, f"{len(seqs)} realizable sequence(s)\n"
         + "\n".join(format_sequence(s) for s in seqs), as_json, out)


@main.command(name="graph")
@common
@sampling
@click.option("--L", "L", type=int, required=True)
@click.option("--dim", "dim_text", help="Graphs of generic modules of the components.")
@click.option("--tilt", "with_tilt", is_flag=True, help="Graphs of the strong tilting summands.")
@guarded
def graph_cmd(quiver_spec, as_json, out, field_text, seed, samples, L, dim_text, with_tilt):
    """Layered graphs (DOT) of generic modules or of the summands of T."""
    q = load_quiver(quiver_spec)
    fld = parse_field(field_text)
    _check_L(L)
    if (dim_text is None) == (not with_tilt):
        raise InputError("give exactly one of --dim and --tilt")
    config = {"quiver": q.to_dict(), "L": L, "dim": None, "tilt": with_tilt, "field": str(fld),
              "seed": seed, "samples": samples}
    graphs = []
    if with_tilt:
        for i, Ti in enumerate(strong_tilting_module(q, L), 1):
            graphs.append((f"T{i}", layered_graph(Ti)))
    else:
        d = parse_dim(dim_text, q)
        config["dim"] = list(d)
        reps = classify_components(q, L, d, field=fld, seed=seed, samples=samples)
        for k, r in enumerate((r for r in reps if r.is_component), 1):
            G = generic_module(q, L, r.sequence, field=fld, seed=seed)
            graphs.append((f"C{k}", layered_graph(G)))
    result = {"graphs": [{"name": n, "exact": g.exact, "dot": g.to_dot(n)} for n, g in graphs]}
    doc = report("graph", config, result)
    emit(doc, "".join(g["dot"] for g in result["graphs"]), as_json, out,
         {g["name"]: g["dot"] for g in result["graphs"]})


if __name__ == "__main__":  # pragma: no cover
    main()
