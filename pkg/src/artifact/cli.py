"""Command-line front end: list the catalog, run checks, dump tensors.

Exit codes: 0 when every selected non-skipped check passes, 1 when any check
fails, 2 for usage or construction errors.  Flags override config-file values
which override defaults; text output rounds to 6 significant digits while
json keeps full precision.
"""

from __future__ import annotations

import json
import re
import sys
from typing import Optional

import click
import numpy as np

from .ambient import AmbientSpace, make_flat_cosymplectic, make_pseudosphere
from .catalog import CatalogEntry, get_entry, registry
from .config import Config, load_config_file
from .errors import GeometryError
from .linalg import inner
from .submanifold import (
    Tangency,
    classify,
    frame_at,
    mean_curvature,
    normal_part,
    second_fundamental_form,
    shape_operator,
    tangential_part,
)
from .verifier import reports_payload, run_detailed

_SPACE_PATTERN = re.compile(r"^(?:s(\d+)-(pos|neg)|r(\d+)-cosym)$")


def _fmt(x: float) -> str:
    return f"{float(x):.6g}"


def _fmt_vec(v: np.ndarray) -> str:
    return "[" + ", ".join(_fmt(x) for x in np.asarray(v).ravel()) + "]"


def _fmt_mat(m: np.ndarray) -> str:
    return "[" + "; ".join(", ".join(_fmt(x) for x in row) for row in np.asarray(m)) + "]"


def _config_options(f):
    options = [
        click.option("--n", type=int, default=None, help="Family parameter; ambient manifold dimension is 4n+3."),
        click.option("--seed", type=int, default=None, help="Seed for all sampling streams."),
        click.option("--points", type=int, default=None, help="Parameter points sampled per example."),
        click.option("--axiom-points", type=int, default=None, help="Points for the algebraic axiom sweeps."),
        click.option("--fd-step1", type=float, default=None, help="Step for single central differences."),
        click.option("--fd-step2", type=float, default=None, help="Outer step for nested second derivatives."),
        click.option("--tol-alg", type=float, default=None, help="Tolerance for algebraic identities."),
        click.option("--tol-d1", type=float, default=None, help="Tolerance for first-derivative identities."),
        click.option("--tol-d2", type=float, default=None, help="Tolerance for second-derivative identities."),
        click.option("--format", "format_", type=click.Choice(["text", "json"]), default=None, help="Output format."),
        click.option("--strict", is_flag=True, default=None, help="Halve every tolerance tier."),
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None, help="key = value config file; flags take precedence."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _build_config(config_path: Optional[str], **flags) -> Config:
    try:
        values: dict = {}
        if config_path is not None:
            values.update(load_config_file(config_path))
        for key, value in flags.items():
            if value is not None:
                values["format" if key == "format_" else key] = value
        return Config(**values)
    except (TypeError, ValueError, KeyError, OSError) as exc:
        raise click.UsageError(str(exc))


def _expected_dict(entry: CatalogEntry) -> dict:
    exp = entry.expected
    return {
        "kind": exp.kind.value,
        "xi_tangency": [t.value for t in exp.xi_tangency],
        "dim_xi_t": exp.dim_xi_t,
        "dim_xi_n": exp.dim_xi_n,
        "totally_geodesic": exp.totally_geodesic,
        "minimal": exp.minimal,
        "flat": exp.flat,
        "induced_structure": exp.induced_structure,
    }


@click.group()
def main() -> None:
    """Catalog, checks, and pointwise tensor dumps for the mixed 3-structure engine."""


@main.group()
def examples() -> None:
    """Catalog of example submanifolds."""


@examples.command("list")
@_config_options
def examples_list(config_path, **flags) -> None:
    """List catalog ids with expected classifications and citation anchors."""
    config = _build_config(config_path, **flags)
    entries = registry()
    if config.format == "json":
        payload = [
            {
                "id": entry_id,
                "description": entries[entry_id].description,
                "expected": _expected_dict(entries[entry_id]),
                "anchor": entries[entry_id].anchor,
            }
            for entry_id in sorted(entries)
        ]
        click.echo(json.dumps(payload, indent=2))
        return
    for entry_id in sorted(entries):
        entry = entries[entry_id]
        exp = entry.expected
        flags_txt = []
        if exp.totally_geodesic:
            flags_txt.append("totally-geodesic")
        if exp.minimal:
            flags_txt.append("minimal")
        if exp.flat:
            flags_txt.append("flat")
        tangency = ",".join(t.value for t in exp.xi_tangency)
        click.echo(
            f"{entry_id:<22} {exp.kind.value:<14} xi=({tangency}) "
            f"dims=({exp.dim_xi_t},{exp.dim_xi_n}) {' '.join(flags_txt)}"
        )
        click.echo(f"{'':<22} {entry.description}")
        click.echo(f"{'':<22} anchor: {entry.anchor}")


@main.command()
@click.option("--all", "run_all", is_flag=True, default=False, help="Run the full registry (default when no --check given).")
@click.option("--check", "checks", multiple=True, metavar="ID", help="Check id to run; repeatable.")
@_config_options
def verify(run_all, checks, config_path, **flags) -> None:
    """Run named checks and print their reports."""
    config = _build_config(config_path, **flags)
    check_ids = None if (run_all or not checks) else list(checks)
    try:
        pairs = run_detailed(check_ids, config)
    except GeometryError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    reports = [report for report, _ in pairs]
    if config.format == "json":
        click.echo(json.dumps(reports_payload(reports, config), indent=2))
    else:
        for report, notes in pairs:
            click.echo(
                f"{report.check_id}  {report.status:<8} "
                f"max_residual={_fmt(report.max_residual)}  "
                f"tolerance={_fmt(report.tolerance)}  points={report.points}  "
                f"seed={report.seed}  wall={report.wall_time_ms}ms"
            )
            click.echo(f"    anchor: {report.paper_anchor}")
            click.echo(f"    examples: {', '.join(report.example_ids)}")
            note_parts = [
                f"{key}={_fmt(value) if isinstance(value, float) else value}"
                for key, value in notes.items()
            ]
            if note_parts:
                click.echo(f"    notes: {'; '.join(note_parts)}")
        n_pass = sum(1 for r in reports if r.passed)
        n_fail = sum(1 for r in reports if r.status == "Fail")
        n_skip = sum(1 for r in reports if r.skipped)
        click.echo(f"{len(reports)} checks: {n_pass} Pass, {n_fail} Fail, {n_skip} Skipped")
    sys.exit(1 if any(r.status == "Fail" for r in reports) else 0)


def _parse_point(text: str) -> np.ndarray:
    cleaned = text.strip().strip("()[]")
    try:
        return np.array([float(part) for part in cleaned.split(",") if part.strip()])
    except ValueError:
        raise click.UsageError(f"cannot parse point {text!r}; expected comma-separated floats")


def _resolve_space(target: str, config: Config) -> Optional[AmbientSpace]:
    match = _SPACE_PATTERN.match(target)
    if match is None:
        return None
    if match.group(3) is not None:
        dim = int(match.group(3))
        if (dim - 3) % 4 != 0 or dim < 3:
            raise click.UsageError(f"space dimension {dim} is not of the form 4n+3")
        return make_flat_cosymplectic((dim - 3) // 4)
    dim = int(match.group(1))
    if (dim - 3) % 4 != 0 or dim < 7:
        raise click.UsageError(f"sphere dimension {dim} is not of the form 4n+3 with n >= 1")
    level = 1 if match.group(2) == "pos" else -1
    return make_pseudosphere((dim - 3) // 4, level=level)


def _dump_space(space: AmbientSpace, target: str, point: Optional[np.ndarray], config: Config) -> None:
    p = space.base_point() if point is None else space.require_on(point, config.tier("alg"))
    st = space.structure
    g = space.metric
    xis = {a: st.xi(a, p) for a in (1, 2, 3)}
    eps = [inner(xis[a], xis[a], g) for a in (1, 2, 3)]
    if config.format == "json":
        payload = {
            "id": target,
            "kind": space.kind.name,
            "ambient_dim": space.dim,
            "manifold_dim": space.tangent_dim,
            "level": space.level,
            "metric_signs": list(map(float, g.signs)),
            "point": p.tolist(),
            "tau": list(st.tau),
            "eps_declared": list(st.eps),
            "eps_computed": eps,
            "xi": {f"xi{a}": xis[a].tolist() for a in (1, 2, 3)},
        }
        click.echo(json.dumps(payload, indent=2))
        return
    click.echo(f"space {target}: kind={space.kind.name} ambient_dim={space.dim} manifold_dim={space.tangent_dim} level={space.level}")
    click.echo(f"metric signs: {_fmt_vec(g.signs)}")
    click.echo(f"point p = {_fmt_vec(p)}")
    click.echo(f"tau = {tuple(int(t) for t in st.tau)}   eps (computed g(xi,xi)) = ({', '.join(_fmt(e) for e in eps)})")
    for a in (1, 2, 3):
        click.echo(f"xi{a} = {_fmt_vec(xis[a])}")


def _dump_entry(entry: CatalogEntry, point: Optional[np.ndarray], config: Config) -> None:
    imm = entry.immersion
    if point is None:
        point = (np.asarray(imm.box_lo) + np.asarray(imm.box_hi)) / 2.0
    if point.shape != (imm.domain_dim,):
        raise click.UsageError(
            f"entry {entry.id!r} takes {imm.domain_dim} parameters, got {point.shape[0]}"
        )
    fr = frame_at(imm, point)
    g = imm.ambient.metric
    st = imm.ambient.structure
    h_tensor = second_fundamental_form(imm, point, h2=config.fd_step2, frame=fr)
    H = mean_curvature(imm, point, frame=fr, h_tensor=h_tensor)
    cls = classify(imm, point, frame=fr)
    xis = {a: st.xi(a, fr.p) for a in (1, 2, 3)}
    decomposition = {
        a: (tangential_part(fr, g, xis[a]), normal_part(fr, g, xis[a])) for a in xis
    }
    shape_ops = {
        a: shape_operator(imm, point, xis[a], frame=fr, h_tensor=h_tensor)
        for a, tangency in enumerate(cls.xi_tangency, start=1)
        if tangency is Tangency.NORMAL
    }
    if config.format == "json":
        payload = {
            "id": entry.id,
            "description": entry.description,
            "anchor": entry.anchor,
            "u": point.tolist(),
            "p": fr.p.tolist(),
            "tangent_frame": fr.X.tolist(),
            "normal_dim": fr.k,
            "induced_metric": fr.induced_gram.tolist(),
            "second_fundamental_form": h_tensor.tolist(),
            "mean_curvature": H.tolist(),
            "shape_operators": {f"A_xi{a}": A.tolist() for a, A in shape_ops.items()},
            "xi_decomposition": {
                f"xi{a}": {"tangential": t.tolist(), "normal": n.tolist()}
                for a, (t, n) in decomposition.items()
            },
            "classification": {
                "kind": cls.kind.value,
                "xi_tangency": [t.value for t in cls.xi_tangency],
                "dim_xi_t": cls.dim_xi_t,
                "dim_xi_n": cls.dim_xi_n,
                "residuals": cls.residuals,
            },
        }
        click.echo(json.dumps(payload, indent=2))
        return
    click.echo(f"entry {entry.id}: {entry.description}")
    click.echo(f"anchor: {entry.anchor}")
    click.echo(f"u = {_fmt_vec(point)}")
    click.echo(f"p = {_fmt_vec(fr.p)}")
    click.echo(f"induced metric g = {_fmt_mat(fr.induced_gram)}")
    for i in range(fr.m):
        click.echo(f"X{i + 1} = {_fmt_vec(fr.X[i])}")
    click.echo(f"normal bundle dimension: {fr.k}")
    for i in range(fr.m):
        for j in range(i, fr.m):
            click.echo(f"h({i + 1},{j + 1}) = {_fmt_vec(h_tensor[i, j])}")
    click.echo(f"mean curvature H = {_fmt_vec(H)}  (|H|_inf = {_fmt(np.max(np.abs(H)))})")
    for a, A in shape_ops.items():
        click.echo(f"A_xi{a} = {_fmt_mat(A)}")
    for a, (tan, nor) in decomposition.items():
        click.echo(
            f"xi{a}: {cls.xi_tangency[a - 1].value}; tangential part {_fmt_vec(tan)}; "
            f"|nor|_inf = {_fmt(np.max(np.abs(nor)))}"
        )
    click.echo(
        f"classification: {cls.kind.value}, xi=({','.join(t.value for t in cls.xi_tangency)}), "
        f"dims=({cls.dim_xi_t},{cls.dim_xi_n})"
    )
    kind_key = "invariant" if cls.kind.value == "Invariant" else "anti_invariant"
    click.echo(
        f"classification residuals: {kind_key}={_fmt(cls.residuals[kind_key])}, "
        f"xi_decomposition={_fmt(cls.residuals['xi_decomposition'])}"
    )


@main.command()
@click.argument("target")
@click.option("--point", "point_str", default=None, metavar="COORDS", help="Comma-separated coordinates: ambient point for a space id, parameters for a catalog id.")
@_config_options
def dump(target, point_str, config_path, **flags) -> None:
    """Dump frames, induced metric, curvature data, and classification.

    TARGET is a catalog id (see `examples list`) or a space id of the form
    s{4n+3}-pos, s{4n+3}-neg, or r{4n+3}-cosym.
    """
    config = _build_config(config_path, **flags)
    point = None if point_str is None else _parse_point(point_str)
    try:
        space = _resolve_space(target, config)
        if space is not None:
            _dump_space(space, target, point, config)
            return
        try:
            entry = get_entry(target)
        except KeyError as exc:
            raise click.UsageError(str(exc))
        _dump_entry(entry, point, config)
    except GeometryError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
