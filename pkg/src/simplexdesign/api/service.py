"""Command implementations shared by the HTTP app and the CLI.

Each function takes a request model and returns a response model; nothing
here touches the filesystem or the network, so the CLI can call these
in-process and the HTTP layer stays a thin adapter.
"""

from __future__ import annotations

from fractions import Fraction

from .. import algebra, construct, moments, plotting, verify
from ..core import DesignSet, MultiIndex, format_float
from ..designfile import design_from_json, design_to_json
from ..perm import PermGroup, perm_from_json
from . import schemas


def design_from_model(model: schemas.DesignFile) -> DesignSet:
    return design_from_json(model.model_dump(mode="json", exclude_none=True))


def design_to_model(design: DesignSet) -> schemas.DesignFile:
    return schemas.DesignFile.model_validate(design_to_json(design))


def group_from_spec(spec, d: int) -> PermGroup:
    if spec == "sym":
        return PermGroup.symmetric(d)
    if spec == "cyc":
        return PermGroup.cyclic(d)
    if isinstance(spec, schemas.GeneratedGroup):
        gens = [perm_from_json(g) for g in spec.generators]
        if any(len(g) != d for g in gens):
            raise ValueError("generator length does not match d")
        return PermGroup.generated(d, gens)
    raise ValueError(f"unrecognized group spec {spec!r}")


def _verify_model(result: verify.VerificationResult) -> schemas.VerifyResponse:
    return schemas.VerifyResponse.model_validate(result.to_json())


def run_verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    design = design_from_model(req.design)
    if req.method == "restricted":
        if req.restricted is None:
            raise ValueError("restricted verification needs a group")
        group = group_from_spec(req.restricted, design.d)
        result = verify.verify_G_restricted(design, req.t, group, req.tolerance)
    elif req.method == "power-sum":
        base = design.base_points if design.group is not None else design.points
        result = verify.verify_power_sum_criterion(list(base), req.t, req.tolerance)
    else:
        result = verify.verify_brute_force(design, req.t, req.tolerance,
                                           canonical_only=req.canonical_only)
    return _verify_model(result)


def run_construct(req: schemas.ConstructRequest) -> schemas.ConstructResponse:
    solutions: list = []
    designs: list[schemas.DesignFile] = []
    if req.family == "three-value":
        for sol in construct.distinct_family_solutions(req.d):
            if not sol.proper and not req.include_pseudo:
                continue
            solutions.append(schemas.ThreeValueSolution.model_validate(sol.to_json()))
            designs.append(design_to_model(construct.build_design(sol)))
    else:
        for sol in construct.uniform_excess_family(req.d):
            if not sol.proper and not req.include_pseudo:
                continue
            solutions.append(schemas.UniformExcessSolution.model_validate(sol.to_json()))
            designs.append(design_to_model(
                DesignSet.orbit([sol.base_point()], PermGroup.symmetric(req.d))))
    if not solutions:
        raise ValueError(
            f"no {'solution' if req.include_pseudo else 'proper solution'} "
            f"for family {req.family!r} at d = {req.d}")
    return schemas.ConstructResponse(family=req.family, d=req.d,
                                     solutions=solutions, designs=designs)


def run_tables() -> schemas.TablesResponse:
    rows: list[schemas.TableRow] = []
    for d in construct.TABLE_PROPER_DIMS:
        for sol in construct.distinct_family_solutions(d):
            if sol.proper:
                rows.append(schemas.TableRow(table="proper", d=d, a=sol.a,
                                             b=sol.b, c=sol.c, proper=True))
    for d in construct.TABLE_IMPROPER_DIMS:
        for sol in construct.distinct_family_solutions(d):
            if not sol.proper:
                rows.append(schemas.TableRow(table="improper", d=d, a=sol.a,
                                             b=sol.b, c=sol.c, proper=False))
    lines = ["table,d,a,b,1-a-b,proper"]
    for r in rows:
        lines.append(",".join([r.table, str(r.d), format_float(r.a),
                               format_float(r.b), format_float(r.c),
                               str(r.proper).lower()]))
    return schemas.TablesResponse(rows=rows, csv="\n".join(lines) + "\n")


def _span_check(label: str, group: PermGroup, k, basis_indices,
                adjoin_constant=False) -> tuple[schemas.SpanCheck, object]:
    cand = algebra.symmetrized_monomial(group, k)
    basis = [algebra.symmetrized_monomial(group, j) for j in basis_indices]
    ok, coeffs = algebra.in_span(cand, basis, adjoin_constant=adjoin_constant)
    return schemas.SpanCheck(label=label, in_span=ok), coeffs


def run_counterexample(tolerance: float = verify.DEFAULT_TOLERANCE) -> schemas.CounterexampleResponse:
    c3 = PermGroup.cyclic(3)
    cyclic = construct.cyclic_design()
    mirror = construct.mirror_design()

    lines = ["Cyclic orbit of the degree-3 construction, brute-force moments"
             " to degree 3:"]
    result = verify.verify_brute_force(cyclic, 3, tolerance, canonical_only=False)
    moment_rows = []
    failure_residual = 0.0
    for rep in result.reports:
        if not rep.index.is_canonical():
            continue
        moment_rows.append(schemas.MomentReport.model_validate(rep.to_json()))
        mark = "ok" if rep.passes(tolerance, exact=False) else "FAIL"
        lines.append(f"  {tuple(rep.index)}: observed {format_float(float(rep.observed))}"
                     f" target {rep.target} |residual| "
                     f"{format_float(rep.abs_residual)}  {mark}")
        if tuple(rep.index) == (2, 1, 0):
            failure_residual = rep.abs_residual

    k_fail = MultiIndex((2, 1, 0))
    avg = (moments.monomial_average(cyclic, k_fail)
           + moments.monomial_average(mirror, k_fail)) / 2
    mirror_residual = abs(float(avg - moments.simplex_moment(k_fail)))
    lines.append("Averaging the cyclic orbit with its mirror image restores the"
                 " moment:")
    lines.append(f"  (2, 1, 0): mirror-averaged {format_float(float(avg))}"
                 f" target 1/30 |residual| {format_float(mirror_residual)}")

    lines.append("Span membership, exact arithmetic:")
    spans = []
    check, _ = _span_check("F_C3(2,1,0) vs {F_C3(j,0,0): j <= 3}", c3,
                           (2, 1, 0), [(1, 0, 0), (2, 0, 0), (3, 0, 0)])
    spans.append(check)
    check, _ = _span_check("F_C4(1,0,1,0) vs {F_C4(1,0,0,0), F_C4(2,0,0,0)}",
                           PermGroup.cyclic(4), (1, 0, 1, 0),
                           [(1, 0, 0, 0), (2, 0, 0, 0)])
    spans.append(check)
    check, _ = _span_check("F_S3(2,1,0) vs {F_S3(j,0,0): j <= 3}",
                           PermGroup.symmetric(3), (2, 1, 0),
                           [(1, 0, 0), (2, 0, 0), (3, 0, 0)])
    spans.append(check)
    for s in spans:
        lines.append(f"  {s.label}: {'IN SPAN' if s.in_span else 'NOT IN SPAN'}")

    repair = verify.verify_brute_force(construct.six_point_design(), 3, tolerance)
    lines.append("Full symmetric orbit of the same roots:")
    lines.append(f"  6-point orbit at t = 3: "
                 f"{'passes' if repair.is_design else 'fails'}, max |residual| "
                 f"{format_float(repair.max_abs_residual)}")

    return schemas.CounterexampleResponse(
        moment_rows=moment_rows,
        failure_residual=failure_residual,
        mirror_residual=mirror_residual,
        spans=spans,
        repair_max_residual=repair.max_abs_residual,
        repair_passes=repair.is_design,
        text="\n".join(lines) + "\n",
    )


def run_span(req: schemas.SpanRequest) -> schemas.SpanResponse:
    group = group_from_spec(req.group, req.d)
    if len(req.k) != req.d or any(len(j) != req.d for j in req.basis):
        raise ValueError("exponent vectors must have length d")
    check, coeffs = _span_check("custom", group, tuple(req.k),
                                [tuple(j) for j in req.basis],
                                adjoin_constant=req.adjoin_constant)
    return schemas.SpanResponse(
        d=req.d, group=group.label, k=list(req.k), in_span=check.in_span,
        coefficients=None if coeffs is None else [str(Fraction(c)) for c in coeffs])


def run_plot(req: schemas.PlotRequest) -> str:
    design = None if req.design is None else design_from_model(req.design)
    poly = None
    if req.k is not None:
        k = MultiIndex(req.k)
        if req.group is None:
            poly = algebra.SymPoly.monomial(k)
        else:
            poly = algebra.symmetrized_monomial(group_from_spec(req.group, k.dimension), k)
    return plotting.render_svg(poly=poly, design=design,
                               grid=req.grid, levels=req.levels)
