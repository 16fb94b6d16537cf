"""
gorlab - command line workbench for the Gorenstein ring R197 and its Poincare series

DESCRIPTION:
    Batch entry point over the Manager modules. Every subcommand prints ✓/✗ status
    lines, or a JSON document on stdout with --json (semigroup info prints JSON by
    default). Logging goes to stderr.

USAGE:
    python app.py [--json] [--config FILE] [--max-degree N] [--field rational|prime]
                  [--verbose] <command> <subcommand> [options]

COMMANDS:
    semigroup info --gens 18,24,25,26,28,30,33 [--text]      (JSON unless --text)
    semigroup symmetrize --gens ... --gbar 197
    semigroup sweep --gens ... --start 197 --stop 221
    presentation verify --rels data/J197.rel [--weights 36,48,...] [--max-degree 300]
    presentation hilbert --rels data/S.rel --max-degree 4
    presentation mingens --rels data/I.rel
    grade solve --rels data/J197.rel
    grade specialize --rels data/I.rel --assign c1=1,c2=1,c3=1
    series verify-theorem1 [--max-x 12] [--max-y 24]
    series expand --num 1 --den "1-3t+t^2" -N 20
    series pbw-invert --num 1 --den "(1+t)(1-2t)^2(1-3t+t^2)" -N 10
    lie dims --file data/eta.lie --max 7
    lie basis --file data/eta.lie --degree 3
    lie ideal --file data/eta.lie --gens "lie[e,lie[b,b]]" --degree 7
    lie ann --file data/eta_bar.lie --elements "..." --degree 3
    lie mult --file data/eta.lie --left modbas[1,1] --right modbas[2,3]
    lie suba --file data/eta_bar.lie --gens "d, e" --max 7
    lie lambda --max 20
    monomial series --alphabet C,D,G --forbidden CC,CDG -N 20
    verify-all [--parallel] [--only lie,series] [--output report.json|report.csv]

EXIT CODES:
    0 success, 1 a check or computation failed, 2 usage or configuration error
"""
import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, Tuple

from ConfigManager import PipelineConfig, PipelineConfigError, get_pipeline_config
from GradingManager import GradingError, homogeneity_system, parse_assignments, solve_gradings, specialize
from LieExpressionManager import DegreeCapExceeded, LieEngineError, LieParseError, read_presentation
from LieManager import GradedLieAlgebra, LieElement, lambda_table
from MonomialManager import MonomialAlgebraError, MonomialAlgebraSpec, hilbert_series
from PresentationManager import (
    PresentationError,
    WeightedRing,
    hilbert_function,
    minimal_generators,
    read_relations,
    relation_degree,
    verify_kernel,
    verify_presentation,
)
from SemigroupManager import NumericalSemigroup, SemigroupError, symmetrization_sweep
from SeriesManager import RationalFn, SeriesError, assemble_theorem1, koszul_dual_series, pbw_invert
from VerificationManager import verify_all

logger = logging.getLogger(__name__)

ERRORS = (
    SemigroupError, PresentationError, GradingError, SeriesError, LieParseError, LieEngineError,
    MonomialAlgebraError, OSError, ValueError,
)

# (payload for --json, lines for text output, success)
Result = Tuple[Dict[str, object], List[str], bool]


class DegreeProgressFilter(logging.Filter):
    """Drops per-degree progress records from the Lie engine."""

    def filter(self, record):
        return not getattr(record, "degree_progress", False)


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if not verbose:
        for handler in logging.getLogger().handlers:
            handler.addFilter(DegreeProgressFilter())


def _mark(ok: bool) -> str:
    return "✓" if ok else "✗"


def _text(value) -> str:
    return ", ".join(str(v) for v in value) if isinstance(value, (list, tuple)) else str(value)


def _integers(text: str) -> List[int]:
    return [int(v) for v in text.replace(" ", ",").split(",") if v]


# ============================================================
# SEMIGROUP
# ============================================================

def cmd_semigroup_info(args, cfg: PipelineConfig) -> Result:
    semigroup = NumericalSemigroup(_integers(args.gens))
    data = semigroup.gap_data()
    payload = {
        "generators": list(semigroup.generators),
        "multiplicity": semigroup.multiplicity,
        "embedding_dimension": semigroup.embedding_dimension,
        "frobenius": data.frobenius,
        "gaps": list(data.gaps),
        "pseudo_frobenius": list(data.pseudo_frobenius),
        "type": data.type,
        "genus": data.genus,
        "symmetric": semigroup.is_symmetric(),
    }
    lines = [f"S = <{_text(semigroup.generators)}>",
             f"  F(S) = {data.frobenius}, PF(S) = ({_text(data.pseudo_frobenius)}), type {data.type}, "
             f"genus {data.genus}",
             f"{_mark(payload['symmetric'])} symmetric: {payload['symmetric']}"]
    return payload, lines, True


def cmd_semigroup_symmetrize(args, cfg: PipelineConfig) -> Result:
    semigroup = NumericalSemigroup(_integers(args.gens))
    result = semigroup.symmetrize(args.gbar)
    payload = {"gbar": args.gbar, "generators": list(result.generators),
               "frobenius": result.frobenius(), "symmetric": result.is_symmetric()}
    lines = [f"✓ S̄_{args.gbar} = ({_text(result.generators)})",
             f"  F = {payload['frobenius']}, symmetric"]
    return payload, lines, True


def cmd_semigroup_sweep(args, cfg: PipelineConfig) -> Result:
    sweep = symmetrization_sweep(NumericalSemigroup(_integers(args.gens)), args.start, args.stop)
    payload = {"sweep": [{"gbar": g, "generators": list(gens)} for g, gens in sweep]}
    lines = [f"✓ {g}: ({_text(gens)})" for g, gens in sweep]
    return payload, lines, True


# ============================================================
# PRESENTATION
# ============================================================

def _load_relations(args):
    relations, ring = read_relations(args.rels)
    if getattr(args, "weights", None):
        if "=" in args.weights:
            pairs = (item.split("=") for item in args.weights.replace(",", " ").split())
            ring = WeightedRing.from_mapping({k.strip(): int(v) for k, v in pairs})
        else:
            names = sorted({v for r in relations for v in r.variables})
            weights = _integers(args.weights)
            if len(weights) != len(names):
                raise PresentationError(f"{len(weights)} weights given for variables {''.join(names)}")
            ring = WeightedRing(names, weights)
    if ring is None:
        raise PresentationError(f"{args.rels} has no '# weights:' header; pass --weights")
    return relations, ring


def cmd_presentation_verify(args, cfg: PipelineConfig) -> Result:
    relations, ring = _load_relations(args)
    semigroup = NumericalSemigroup(ring.weights)
    top = args.degree or cfg.presentation_max_degree
    kernel = verify_kernel(relations, ring, semigroup)
    payload: Dict[str, object] = {"relations": len(relations), "kernel": kernel.detail}
    lines = [f"{_mark(kernel.ok)} kernel: {kernel.detail}"]
    ok = kernel.ok
    if ok:
        presentation = verify_presentation(relations, ring, semigroup, top, cfg.make_field(), cfg.monomial_cap)
        payload["presentation"] = presentation.detail
        lines.append(f"{_mark(presentation.ok)} presentation: {presentation.detail}")
        ok = presentation.ok
    payload["ok"] = ok
    return payload, lines, ok


def cmd_presentation_hilbert(args, cfg: PipelineConfig) -> Result:
    relations, ring = _load_relations(args)
    dims = hilbert_function(relations, ring, args.degree, cfg.make_field())
    return {"hilbert_function": dims}, [f"✓ H(d), d=0..{args.degree}: {_text(dims)}"], True


def cmd_presentation_mingens(args, cfg: PipelineConfig) -> Result:
    relations, ring = _load_relations(args)
    top = max(relation_degree(r, ring) for r in relations)
    kept = minimal_generators(relations, ring, top, cfg.make_field())
    lines = [f"✓ {len(kept)} of {len(relations)} relations are minimal generators"]
    lines += [f"  {r}" for r in kept if len(kept) != len(relations)]
    return {"minimal_generators": [str(r) for r in kept], "count": len(kept)}, lines, True


# ============================================================
# GRADING
# ============================================================

def cmd_grade_solve(args, cfg: PipelineConfig) -> Result:
    relations, _ = read_relations(args.rels)
    solution = solve_gradings(homogeneity_system(relations))
    expressions = {v: str(e) for v, e in solution.expressions().items()}
    payload = {"nullity": solution.nullity, "free_variables": list(solution.free_variables),
               "parametrization": expressions,
               "minimal_integral": list(solution.minimal_integral) if solution.minimal_integral else None,
               "minimal_constants": solution.minimal_constants}
    lines = [f"✓ solution space of dimension {solution.nullity}, "
             f"c1..c{solution.nullity} = {', '.join(solution.free_variables)}"]
    lines += [f"  {v} = {e}" for v, e in expressions.items()]
    if solution.minimal_integral:
        lines.append(f"  minimal integral grading at {solution.minimal_constants}: "
                     f"({_text(solution.minimal_integral)})")
    return payload, lines, True


def cmd_grade_specialize(args, cfg: PipelineConfig) -> Result:
    relations, _ = read_relations(args.rels)
    solution = solve_gradings(homogeneity_system(relations))
    weights = specialize(solution, parse_assignments(args.assign))
    mapping = dict(zip(solution.system.variables, weights))
    lines = [f"✓ {' '.join(f'{v}={w}' for v, w in mapping.items())}"]
    return {"weights": mapping}, lines, True


# ============================================================
# SERIES
# ============================================================

def cmd_series_theorem1(args, cfg: PipelineConfig) -> Result:
    nx = args.max_x or cfg.bigraded_x
    ny = args.max_y or max(cfg.bigraded_y, 2 * nx)
    assembly = assemble_theorem1(koszul_dual_series(nx + 1), nx, ny)
    coefficients = [str(c) for c in assembly.p_rbar197_z.to_list()]
    payload = {"checks": assembly.checks, "p_rbar197_z": coefficients,
               "p_r197_z": [str(c) for c in assembly.p_r197_z.to_list()]}
    lines = [f"{_mark(ok)} {name}" for name, ok in assembly.checks.items()]
    lines.append(f"  P_R̄197(z) = {assembly.p_rbar197_z}")
    return payload, lines, assembly.passed


def cmd_series_expand(args, cfg: PipelineConfig) -> Result:
    order = args.order or cfg.series_order
    function = RationalFn.parse(args.num, args.den)
    series = function.expand(order)
    return ({"function": str(function), "coefficients": [str(c) for c in series]},
            [f"✓ {function}", f"  {series}"], True)


def cmd_series_pbw_invert(args, cfg: PipelineConfig) -> Result:
    order = args.order or cfg.series_order
    dims = pbw_invert(RationalFn.parse(args.num, args.den).expand(order))
    return {"dims": list(dims)}, [f"✓ graded dimensions: {_text(list(dims))}"], True


# ============================================================
# LIE
# ============================================================

def _algebra(args, cfg: PipelineConfig, max_degree: Optional[int] = None) -> GradedLieAlgebra:
    presentation = read_presentation(args.file)
    return GradedLieAlgebra(presentation, max_degree or cfg.lie_max_degree, cfg.make_field())


def _vector_text(coordinates) -> List[str]:
    return [str(c) for c in coordinates]


def cmd_lie_dims(args, cfg: PipelineConfig) -> Result:
    top = args.max or cfg.lie_max_degree
    algebra = _algebra(args, cfg, top)
    dims = algebra.quotient_dims(top)
    return {"dims": dims}, [f"✓ dims 1..{top}: {{{_text(dims)}}}"], True


def cmd_lie_basis(args, cfg: PipelineConfig) -> Result:
    algebra = _algebra(args, cfg, args.degree)
    basis = algebra.quotient_basis(args.degree)
    payload = {"basis": [{"label": b.label, "definition": str(b.definition)} for b in basis]}
    return payload, [f"  {b.label} = {b.definition}" for b in basis], True


def cmd_lie_ideal(args, cfg: PipelineConfig) -> Result:
    algebra = _algebra(args, cfg, max(args.degree, cfg.lie_max_degree))
    subspace = algebra.ideal(args.degree, algebra.resolve_list(args.gens))
    return ({"degree": args.degree, "dimension": subspace.dimension},
            [f"✓ dim ideal({args.degree}) = {subspace.dimension}"], True)


def cmd_lie_ann(args, cfg: PipelineConfig) -> Result:
    algebra = _algebra(args, cfg)
    elements = algebra.resolve_list(args.elements)
    kernel = algebra.ann(elements, args.degree)
    basis = [_vector_text(algebra.coordinates(LieElement(args.degree, v))) for v in kernel.vectors]
    lines = [f"✓ dim ann = {kernel.dimension}"] + [f"  ({', '.join(b)})" for b in basis]
    return {"dimension": kernel.dimension, "basis": basis}, lines, True


def cmd_lie_mult(args, cfg: PipelineConfig) -> Result:
    algebra = _algebra(args, cfg)
    left, right = algebra.resolve(args.left), algebra.resolve(args.right)
    coordinates = _vector_text(algebra.mult(left, right))
    d = left.degree + right.degree
    terms = [f"{c}*modbas[{d},{i + 1}]" for i, c in enumerate(coordinates) if c != "0"]
    return {"degree": d, "coordinates": coordinates}, [f"✓ {' + '.join(terms) or '0'}"], True


def cmd_lie_suba(args, cfg: PipelineConfig) -> Result:
    top = args.max or cfg.lie_max_degree
    algebra = _algebra(args, cfg, top)
    dims = algebra.suba_dims(algebra.resolve_list(args.gens), top)
    return {"dims": dims}, [f"✓ subalgebra dims 1..{top}: {{{_text(dims)}}}"], True


def cmd_lie_lambda(args, cfg: PipelineConfig) -> Result:
    table = lambda_table(args.max)
    problems = table.violations()
    values = {f"{m},{n}": str(v) for (m, n), v in sorted(table.values.items())}
    lines = [f"{_mark(not problems)} lambda table to m+n <= {args.max}: {len(problems)} violations"]
    lines += [f"  {p}" for p in problems]
    lines += [f"  lambda[{k}] = {v}" for k, v in values.items() if sum(map(int, k.split(","))) <= 5]
    return {"values": values, "violations": problems}, lines, not problems


# ============================================================
# MONOMIAL
# ============================================================

def cmd_monomial_series(args, cfg: PipelineConfig) -> Result:
    order = args.order or cfg.series_order
    series, function = hilbert_series(MonomialAlgebraSpec.parse(args.alphabet, args.forbidden), order)
    return ({"coefficients": series.to_list(), "rational_function": str(function)},
            [f"✓ H(t) = {function}", f"  {series}"], True)


# ============================================================
# VERIFY-ALL
# ============================================================

def cmd_verify_all(args, cfg: PipelineConfig) -> Result:
    only = [item.strip() for item in args.only.split(",")] if args.only else None
    report = verify_all(cfg, parallel=args.parallel or None, only=only)
    if args.output:
        if args.output.endswith(".csv"):
            report.to_frame().to_csv(args.output, index=False)
        else:
            with open(args.output, "w", encoding="utf-8") as f:
                f.write(report.to_json() + "\n")
        logger.info("report written to %s", args.output)
    return json.loads(report.to_json()), [report.render()], report.passed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Gorenstein ring R197 computation workbench")
    parser.add_argument("--json", action="store_true", default=None, help="Print JSON on stdout")
    parser.add_argument("--config", type=str, default=None, help="key=value configuration file")
    parser.add_argument("--max-degree", dest="global_max_degree", type=int, default=None,
                        help="Degree cap of the Lie engine (default: 7)")
    parser.add_argument("--field", choices=["rational", "prime"], default=None,
                        help="Coefficient field for linear algebra (default: rational)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Show per-degree progress")
    commands = parser.add_subparsers(dest="command", required=True)

    semigroup = commands.add_parser("semigroup", help="Numerical semigroups").add_subparsers(dest="action", required=True)
    p = semigroup.add_parser("info")
    p.add_argument("--gens", required=True)
    p.add_argument("--text", action="store_true", help="Print status lines instead of JSON")
    p.set_defaults(handler=cmd_semigroup_info, json_default=True)
    p = semigroup.add_parser("symmetrize")
    p.add_argument("--gens", required=True)
    p.add_argument("--gbar", type=int, required=True)
    p.set_defaults(handler=cmd_semigroup_symmetrize)
    p = semigroup.add_parser("sweep")
    p.add_argument("--gens", required=True)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--stop", type=int, required=True)
    p.set_defaults(handler=cmd_semigroup_sweep)

    presentation = commands.add_parser("presentation", help="Binomial presentations").add_subparsers(dest="action", required=True)
    for name, handler in (("verify", cmd_presentation_verify), ("hilbert", cmd_presentation_hilbert),
                          ("mingens", cmd_presentation_mingens)):
        p = presentation.add_parser(name)
        p.add_argument("--rels", required=True, help="Relation file")
        p.add_argument("--weights", default=None, help="36,48,... in variable order, or a=36,b=48,...")
        p.add_argument("--max-degree", dest="degree", type=int, default=None if name != "hilbert" else 4)
        p.set_defaults(handler=handler)

    grade = commands.add_parser("grade", help="Homogeneous gradings").add_subparsers(dest="action", required=True)
    p = grade.add_parser("solve")
    p.add_argument("--rels", required=True)
    p.set_defaults(handler=cmd_grade_solve)
    p = grade.add_parser("specialize")
    p.add_argument("--rels", required=True)
    p.add_argument("--assign", required=True, help="c1=1,c2=1,c3=1")
    p.set_defaults(handler=cmd_grade_specialize)

    series = commands.add_parser("series", help="Power series").add_subparsers(dest="action", required=True)
    p = series.add_parser("verify-theorem1")
    p.add_argument("--max-x", type=int, default=None)
    p.add_argument("--max-y", type=int, default=None)
    p.set_defaults(handler=cmd_series_theorem1)
    for name, handler in (("expand", cmd_series_expand), ("pbw-invert", cmd_series_pbw_invert)):
        p = series.add_parser(name)
        p.add_argument("--num", default="1")
        p.add_argument("--den", default="1")
        p.add_argument("-N", dest="order", type=int, default=None)
        p.set_defaults(handler=handler)

    lie = commands.add_parser("lie", help="Graded Lie superalgebras").add_subparsers(dest="action", required=True)
    p = lie.add_parser("dims")
    p.add_argument("--file", required=True)
    p.add_argument("--max", type=int, default=None)
    p.set_defaults(handler=cmd_lie_dims)
    p = lie.add_parser("basis")
    p.add_argument("--file", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=cmd_lie_basis)
    p = lie.add_parser("ideal")
    p.add_argument("--file", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=cmd_lie_ideal)
    p = lie.add_parser("ann")
    p.add_argument("--file", required=True)
    p.add_argument("--elements", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=cmd_lie_ann)
    p = lie.add_parser("mult")
    p.add_argument("--file", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(handler=cmd_lie_mult)
    p = lie.add_parser("suba")
    p.add_argument("--file", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--max", type=int, default=None)
    p.set_defaults(handler=cmd_lie_suba)
    p = lie.add_parser("lambda")
    p.add_argument("--max", type=int, default=20)
    p.set_defaults(handler=cmd_lie_lambda)

    monomial = commands.add_parser("monomial", help="Monomial algebras").add_subparsers(dest="action", required=True)
    p = monomial.add_parser("series")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--forbidden", required=True)
    p.add_argument("-N", dest="order", type=int, default=None)
    p.set_defaults(handler=cmd_monomial_series)

    p = commands.add_parser("verify-all", help="Run every check of the R197 chain")
    p.add_argument("--parallel", action="store_true", help="Run independent check groups in threads")
    p.add_argument("--only", default=None, help="Comma-separated check names or groups")
    p.add_argument("--output", "-o", default=None, help="Write the report to a .json or .csv file")
    p.set_defaults(handler=cmd_verify_all)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    overrides = {"json_output": args.json, "lie_max_degree": args.global_max_degree, "field": args.field}
    try:
        cfg = get_pipeline_config(args.config, overrides)
    except PipelineConfigError as e:
        print(f"✗ configuration error: {e}", file=sys.stderr)
        return 2

    try:
        payload, lines, ok = args.handler(args, cfg)
    except DegreeCapExceeded as e:
        payload, lines, ok = {"error": str(e), "skipped": True}, [f"✗ {e} (raise --max-degree)"], False
    except ERRORS as e:
        logger.debug("command failed", exc_info=True)
        payload, lines, ok = {"error": f"{type(e).__name__}: {e}"}, [f"✗ {type(e).__name__}: {e}"], False

    if cfg.json_output or (getattr(args, "json_default", False) and not args.text):
        print(json.dumps(payload, indent=2, ensure_ascii=False, default=str))
    else:
        print("\n".join(lines))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
