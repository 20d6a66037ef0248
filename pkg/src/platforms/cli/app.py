"""命令行入口

退出码: 0 成功或判定为真, 1 判定为假, 2 输入错误; corpus 命令以失败例题数退出 (至多 125)。
stdout 只输出报告, 错误信息写到 stderr。
"""

import functools
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import click
from pydantic import ValidationError

from ...core import algebra
from ...core.models.forms import ROOT_NAMES, FormClass, RootCoefficients
from ...core.models.geometry import CHRISTOFFEL_NAMES, ChristoffelSet, GaugeChoice, MetricState
from ...core.models.report import (
    ClassificationModel,
    CorpusModel,
    CriteriaModel,
    CurvatureModel,
    ExactModel,
    GaugeModel,
    GenerateModel,
    MetricModel,
)
from ...core.parser import parse, parse_rational, print_canonical, print_rational
from ...services.corpus.runner import CorpusRunner
from ...services.geometry.curvature import complete, curvature, geodesic_conditions
from ...services.geometry.gauge import GaugeSearch
from ...services.geometry.metric import MetricIntegrator, path_independence_check
from ...services.linearize.catalog import readout
from ...services.linearize.classifier import EquationClassifier, Verdict
from ...services.linearize.criteria import lie_form, tresse_criteria
from ...services.linearize.exactness import is_total_derivative
from ...services.linearize.generator import generate
from ...utils.config_manager import ConfigManager
from ...utils.exceptions import AppError, ExpressionSyntaxError, GaugeNotFound, NotExact
from ...utils.logger import Logger
from ...utils.validators import CliConfig, GeometrySettings

logger = Logger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
MAX_EXIT = 125


class InputError(click.ClickException):
    """输入错误, 以退出码 2 结束"""

    exit_code = EXIT_INPUT

    def show(self, file=None) -> None:
        click.echo(f"error: {self.message}", err=True)


def _syntax_message(e: ExpressionSyntaxError) -> str:
    lines = [e.message]
    if e.text:
        lines.append(f"  {e.text}")
        lines.append("  " + " " * (e.position - 1) + "^")
    return "\n".join(lines)


def handle_errors(func):
    """把领域异常与配置校验错误映射为退出码 2"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ExpressionSyntaxError as e:
            raise InputError(_syntax_message(e))
        except AppError as e:
            logger.debug(f"命令失败: {e.code}: {e.message}")
            raise InputError(f"{e.code}: {e.message}")
        except ValidationError as e:
            messages = "; ".join(err["msg"] for err in e.errors())
            raise InputError(messages)
        except ValueError as e:
            raise InputError(str(e))

    return wrapper


def format_option(func):
    default = ConfigManager().get("output", "format", "text")
    return click.option(
        "--format", "output_format", type=click.Choice(["text", "json"]),
        default=default, show_default=True, help="Output format.",
    )(func)


def params_option(func):
    return click.option(
        "--params", "parameters", default="", help="Comma-separated parameter names, e.g. k,l."
    )(func)


def root_options(func):
    for name in reversed(ROOT_NAMES):
        func = click.option(f"--{name}", name, default="0", show_default=True,
                            help=f"Root coefficient {name}.")(func)
    return func


def christoffel_options(func):
    for name in reversed(CHRISTOFFEL_NAMES):
        func = click.option(f"--{name}", name, default="0", show_default=True,
                            help=f"Geodesic-system coefficient {name}.")(func)
    return func


def _emit(model, output_format: str) -> None:
    click.echo(model.to_json() if output_format == "json" else model.to_text())


def _is_file(source: str) -> bool:
    try:
        return Path(source).is_file()
    except OSError:
        return False


def _read_input(source: Optional[str]) -> str:
    """行内表达式、文件路径或 stdin"""
    if source is None or source == "-":
        text = click.get_text_stream("stdin").read()
    elif _is_file(source):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    text = text.strip()
    if not text:
        raise InputError("empty input")
    return text


def _root(values: Dict[str, str], parameters: Sequence[str]) -> RootCoefficients:
    return RootCoefficients.from_mapping(
        {name: parse_rational(values[name], parameters) for name in ROOT_NAMES}
    )


def _christoffel(values: Dict[str, str], parameters: Sequence[str]) -> ChristoffelSet:
    return ChristoffelSet.from_mapping(
        {name: parse_rational(values[name], parameters) for name in CHRISTOFFEL_NAMES}
    )


def _text_map(values) -> Dict[str, str]:
    return {k: print_rational(v) for k, v in values.items()}


def _point(raw: str) -> Tuple[float, float]:
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 2:
        raise ValueError(f"point {raw!r} must be 'x,y'")
    return float(parts[0]), float(parts[1])


def _path(raw: str) -> List[Tuple[float, float]]:
    return [_point(p) for p in raw.split(";") if p.strip()]


def _parameter_values(raw: str) -> Dict[str, float]:
    values = {}
    for part in filter(None, (p.strip() for p in raw.split(","))):
        if "=" not in part:
            raise ValueError(f"parameter value {part!r} must be name=number")
        name, value = part.split("=", 1)
        values[name.strip()] = float(value)
    return values


@click.group()
@click.version_option(version="0.1.0", prog_name="condlin")
def cli():
    """Exact classification of conditionally linearizable scalar ODEs of orders 2 to 4."""


@cli.command()
@click.argument("source", required=False)
@params_option
@format_option
@click.option("--no-audit", is_flag=True, help="Skip the transcribed-relation audit.")
@handle_errors
def classify(source, parameters, output_format, no_audit):
    """Classify an equation (inline text, file path or '-' for stdin)."""
    config = CliConfig(command="classify", input=source, parameters=parameters,
                       output_format=output_format)
    text = _read_input(config.input)
    report = EquationClassifier(run_audit=not no_audit).classify(parse(text, config.parameters))
    _emit(ClassificationModel.from_report(report, text), config.output_format)
    sys.exit(EXIT_OK if report.verdict is Verdict.LINEARIZABLE else EXIT_FALSE)


@cli.command(name="generate")
@root_options
@click.option("--class", "form", required=True, help="Target class, e.g. fourth21.")
@params_option
@format_option
@click.option("--json", "as_json", is_flag=True, help="Same as --format json.")
@handle_errors
def generate_command(c, g, h, d, form, parameters, output_format, as_json):
    """Generate the class form of a root equation."""
    config = CliConfig(command="generate", parameters=parameters,
                       output_format="json" if as_json else output_format)
    form = FormClass.parse(form)
    root = _root({"c": c, "g": g, "h": h, "d": d}, config.parameters)
    equation = generate(root, form)
    model = GenerateModel(
        form=form.value,
        root=_text_map(root.as_dict()),
        equation=print_canonical(equation),
        coefficients=_text_map(readout(equation, form).named),
    )
    _emit(model, config.output_format)


@cli.command()
@root_options
@params_option
@format_option
@handle_errors
def criteria(c, g, h, d, parameters, output_format):
    """Evaluate the two linearizability criteria of a root equation."""
    config = CliConfig(command="criteria", parameters=parameters, output_format=output_format)
    root = _root({"c": c, "g": g, "h": h, "d": d}, config.parameters)
    residuals = tresse_criteria(root)
    model = CriteriaModel(
        root=_text_map(root.as_dict()),
        criteria=[print_rational(r) for r in residuals],
        linearizable=not any(residuals),
        lie_form=_text_map(lie_form(root).named),
    )
    _emit(model, config.output_format)
    sys.exit(EXIT_OK if model.linearizable else EXIT_FALSE)


@cli.command(name="curvature")
@christoffel_options
@params_option
@format_option
@handle_errors
def curvature_command(a, b, c, d, e, f, parameters, output_format):
    """Curvature components and flatness conditions of a geodesic-type system."""
    config = CliConfig(command="curvature", parameters=parameters, output_format=output_format)
    cs = _christoffel({"a": a, "b": b, "c": c, "d": d, "e": e, "f": f}, config.parameters)
    conditions = geodesic_conditions(cs)
    model = CurvatureModel(
        coefficients=_text_map(cs.as_dict()),
        components=_text_map(curvature(cs).as_dict()),
        conditions=[print_rational(r) for r in conditions],
        flat=algebra.is_zero(conditions),
    )
    _emit(model, config.output_format)
    sys.exit(EXIT_OK if model.flat else EXIT_FALSE)


@cli.command()
@root_options
@params_option
@format_option
@click.option("--bound", type=int, default=None, help="Exponent bound of the gauge search (0-3).")
@click.option("--gauge", "override", default=None, help="Use this gauge instead: 'b=...,e=...'.")
@handle_errors
def gauge(c, g, h, d, parameters, output_format, bound, override):
    """Search for a gauge (b, e) that makes the completed system flat."""
    settings = GeometrySettings.from_config()
    config = CliConfig(
        command="gauge", parameters=parameters, output_format=output_format,
        gauge=override, gauge_bound=settings.gauge_bound if bound is None else bound,
    )
    root = _root({"c": c, "g": g, "h": h, "d": d}, config.parameters)
    model = GaugeModel(root=_text_map(root.as_dict()), found=False)
    try:
        if config.gauge is not None:
            choice = _gauge_choice(config.gauge, config.parameters)
            if not algebra.is_zero(geodesic_conditions(complete(root, choice))):
                raise GaugeNotFound("the given gauge does not flatten the root")
        else:
            choice = GaugeSearch(settings).search(root, config.gauge_bound)
    except GaugeNotFound as e:
        model.message = e.message
        _emit(model, config.output_format)
        sys.exit(EXIT_FALSE)
    model.found = True
    model.gauge = {"b": print_rational(choice.b), "e": print_rational(choice.e)}
    model.coefficients = _text_map(complete(root, choice).as_dict())
    _emit(model, config.output_format)


def _gauge_choice(values: Dict[str, str], parameters: Sequence[str]) -> GaugeChoice:
    return GaugeChoice(parse_rational(values.get("b", "0"), parameters),
                       parse_rational(values.get("e", "0"), parameters))


@cli.command()
@christoffel_options
@params_option
@format_option
@click.option("--start", default="1,1", show_default=True, help="Start point 'x,y'.")
@click.option("--initial", default="1,0,1", show_default=True, help="Initial metric 'p,q,r'.")
@click.option("--path", "path_text", required=True, help="Polyline 'x1,y1;x2,y2;...'.")
@click.option("--values", "values_text", default="", help="Numeric parameter values 'k=1,l=2'.")
@click.option("--steps", type=int, default=None, help="RK4 steps per unit length.")
@click.option("--tolerance", type=float, default=None, help="Path-independence tolerance.")
@click.option("--check", is_flag=True, help="Compare axis-first and diagonal paths to the end point.")
@handle_errors
def metric(a, b, c, d, e, f, parameters, output_format, start, initial, path_text,
           values_text, steps, tolerance, check):
    """Integrate the metric equations along a polyline."""
    settings = GeometrySettings.from_config()
    config = CliConfig(
        command="metric", parameters=parameters, output_format=output_format,
        tolerance=settings.tolerance if tolerance is None else tolerance,
        steps=settings.steps_per_unit if steps is None else steps,
    )
    cs = _christoffel({"a": a, "b": b, "c": c, "d": d, "e": e, "f": f}, config.parameters)
    p, q, r = (float(v) for v in initial.split(","))
    state = MetricState(p=p, q=q, r=r)
    origin, path = _point(start), _path(path_text)
    if not path:
        raise ValueError("path needs at least one point")
    values = _parameter_values(values_text)
    integrator = MetricIntegrator(cs, settings, values)
    final = integrator.integrate(origin, state, path, config.steps)
    model = MetricModel(
        coefficients=_text_map(cs.as_dict()),
        start=list(origin),
        initial=state.model_dump(),
        path=[list(point) for point in path],
        final=final.model_dump(),
    )
    if check:
        report = path_independence_check(cs, origin, state, [path[-1]], config.tolerance,
                                         config.steps, values)
        model.max_discrepancy = report.max_discrepancy
        model.independent = report.independent
    _emit(model, config.output_format)
    sys.exit(EXIT_FALSE if model.independent is False else EXIT_OK)


@cli.command()
@click.argument("source", required=False)
@params_option
@format_option
@handle_errors
def exact(source, parameters, output_format):
    """Decide whether an equation is a total derivative."""
    config = CliConfig(command="exact", input=source, parameters=parameters,
                       output_format=output_format)
    text = _read_input(config.input)
    f = parse(text, config.parameters)
    try:
        model = ExactModel(input=text, exact=True,
                           antiderivative=print_canonical(is_total_derivative(f)))
    except NotExact as e:
        model = ExactModel(input=text, exact=False, obstruction=e.message)
    _emit(model, config.output_format)
    sys.exit(EXIT_OK if model.exact else EXIT_FALSE)


@cli.command()
@format_option
@click.option("--cases", "case_text", default="", help="Comma-separated case ids, e.g. 6,7,8.")
@click.option("--perturb", multiple=True,
              help="Fault injection 'ID:name=delta', e.g. '4:d=y^3'.")
@handle_errors
def corpus(output_format, case_text, perturb):
    """Classify every corpus case; exit code is the number of failures."""
    config = CliConfig(command="corpus", output_format=output_format)
    case_ids = [int(p) for p in case_text.split(",") if p.strip()] or None
    changes: Dict[int, Dict[str, str]] = {}
    for item in perturb:
        head, _, body = item.partition(":")
        changes.setdefault(int(head), {}).update(_parse_perturbation(body))
    summary = CorpusRunner().run(case_ids, changes)
    _emit(CorpusModel.from_summary(summary), config.output_format)
    sys.exit(min(len(summary.failures), MAX_EXIT))


def _parse_perturbation(raw: str) -> Dict[str, str]:
    """'name=value' 形式, 名称限定为根系数"""
    name, sep, value = raw.partition("=")
    name = name.strip()
    if not sep or name not in ROOT_NAMES:
        raise ValueError(f"perturbation {raw!r} must be one of c, g, h, d followed by =value")
    return {name: value.strip()}


def main() -> None:
    cli(prog_name="condlin")
