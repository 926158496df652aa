import time
from functools import wraps
from pathlib import Path
from typing import Callable, Optional

import typer
from loguru import logger

from src.cli.manifest import RunManifest
from src.cli.render import OutputFormat, Printer
from src.config.config import settings
from src.config.di import AppContainer
from src.core.domain.errors import Error, SynthesisError
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure
from src.modules.clone.domain.entity.term_table import ClosureFailure
from src.modules.congruences.application.dto.congruence import CongruenceDto, PropertyReportDto
from src.modules.congruences.domain.entity.context import RelCongruenceContext
from src.modules.definability.domain.entity.query import DefinabilityQuery
from src.modules.formulas.application.service.printer import print_formula, print_term
from src.modules.formulas.domain.enums import OPEN_CLASSES, SyntacticClass
from src.modules.subpowers.domain.entity.subuniverse import Subuniverse
from src.modules.subpowers.domain.enums import MapKind
from src.modules.terminterp.domain.entity.problem import InterpolationProblem
from src.modules.terminterp.domain.entity.report import InterpolationFailure
from src.modules.terminterp.domain.enums import CaseClass

app = typer.Typer(
    name="definability",
    help="Definability, congruence and term interpolation checks over finite algebras.",
    no_args_is_help=True,
    add_completion=False,
)
container = AppContainer()

ALGEBRAS_HELP = "Algebra files (JSON) or built-in names: stone3, heyting3, bool2, demorganM."
FORMAT_OPTION = typer.Option(OutputFormat.TEXT, "--format", case_sensitive=False, help="Output format.")


def exits(command: Callable[..., int]) -> Callable[..., None]:
    """Turn a command's return value and domain errors into process exit codes."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        printer = Printer(kwargs.get("output_format", OutputFormat.TEXT), settings.JSON_SCHEMA_VERSION)
        try:
            code = command(*args, **kwargs)
        except Error as e:
            printer.error(command.__name__, e)
            raise typer.Exit(e.exit_code)
        raise typer.Exit(code or 0)

    return wrapper


def _symbols(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [symbol.strip() for symbol in text.split(",") if symbol.strip()]


def _load(algebras: list[str]) -> list[FiniteStructure]:
    return container.algebra.service().load_many(algebras)


def _language(members: list[FiniteStructure], sublanguage: str | None) -> Signature | None:
    names = _symbols(sublanguage)
    return members[0].signature.restrict(names) if names is not None else None


def _element(structure: FiniteStructure, token: str) -> int:
    """Digits are positions in the universe; anything else is an element label."""
    if not token.isdigit():
        return structure.element_index(token)
    value = int(token)
    if not 0 <= value < structure.size:
        raise typer.BadParameter(f"{structure.name}: element {value} outside universe")
    return value


@app.command()
@exits
def check(
    algebras: list[str] = typer.Argument(..., help=ALGEBRAS_HELP),
    syntactic_class: SyntacticClass = typer.Option(..., "--class", case_sensitive=False, help="Syntactic class."),
    target: str = typer.Option(..., "--target", help="A relation symbol or comma separated function symbols."),
    sublanguage: Optional[str] = typer.Option(None, "--sublanguage", help="Comma separated symbols allowed."),
    max_product_coords: Optional[int] = typer.Option(None, "--max-product-coords", min=1),
    max_poly_arity: Optional[int] = typer.Option(None, "--max-poly-arity", min=1),
    emit_witness: bool = typer.Option(False, "--emit-witness", help="Print only the witness formula."),
    oracle_depth: Optional[int] = typer.Option(None, "--oracle-depth", min=0, help="Cross-check open classes."),
    assume_cd: bool = typer.Option(False, "--assume-cd", help="Members are FSI in a relatively CD class."),
    assume_rs: bool = typer.Option(False, "--assume-rs", help="Members are relatively simple."),
    manifest: Optional[Path] = typer.Option(None, "--manifest", dir_okay=False, help="Write a run manifest here."),
    output_format: OutputFormat = FORMAT_OPTION,
) -> int:
    """Decide whether the target is definable by a formula of the given class."""
    started = time.perf_counter()
    printer = Printer(output_format, settings.JSON_SCHEMA_VERSION)
    members = _load(algebras)
    options = {
        "max_product_coords": max_product_coords,
        "max_poly_arity": max_poly_arity,
        "oracle_depth": oracle_depth,
        "assume_cd": assume_cd,
        "assume_rs": assume_rs,
    }
    query = DefinabilityQuery.create(
        members,
        _symbols(target),
        syntactic_class,
        language=_language(members, sublanguage),
        settings=settings,
        **{key: value for key, value in options.items() if value is not None},
    )
    service = container.definability.service()
    verdict = service.check(query)
    oracle = None
    if oracle_depth is not None and syntactic_class in OPEN_CLASSES:
        oracle = service.oracle_search(query, oracle_depth)
        if oracle.found and not verdict.is_definable and verdict.exit_code != 3:
            raise SynthesisError(f"Depth {oracle_depth} formula {print_formula(oracle.witness)} defines the target")
    dto = printer.verdict(query, verdict, emit_witness=emit_witness, oracle=oracle)
    if manifest is not None:
        RunManifest.from_verdict(
            dto,
            inputs={source: container.algebra.service().digest(source) for source in algebras},
            exit_code=verdict.exit_code,
            tool=settings.APP_NAME,
            tool_version=settings.VERSION,
            wall_time_seconds=time.perf_counter() - started,
        ).write(manifest)
        logger.info("Manifest written to {path}", path=str(manifest))
    return verdict.exit_code


@app.command()
@exits
def translate(
    algebras: list[str] = typer.Argument(..., help=ALGEBRAS_HELP),
    formula: str = typer.Option(..., "--formula", help="An open formula in the s-expression syntax."),
    sublanguage: Optional[str] = typer.Option(None, "--sublanguage"),
    output_format: OutputFormat = FORMAT_OPTION,
) -> int:
    """Rewrite an open formula as an equivalent conjunction of atoms, if there is one."""
    printer = Printer(output_format, settings.JSON_SCHEMA_VERSION)
    members = _load(algebras)
    parsed = container.formulas.service().parse(formula, members[0].signature)
    language = _language(members, sublanguage) or members[0].signature
    verdict = container.definability.service().translate_to_equations(members, parsed, language)
    result = {"formula": print_formula(parsed), "verdict": verdict.kind.value}
    if verdict.witness is not None:
        result["witness"] = print_formula(verdict.witness)
    if verdict.counterexample is not None:
        result["counterexample"] = verdict.counterexample.describe()
    detail = "\n".join(verdict.render().splitlines()[1:])
    return printer.report("translate", verdict.kind.value, verdict.exit_code, detail, result)


@app.command()
@exits
def term(
    algebras: list[str] = typer.Argument(..., help=ALGEBRAS_HELP),
    majority: bool = typer.Option(False, "--majority", help="Find a majority term."),
    discriminator: bool = typer.Option(False, "--discriminator", help="Find a ternary discriminator term."),
    represent: Optional[str] = typer.Option(None, "--represent", help="Find a term for this operation symbol."),
    baker_pixley: bool = typer.Option(False, "--baker-pixley", help="With --represent: use the majority route."),
    pixley: bool = typer.Option(False, "--pixley", help="Quasiprimality report."),
    sublanguage: Optional[str] = typer.Option(None, "--sublanguage"),
    output_format: OutputFormat = FORMAT_OPTION,
) -> int:
    """Search the clone of the members for special terms."""
    if sum([majority, discriminator, represent is not None, pixley]) != 1:
        raise typer.BadParameter("choose exactly one of --majority, --discriminator, --represent, --pixley")
    printer = Printer(output_format, settings.JSON_SCHEMA_VERSION)
    members = _load(algebras)
    language = _language(members, sublanguage)
    reducts = [member.reduct(language) for member in members] if language is not None else members
    clone = container.clone.service()

    if pixley:
        report = container.terminterp.service().pixley_check(reducts)
        result = {"quasiprimal": report.quasiprimal}
        if report.discriminator is not None:
            result["discriminator"] = print_term(report.discriminator)
        status = "quasiprimal" if report.quasiprimal else "not quasiprimal"
        return printer.report("term", status, report.exit_code, report.render(), result)

    if represent is not None:
        if baker_pixley:
            problem = InterpolationProblem.create(members, represent, language=language)
            found = container.terminterp.service().baker_pixley_term(problem)
        else:
            found = clone.find_representing_term(members, represent, language)
        if isinstance(found, (ClosureFailure, InterpolationFailure)):
            return printer.report("term", "not-representable", 1, found.render(), {"failure": found.render()})
        return printer.report("term", "representable", 0, print_term(found), {"term": print_term(found)})

    found = clone.find_majority_term(reducts) if majority else clone.find_discriminator_term(reducts)
    kind = "majority" if majority else "discriminator"
    if found is None:
        return printer.report("term", f"no {kind} term", 1, result={"kind": kind})
    result = {"kind": kind, "term": print_term(found)}
    lines = [print_term(found)]
    if discriminator:
        result["quaternary"] = print_term(clone.quaternary_discriminator(found))
        lines.append(f"quaternary: {result['quaternary']}")
    return printer.report("term", f"{kind} term", 0, "\n".join(lines), result)


@app.command()
@exits
def cases(
    algebras: list[str] = typer.Argument(..., help=ALGEBRAS_HELP),
    target: str = typer.Option(..., "--target", help="Operation symbol to define by cases."),
    case_class: CaseClass = typer.Option(CaseClass.OPEN, "--class", case_sensitive=False),
    sublanguage: Optional[str] = typer.Option(None, "--sublanguage"),
    merge: bool = typer.Option(False, "--merge", help="Merge the cases with a discriminator term."),
    output_format: OutputFormat = FORMAT_OPTION,
) -> int:
    """Define an operation piecewise by terms under open (or positive open) conditions."""
    printer = Printer(output_format, settings.JSON_SCHEMA_VERSION)
    members = _load(algebras)
    language = _language(members, sublanguage)
    problem = InterpolationProblem.create(members, target, language=language, case_class=case_class)
    service = container.terminterp.service()
    definition = service.find_term_by_cases(problem)
    if isinstance(definition, InterpolationFailure):
        return printer.report("cases", "no case definition", 1, definition.render(), {"failure": definition.render()})
    rendered = [{"term": print_term(t), "condition": print_formula(phi)} for t, phi in definition.cases]
    lines = [f"{item['term']}  if  {item['condition']}" for item in rendered]
    result = {"target": target, "cases": rendered}
    if merge:
        discriminator = container.clone.service().find_discriminator_term(problem.reducts)
        if discriminator is None:
            return printer.report("cases", "no discriminator term", 1, "\n".join(lines), result)
        merged = service.merge_cases_discriminator(problem, definition, discriminator)
        result["merged"] = print_term(merged)
        lines.append(f"merged: {result['merged']}")
    return printer.report("cases", f"{len(definition)} case(s)", 0, "\n".join(lines), result)


@app.command()
@exits
def cong(
    algebras: list[str] = typer.Argument(..., help=ALGEBRAS_HELP),
    principal: Optional[tuple[str, str]] = typer.Option(None, "--principal", help="Cg(a, b) of the first algebra."),
    relative: bool = typer.Option(False, "--relative", help="Relative to the quasivariety of all given algebras."),
    lattice: bool = typer.Option(False, "--lattice", help="List the congruence lattice of the first algebra."),
    cep: bool = typer.Option(False, "--cep", help="Relative congruence extension property."),
    fraser_horn: bool = typer.Option(False, "--fraser-horn", help="Fraser-Horn property on binary products."),
    skew: bool = typer.Option(False, "--skew", help="Skew congruences of the product of the first two algebras."),
    dpc_formula: bool = typer.Option(False, "--dpc-formula", help="Definable relative principal congruences."),
    dpc_class: SyntacticClass = typer.Option(SyntacticClass.POSITIVE_OPEN, "--class", case_sensitive=False),
    output_format: OutputFormat = FORMAT_OPTION,
) -> int:
    """Congruences, relative principal congruences and their definability."""
    if sum([principal is not None, lattice, cep, fraser_horn, skew, dpc_formula]) != 1:
        raise typer.BadParameter("choose one of --principal, --lattice, --cep, --fraser-horn, --skew, --dpc-formula")
    printer = Printer(output_format, settings.JSON_SCHEMA_VERSION)
    members = _load(algebras)
    service = container.congruences.service()
    ctx = RelCongruenceContext.create(members)
    first = members[0]

    if principal is not None:
        a, b = (_element(first, token) for token in principal)
        if relative:
            theta = service.relative_principal_congruence(ctx, first, a, b)
        else:
            theta = service.principal_congruence(first, a, b)
        return printer.report("cong", "principal", 0, theta.render(), CongruenceDto.from_domain(theta).model_dump())

    if lattice:
        found = service.relative_congruences(ctx, first) if relative else service.congruence_lattice(first)
        return printer.report(
            "cong",
            f"{len(found)} congruence(s)",
            0,
            "\n".join(theta.render() for theta in found),
            {"congruences": [CongruenceDto.from_domain(theta).model_dump() for theta in found]},
        )

    if cep or fraser_horn:
        report = service.check_cep(members) if cep else service.check_fraser_horn(members)
        return printer.report(
            "cong", report.name, report.exit_code, report.render(), PropertyReportDto.from_domain(report).model_dump()
        )

    if skew:
        right = members[1] if len(members) > 1 else first
        found = service.find_skew_congruences(first, right)
        return printer.report(
            "cong",
            f"{len(found)} skew congruence(s)",
            0 if found else 1,
            "\n".join(theta.render() for theta in found),
            {"skew": [CongruenceDto.from_domain(theta).model_dump() for theta in found]},
        )

    formula = service.synthesize_dpc_formula(ctx, dpc_class)
    return printer.report(
        "cong", f"dpc [{dpc_class.value}]", 0, print_formula(formula), {"formula": print_formula(formula)}
    )


@app.command()
@exits
def subalg(
    algebra: str = typer.Argument(..., help=ALGEBRAS_HELP),
    all_subuniverses: bool = typer.Option(False, "--all", help="Every non-empty subuniverse."),
    generate: Optional[str] = typer.Option(None, "--generate", help="Comma separated generators."),
    output_format: OutputFormat = FORMAT_OPTION,
) -> int:
    """Subuniverses of one algebra."""
    if all_subuniverses == (generate is not None):
        raise typer.BadParameter("choose exactly one of --all, --generate")
    printer = Printer(output_format, settings.JSON_SCHEMA_VERSION)
    structure = container.algebra.service().load(algebra)
    service = container.subpowers.service()
    if all_subuniverses:
        found = service.all_subuniverses(structure)
    else:
        found = [service.generated_subuniverse(structure, [_element(structure, t) for t in _symbols(generate)])]
    return printer.report(
        "subalg",
        f"{len(found)} subuniverse(s)",
        0,
        "\n".join("{" + ", ".join(sub.labels) + "}" for sub in found),
        {"subuniverses": [sub.labels for sub in found]},
    )


@app.command()
@exits
def hom(
    algebras: list[str] = typer.Argument(..., help="Source algebra and optional target (defaults to the source)."),
    kind: MapKind = typer.Option(MapKind.HOM, "--kind", case_sensitive=False),
    output_format: OutputFormat = FORMAT_OPTION,
) -> int:
    """Homomorphisms, embeddings or isomorphisms between two algebras."""
    if len(algebras) > 2:
        raise typer.BadParameter("expected a source and at most one target")
    printer = Printer(output_format, settings.JSON_SCHEMA_VERSION)
    members = _load(algebras)
    source, target = members[0], members[-1]
    maps = container.subpowers.service().find_maps(Subuniverse.full(source), Subuniverse.full(target), kind)
    return printer.report(
        "hom",
        f"{len(maps)} {kind.value} map(s) {source.name} -> {target.name}",
        0 if maps else 1,
        "\n".join(sigma.render() for sigma in maps),
        {"maps": [[[source.display(a), target.display(b)] for a, b in sigma.mapping] for sigma in maps]},
    )
