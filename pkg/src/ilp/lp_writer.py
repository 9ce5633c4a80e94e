"""CPLEX LP text export of an IlpModel"""
from pathlib import Path
from typing import Iterable, List, TextIO, Union

from src.config.constants import LP_SIGNIFICANT_DIGITS
from src.ilp.model import IlpModel, Term
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _number(value: float) -> str:
    return format(value, f".{LP_SIGNIFICANT_DIGITS}g")


def _signed(value: float) -> str:
    return format(value, f"+.{LP_SIGNIFICANT_DIGITS}g")


def _terms(terms: Iterable[Term]) -> List[str]:
    return [f"   {_signed(coef)} {var.name}" for coef, var in terms]


def render_lp(model: IlpModel) -> str:
    """The model as an LP document, one term per line."""
    lines: List[str] = [
        f"\\ {model.name}: n_t={model.n_t} n={model.n} c_max={_number(model.c_max)}",
        "",
        "minimize",
        " obj:",
        *_terms(model.objective),
        "",
        "subject to",
    ]

    for _, row in model.rows():
        lines.append(f" {row.name}:")
        lines.extend(_terms(row.terms))
        lines.append(f"   {row.sense.value} {_number(row.rhs)}")
    lines.append("")

    lines.append("bounds")
    for var in sorted(model.fixed_zero):
        lines.append(f" 0 <= {var.name} <= 0")
    for var in model.t_vars():
        lines.append(f" 0 <= {var.name} <= {model.t_upper}")
    lines.append("")

    lines.append("binary")
    lines.extend(f" {var.name}" for var in model.x_vars())
    lines.append("")

    lines.append("general")
    lines.extend(f" {var.name}" for var in model.t_vars())
    lines.append("")

    lines.append("end")
    return "\n".join(lines) + "\n"


def export_lp(model: IlpModel, sink: Union[str, Path, TextIO]) -> str:
    """
    Write the model to a path or an open text stream.

    Returns:
        The LP document that was written
    """
    document = render_lp(model)
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(document, encoding="utf-8")
        logger.info(f"LP model written to {sink}")
    else:
        sink.write(document)
    return document


def lp_filename(instance_name: str, n_t: int) -> str:
    return f"{instance_name}_nt{n_t}.lp"
