"""Assemble the configuration table and the rank/kernel table from first principles."""

from __future__ import annotations

from dataclasses import dataclass

from ..base_change import BaseChangeReport, analyze_base_change
from ..classification import ConfigRow, enumerate_with_rejections, realize_configuration
from ..cohomology import (
    H1Result,
    StabilityVerdict,
    check_rank_stability,
    wc_kernel_from_points,
    wc_kernel_rank_extremal,
)
from ..mordell_weil import shioda_tate_rank

__all__ = [
    "SummaryRow",
    "KERNEL_FIXTURES",
    "configuration_rows",
    "summary_row",
    "summary_table",
    "format_configurations",
    "format_summary",
    "trace_kernel_vectors",
]

# fixture that carries explicit sections for rows with positive rank before base change
KERNEL_FIXTURES = {7: "ell34_p5", 8: "ell7_p7"}


@dataclass(frozen=True)
class SummaryRow:
    index: int
    row: ConfigRow
    p: int
    base_change: BaseChangeReport
    rank_before: int
    rank_after: int
    kernel: H1Result
    method: str
    verdict: StabilityVerdict

    @property
    def degree_label(self) -> str:
        return "any p >= 5" if self.row.primes is None else str(self.p)


def configuration_rows(primes=(5, 7, 11, 13)) -> tuple[list[ConfigRow], list[ConfigRow]]:
    rows, excluded, _ = enumerate_with_rejections(primes)
    return rows, excluded


def trace_kernel_vectors(p: int) -> list[list[int]]:
    """sigma^i Q - sigma^(i+1) Q for i < p - 1: a basis of the trace-zero combinations."""
    out = []
    for i in range(p - 1):
        v = [0] * p
        v[i] = 1
        v[i + 1] = -1
        out.append(v)
    return out


def summary_row(index: int, row: ConfigRow, check_points: bool = True) -> SummaryRow:
    p = 5 if row.primes is None else row.primes[0]
    m = realize_configuration(row)
    bc = analyze_base_change(m, p)
    if not bc.l_stable:
        raise ArithmeticError(f"row {index}: realization is not L-stable for p = {p}")
    r0 = shioda_tate_rank(bc.config_before)
    r1 = shioda_tate_rank(bc.config_after)
    verdict = check_rank_stability(r0, r1, p)
    if verdict.rank_stable:
        kernel, method = H1Result(()), "rank-stable"
    elif r0 == 0:
        r = wc_kernel_rank_extremal(r1, p)
        kernel, method = H1Result((p,) * r), "extremal"
    else:
        from ..fixtures import load_fixture

        fx = load_fixture(KERNEL_FIXTURES[index])
        if fx.model.with_d(bc.after.d) != bc.after or fx.p != p:
            raise ArithmeticError(
                f"row {index}: fixture model {fx.model} does not match {bc.after}"
            )
        rep = wc_kernel_from_points(fx.model, fx.action(), fx.seed,
                                    trace_kernel_vectors(p), check_points=check_points)
        kernel, method = rep.h1, "sections"
    return SummaryRow(index, row, p, bc, r0, r1, kernel, method, verdict)


def summary_table(check_points: bool = True) -> list[SummaryRow]:
    rows, _ = configuration_rows()
    return [summary_row(i + 1, r, check_points) for i, r in enumerate(rows)]


def _grid(header: list[str], body: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]

    def line(cells):
        return " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

    sep = "-+-".join("-" * w for w in widths)
    return "\n".join([line(header), sep] + [line(r) for r in body])


def format_configurations(rows: list[ConfigRow]) -> str:
    header = ["No.", "deg", "over 0", "over inf", "remaining", "eps"]
    body = []
    for i, r in enumerate(rows):
        deg = "any p >= 5" if r.primes is None else ", ".join(str(p) for p in r.primes)
        body.append([str(i + 1), deg, str(r.fiber_at_0), str(r.fiber_at_inf),
                     r.remaining_str() or "-", str(r.epsilon)])
    return _grid(header, body)


def format_summary(rows: list[SummaryRow]) -> str:
    header = ["No.", "deg", "over 0", "over inf", "remaining", "rank E(K)", "rank E(K')", "kernel"]
    body = []
    for s in rows:
        body.append([str(s.index), s.degree_label, str(s.row.fiber_at_0),
                     str(s.row.fiber_at_inf), s.row.remaining_str() or "-",
                     str(s.rank_before), str(s.rank_after), s.kernel.describe()])
    return _grid(header, body)
