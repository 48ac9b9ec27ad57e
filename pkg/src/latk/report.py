"""Deterministic plain-text rendering of a Report.

Block shapes follow the tool's terminal output: counted vector lists,
`denominator with k factors:` lines, `shift = k`, one vector per line with
space-separated integers.
"""

from __future__ import annotations

from .pipeline import Report


def _vec(v) -> str:
    return " ".join(str(x) for x in v)


def _vector_block(title: str, vectors) -> list[str]:
    lines = [f"{len(vectors)} {title}:"]
    lines.extend(_vec(v) for v in vectors)
    lines.append("")
    return lines


def format_report(report: Report) -> str:
    out: list[str] = []
    if report.empty:
        out.append(f"# empty result: {report.empty_reason}")
        out.append("")
    if report.hilbert_basis is not None:
        if report.graded and report.hilbert_degrees is not None:
            deg1 = [v for v, d in zip(report.hilbert_basis, report.hilbert_degrees) if d == 1]
            higher = [v for v, d in zip(report.hilbert_basis, report.hilbert_degrees) if d != 1]
            out.extend(_vector_block("Hilbert basis elements of degree 1", deg1))
            out.extend(_vector_block("further Hilbert basis elements of higher degree", higher))
        else:
            out.extend(_vector_block("Hilbert basis elements", report.hilbert_basis))
    if report.extreme_rays is not None:
        out.extend(_vector_block("extreme rays", report.extreme_rays))
    if report.mode == "homogeneous" and (report.extreme_rays is not None or report.max_subspace):
        out.extend(_vector_block("basis elements of maximal subspace", report.max_subspace))
    if report.module_generators is not None:
        out.extend(_vector_block("module generators", report.module_generators))
    if report.mode == "inhomogeneous":
        out.extend(_vector_block("Hilbert basis elements of recession monoid", report.recession_basis or ()))
        if report.module_rank is not None:
            out.append(f"module rank = {report.module_rank}")
            out.append("")
    if report.series is not None:
        out.append("Hilbert series:")
        out.append(_vec(report.series.numerator) if report.series.numerator else "0")
        out.append(f"denominator with {sum(m for _g, m in report.series.denominator)} factors:")
        out.extend(f"{g}: {m}" for g, m in report.series.denominator)
        out.append("")
        if report.series.show_shift:
            out.append(f"shift = {report.series.shift}")
            out.append("")
    if report.quasipolynomial is not None:
        q = report.quasipolynomial
        out.append(f"Hilbert quasi-polynomial of period {q.period}:")
        for r, row in enumerate(q.rows):
            out.append(f"{r}: {_vec(row)}")
        out.append(f"with common denominator = {q.denominator}")
        out.append("")
    if report.hsop is not None:
        out.append("Heights vector: " + _vec(report.hsop.heights))
        out.append("Degrees of HSOP: " + _vec(report.hsop.degrees))
        out.append("")
        out.append("Hilbert series (HSOP):")
        out.append(_vec(report.hsop.numerator) if report.hsop.numerator else "0")
        out.append(f"denominator with {sum(m for _g, m in report.hsop.denominator)} factors:")
        out.extend(f"{g}: {m}" for g, m in report.hsop.denominator)
        out.append("")
    if report.class_group is not None:
        cg = report.class_group
        parts = [f"Z^{cg.free_rank}"] + [f"Z/{c}" for c in cg.divisors]
        out.append("class group: " + " + ".join(parts))
        out.append("")
    if report.triangulation is not None:
        tb = report.triangulation
        out.extend(_vector_block("triangulation generators", tb.generators))
        out.append(f"triangulation with {len(tb.simplices)} simplices, detsum = {tb.detsum}:")
        for rays, det, excluded in tb.simplices:
            exc = " ".join(str(k + 1) for k in excluded)
            out.append(f"{_vec(rays)} | det = {det} | excluded facets: {exc}".rstrip())
        out.append("")
    if report.grading_denominator != 1:
        out.append(f"grading denominator = {report.grading_denominator}")
        out.append("")
    while out and out[-1] == "":
        out.pop()
    return "\n".join(out) + "\n"


def write_report(report: Report, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_report(report))
