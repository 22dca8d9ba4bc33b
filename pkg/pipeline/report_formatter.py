from __future__ import annotations

import csv
import io

from models import GroupTerm, Report


def render_json(report: Report) -> str:
    return report.model_dump_json(by_alias=True, exclude_none=True, indent=2)


def _term_text(term: GroupTerm) -> str:
    if term.name:
        return term.name
    if not term.parts:
        return "?"
    inner = [_term_text(p) for p in term.parts]
    if term.op == "direct":
        text = " x ".join(inner)
    elif term.op == "semidirect":
        text = f"{inner[0]} x| {inner[1]}"
    elif term.op == "extension":
        text = f"{inner[0]} . {inner[1]}"
    else:
        text = " ".join(inner)
    return f"({text})"


def render_table(report: Report) -> str:
    """Tab-separated sections, one header row each."""
    output = io.StringIO()
    writer = csv.writer(output, delimiter="\t", lineterminator="\n")

    if report.specs:
        writer.writerow(["series", "spec"])
        for spec in report.specs:
            writer.writerow([spec.series.value, spec.canonical_json()])
        if report.count is not None:
            writer.writerow(["count", report.count])

    if report.presentation:
        p = report.presentation
        writer.writerow(["Z2", "Z4", "Z", "invariants"])
        writer.writerow([p.Z2, p.Z4, p.Z, ",".join(map(str, p.invariants))])

    if report.support:
        writer.writerow(["i", "j", "t", "dim"])
        for row in report.support:
            writer.writerow([row.i, row.j, row.t, row.dim])

    if report.refinement:
        writer.writerow(["refinement", report.refinement.canonical_json()])

    if report.extension:
        e = report.extension
        writer.writerow(["split", "t_criterion", "invariants", "free_rank", "lambda"])
        writer.writerow([
            e.split,
            e.t_criterion,
            ",".join(map(str, e.invariants)),
            e.free_rank,
            ",".join(map(str, e.lambda_on_generators)),
        ])

    if report.weyl:
        w = report.weyl
        writer.writerow(["weyl", "order", "brute_force_order", "kernel_rank", "verdict"])
        writer.writerow([_term_text(w.term), w.order, w.brute_force_order or "", "" if w.kernel_rank is None else w.kernel_rank, w.verdict or ""])
        for name, order in w.parts.items():
            writer.writerow(["part", name, order])
        if w.complement_order:
            writer.writerow(["complement", w.complement_order, w.brute_force_complement_order or ""])

    if report.equivalence:
        q = report.equivalence
        writer.writerow(["equivalent", "kind", "witness"])
        writer.writerow([q.equivalent, q.kind, q.witness or ""])

    if report.sweep:
        s = report.sweep
        writer.writerow(["spec", "order", "brute_force_order", "verdict", "errors"])
        for item in s.items:
            w = item.weyl
            writer.writerow([
                item.spec.label(),
                w.order if w else "",
                (w.brute_force_order or "") if w else "",
                (w.verdict or "") if w else "",
                "; ".join(item.errors),
            ])
        writer.writerow(["total", s.total, "verified", s.verified, "mismatches", s.mismatches, "failures", s.failures])

    return output.getvalue()
