"""Figures for verification reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .verify import VerificationReport  # noqa: E402


def plot_report(report: VerificationReport, path) -> None:
    """Automaton sizes and chain profiles per class, one PNG."""
    rows = [r for r in report.rows if r.verdict is not None]
    names = [r.target for r in rows]
    x = range(len(rows))
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(max(6, 0.7 * len(rows) + 2), 7), sharex=True)
    width = 0.27
    for off, attr, label in ((-width, "language_states", "language NFA"),
                             (0, "nbw_states", "omega-power NBW"),
                             (width, "dwa_states", "reduced DWA")):
        top.bar([i + off for i in x], [getattr(r, attr) for r in rows], width, label=label)
    top.set_yscale("log")
    top.set_ylabel("states")
    top.legend(fontsize="small")
    colors = ["tab:green" if r.status == "pass" else "tab:red" for r in rows]
    bottom.bar([i - 0.2 for i in x], [r.m_acc for r in rows], 0.4, label="m_acc", color="tab:olive")
    bottom.bar([i + 0.2 for i in x], [r.m_rej for r in rows], 0.4, label="m_rej", color="tab:gray")
    bottom.set_ylabel("longest alternating chain")
    bottom.set_xticks(list(x))
    bottom.set_xticklabels(names, rotation=45, ha="right")
    for tick, color in zip(bottom.get_xticklabels(), colors):
        tick.set_color(color)
    bottom.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
