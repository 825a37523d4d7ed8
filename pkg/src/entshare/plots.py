"""Figure rendering for classification and hybrid reports.

Uses the Agg backend only; every function writes a PNG to the given path
and returns the path.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .hybrid import HybridReport
from .schemes import SchemeReport, Status

_STATUS_COLORS = {
    Status.AUTHORIZED.value: "#2a9d3e",
    Status.INTERMEDIATE.value: "#e8a117",
    Status.FORBIDDEN.value: "#8a8a8a",
    Status.PPT_UNDETERMINED.value: "#7d5ba6",
    Status.ENTANGLED_LEAK.value: "#d33030",
}
_STATUS_ORDER = [s.value for s in Status]


def classification_figure(report: SchemeReport, path: str) -> str:
    """Status counts by subset size plus the correlation witnesses."""
    sizes = list(range(report.n + 1))
    counts = {s: [0] * (report.n + 1) for s in _STATUS_ORDER}
    for c in report.classifications:
        counts[c.status.value][len(c.subset)] += 1
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))
    bottom = [0] * (report.n + 1)
    for status in _STATUS_ORDER:
        if not any(counts[status]):
            continue
        ax1.bar(
            sizes,
            counts[status],
            bottom=bottom,
            color=_STATUS_COLORS[status],
            label=status,
        )
        bottom = [b + c for b, c in zip(bottom, counts[status])]
    ax1.set_xlabel("subset size")
    ax1.set_ylabel("subsets")
    ax1.set_title(f"{report.code}: subset statuses")
    ax1.legend(fontsize=8)
    for c in report.classifications:
        mi = c.witnesses.mutual_information_bits
        if mi is None:
            continue
        ax2.scatter(
            len(c.subset),
            mi,
            color=_STATUS_COLORS[c.status.value],
            s=18,
            alpha=0.7,
        )
    ax2.set_xlabel("subset size")
    ax2.set_ylabel("mutual information with dealer (bits)")
    ax2.set_title("correlation by subset size")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def hybrid_figure(report: HybridReport, path: str) -> str:
    """Key-unknown residuals for every subset and key-known fidelities."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))
    idx = range(len(report.views))
    residuals = [max(v.key_unknown_residual, 1e-18) for v in report.views]
    colors = ["#2a9d3e" if v.unlocked else "#8a8a8a" for v in report.views]
    ax1.bar(idx, residuals, color=colors)
    ax1.set_yscale("log")
    ax1.axhline(1e-9, color="#d33030", linestyle="--", linewidth=1, label="tolerance")
    ax1.set_xlabel("subset index (by size, lexicographic)")
    ax1.set_ylabel("key-unknown separability residual")
    ax1.set_title(f"{report.code}: twirled-state certificates (t={report.t})")
    ax1.legend(fontsize=8)
    unlocked = [(i, v.key_known_fidelity) for i, v in enumerate(report.views) if v.unlocked]
    if unlocked:
        ax2.scatter(
            [i for i, _ in unlocked],
            [1 - f for _, f in unlocked],
            color="#2a9d3e",
            s=20,
        )
        ax2.set_yscale("symlog", linthresh=1e-12)
    ax2.set_xlabel("subset index")
    ax2.set_ylabel("1 - recovery fidelity (key known)")
    ax2.set_title("unlocked subsets")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def render_for_command(command: str, payload_reports: dict, out_dir: str) -> list[str]:
    """Write the figures appropriate for a CLI command into out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    scheme_report = payload_reports.get("scheme")
    hybrid_report = payload_reports.get("hybrid")
    if scheme_report is not None:
        written.append(
            classification_figure(
                scheme_report, os.path.join(out_dir, f"{command}_classification.png")
            )
        )
    if hybrid_report is not None:
        written.append(
            hybrid_figure(hybrid_report, os.path.join(out_dir, f"{command}_keys.png"))
        )
    return written
