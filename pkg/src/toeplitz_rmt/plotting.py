"""Static figures written next to the CSV/JSON reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .statistics import FitReport  # noqa: E402


def _figure(width=6.0, height=None):
    golden = (np.sqrt(5) - 1.0) / 2.0
    return plt.subplots(figsize=(width, height or width * golden))


def spacing_histogram(report: FitReport, path, title: str = "") -> None:
    fig, ax = _figure()
    left = report.edges[:-1]
    ax.bar(left, report.density, width=np.diff(report.edges), align="edge", color="0.75", edgecolor="0.4", lw=0.5)
    s = np.linspace(0.0, report.edges[-1], 500)
    ax.plot(s, np.exp(-s), "k-", lw=1.5, label=f"Poisson  (KS {report.ks_poisson:.3f})")
    ax.plot(s, 0.5 * np.pi * s * np.exp(-0.25 * np.pi * s**2), "k--", lw=1.5, label=f"GOE surmise  (KS {report.ks_goe:.3f})")
    ax.set_xlabel("normalized spacing")
    ax.set_ylabel("density")
    ax.set_xlim(0, report.edges[-1])
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def convergence_plot(ns, values_by_order: dict, path, k: int) -> None:
    fig, ax = _figure()
    ns = np.asarray(ns, dtype=float)
    markers = {2: "o", 4: "s"}
    for order, values in sorted(values_by_order.items()):
        values = np.asarray(values, dtype=float)
        ax.loglog(ns, values, marker=markers.get(order, "^"), ls="-", color="k", label=f"central order {order}")
        if values[0] > 0:
            ref = values[0] * (ns[0] / ns) ** (order // 2)
            ax.loglog(ns, ref, ls=":", color="0.5")
    ax.set_xlabel("N")
    ax.set_ylabel(f"central moment of $M_{{{k}}}(A,N)$")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
