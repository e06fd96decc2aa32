"""Convergence figures for experiment results (file output only)."""
from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .harness import ExperimentResult  # noqa: E402


def plot_convergence(results: Sequence[ExperimentResult], out_path) -> None:
    """One panel per experiment: every trial's best-so-far curve, the best
    trial drawn solid on top."""
    n = len(results)
    fig, axes = plt.subplots(1, n, figsize=(5.0 * max(n, 1), 3.6), squeeze=False)
    for ax, result in zip(axes[0], results):
        sense = result.plan.sense
        finals = [trace[-1][1] for trace in result.stats.traces]
        best_trial = (max if sense == "max" else min)(
            range(len(finals)), key=lambda t: finals[t])
        for t, trace in enumerate(result.stats.traces):
            its = [p[0] for p in trace]
            vals = [p[1] for p in trace]
            if t == best_trial:
                ax.plot(its, vals, color="tab:red", lw=1.6, zorder=3,
                        label="best trial")
            else:
                ax.plot(its, vals, color="tab:gray", lw=0.6, alpha=0.5)
        ax.set_title(f"{result.plan.name} ({result.plan.algorithm})")
        ax.set_xlabel("iteration")
        ax.set_ylabel("best-so-far fitness")
        if all(v > 0 for trace in result.stats.traces for _, v in trace):
            ax.set_yscale("log")
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
