"""Quick-look PNG plots of homodyne traces (matplotlib, Agg backend)."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_traces"]

_STYLE = {"balanced": "-", "self": "--", "ideal": ":"}


def plot_traces(traces, path, title=None):
    """Two panels, X(phi) and V(phi), one line per scheme; saved to ``path``."""
    fig, (ax_x, ax_v) = plt.subplots(2, 1, figsize=(6.0, 6.0), sharex=True)
    for scheme, tr in traces.items():
        ax_x.plot(tr.phi, tr.X, _STYLE.get(scheme, "-"), label=scheme)
        ax_v.plot(tr.phi, tr.V, _STYLE.get(scheme, "-"), label=scheme)
    ax_v.axhline(1.0, color="grey", lw=0.8)
    ax_x.set_ylabel("X")
    ax_v.set_ylabel("V")
    ax_v.set_xlabel("phi")
    ax_x.legend()
    if title:
        ax_x.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path
