"""Plot the CSV panels written by `levbound sweep`.

    levbound --out figures sweep --figure 3
    python3 docs/render_figures.py figures/*.csv

Each panel becomes <panel>.png next to its CSV. ABSENT values are gaps.
"""
import csv
import math
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def curves(path):
    by_label = defaultdict(lambda: ([], []))
    with open(path, newline="") as handle:
        for row in csv.DictReader(handle):
            xs, ys = by_label[row["series_label"]]
            xs.append(float(row["x"]))
            ys.append(math.nan if row["value"] == "ABSENT" else float(row["value"]))
    return by_label


def split_winner(label):
    # Winner-tagged figures carry "curve;winner=..." labels; colour by winner.
    if ";winner=" in label:
        curve, winner = label.split(";winner=", 1)
        return curve, winner
    return label, None


def render(path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    grouped = defaultdict(list)
    for label, (xs, ys) in curves(path).items():
        curve, winner = split_winner(label)
        grouped[curve].append((winner, xs, ys))
    palette = {}
    for curve, parts in sorted(grouped.items()):
        for winner, xs, ys in parts:
            key = winner or curve
            colour = palette.setdefault(key, f"C{len(palette) % 10}")
            style = "o" if winner else "-"
            ax.plot(xs, ys, style, markersize=2, color=colour,
                    label=key if key not in ax.get_legend_handles_labels()[1] else None)
    ax.set_xlabel("x")
    ax.set_ylabel("threshold")
    ax.set_title(path.rsplit("/", 1)[-1].removesuffix(".csv"))
    ax.legend(fontsize=7)
    out = path.removesuffix(".csv") + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=130)
    plt.close(fig)
    print(out)


if __name__ == "__main__":
    for p in sys.argv[1:]:
        render(p)
