import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main(path, xcol, out):
    df = pd.read_csv(path, comment="#")
    x = df[xcol].to_numpy(dtype=float)
    fig, ax = plt.subplots(figsize=(5, 4))
    for col, marker in (("err_inf", "o"), ("err_2", "s")):
        ax.loglog(x, df[col], marker=marker, label=col)
    if len(x) >= 2:
        e = df["err_inf"].to_numpy()
        slope = np.log(e[-1] / e[-2]) / np.log(x[-1] / x[-2])
        ax.loglog(x, e[-1] * (x / x[-1]) ** slope, "k--", lw=0.8, label=f"slope {slope:.2f}")
    ax.set_xlabel(xcol)
    ax.set_ylabel("error")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)


if __name__ == "__main__":
    if len(sys.argv) != 4:
        sys.exit("usage: plot_convergence.py table.csv M|N out.png")
    main(*sys.argv[1:])
