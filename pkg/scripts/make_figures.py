#!/usr/bin/env python3
"""Regenerate every reference figure dataset and, optionally, quick-look PNGs.

Runs the same code paths as `antimix figure --id all` and then, when
matplotlib is importable, renders one PNG per dataset next to the CSVs.
The CSVs are the deliverable; the PNGs are a visual sanity check only.
"""

import argparse
import csv
import sys
from pathlib import Path

from antimix.cli import main as antimix_main


def _load_columns(path: Path) -> dict[str, list[float]]:
    with path.open() as fh:
        rows = list(csv.DictReader(fh))
    return {key: [float(r[key]) for r in rows] for key in rows[0]}


def _render(out_dir: Path) -> int:
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; skipping PNG rendering")
        return 0

    rendered = 0
    for prefix, density_label in (("fig1", "charge density"), ("fig3", "probability density")):
        panels = sorted(out_dir.glob(f"{prefix}_beta_*_norm.csv"))
        if not panels:
            continue
        fig, axes = plt.subplots(len(panels), 1, figsize=(7, 2.2 * len(panels)), sharex=True)
        for ax, panel in zip(axes, panels):
            cols = _load_columns(panel)
            beta = panel.stem.replace(f"{prefix}_beta_", "").replace("_norm", "")
            ax.plot(cols["xi"], cols["abs_theta_sq"], label="|theta|^2")
            ax.plot(cols["xi"], cols["abs_chi_sq"], label="|chi|^2")
            ax.plot(cols["xi"], cols["rho"], label="rho", linestyle="--")
            ax.set_ylabel(f"beta = {beta}")
            ax.legend(loc="upper right", fontsize=7)
        axes[-1].set_xlabel("xi")
        fig.suptitle(f"{prefix}: {density_label} profiles")
        fig.tight_layout()
        fig.savefig(out_dir / f"{prefix}.png", dpi=120)
        plt.close(fig)
        rendered += 1

    for name, xcol in (("fig2", "z_over_68p5"), ("fig4", "z_over_137")):
        path = out_dir / f"{name}.csv"
        if not path.exists():
            continue
        cols = _load_columns(path)
        fig, ax = plt.subplots(figsize=(6, 4))
        for key, vals in cols.items():
            if key == xcol:
                continue
            ax.plot(cols[xcol], vals, label=key)
        ax.set_xlabel(xcol)
        ax.legend()
        fig.tight_layout()
        fig.savefig(out_dir / f"{name}.png", dpi=120)
        plt.close(fig)
        rendered += 1

    print(f"rendered {rendered} quick-look PNGs")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="figures", help="output directory")
    parser.add_argument("--skip-render", action="store_true", help="emit CSVs only")
    args = parser.parse_args(argv)

    out_dir = Path(args.out_dir)
    rc = antimix_main(["figure", "--id", "all", "--out-dir", str(out_dir)])
    if rc != 0:
        return rc
    if not args.skip_render:
        return _render(out_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
