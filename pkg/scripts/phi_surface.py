#!/usr/bin/env python3
"""Tabulate (and optionally plot) the fundamental solution of the Laplacian
on the 2-torus: the surface with a single interior maximum at the cell
center, saddles at the edge midpoints, and the log singularity at the vertex.
"""

import argparse

import numpy as np

from linkhel.torusfields import grid_coords, phi2_grid


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=128)
    parser.add_argument("--truncation", type=int, default=40)
    parser.add_argument("--out", default="phi2.csv")
    parser.add_argument("--plot", metavar="PNG", help="also render a surface plot")
    args = parser.parse_args()

    table = phi2_grid(args.grid, args.truncation)
    coords = grid_coords(args.grid)
    with open(args.out, "w", newline="") as fh:
        fh.write("x,y,phi\n")
        for b in range(args.grid):
            for a in range(args.grid):
                fh.write(f"{coords[a]!r},{coords[b]!r},{table[a, b]!r}\n")
    amax = np.unravel_index(np.argmax(table), table.shape)
    print(f"wrote {args.out}; max phi = {table[amax]:.6f} at "
          f"({coords[amax[0]]:.3f}, {coords[amax[1]]:.3f})")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        X, Y = np.meshgrid(coords, coords, indexing="ij")
        fig = plt.figure(figsize=(7, 5))
        ax = fig.add_subplot(projection="3d")
        ax.plot_surface(X, Y, table, cmap="viridis", rstride=2, cstride=2)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
