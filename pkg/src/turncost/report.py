"""Report studies: delimited CSV tables with rendered figures alongside.

Two studies are available from the CLI.  ``scaling`` measures gadget
construction work over a doubling ladder of formula sizes and plots it
against the expected n*r^2 growth; ``agreement`` cross-checks the brute-force
oracle against the TSP route on random instances and plots the matched costs.
"""
from __future__ import annotations

import csv
import os
import random
import warnings
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .gadget import build_gadget
from .randgen import random_cnf_sized, random_cost_table, random_eulerian_multigraph
from .solvers import oracle_min_circuit, solve_via_tsp

DEFAULT_LADDER = ((8, 8), (16, 16), (32, 32), (64, 64))


def measure_gadget_ops(
    seed: int = 0,
    ladder: tuple[tuple[int, int], ...] = DEFAULT_LADDER,
    samples: int = 3,
) -> list[dict]:
    """Mean instrumented construction counts per ladder level."""
    rng = random.Random(seed)
    rows: list[dict] = []
    previous: float | None = None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for n, r in ladder:
            ops = [build_gadget(random_cnf_sized(rng, n, r)).build_ops for _ in range(samples)]
            mean = sum(ops) / len(ops)
            rows.append(
                {
                    "n": n,
                    "r": r,
                    "nr2": n * r * r,
                    "mean_ops": mean,
                    "growth": (mean / previous) if previous else "",
                }
            )
            previous = mean
    return rows


def write_scaling_report(out_dir: str, seed: int = 0, ladder=DEFAULT_LADDER) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    rows = measure_gadget_ops(seed=seed, ladder=ladder)
    csv_path = os.path.join(out_dir, "gadget_scaling.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=["n", "r", "nr2", "mean_ops", "growth"])
        writer.writeheader()
        writer.writerows(rows)

    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = [row["nr2"] for row in rows]
    ys = [row["mean_ops"] for row in rows]
    ax.loglog(xs, ys, "o-", label="measured construction ops")
    scale = ys[0] / xs[0]
    ax.loglog(xs, [scale * x for x in xs], "--", color="gray", label="n r^2 reference")
    ax.set_xlabel("n r^2")
    ax.set_ylabel("operations")
    ax.set_title("Gadget construction scaling")
    ax.legend()
    fig.tight_layout()
    png_path = os.path.join(out_dir, "gadget_scaling.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def write_agreement_report(
    out_dir: str, seed: int = 0, instances: int = 50, max_edges: int = 5
) -> list[str]:
    """Oracle vs TSP-route costs on random Eulerian multigraphs."""
    os.makedirs(out_dir, exist_ok=True)
    rng = random.Random(seed)
    rows = []
    for k in range(instances):
        g = random_eulerian_multigraph(rng, max_edges=max_edges)
        w = random_cost_table(rng, g)
        oracle = oracle_min_circuit(g, w)
        tsp = solve_via_tsp(g, w, contract=True)
        rows.append(
            {
                "instance": k,
                "vertices": g.n,
                "edges": g.m,
                "oracle_cost": f"{oracle.cost.numerator}/{oracle.cost.denominator}",
                "tsp_cost": f"{tsp.cost.numerator}/{tsp.cost.denominator}",
                "equal": int(oracle.cost == tsp.cost),
            }
        )
    csv_path = os.path.join(out_dir, "solver_agreement.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh,
            fieldnames=["instance", "vertices", "edges", "oracle_cost", "tsp_cost", "equal"],
        )
        writer.writeheader()
        writer.writerows(rows)

    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    xs = [float(Fraction(row["oracle_cost"])) for row in rows]
    ys = [float(Fraction(row["tsp_cost"])) for row in rows]
    top = max(xs + ys + [1.0])
    ax.plot([0, top], [0, top], "--", color="gray", linewidth=1)
    ax.scatter(xs, ys, s=18)
    matched = sum(row["equal"] for row in rows)
    ax.set_xlabel("oracle cost")
    ax.set_ylabel("TSP-route cost")
    ax.set_title(f"Solver agreement: {matched}/{len(rows)} exact matches")
    fig.tight_layout()
    png_path = os.path.join(out_dir, "solver_agreement.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]
