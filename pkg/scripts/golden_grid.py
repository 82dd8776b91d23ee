"""Run the M_alpha vs Kan(G~_n(beta)) pipeline over a grid and write a JSON report."""

import argparse
import json
from dataclasses import dataclass

from psg.exact_linear import scalar
from psg.pipeline import golden_pipeline


@dataclass
class Grid:
    ns: tuple = (1, 2, 3)
    alphas: tuple = ("0", "1", "-2", "3")
    seed: int = 0


def run(grid: Grid) -> dict:
    results = [golden_pipeline(n, scalar(a), seed=grid.seed).to_json() for n in grid.ns for a in grid.alphas]
    conventions = {r["convention"] for r in results if r["resolved_beta"] is not None and r["alpha"] != "0"}
    return {
        "results": results,
        "all_resolved": all(r["resolved_beta"] is not None for r in results),
        "conventions": sorted(c for c in conventions if c),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    report = run(Grid(seed=args.seed))
    text = json.dumps(report, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    for r in report["results"]:
        diag = [d["rule"] for d in r["diagnostics"] if d["match"]]
        print(f"n={r['n']} alpha={r['alpha']:>3}  resolved={r['resolved_beta']}  diagnostic match={diag}")
    print("all resolved:", report["all_resolved"])


if __name__ == "__main__":
    main()
