"""Time the identity suites on G_n and Kan(G_n) as n grows."""

import argparse
import time
from dataclasses import dataclass

from psg.grassmann import gn_structure_constants
from psg.kantor import kantor_double
from psg.superalgebra import check_suite, grassmann_envelope_jordan_oracle


@dataclass
class Sweep:
    max_n: int = 5
    max_kan: int = 3


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-kan", type=int, default=3)
    args = ap.parse_args()
    cfg = Sweep(args.max_n, args.max_kan)
    for n in range(1, cfg.max_n + 1):
        t = time.perf_counter()
        reps = check_suite(gn_structure_constants(n), "poisson")
        ok = all(r.passed for r in reps)
        print(f"G_{n}: poisson suite {'pass' if ok else 'FAIL'}  tuples={sum(r.tuples_checked for r in reps)}  {time.perf_counter() - t:.2f}s")
    for n in range(1, cfg.max_kan + 1):
        k = kantor_double(gn_structure_constants(n))
        t = time.perf_counter()
        direct = check_suite(k, "jordan")
        t1 = time.perf_counter() - t
        t = time.perf_counter()
        env = grassmann_envelope_jordan_oracle(k)
        t2 = time.perf_counter() - t
        print(f"Kan(G_{n}): jordan {'pass' if all(direct) else 'FAIL'} ({t1:.2f}s), envelope {'pass' if env.passed else 'FAIL'} ({t2:.2f}s)")


if __name__ == "__main__":
    main()
