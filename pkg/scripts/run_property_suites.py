#!/usr/bin/env python3
"""Run the pairing identity suite and the lattice crossed-square checks.

    python scripts/run_property_suites.py [--pairs 100] [--samples 50] [--seed 0]
"""

import argparse
import json
import sys

from anomalion.crossed import verify_lattice_square
from anomalion.lattice import Window
from anomalion.pairing import run_identity_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--report", default=None)
    args = ap.parse_args(argv)

    window = Window.centered(12, 12, margin=3)
    eta_rep = run_identity_suite(window, n_pairs=args.pairs, seed=args.seed)
    print(f"eta identities: {sum(eta_rep.checks.values())} checks, "
          f"{len(eta_rep.failures)} failures")
    square_rep = verify_lattice_square(window, samples=args.samples, seed=args.seed)
    print(f"lattice crossed square: ok={square_rep.ok} counts={square_rep.counts}")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump({"eta": eta_rep.to_json(), "lattice_square": square_rep.to_json()},
                      fh, indent=2, sort_keys=True)
    return 0 if eta_rep.ok and square_rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
