#!/usr/bin/env python3
"""Scan complete graphs with the k=2 counting certificate.

For each K_N in a range, report the triangle count T, the max-cut upper
bound on mixed triangles, the implied monochromatic lower bound, and the
largest book size n for which the certificate fires.

Usage: python3 scripts/run_certificate_scan.py [--lo 6] [--hi 20]
"""

import argparse

from bookramsey.certificates import counting_certificate_b2
from bookramsey.graph import complete_graph


def largest_firing_n(N: int) -> tuple:
    cert = counting_certificate_b2(complete_graph(N), 1)
    n = 1
    while True:
        cert_n = counting_certificate_b2(complete_graph(N), n + 1)
        if not cert_n.fires:
            break
        n += 1
    return cert, (n if cert.fires else 0)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--lo", type=int, default=6)
    ap.add_argument("--hi", type=int, default=20)
    args = ap.parse_args()

    print(f"{'N':>3} {'T':>6} {'mrb_upper':>9} {'mono_lower':>10} {'max firing n':>12}")
    for N in range(args.lo, args.hi + 1):
        cert, n_max = largest_firing_n(N)
        print(f"{N:>3} {cert.T:>6} {cert.mrb_upper:>9} {cert.mono_lower:>10} {n_max:>12}")


if __name__ == "__main__":
    main()
