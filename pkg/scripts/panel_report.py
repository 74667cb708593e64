"""Criticality, Whittaker vector counts and composition type for the reference panel.

    python scripts/panel_report.py [--exact]
"""

import argparse
import time

from uqwhittaker import structure as S
from uqwhittaker.module import WhittakerModule
from uqwhittaker.panel import reference_panel


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--exact", action="store_true", help="solve over Q(q, alpha) instead of a specialization")
    args = ap.parse_args()
    M = WhittakerModule()
    header = f"{'point':14s} {'roots':8s} {'N':>2s} {'dim':>3s} {'cert':5s} {'type':14s} {'sec':>5s}  point used"
    print(header)
    print("-" * len(header))
    for p in reference_panel():
        t0 = time.perf_counter()
        rep = S.whittaker_vector_report(p.kappa, p.c, point=None if args.exact else "auto")
        comp = S.composition_report(p.kappa, p.c, M)
        dt = time.perf_counter() - t0
        pt = "exact" if rep.point is None else f"q={rep.point.q0}, alpha={rep.point.alpha0}"
        print(f"{p.name:14s} {str(rep.roots):8s} {rep.window:2d} {rep.dimension:3d} "
              f"{str(rep.certified):5s} {comp.kind:14s} {dt:5.2f}  {pt}")
        for layer in comp.layers:
            print(f"{'':14s}   layer {layer.eps}: n = {layer.n}, kappa = {layer.kappa_eps}, "
                  f"c = {layer.c_eps}, its roots {layer.sub_roots}")


if __name__ == "__main__":
    main()
