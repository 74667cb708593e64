"""Measure how E2 u(n, l, 1) compares with the two closed-form coefficient choices.

For every component F2^{n-k-1} F3^k K2^{2j+1+l} of E2 u(n, l, 1) the script
divides the true coefficient by the congruent-variant coefficient and prints the
quotient, which comes out as q^{k+j}.  It then checks both variants against
the module action, exactly and modulo J(kappa, c) on the E2 panel.

    python scripts/e2_closed_form.py [--nmax 4] [--l 0]
"""

import argparse

from uqwhittaker.module import Maximal, WhittakerModule
from uqwhittaker.panel import e2_panel


def ratios(M, n, l):
    img = M.act_generator("E2", M.u_element(n, l)).components()
    cong = M.e2_rhs(n, l, variant="congruent").components()
    out = {}
    for idx, poly in sorted(cong.items()):
        key = next(iter(poly.terms))
        out[idx] = img[idx].terms[key] / poly.terms[key]
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--l", type=int, default=0)
    args = ap.parse_args()
    M = WhittakerModule()
    q = M.q
    for n in range(1, args.nmax + 1):
        print(f"n = {n}")
        for (a, k, e), r in ratios(M, n, args.l).items():
            j = (e - 1 - args.l) // 2
            tag = "ok" if r == q ** (k + j) else "UNEXPECTED"
            print(f"  F2^{a} F3^{k} K2^{e}: true/congruent = {r}  (q^(k+j) = q^{k + j}: {tag})")
        img = M.act_generator("E2", M.u_element(n, args.l))
        for variant in ("exact", "congruent"):
            diff = img - M.e2_rhs(n, args.l, variant=variant)
            mod = [M.reduce_mod(diff, Maximal(kappa, c)).is_zero() for kappa, c in e2_panel()]
            print(f"  {variant:9s}: exact in M = {diff.is_zero()}, zero mod J on panel = {mod}")


if __name__ == "__main__":
    main()
