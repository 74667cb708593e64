"""Check the sextic relation between kappa and the central values symbolically.

Substitutes the central values A(kappa, c), B(kappa, c) into the sextic with
generic kappa = alpha and c a free-looking rational function, and reports the
residual (zero when the reference t^2 coefficient is right) together with the
t^2 coefficient that the relation forces.

    python scripts/sextic_identity.py
"""

from uqwhittaker import structure as S
from uqwhittaker.scalars import SYMBOLIC


def main():
    q, a = SYMBOLIC.q, SYMBOLIC.alpha
    samples = [(a, q + a), (q * a, 1 / (a - q)), (a ** 2, SYMBOLIC.zero), (SYMBOLIC.one, SYMBOLIC.zero)]
    for kappa, c in samples:
        res = S.sextic_residual(kappa, c)
        forced = S.derived_sextic_coeff2(kappa, c)
        A, B = S.central_values(kappa, c)
        reference = (q ** 3 * kappa * A ** 3 + 3 - 3 * A * B) * q ** 6
        print(f"kappa = {kappa}, c = {c}")
        print(f"  residual = {res}")
        print(f"  forced t^2 coefficient equals reference: {forced == reference}")


if __name__ == "__main__":
    main()
