"""Reference (kappa, c) pairs covering every composition type."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .scalars import SYMBOLIC

__all__ = ["PanelPoint", "reference_panel", "e2_panel"]


@dataclass(frozen=True)
class PanelPoint:
    name: str
    kappa: Any
    c: Any
    roots: tuple      # expected roots of h_n(kappa, c)
    kind: str         # expected composition type

    @property
    def expected_dimension(self):
        return 1 + len(self.roots)


def reference_panel():
    """Two non-critical, two two-root, one one-root and one symbolic pair."""
    q, a = SYMBOLIC.q, SYMBOLIC.alpha
    d = (q - 1 / q) ** 2
    return [
        PanelPoint("noncritical-1", SYMBOLIC.coerce(1), SYMBOLIC.coerce(0), (), "irreducible"),
        PanelPoint("noncritical-2", SYMBOLIC.coerce(2), SYMBOLIC.coerce(1), (), "irreducible"),
        PanelPoint("two-root-12", SYMBOLIC.coerce(1), (q + 1 / q) / d, (1, 2), "two_step"),
        PanelPoint("two-root-13", q, (q ** 2 + q ** -2) / d, (1, 3), "two_step"),
        PanelPoint("one-root", SYMBOLIC.coerce(2), (2 * q + 1 / (2 * q)) / d, (1,), "unique_proper"),
        PanelPoint("symbolic", a, (q * a + 1 / (q * a)) / d, (1,), "unique_proper"),
    ]


def e2_panel():
    """Five (kappa, c) pairs for congruence checks of the E2 closed form."""
    q, a = SYMBOLIC.q, SYMBOLIC.alpha
    d = (q - 1 / q) ** 2
    one = SYMBOLIC.coerce(1)
    return [
        (one, SYMBOLIC.coerce(0)),
        (SYMBOLIC.coerce(2), SYMBOLIC.coerce(1)),
        (one, (q + 1 / q) / d),
        (q, (q ** 2 + q ** -2) / d),
        (a, (q * a + 1 / (q * a)) / d),
    ]
