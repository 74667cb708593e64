"""Sparse exact Gauss-Jordan elimination over any field of scalars.

Vectors are dicts ``{column: value}`` with no stored zeros.  Column labels
only need to be hashable and sortable.
"""

from __future__ import annotations

__all__ = ["Echelon", "nullspace", "combination_of"]


def _axpy(target, x, a):
    # target += a * x, in place
    for col, v in x.items():
        w = target.get(col)
        if w is None:
            target[col] = a * v
        else:
            w = w + a * v
            if w == 0:
                del target[col]
            else:
                target[col] = w


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each stored row is normalized so its pivot entry is 1, and no other row
    has a nonzero in that pivot column.  Rows optionally carry a ``tag``
    combination recording how they were formed from the inserted vectors.
    """

    def __init__(self, track=False):
        self.rows = {}      # pivot column -> row
        self.tags = {}      # pivot column -> {input index: coefficient}
        self.track = track
        self._count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return (residual, combination) with residual free of pivot columns."""
        r = dict(vec)
        comb = {}
        for col in [c for c in r if c in self.rows]:
            a = r.get(col)
            if a is None:
                continue
            _axpy(r, self.rows[col], -a)
            if self.track:
                _axpy(comb, self.tags[col], a)
        return r, comb

    def add(self, vec):
        """Insert a vector; returns True when it was independent."""
        idx = self._count
        self._count += 1
        r, comb = self.reduce(vec)
        if not r:
            return False
        pivot = min(r)
        inv = 1 / r[pivot]
        r = {c: v * inv for c, v in r.items()}
        tag = None
        if self.track:
            tag = {i: -v * inv for i, v in comb.items()}
            tag[idx] = inv
        for col, row in self.rows.items():
            a = row.get(pivot)
            if a is not None:
                _axpy(row, r, -a)
                if self.track:
                    _axpy(self.tags[col], tag, -a)
        self.rows[pivot] = r
        if self.track:
            self.tags[pivot] = tag
        return True


def nullspace(rows, columns, one):
    """Basis of {x : row . x = 0 for every row}, x indexed by ``columns``.

    Returns a list of dicts, one per free column, sorted by that column.
    """
    ech = Echelon()
    for row in rows:
        ech.add(row)
    pivots = set(ech.rows)
    basis = []
    for free in sorted(c for c in columns if c not in pivots):
        x = {free: one}
        for p, row in ech.rows.items():
            a = row.get(free)
            if a is not None:
                x[p] = -a
        basis.append(x)
    return basis


def combination_of(vectors, target):
    """Coefficients c with sum c_i vectors[i] == target, or None if impossible."""
    ech = Echelon(track=True)
    for vec in vectors:
        ech.add(vec)
    residual, comb = ech.reduce(target)
    if residual:
        return None
    # vectors dropped as dependent simply receive no coefficient
    return {i: v for i, v in comb.items() if v != 0}
