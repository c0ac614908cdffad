"""Exact incremental row reduction over a number field."""
from __future__ import annotations


class Echelon:
    """Reduced row echelon form grown one row at a time.

    Rows are lists of :class:`~polymoment.field.FieldElement` of a fixed width.
    """

    def __init__(self, width: int, field):
        self.width = width
        self.field = field
        self.rows = []      # each row has a 1 in its pivot column
        self.pivots = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add_row(self, row) -> bool:
        """Insert ``row``; return True if it increased the rank."""
        row = list(row)
        for r, p in zip(self.rows, self.pivots):
            c = row[p]
            if not c.is_zero():
                row = [x - c * y for x, y in zip(row, r)]
        piv = next((k for k, x in enumerate(row) if not x.is_zero()), None)
        if piv is None:
            return False
        inv = row[piv].inverse()
        row = [x * inv for x in row]
        # keep the form fully reduced
        for idx, r in enumerate(self.rows):
            c = r[piv]
            if not c.is_zero():
                self.rows[idx] = [x - c * y for x, y in zip(r, row)]
        self.rows.append(row)
        self.pivots.append(piv)
        return True

    def nullspace(self):
        """Basis of the right kernel, one vector per free column (ascending)."""
        free = [k for k in range(self.width) if k not in self.pivots]
        basis = []
        for f in free:
            v = [self.field.zero] * self.width
            v[f] = self.field.one
            for r, p in zip(self.rows, self.pivots):
                v[p] = -r[f]
            basis.append(v)
        return basis
