"""Exact sparse row reduction over the rationals.

Vectors are dicts ``key -> Fraction`` with no zero entries. Keys only need
to be hashable and orderable through the ``key`` function given to
:class:`Echelon`.
"""

from __future__ import annotations

from fractions import Fraction


def _axpy(y: dict, c, x: dict) -> dict:
    """``y + c*x`` as a new dict."""
    out = dict(y)
    for k, v in x.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Reduced row echelon basis of a growing subspace.

    Each stored row has its pivot equal to its least key, a coefficient of 1
    there, and zeros at every other pivot.
    """

    def __init__(self, vectors=(), key=None):
        self.key = key or (lambda k: k)
        self.rows: dict = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        out = {k: Fraction(v) for k, v in vec.items() if v}
        for p, row in self.rows.items():
            c = out.get(p)
            if c:
                out = _axpy(out, -c, row)
        return out

    def add(self, vec: dict) -> bool:
        """Add ``vec``; returns False if it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r, key=self.key)
        c = r[p]
        r = {k: v / c for k, v in r.items()}
        for q, row in self.rows.items():
            d = row.get(p)
            if d:
                self.rows[q] = _axpy(row, -d, r)
        self.rows[p] = r
        return True

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows, key=self.key)]

    def contains_span(self, other: "Echelon") -> bool:
        return all(row in self for row in other.rows.values())

    def same_span(self, other: "Echelon") -> bool:
        return self.rank == other.rank and self.contains_span(other)


def span_intersection(us, ws, key=None) -> Echelon:
    """Basis of span(us) & span(ws) by Zassenhaus' algorithm."""
    key = key or (lambda k: k)

    def tagged(k):
        return (k[0], key(k[1]))

    big = Echelon(key=tagged)
    for u in us:
        big.add({**{(0, k): v for k, v in u.items()}, **{(1, k): v for k, v in u.items()}})
    for w in ws:
        big.add({(0, k): v for k, v in w.items()})
    result = Echelon(key=key)
    for p, row in big.rows.items():
        if p[0] == 1:
            result.add({k[1]: v for k, v in row.items()})
    return result
