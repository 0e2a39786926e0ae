"""Exact sparse Gaussian elimination over a :class:`~twistcalc.scalars.FieldSpec`.

Vectors are dicts ``{column: Scalar}`` with no zero entries.  Column priority
is given by a sort key: the pivot of a row is its column with the smallest key.
"""

from __future__ import annotations


def _axpy(v, c, w):
    """``v - c*w`` for sparse vectors."""
    out = dict(v)
    for k, x in w.items():
        if k in out:
            s = out[k] - c * x
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = -(c * x)
    return out


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self, key=lambda col: col):
        self.key = key
        self.rows = {}  # pivot column -> normalized, fully reduced row

    def reduce(self, v):
        v = {k: c for k, c in v.items() if not c.is_zero()}
        for p, row in self.rows.items():
            c = v.get(p)
            if c is not None:
                v = _axpy(v, c, row)
        return v

    def add(self, v) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        p = min(v, key=self.key)
        inv = v[p].inverse()
        v = {k: c * inv for k, c in v.items()}
        for q, row in list(self.rows.items()):
            c = row.get(p)
            if c is not None:
                self.rows[q] = _axpy(row, c, v)
        self.rows[p] = v
        return True

    def __contains__(self, v):
        return not self.reduce(v)

    def __len__(self):
        return len(self.rows)

    def basis(self):
        """Rows sorted by pivot priority (highest priority first)."""
        return [self.rows[p] for p in sorted(self.rows, key=self.key)]

    def pivots(self):
        return sorted(self.rows, key=self.key)


def rref(vectors, key=lambda col: col):
    e = Echelon(key)
    for v in vectors:
        e.add(v)
    return e.basis()


def rank(vectors, key=lambda col: col):
    e = Echelon(key)
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(images, field, key=lambda j: j):
    """Basis of ``{v : sum_j v[j] * images[j] = 0}``.

    ``images`` maps each domain column ``j`` to its image (a sparse vector over
    arbitrary target coordinates).  The returned basis is in reduced echelon
    form with respect to ``key`` on domain columns.
    """
    # augment each image with an identity tag; eliminating the image part
    # leaves the relations among the tags
    one = field.one()
    tagged = []
    for j, img in images.items():
        v = {("img", t): c for t, c in img.items()}
        v[("dom", j)] = one
        tagged.append(v)

    def aug_key(col):
        kind, c = col
        return (0, repr(c)) if kind == "img" else (1, key(c))

    e = Echelon(aug_key)
    for v in tagged:
        e.add(v)
    rel = [
        {c: x for (kind, c), x in row.items()}
        for p, row in e.rows.items()
        if p[0] == "dom"
    ]
    return rref(rel, key)


def same_span(a, b, key=lambda col: col) -> bool:
    return rref(a, key) == rref(b, key)
