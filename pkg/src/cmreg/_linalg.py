"""Dense reduced row echelon form over an exact field.

Only what the graded-piece computations need: deterministic RREF of a list
of coefficient rows, smallest pivot column first, pivots normalized to 1.
"""

from __future__ import annotations


def rref(rows, field):
    """Reduced row echelon form of `rows` (lists of field elements).

    Returns the nonzero reduced rows ordered by pivot column.  Input rows are
    not mutated.  Works for any exact field object exposing __call__ on ints,
    inv, mul, sub (the conventions of the ring module's field classes).
    """
    if not rows:
        return []
    width = len(rows[0])
    work = [list(r) for r in rows]
    out = []
    col = 0
    rank = 0
    while col < width and rank < len(work):
        pivot_row = None
        for r in range(rank, len(work)):
            if work[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = field.inv(work[rank][col])
        row = work[rank]
        if inv != 1:
            for j in range(col, width):
                if row[j] != 0:
                    row[j] = field.mul(row[j], inv)
        for r in range(len(work)):
            if r == rank:
                continue
            factor = work[r][col]
            if factor == 0:
                continue
            other = work[r]
            for j in range(col, width):
                if row[j] != 0:
                    other[j] = field.sub(other[j], field.mul(factor, row[j]))
        rank += 1
        col += 1
    for row in work[:rank]:
        out.append(row)
    return out
