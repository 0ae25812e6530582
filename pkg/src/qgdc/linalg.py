"""Gaussian elimination over an exact coefficient field.

Used for the skew-inverse solve, for deriving rewrite rules from
relation sets, and for the eigencomponent solves of the spectral layer.
Rows are sparse dicts keyed by arbitrary hashable column labels.
"""

from __future__ import annotations


class LinearSolveError(Exception):
    pass


def solve_unique(rows, rhs, field):
    """Solve the sparse linear system ``rows * x = rhs``.

    ``rows`` is a list of dicts {column_key: coefficient}; ``rhs`` a list
    of field elements.  Returns {column_key: value} over all columns that
    appear.  Raises LinearSolveError if the system is inconsistent or if
    any appearing column is undetermined.
    """
    work = [(dict(r), v) for r, v in zip(rows, rhs)]
    columns = set()
    for r, _ in work:
        columns.update(r)
    solution = {}
    order = sorted(columns, key=repr)
    for col in order:
        pivot = None
        for i, (r, v) in enumerate(work):
            if col in r and r[col]:
                # prefer short rows: keeps the elimination sparse
                if pivot is None or len(r) < len(work[pivot][0]):
                    pivot = i
        if pivot is None:
            continue
        prow, pval = work.pop(pivot)
        c = prow[col]
        prow = {k: v / c for k, v in prow.items()}
        pval = pval / c
        reduced = []
        for r, v in work:
            if col in r and r[col]:
                f = r[col]
                r2 = dict(r)
                for k, pv in prow.items():
                    nv = r2.get(k, field.zero) - f * pv
                    if nv:
                        r2[k] = nv
                    else:
                        r2.pop(k, None)
                reduced.append((r2, v - f * pval))
            else:
                reduced.append((r, v))
        work = reduced
        solution[col] = (prow, pval)
    # inconsistency: leftover rows with nonzero rhs
    for r, v in work:
        live = {k for k, c in r.items() if c}
        if not live and v:
            raise LinearSolveError("inconsistent linear system")
        if live:
            raise LinearSolveError("underdetermined linear system "
                                   "(free columns %r)" % sorted(live, key=repr)[:4])
    # back substitution
    values = {}
    for col in reversed(order):
        if col not in solution:
            raise LinearSolveError("column %r undetermined" % (col,))
        prow, pval = solution[col]
        acc = pval
        for k, c in prow.items():
            if k == col:
                continue
            acc = acc - c * values[k]
        values[col] = acc
    return values
