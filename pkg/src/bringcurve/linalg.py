"""Dense linear algebra over a FieldCtx on lists of codes."""

from __future__ import annotations

from .ff import FieldCtx


def echelon(ctx: FieldCtx, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Row echelon form with leftmost-column, topmost-row pivoting.

    Returns the reduced rows (pivot entries scaled to 1) and the pivot columns.
    """
    a = [list(r) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = ctx.inv(a[r][c])
        a[r] = [ctx.mul(inv, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(ctx: FieldCtx, rows: list[list[int]]) -> int:
    return len(echelon(ctx, rows)[1])


def nullspace(ctx: FieldCtx, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : rows . v = 0}."""
    red, piv = echelon(ctx, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, piv):
            v[pc] = ctx.neg(row[f])
        basis.append(v)
    return basis


def solve(ctx: FieldCtx, mat: list[list[int]], rhs: list[int]) -> list[int]:
    """Solve a square nonsingular system mat . x = rhs."""
    n = len(mat)
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    red, piv = echelon(ctx, aug)
    if piv[:n] != list(range(n)) or len(piv) != n:
        raise ArithmeticError("singular linear system")
    return [red[i][n] for i in range(n)]


def inverse(ctx: FieldCtx, mat: list[list[int]]) -> list[list[int]]:
    n = len(mat)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    red, piv = echelon(ctx, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ArithmeticError("singular matrix")
    return [row[n:] for row in red[:n]]


def matvec(ctx: FieldCtx, mat: list[list[int]], v: list[int]) -> list[int]:
    out = []
    for row in mat:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = ctx.add(acc, ctx.mul(a, b))
        out.append(acc)
    return out
