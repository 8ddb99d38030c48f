"""Dense exact linear algebra over a :class:`~strata.field.Field`."""

from __future__ import annotations

from .field import Field


def rref(F: Field, rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns (input is not modified)."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    sub, mul, inv = F.sub, F.mul, F.inv
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        s = inv(A[r][c])
        A[r] = [mul(v, s) for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [sub(a, mul(f, b)) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(F: Field, rows: list[list]) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: Field, rows: list[list], ncols: int) -> list[list]:
    """Basis of ``{v : A v = 0}`` as a list of vectors."""
    if not rows:
        return [[F(1) if i == j else F(0) for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(F, rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [F(0)] * ncols
        v[f] = F(1)
        for r, pc in enumerate(piv):
            v[pc] = F.neg(R[r][f])
        basis.append(v)
    return basis
