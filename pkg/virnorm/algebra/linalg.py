"""Exact linear algebra: Bareiss determinants, fraction-free kernels, field solves."""
from typing import Any, Callable, List, Optional, Sequence

from sympy import QQ

from ..core.exceptions import DivisionByZeroError

Matrix = List[List[Any]]


def bareiss_det(
    matrix: Sequence[Sequence[Any]],
    one: Any,
    exquo: Optional[Callable[[Any, Any], Any]] = None,
) -> Any:
    """Fraction-free determinant over an integral domain.

    Args:
        matrix: Square matrix of ring elements
        one: The ring's unit, returned for the empty matrix
        exquo: Exact division in the ring; defaults to ``a.exquo(b)``

    Returns:
        The determinant as a ring element
    """
    if exquo is None:
        exquo = _poly_exquo
    work = [list(row) for row in matrix]
    n = len(work)
    if n == 0:
        return one
    sign = 1
    previous = one
    for k in range(n - 1):
        if not work[k][k]:
            swap = next((i for i in range(k + 1, n) if work[i][k]), None)
            if swap is None:
                return one * 0
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = exquo(work[i][j] * pivot - work[i][k] * work[k][j], previous)
            work[i][k] = one * 0
        previous = pivot
    result = work[n - 1][n - 1]
    return result if sign > 0 else -result


def _poly_exquo(a: Any, b: Any) -> Any:
    if b == 1:
        return a
    return a.exquo(b)


def minor(matrix: Sequence[Sequence[Any]], row: int, col: int) -> Matrix:
    return [
        [value for j, value in enumerate(line) if j != col]
        for i, line in enumerate(matrix)
        if i != row
    ]


def _strip_content(row: List[Any]) -> List[Any]:
    """Divide a polynomial row by the gcd of its nonzero entries."""
    common = None
    for value in row:
        if value:
            common = value if common is None else common.gcd(value)
            if common == 1:
                return row
    if common is None or common == 1:
        return row
    if common.LC < 0:
        common = -common
    return [value.exquo(common) if value else value for value in row]


def fraction_free_kernel(rows: Sequence[Sequence[Any]], ncols: int, ring) -> Matrix:
    """Kernel basis of a polynomial matrix, with polynomial entries.

    Gauss-Jordan elimination where each row operation is scaled by gcd cofactors
    and every updated row is divided by its content, so entries never leave the
    polynomial ring. Pivots of lowest degree are preferred.

    Args:
        rows: Matrix rows over ``ring`` (a sympy polynomial ring with gcd)
        ncols: Number of unknowns
        ring: The polynomial ring

    Returns:
        List of kernel vectors, one per free column
    """
    work = [_strip_content([ring(v) for v in row]) for row in rows if any(row)]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        candidates = [i for i in range(rank, len(work)) if work[i][col]]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (work[i][col].degree(), len(work[i][col])))
        work[rank], work[best] = work[best], work[rank]
        pivot_row = work[rank]
        pivot = pivot_row[col]
        for i in range(len(work)):
            if i == rank or not work[i][col]:
                continue
            _, keep, drop = pivot.cofactors(work[i][col])
            work[i] = _strip_content(
                [keep * a - drop * b for a, b in zip(work[i], pivot_row)]
            )
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    work = work[:rank]
    free = [c for c in range(ncols) if c not in pivots]
    basis: Matrix = []
    for free_col in free:
        scale = ring.one
        for row, col in zip(work, pivots):
            if row[free_col]:
                scale = scale.lcm(row[col].exquo(row[col].gcd(row[free_col])))
        vector = [ring.zero] * ncols
        vector[free_col] = scale
        for row, col in zip(work, pivots):
            if row[free_col]:
                vector[col] = -(row[free_col] * scale).exquo(row[col])
        basis.append(_strip_content(vector))
    return basis


def solve_field(matrix: Sequence[Sequence[Any]], rhs: Sequence[Sequence[Any]]) -> Matrix:
    """Solve ``matrix @ X = rhs`` over a field by Gauss-Jordan elimination.

    Args:
        matrix: Square matrix over a field (QQ by default)
        rhs: Right-hand side as a list of rows, one column per system

    Returns:
        Solution rows

    Raises:
        DivisionByZeroError: If the matrix is singular
    """
    n = len(matrix)
    width = len(rhs[0]) if rhs else 0
    work = [list(matrix[i]) + list(rhs[i]) for i in range(n)]
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if work[i][col]), None)
        if pivot_row is None:
            raise DivisionByZeroError("singular matrix")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        inverse = 1 / work[col][col]
        work[col] = [value * inverse for value in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[col])]
    return [row[n : n + width] for row in work]


def inverse_field(matrix: Sequence[Sequence[Any]]) -> Matrix:
    n = len(matrix)
    identity = [[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)]
    return solve_field(matrix, identity)
