"""Transfer matrices: weighted walk counting over the submonoid graph.

The matrix ``W`` has one row and column per submonoid in the canonical
lattice order, with entry (A, B) the number of ideals I of A satisfying
I union B == A.  Row sums of its n-th power count the submonoids of the
product of the monoid with a chain of length n.  All arithmetic is exact
integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange
from .monoid import CayleyMonoid
from .submonoids import (
    DEFAULT_MAX_MONOID_SIZE,
    SubmonoidLattice,
    UpsetCounter,
    condense,
    divisibility_preorder,
    enumerate_submonoids,
    mask_of,
)


@dataclass
class TransferMatrix:
    lattice: SubmonoidLattice
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(self.size))


@dataclass
class CountSequence:
    """Exact counts S_0..S_n for one monoid; always positive and nondecreasing."""

    values: tuple[int, ...]
    label: str = ""


def build_transfer_matrix(
    monoid: CayleyMonoid, max_size: int = DEFAULT_MAX_MONOID_SIZE
) -> TransferMatrix:
    """Build the full weight matrix in the canonical lattice order."""
    lattice = enumerate_submonoids(monoid, max_size=max_size)
    members = lattice.members
    k = len(members)
    rows = []
    for i, a in enumerate(members):
        cond = condense(divisibility_preorder(monoid, a))
        counter = UpsetCounter(cond.order)
        class_masks = [mask_of(cls) for cls in cond.classes]
        row = [0] * k
        for j in range(i + 1):
            b = members[j]
            if b & ~a:
                continue
            forced = a & ~b
            required = 0
            for c, cls_mask in enumerate(class_masks):
                if forced & cls_mask:
                    required |= cond.order.up[c]
            row[j] = counter.count(cond.order.full_mask & ~required)
        rows.append(tuple(row))
    matrix = TransferMatrix(lattice=lattice, entries=tuple(rows))
    _check_shape(matrix)
    return matrix


def _check_shape(matrix: TransferMatrix) -> None:
    # Lower triangular with every diagonal entry at least 2 (the empty set
    # and the submonoid itself are always ideals).
    for i in range(matrix.size):
        assert matrix.entries[i][i] >= 2, f"diagonal entry {i} below 2"
        for j in range(i + 1, matrix.size):
            assert matrix.entries[i][j] == 0, f"entry ({i},{j}) above the diagonal"


def _sparse_rows(matrix: TransferMatrix):
    return [
        tuple((j, w) for j, w in enumerate(row) if w) for row in matrix.entries
    ]


def _matvec(sparse_rows, vector):
    return [sum(w * vector[j] for j, w in row) for row in sparse_rows]


def count_sequence(
    matrix: TransferMatrix, n_max: int, label: str = ""
) -> CountSequence:
    """S_n for n = 0..n_max by iterated matrix-vector products.

    Every intermediate term is kept, which the recurrence checks need.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    sparse = _sparse_rows(matrix)
    vector = [1] * matrix.size
    values = [matrix.size]
    for _ in range(n_max):
        vector = _matvec(sparse, vector)
        values.append(sum(vector))
    for prev, nxt in zip(values, values[1:]):
        assert 0 < prev <= nxt, "counts must be positive and nondecreasing"
    return CountSequence(values=tuple(values), label=label)


def counts_by_projection(matrix: TransferMatrix, n: int, row: int, col: int) -> int:
    """Entry (row, col) of the n-th power of the matrix.

    Counts submonoids of the n-fold chain product whose top-layer
    projection is ``row``'s submonoid and whose next projection is
    ``col``'s.
    """
    k = matrix.size
    if not 0 <= row < k or not 0 <= col < k:
        raise IndexOutOfRange(f"indices ({row}, {col}) outside 0..{k - 1}")
    if n < 0:
        raise IndexOutOfRange("power must be >= 0")
    sparse = _sparse_rows(matrix)
    vector = [0] * k
    vector[col] = 1
    for _ in range(n):
        vector = _matvec(sparse, vector)
    return vector[row]


@dataclass(frozen=True)
class AsymptoticProfile:
    """Growth data: counts grow like n**degree * base**n.

    ``base`` is the largest diagonal entry (the maximal ideal count over
    submonoids), ``multiplicity`` how many submonoids attain it, and
    ``degree_bound`` the longest path length within the attaining set,
    self-loops excluded.
    """

    base: int
    multiplicity: int
    degree_bound: int


def asymptotics(matrix: TransferMatrix) -> AsymptoticProfile:
    diag = matrix.diagonal()
    base = max(diag)
    attaining = [i for i, d in enumerate(diag) if d == base]
    attaining_set = set(attaining)
    longest = {}
    for i in attaining:
        best = 0
        for j, w in enumerate(matrix.entries[i][:i]):
            if w and j in attaining_set:
                best = max(best, longest[j] + 1)
        longest[i] = best
    degree = max(longest.values()) if longest else 0
    return AsymptoticProfile(
        base=base, multiplicity=len(attaining), degree_bound=degree
    )
