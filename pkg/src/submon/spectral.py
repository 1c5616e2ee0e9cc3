"""Exact spectra of transfer matrices of idempotent monoids.

For an idempotent commutative monoid the transfer matrix is diagonalizable
with positive integer eigenvalues (the diagonal entries, which count
antichains of the submonoids), and the counts satisfy

    S_n = sum over distinct eigenvalues v of  c_v * v**n

for rational coefficients c_v.  The coefficients are recovered exactly by
solving the Vandermonde system against the first terms of the sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    DegenerateSystem,
    NonIntegerCount,
    NonIntegerNormalization,
    NotIdempotent,
    SeriesMismatch,
)
from .monoid import is_idempotent, make_chain
from .submonoids import bits_of
from .transfer import CountSequence, TransferMatrix, build_transfer_matrix, count_sequence


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with their exact and normalized coefficients.

    ``normalized[i]`` is ``coefficients[i]`` times the product of
    (other eigenvalue - eigenvalues[i]) over the rest of the spectrum,
    which is always an integer.
    """

    eigenvalues: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    normalized: tuple[int, ...]


def eigenvalues(matrix: TransferMatrix) -> list[int]:
    """Distinct diagonal entries, ascending.

    Only valid for idempotent monoids, where the matrix is diagonalizable:
    submonoids sharing a diagonal value are incomparable, so the weight
    blocks between them vanish.  That certificate is checked here.
    """
    if not is_idempotent(matrix.lattice.monoid):
        raise NotIdempotent("spectral form requires an idempotent monoid")
    diag = matrix.diagonal()
    positions: dict[int, list[int]] = {}
    for i, d in enumerate(diag):
        positions.setdefault(d, []).append(i)
    for group in positions.values():
        for a in group:
            for b in group:
                if b < a:
                    assert matrix.entries[a][b] == 0, (
                        "equal-diagonal block is not diagonal"
                    )
    return sorted(positions)


def _solve_linear(matrix, rhs):
    """Solve a square system exactly over the rationals."""
    k = len(rhs)
    rows = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if rows[r][col]), None)
        if pivot is None:
            raise DegenerateSystem("linear system is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(k):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [v - factor * p for v, p in zip(rows[r], rows[col])]
    return tuple(row[k] for row in rows)


def solve_coefficients(eigs, prefix) -> tuple[Fraction, ...]:
    """Coefficients c with sum(c_j * eig_j**r) == prefix[r] for r < len(eigs).

    The system is Vandermonde in the eigenvalues, hence uniquely solvable
    when they are distinct.
    """
    eigs = list(eigs)
    if len(set(eigs)) != len(eigs):
        raise DegenerateSystem("eigenvalues must be distinct")
    if len(prefix) != len(eigs):
        raise ValueError("need exactly one sequence term per eigenvalue")
    rows = [[v**r for v in eigs] for r in range(len(eigs))]
    return _solve_linear(rows, list(prefix))


def normalize_coefficients(eigs, coefficients) -> tuple[int, ...]:
    """Clear denominators: multiply each coefficient by the product of
    eigenvalue gaps (other - this).  The results are always integers."""
    out = []
    for i, v in enumerate(eigs):
        gap = 1
        for j, u in enumerate(eigs):
            if j != i:
                gap *= u - v
        value = Fraction(coefficients[i]) * gap
        if value.denominator != 1:
            raise NonIntegerNormalization(
                f"normalized coefficient at eigenvalue {v} is {value}"
            )
        out.append(int(value))
    return tuple(out)


def spectrum_of(matrix: TransferMatrix) -> Spectrum:
    """Full pipeline: eigenvalues, exact coefficients, normalized values."""
    eigs = eigenvalues(matrix)
    prefix = count_sequence(matrix, len(eigs) - 1).values
    coefficients = solve_coefficients(eigs, prefix)
    assert sum(coefficients) == matrix.size, "coefficients must sum to S_0"
    return Spectrum(
        eigenvalues=tuple(eigs),
        coefficients=coefficients,
        normalized=normalize_coefficients(eigs, coefficients),
    )


def closed_form_eval(spectrum: Spectrum, n: int) -> int:
    """Evaluate sum(c_v * v**n); the rational parts always cancel."""
    total = sum(
        c * v**n for c, v in zip(spectrum.coefficients, spectrum.eigenvalues)
    )
    if total.denominator != 1:
        raise NonIntegerCount(f"closed form gave {total} at n={n}")
    return int(total)


def _recurrence_poly(eigs) -> list[int]:
    coeffs = [1]
    for v in eigs:
        nxt = coeffs + [0]
        for i, c in enumerate(coeffs):
            nxt[i + 1] -= v * c
        coeffs = nxt
    return coeffs


def verify_recurrence(eigs, sequence: CountSequence):
    """Check the constant recurrence driven by prod(1 - v*x) over the
    eigenvalues.  Returns (True, None) or (False, first failing index)."""
    eigs = list(eigs)
    k = len(eigs)
    values = sequence.values
    if len(values) < 2 * k:
        raise ValueError(f"need at least {2 * k} terms, got {len(values)}")
    poly = _recurrence_poly(eigs)
    for n in range(k, len(values)):
        acc = sum(poly[i] * values[n - i] for i in range(k + 1))
        if acc != 0:
            return False, n
    return True, None


@dataclass(frozen=True)
class RationalOGF:
    """Ordinary generating function as numerator over prod(1 - v*x)."""

    numerator: tuple[int, ...]
    denominator_roots: tuple[int, ...]

    def expand(self, n_max: int) -> list[int]:
        """First ``n_max + 1`` series coefficients, by exact long division."""
        den = _recurrence_poly(self.denominator_roots)
        out = []
        for n in range(n_max + 1):
            value = self.numerator[n] if n < len(self.numerator) else 0
            value -= sum(
                den[i] * out[n - i] for i in range(1, min(n, len(den) - 1) + 1)
            )
            out.append(value)
        return out


def ogf(
    matrix: TransferMatrix, spectrum: Spectrum, sequence: CountSequence
) -> RationalOGF:
    """The generating function of the counts, verified by a series round trip.

    The numerator is the degree < k truncation of the series times
    prod(1 - v*x); since the recurrence holds, higher product terms vanish,
    which is checked up to degree 2k.
    """
    diag = sorted(set(matrix.diagonal()))
    if list(spectrum.eigenvalues) != diag:
        raise ValueError("spectrum does not belong to this matrix")
    k = len(spectrum.eigenvalues)
    values = sequence.values
    if len(values) < 2 * k + 1:
        raise ValueError(f"need at least {2 * k + 1} terms, got {len(values)}")
    den = _recurrence_poly(spectrum.eigenvalues)
    product = [
        sum(den[i] * values[n - i] for i in range(min(n, k) + 1))
        for n in range(2 * k + 1)
    ]
    for n in range(k, 2 * k + 1):
        if product[n] != 0:
            raise SeriesMismatch(f"series product has degree-{n} term {product[n]}")
    result = RationalOGF(
        numerator=tuple(product[:k]),
        denominator_roots=spectrum.eigenvalues,
    )
    if result.expand(2 * k) != list(values[: 2 * k + 1]):
        raise SeriesMismatch("series expansion does not reproduce the counts")
    return result


def chain_eigenmatrix(m: int) -> tuple[tuple[int, ...], ...]:
    """Exact eigenmatrix of the transfer matrix of the chain 0..m.

    Rows and columns follow the canonical submonoid order.  The entry at
    (A, B) for B a subset of A is the signed product over a in A minus B of
    (1 + the number of elements of B at most a); other entries vanish.
    Verifies that conjugation diagonalizes the transfer matrix with
    eigenvalue popcount(B) + 1 and that the row sums of the inverse are
    (popcount(A) + 1)! / 2.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    monoid = make_chain(m)
    matrix = build_transfer_matrix(monoid)
    members = matrix.lattice.members
    k = len(members)
    q = []
    for a in members:
        row = []
        for b in members:
            if b & ~a:
                row.append(0)
                continue
            value = 1
            for elt in bits_of(a & ~b):
                below = (1 << elt + 1) - 1
                value *= 1 + (b & below).bit_count()
            if (a ^ b).bit_count() % 2:
                value = -value
            row.append(value)
        q.append(tuple(row))
    q = tuple(q)
    for i in range(k):
        for j in range(k):
            lhs = sum(matrix.entries[i][t] * q[t][j] for t in range(k))
            rhs = (members[j].bit_count() + 1) * q[i][j]
            assert lhs == rhs, f"eigenmatrix identity fails at ({i}, {j})"
    inverse_row_sums = _solve_linear(q, [1] * k)
    for i, total in enumerate(inverse_row_sums):
        expected = Fraction(factorial(members[i].bit_count() + 1), 2)
        assert total == expected, f"inverse row sum at {i} is {total}"
    return q
