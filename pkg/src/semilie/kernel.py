"""Derivative matrices across (ve, r), their row reduction, and exact rank
certificates; also the vanishing test-function combinations.

The matrix M has entry (i, r) equal to the normalised derivative D at
parameters (r, vb + vc, ve = i, vda) -- see ``orbital.derivative_closed_form``.
D depends on vb and vc only through their sum, so a matrix is keyed by
(sum_bc, vda, N) where N + 1 is the number of columns.  Relative to the
un-normalised derivative the stored entries differ by a global sign
(-1)**vc, which changes neither rank nor any zero pattern.

Rank certification is two-sided: a fraction-free (Bareiss) elimination over
exact q-polynomials computes the rank outright, and independently the
reduced matrix M'' is checked against the predicted zero pattern and
anti-diagonal entries, whose product is spot-evaluated at q = 3, 5, 7.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactpoly import QPolynomial
from .orbital import (
    INFINITY,
    HeckeVector,
    InvalidParamsError,
    OrbitalParams,
    derivative_closed_form,
    derivative_of_vector,
)


@dataclass(frozen=True)
class DerivMatrix:
    """(N + floor(theta/2) + 2) x (N + 1) matrix of normalised derivatives."""

    sum_bc: int
    vda: int | float
    n_cap: int
    entries: tuple = field(repr=False)

    @property
    def theta(self) -> int:
        return min(self.sum_bc, 2 * self.vda)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, r: int) -> QPolynomial:
        return self.entries[i][r]


def build_matrix(sum_bc: int, vda: int | float, n_cap: int) -> DerivMatrix:
    """Entry (i, r) = D(r, vb + vc = sum_bc, ve = i, vda) for
    0 <= i <= n_cap + floor(theta/2) + 1 and 0 <= r <= n_cap."""
    if sum_bc % 2 == 0 or sum_bc < 1:
        raise InvalidParamsError(f"sum_bc must be odd and >= 1, got {sum_bc}")
    if vda != INFINITY and (not isinstance(vda, int) or vda < 0):
        raise InvalidParamsError(f"vda must be a nonnegative int or INFINITY, got {vda!r}")
    if n_cap < 0:
        raise InvalidParamsError(f"N must be >= 0, got {n_cap}")
    theta = min(sum_bc, 2 * vda)
    rows = n_cap + theta // 2 + 2
    entries = tuple(
        tuple(
            derivative_closed_form(OrbitalParams(r=r, vb=0, vc=sum_bc, ve=i, vda=vda))
            for r in range(n_cap + 1)
        )
        for i in range(rows)
    )
    return DerivMatrix(sum_bc=sum_bc, vda=vda, n_cap=n_cap, entries=entries)


def row_reduce(m: DerivMatrix) -> tuple[DerivMatrix, DerivMatrix]:
    """Two row-reduction passes: single-step downward differences give M',
    then two-step differences of M' give M''."""
    rows = [list(row) for row in m.entries]
    for i in range(len(rows) - 2, -1, -1):
        rows[i + 1] = [a - b for a, b in zip(rows[i + 1], rows[i])]
    m1 = DerivMatrix(m.sum_bc, m.vda, m.n_cap, tuple(tuple(r) for r in rows))
    for i in range(len(rows) - 3, -1, -1):
        rows[i + 2] = [a - b for a, b in zip(rows[i + 2], rows[i])]
    m2 = DerivMatrix(m.sum_bc, m.vda, m.n_cap, tuple(tuple(r) for r in rows))
    return m1, m2


def _bareiss_rank(entries) -> int:
    """Fraction-free elimination rank of a matrix of QPolynomials."""
    mat = [list(row) for row in entries]
    n_rows = len(mat)
    n_cols = len(mat[0]) if n_rows else 0
    prev = QPolynomial.one()
    rank = 0
    for col in range(n_cols):
        pivot_row = next((i for i in range(rank, n_rows) if mat[i][col]), None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        piv = mat[rank][col]
        for i in range(rank + 1, n_rows):
            row_i, row_p = mat[i], mat[rank]
            head = row_i[col]
            for j in range(col + 1, n_cols):
                row_i[j] = (piv * row_i[j] - head * row_p[j]).div_exact(prev)
            row_i[col] = QPolynomial.zero()
        prev = piv
        rank += 1
        if rank == min(n_rows, n_cols):
            break
    return rank


def predicted_antidiagonal(m: DerivMatrix, r: int) -> QPolynomial:
    """Predicted M'' entry at (r + floor(theta/2) + 1, r).

    theta odd:  q**x - q**(x-1)                       with x = r + floor(theta/2),
    theta even: -C1 q**x - (C1+1) q**(x-1)            with C1 = (sum_bc - 1 - 2 vda)/2,
    and in either case the q**(x-1) term is dropped when x = 0."""
    theta = m.theta
    x = r + theta // 2
    if theta % 2:
        out = QPolynomial.q_power(x)
        if x >= 1:
            out = out - QPolynomial.q_power(x - 1)
        return out
    c1 = (m.sum_bc - 1 - 2 * m.vda) // 2
    out = QPolynomial.q_power(x, -c1)
    if x >= 1:
        out = out - QPolynomial.q_power(x - 1, c1 + 1)
    return out


@dataclass
class RankCertificate:
    sum_bc: int
    vda: int | float
    n_cap: int
    rank: int
    expected_rank: int
    pivot_rows: list[int]
    structural_zeros: bool
    antidiagonal_match: bool
    fallback_row_used: bool
    spot_checks: dict
    flags: list[str]

    @property
    def full_rank(self) -> bool:
        return self.rank == self.expected_rank

    @property
    def passed(self) -> bool:
        return (
            self.full_rank
            and self.structural_zeros
            and self.antidiagonal_match
            and all(self.spot_checks.values())
            and not self.flags
        )

    def label(self) -> dict:
        vda = "inf" if self.vda == INFINITY else self.vda
        return {"sum_bc": self.sum_bc, "vda": vda, "N": self.n_cap}


def certify_full_rank(m: DerivMatrix) -> RankCertificate:
    """Exact elimination rank plus the structural checks on M''."""
    _, m2 = row_reduce(m)
    theta = m.theta
    half = theta // 2
    flags: list[str] = []

    structural = all(
        not m2.entry(i, r)
        for r in range(m.cols)
        for i in range(r + half + 2, m.rows)
    )

    antidiagonal = True
    pivot_rows: list[int] = []
    pivots: list[QPolynomial] = []
    fallback = False
    for r in range(m.cols):
        i = r + half + 1
        predicted = predicted_antidiagonal(m, r)
        actual = m2.entry(i, r)
        if actual != predicted:
            antidiagonal = False
            flags.append(f"entry ({i},{r}) != predicted anti-diagonal value")
        if actual:
            pivot_rows.append(i)
            pivots.append(actual)
        elif r == 0:
            # Zero pivot can legitimately happen only at column 0 when
            # r + floor(theta/2) <= 1; substitute the top row, whose leading
            # entry (sum_bc + 1)/2 is positive.
            fallback = True
            pivot_rows.append(0)
            pivots.append(m2.entry(0, 0))
            if r + half > 1:
                flags.append("unexpected zero pivot at column 0")
        else:
            flags.append(f"unexpected zero pivot at column {r}")
            pivot_rows.append(i)
            pivots.append(actual)

    rank = _bareiss_rank(m.entries)

    product = QPolynomial.one()
    for piv in pivots:
        product = product * piv
    spot = {q: bool(product.evaluate(q)) for q in (3, 5, 7)}

    return RankCertificate(
        sum_bc=m.sum_bc,
        vda=m.vda,
        n_cap=m.n_cap,
        rank=rank,
        expected_rank=m.cols,
        pivot_rows=pivot_rows,
        structural_zeros=structural,
        antidiagonal_match=antidiagonal,
        fallback_row_used=fallback,
        spot_checks=spot,
        flags=flags,
    )


def large_r_vector(r: int) -> HeckeVector:
    """The combination with weights 1, 2, 1 at levels r, r-1, r-2."""
    return HeckeVector({r: 1, r - 1: 2, r - 2: 1})


def test_large_r_vanishing(p: OrbitalParams) -> dict:
    """Evaluate the 1,2,1 combination at ``p``; it must vanish for
    r >= ve + 2, and is merely recorded otherwise."""
    value = derivative_of_vector(p, large_r_vector(p.r))
    expected_zero = p.r >= p.ve + 2
    return {
        "params": p.label(),
        "value": value.to_json(),
        "expected_zero": expected_zero,
        "pass": (not expected_zero) or value.is_zero(),
    }


def phi_vector(r: int) -> HeckeVector:
    """Levels r, r-1 with weight 1 and levels r-2, r-3 with weight -q**2."""
    if r < 3:
        raise InvalidParamsError(f"phi is defined for r >= 3, got {r}")
    q2 = QPolynomial.q_power(2)
    return HeckeVector({r: 1, r - 1: 1, r - 2: -q2, r - 3: -q2})


def phi_sequence_vector(r: int) -> HeckeVector:
    """phi_r + (q+1) phi_(r-1) + q phi_(r-2), for r >= 5."""
    if r < 5:
        raise InvalidParamsError(f"the sequence is defined for r >= 5, got {r}")
    q = QPolynomial.q_power(1)
    out = phi_vector(r)
    out = out + phi_vector(r - 1).scale(q + QPolynomial.one())
    out = out + phi_vector(r - 2).scale(q)
    return out


def phi_exceptional_window(p: OrbitalParams) -> tuple[int, int]:
    """The three consecutive r values where the sequence may not vanish:
    ve - min((vb+vc-1)/2, vda) + 2 through + 4."""
    m = min((p.vb + p.vc - 1) // 2, p.vda)
    return (p.ve - m + 2, p.ve - m + 4)


def test_phi_sequence(p: OrbitalParams, r: int) -> dict:
    """Evaluate the sequence combination at level r; it must vanish outside
    the exceptional window, and is merely recorded inside it."""
    value = derivative_of_vector(p, phi_sequence_vector(r))
    lo, hi = phi_exceptional_window(p)
    inside = lo <= r <= hi
    return {
        "params": p.label(),
        "r": r,
        "window": [lo, hi],
        "value": value.to_json(),
        "pass": inside or value.is_zero(),
        "inside_window": inside,
    }
