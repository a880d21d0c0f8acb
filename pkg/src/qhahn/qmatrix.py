"""Truncated lower semi-matrices with exact entries.

Diagonal index convention: entry ``(j, k)`` lies on diagonal ``j - k``.  A
``(lo, hi)``-banded matrix has nonzero entries only on diagonals
``lo..hi``; e.g. the recurrence matrix L is ``(-1, 1)``-banded and D_q is
``(1, 1)``-banded.

A truncated matrix of order ``N`` stands for the leading ``N x N`` block of
a semi-infinite one.  Products of truncations are wrong near the cut, so
every matrix carries ``valid``: the leading ``valid x valid`` block is
known to be exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .coeffs import RecurrenceTable, aux_for_table, build_table, q_number, tilde_coeffs
from .errors import TruncationError


class BandedMatrix:
    """Exact banded matrix stored as one vector per diagonal.

    ``diags[n][j]`` holds entry ``(j, j - n)``; positions outside the
    ``N x N`` block are never stored.
    """

    __slots__ = ("N", "band", "diags", "valid")

    def __init__(self, N: int, band: tuple[int, int], diags: dict[int, list], valid: Optional[int] = None):
        lo, hi = band
        if lo > hi:
            raise ValueError(f"empty band {band}")
        self.N = N
        self.band = (lo, hi)
        self.diags = diags
        self.valid = N if valid is None else max(0, min(valid, N))

    @classmethod
    def from_function(cls, N, band, fn: Callable[[int, int], object], valid=None) -> BandedMatrix:
        lo, hi = band
        diags = {}
        for n in range(lo, hi + 1):
            diags[n] = [fn(j, j - n) if 0 <= j - n < N else 0 for j in range(N)]
        return cls(N, band, diags, valid)

    @classmethod
    def identity(cls, N) -> BandedMatrix:
        return cls(N, (0, 0), {0: [Fraction(1)] * N})

    def __getitem__(self, jk):
        j, k = jk
        n = j - k
        if not (0 <= j < self.N and 0 <= k < self.N):
            raise IndexError(jk)
        if n < self.band[0] or n > self.band[1]:
            return Fraction(0)
        return self.diags[n][j]

    def _combine(self, other: BandedMatrix, op) -> BandedMatrix:
        if self.N != other.N:
            raise ValueError("order mismatch")
        lo = min(self.band[0], other.band[0])
        hi = max(self.band[1], other.band[1])
        return BandedMatrix.from_function(
            self.N, (lo, hi), lambda j, k: op(self[j, k], other[j, k]), min(self.valid, other.valid)
        )

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> BandedMatrix:
        return BandedMatrix(self.N, self.band, {n: [c * x for x in v] for n, v in self.diags.items()}, self.valid)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: BandedMatrix) -> BandedMatrix:
        return banded_mul(self, other)

    def crop(self, n: int) -> BandedMatrix:
        if n > self.valid:
            raise TruncationError(f"only the leading {self.valid} x {self.valid} block is exact, {n} requested")
        return BandedMatrix.from_function(n, self.band, lambda j, k: self[j, k], n)

    def entries(self, region: Optional[int] = None):
        """Yield ``(j, k, value)`` for nonzero entries in the exact region."""
        r = self.valid if region is None else region
        for j in range(r):
            for n in range(self.band[0], self.band[1] + 1):
                k = j - n
                if 0 <= k < r:
                    v = self.diags[n][j]
                    if v != 0:
                        yield j, k, v

    def is_zero(self, region: Optional[int] = None) -> bool:
        return next(self.entries(region), None) is None

    def first_nonzero(self, region: Optional[int] = None):
        return next(self.entries(region), None)

    def to_rows(self, region: Optional[int] = None) -> list[list]:
        r = self.valid if region is None else region
        return [[self[j, k] for k in range(r)] for j in range(r)]

    def dump(self, region: Optional[int] = None) -> str:
        """Row-major sparse triples ``j k value``."""
        from .exactfield import format_scalar

        return "\n".join(f"{j} {k} {format_scalar(v)}" for j, k, v in self.entries(region))

    def __repr__(self):
        return f"BandedMatrix(N={self.N}, band={self.band}, valid={self.valid})"


def banded_mul(A: BandedMatrix, B: BandedMatrix) -> BandedMatrix:
    """Exact product; band is the sum of bands, the exact region shrinks
    where a sum would need entries beyond the truncation."""
    if A.N != B.N:
        raise ValueError("order mismatch")
    N = A.N
    (la, ha), (lb, hb) = A.band, B.band
    lo, hi = la + lb, ha + hb
    diags = {n: [0] * N for n in range(lo, hi + 1)}
    for na in range(la, ha + 1):
        da = A.diags[na]
        for nb in range(lb, hb + 1):
            db = B.diags[nb]
            dn = diags[na + nb]
            # (j, i) on diagonal na, (i, k) on diagonal nb
            for j in range(N):
                i = j - na
                if not (0 <= i < N) or not (0 <= i - nb < N):
                    continue
                a = da[j]
                if a == 0:
                    continue
                b = db[i]
                if b == 0:
                    continue
                dn[j] = dn[j] + a * b
    w = min(A.valid, B.valid)
    valid = min(w, w + max(la, -hb))
    return BandedMatrix(N, (lo, hi), diags, valid)


def build_operator(kind: str, q, N: int) -> BandedMatrix:
    """D_q ('Dq'), its left inverse ('DqHat') or the shift X ('X')."""
    if N < 2:
        raise ValueError("order must be at least 2")
    if kind == "Dq":
        return BandedMatrix.from_function(N, (1, 1), lambda j, k: q_number(j, q))
    if kind == "DqHat":
        return BandedMatrix.from_function(N, (-1, -1), lambda j, k: 1 / q_number(k, q))
    if kind == "X":
        return BandedMatrix.from_function(N, (-1, -1), lambda j, k: Fraction(1))
    raise ValueError(f"unknown operator {kind!r}")


def build_tridiagonal(alpha, beta, N: int) -> BandedMatrix:
    """Ones above the diagonal, beta_k on it, alpha_k below it.

    ``alpha[0]`` is alpha_1 and lands at ``(1, 0)``.
    """
    if len(beta) < N or len(alpha) < N - 1:
        raise ValueError(f"need {N} betas and {N - 1} alphas, got {len(beta)} and {len(alpha)}")

    def entry(j, k):
        if j == k:
            return beta[j]
        if j == k + 1:
            return alpha[k]
        return Fraction(1)

    return BandedMatrix.from_function(N, (-1, 1), entry)


def residual_quadratic(L: BandedMatrix, M: BandedMatrix, t, q, N: int) -> BandedMatrix:
    """``L^2 D_q - (q+1) L D_q M + q D_q M^2 - t D_q`` on the leading N x N block."""
    D = build_operator("Dq", q, L.N)
    LD = L @ D
    R = L @ LD - (q + 1) * (LD @ M) + q * (D @ M @ M) - t * D
    return R.crop(N)


def matrices_for(table: RecurrenceTable, q, size: int):
    """L and M of order ``size`` from a table with at least size+1 entries."""
    beta = table.beta[:size]
    L = build_tridiagonal(table.alpha, beta, size)
    a = aux_for_table(table)
    st, at = tilde_coeffs(table, a, q, size)
    bt = [st[0]] + [st[k] - st[k - 1] for k in range(1, size)]
    M = build_tridiagonal(at, bt, size)
    return L, M


SLACK = 4


def verify_quadratic(params, N: int = 16, t=None) -> BandedMatrix:
    """Residual of the quadratic equation for a parameter set at order N."""
    size = N + SLACK
    table = build_table(params, size + 2)
    L, M = matrices_for(table, params.q, size)
    return residual_quadratic(L, M, table.t if t is None else t, params.q, N)


@dataclass
class MonicPolySeq:
    rows: list  # rows[k] = coefficients of p_k, lowest degree first

    def as_matrix(self) -> BandedMatrix:
        n = len(self.rows)
        return BandedMatrix.from_function(
            n, (0, n - 1), lambda j, k: self.rows[j][k] if k < len(self.rows[j]) else Fraction(0)
        )


def recurrence_polys(alpha, beta, kmax: int) -> MonicPolySeq:
    """p_0 = 1, p_1 = x - beta_0, p_{k+1} = (x - beta_k) p_k - alpha_k p_{k-1}."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    rows = [[Fraction(1)], [-beta[0], Fraction(1)]]
    for k in range(1, kmax):
        pk, pm = rows[k], rows[k - 1]
        nxt = [Fraction(0)] + list(pk)
        for i, c in enumerate(pk):
            nxt[i] = nxt[i] - beta[k] * c
        for i, c in enumerate(pm):
            nxt[i] = nxt[i] - alpha[k - 1] * c
        rows.append(nxt)
    return MonicPolySeq(rows[: kmax + 1])


@dataclass
class MomentSeq:
    m: list


def moments(L: BandedMatrix, nmax: int) -> MomentSeq:
    """m_n = (L^n)_{00}, propagated as the column L^n e_0."""
    if L.N <= nmax // 2:
        raise TruncationError(f"order {L.N} too small for moments up to {nmax}")
    vec = [Fraction(0)] * L.N
    vec[0] = Fraction(1)
    out = [Fraction(1)]
    for n in range(1, nmax + 1):
        new = [Fraction(0)] * L.N
        for j in range(L.N):
            acc = 0
            for k in (j - 1, j, j + 1):
                if 0 <= k < L.N and vec[k] != 0:
                    acc = acc + L[j, k] * vec[k]
            new[j] = acc
        vec = new
        out.append(vec[0])
    return MomentSeq(out)


@dataclass
class GramReport:
    ok: bool
    kmax: int
    diagonal: list
    expected_diagonal: list
    failure: Optional[tuple] = None  # (j, k, value, expected)

    def summary(self) -> str:
        if self.ok:
            return f"gram: diagonal, gamma_k = prod alpha_i for k <= {self.kmax}"
        j, k, v, e = self.failure
        return f"gram: entry ({j},{k}) = {v}, expected {e}"


def gram_check(table: RecurrenceTable, kmax: int, reference: Optional[RecurrenceTable] = None) -> GramReport:
    """Brute-force mu(p_j p_k) against gamma_k = alpha_1 ... alpha_k.

    The moments come from ``reference`` when given (e.g. the unperturbed
    table), otherwise from ``table`` itself.
    """
    if table.kmax < kmax:
        raise TruncationError(f"table has {table.kmax} alphas, need {kmax}")
    src = table if reference is None else reference
    if src.kmax < kmax:
        raise TruncationError(f"reference table has {src.kmax} alphas, need {kmax}")
    size = kmax + 2
    L = build_tridiagonal(src.alpha + [Fraction(0)] * size, (src.beta + [Fraction(0)] * size)[:size], size)
    m = moments(L, 2 * kmax).m
    polys = recurrence_polys(table.alpha, table.beta, kmax).rows
    gammas = [Fraction(1)]
    for k in range(1, kmax + 1):
        gammas.append(gammas[-1] * table.alpha[k - 1])
    diag, failure = [], None
    for j in range(kmax + 1):
        for k in range(j, kmax + 1):
            val = 0
            for a, ca in enumerate(polys[j]):
                if ca == 0:
                    continue
                for b, cb in enumerate(polys[k]):
                    if cb != 0:
                        val = val + ca * cb * m[a + b]
            expected = gammas[j] if j == k else 0
            if j == k:
                diag.append(val)
            if val != expected and failure is None:
                failure = (j, k, val, expected)
    return GramReport(failure is None, kmax, diag, gammas, failure)


def recurrence_identity_residual(table: RecurrenceTable, N: int) -> BandedMatrix:
    """``L A - A X`` on the exact region (zero for a consistent table)."""
    size = N + 2
    A = recurrence_polys(table.alpha, table.beta, size - 1).as_matrix()
    L = build_tridiagonal(table.alpha, table.beta[:size], size)
    X = build_operator("X", table.params.q if table.params else 2, size)
    return (L @ A - A @ X).crop(N)


@dataclass
class HahnReport:
    zero: bool
    residual: BandedMatrix
    transformed_monic: bool
    t: object
    first_nonzero: Optional[tuple] = field(default=None)


def hahn_transform_check(table: RecurrenceTable, q, N: int) -> HahnReport:
    """Check that D^_q A D_q is again a MOP with recurrence matrix M.

    Returns the residual ``M A~ - A~ X``; it vanishes in the q-Hahn class
    (t = 0) and generally not otherwise.
    """
    size = N + SLACK
    if table.kmax < size + 1:
        raise TruncationError(f"table needs {size + 1} alphas for order {N}")
    A = recurrence_polys(table.alpha, table.beta, size - 1).as_matrix()
    Dq, Dh, X = (build_operator(k, q, size) for k in ("Dq", "DqHat", "X"))
    At = Dh @ A @ Dq
    _, M = matrices_for(table, q, size)
    R = (M @ At - At @ X).crop(N)
    monic = all(At[k, k] == 1 for k in range(N)) and all(At[j, k] == 0 for j in range(N) for k in range(j + 1, N))
    return HahnReport(R.is_zero(), R, monic, table.t, R.first_nonzero())
