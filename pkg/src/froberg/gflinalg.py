"""Prime-field arithmetic and dense matrix rank at verification scale.

Rank computation is exact Gaussian elimination with three strategies
picked by modulus size.  The main path keeps residues in float64 and
applies panel updates through BLAS matrix multiplication: with a panel
of k pivots every intermediate value is bounded by k*(p-1)^2 plus the
tracked entry growth, kept below 2^51, so each float64 operation is an
exact integer operation and the result is bit-identical for any BLAS
thread count.
"""

from __future__ import annotations

import os
from contextlib import nullcontext
from dataclasses import dataclass

import numpy as np

from .errors import NotPrime

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# All float64 values during elimination stay strictly below this, which
# leaves the floor-divide quotient error under 1/2, so reductions are exact.
_F64_LIMIT = float(2**51)
_MAX_BLOCK = 128


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for word-sized inputs."""
    if n < 2:
        return False
    witnesses = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in witnesses:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in witnesses:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """F_p for a word-sized prime p; composite moduli are rejected."""

    p: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")


# ---------------------------------------------------------------------------
# Counter-based generator (splitmix64 with the published constants): the
# i-th output is a pure function of (seed, i), identical on every platform.
# ---------------------------------------------------------------------------


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def stream_value(seed: int, index: int) -> int:
    """The index-th 64-bit output of the stream for this seed."""
    return _mix64((seed + (index + 1) * _GAMMA) & _MASK64)


def derive_seed(seed: int, *parts: int) -> int:
    """Deterministic sub-seed for trial/stage splitting."""
    s = seed & _MASK64
    for q in parts:
        s = stream_value(s, q)
    return s


def _stream_block(seed: int, start: int, count: int) -> np.ndarray:
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + idx * np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def random_residues(p: int, count: int, seed: int) -> np.ndarray:
    """First `count` stream outputs below the rejection bound, mod p.

    Rejection keeps the distribution exactly uniform on [0, p); the
    accepted subsequence (hence the result) is a pure function of
    (p, count, seed).
    """
    out = np.empty(count, dtype=np.int64)
    bound = (1 << 64) - ((1 << 64) % p)
    filled = 0
    cursor = 0
    while filled < count:
        need = count - filled
        batch = max(1024, need + (need >> 6) + 16)
        v = _stream_block(seed, cursor, batch)
        cursor += batch
        if bound <= _MASK64:
            v = v[v < np.uint64(bound)]
        take = min(v.size, need)
        out[filled : filled + take] = (v[:take] % np.uint64(p)).astype(np.int64)
        filled += take
    return out


@dataclass(frozen=True, eq=False)
class FFMatrix:
    """Dense matrix over F_p; int64 residues in [0, p), row-major."""

    field: PrimeField
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.p):
            raise ValueError("entries must be residues in [0, p)")
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]


def random_matrix(field: PrimeField, rows: int, cols: int, seed: int) -> FFMatrix:
    """Uniform i.i.d. entries from the deterministic stream."""
    vals = random_residues(field.p, rows * cols, seed)
    return FFMatrix(field, vals.reshape(rows, cols))


@dataclass(frozen=True)
class RankProfile:
    rank: int
    pivot_cols: tuple[int, ...]


def _thread_limit_ctx():
    raw = os.environ.get("FROBERG_THREADS")
    if not raw:
        return nullcontext()
    try:
        limit = int(raw)
    except ValueError:
        return nullcontext()
    if limit <= 0:
        return nullcontext()
    import threadpoolctl

    return threadpoolctl.threadpool_limits(limits=limit)


def rank_profile(mat: FFMatrix) -> RankProfile:
    """Rank and leftmost pivot columns of the row echelon form.

    Pivoting is by first nonzero entry, column by column, which makes the
    pivot set the lexicographically first column basis and the whole
    computation deterministic.
    """
    p = mat.field.p
    if mat.rows == 0 or mat.cols == 0:
        return RankProfile(0, ())
    block = int((_F64_LIMIT - p) // ((p - 1) ** 2)) if p > 1 else 0
    with _thread_limit_ctx():
        if block >= 1:
            rank, pivots = _rank_f64(mat.data, p, min(block, _MAX_BLOCK))
        elif p < (1 << 31):
            rank, pivots = _rank_int64(mat.data, p)
        else:
            rank, pivots = _rank_object(mat.data, p)
    return RankProfile(rank, tuple(pivots))


def _mod_inplace(x: np.ndarray, p: float, inv_p: float) -> None:
    # exact for |x| < 2^51: quotient error stays under 1/2, so at most
    # one off-by-one fix-up on each side
    q = np.floor(x * inv_p)
    x -= q * p
    x[x < 0.0] += p
    x[x >= p] -= p


def _rank_f64(data: np.ndarray, p: int, block: int) -> tuple[int, list[int]]:
    a = data.astype(np.float64)
    m, n = a.shape
    fp = float(p)
    inv_p = 1.0 / p
    step_growth = float(block * (p - 1) ** 2)
    bound = fp  # certified bound on |entry| in the not-yet-reduced trailing part
    pivots: list[int] = []
    r = 0
    c0 = 0
    while c0 < n and r < m:
        c1 = min(c0 + block, n)
        panel = a[r:, c0:c1]
        _mod_inplace(panel, fp, inv_p)
        local_cols: list[int] = []
        pivot_invs: list[float] = []
        k = 0
        for lj in range(c1 - c0):
            if r + k == m:
                break
            nz = np.flatnonzero(panel[k:, lj])
            if nz.size == 0:
                continue
            i0 = k + int(nz[0])
            if i0 != k:
                a[[r + k, r + i0], :] = a[[r + i0, r + k], :]
            inv = float(pow(int(panel[k, lj]), -1, p))
            prow = panel[k, lj:]
            prow *= inv
            _mod_inplace(prow, fp, inv_p)
            below = panel[k + 1 :, lj:]
            if below.shape[0]:
                mult = below[:, 0].copy()
                below[:, 1:] -= np.outer(mult, prow[1:])
                _mod_inplace(below[:, 1:], fp, inv_p)
                below[:, 0] = mult  # keep multipliers where zeros would sit
            local_cols.append(lj)
            pivot_invs.append(inv)
            pivots.append(c0 + lj)
            k += 1
        if k and c1 < n:
            trail = a[r:, c1:]
            if bound + step_growth >= _F64_LIMIT:
                _mod_inplace(trail, fp, inv_p)
                bound = fp
            lmat = panel[:, local_cols]
            # replay the panel's row operations on the k pivot rows:
            # subtract the earlier (already replayed) rows, then apply the
            # same pivot scaling the panel columns received
            for k_ in range(k):
                if k_:
                    trail[k_, :] -= lmat[k_, :k_] @ trail[:k_, :]
                _mod_inplace(trail[k_ : k_ + 1, :], fp, inv_p)
                trail[k_, :] *= pivot_invs[k_]
                _mod_inplace(trail[k_ : k_ + 1, :], fp, inv_p)
            if m - r - k > 0:
                lb = np.ascontiguousarray(lmat[k:, :])
                width = trail.shape[1]
                chunk = max(256, int(32_000_000 // max(1, m - r - k)))
                for cs in range(0, width, chunk):
                    sl = slice(cs, min(cs + chunk, width))
                    trail[k:, sl] -= lb @ trail[:k, sl]
                bound += step_growth
        r += k
        c0 = c1
    return len(pivots), pivots


def _rank_int64(data: np.ndarray, p: int) -> tuple[int, list[int]]:
    # immediate-reduction fallback, exact for p < 2^31
    a = (data % p).astype(np.int64)
    m, n = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i0 = r + int(nz[0])
        if i0 != r:
            a[[r, i0], :] = a[[i0, r], :]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        f = a[r + 1 :, c]
        if np.any(f):
            a[r + 1 :, c:] = (a[r + 1 :, c:] - f[:, None] * a[r, c:][None, :]) % p
        pivots.append(c)
        r += 1
    return r, pivots


def _rank_object(data: np.ndarray, p: int) -> tuple[int, list[int]]:
    # arbitrary-precision fallback for moduli past the int64-safe range
    a = [[int(v) % p for v in row] for row in data.tolist()]
    m = len(a)
    n = len(a[0])
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if a[i][c] % p), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [v * inv % p for v in a[r]]
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                a[i] = [(v - f * w) % p for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return r, pivots
