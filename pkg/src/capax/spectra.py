"""Symmetric spectra: a parallel-ordered Jacobi eigensolver, floating and exact
PSD tests, and the eigenvalue bound on theta for regular graphs."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

MULTIPLICITY_GAP = 1e-6


class SymMatrix:
    """Dense real symmetric matrix.

    Only the lower triangle of the input is read; the upper triangle is
    mirrored from it, so symmetry is exact.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        lower = np.tril(a)
        self._a = lower + np.tril(a, -1).T
        self._a.setflags(write=False)

    @property
    def dim(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __array__(self, dtype=None, copy=None):
        return self._a.astype(dtype) if dtype is not None else self._a.copy()

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and np.array_equal(self._a, other._a)

    def __repr__(self):
        return f"SymMatrix(dim={self.dim})"

    def lower_triangle(self) -> list[float]:
        return [float(self._a[i, j]) for i in range(self.dim) for j in range(i + 1)]

    def to_json(self) -> dict:
        return {"dim": self.dim, "lower": self.lower_triangle()}

    @classmethod
    def from_json(cls, obj: dict) -> "SymMatrix":
        return cls(_unpack_lower(obj["dim"], obj["lower"], 0.0))


def _unpack_lower(dim: int, lower: Sequence, zero):
    if len(lower) != dim * (dim + 1) // 2:
        raise ValueError(f"lower triangle of dim {dim} needs {dim * (dim + 1) // 2} entries")
    rows = [[zero] * dim for _ in range(dim)]
    k = 0
    for i in range(dim):
        for j in range(i + 1):
            rows[i][j] = rows[j][i] = lower[k]
            k += 1
    return rows


def _as_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, Fraction, Rational)):
        return Fraction(x)
    if isinstance(x, (float, np.floating)) and float(x).is_integer():
        return Fraction(int(x))
    if isinstance(x, np.integer):
        return Fraction(int(x))
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalSymMatrix:
    """Symmetric matrix of exact rationals, stored as its lower triangle."""

    dim: int
    lower: tuple[Fraction, ...]

    @classmethod
    def from_rows(cls, rows) -> "RationalSymMatrix":
        rows = [[_as_fraction(x) for x in r] for r in rows]
        dim = len(rows)
        for i, r in enumerate(rows):
            if len(r) != dim:
                raise ValueError("matrix must be square")
            for j in range(i):
                if r[j] != rows[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")
        return cls(dim, tuple(rows[i][j] for i in range(dim) for j in range(i + 1)))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if j > i:
            i, j = j, i
        return self.lower[i * (i + 1) // 2 + j]

    def rows(self) -> list[list[Fraction]]:
        return _unpack_lower(self.dim, self.lower, Fraction(0))

    def to_float(self) -> SymMatrix:
        return SymMatrix([[float(x) for x in r] for r in self.rows()])

    def scaled_shift(self, shift, scale=1) -> "RationalSymMatrix":
        """``shift * I + scale * self``."""
        shift, scale = Fraction(shift), Fraction(scale)
        out = []
        for i in range(self.dim):
            for j in range(i + 1):
                x = scale * self.lower[i * (i + 1) // 2 + j]
                out.append(x + shift if i == j else x)
        return RationalSymMatrix(self.dim, tuple(out))

    def to_json(self) -> dict:
        return {"dim": self.dim, "lower": [format_fraction(q) for q in self.lower]}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalSymMatrix":
        lower = tuple(Fraction(s) for s in obj["lower"])
        if len(lower) != obj["dim"] * (obj["dim"] + 1) // 2:
            raise ValueError("lower triangle has the wrong length")
        return cls(obj["dim"], lower)


def _as_array(m) -> np.ndarray:
    if isinstance(m, SymMatrix):
        return m.array
    if isinstance(m, RationalSymMatrix):
        return m.to_float().array
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def _round_robin(n: int):
    """Pairings of a round-robin tournament on ``n`` (even) players.

    Each of the ``n - 1`` rounds is a perfect matching; over all rounds
    every pair meets exactly once.
    """
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        p = np.array([min(players[i], players[n - 1 - i]) for i in range(n // 2)])
        q = np.array([max(players[i], players[n - 1 - i]) for i in range(n // 2)])
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_diagonalize(m, rel_tol: float = 1e-12, abs_tol: float | None = None,
                       max_sweeps: int = 100) -> np.ndarray:
    """Diagonalize a symmetric matrix by Jacobi rotations; return the diagonal.

    Rotations are applied in round-robin order so that each round is a set
    of disjoint (commuting) rotations, applied together with array ops.
    Iteration stops once the off-diagonal Frobenius norm drops to
    ``rel_tol * ||M||_F`` (or ``abs_tol`` if that is smaller).
    """
    a = np.array(_as_array(m), dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    a = np.tril(a) + np.tril(a, -1).T
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    if n <= 1 or norm == 0.0:
        return np.diag(a).copy()
    target = rel_tol * norm
    if abs_tol is not None:
        target = min(target, abs_tol)
    # Below this the off-diagonal mass is pure roundoff.
    target = max(target, 4 * np.finfo(float).eps * norm)

    size = n + (n % 2)
    if size != n:
        a = np.pad(a, ((0, 1), (0, 1)))
    rounds = _round_robin(size)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= target:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            app, aqq = a[p, p], a[q, q]
            theta = (aqq - app) / (2.0 * apq)
            with np.errstate(over="ignore"):
                # Huge theta overflows to inf and gives t = 0, the correct limit.
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
    return np.diag(a)[:n].copy()


def sym_eigenvalues(m, tol: float = 1e-10) -> list[float]:
    """All eigenvalues of a symmetric matrix, in descending order."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return sorted((float(x) for x in jacobi_diagonalize(m, abs_tol=tol)), reverse=True)


def lambda_max(m, tol: float = 1e-10) -> float:
    return sym_eigenvalues(m, tol)[0]


def lambda_min(m, tol: float = 1e-10) -> float:
    return sym_eigenvalues(m, tol)[-1]


def group_multiplicities(eigs: Sequence[float], gap: float = MULTIPLICITY_GAP) -> list[tuple[float, int]]:
    """Cluster sorted eigenvalues whose consecutive gaps are below ``gap``.

    Returns ``(mean, count)`` pairs in descending order of value.
    """
    vals = sorted(eigs, reverse=True)
    groups: list[list[float]] = []
    for x in vals:
        if groups and groups[-1][-1] - x < gap:
            groups[-1].append(x)
        else:
            groups.append([x])
    return [(sum(g) / len(g), len(g)) for g in groups]


def psd_check(m, tol: float = 1e-9) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return lambda_min(m, max(tol, 1e-14) / 10) >= -tol


@dataclass(frozen=True)
class PsdCertificate:
    """Outcome of an exact PSD test.

    When ``is_psd`` is False, ``witness_vector`` is a rational ``x`` with
    ``x^T M x = witness_value < 0``. ``witness_index`` is the offending
    diagonal position (1x1 minor) or, for a 2x2 minor with zero diagonal,
    the first of the pair in ``witness_minor``.
    """

    is_psd: bool
    pivots: tuple[Fraction, ...] = ()
    witness_index: int | None = None
    witness_minor: tuple[int, int] | None = None
    witness_vector: tuple[Fraction, ...] | None = None
    witness_value: Fraction | None = None
    rank: int = 0

    @property
    def status(self) -> str:
        return "PSD" if self.is_psd else "NOT_PSD"


def exact_psd_certify(m) -> PsdCertificate:
    """Decide positive semidefiniteness exactly via rational LDL^T.

    Symmetric diagonal pivoting picks the largest remaining diagonal entry.
    A zero pivot is only admissible if the whole remaining block vanishes;
    otherwise a 2x2 principal minor ``[[0, a], [a, 0]]`` is indefinite.
    """
    if not isinstance(m, RationalSymMatrix):
        m = RationalSymMatrix.from_rows(np.asarray(m).tolist() if not isinstance(m, list) else m)
    n = m.dim
    s = m.rows()  # working Schur complement, permuted in place
    perm = list(range(n))
    lfac = [[Fraction(0)] * n for _ in range(n)]
    pivots: list[Fraction] = []

    def witness(k: int, y_tail: dict[int, Fraction], index, minor) -> PsdCertificate:
        # x_perm solves L^T x_perm = y with unit lower-triangular L.
        y = [Fraction(0)] * n
        for pos, val in y_tail.items():
            y[pos] = val
        xp = y[:]
        for i in range(n - 1, -1, -1):
            acc = y[i]
            for j in range(i + 1, n):
                if lfac[j][i]:
                    acc -= lfac[j][i] * xp[j]
            xp[i] = acc
        x = [Fraction(0)] * n
        for pos, orig in enumerate(perm):
            x[orig] = xp[pos]
        value = sum(
            x[i] * m[i, j] * x[j] for i in range(n) for j in range(n) if x[i] and x[j]
        )
        return PsdCertificate(False, tuple(pivots), index, minor, tuple(x), value, len(pivots))

    for k in range(n):
        negative = [i for i in range(k, n) if s[i][i] < 0]
        if negative:
            i = min(negative, key=lambda i: perm[i])
            return witness(k, {i: Fraction(1)}, perm[i], None)
        best = max(range(k, n), key=lambda i: (s[i][i], -i))
        d = s[best][best]
        if d == 0:
            for i in range(k, n):
                for j in range(i + 1, n):
                    if s[i][j] != 0:
                        sign = 1 if s[i][j] < 0 else -1
                        a, b = sorted((perm[i], perm[j]))
                        return witness(k, {i: Fraction(1), j: Fraction(sign)}, a, (a, b))
            return PsdCertificate(True, tuple(pivots), rank=len(pivots))
        if best != k:
            s[k], s[best] = s[best], s[k]
            for row in s:
                row[k], row[best] = row[best], row[k]
            lfac[k], lfac[best] = lfac[best], lfac[k]
            perm[k], perm[best] = perm[best], perm[k]
        lfac[k][k] = Fraction(1)
        pivots.append(d)
        col = [s[i][k] / d for i in range(k + 1, n)]
        for off, i in enumerate(range(k + 1, n)):
            lfac[i][k] = col[off]
        for off_i, i in enumerate(range(k + 1, n)):
            li = col[off_i]
            if not li:
                continue
            si = s[i]
            for j in range(k + 1, i + 1):
                val = si[j] - li * s[k][j]
                si[j] = val
                s[j][i] = val
    return PsdCertificate(True, tuple(pivots), rank=sum(1 for p in pivots if p))


def hoffman_bound(n: int, d, lam_min):
    """``-n * lam_min / (d - lam_min)`` for a d-regular graph on n vertices.

    Exact (a Fraction) when ``d`` and ``lam_min`` are rational, float otherwise.
    """
    exact = all(isinstance(x, (int, Fraction)) for x in (n, d, lam_min))
    if exact:
        n, d, lam_min = Fraction(n), Fraction(d), Fraction(lam_min)
    if d == lam_min:
        raise ZeroDivisionError("degree equals the least eigenvalue")
    if lam_min >= 0:
        raise ValueError("least eigenvalue of a graph with an edge is negative")
    if d < lam_min:
        raise ValueError("degree must exceed the least eigenvalue")
    return -n * lam_min / (d - lam_min)


def dump_json(obj, path=None, **kw) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True, **kw)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text
