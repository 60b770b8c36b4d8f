"""Theta functions as largest-eigenvalue minimisation.

Both programs minimise ``lambda_max(X)`` over symmetric ``X`` that is
unconstrained on edges and constrained on every non-adjacent pair,
diagonal included: ``X_ij = 1`` for the Lovasz theta function,
``X_ij >= 1`` for Schrijver's variant.

Solved in epigraph form (minimise ``t`` subject to ``tI - X`` PSD) by a
log-barrier interior point method with damped Newton steps.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .spectra import SymMatrix, lambda_max as jacobi_lambda_max

MAX_VERTICES = 128
MIN_TOL = 1e-8
VIOLATION_TOL = 1e-8


class Variant(str, enum.Enum):
    LOVASZ = "LOVASZ"
    SCHRIJVER = "SCHRIJVER"


class Status(str, enum.Enum):
    CONVERGED = "CONVERGED"
    MAX_ITER = "MAX_ITER"
    NUMERICAL_FAILURE = "NUMERICAL_FAILURE"


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class ThetaProgram:
    graph: Graph
    variant: Variant

    @property
    def n(self) -> int:
        return self.graph.n

    def free_pairs(self) -> list[tuple[int, int]]:
        """Edges ``i < j``: entries left unconstrained."""
        return self.graph.edges()

    def constrained_pairs(self) -> list[tuple[int, int]]:
        """Pairs ``i <= j`` with ``A_ij = 0``, diagonal included."""
        g = self.graph
        return [(i, j) for i in range(g.n) for j in range(i, g.n) if not g.has_edge(i, j)]

    def constraint_map(self) -> dict[tuple[int, int], str]:
        kind = "EQUAL_ONE" if self.variant is Variant.LOVASZ else "AT_LEAST_ONE"
        return {p: kind for p in self.constrained_pairs()}

    def max_violation(self, x) -> float:
        a = np.asarray(x, dtype=float)
        if a.shape != (self.n, self.n):
            raise ValueError(f"expected a {self.n}x{self.n} matrix, got {a.shape}")
        mask = np.asarray(_nonedge_mask(self.graph))
        vals = a[mask]
        if vals.size == 0:
            return 0.0
        if self.variant is Variant.LOVASZ:
            return float(np.max(np.abs(vals - 1.0)))
        return float(max(0.0, np.max(1.0 - vals)))


def _nonedge_mask(g: Graph) -> np.ndarray:
    mask = np.ones((g.n, g.n), dtype=bool)
    for i, j in g.edges():
        mask[i, j] = mask[j, i] = False
    return mask


@dataclass
class SdpSolution:
    value: float
    X: SymMatrix
    gap: float
    status: Status
    variant: Variant
    iterations: list[tuple[int, float, float]] = field(default_factory=list)
    violation: float = 0.0

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "status": self.status.value,
            "variant": self.variant.value,
            "gap": self.gap,
            "violation": self.violation,
            "iterations": [list(it) for it in self.iterations],
            "X": self.X.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SdpSolution":
        return cls(
            value=obj["value"],
            X=SymMatrix.from_json(obj["X"]),
            gap=obj["gap"],
            status=Status(obj["status"]),
            variant=Variant(obj["variant"]),
            iterations=[tuple(it) for it in obj["iterations"]],
            violation=obj.get("violation", 0.0),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class _Barrier:
    """``phi(z) = t/mu - log det(tI - X) - sum log s`` over ``z = (t, x, s)``.

    ``x`` holds the edge entries; ``s`` the slacks ``X_ij - 1`` on
    non-edges (Schrijver only).
    """

    def __init__(self, program: ThetaProgram):
        self.n = n = program.n
        free = program.free_pairs()
        self.slack_pairs = (
            program.constrained_pairs() if program.variant is Variant.SCHRIJVER else []
        )
        pairs = free + self.slack_pairs
        self.nfree = len(free)
        self.nslack = len(self.slack_pairs)
        self.I = np.array([p[0] for p in pairs], dtype=int)
        self.J = np.array([p[1] for p in pairs], dtype=int)
        # E_a = c_a (e_i e_j^T + e_j e_i^T), so c_a = 1/2 on the diagonal.
        self.c = np.where(self.I == self.J, 0.5, 1.0)
        self.base = _nonedge_mask(program.graph).astype(float)
        self.nu = n + self.nslack

    def matrix(self, z: np.ndarray) -> np.ndarray:
        x = self.base.copy()
        vals = z[1:]
        x[self.I, self.J] += vals
        off = self.I != self.J
        x[self.J[off], self.I[off]] += vals[off]
        return x

    def slack(self, z: np.ndarray) -> np.ndarray:
        return z[1 + self.nfree:]

    def value(self, z: np.ndarray, mu: float) -> float:
        """Barrier value, or +inf outside the domain."""
        s = self.slack(z)
        if np.any(s <= 0):
            return math.inf
        S = z[0] * np.eye(self.n) - self.matrix(z)
        try:
            L = np.linalg.cholesky(S)
        except np.linalg.LinAlgError:
            return math.inf
        logdet = 2.0 * float(np.sum(np.log(np.diag(L))))
        return z[0] / mu - logdet - float(np.sum(np.log(s)))

    def derivatives(self, z: np.ndarray, mu: float):
        S = z[0] * np.eye(self.n) - self.matrix(z)
        W = np.linalg.inv(S)
        W = 0.5 * (W + W.T)
        W2 = W @ W
        I, J, c = self.I, self.J, self.c
        nv = len(z)
        g = np.empty(nv)
        g[0] = 1.0 / mu - np.trace(W)
        g[1:] = 2.0 * c * W[I, J]
        H = np.empty((nv, nv))
        H[0, 0] = float(np.sum(W * W))
        H[0, 1:] = H[1:, 0] = -2.0 * c * W2[I, J]
        cc = 2.0 * np.outer(c, c)
        H[1:, 1:] = cc * (W[np.ix_(I, I)] * W[np.ix_(J, J)] + W[np.ix_(I, J)] * W[np.ix_(J, I)])
        if self.nslack:
            s = self.slack(z)
            k = 1 + self.nfree
            g[k:] -= 1.0 / s
            H[k:, k:] += np.diag(1.0 / (s * s))
        return g, H, S


def _newton_direction(H: np.ndarray, g: np.ndarray) -> np.ndarray:
    # Jacobi-scale before factoring; the Hessian entries span many orders of magnitude.
    d = np.sqrt(np.maximum(np.diag(H), 1e-300))
    Hs = H / np.outer(d, d)
    gs = g / d
    try:
        L = np.linalg.cholesky(Hs)
        y = np.linalg.solve(L.T, np.linalg.solve(L, -gs))
    except np.linalg.LinAlgError:
        y = np.linalg.lstsq(Hs, -gs, rcond=None)[0]
    return y / d


def solve_theta(
    program: ThetaProgram,
    tol: float = 1e-7,
    mu0: float = 1.0,
    mu_factor: float = 5.0,
    max_newton: int = 2000,
) -> SdpSolution:
    """Minimise ``lambda_max(X)`` over the program's feasible set."""
    if tol < MIN_TOL:
        raise ValueError(f"tol must be at least {MIN_TOL}")
    n = program.n
    if n > MAX_VERTICES:
        raise ValueError(f"solver is capped at {MAX_VERTICES} vertices, got {n}")
    bar = _Barrier(program)

    # All-ones off the edges, zero on edges; Schrijver slacks start at 1 (entries at 2).
    z = np.zeros(1 + bar.nfree + bar.nslack)
    z[1 + bar.nfree:] = 1.0
    z[0] = float(np.linalg.eigvalsh(bar.matrix(z))[-1]) + 1.0

    log: list[tuple[int, float, float]] = []
    mu = mu0
    steps = 0
    status = Status.CONVERGED
    target = tol / bar.nu
    while True:
        # Centering by damped Newton.
        for _ in range(100):
            g, H, S = bar.derivatives(z, mu)
            dz = _newton_direction(H, g)
            dec2 = float(-g @ dz)
            steps += 1
            log.append((steps, float(z[0]), float(np.linalg.eigvalsh(S)[0])))
            if not np.all(np.isfinite(dz)):
                status = Status.NUMERICAL_FAILURE
                break
            if dec2 <= 1e-9:
                break
            f0 = bar.value(z, mu)
            step = 1.0
            while True:
                f1 = bar.value(z + step * dz, mu)
                if f1 <= f0 - 0.25 * step * dec2:
                    break
                step *= 0.5
                if step < 1e-14:
                    break
            if step < 1e-14:
                # No descent in floating point: the centre is as good as we can resolve.
                if dec2 > 1e-4:
                    status = Status.NUMERICAL_FAILURE
                break
            z = z + step * dz
            if steps >= max_newton:
                status = Status.MAX_ITER
                break
        if status is not Status.CONVERGED or mu <= target:
            break
        mu = max(mu / mu_factor, target)

    X = bar.matrix(z)
    value = float(np.linalg.eigvalsh(X)[-1])
    violation = program.max_violation(X)
    if status is Status.CONVERGED and violation > VIOLATION_TOL:
        status = Status.NUMERICAL_FAILURE
    gap = bar.nu * mu + max(0.0, float(z[0]) - value)
    return SdpSolution(value, SymMatrix(X), gap, status, program.variant, log, violation)


def lovasz_theta(g: Graph, tol: float = 1e-7) -> SdpSolution:
    return solve_theta(ThetaProgram(g, Variant.LOVASZ), tol)


def schrijver_theta(g: Graph, tol: float = 1e-7) -> SdpSolution:
    return solve_theta(ThetaProgram(g, Variant.SCHRIJVER), tol)


def verify_feasible(program: ThetaProgram, x) -> tuple[float, float]:
    """``(lambda_max(X), largest constraint violation)`` for a candidate ``X``.

    A candidate with zero violation certifies ``theta <= lambda_max(X)``.
    """
    a = np.asarray(x, dtype=float)
    if a.shape != (program.n, program.n):
        raise ValueError(f"expected a {program.n}x{program.n} matrix, got {a.shape}")
    return jacobi_lambda_max(SymMatrix(a)), program.max_violation(a)
