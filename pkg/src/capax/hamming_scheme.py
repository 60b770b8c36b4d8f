"""Distance matrices of the binary m-cube and their exact spectra.

A matrix whose ``(u, v)`` entry depends only on the Hamming distance
``d_H(u, v)`` is a combination ``sum_k f(k) A_k`` of the distance matrices
``A_k``. These commute and share eigenspaces ``V_0, ..., V_m`` with
``dim V_j = C(m, j)``; on ``V_j`` the matrix ``A_k`` acts as the
Krawtchouk value ``K_k(j)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import comb
from typing import Iterable, Sequence

from .spectra import RationalSymMatrix, format_fraction

MAX_PROFILE_DIM = 12


def krawtchouk(m: int, k: int, j: int) -> int:
    """Binary Krawtchouk value ``K_k(j) = sum_s (-1)^s C(j, s) C(m - j, k - s)``."""
    if m < 0 or not (0 <= k <= m and 0 <= j <= m):
        raise ValueError(f"need 0 <= k, j <= m, got m={m}, k={k}, j={j}")
    return sum((-1) ** s * comb(j, s) * comb(m - j, k - s) for s in range(min(j, k) + 1))


@dataclass(frozen=True)
class DistanceProfile:
    """Values ``f(0), ..., f(m)`` defining the matrix ``M[u, v] = f(d_H(u, v))``."""

    m: int
    f: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.f) != self.m + 1:
            raise ValueError(f"profile for m={self.m} needs {self.m + 1} values, got {len(self.f)}")
        object.__setattr__(self, "f", tuple(Fraction(x) for x in self.f))

    @classmethod
    def of(cls, values: Sequence) -> "DistanceProfile":
        return cls(len(values) - 1, tuple(Fraction(v) for v in values))

    @classmethod
    def indicator(cls, m: int, distances: Iterable[int]) -> "DistanceProfile":
        ds = set(distances)
        return cls(m, tuple(Fraction(int(k in ds)) for k in range(m + 1)))

    def to_json(self) -> list[str]:
        return [format_fraction(x) for x in self.f]

    @classmethod
    def from_json(cls, obj: Sequence[str]) -> "DistanceProfile":
        return cls.of([Fraction(s) for s in obj])


@dataclass(frozen=True)
class SchemeSpectrum:
    """Eigenvalue on each eigenspace ``V_j`` together with ``dim V_j``."""

    m: int
    eigenvalues: tuple[Fraction, ...]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(comb(self.m, j) for j in range(self.m + 1))

    def pairs(self) -> list[tuple[Fraction, int]]:
        return list(zip(self.eigenvalues, self.multiplicities))

    def distinct(self) -> list[tuple[Fraction, int]]:
        """Merged ``(eigenvalue, multiplicity)`` pairs, largest eigenvalue first."""
        merged: dict[Fraction, int] = {}
        for lam, mult in self.pairs():
            merged[lam] = merged.get(lam, 0) + mult
        return sorted(merged.items(), reverse=True)

    @property
    def max(self) -> Fraction:
        return max(self.eigenvalues)

    @property
    def min(self) -> Fraction:
        return min(self.eigenvalues)

    def multiplicity(self, lam) -> int:
        return sum(mu for x, mu in self.pairs() if x == lam)

    def trace(self) -> Fraction:
        return sum((lam * mu for lam, mu in self.pairs()), Fraction(0))

    def as_list(self) -> list[Fraction]:
        """Full spectrum with repetition, descending."""
        out = []
        for lam, mu in self.pairs():
            out.extend([lam] * mu)
        return sorted(out, reverse=True)


def profile_spectrum(p: DistanceProfile) -> SchemeSpectrum:
    eig = tuple(
        sum((p.f[k] * krawtchouk(p.m, k, j) for k in range(p.m + 1)), Fraction(0))
        for j in range(p.m + 1)
    )
    return SchemeSpectrum(p.m, eig)


def profile_matrix(p: DistanceProfile) -> RationalSymMatrix:
    if p.m > MAX_PROFILE_DIM:
        raise ValueError(f"profile matrices are capped at m={MAX_PROFILE_DIM}")
    n = 1 << p.m
    lower = tuple(p.f[(u ^ v).bit_count()] for u in range(n) for v in range(u + 1))
    return RationalSymMatrix(n, lower)


def profile_matrix_int(p: DistanceProfile) -> list[list[int]]:
    """Integer-valued profile matrix as nested lists; requires integral ``f``."""
    if any(x.denominator != 1 for x in p.f):
        raise ValueError("profile has non-integer values")
    n = 1 << p.m
    vals = [int(x) for x in p.f]
    return [[vals[(u ^ v).bit_count()] for v in range(n)] for u in range(n)]


def certificate_profiles() -> tuple[DistanceProfile, DistanceProfile]:
    """Dual certificates on the 5-cube graph with edges at distances 1 and 2.

    The first is feasible for the Schrijver program (non-edges get values
    >= 1, largest eigenvalue 4); the second for the Lovasz program
    (non-edges exactly 1, largest eigenvalue 16/3). The second arises from
    the first by mapping -1 to -7/9 and {1, 3} to 1.
    """
    schrijver = DistanceProfile.of([1, -1, -1, 1, 1, 3])
    lovasz = DistanceProfile.of([1, Fraction(-7, 9), Fraction(-7, 9), 1, 1, 1])
    return schrijver, lovasz


def schrijver_to_lovasz_entry(x: Fraction) -> Fraction:
    """Entrywise map taking the Schrijver certificate to the Lovasz one."""
    if x == -1:
        return Fraction(-7, 9)
    if x in (1, 3):
        return Fraction(1)
    raise ValueError(f"entry {x} is not in {{-1, 1, 3}}")


@dataclass(frozen=True)
class CertificateTranscription:
    """A 32x32 integer matrix typed in from print, with known misprints.

    ``errata`` maps a 0-based ``(row, col)`` to ``(printed, corrected)``.
    """

    matrix: tuple[tuple[int, ...], ...]
    errata: dict[tuple[int, int], tuple[int, int]]
    notes: str = ""

    def printed(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    def corrected(self) -> list[list[int]]:
        rows = self.printed()
        for (i, j), (printed, fixed) in self.errata.items():
            if rows[i][j] != printed:
                raise ValueError(f"erratum at {(i, j)} expects printed {printed}, found {rows[i][j]}")
            rows[i][j] = fixed
        return rows


def load_certificate_transcription() -> CertificateTranscription:
    raw = json.loads(
        resources.files("capax.data").joinpath("certificate_matrix.json").read_text(encoding="utf-8")
    )
    errata = {
        (e["row"], e["col"]): (e["printed"], e["corrected"]) for e in raw.get("errata", [])
    }
    return CertificateTranscription(
        tuple(tuple(r) for r in raw["matrix"]), errata, raw.get("notes", "")
    )
