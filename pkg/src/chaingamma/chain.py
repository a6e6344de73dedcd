"""Combinatorial invariants of a chain of exponents.

A chain ``a = (a_1, ..., a_n)`` with every ``a_i >= 2`` encodes the pair of
polynomials ``z_1^{a_1} z_2 + ... + z_n^{a_n}`` and its transpose
``x_1^{a_1} + x_1 x_2^{a_2} + ... + x_{n-1} x_n^{a_n}``.  Everything in this
module is exact rational arithmetic: degrees, the Milnor number, weights,
sector exponents, the recursive index set and the monomial bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    EmptyChain,
    IndexNotInSet,
    InvalidExponent,
    MonomialOutOfRange,
)

Monomial = tuple[int, ...]


class SectorIndex(NamedTuple):
    """Label of one sector: a level ``m`` (same parity as n) and kappa in I'_m."""

    level: int
    kappa: int

    def __str__(self) -> str:
        return f"{self.level}:{self.kappa}"

    @classmethod
    def from_string(cls, text: str) -> "SectorIndex":
        level_str, _, kappa_str = text.partition(":")
        return cls(int(level_str), int(kappa_str))


class SymmetryElement(NamedTuple):
    """Diagonal symmetry written as phases (arguments divided by 2*pi)."""

    phases: tuple[Fraction, ...]
    age: Fraction


@dataclass(frozen=True)
class ChainDescriptor:
    """Exponent list together with the derived degrees and Milnor number.

    ``d`` has length n+1 with ``d[0] = 1`` and ``d[i] = a_1 * ... * a_i``;
    ``mu`` is the alternating sum ``sum((-1)^(n-i) d_i, i=0..n)``.
    """

    a: tuple[int, ...]
    d: tuple[int, ...]
    mu: int

    @property
    def n(self) -> int:
        return len(self.a)

    def __str__(self) -> str:
        return "chain[" + ",".join(str(x) for x in self.a) + "]"


def new_chain(a: Sequence[int]) -> ChainDescriptor:
    """Validate an exponent list and compute degrees and the Milnor number."""
    exponents = tuple(int(x) for x in a)
    if not exponents:
        raise EmptyChain("chain needs at least one exponent")
    for i, ai in enumerate(exponents, start=1):
        if ai < 2:
            raise InvalidExponent(f"exponent a_{i} must be >= 2, got {ai}")
    d = [1]
    for ai in exponents:
        d.append(d[-1] * ai)
    n = len(exponents)
    mu = sum((-1) ** (n - i) * d[i] for i in range(n + 1))
    return ChainDescriptor(a=exponents, d=tuple(d), mu=mu)


def exponent_matrix(c: ChainDescriptor) -> list[list[int]]:
    """Upper-bidiagonal matrix with a_i on the diagonal and 1 above it."""
    n = c.n
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = c.a[i]
        if i + 1 < n:
            mat[i][i + 1] = 1
    return mat


def monomial_exponents(c: ChainDescriptor, k: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve ``w E^T = k + 1`` exactly (row-vector convention).

    The backward recursion is ``w_n = (k_n + 1)/a_n`` and
    ``w_i = (k_i + 1 - w_{i+1})/a_i``.
    """
    n = c.n
    if len(k) != n:
        raise MonomialOutOfRange(f"expected {n} exponents, got {len(k)}")
    w: list[Fraction] = [Fraction(0)] * n
    nxt = Fraction(0)
    for i in range(n - 1, -1, -1):
        nxt = Fraction(k[i] + 1 - nxt, c.a[i])
        w[i] = nxt
    return tuple(w)


def rational_weights(c: ChainDescriptor) -> tuple[Fraction, ...]:
    """Weights w_i = sum_{l=i..n} (-1)^(l-i) d_{i-1}/d_l, each in (0, 1)."""
    n = c.n
    out = []
    for i in range(1, n + 1):
        out.append(
            sum(
                (Fraction((-1) ** (l - i) * c.d[i - 1], c.d[l]) for l in range(i, n + 1)),
                Fraction(0),
            )
        )
    return tuple(out)


def index_levels(c: ChainDescriptor) -> tuple[int, ...]:
    """Levels n, n-2, ... down to the parity base (1 or 0)."""
    return tuple(range(c.n, -1, -2))


def prime_index_level(c: ChainDescriptor, level: int) -> list[int]:
    """The block I'_m: 1..d_m without multiples of a_m; just {1} at level 0."""
    if level == 0:
        return [1]
    am = c.a[level - 1]
    return [kappa for kappa in range(1, c.d[level] + 1) if kappa % am != 0]


def index_set(c: ChainDescriptor) -> list[SectorIndex]:
    """Canonical ordering: level-n block by ascending kappa, then recursively."""
    out = []
    for m in index_levels(c):
        out.extend(SectorIndex(m, kappa) for kappa in prime_index_level(c, m))
    return out


def _validate_sector(c: ChainDescriptor, s: SectorIndex) -> None:
    m, kappa = s
    if m < 0 or m > c.n or (c.n - m) % 2 != 0:
        raise IndexNotInSet(f"level {m} not allowed for {c}")
    if m == 0:
        if kappa != 1:
            raise IndexNotInSet(f"level-0 sector must have kappa=1, got {kappa}")
        return
    if not (1 <= kappa <= c.d[m]) or kappa % c.a[m - 1] == 0:
        raise IndexNotInSet(f"kappa={kappa} is not in I'_{m} for {c}")


def exponents_for_kappa(c: ChainDescriptor, s: SectorIndex) -> tuple[Fraction, ...]:
    """Sector exponents: fractional parts of (-1)^(i-1) d_{i-1} kappa / d_m."""
    s = SectorIndex(*s)
    _validate_sector(c, s)
    m, kappa = s
    return tuple(
        Fraction((-1) ** (i - 1) * c.d[i - 1] * kappa, c.d[m]) % 1 for i in range(1, m + 1)
    )


def in_prime_basis(c: ChainDescriptor, k: Sequence[int]) -> bool:
    if len(k) != c.n:
        return False
    for i, ki in enumerate(k):
        hi = c.a[i] - 2 if i == c.n - 1 else c.a[i] - 1
        if not (0 <= ki <= hi):
            return False
    return True


def _require_prime_monomial(c: ChainDescriptor, k: Sequence[int]) -> Monomial:
    k = tuple(int(x) for x in k)
    if not in_prime_basis(c, k):
        raise MonomialOutOfRange(f"{k} is not in the reduced basis of {c}")
    return k


def psi(c: ChainDescriptor, k: Sequence[int]) -> int:
    """Bijection from the reduced monomial basis onto I'_n."""
    k = _require_prime_monomial(c, k)
    n = c.n
    total = 0
    for l in range(1, n + 1):
        total += (-1) ** (l - 1) * (c.d[n] // c.d[l]) * (k[l - 1] + 1)
    return total


def psi_inverse(c: ChainDescriptor, kappa: int) -> Monomial:
    """The unique reduced-basis monomial mapping to kappa under psi."""
    n = c.n
    _validate_sector(c, SectorIndex(n, kappa))
    w = exponents_for_kappa(c, SectorIndex(n, kappa))
    k = [0] * n
    for i in range(n - 1, -1, -1):
        nxt = w[i + 1] if i + 1 < n else Fraction(0)
        val = c.a[i] * w[i] + nxt - 1
        if val.denominator != 1:
            raise IndexNotInSet(f"kappa={kappa} does not invert to a monomial")
        k[i] = int(val)
    return tuple(k)


def monomial_basis(c: ChainDescriptor) -> tuple[list[Monomial], list[Monomial]]:
    """Full and reduced monomial bases ``(B, B')`` in canonical order.

    The reduced basis is ordered by ascending psi value so that it matches the
    level-n block of the index set; the recursive tail entries carry
    ``k_{n-1} = 0`` and ``k_n = a_n - 1``.
    """
    prime = _prime_basis_sorted(c)
    full = list(prime)
    for m in index_levels(c)[1:]:
        full.extend(_embed_tail(c, m, mono) for mono in _level_basis(c, m))
    return full, prime


def _prime_basis_sorted(c: ChainDescriptor) -> list[Monomial]:
    return [psi_inverse(c, kappa) for kappa in prime_index_level(c, c.n)]


def _level_basis(c: ChainDescriptor, m: int) -> list[Monomial]:
    # Reduced basis of the depth-m sub-chain, in its own canonical order.
    if m == 0:
        return [()]
    sub = new_chain(c.a[:m])
    return _prime_basis_sorted(sub)


def _embed_tail(c: ChainDescriptor, m: int, mono: Monomial) -> Monomial:
    # mono lives at level m; append zero pairs and the x^{a-1} tails going up.
    out = list(mono)
    for level in range(m + 2, c.n + 1, 2):
        out.extend([0, c.a[level - 1] - 1])
    return tuple(out)


def monomial_for_sector(c: ChainDescriptor, s: SectorIndex) -> Monomial:
    """Basis monomial attached to a sector label (level-n via psi inverse)."""
    s = SectorIndex(*s)
    _validate_sector(c, s)
    if s.level == c.n:
        return psi_inverse(c, s.kappa)
    if s.level == 0:
        return _embed_tail(c, 0, ())
    sub = new_chain(c.a[: s.level])
    return _embed_tail(c, s.level, psi_inverse(sub, s.kappa))


def symmetry_generator(c: ChainDescriptor, kappa: int) -> SymmetryElement:
    """Diagonal symmetry g_kappa with phases (-1)^(i-1) d_{i-1} kappa / d_n."""
    phases = exponents_for_kappa(c, SectorIndex(c.n, kappa))
    return SymmetryElement(phases=phases, age=sum(phases, Fraction(0)))


def iter_sector_exponents(
    c: ChainDescriptor,
) -> Iterator[tuple[SectorIndex, tuple[Fraction, ...]]]:
    for s in index_set(c):
        yield s, exponents_for_kappa(c, s)
