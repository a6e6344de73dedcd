"""Integer-lattice actions: mutations, parity flips and reflections.

Sequences are tuples of coordinate vectors in a fixed basis; the bilinear
pairing is given by the Euler matrix.  Mutations implement the K-class
transformation rules; reflections implement the signed transvection on the
vanishing lattice with its parity-dependent sign.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .chain import ChainDescriptor
from .errors import IndexOutOfRange, MalformedWord
from .exact import euler_matrix, intersection_matrix, intersection_sign

Vector = tuple[int, ...]

_TOKEN = re.compile(r"^(b|p)(\d+)(\^-1)?$")


def _as_int_matrix(mat) -> tuple[tuple[int, ...], ...]:
    rows = []
    for row in mat.entries if hasattr(mat, "entries") else mat:
        out = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("form matrix must be integral")
                out.append(x.numerator)
            else:
                out.append(int(x))
        rows.append(tuple(out))
    return tuple(rows)


def _pair(form, u: Sequence[int], v: Sequence[int]) -> int:
    return sum(ui * sum(f * vj for f, vj in zip(row, v)) for ui, row in zip(u, form))


@dataclass(frozen=True)
class ExceptionalSequence:
    """Ordered vectors plus the Euler form pairing them."""

    vectors: tuple[Vector, ...]
    form: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        return _pair(self.form, u, v)

    def gram(self) -> list[list[int]]:
        return [[self.pairing(u, v) for v in self.vectors] for u in self.vectors]

    def with_vectors(self, vectors: Iterable[Sequence[int]]) -> "ExceptionalSequence":
        return ExceptionalSequence(tuple(tuple(int(x) for x in v) for v in vectors), self.form)


def standard_sequence(c: ChainDescriptor) -> ExceptionalSequence:
    form = _as_int_matrix(euler_matrix(c))
    mu = len(form)
    vectors = tuple(tuple(1 if i == j else 0 for j in range(mu)) for i in range(mu))
    return ExceptionalSequence(vectors, form)


def sequence_from_vectors(c: ChainDescriptor, vectors) -> ExceptionalSequence:
    form = _as_int_matrix(euler_matrix(c))
    return ExceptionalSequence(tuple(tuple(int(x) for x in v) for v in vectors), form)


def mutate(seq: ExceptionalSequence, i: int, direction: str) -> ExceptionalSequence:
    """Mutation at slot i (1-based): right replaces (u, v) by (v, u - <u,v> v),
    left by (v - <u,v> u, u)."""
    if not 1 <= i <= seq.rank - 1:
        raise IndexOutOfRange(f"mutation index {i} out of range 1..{seq.rank - 1}")
    u = seq.vectors[i - 1]
    v = seq.vectors[i]
    coef = seq.pairing(u, v)
    if direction == "right":
        new_pair = (v, tuple(x - coef * y for x, y in zip(u, v)))
    elif direction == "left":
        new_pair = (tuple(x - coef * y for x, y in zip(v, u)), u)
    else:
        raise ValueError(f"direction must be 'right' or 'left', got {direction!r}")
    vectors = seq.vectors[: i - 1] + new_pair + seq.vectors[i + 1 :]
    return ExceptionalSequence(vectors, seq.form)


def parity(seq: ExceptionalSequence, i: int) -> ExceptionalSequence:
    """Negate the i-th vector (1-based); involutive."""
    if not 1 <= i <= seq.rank:
        raise IndexOutOfRange(f"parity index {i} out of range 1..{seq.rank}")
    vectors = list(seq.vectors)
    vectors[i - 1] = tuple(-x for x in vectors[i - 1])
    return ExceptionalSequence(tuple(vectors), seq.form)


def parse_braid_word(word: str) -> list[tuple[str, int, bool]]:
    """Tokens like ``b1``, ``b2^-1``, ``p3`` into (kind, index, inverse)."""
    tokens = []
    for raw in word.split():
        m = _TOKEN.match(raw)
        if not m:
            raise MalformedWord(f"cannot parse braid token {raw!r}")
        kind, idx, inv = m.group(1), int(m.group(2)), m.group(3) is not None
        if idx < 1:
            raise MalformedWord(f"generator index must be >= 1 in {raw!r}")
        if kind == "p" and inv:
            inv = False  # parity generators are involutions
        tokens.append((kind, idx, inv))
    return tokens


def braid_word_apply(seq: ExceptionalSequence, word) -> ExceptionalSequence:
    """Apply a braid word left to right; b_i is a right mutation at i."""
    tokens = parse_braid_word(word) if isinstance(word, str) else list(word)
    out = seq
    for kind, idx, inv in tokens:
        if kind == "b":
            if not 1 <= idx <= out.rank - 1:
                raise IndexOutOfRange(f"braid index {idx} out of range 1..{out.rank - 1}")
            out = mutate(out, idx, "left" if inv else "right")
        else:
            out = parity(out, idx)
    return out


@dataclass(frozen=True)
class VanishingLattice:
    """Basis rank, the intersection form and the parity sign of reflections."""

    iform: tuple[tuple[int, ...], ...]
    sign: int

    @property
    def rank(self) -> int:
        return len(self.iform)

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        return _pair(self.iform, u, v)


def vanishing_lattice(c: ChainDescriptor) -> VanishingLattice:
    return VanishingLattice(_as_int_matrix(intersection_matrix(c)), intersection_sign(c.n))


def picard_lefschetz(
    lat: VanishingLattice, center: Sequence[int], target: Sequence[int], inverse: bool = False
) -> Vector:
    """Reflection about ``center``: the target moves by the signed pairing.

    Forward subtracts sign * I(target, center) * center, the inverse subtracts
    sign * I(center, target) * center.
    """
    if inverse:
        coef = lat.sign * lat.pairing(center, target)
    else:
        coef = lat.sign * lat.pairing(target, center)
    return tuple(t - coef * ce for t, ce in zip(target, center))


def random_exceptional_sequence(
    c: ChainDescriptor, rng, max_word: int = 8, entry_bound: Optional[int] = 3
) -> ExceptionalSequence:
    """Random element of the braid-and-parity orbit of the standard basis.

    The mutation rules form a group action on this orbit (not on arbitrary
    integer tuples), so orbit sampling is the meaningful way to randomize
    relation tests.  ``entry_bound`` rejects words that push entries outside
    [-entry_bound, entry_bound].
    """
    base = standard_sequence(c)
    for _ in range(200):
        seq = base
        for _ in range(rng.randrange(max_word + 1)):
            kind = rng.choice(("b", "b", "b", "p"))
            if kind == "b" and seq.rank >= 2:
                seq = mutate(seq, rng.randrange(1, seq.rank), rng.choice(("right", "left")))
            else:
                seq = parity(seq, rng.randrange(1, seq.rank + 1))
        if entry_bound is None or all(
            abs(x) <= entry_bound for v in seq.vectors for x in v
        ):
            return seq
    return base


def int_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def find_braid_word(
    seq: ExceptionalSequence,
    predicate: Callable[[ExceptionalSequence], bool],
    max_length: int,
) -> Optional[list[str]]:
    """Bounded breadth-first search over braid/parity words.

    Exploration tool only: a None result says nothing about the full orbit.
    """
    if predicate(seq):
        return []
    gens: list[tuple[str, tuple[str, int, bool]]] = []
    for i in range(1, seq.rank):
        gens.append((f"b{i}", ("b", i, False)))
        gens.append((f"b{i}^-1", ("b", i, True)))
    for i in range(1, seq.rank + 1):
        gens.append((f"p{i}", ("p", i, False)))
    seen = {seq.vectors}
    queue = deque([(seq, [])])
    while queue:
        current, word = queue.popleft()
        if len(word) >= max_length:
            continue
        for name, token in gens:
            nxt = braid_word_apply(current, [token])
            if nxt.vectors in seen:
                continue
            new_word = word + [name]
            if predicate(nxt):
                return new_word
            seen.add(nxt.vectors)
            queue.append((nxt, new_word))
    return None
