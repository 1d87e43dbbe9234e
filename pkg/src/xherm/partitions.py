"""Partitions, gap sequences and Krein-Adler admissibility."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import GapSequenceError, XhermError


@dataclass(frozen=True)
class Partition:
    """Non-decreasing sequence of non-negative integers.

    Leading zeros are kept as given.
    """

    parts: tuple[int, ...] = ()

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise XhermError(f"partition parts must be non-negative: {parts}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            raise XhermError(f"partition parts must be non-decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        """The integer ``m`` this partition represents."""
        return sum(self.parts)


@dataclass(frozen=True)
class GapSequence:
    ks: tuple[int, ...] = ()

    def __init__(self, ks: Iterable[int] = ()):
        ks = tuple(int(k) for k in ks)
        if any(k < 0 for k in ks) or any(a >= b for a, b in zip(ks, ks[1:])):
            raise XhermError(f"gap sequence must be strictly increasing and non-negative: {ks}")
        object.__setattr__(self, "ks", ks)


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(p)


def gap_sequence(p) -> GapSequence:
    """``k_i = lambda_i + i - 1`` with 1-based ``i``."""
    p = _as_partition(p)
    return GapSequence(part + i for i, part in enumerate(p.parts))


def double_partition(p) -> Partition:
    p = _as_partition(p)
    return Partition(x for part in p.parts for x in (part, part))


def is_adler(g) -> bool:
    """Krein-Adler block structure test.

    True iff the sequence is an optional initial block ``{0, 1, ..., M}``
    followed by blocks of consecutive integers of even length, with at least
    one missing integer between consecutive blocks.
    """
    ks = g.ks if isinstance(g, GapSequence) else tuple(g)
    blocks: list[list[int]] = []
    for k in ks:
        if blocks and k == blocks[-1][-1] + 1:
            blocks[-1].append(k)
        else:
            blocks.append([k])
    if blocks and blocks[0][0] == 0:
        blocks = blocks[1:]
    return all(len(b) % 2 == 0 for b in blocks)


def codimension(p) -> int:
    """Codimension ``2m`` of the family built from the doubled partition."""
    return 2 * _as_partition(p).size


def excluded_indices(p) -> frozenset[int]:
    """Degrees missing from the X-Hermite family of ``p``.

    ``{k_1, k_1 + 1, ..., k_l, k_l + 1}`` where ``k_i`` runs over the gap
    sequence of the base partition ``p``.
    """
    ks = gap_sequence(_as_partition(p)).ks
    return frozenset(x for k in ks for x in (k, k + 1))


def xop_degree(p, n: int) -> int:
    """Degree ``2*sum(lambda) - 2l + n`` of the n-th exceptional polynomial."""
    p = _as_partition(p)
    if n < 0:
        raise XhermError("index must be non-negative")
    if n in excluded_indices(p):
        raise GapSequenceError(
            f"n={n} lies in the excluded index set {sorted(excluded_indices(p))}"
        )
    return 2 * p.size - 2 * p.length + n
