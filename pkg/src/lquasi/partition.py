"""Partitions of {0..n-1} in canonical block-id form.

The canonical form is first-occurrence numbering: scanning points 0..n-1, the
block of point 0 gets id 0, the next unseen block gets id 1, and so on.  Two
partitions are equal iff their canonical block-id tuples are equal, so
partitions can live in sets and serve as dict keys.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class Partition:
    __slots__ = ("block_id", "n", "_blocks")

    def __init__(self, block_id: Sequence[int]):
        self.block_id = self._canonical(block_id)
        self.n = len(self.block_id)
        self._blocks: tuple[tuple[int, ...], ...] | None = None

    @staticmethod
    def _canonical(block_id: Sequence[int]) -> tuple[int, ...]:
        relabel: dict[int, int] = {}
        out = []
        for b in block_id:
            if b not in relabel:
                relabel[b] = len(relabel)
            out.append(relabel[b])
        return tuple(out)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(range(n))

    @classmethod
    def one_block(cls, n: int) -> "Partition":
        return cls([0] * n)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        bid = [-1] * n
        for i, block in enumerate(blocks):
            for x in block:
                if bid[x] != -1:
                    raise ValueError(f"point {x} appears in two blocks")
                bid[x] = i
        if -1 in bid:
            raise ValueError("blocks do not cover all points")
        return cls(bid)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Finest partition relating every given pair (union-find closure)."""
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        return cls([find(x) for x in range(n)])

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        if self._blocks is None:
            out: list[list[int]] = [[] for _ in range(self.num_blocks)]
            for x, b in enumerate(self.block_id):
                out[b].append(x)
            self._blocks = tuple(tuple(bl) for bl in out)
        return self._blocks

    @property
    def num_blocks(self) -> int:
        return max(self.block_id) + 1 if self.block_id else 0

    def block_of(self, x: int) -> tuple[int, ...]:
        return self.blocks()[self.block_id[x]]

    def relates(self, a: int, b: int) -> bool:
        return self.block_id[a] == self.block_id[b]

    def related_pairs(self) -> Iterator[tuple[int, int]]:
        """All ordered pairs (a, b) with a != b in the same block."""
        for block in self.blocks():
            for a in block:
                for b in block:
                    if a != b:
                        yield a, b

    def refines(self, other: "Partition") -> bool:
        """True iff self <= other (every block of self lies inside a block of other)."""
        seen: dict[int, int] = {}
        for x in range(self.n):
            mine, theirs = self.block_id[x], other.block_id[x]
            if mine in seen:
                if seen[mine] != theirs:
                    return False
            else:
                seen[mine] = theirs
        return True

    def meet(self, other: "Partition") -> "Partition":
        return Partition([self.block_id[x] * other.n + other.block_id[x] for x in range(self.n)])

    def join(self, other: "Partition") -> "Partition":
        pairs = [(block[0], x) for block in self.blocks() for x in block[1:]]
        pairs += [(block[0], x) for block in other.blocks() for x in block[1:]]
        return Partition.from_pairs(self.n, pairs)

    def is_uniform(self) -> bool:
        sizes = {len(b) for b in self.blocks()}
        return len(sizes) <= 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.block_id == other.block_id

    def __hash__(self) -> int:
        return hash(self.block_id)

    def __le__(self, other: "Partition") -> bool:
        return self.refines(other)

    def __repr__(self) -> str:
        body = "|".join(",".join(str(x) for x in b) for b in self.blocks())
        return f"Partition[{body}]"


def all_partitions(n: int) -> Iterator[Partition]:
    """Every partition of {0..n-1}, by restricted-growth strings, finest last
    in no particular lattice order but deterministic."""
    if n == 0:
        yield Partition(())
        return
    rgs = [0] * n

    def rec(i: int, maxid: int) -> Iterator[Partition]:
        if i == n:
            yield Partition(rgs)
            return
        for b in range(maxid + 2):
            rgs[i] = b
            yield from rec(i + 1, max(maxid, b))

    yield from rec(1, 0)
