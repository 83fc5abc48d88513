"""Permutations and materialized permutation groups.

Everything here works by explicit element sets: groups are generated by
breadth-first closure and all lattice/series questions are answered by
scanning elements.  Orders at desk scale stay tiny (subgroups of Sym_n for
n <= 8 or so), so clarity wins over asymptotics.  The materialization cap
defaults to 200_000 elements and can be overridden with the LQG_CAP
environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceeded, DegreeMismatch
from .partition import Partition

DEFAULT_CAP = 200_000


def group_cap() -> int:
    raw = os.environ.get("LQG_CAP")
    return int(raw) if raw else DEFAULT_CAP


class Perm(tuple):
    """A permutation of {0..n-1}, stored as its image tuple.

    Composition is right-to-left: (p * q)(x) = p(q(x)).
    """

    def __new__(cls, images: Iterable[int]):
        p = super().__new__(cls, images)
        seen = set(p)
        if len(seen) != len(p) or (p and (min(p) != 0 or max(p) != len(p) - 1)):
            raise ValueError(f"not a permutation of 0..{len(p) - 1}: {tuple(p)}")
        return p

    @property
    def degree(self) -> int:
        return len(self)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        images = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    def __mul__(self, other: "Perm") -> "Perm":  # type: ignore[override]
        if len(self) != len(other):
            raise DegreeMismatch(f"degree {len(self)} vs {len(other)}")
        return tuple.__new__(Perm, map(self.__getitem__, other))

    def __call__(self, x: int) -> int:
        return self[x]

    def inv(self) -> "Perm":
        images = [0] * len(self)
        for i, v in enumerate(self):
            images[v] = i
        return tuple.__new__(Perm, images)

    def __pow__(self, k: int) -> "Perm":  # type: ignore[override]
        base = self if k >= 0 else self.inv()
        out = Perm.identity(len(self))
        for _ in range(abs(k)):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self))

    def cycle_type(self) -> tuple[int, ...]:
        seen = [False] * len(self)
        lengths = []
        for start in range(len(self)):
            if seen[start]:
                continue
            length, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self[x]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self) if v == i)


def _close(gens: Sequence[Perm], degree: int, cap: int) -> frozenset[Perm]:
    ident = Perm.identity(degree)
    elems: set[Perm] = {ident}
    frontier: list[Perm] = [ident]
    step = [g for g in gens if not g.is_identity()]
    step += [g.inv() for g in step]
    while frontier:
        fresh: list[Perm] = []
        for h in frontier:
            for g in step:
                q = g * h
                if q not in elems:
                    elems.add(q)
                    fresh.append(q)
                    if len(elems) > cap:
                        raise CapExceeded(f"group exceeds cap of {cap} elements")
        frontier = fresh
    return frozenset(elems)


@dataclass(frozen=True)
class PermGroup:
    """A permutation group with its full element set materialized."""

    degree: int
    generators: tuple[Perm, ...]
    elements: frozenset[Perm]
    _orbit_cache: list = field(default_factory=list, compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def __iter__(self):
        return iter(self.elements)

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_abelian(self) -> bool:
        elems = self.sorted_elements()
        return all(a * b == b * a for a, b in combinations(elems, 2))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.elements <= other.elements

    def is_transitive(self) -> bool:
        return orbit_partition(self).num_blocks == 1

    def is_normal_in(self, other: "PermGroup") -> bool:
        """True iff every generator of `other` conjugates this group into itself."""
        for g in other.generators:
            gi = g.inv()
            if any(g * h * gi not in self.elements for h in self.elements):
                return False
        return True

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, (), frozenset({Perm.identity(degree)}))

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Perm],
                      generators: Sequence[Perm] | None = None) -> "PermGroup":
        """Wrap an element set already known to be a subgroup (no closure run)."""
        elems = frozenset(elements)
        gens = tuple(generators) if generators is not None else tuple(
            g for g in sorted(elems) if not g.is_identity())
        return cls(degree, gens, elems)

    @classmethod
    def symmetric(cls, degree: int) -> "PermGroup":
        if degree <= 1:
            return cls.trivial(max(degree, 1))
        gens = [Perm.from_cycles(degree, (0, 1))]
        if degree > 2:
            gens.append(Perm.from_cycles(degree, tuple(range(degree))))
        return group_from_generators(gens, degree=degree)


def group_from_generators(gens: Sequence[Perm], cap: int | None = None,
                          degree: int | None = None) -> PermGroup:
    """Closure of `gens` under composition and inverse."""
    if cap is None:
        cap = group_cap()
    if cap <= 0:
        raise ValueError("cap must be positive")
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise DegreeMismatch("generators have mixed degrees")
    return PermGroup(degree, tuple(gens), _close(gens, degree, cap))


def orbit_partition(g: PermGroup) -> Partition:
    """Orbits of the group on its points."""
    if not g._orbit_cache:
        parent = list(range(g.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in g.generators:
            for x in range(g.degree):
                rx, ry = find(x), find(p[x])
                if rx != ry:
                    parent[ry] = rx
        g._orbit_cache.append(Partition([find(x) for x in range(g.degree)]))
    return g._orbit_cache[0]


def normal_closure(ambient: PermGroup, seed: Sequence[Perm],
                   cap: int | None = None) -> PermGroup:
    """Smallest subgroup containing `seed` that is closed under conjugation by
    the generators of `ambient`."""
    if cap is None:
        cap = group_cap()
    if any(s not in ambient.elements for s in seed):
        raise ValueError("seed elements must belong to the ambient group")
    current = [s for s in seed if not s.is_identity()]
    group = _close(current, ambient.degree, cap)
    while True:
        fresh = []
        for a in ambient.generators:
            ai = a.inv()
            for h in group:
                c = a * h * ai
                if c not in group:
                    fresh.append(c)
        if not fresh:
            return PermGroup(ambient.degree, tuple(sorted(set(current))), group)
        current = sorted(set(current) | set(fresh))
        group = _close(current, ambient.degree, cap)


def centralizer(g: PermGroup, h: PermGroup) -> PermGroup:
    """{x in G : xy = yx for all y in H}, by element scan."""
    if g.degree != h.degree:
        raise DegreeMismatch("centralizer needs equal degrees")
    witnesses = h.generators if h.generators else (h.identity,)
    elems = [x for x in g.elements if all(x * w == w * x for w in witnesses)]
    return PermGroup.from_elements(g.degree, elems)


def center(g: PermGroup) -> PermGroup:
    return centralizer(g, g)


def commutator_subgroup(g: PermGroup, h: PermGroup, k: PermGroup,
                        cap: int | None = None) -> PermGroup:
    """[H, K]: normal closure in <H, K> of all commutators h^-1 k^-1 h k."""
    if not (h.is_subgroup_of(g) and k.is_subgroup_of(g)):
        raise ValueError("H and K must be subgroups of G")
    comms = set()
    for a in h.elements:
        ai = a.inv()
        for b in k.elements:
            comms.add(ai * b.inv() * a * b)
    comms.discard(g.identity)
    if not comms:
        return PermGroup.trivial(g.degree)
    join = group_from_generators(tuple(h.generators) + tuple(k.generators),
                                 cap=cap, degree=g.degree)
    return normal_closure(join, sorted(comms), cap=cap)


@dataclass(frozen=True)
class GroupSeries:
    derived: tuple[PermGroup, ...]
    lower_central: tuple[PermGroup, ...]
    is_solvable: bool
    is_nilpotent: bool
    solvable_length: int | None
    nilpotent_length: int | None


def group_series(g: PermGroup) -> GroupSeries:
    """Derived and lower central series, with solvability/nilpotence flags.

    Lengths count the steps needed to reach the trivial group; a trivial
    input has both lengths 0, an abelian nontrivial one has both lengths 1.
    """

    def run(next_term) -> tuple[tuple[PermGroup, ...], int | None]:
        chain = [g]
        while not chain[-1].is_trivial():
            nxt = next_term(chain[-1])
            if nxt.elements == chain[-1].elements:
                return tuple(chain), None  # stabilized above the identity
            chain.append(nxt)
        return tuple(chain), len(chain) - 1

    derived, sol_len = run(lambda cur: commutator_subgroup(g, cur, cur))
    lower, nil_len = run(lambda cur: commutator_subgroup(g, cur, g))
    return GroupSeries(
        derived=derived,
        lower_central=lower,
        is_solvable=sol_len is not None,
        is_nilpotent=nil_len is not None,
        solvable_length=sol_len,
        nilpotent_length=nil_len,
    )


def subgroup_join(g: PermGroup, parts: Iterable[PermGroup],
                  cap: int | None = None) -> PermGroup:
    gens: list[Perm] = []
    for p in parts:
        gens.extend(p.generators)
    if not gens:
        return PermGroup.trivial(g.degree)
    return group_from_generators(sorted(set(gens)), cap=cap, degree=g.degree)


def normal_subgroups(g: PermGroup, cap: int | None = None) -> list[PermGroup]:
    """All normal subgroups, as the join-closure of the normal closures of
    single elements (every normal subgroup is such a join)."""
    principals: dict[frozenset[Perm], PermGroup] = {}
    for x in g.elements:
        if x.is_identity():
            continue
        n = normal_closure(g, [x], cap=cap)
        principals.setdefault(n.elements, n)
    found: dict[frozenset[Perm], PermGroup] = {
        frozenset({g.identity}): PermGroup.trivial(g.degree)}
    found.update(principals)
    frontier = list(principals.values())
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(found.values()):
                j = subgroup_join(g, (a, b), cap=cap)
                if j.elements not in found:
                    found[j.elements] = j
                    fresh.append(j)
        frontier = fresh
    return sorted(found.values(), key=lambda n: (n.order, n.sorted_elements()))


def is_semiregular(g: PermGroup, alpha: Partition) -> bool:
    """True iff every element fixing a point fixes that point's whole block."""
    if alpha.n != g.degree:
        raise DegreeMismatch("partition degree mismatch")
    for h in g.elements:
        if h.is_identity():
            continue
        for block in alpha.blocks():
            fixed = sum(1 for x in block if h[x] == x)
            if 0 < fixed < len(block):
                return False
    return True


def stabilizer_partition(g: PermGroup) -> Partition:
    """Points grouped by equal stabilizer subgroups."""
    stabs = []
    for x in range(g.degree):
        stabs.append(frozenset(h for h in g.elements if h[x] == x))
    index: dict[frozenset[Perm], int] = {}
    bid = []
    for s in stabs:
        if s not in index:
            index[s] = len(index)
        bid.append(index[s])
    return Partition(bid)


def point_stabilizer(g: PermGroup, x: int) -> PermGroup:
    return PermGroup.from_elements(g.degree, (h for h in g.elements if h[x] == x))


def coset_product_covers(g: PermGroup, normal: PermGroup, p: Perm) -> bool:
    """True iff N . <p> exhausts g (used for factorization cross-checks)."""
    covered = set(normal.elements)
    power = p
    while len(covered) < g.order:
        nxt = {h * power for h in normal.elements}
        if nxt <= covered:
            return False
        covered |= nxt
        power = power * p
    return covered == g.elements


def brute_force_subgroups(g: PermGroup, max_order: int = 48) -> list[PermGroup]:
    """Every subgroup, by closing each subset extension; test oracle only."""
    if g.order > max_order:
        raise ValueError(f"brute-force subgroup scan capped at order {max_order}")
    found: dict[frozenset[Perm], PermGroup] = {
        frozenset({g.identity}): PermGroup.trivial(g.degree)}
    frontier = [found[frozenset({g.identity})]]
    while frontier:
        fresh = []
        for sub in frontier:
            for x in g.elements:
                if x in sub.elements:
                    continue
                bigger = group_from_generators(
                    tuple(sub.generators) + (x,), degree=g.degree)
                if bigger.elements not in found:
                    found[bigger.elements] = bigger
                    fresh.append(bigger)
        frontier = fresh
    return sorted(found.values(), key=lambda n: (n.order, n.sorted_elements()))


def reduce_join(groups: Sequence[PermGroup], g: PermGroup) -> PermGroup:
    return reduce(lambda a, b: subgroup_join(g, (a, b)), groups,
                  PermGroup.trivial(g.degree))
