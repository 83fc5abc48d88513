"""The left quasigroup datatype and its per-instance structure theory.

A left quasigroup is stored as its Cayley table; row a is the left
translation by a and must be a permutation.  Everything else (left division,
multiplication groups, the squaring map, identity classification) is derived
from the rows.  Instances are immutable and hashable, and the multiplication
groups are cached per row-set so enumeration sweeps over many tables share
group closures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Sequence

from .errors import (
    CayleyPropertyFails,
    InternalAssertion,
    NotLeftQuasigroup,
    NotSemimedial,
    OrderTooLarge,
)
from .partition import Partition
from .perm import Perm, PermGroup, group_from_generators, normal_closure, orbit_partition

ISO_CAP = 10
SUPERCONNECTED_CAP = 8
PRODUCT_CELL_CAP = 10_000

_lmlt_cache: dict[frozenset[Perm], PermGroup] = {}
_dis_cache: dict[frozenset[Perm], PermGroup] = {}


def clear_group_caches() -> None:
    _lmlt_cache.clear()
    _dis_cache.clear()


class LeftQuasigroup:
    """An order-n left quasigroup given by its multiplication table."""

    __slots__ = ("n", "rows", "ldiv_rows", "__dict__")

    def __init__(self, table: Sequence[Sequence[int]]):
        rows = []
        for i, row in enumerate(table):
            try:
                rows.append(Perm(row))
            except ValueError:
                raise NotLeftQuasigroup(i) from None
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise NotLeftQuasigroup(i)
        self.n = n
        self.rows = tuple(rows)
        self.ldiv_rows = tuple(r.inv() for r in rows)

    # table access -----------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def ldiv(self, a: int, b: int) -> int:
        return self.ldiv_rows[a][b]

    def left_translation(self, a: int) -> Perm:
        return self.rows[a]

    def table(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LeftQuasigroup) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"LeftQuasigroup({[list(r) for r in self.rows]})"

    # multiplication groups ----------------------------------------------------

    @cached_property
    def lmlt(self) -> PermGroup:
        key = frozenset(self.rows)
        got = _lmlt_cache.get(key)
        if got is None:
            got = group_from_generators(sorted(set(self.rows)), degree=self.n)
            _lmlt_cache[key] = got
        return got

    @cached_property
    def dis(self) -> PermGroup:
        key = frozenset(self.rows)
        got = _dis_cache.get(key)
        if got is None:
            seeds = sorted({a * b.inv() for a in key for b in key})
            got = normal_closure(self.lmlt, seeds)
            _dis_cache[key] = got
        return got

    # squaring -------------------------------------------------------------------

    @cached_property
    def squaring_map(self) -> tuple[int, ...]:
        return tuple(self.rows[a][a] for a in range(self.n))

    @cached_property
    def is_two_divisible(self) -> bool:
        return len(set(self.squaring_map)) == self.n

    def squaring_perm(self) -> Perm:
        if not self.is_two_divisible:
            raise ValueError("squaring map is not a bijection")
        return Perm(self.squaring_map)

    @cached_property
    def idempotents(self) -> frozenset[int]:
        return frozenset(a for a in range(self.n) if self.squaring_map[a] == a)

    @cached_property
    def multipotency_class(self) -> int | None:
        """Smallest m with |s^m(Q)| = 1, or None if the image chain stabilizes
        above one element."""
        image = set(range(self.n))
        m = 0
        while len(image) > 1:
            nxt = {self.squaring_map[a] for a in image}
            if nxt == image:
                return None
            image = nxt
            m += 1
        return m

    # identity checks --------------------------------------------------------------

    def satisfies_sm1(self) -> bool:
        rows, s = self.rows, self.squaring_map
        for x in range(self.n):
            lsx, lx = rows[s[x]], rows[x]
            for y in range(self.n):
                ly, lxy = rows[y], rows[lx[y]]
                if any(lsx[ly[z]] != lxy[lx[z]] for z in range(self.n)):
                    return False
        return True

    def satisfies_sm2(self) -> bool:
        rows, ld, s = self.rows, self.ldiv_rows, self.squaring_map
        for x in range(self.n):
            ldx, ldsx = ld[x], ld[s[x]]
            for y in range(self.n):
                lxy = rows[ldx[y]]
                if any(lxy[ldx[z]] != ldsx[rows[y][z]] for z in range(self.n)):
                    return False
        return True

    def is_semimedial(self) -> bool:
        got = self.__dict__.get("_semimedial")
        if got is None:
            got = self.satisfies_sm1()
            if got != self.satisfies_sm2():
                raise InternalAssertion(
                    "the two semimedial identities disagree on this table")
            self.__dict__["_semimedial"] = got
        return got

    def is_medial(self) -> bool:
        # (x*y)*(z*u) = (x*z)*(y*u) for all u is L_{x*y} L_z = L_{x*z} L_y.
        got = self.__dict__.get("_medial")
        if got is None:
            rows = self.rows
            got = True
            for x in range(self.n):
                lx = rows[x]
                for y in range(self.n):
                    if any(rows[lx[y]] * rows[z] != rows[lx[z]] * rows[y]
                           for z in range(y + 1, self.n)):
                        got = False
                        break
                if not got:
                    break
            self.__dict__["_medial"] = got
        return got

    def is_rack(self) -> bool:
        got = self.__dict__.get("_rack")
        if got is None:
            rows = self.rows
            got = True
            for x in range(self.n):
                lx = rows[x]
                for y in range(self.n):
                    ly, lxy = rows[y], rows[lx[y]]
                    if any(lx[ly[z]] != lxy[lx[z]] for z in range(self.n)):
                        got = False
                        break
                if not got:
                    break
            self.__dict__["_rack"] = got
        return got

    def is_latin(self) -> bool:
        return all(
            len({self.rows[a][c] for a in range(self.n)}) == self.n
            for c in range(self.n))

    def is_associative(self) -> bool:
        rows = self.rows
        return all(rows[rows[x][y]] == rows[x] * rows[y]
                   for x in range(self.n) for y in range(self.n))

    def is_projection(self) -> bool:
        return all(self.rows[a][b] == b for a in range(self.n) for b in range(self.n))


# cayley kernel / faithfulness ---------------------------------------------------


def cayley_kernel(q: LeftQuasigroup, check_semimedial: bool = True) -> Partition:
    """Partition by equal rows.  For semimedial inputs the kernel must be a
    congruence with central multiplication-group kernel; both are asserted."""
    index: dict[Perm, int] = {}
    bid = []
    for r in q.rows:
        if r not in index:
            index[r] = len(index)
        bid.append(index[r])
    lam = Partition(bid)
    if check_semimedial and q.is_semimedial():
        from .congruence import is_congruence, lmlt_kernel
        from .perm import center

        if not is_congruence(q, lam):
            raise InternalAssertion(
                "Cayley kernel of a semimedial table is not a congruence")
        if not lmlt_kernel(q, lam).is_subgroup_of(center(q.lmlt)):
            raise InternalAssertion(
                "Cayley-kernel group is not central in the row group")
    return lam


def is_faithful(q: LeftQuasigroup) -> bool:
    return len(set(q.rows)) == q.n


# profiles -------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityProfile:
    """Full identity and structure classification of one table."""

    is_semimedial: bool
    is_medial: bool
    is_rack: bool
    is_quandle: bool
    is_idempotent: bool
    is_associative: bool
    is_latin: bool
    is_permutation: bool
    is_projection: bool
    is_faithful: bool
    is_connected: bool
    is_superconnected: bool | None
    is_2_divisible: bool
    multipotency_class: int | None
    reductivity_level: int | None

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def identity_profile(q: LeftQuasigroup) -> IdentityProfile:
    """Classify by exhaustive quantifier evaluation over the table.

    The two semimedial identities are both evaluated and must agree; the
    medial => semimedial and rack => 2-divisible-semimedial implications are
    re-asserted as cross-checks.  The superconnectedness scan only runs at
    order <= 8 (None above that), and the reductivity level is None whenever
    some Cayley-kernel step is not a congruence.
    """
    semimedial = q.is_semimedial()
    medial = q.is_medial()
    rack = q.is_rack()
    idempotent = len(q.idempotents) == q.n
    if medial and not semimedial:
        raise InternalAssertion("medial table fails the semimedial identity")
    if rack and not semimedial:
        raise InternalAssertion("rack fails the semimedial identity")
    if rack and not q.is_two_divisible:
        raise InternalAssertion("rack with non-bijective squaring map")
    super_conn = None
    if q.n <= SUPERCONNECTED_CAP:
        super_conn = all(
            orbit_partition(sub.lmlt).num_blocks == 1
            for sub, _ in subalgebra_lattice(q))
    try:
        red = reductivity_level(q)
    except CayleyPropertyFails:
        red = None
    return IdentityProfile(
        is_semimedial=semimedial,
        is_medial=medial,
        is_rack=rack,
        is_quandle=rack and idempotent,
        is_idempotent=idempotent,
        is_associative=q.is_associative(),
        is_latin=q.is_latin(),
        is_permutation=len(set(q.rows)) == 1,
        is_projection=q.is_projection(),
        is_faithful=is_faithful(q),
        is_connected=orbit_partition(q.lmlt).num_blocks == 1,
        is_superconnected=super_conn,
        is_2_divisible=q.is_two_divisible,
        multipotency_class=q.multipotency_class,
        reductivity_level=red,
    )


def from_table(table: Sequence[Sequence[int]]) -> LeftQuasigroup:
    return LeftQuasigroup(table)


def lmlt_and_dis(q: LeftQuasigroup) -> tuple[PermGroup, PermGroup]:
    """(row group, displacement group), with the coset factorization
    LMlt = Dis . <L_a> asserted for every a."""
    from .perm import coset_product_covers

    lm, dis = q.lmlt, q.dis
    for a in range(q.n):
        if not coset_product_covers(lm, dis, q.rows[a]):
            raise InternalAssertion(
                f"row group is not displacement-group times <row {a}>")
    return lm, dis


def squaring_profile(q: LeftQuasigroup) -> tuple[
        tuple[int, ...], Partition, frozenset[int], list[frozenset[int]]]:
    """(squaring map, its kernel, idempotent set, image chain down to the
    stable image).  Semimedial inputs get the endomorphism and
    kernel-congruence assertions."""
    s = q.squaring_map
    index: dict[int, int] = {}
    bid = []
    for v in s:
        if v not in index:
            index[v] = len(index)
        bid.append(index[v])
    ker = Partition(bid)
    chain = [frozenset(range(q.n))]
    while True:
        nxt = frozenset(s[a] for a in chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    if q.is_semimedial():
        from .congruence import is_congruence

        for a in range(q.n):
            if any(s[q.mul(a, b)] != q.mul(s[a], s[b]) for b in range(q.n)):
                raise InternalAssertion("squaring map is not an endomorphism")
        if not is_congruence(q, ker):
            raise InternalAssertion("squaring kernel is not a congruence")
    return s, ker, q.idempotents, chain


def subalgebra_generate(q: LeftQuasigroup, seed: Iterable[int]) -> frozenset[int]:
    """Smallest subset containing `seed` closed under * and left division."""
    out = set(seed)
    frontier = list(out)
    while frontier:
        fresh = []
        for a in list(out):
            for b in frontier:
                for c in (q.mul(a, b), q.ldiv(a, b), q.mul(b, a), q.ldiv(b, a)):
                    if c not in out:
                        out.add(c)
                        fresh.append(c)
        frontier = fresh
    return frozenset(out)


def induced_subtable(q: LeftQuasigroup, sub: Iterable[int]) -> tuple[LeftQuasigroup, list[int]]:
    """Relabel a subuniverse to 0..k-1; returns (table, original labels)."""
    labels = sorted(sub)
    pos = {x: i for i, x in enumerate(labels)}
    table = [[pos[q.mul(a, b)] for b in labels] for a in labels]
    return LeftQuasigroup(table), labels


def subalgebra_lattice(q: LeftQuasigroup) -> list[tuple[LeftQuasigroup, list[int]]]:
    """All subalgebras (as relabeled tables plus label lists), generated from
    singletons and closed under join."""
    if q.n > SUPERCONNECTED_CAP:
        raise OrderTooLarge(
            f"subalgebra lattice capped at order {SUPERCONNECTED_CAP}")
    subs: set[frozenset[int]] = set()
    frontier: list[frozenset[int]] = []
    for a in range(q.n):
        s = subalgebra_generate(q, {a})
        if s not in subs:
            subs.add(s)
            frontier.append(s)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(subs):
                j = subalgebra_generate(q, a | b)
                if j not in subs:
                    subs.add(j)
                    fresh.append(j)
        frontier = fresh
    return [induced_subtable(q, s)
            for s in sorted(subs, key=lambda s: (len(s), sorted(s)))]


def connectivity(q: LeftQuasigroup) -> tuple[bool, bool, Partition]:
    """(connected, superconnected, orbit partition of the row group).  The
    superconnected scan enumerates the subalgebra lattice and is capped."""
    orbits = orbit_partition(q.lmlt)
    connected = orbits.num_blocks == 1
    if q.n > SUPERCONNECTED_CAP:
        raise OrderTooLarge(
            f"superconnectedness check capped at order {SUPERCONNECTED_CAP}")
    super_conn = all(
        orbit_partition(sub.lmlt).num_blocks == 1
        for sub, _ in subalgebra_lattice(q))
    return connected, super_conn, orbits


def _right_translation_maps(q: LeftQuasigroup, depth: int) -> set[tuple[int, ...]]:
    """All maps y -> (..(y*x1)..)*x_depth as image tuples, deduplicated."""
    maps = {tuple(q.mul(y, x) for y in range(q.n)) for x in range(q.n)}
    for _ in range(depth - 1):
        maps = {tuple(q.mul(m[y], x) for y in range(q.n))
                for m in maps for x in range(q.n)}
    return maps


def reductivity_level(q: LeftQuasigroup, verify_identity: bool = True) -> int | None:
    """Length of the iterated Cayley-kernel quotient chain down to one
    element, or None if the chain stabilizes above size 1.

    Raises CayleyPropertyFails when some step's kernel is not a congruence.
    The defining right-translation identity is re-checked directly for the
    level found (via deduplicated composite maps, so the check stays cheap).
    """
    from .congruence import is_congruence, quotient

    current = q
    level = 0
    while current.n > 1:
        lam = cayley_kernel(current, check_semimedial=False)
        if lam.num_blocks == current.n:
            return None  # faithful and nontrivial: the chain is stuck
        if not is_congruence(current, lam):
            raise CayleyPropertyFails(level)
        current = quotient(current, lam, _checked=True)
        level += 1
    if verify_identity and level:
        if any(len(set(m)) != 1 for m in _right_translation_maps(q, level)):
            raise InternalAssertion(
                f"chain reached one element at level {level} but the "
                f"right-translation identity fails")
    return level


def word_to_perm(q: LeftQuasigroup, word: Sequence[tuple[int, int]]) -> Perm:
    """Evaluate a signed row word [(a, k), ...] as a permutation, composing
    left factors last (function composition order)."""
    out = Perm.identity(q.n)
    for a, k in word:
        out = out * (q.rows[a] ** k)
    return out


def word_s_map(q: LeftQuasigroup, word: Sequence[tuple[int, int]]) -> Perm:
    """Replace each row index in the word by its square and evaluate.

    Only valid on semimedial tables, where the substituted word conjugates
    rows correctly: L_{h(a)} = h' L_a h^{-1} for h' the substituted word;
    that equation is asserted pointwise for the given word.
    """
    if not q.is_semimedial():
        raise NotSemimedial("squared row words need a semimedial table")
    s = q.squaring_map
    h = word_to_perm(q, word)
    hs = word_to_perm(q, [(s[a], k) for a, k in word])
    hi = h.inv()
    for a in range(q.n):
        if q.rows[h[a]] != hs * q.rows[a] * hi:
            raise InternalAssertion("squared-word conjugation identity fails")
    return hs


def squared_image(q: LeftQuasigroup, h: Perm) -> Perm:
    """The square-substituted image of a row-group element, computed without a
    word: equals L_{h(0)} h L_0^{-1}, which on semimedial tables is the value
    any defining word produces."""
    if not q.is_semimedial():
        raise NotSemimedial("squared images need a semimedial table")
    return q.rows[h[0]] * h * q.ldiv_rows[0]


# isomorphisms ------------------------------------------------------------------------


def _element_invariants(q: LeftQuasigroup) -> list[tuple]:
    s = q.squaring_map
    return [(q.rows[a].cycle_type(), s[a] == a) for a in range(q.n)]


def _iso_backtrack(q1: LeftQuasigroup, q2: LeftQuasigroup,
                   collect_all: bool) -> list[Perm]:
    n = q1.n
    inv1, inv2 = _element_invariants(q1), _element_invariants(q2)
    if sorted(inv1) != sorted(inv2):
        return []
    image: list[int | None] = [None] * n
    used = [False] * n
    found: list[Perm] = []

    def consistent(a: int) -> bool:
        # check products among assigned elements against the partial map
        for b in range(n):
            if image[b] is None:
                continue
            for x, y in ((a, b), (b, a)):
                prod = q1.mul(x, y)
                target = q2.mul(image[x], image[y])  # type: ignore[index]
                if image[prod] is not None:
                    if image[prod] != target:
                        return False
                elif used[target]:
                    return False  # target already taken by a different element
        return True

    def rec(a: int) -> bool:
        if a == n:
            found.append(Perm(image))  # type: ignore[arg-type]
            return not collect_all
        for cand in range(n):
            if used[cand] or inv1[a] != inv2[cand]:
                continue
            image[a] = cand
            used[cand] = True
            if consistent(a) and rec(a + 1):
                return True
            image[a] = None
            used[cand] = False
        return False

    rec(0)
    return found


def find_isomorphism(q1: LeftQuasigroup, q2: LeftQuasigroup) -> Perm | None:
    """A table isomorphism q1 -> q2 (backtracking search), or None."""
    if q1.n != q2.n:
        return None
    if q1.n > ISO_CAP:
        raise OrderTooLarge(f"isomorphism search capped at order {ISO_CAP}")
    got = _iso_backtrack(q1, q2, collect_all=False)
    return got[0] if got else None


def automorphism_group(q: LeftQuasigroup) -> PermGroup:
    if q.n > ISO_CAP:
        raise OrderTooLarge(f"automorphism search capped at order {ISO_CAP}")
    return PermGroup.from_elements(q.n, _iso_backtrack(q, q, collect_all=True))


def iso_and_aut(q1: LeftQuasigroup, q2: LeftQuasigroup) -> tuple[Perm | None, PermGroup]:
    """(isomorphism q1 -> q2 if any, automorphism group of q1)."""
    return find_isomorphism(q1, q2), automorphism_group(q1)


def are_isomorphic(q1: LeftQuasigroup, q2: LeftQuasigroup) -> bool:
    return q1.n == q2.n and find_isomorphism(q1, q2) is not None


def direct_product(q1: LeftQuasigroup, q2: LeftQuasigroup) -> LeftQuasigroup:
    """Componentwise product on pairs flattened as a1*n2 + a2."""
    n1, n2 = q1.n, q2.n
    if (n1 * n2) ** 2 > PRODUCT_CELL_CAP:
        raise OrderTooLarge("product table exceeds the cell cap")
    table = [[0] * (n1 * n2) for _ in range(n1 * n2)]
    for a1, a2, b1, b2 in product(range(n1), range(n2), range(n1), range(n2)):
        table[a1 * n2 + a2][b1 * n2 + b2] = q1.mul(a1, b1) * n2 + q2.mul(a2, b2)
    return LeftQuasigroup(table)


def all_rows(n: int) -> list[Perm]:
    return [Perm(p) for p in permutations(range(n))]


def homomorphism_check(q1: LeftQuasigroup, q2: LeftQuasigroup,
                       f: Sequence[int]) -> bool:
    """Is f: q1 -> q2 compatible with multiplication (and hence division)?"""
    return all(f[q1.mul(a, b)] == q2.mul(f[a], f[b])
               for a in range(q1.n) for b in range(q1.n))
