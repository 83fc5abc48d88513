"""Affine tables, cocycle extensions, the quandle correspondence, the
connected-medial-rack classifier, the multipotent ternary term, and the
translation-word search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .congruence import c_relation, is_congruence
from .core import (
    LeftQuasigroup,
    _iso_backtrack,
    direct_product,
    subalgebra_generate,
)
from .errors import (
    InternalAssertion,
    MaltsevIdentityFails,
    Not2DivisibleSemimedial,
    NotAQuasigroup,
    NotAutomorphism,
    NotEndomorphism,
    OrderTooLarge,
    SizeMismatch,
)
from .perm import Perm, normal_subgroups

CLASSIFY_CAP = 12
ABELIAN_CAP = 16


# abelian groups as products of cyclic factors ------------------------------------


class AbelianGroup:
    """Z_{d1} x ... x Z_{dk} with elements flattened in mixed radix."""

    def __init__(self, factors: Sequence[int]):
        if any(d < 1 for d in factors):
            raise ValueError("cyclic factors must be positive")
        self.factors = tuple(d for d in factors if d > 1)
        self.size = 1
        for d in self.factors:
            self.size *= d

    def to_tuple(self, x: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.factors):
            out.append(x % d)
            x //= d
        return tuple(reversed(out))

    def from_tuple(self, t: Sequence[int]) -> int:
        x = 0
        for d, c in zip(self.factors, t):
            x = x * d + (c % d)
        return x

    def add(self, x: int, y: int) -> int:
        tx, ty = self.to_tuple(x), self.to_tuple(y)
        return self.from_tuple([a + b for a, b in zip(tx, ty)])

    def neg(self, x: int) -> int:
        return self.from_tuple([-c for c in self.to_tuple(x)])

    def scale(self, k: int, x: int) -> int:
        return self.from_tuple([k * c for c in self.to_tuple(x)])

    def generators(self) -> list[int]:
        gens = []
        for i, _ in enumerate(self.factors):
            gens.append(self.from_tuple([1 if j == i else 0
                                         for j in range(len(self.factors))]))
        return gens

    def element_order_divides(self, x: int, d: int) -> bool:
        return self.scale(d, x) == 0

    def is_additive(self, f: Sequence[int]) -> bool:
        return all(f[self.add(x, y)] == self.add(f[x], f[y])
                   for x in range(self.size) for y in range(self.size))

    def endomorphisms_from_generator_images(self) -> Iterator[tuple[int, ...]]:
        """All additive self-maps, one per valid choice of generator images."""
        gens = self.generators()
        if not gens:
            yield (0,) if self.size == 1 else tuple()
            return
        pools = [[x for x in range(self.size) if self.element_order_divides(x, d)]
                 for d in self.factors]
        for images in product(*pools):
            f = [0] * self.size
            for x in range(self.size):
                coords = self.to_tuple(x)
                acc = 0
                for c, img in zip(coords, images):
                    acc = self.add(acc, self.scale(c, img))
                f[x] = acc
            yield tuple(f)

    def automorphisms(self) -> Iterator[tuple[int, ...]]:
        for f in self.endomorphisms_from_generator_images():
            if len(set(f)) == self.size:
                yield f


def abelian_groups_of_order(d: int) -> list[AbelianGroup]:
    """One group per isomorphism class, as lists of prime-power factors."""

    def prime_factorization(m: int) -> list[tuple[int, int]]:
        out = []
        p = 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
            p += 1
        if m > 1:
            out.append((m, 1))
        return out

    def partitions(e: int) -> Iterator[tuple[int, ...]]:
        def rec(rest: int, most: int) -> Iterator[tuple[int, ...]]:
            if rest == 0:
                yield ()
                return
            for part in range(min(rest, most), 0, -1):
                for tail in rec(rest - part, part):
                    yield (part,) + tail
        yield from rec(e, e)

    if d == 1:
        return [AbelianGroup([])]
    per_prime = []
    for p, e in prime_factorization(d):
        per_prime.append([[p ** part for part in parts] for parts in partitions(e)])
    groups = []
    for combo in product(*per_prime):
        factors: list[int] = []
        for fs in combo:
            factors.extend(fs)
        groups.append(AbelianGroup(sorted(factors)))
    return groups


@dataclass(frozen=True)
class AffineData:
    """An abelian group with an endomorphism f, automorphism g, and constant
    c, defining the table a*b = f(a) + g(b) + c."""

    factors: tuple[int, ...]
    f: tuple[int, ...]
    g: tuple[int, ...]
    c: int

    @property
    def group(self) -> AbelianGroup:
        return AbelianGroup(self.factors)


def affine_data_cyclic(n: int, f_mult: int, g_mult: int, c: int) -> AffineData:
    """Affine data over a single cyclic group with multiplier maps."""
    grp = AbelianGroup([n])
    f = tuple(grp.scale(f_mult, x) for x in range(grp.size))
    g = tuple(grp.scale(g_mult, x) for x in range(grp.size))
    return AffineData((n,) if n > 1 else (), f, g, c % max(n, 1))


def affine(data: AffineData) -> LeftQuasigroup:
    """Build the affine table; the result is asserted medial."""
    grp = data.group
    if len(data.f) != grp.size or len(data.g) != grp.size:
        raise SizeMismatch("map length does not match the group size")
    if not grp.is_additive(data.f):
        raise NotEndomorphism("f is not additive")
    if not grp.is_additive(data.g) or len(set(data.g)) != grp.size:
        raise NotAutomorphism("g is not an additive bijection")
    table = [[grp.add(grp.add(data.f[a], data.g[b]), data.c)
              for b in range(grp.size)] for a in range(grp.size)]
    out = LeftQuasigroup(table)
    if not out.is_medial():
        raise InternalAssertion("affine table is not medial")
    return out


def cyclic_shift(n: int) -> LeftQuasigroup:
    """The permutation table a*b = b + 1 mod n."""
    return LeftQuasigroup([[(b + 1) % n for b in range(n)] for _ in range(n)])


# cocycle extensions -----------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle:
    """A base-indexed square of fiber permutations."""

    base_order: int
    fiber_order: int
    theta: tuple[tuple[Perm, ...], ...]

    def __post_init__(self):
        if len(self.theta) != self.base_order or any(
                len(row) != self.base_order for row in self.theta):
            raise SizeMismatch("cocycle shape does not match the base order")
        if any(p.degree != self.fiber_order for row in self.theta for p in row):
            raise SizeMismatch("fiber permutation of wrong degree")

    @classmethod
    def constant(cls, base_order: int, p: Perm) -> "Cocycle":
        row = tuple(p for _ in range(base_order))
        return cls(base_order, p.degree, tuple(row for _ in range(base_order)))


def extension(q: LeftQuasigroup, theta: Cocycle) -> LeftQuasigroup:
    """(a,s)*(b,t) = (a*b, theta[a][b](t)), flattened as a*m + s.

    The canonical projection is asserted to be a homomorphism whose kernel
    refines the Cayley kernel of the extension.
    """
    if theta.base_order != q.n:
        raise SizeMismatch("cocycle base does not match the table")
    m = theta.fiber_order
    size = q.n * m
    table = [[0] * size for _ in range(size)]
    for a, s, b, t in product(range(q.n), range(m), range(q.n), range(m)):
        table[a * m + s][b * m + t] = q.mul(a, b) * m + theta.theta[a][b][t]
    out = LeftQuasigroup(table)
    for x in range(size):
        for y in range(size):
            if out.mul(x, y) // m != q.mul(x // m, y // m):
                raise InternalAssertion("projection onto the base is not a "
                                        "homomorphism")
    for a in range(q.n):
        base_row = out.rows[a * m]
        if any(out.rows[a * m + s] != base_row for s in range(1, m)):
            raise InternalAssertion("projection kernel escapes the Cayley kernel")
    return out


def is_medial_cocycle(q: LeftQuasigroup, theta: Cocycle) -> bool:
    """theta[a*b][c*d] theta[c][d] == theta[a*c][b*d] theta[b][d] everywhere."""
    th = theta.theta
    for a, b, c, d in product(range(q.n), repeat=4):
        if th[q.mul(a, b)][q.mul(c, d)] * th[c][d] != \
                th[q.mul(a, c)][q.mul(b, d)] * th[b][d]:
            return False
    return True


def transform_cocycle(q: LeftQuasigroup, theta: Cocycle,
                      gamma: Sequence[Perm]) -> Cocycle:
    """The cocycle eps[a][b] = gamma[a*b] theta[a][b] gamma[b]^-1; the two
    extensions are isomorphic via (a,s) -> (a, gamma[a](s)), which is
    asserted."""
    if len(gamma) != q.n:
        raise SizeMismatch("gamma must give one fiber permutation per base point")
    eps = tuple(
        tuple(gamma[q.mul(a, b)] * theta.theta[a][b] * gamma[b].inv()
              for b in range(q.n))
        for a in range(q.n))
    out = Cocycle(q.n, theta.fiber_order, eps)
    m = theta.fiber_order
    before, after = extension(q, theta), extension(q, out)
    iso = [0] * (q.n * m)
    for a in range(q.n):
        for s in range(m):
            iso[a * m + s] = a * m + gamma[a][s]
    if sorted(iso) != list(range(q.n * m)):
        raise InternalAssertion("cocycle transform produced a non-bijection")
    for x in range(q.n * m):
        if any(iso[before.mul(x, y)] != after.mul(iso[x], iso[y])
               for y in range(q.n * m)):
            raise InternalAssertion("cocycle transform is not an isomorphism "
                                    "of extensions")
    return out


def right_division(q: LeftQuasigroup, a: int, u: int) -> int:
    """The x with x*u = a; needs column u to be a bijection."""
    col = [q.mul(x, u) for x in range(q.n)]
    if len(set(col)) != q.n:
        raise NotAQuasigroup(f"column {u} is not a bijection")
    return col.index(a)


def normalize_cocycle(q: LeftQuasigroup, theta: Cocycle, u: int) -> Cocycle:
    """Gauge the cocycle so its u-column is constant, using
    gamma[a] = theta[a/u][u]^-1; constancy of the new u-column is asserted."""
    gamma = [theta.theta[right_division(q, a, u)][u].inv() for a in range(q.n)]
    out = transform_cocycle(q, theta, gamma)
    column = {out.theta[a][u] for a in range(q.n)}
    if len(column) != 1:
        raise InternalAssertion("normalized cocycle is not constant on the "
                                "anchor column")
    return out


def cocycle_tools(q: LeftQuasigroup, theta: Cocycle,
                  gamma: Sequence[Perm] | None = None,
                  u: int | None = None) -> Cocycle:
    """Gauge transform by an explicit gamma, or u-normalize when a base point
    is given instead."""
    if gamma is not None:
        return transform_cocycle(q, theta, gamma)
    if u is not None:
        return normalize_cocycle(q, theta, u)
    return theta


def medial_cocycles(q: LeftQuasigroup, fiber_order: int,
                    limit: int | None = None) -> Iterator[Cocycle]:
    """Exhaustive search for cocycles satisfying the mediality compatibility
    law; meant for tiny bases and fibers."""
    if q.n > 3 or fiber_order > 3:
        raise OrderTooLarge("cocycle search meant for bases and fibers <= 3")
    from .core import all_rows

    perms = all_rows(fiber_order)
    cells = q.n * q.n
    count = 0
    for choice in product(perms, repeat=cells):
        theta = Cocycle(q.n, fiber_order, tuple(
            tuple(choice[a * q.n + b] for b in range(q.n)) for a in range(q.n)))
        if is_medial_cocycle(q, theta):
            yield theta
            count += 1
            if limit is not None and count >= limit:
                return


# the quandle correspondence -----------------------------------------------------------


@dataclass(frozen=True)
class QuandleWithAutomorphism:
    quandle: LeftQuasigroup
    f: Perm

    def __post_init__(self):
        qd = self.quandle
        if not (qd.is_rack() and len(qd.idempotents) == qd.n):
            raise NotAutomorphism("base table is not a quandle")
        if len(self.f) != qd.n or any(
                self.f[qd.mul(a, b)] != qd.mul(self.f[a], self.f[b])
                for a in range(qd.n) for b in range(qd.n)):
            raise NotAutomorphism("the attached map is not an automorphism")


def from_quandle(qwa: QuandleWithAutomorphism) -> LeftQuasigroup:
    """x*y = f(x.y): a 2-divisible semimedial table whose squaring map is f.

    Asserted: the displacement group is preserved elementwise, and the result
    is a rack exactly when f centralizes the quandle's row group.
    """
    qd, f = qwa.quandle, qwa.f
    out = LeftQuasigroup([[f[qd.mul(a, b)] for b in range(qd.n)]
                          for a in range(qd.n)])
    if not (out.is_semimedial() and out.is_two_divisible):
        raise InternalAssertion("twisted quandle is not 2-divisible semimedial")
    if out.squaring_map != tuple(f):
        raise InternalAssertion("squaring map of the twist is not f")
    if out.dis.elements != qd.dis.elements:
        raise InternalAssertion("twist changed the displacement group")
    centralizes_rows = all(f * g == g * f for g in qd.lmlt.generators)
    if out.is_rack() != centralizes_rows:
        raise InternalAssertion("rack criterion for the twist fails")
    return out


def to_quandle(q: LeftQuasigroup) -> QuandleWithAutomorphism:
    """Undo the twist: x.y = s^-1(x*y) with s the squaring permutation."""
    if not (q.is_semimedial() and q.is_two_divisible):
        raise Not2DivisibleSemimedial(
            "only 2-divisible semimedial tables split into quandle and twist")
    s_inv = q.squaring_perm().inv()
    base = LeftQuasigroup([[s_inv[q.mul(a, b)] for b in range(q.n)]
                           for a in range(q.n)])
    return QuandleWithAutomorphism(base, q.squaring_perm())


# classification of connected medial racks ------------------------------------------------


def _fingerprint(q: LeftQuasigroup) -> tuple:
    return (q.n, q.lmlt.order, q.dis.order,
            tuple(sorted(r.cycle_type() for r in q.rows)),
            len(q.idempotents))


def classify_connected_medial_racks(n: int) -> list[LeftQuasigroup]:
    """All connected medial racks of order n up to isomorphism, built as
    twisted affine tables times a cyclic shift.

    For each divisor d of n, each abelian group A of order d, and each
    automorphism f of A fixing only zero, the table Aff(A, 1-f, f, 0) x
    (shift on n/d points) is produced; duplicates are removed by the
    isomorphism test and every survivor is asserted connected, medial and a
    rack.
    """
    if n > CLASSIFY_CAP:
        raise OrderTooLarge(f"classification capped at order {CLASSIFY_CAP}")
    built: list[LeftQuasigroup] = []
    for d in range(1, n + 1):
        if n % d:
            continue
        for grp in abelian_groups_of_order(d):
            if grp.size > ABELIAN_CAP:
                raise OrderTooLarge("abelian component exceeds its cap")
            for f in grp.automorphisms():
                if any(f[x] == x for x in range(1, grp.size)):
                    continue  # f must fix only zero
                one_minus_f = tuple(grp.add(x, grp.neg(f[x]))
                                    for x in range(grp.size))
                data = AffineData(grp.factors, one_minus_f, f, 0)
                core_part = affine(data) if grp.size > 1 else LeftQuasigroup([[0]])
                table = direct_product(core_part, cyclic_shift(n // d))
                built.append(table)
    kept: list[LeftQuasigroup] = []
    for cand in built:
        if any(_fingerprint(cand) == _fingerprint(seen)
               and _iso_backtrack(cand, seen, collect_all=False)
               for seen in kept):
            continue
        prof_ok = cand.is_rack() and cand.is_medial() and _is_connected(cand)
        if not prof_ok:
            raise InternalAssertion("constructed table is not a connected "
                                    "medial rack")
        kept.append(cand)
    kept.sort(key=lambda t: (_fingerprint(t), t.rows))
    return kept


def _is_connected(q: LeftQuasigroup) -> bool:
    from .perm import orbit_partition

    return orbit_partition(q.lmlt).num_blocks == 1


# the multipotent ternary term ----------------------------------------------------------


def maltsev_check(q: LeftQuasigroup) -> list[list[list[int]]] | None:
    """For an m-multipotent table, the ternary term built from the squaring
    chain; returns the full n^3 value table after asserting both defining
    identities, or None when the table is not multipotent.

    The translation chain for argument x runs L_{s^{m-1}(x)} ... L_{s(x)} L_x,
    so that the chain applied to x lands on the unique idempotent; shorter
    chains provably fail the identities on exactly-m-multipotent tables.
    """
    m = q.multipotency_class
    if m is None:
        return None
    s = q.squaring_map

    def chain(x: int) -> Perm:
        out = q.rows[x]
        point = x
        for _ in range(m - 1):
            point = s[point]
            out = q.rows[point] * out
        return out

    chains = [chain(x) for x in range(q.n)]
    table = [[[0] * q.n for _ in range(q.n)] for _ in range(q.n)]
    for x in range(q.n):
        inv_x = chains[x].inv()
        for y in range(q.n):
            comp = inv_x * chains[y]
            for z in range(q.n):
                table[x][y][z] = comp[z]
    for x in range(q.n):
        for y in range(q.n):
            if table[x][y][y] != x:
                raise MaltsevIdentityFails(
                    f"m({x},{y},{y}) = {table[x][y][y]} != {x}")
            if table[y][y][x] != x:
                raise MaltsevIdentityFails(
                    f"m({y},{y},{x}) = {table[y][y][x]} != {x}")
    return table


# translation-word search ------------------------------------------------------------------

X, XI, Y, YI = 1, -1, 2, -2
LETTER_NAMES = {X: "x", XI: "x^-1", Y: "y", YI: "y^-1"}


@dataclass(frozen=True)
class SpellingWitness:
    """Two group words in the row maps of the two arguments: the first
    evaluates every L_{x*y}, the second every L_{x\\y}."""

    wplus: tuple[int, ...]
    wminus: tuple[int, ...]

    def render(self) -> str:
        def fmt(word):
            return " ".join(LETTER_NAMES[l] for l in word) if word else "e"

        return f"L_(x*y) = {fmt(self.wplus)};  L_(x\\y) = {fmt(self.wminus)}"


def evaluate_word(word: Sequence[int], lx: Perm, ly: Perm) -> Perm:
    """Compose the word left-to-right as written (rightmost letter acts
    first)."""
    table = {X: lx, XI: lx.inv(), Y: ly, YI: ly.inv()}
    out = Perm.identity(lx.degree)
    for letter in word:
        out = out * table[letter]
    return out


def word_matches(q: LeftQuasigroup, word: Sequence[int], side: str) -> bool:
    """Does the word reproduce every L_{x*y} (side '+') or L_{x\\y} ('-')?"""
    for x in range(q.n):
        lx = q.rows[x]
        for y in range(q.n):
            goal = q.rows[q.mul(x, y)] if side == "+" else q.rows[q.ldiv(x, y)]
            if evaluate_word(word, lx, q.rows[y]) != goal:
                return False
    return True


def spelling_search(q: LeftQuasigroup, max_len: int = 8) -> SpellingWitness | None:
    """Breadth-first search over reduced two-letter group words for a pair of
    words reproducing both translation families.

    Returns the witness with the first word found on each side, or None when
    either side has no witness of length <= max_len (absence of a short
    witness refutes nothing).
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    pairs = [(q.rows[x], q.rows[y]) for x in range(q.n) for y in range(q.n)]
    plus_targets = [q.rows[q.mul(x, y)] for x in range(q.n) for y in range(q.n)]
    minus_targets = [q.rows[q.ldiv(x, y)] for x in range(q.n) for y in range(q.n)]
    letters = (X, Y, XI, YI)
    letter_perms = [
        {X: lx, Y: ly, XI: lx.inv(), YI: ly.inv()} for lx, ly in pairs]

    frontier: list[tuple[tuple[int, ...], list[Perm]]] = [
        ((), [Perm.identity(q.n)] * len(pairs))]
    wplus: tuple[int, ...] | None = None
    wminus: tuple[int, ...] | None = None
    for _ in range(max_len):
        fresh = []
        for word, evals in frontier:
            for letter in letters:
                if word and word[-1] == -letter:
                    continue
                new_word = word + (letter,)
                new_evals = [e * lp[letter] for e, lp in zip(evals, letter_perms)]
                if wplus is None and new_evals == plus_targets:
                    wplus = new_word
                if wminus is None and new_evals == minus_targets:
                    wminus = new_word
                if wplus is not None and wminus is not None:
                    return SpellingWitness(wplus, wminus)
                fresh.append((new_word, new_evals))
        frontier = fresh
    if wplus is not None and wminus is not None:
        return SpellingWitness(wplus, wminus)
    return None


def monogenic_by_translations(q: LeftQuasigroup) -> bool:
    """Is every one-generated subalgebra just the translation orbit
    {L_a^k(a)} of its generator?"""
    for a in range(q.n):
        orbit = {a}
        cur = q.mul(a, a)
        while cur not in orbit:
            orbit.add(cur)
            cur = q.mul(a, cur)
        # powers of a single permutation cycle back, so the forward orbit
        # under L_a already covers all integer exponents applied to a
        if subalgebra_generate(q, {a}) != frozenset(orbit):
            return False
    return True


def coset_relations_are_congruences(q: LeftQuasigroup) -> bool:
    """Is the coset relation of every normal subgroup of the row group a
    congruence?  (Holds whenever a translation-word witness exists.)"""
    return all(is_congruence(q, c_relation(q, n_grp))
               for n_grp in normal_subgroups(q.lmlt))
