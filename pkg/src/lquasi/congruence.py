"""Congruences, relative displacement groups, and the two Galois connections.

A congruence is an equivalence relation compatible with multiplication and
left division.  The direct compatibility test is the primary definition;
the group-theoretic criterion (blocks form a block system for the row group,
and the relative displacement group sits inside the relative kernel) is
computed independently and the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import LeftQuasigroup, cayley_kernel, is_faithful, squared_image
from .errors import InternalAssertion, NotACongruence, NotAdmissible, OrderTooLarge
from .partition import Partition, all_partitions
from .perm import (
    Perm,
    PermGroup,
    center,
    group_from_generators,
    normal_closure,
    normal_subgroups,
    orbit_partition,
)

CON_LATTICE_CAP = 8


# direct and group-side congruence tests ---------------------------------------


def _compatible(q: LeftQuasigroup, alpha: Partition) -> bool:
    """Direct unary-translation compatibility: for a ~ b, translating both on
    either side by any element keeps them related."""
    bid = alpha.block_id
    rows, ld = q.rows, q.ldiv_rows
    for a, b in alpha.related_pairs():
        if a > b:
            continue
        ra, rb, la, lb = rows[a], rows[b], ld[a], ld[b]
        for c in range(q.n):
            if bid[ra[c]] != bid[rb[c]] or bid[la[c]] != bid[lb[c]]:
                return False
            rc, lc = rows[c], ld[c]
            if bid[rc[a]] != bid[rc[b]] or bid[lc[a]] != bid[lc[b]]:
                return False
    return True


def blocks_are_blocks(q: LeftQuasigroup, alpha: Partition) -> bool:
    """Do the rows (and their inverses) map every block onto a block?"""
    bid = alpha.block_id
    for p in list(q.rows) + list(q.ldiv_rows):
        for block in alpha.blocks():
            target = bid[p[block[0]]]
            if any(bid[p[x]] != target for x in block[1:]):
                return False
    return True


def dis_relative(q: LeftQuasigroup, alpha: Partition) -> PermGroup:
    """Displacement group relative to an equivalence: the normal closure in
    the row group of all products L_a L_b^{-1} over related pairs."""
    seeds = sorted({q.rows[a] * q.ldiv_rows[b] for a, b in alpha.related_pairs()})
    if not seeds:
        return PermGroup.trivial(q.n)
    return normal_closure(q.lmlt, seeds)


def dis_kernel(q: LeftQuasigroup, alpha: Partition) -> PermGroup:
    """Elements of the displacement group that move every point inside its
    own block."""
    bid = alpha.block_id
    return PermGroup.from_elements(
        q.n, (h for h in q.dis if all(bid[h[x]] == bid[x] for x in range(q.n))))


def lmlt_kernel(q: LeftQuasigroup, alpha: Partition) -> PermGroup:
    """Kernel of the induced action on blocks; needs alpha to be a congruence
    for the quotient row group to make sense."""
    if not is_congruence(q, alpha):
        raise NotACongruence("block action kernel needs a congruence")
    bid = alpha.block_id
    return PermGroup.from_elements(
        q.n, (h for h in q.lmlt if all(bid[h[x]] == bid[x] for x in range(q.n))))


def is_congruence(q: LeftQuasigroup, alpha: Partition, cross_check: bool = True) -> bool:
    """Direct compatibility; with cross_check (default), the independent
    group-side criterion is evaluated too and any disagreement raises."""
    cached = q.__dict__.setdefault("_congruence_cache", {})
    got = cached.get(alpha)
    if got is None:
        got = _compatible(q, alpha)
        cached[alpha] = got
    if cross_check:
        by_groups = blocks_are_blocks(q, alpha) and dis_relative(
            q, alpha).is_subgroup_of(dis_kernel(q, alpha))
        if by_groups != got:
            raise InternalAssertion(
                f"congruence criteria disagree on {alpha}: "
                f"direct={got} group-side={by_groups}")
    return got


def generated_congruence(q: LeftQuasigroup, pairs) -> Partition:
    """Smallest congruence relating all given pairs: union-find closure under
    the four unary translations."""
    parent = list(range(q.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(a, b) for a, b in pairs]
    while queue:
        a, b = queue.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[rb] = ra
        for c in range(q.n):
            queue.append((q.mul(c, a), q.mul(c, b)))
            queue.append((q.ldiv(c, a), q.ldiv(c, b)))
            queue.append((q.mul(a, c), q.mul(b, c)))
            queue.append((q.ldiv(a, c), q.ldiv(b, c)))
    return Partition([find(x) for x in range(q.n)])


@dataclass(frozen=True)
class CongruenceLattice:
    congruences: tuple[Partition, ...]

    def __iter__(self):
        return iter(self.congruences)

    def __len__(self) -> int:
        return len(self.congruences)

    def __contains__(self, alpha: Partition) -> bool:
        return alpha in set(self.congruences)

    @property
    def zero(self) -> Partition:
        return self.congruences[0]

    @property
    def one(self) -> Partition:
        return self.congruences[-1]


def congruence_lattice(q: LeftQuasigroup) -> CongruenceLattice:
    """All congruences: principal ones closed under join, then meet-closure
    verified.  Sorted coarse-last by (number of blocks desc, block ids)."""
    if q.n > CON_LATTICE_CAP:
        raise OrderTooLarge(f"congruence lattice capped at order {CON_LATTICE_CAP}")
    cached = q.__dict__.get("_con_lattice")
    if cached is not None:
        return cached
    found: set[Partition] = {Partition.singletons(q.n)}
    frontier: list[Partition] = []
    for a, b in combinations(range(q.n), 2):
        p = generated_congruence(q, [(a, b)])
        if p not in found:
            found.add(p)
            frontier.append(p)
    while frontier:
        fresh = []
        for p in frontier:
            for other in list(found):
                j = p.join(other)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
        frontier = fresh
    for a, b in combinations(sorted(found, key=lambda p: p.block_id), 2):
        m = a.meet(b)
        if m not in found:
            raise InternalAssertion("congruence set is not meet-closed")
    lattice = CongruenceLattice(tuple(
        sorted(found, key=lambda p: (-p.num_blocks, p.block_id))))
    for alpha in lattice:
        if not is_congruence(q, alpha, cross_check=False):
            raise InternalAssertion(f"lattice member {alpha} fails compatibility")
    q.__dict__["_con_lattice"] = lattice
    return lattice


def quotient(q: LeftQuasigroup, alpha: Partition, _checked: bool = False) -> LeftQuasigroup:
    """Table on the blocks of a congruence; the natural map is asserted to be
    a homomorphism."""
    if not _checked and not is_congruence(q, alpha, cross_check=False):
        raise NotACongruence(f"{alpha} is not a congruence")
    bid = alpha.block_id
    reps = [block[0] for block in alpha.blocks()]
    table = [[bid[q.mul(a, b)] for b in reps] for a in reps]
    out = LeftQuasigroup(table)
    if any(out.mul(bid[a], bid[b]) != bid[q.mul(a, b)]
           for a in range(q.n) for b in range(q.n)):
        raise InternalAssertion("natural map onto the quotient is not a homomorphism")
    return out


def relative_groups(q: LeftQuasigroup, alpha: Partition) -> tuple[PermGroup, PermGroup, PermGroup]:
    """(relative displacement group, its kernel-side counterpart, block-action
    kernel of the full row group) for a congruence.

    On semimedial tables two extra identities are asserted: the relative
    displacement group is already generated by the products L_a^{-1} L_b over
    related pairs, and it absorbs commutators with the block-action kernel.
    """
    dis_a = dis_relative(q, alpha)
    dis_k = dis_kernel(q, alpha)
    lm_k = lmlt_kernel(q, alpha)  # raises NotACongruence when needed
    if not dis_a.is_subgroup_of(dis_k):
        raise InternalAssertion("relative displacement group exceeds its kernel")
    if q.is_semimedial():
        seeds = sorted({q.ldiv_rows[a] * q.rows[b] for a, b in alpha.related_pairs()})
        plain = (group_from_generators(seeds, degree=q.n) if seeds
                 else PermGroup.trivial(q.n))
        if plain.elements != dis_a.elements:
            raise InternalAssertion(
                "semimedial relative displacement group disagrees with its "
                "unconjugated generating set")
        for g in q.lmlt.generators:
            gi = g.inv()
            for h in lm_k.elements:
                if gi * h.inv() * g * h not in dis_a.elements:
                    raise InternalAssertion(
                        "commutator of row group with block kernel escapes the "
                        "relative displacement group")
    return dis_a, dis_k, lm_k


def orbit_congruence(q: LeftQuasigroup, n_grp: PermGroup,
                     permute_against: list[Partition] | None = None) -> Partition:
    """Orbit partition of an admissible subgroup, asserted to be a congruence.

    Preconditions checked: the row group normalizes the subgroup and the
    orbit partition's relative displacement group sits inside it.  With
    `permute_against`, the orbit relation is asserted to permute with each
    given congruence (composition in both orders agrees).
    """
    if not n_grp.is_normal_in(q.lmlt):
        raise NotAdmissible("row group does not normalize the subgroup")
    orbits = orbit_partition(n_grp)
    if not dis_relative(q, orbits).is_subgroup_of(n_grp):
        raise NotAdmissible("orbit displacement group escapes the subgroup")
    if not is_congruence(q, orbits):
        raise InternalAssertion("orbit partition of an admissible subgroup "
                                "must be a congruence")
    if permute_against:
        for alpha in permute_against:
            left = _compose(orbits, alpha, q.n)
            right = _compose(alpha, orbits, q.n)
            if left != right:
                raise InternalAssertion("orbit congruence fails to permute "
                                        f"with {alpha}")
    return orbits


def _compose(a: Partition, b: Partition, n: int) -> frozenset[tuple[int, int]]:
    """Relation composition a o b as a set of pairs."""
    out = set()
    for x in range(n):
        for y in a.block_of(x):
            out.update((x, z) for z in b.block_of(y))
    return frozenset(out)


def c_relation(q: LeftQuasigroup, n_grp: PermGroup) -> Partition:
    """Relate a, b whenever L_a L_b^{-1} lies in the subgroup.

    Always an equivalence; asserted to be a congruence when the table is
    semimedial and the subgroup is admissible.
    """
    bid: list[int] = []
    reps: list[int] = []
    for a in range(q.n):
        for i, r in enumerate(reps):
            if q.rows[a] * q.ldiv_rows[r] in n_grp.elements:
                bid.append(i)
                break
        else:
            reps.append(a)
            bid.append(len(reps) - 1)
    rel = Partition(bid)
    if q.is_semimedial() and n_grp.is_normal_in(q.lmlt) and \
            dis_relative(q, orbit_partition(n_grp)).is_subgroup_of(n_grp):
        if not is_congruence(q, rel):
            raise InternalAssertion(
                "coset relation of an admissible subgroup of a semimedial "
                "table must be a congruence")
    return rel


def norm_admissible(q: LeftQuasigroup) -> list[PermGroup]:
    """All normal subgroups N of the row group whose orbit displacement group
    stays inside N (equivalently: orbit partition refines the coset relation).

    Cross-checks asserted: the result is closed under join and meet; on
    semimedial tables membership coincides with closure under the squaring
    substitution; on racks every normal subgroup qualifies.
    """
    lm = q.lmlt
    admissible = []
    for n_grp in normal_subgroups(lm):
        if dis_relative(q, orbit_partition(n_grp)).is_subgroup_of(n_grp):
            admissible.append(n_grp)
    keyed = {g.elements for g in admissible}
    for a, b in combinations(admissible, 2):
        join = group_from_generators(
            tuple(a.generators) + tuple(b.generators), degree=q.n) \
            if (a.generators or b.generators) else PermGroup.trivial(q.n)
        if join.elements not in keyed or (a.elements & b.elements) not in keyed:
            raise InternalAssertion("admissible subgroups are not a sublattice")
    if q.is_semimedial():
        for n_grp in normal_subgroups(lm):
            closed = all(squared_image(q, h) in n_grp.elements
                         for h in n_grp.elements)
            if closed != (n_grp.elements in keyed):
                raise InternalAssertion(
                    "squaring-substitution criterion disagrees with the "
                    "orbit criterion for admissibility")
    if q.is_rack() and len(admissible) != len(normal_subgroups(lm)):
        raise InternalAssertion("every normal subgroup of a rack's row group "
                                "must be admissible")
    return admissible


# Galois connection report -------------------------------------------------------


@dataclass
class GaloisReport:
    ok: bool = True
    failures: list[str] = field(default_factory=list)
    checked_orbit_pairs: int = 0
    checked_coset_pairs: int = 0
    checked_faithful: int = 0

    def fail(self, msg: str) -> None:
        self.ok = False
        self.failures.append(msg)


def galois_verify(q: LeftQuasigroup) -> GaloisReport:
    """Verify the orbit-side and coset-side Galois connections on one table.

    (a) For admissible N inside the displacement group: N <= kernel(alpha)
        iff the orbit partition of N refines alpha.
    (b) On semimedial tables, for every admissible N: the relative
        displacement group of alpha sits in N iff alpha refines the coset
        relation of N.
    (c) The quotient by alpha is faithful iff alpha equals the coset relation
        of its own kernel group.
    (d) Monotonicity of all four assignments.
    """
    report = GaloisReport()
    con = list(congruence_lattice(q))
    norm = norm_admissible(q)
    norm_in_dis = [n for n in norm if n.is_subgroup_of(q.dis)]
    kernels = {alpha: dis_kernel(q, alpha) for alpha in con}
    orbits = {n.elements: orbit_partition(n) for n in norm}
    semi = q.is_semimedial()
    cosets = {n.elements: c_relation(q, n) for n in norm} if semi else {}

    for alpha in con:
        for n_grp in norm_in_dis:
            lhs = n_grp.is_subgroup_of(kernels[alpha])
            rhs = orbits[n_grp.elements].refines(alpha)
            report.checked_orbit_pairs += 1
            if lhs != rhs:
                report.fail(f"orbit connection fails at alpha={alpha}, "
                            f"|N|={n_grp.order}: kernel-side={lhs} orbit-side={rhs}")
    if semi:
        for alpha in con:
            d_alpha = dis_relative(q, alpha)
            for n_grp in norm:
                lhs = d_alpha.is_subgroup_of(n_grp)
                rhs = alpha.refines(cosets[n_grp.elements])
                report.checked_coset_pairs += 1
                if lhs != rhs:
                    report.fail(f"coset connection fails at alpha={alpha}, "
                                f"|N|={n_grp.order}")
    for alpha in con:
        faithful = is_faithful(quotient(q, alpha, _checked=True))
        fixed = c_relation(q, kernels[alpha]) == alpha
        report.checked_faithful += 1
        if faithful != fixed:
            report.fail(f"faithful-quotient characterization fails at {alpha}")
    for a, b in combinations(con, 2):
        lo, hi = (a, b) if a.refines(b) else (b, a)
        if not lo.refines(hi):
            continue
        if not dis_relative(q, lo).is_subgroup_of(dis_relative(q, hi)):
            report.fail("relative displacement group is not monotone")
        if not kernels[lo].is_subgroup_of(kernels[hi]):
            report.fail("relative kernel is not monotone")
    for a, b in combinations(norm, 2):
        lo, hi = (a, b) if a.is_subgroup_of(b) else (b, a)
        if not lo.is_subgroup_of(hi):
            continue
        if not orbits[lo.elements].refines(orbits[hi.elements]):
            report.fail("orbit partition is not monotone")
        if semi and not cosets[lo.elements].refines(cosets[hi.elements]):
            report.fail("coset relation is not monotone")
    return report


def stabilizer_relation(q: LeftQuasigroup, n_grp: PermGroup) -> Partition:
    """Points grouped by equal stabilizers inside the given subgroup."""
    from .perm import stabilizer_partition

    return stabilizer_partition(n_grp)
