"""Term-condition commutator, centers, and solvability/nilpotence series.

The generic commutator works on any table: it builds the subalgebra of Q^4
generated by the quadruples (a,a,b,b) over one congruence and (u,v,u,v) over
the other, and grows the smallest congruence delta such that every generated
quadruple with related top row has related bottom row.  Tables whose terms
reduce to left-translation words (semimedial ones qualify) also get the
group-side characterization through relative displacement groups; the two
routes are cross-checked wherever both apply.
"""

from __future__ import annotations

from dataclasses import dataclass

from .congruence import (
    c_relation,
    congruence_lattice,
    dis_relative,
    generated_congruence,
    is_congruence,
    quotient,
)
from .core import LeftQuasigroup
from .errors import (
    CenterAssertionFailed,
    InternalAssertion,
    NoQualifyingDelta,
    OracleDisagreement,
    OrderTooLarge,
)
from .partition import Partition
from .perm import center, is_semiregular, stabilizer_partition

TC_ORDER_CAP = 6


def tc_matrices(q: LeftQuasigroup, alpha: Partition,
                beta: Partition) -> frozenset[tuple[int, int, int, int]]:
    """Closure of the seed quadruples under componentwise * and left division.

    Quadruples read (x11, x12, x21, x22): columns differ by a beta move, rows
    by an alpha move.  Reflexive pairs are seeded too (terms may pin any
    argument to a constant).
    """
    if q.n > TC_ORDER_CAP:
        raise OrderTooLarge(f"matrix generation capped at order {TC_ORDER_CAP}")
    cached = q.__dict__.setdefault("_tc_cache", {})
    key = (alpha, beta)
    got = cached.get(key)
    if got is not None:
        return got
    seeds = {(a, a, b, b) for a in range(q.n) for b in alpha.block_of(a)}
    seeds.update((u, v, u, v) for u in range(q.n) for v in beta.block_of(u))
    elems = set(seeds)
    work = list(seeds)
    mul, ld = q.rows, q.ldiv_rows
    while work:
        e = work.pop()
        e0, e1, e2, e3 = e
        for f in list(elems):
            f0, f1, f2, f3 = f
            for quad in (
                (mul[e0][f0], mul[e1][f1], mul[e2][f2], mul[e3][f3]),
                (mul[f0][e0], mul[f1][e1], mul[f2][e2], mul[f3][e3]),
                (ld[e0][f0], ld[e1][f1], ld[e2][f2], ld[e3][f3]),
                (ld[f0][e0], ld[f1][e1], ld[f2][e2], ld[f3][e3]),
            ):
                if quad not in elems:
                    elems.add(quad)
                    work.append(quad)
    got = frozenset(elems)
    cached[key] = got
    return got


def centralizes(q: LeftQuasigroup, alpha: Partition, beta: Partition,
                delta: Partition) -> bool:
    """The term-condition test: alpha centralizes beta over delta."""
    bid = delta.block_id
    return all(bid[x21] == bid[x22]
               for x11, x12, x21, x22 in tc_matrices(q, alpha, beta)
               if bid[x11] == bid[x12])


def commutator_generic(q: LeftQuasigroup, alpha: Partition, beta: Partition,
                       verify: bool = False) -> Partition:
    """Smallest congruence delta with the term condition, by fixpoint growth.

    With verify=True the result is checked minimal against the whole
    congruence lattice.
    """
    matrices = tc_matrices(q, alpha, beta)
    delta = Partition.singletons(q.n)
    while True:
        bid = delta.block_id
        forced = [(x21, x22) for x11, x12, x21, x22 in matrices
                  if bid[x11] == bid[x12] and bid[x21] != bid[x22]]
        if not forced:
            break
        delta = generated_congruence(
            q, list(delta.related_pairs()) + forced)
    if not centralizes(q, alpha, beta, delta):
        raise InternalAssertion("fixpoint commutator fails its own condition")
    if verify:
        for other in congruence_lattice(q):
            if centralizes(q, alpha, beta, other) and not delta.refines(other):
                raise InternalAssertion(
                    f"fixpoint commutator is not minimal: {other} also works")
    return delta


def _push_to_quotient(joined: Partition, delta: Partition) -> Partition:
    """Image of a congruence containing delta on the blocks of delta."""
    reps = [block[0] for block in delta.blocks()]
    return Partition([joined.block_id[r] for r in reps])


def commutator_lt(q: LeftQuasigroup, alpha: Partition,
                  beta: Partition) -> Partition:
    """Commutator via displacement groups on quotients.

    Scans every congruence delta; delta qualifies when, on Q/delta, the
    relative displacement groups of the images of alpha and beta commute
    elementwise and the image of beta's group acts semiregularly with respect
    to the image of alpha.  Returns the meet of all qualifying deltas and
    asserts the meet itself qualifies.
    """
    con = congruence_lattice(q)

    def qualifies(delta: Partition) -> bool:
        quot = quotient(q, delta, _checked=True)
        a_img = _push_to_quotient(alpha.join(delta), delta)
        b_img = _push_to_quotient(beta.join(delta), delta)
        da, db = dis_relative(quot, a_img), dis_relative(quot, b_img)
        if any(x * y != y * x for x in da.elements for y in db.elements):
            return False
        return is_semiregular(db, a_img)

    qualifying = [d for d in con if qualifies(d)]
    if not qualifying:
        raise NoQualifyingDelta("no congruence qualifies, which is impossible")
    meet = qualifying[0]
    for d in qualifying[1:]:
        meet = meet.meet(d)
    if not qualifies(meet):
        raise InternalAssertion("meet of qualifying congruences does not qualify")
    return meet


def classify_congruence(q: LeftQuasigroup, alpha: Partition) -> tuple[bool, bool]:
    """(abelian, central) flags for a congruence, by the term-condition
    oracle; on semimedial tables the group criterion is computed too and any
    disagreement raises."""
    zero = Partition.singletons(q.n)
    one = Partition.one_block(q.n)
    abelian = commutator_generic(q, alpha, alpha) == zero
    central = commutator_generic(q, alpha, one) == zero
    if q.is_semimedial():
        d_alpha = dis_relative(q, alpha)
        g_abelian = d_alpha.is_abelian() and is_semiregular(d_alpha, alpha)
        g_central = d_alpha.is_subgroup_of(center(q.dis)) and \
            is_semiregular(q.dis, alpha)
        if g_abelian != abelian:
            raise OracleDisagreement(
                f"abelian disagreement at {alpha}: tc={abelian} group={g_abelian}")
        if g_central != central:
            raise OracleDisagreement(
                f"central disagreement at {alpha}: tc={central} group={g_central}")
    return abelian, central


def center_formula(q: LeftQuasigroup) -> Partition:
    """The meet of the coset relation of the displacement group's center with
    the equal-stabilizer relation (not a congruence in general)."""
    return c_relation(q, center(q.dis)).meet(stabilizer_partition(q.dis))


def center_congruence(q: LeftQuasigroup) -> Partition:
    """Largest congruence centralizing the full relation: the join of all
    centralizing congruences, asserted itself centralizing.

    On 2-divisible semimedial tables the closed-form value (coset relation of
    the center of the displacement group, met with equal stabilizers) is
    asserted equal, and the quotient by the center is asserted 2-divisible.
    """
    zero = Partition.singletons(q.n)
    one = Partition.one_block(q.n)
    candidates = [d for d in congruence_lattice(q) if centralizes(q, d, one, zero)]
    out = zero
    for d in candidates:
        out = out.join(d)
    if not centralizes(q, out, one, zero):
        raise CenterAssertionFailed(
            f"join of centralizing congruences is not centralizing: {out}")
    if q.is_semimedial() and q.is_two_divisible:
        formula = center_formula(q)
        if formula != out:
            raise OracleDisagreement(
                f"closed-form center {formula} differs from the oracle {out}")
        if not quotient(q, out, _checked=True).is_two_divisible:
            raise InternalAssertion("center quotient of a 2-divisible table "
                                    "is not 2-divisible")
    return out


@dataclass(frozen=True)
class SeriesReport:
    gamma_lower: tuple[Partition, ...]
    gamma_derived: tuple[Partition, ...]
    zeta: tuple[Partition, ...]
    is_solvable: bool
    is_nilpotent: bool
    solvable_length: int | None
    nilpotent_length: int | None


def series_and_class(q: LeftQuasigroup) -> SeriesReport:
    """Descending commutator series, derived series, and ascending center
    series, with cross-checked solvability/nilpotence verdicts."""
    zero = Partition.singletons(q.n)
    one = Partition.one_block(q.n)

    def descend(step) -> tuple[tuple[Partition, ...], int | None]:
        chain = [one]
        while True:
            nxt = step(chain[-1])
            if nxt == chain[-1]:
                return tuple(chain), (0 if one == zero else None)
            chain.append(nxt)
            if nxt == zero:
                return tuple(chain), len(chain) - 1

    lower, nil_len = descend(lambda cur: commutator_generic(q, cur, one))
    derived, sol_len = descend(lambda cur: commutator_generic(q, cur, cur))

    zeta_chain = [zero]
    while zeta_chain[-1] != one:
        base = zeta_chain[-1]
        quot = quotient(q, base, _checked=True)
        zq = center_congruence(quot)
        lifted = Partition([zq.block_id[base.block_id[a]] for a in range(q.n)])
        if lifted == base:
            break
        zeta_chain.append(lifted)
    zeta_len = len(zeta_chain) - 1 if zeta_chain[-1] == one else None

    if (nil_len is None) != (zeta_len is None) or \
            (nil_len is not None and nil_len != zeta_len):
        raise InternalAssertion(
            f"nilpotence length mismatch: descending={nil_len} ascending={zeta_len}")
    if nil_len is not None and (sol_len is None or sol_len > nil_len):
        raise InternalAssertion("nilpotent table must be solvable at most as slowly")
    return SeriesReport(
        gamma_lower=lower,
        gamma_derived=derived,
        zeta=tuple(zeta_chain),
        is_solvable=sol_len is not None,
        is_nilpotent=nil_len is not None,
        solvable_length=sol_len,
        nilpotent_length=nil_len,
    )
