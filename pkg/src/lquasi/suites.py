"""The property-verification suites behind `verify` and the acceptance tests.

Each criterion function sweeps the relevant instance space exhaustively at
desk scale (vectorized over full table stacks where possible, per-instance
group theory where needed) and returns a CriterionResult with counters and
any failing witnesses.  A shared SuiteContext caches table stacks, flag
masks and per-row-set group data across criteria.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import bulk
from .commutator import (
    center_formula,
    classify_congruence,
    commutator_generic,
    commutator_lt,
    series_and_class,
)
from .congruence import (
    c_relation,
    congruence_lattice,
    dis_kernel,
    dis_relative,
    is_congruence,
    lmlt_kernel,
    norm_admissible,
)
from .constructions import (
    classify_connected_medial_racks,
    from_quandle,
    maltsev_check,
    monogenic_by_translations,
    spelling_search,
    to_quandle,
    word_matches,
)
from .core import (
    LeftQuasigroup,
    cayley_kernel,
    is_faithful,
)
from .enumeration import (
    EnumSpec,
    dedupe_up_to_iso,
    enumerate_racklike_by_conjugation,
    enumerate_tables,
)
from .fixtures import P4
from .partition import Partition, all_partitions
from .perm import (
    Perm,
    PermGroup,
    center,
    group_series,
    normal_closure,
    normal_subgroups,
    orbit_partition,
)

MAX_FAILURES_KEPT = 12


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checked: int
    details: str
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        out = f"[{verdict}] criterion {self.number:2d} {self.name}: {self.details}"
        for f in self.failures[:3]:
            out += f"\n        witness: {f}"
        return out


class SuiteContext:
    """Caches shared by the criteria: table stacks, masks, group data."""

    def __init__(self):
        self._stacks: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._masks: dict[tuple[int, str], np.ndarray] = {}
        self._cong_masks: dict[tuple[int, Partition], np.ndarray] = {}
        self._blocks_masks: dict[tuple[int, Partition], np.ndarray] = {}
        self._enums: dict[tuple[int, str], list[LeftQuasigroup]] = {}
        self._dis_by_rowset: dict[frozenset, PermGroup] = {}
        self._lmlt_by_rowset: dict[frozenset, PermGroup] = {}
        self._normals_by_group: dict[frozenset, list[PermGroup]] = {}
        self._orbits_by_group: dict[frozenset, Partition] = {}
        self._kernel_flags: dict[tuple, bool] = {}

    # table stacks and masks -----------------------------------------------

    def stack(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        if n not in self._stacks:
            tables = bulk.all_tables_array(n)
            self._stacks[n] = (tables, bulk.ldiv_array(tables))
        return self._stacks[n]

    def mask(self, n: int, name: str) -> np.ndarray:
        key = (n, name)
        if key not in self._masks:
            tables, ldiv = self.stack(n)
            fn = {
                "sm1": lambda: bulk.sm1_mask(tables),
                "sm2": lambda: bulk.sm2_mask(tables, ldiv),
                "medial": lambda: bulk.medial_mask(tables),
                "rack": lambda: bulk.rack_mask(tables),
                "latin": lambda: bulk.latin_mask(tables),
                "faithful": lambda: bulk.faithful_mask(tables),
                "idempotent": lambda: bulk.idempotent_mask(tables),
                "2div": lambda: bulk.two_divisible_mask(tables),
                "permutation": lambda: bulk.permutation_mask(tables),
            }[name]
            self._masks[key] = fn()
        return self._masks[key]

    def congruence_mask(self, n: int, alpha: Partition) -> np.ndarray:
        key = (n, alpha)
        if key not in self._cong_masks:
            tables, ldiv = self.stack(n)
            self._cong_masks[key] = bulk.congruence_direct_mask(tables, ldiv, alpha)
        return self._cong_masks[key]

    def blocks_mask(self, n: int, alpha: Partition) -> np.ndarray:
        key = (n, alpha)
        if key not in self._blocks_masks:
            tables, ldiv = self.stack(n)
            self._blocks_masks[key] = bulk.blocks_mask(tables, ldiv, alpha)
        return self._blocks_masks[key]

    def table_at(self, n: int, t: int) -> LeftQuasigroup:
        tables, _ = self.stack(n)
        return LeftQuasigroup(tables[t].tolist())

    # enumerated instance lists ---------------------------------------------

    def instances(self, n: int, klass: str) -> list[LeftQuasigroup]:
        key = (n, klass)
        if key not in self._enums:
            if n <= bulk.BULK_CAP and klass in ("semimedial",
                                                "2-divisible-semimedial"):
                mask = self.mask(n, "sm1")
                if klass == "2-divisible-semimedial":
                    mask = mask & self.mask(n, "2div")
                idx = np.nonzero(mask)[0]
                tables, _ = self.stack(n)
                self._enums[key] = [LeftQuasigroup(tables[t].tolist())
                                    for t in idx]
            else:
                self._enums[key] = list(enumerate_tables(EnumSpec(n, klass)))
        return self._enums[key]

    def iso_reps(self, n: int, klass: str) -> list[LeftQuasigroup]:
        key = (n, klass + "/reps")
        if key not in self._enums:
            self._enums[key] = dedupe_up_to_iso(self.instances(n, klass))
        return self._enums[key]

    # group data keyed by row material ---------------------------------------

    def lmlt_of_rows(self, rows: tuple[Perm, ...]) -> PermGroup:
        key = frozenset(rows)
        got = self._lmlt_by_rowset.get(key)
        if got is None:
            from .perm import group_from_generators

            got = group_from_generators(sorted(key), degree=len(rows[0]))
            self._lmlt_by_rowset[key] = got
        return got

    def dis_of_rows(self, rows: tuple[Perm, ...]) -> PermGroup:
        key = frozenset(rows)
        got = self._dis_by_rowset.get(key)
        if got is None:
            lm = self.lmlt_of_rows(rows)
            seeds = sorted({a * b.inv() for a in key for b in key})
            got = normal_closure(lm, seeds)
            self._dis_by_rowset[key] = got
        return got

    def normals_of(self, grp: PermGroup) -> list[PermGroup]:
        got = self._normals_by_group.get(grp.elements)
        if got is None:
            got = normal_subgroups(grp)
            self._normals_by_group[grp.elements] = got
        return got

    def orbits_of(self, grp: PermGroup) -> Partition:
        got = self._orbits_by_group.get(grp.elements)
        if got is None:
            got = orbit_partition(grp)
            self._orbits_by_group[grp.elements] = got
        return got

    def kernel_contains(self, dis: PermGroup, alpha: Partition,
                        sub: PermGroup) -> bool:
        """Cached: sub <= {h in dis : h moves points inside alpha blocks}."""
        key = (dis.elements, alpha, sub.elements)
        got = self._kernel_flags.get(key)
        if got is None:
            bid = alpha.block_id
            kernel = {h for h in dis.elements
                      if all(bid[h[x]] == bid[x] for x in range(alpha.n))}
            got = sub.elements <= kernel
            # also cache sibling queries against the same kernel
            self._kernel_flags[key] = got
        return got


def _rows_of(arr: np.ndarray) -> tuple[Perm, ...]:
    return tuple(Perm(r) for r in arr.tolist())


def _racks_of_order(ctx: SuiteContext, n: int) -> list[LeftQuasigroup]:
    if n <= bulk.BULK_CAP:
        tables, _ = ctx.stack(n)
        return [LeftQuasigroup(tables[int(t)].tolist())
                for t in np.nonzero(ctx.mask(n, "rack"))[0]]
    return ctx.instances(n, "rack")


# criterion 1 -------------------------------------------------------------------


def criterion_1(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """Direct congruence compatibility agrees with the block-system plus
    displacement-containment criterion, for every table and partition."""
    checked = 0
    failures: list[str] = []
    rng = random.Random(20_240_401)
    for n in range(1, max_n + 1):
        tables, _ = ctx.stack(n)
        zero, one = Partition.singletons(n), Partition.one_block(n)
        for alpha in all_partitions(n):
            direct = ctx.congruence_mask(n, alpha)
            blocks = ctx.blocks_mask(n, alpha)
            checked += len(direct)
            if alpha == zero or alpha == one:
                # the displacement containment holds by definition here
                # (empty seed set, or the full displacement group in itself)
                group_side = blocks
            else:
                group_side = blocks.copy()
                for t in np.nonzero(blocks)[0]:
                    q = ctx.table_at(n, int(t))
                    group_side[t] = dis_relative(q, alpha).is_subgroup_of(
                        dis_kernel(q, alpha))
            bad = np.nonzero(direct != group_side)[0]
            for t in bad[:3]:
                failures.append(f"n={n} table#{int(t)} alpha={alpha}: "
                                f"direct={bool(direct[t])}")
        # spot-check the vectorized direct test against the library predicate
        partitions = list(all_partitions(n))
        for _ in range(min(60, len(tables))):
            t = rng.randrange(len(tables))
            alpha = rng.choice(partitions)
            lib = is_congruence(ctx.table_at(n, t), alpha)
            if lib != bool(ctx.congruence_mask(n, alpha)[t]):
                failures.append(f"vectorized/library disagreement n={n} "
                                f"table#{t} {alpha}")
    return CriterionResult(1, "congruence criterion", not failures, checked,
                           f"{checked} (table, partition) pairs", failures)


# criterion 2 -------------------------------------------------------------------


def criterion_2(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """Orbit-side Galois connection: for every normal subgroup N of the row
    group contained in the displacement group, N lies in the kernel of alpha
    iff the orbits of N refine alpha.

    Both sides of the equivalence depend only on the set of rows (never on
    which point indexes which row), and the partitions checked are a superset
    of every table's congruence lattice, so sweeping all row sets of each
    order covers every (table, congruence, subgroup) instance exhaustively.
    """
    from itertools import combinations_with_replacement, permutations

    checked = 0
    failures: list[str] = []
    for n in range(1, max_n + 1):
        partitions = list(all_partitions(n))
        perms = [Perm(p) for p in permutations(range(n))]
        seen: set[frozenset] = set()
        for combo in combinations_with_replacement(perms, n):
            key = frozenset(combo)
            if key in seen:
                continue
            seen.add(key)
            rows = tuple(combo)
            dis = ctx.dis_of_rows(rows)
            lmlt = ctx.lmlt_of_rows(rows)
            subs = [g for g in ctx.normals_of(lmlt)
                    if g.elements <= dis.elements]
            for alpha in partitions:
                for sub in subs:
                    lhs = ctx.kernel_contains(dis, alpha, sub)
                    rhs = ctx.orbits_of(sub).refines(alpha)
                    checked += 1
                    if lhs != rhs:
                        failures.append(
                            f"n={n} rows={sorted(key)} alpha={alpha} "
                            f"|N|={sub.order}: kernel={lhs} orbits={rhs}")
                        if len(failures) >= MAX_FAILURES_KEPT:
                            return CriterionResult(
                                2, "orbit Galois connection", False, checked,
                                "aborted early", failures)
    return CriterionResult(2, "orbit Galois connection", not failures, checked,
                           f"{checked} (alpha, N) pairs over all row sets",
                           failures)


# criterion 3 -------------------------------------------------------------------


def _order5_sample(ctx: SuiteContext) -> list[LeftQuasigroup]:
    inst = ctx.instances(5, "semimedial")
    sample = inst[::60]
    latin = [q for q in inst if q.is_latin()]
    return sample + latin[::30]


def criterion_3(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """Coset-side Galois connection on semimedial tables: every admissible
    subgroup's coset relation is a congruence, and containment of relative
    displacement groups mirrors refinement into coset relations."""
    checked = 0
    failures: list[str] = []
    instances: list[LeftQuasigroup] = []
    for n in range(2, max_n + 1):
        instances.extend(ctx.instances(n, "semimedial"))
    if max_n >= 4:
        instances.extend(_order5_sample(ctx))
    for q in instances:
        con = list(congruence_lattice(q))
        try:
            norm = norm_admissible(q)
        except Exception as exc:  # noqa: BLE001 - reported as a failure
            failures.append(f"{q!r}: admissible-set computation failed: {exc}")
            continue
        rel_cache = {alpha: dis_relative(q, alpha) for alpha in con}
        for n_grp in norm:
            crel = c_relation(q, n_grp)
            if not is_congruence(q, crel):
                failures.append(f"{q!r}: coset relation of |N|={n_grp.order} "
                                "is not a congruence")
                continue
            for alpha in con:
                lhs = rel_cache[alpha].is_subgroup_of(n_grp)
                rhs = alpha.refines(crel)
                checked += 1
                if lhs != rhs:
                    failures.append(f"{q!r} alpha={alpha} |N|={n_grp.order}: "
                                    f"dis={lhs} coset={rhs}")
    return CriterionResult(3, "coset Galois connection (semimedial)",
                           not failures, checked,
                           f"{len(instances)} instances, {checked} pairs",
                           failures)


# criterion 4 -------------------------------------------------------------------


def criterion_4(ctx: SuiteContext, max_n: int = 5) -> CriterionResult:
    """Every semimedial table has a congruence Cayley kernel whose row-group
    kernel is central."""
    checked = 0
    failures: list[str] = []
    for n in range(2, max_n + 1):
        for q in ctx.instances(n, "semimedial"):
            lam = cayley_kernel(q, check_semimedial=False)
            checked += 1
            if not is_congruence(q, lam):
                failures.append(f"{q!r}: Cayley kernel not a congruence")
                continue
            if not lmlt_kernel(q, lam).is_subgroup_of(center(q.lmlt)):
                failures.append(f"{q!r}: kernel group not central")
    return CriterionResult(4, "Cayley property (semimedial)", not failures,
                           checked, f"{checked} instances", failures)


# criterion 5 -------------------------------------------------------------------


def criterion_5(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """The term-condition commutator and the displacement-group commutator
    agree on every congruence pair of every semimedial table (up to
    isomorphism), as do the abelian/central classifications."""
    checked = 0
    failures: list[str] = []
    for n in range(1, max_n + 1):
        for q in ctx.iso_reps(n, "semimedial"):
            con = list(congruence_lattice(q))
            for alpha, beta in product(con, repeat=2):
                generic = commutator_generic(q, alpha, beta)
                grouped = commutator_lt(q, alpha, beta)
                checked += 1
                if generic != grouped:
                    failures.append(f"{q!r} [{alpha},{beta}]: "
                                    f"tc={generic} group={grouped}")
                if not generic.refines(alpha.meet(beta)):
                    failures.append(f"{q!r} [{alpha},{beta}] exceeds the meet")
            for alpha in con:
                try:
                    classify_congruence(q, alpha)
                except Exception as exc:  # noqa: BLE001
                    failures.append(f"{q!r} classify({alpha}): {exc}")
    return CriterionResult(5, "commutator oracle agreement", not failures,
                           checked, f"{checked} congruence pairs", failures)


# criterion 6 -------------------------------------------------------------------


def criterion_6(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """The 4-element counterexample: the center-and-stabilizer relation
    relates the first two elements yet fails compatibility exactly at
    (0*2, 1*2)."""
    failures: list[str] = []
    alpha = center_formula(P4)
    if not alpha.relates(0, 1):
        failures.append(f"relation {alpha} does not relate 0 and 1")
    if is_congruence(P4, alpha):
        failures.append(f"relation {alpha} unexpectedly is a congruence")
    x, y = P4.mul(0, 2), P4.mul(1, 2)
    if (x, y) != (2, 3) or alpha.relates(x, y):
        failures.append(f"witness pair (0*2, 1*2) = ({x},{y}) is related")
    return CriterionResult(6, "counterexample regression", not failures, 3,
                           f"relation {alpha}, witness pair ({x},{y})",
                           failures)


# criterion 7 -------------------------------------------------------------------


def criterion_7(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """Solvability/nilpotence transfer between a semimedial table and its
    displacement group, both directions, with the stated length bounds."""
    checked = 0
    failures: list[str] = []
    for n in range(1, max_n + 1):
        for q in ctx.iso_reps(n, "semimedial"):
            gs = group_series(q.dis)
            sr = series_and_class(q)
            checked += 1
            if gs.is_nilpotent and not (
                    sr.is_nilpotent
                    and sr.nilpotent_length <= gs.nilpotent_length + 1):
                failures.append(f"{q!r}: group nilpotent({gs.nilpotent_length}) "
                                f"but table {sr.nilpotent_length}")
            if gs.is_solvable and not (
                    sr.is_solvable
                    and sr.solvable_length <= gs.solvable_length + 1):
                failures.append(f"{q!r}: group solvable({gs.solvable_length}) "
                                f"but table {sr.solvable_length}")
            if sr.is_nilpotent and not (
                    gs.is_nilpotent and gs.nilpotent_length <= max(
                        2 * sr.nilpotent_length - 1, 0)):
                failures.append(f"{q!r}: table nilpotent({sr.nilpotent_length}) "
                                f"but group {gs.nilpotent_length}")
            if sr.is_solvable and not (
                    gs.is_solvable and gs.solvable_length <= max(
                        2 * sr.solvable_length - 1, 0)):
                failures.append(f"{q!r}: table solvable({sr.solvable_length}) "
                                f"but group {gs.solvable_length}")
    return CriterionResult(7, "solvability transfer", not failures, checked,
                           f"{checked} instances", failures)


# criterion 8 -------------------------------------------------------------------


def criterion_8(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """Medial characterization and consequences, exhaustively at order <= 4:
    medial iff semimedial with abelian displacement group; medial tables are
    nilpotent of length <= 2; faithful medial tables are latin."""
    checked = 0
    failures: list[str] = []
    for n in range(1, max_n + 1):
        tables, _ = ctx.stack(n)
        medial = ctx.mask(n, "medial")
        sm1 = ctx.mask(n, "sm1")
        latin = ctx.mask(n, "latin")
        faithful = ctx.mask(n, "faithful")
        checked += len(tables)
        stray = np.nonzero(medial & ~sm1)[0]
        if len(stray):
            failures.append(f"n={n}: {len(stray)} medial tables fail the "
                            "semimedial identity")
        for t in np.nonzero(sm1)[0]:
            rows = _rows_of(tables[t])
            abelian = ctx.dis_of_rows(rows).is_abelian()
            if abelian != bool(medial[t]):
                failures.append(f"n={n} table#{int(t)}: medial={bool(medial[t])} "
                                f"but displacement abelian={abelian}")
        bad_latin = np.nonzero(medial & faithful & ~latin)[0]
        if len(bad_latin):
            failures.append(f"n={n}: faithful medial non-latin tables exist")
        for q in ctx.iso_reps(n, "semimedial"):
            if q.is_medial():
                sr = series_and_class(q)
                if not (sr.is_nilpotent and sr.nilpotent_length <= 2):
                    failures.append(f"{q!r}: medial but nilpotent length "
                                    f"{sr.nilpotent_length}")
    return CriterionResult(8, "medial theorems", not failures, checked,
                           f"{checked} tables", failures)


# criterion 9 -------------------------------------------------------------------


def criterion_9(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """The twist correspondence on 2-divisible semimedial tables: exact round
    trips, preserved displacement groups, equal nilpotence lengths, and the
    rack criterion."""
    checked = 0
    failures: list[str] = []
    for n in range(1, max_n + 1):
        for q in ctx.instances(n, "2-divisible-semimedial"):
            checked += 1
            try:
                pair = to_quandle(q)
                back = from_quandle(pair)  # asserts Dis preservation + rack iff
            except Exception as exc:  # noqa: BLE001
                failures.append(f"{q!r}: correspondence failed: {exc}")
                continue
            if back != q:
                failures.append(f"{q!r}: round trip changed the table")
        for q in ctx.iso_reps(n, "2-divisible-semimedial"):
            pair = to_quandle(q)
            if series_and_class(q).nilpotent_length != \
                    series_and_class(pair.quandle).nilpotent_length:
                failures.append(f"{q!r}: nilpotence length changed under the "
                                "correspondence")
    return CriterionResult(9, "quandle correspondence", not failures, checked,
                           f"{checked} round trips", failures)


# criterion 10 ------------------------------------------------------------------


def criterion_10(ctx: SuiteContext, max_n: int = 5) -> CriterionResult:
    """Every 2-divisible semimedial latin table of order <= 5 is solvable."""
    checked = 0
    failures: list[str] = []
    by_order: dict[int, list[LeftQuasigroup]] = {}
    for n in range(1, max_n + 1):
        for q in ctx.instances(n, "2-divisible-semimedial"):
            if q.is_latin():
                by_order.setdefault(q.n, []).append(q)
    for n, group in sorted(by_order.items()):
        for q in dedupe_up_to_iso(group):
            checked += 1
            if not series_and_class(q).is_solvable:
                failures.append(f"{q!r}: latin 2-divisible semimedial but "
                                "not solvable")
    return CriterionResult(10, "solvable quasigroups", not failures, checked,
                           f"{checked} iso classes", failures)


# criterion 11 ------------------------------------------------------------------


def criterion_11(ctx: SuiteContext, max_n: int = 12) -> CriterionResult:
    """The affine-times-shift classifier: set equality with brute enumeration
    up to order 4; construction validity up to order 12."""
    checked = 0
    failures: list[str] = []
    from .core import are_isomorphic

    for n in range(1, min(max_n, 4) + 1):
        constructed = classify_connected_medial_racks(n)
        brute = dedupe_up_to_iso([
            q for q in _racks_of_order(ctx, n)
            if q.is_medial() and orbit_partition(q.lmlt).num_blocks == 1])
        checked += len(brute)
        if len(constructed) != len(brute):
            failures.append(f"n={n}: {len(constructed)} constructed vs "
                            f"{len(brute)} brute classes")
            continue
        for b in brute:
            if not any(are_isomorphic(b, c) for c in constructed):
                failures.append(f"n={n}: brute class {b!r} missing from the "
                                "construction")
    for n in range(5, max_n + 1):
        for q in classify_connected_medial_racks(n):
            checked += 1
            if not (q.is_rack() and q.is_medial()
                    and orbit_partition(q.lmlt).num_blocks == 1):
                failures.append(f"n={n}: constructed table is not a connected "
                                "medial rack")
    return CriterionResult(11, "connected medial rack classification",
                           not failures, checked,
                           f"{checked} classes validated", failures)


# criterion 12 ------------------------------------------------------------------


def criterion_12(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """Multipotent semimedial tables: injective right translations,
    faithfulness, transitive displacement group, and the ternary term
    identities."""
    checked = 0
    failures: list[str] = []
    for n in range(1, max_n + 1):
        for q in ctx.instances(n, "semimedial"):
            if q.multipotency_class is None:
                continue
            checked += 1
            if not q.is_latin():
                failures.append(f"{q!r}: multipotent but a right translation "
                                "is not injective")
            if not is_faithful(q):
                failures.append(f"{q!r}: multipotent but not faithful")
            if ctx.orbits_of(ctx.dis_of_rows(q.rows)).num_blocks != 1:
                failures.append(f"{q!r}: multipotent but displacement group "
                                "not transitive")
            try:
                if maltsev_check(q) is None:
                    failures.append(f"{q!r}: ternary term unexpectedly absent")
            except Exception as exc:  # noqa: BLE001
                failures.append(f"{q!r}: ternary term identities fail: {exc}")
    return CriterionResult(12, "multipotent consequences", not failures,
                           checked, f"{checked} multipotent instances",
                           failures)


# criterion 13 ------------------------------------------------------------------


def criterion_13(ctx: SuiteContext, max_n: int = 4) -> CriterionResult:
    """Racks admit the conjugation word within length 3; found witnesses
    imply translation-orbit subalgebras and congruence coset relations."""
    checked = 0
    failures: list[str] = []
    for n in range(1, max_n + 1):
        for q in _racks_of_order(ctx, n):
            checked += 1
            if not (word_matches(q, (1, 2, -1), "+")
                    and word_matches(q, (-1, 2, 1), "-")):
                failures.append(f"{q!r}: conjugation words fail on a rack")
            witness = spelling_search(q, max_len=3)
            if witness is None:
                failures.append(f"{q!r}: no witness of length <= 3 found")
                continue
            if not monogenic_by_translations(q):
                failures.append(f"{q!r}: one-generated subalgebra exceeds the "
                                "translation orbit")
            for n_grp in ctx.normals_of(ctx.lmlt_of_rows(q.rows)):
                if not is_congruence(q, c_relation(q, n_grp)):
                    failures.append(f"{q!r}: coset relation of a normal "
                                    "subgroup is not a congruence")
                    break
    return CriterionResult(13, "translation-word property", not failures,
                           checked, f"{checked} racks", failures)


# criterion 14 ------------------------------------------------------------------


def criterion_14(ctx: SuiteContext, max_n: int = 5) -> CriterionResult:
    """Enumeration sanity: analytic table counts for the unconstrained class,
    and strategy-independent isomorphism class counts for quandles and
    racks."""
    import math

    checked = 0
    failures: list[str] = []
    for n in range(1, min(max_n, 3) + 1):
        count = sum(1 for _ in enumerate_tables(EnumSpec(n, "all")))
        expected = math.factorial(n) ** n
        checked += 1
        if count != expected:
            failures.append(f"n={n}: {count} tables, expected {expected}")
    for n in range(1, max_n + 1):
        for klass, idem in (("quandle", True), ("rack", False)):
            first = ctx.instances(n, klass)
            second = list(enumerate_racklike_by_conjugation(n, idempotent=idem))
            checked += 1
            if sorted(t.rows for t in first) != sorted(t.rows for t in second):
                failures.append(f"n={n} {klass}: strategies disagree "
                                f"({len(first)} vs {len(second)} tables)")
                continue
            reps_a = dedupe_up_to_iso(first, method="canonical") if first else []
            reps_b = dedupe_up_to_iso(second, method="pairwise") if second else []
            if [t.rows for t in reps_a] != [t.rows for t in reps_b]:
                failures.append(f"n={n} {klass}: dedup methods disagree "
                                f"({len(reps_a)} vs {len(reps_b)} classes)")
    return CriterionResult(14, "enumeration sanity", not failures, checked,
                           f"{checked} count comparisons", failures)


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
    13: criterion_13, 14: criterion_14,
}

SUITE_CRITERIA = {
    "galois": (1, 2, 3),
    "commutator": (5, 6, 7),
    "semimedial": (4, 10, 12),
    "medial": (8,),
    "functor": (9,),
    "classification": (11, 14),
    "spelling": (13,),
    "all": tuple(range(1, 15)),
}

DEFAULT_MAX_N = {1: 4, 2: 4, 3: 4, 4: 5, 5: 4, 6: 4, 7: 4, 8: 4, 9: 4,
                 10: 5, 11: 12, 12: 4, 13: 4, 14: 5}


def run_suite(name: str, max_n: int | None = None,
              ctx: SuiteContext | None = None) -> list[CriterionResult]:
    if name not in SUITE_CRITERIA:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{sorted(SUITE_CRITERIA)}")
    ctx = ctx or SuiteContext()
    results = []
    for num in SUITE_CRITERIA[name]:
        cap = DEFAULT_MAX_N[num] if max_n is None else min(
            max_n, DEFAULT_MAX_N[num])
        results.append(CRITERIA[num](ctx, cap))
    return results
