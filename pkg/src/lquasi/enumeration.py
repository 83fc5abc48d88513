"""Exhaustive generation of small tables, with identity-aware pruning.

Two independent strategies exist on purpose: the row backtracker prunes with
pointwise identity instances over decided rows, while the conjugation
enumerator (racks and quandles only) works at the level of whole rows using
the conjugation form of self-distributivity.  Their class counts must agree;
the suites check that they do.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterator, Sequence

from .core import LeftQuasigroup, _iso_backtrack
from .errors import OrderTooLarge
from .perm import Perm

ALL_CLASS_CAP = 4
CONSTRAINED_CAP = 6
DEDUPE_CANONICAL_CAP = 6
DEDUPE_CAP = 10

CLASS_NAMES = ("all", "rack", "quandle", "semimedial", "medial",
               "2-divisible-semimedial", "latin")


@dataclass(frozen=True)
class EnumSpec:
    n: int
    klass: str = "all"
    up_to_iso: bool = False
    limit: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be at least 1")
        if self.limit is not None and self.limit <= 0:
            raise ValueError("limit must be positive")
        if self.klass not in CLASS_NAMES:
            raise ValueError(f"unknown class {self.klass!r}")


# partial-table checkers (rows 0..k decided) -----------------------------------


def _check_latin(rows: list, n: int) -> bool:
    k = len(rows)
    for c in range(n):
        col = [rows[i][c] for i in range(k)]
        if len(set(col)) != k:
            return False
    return True


def _check_rack(rows: list, n: int) -> bool:
    k = len(rows)
    for x in range(k):
        rx = rows[x]
        for y in range(k):
            v = rx[y]
            if v >= k:
                continue
            ry, rv = rows[y], rows[v]
            if any(rx[ry[z]] != rv[rx[z]] for z in range(n)):
                return False
    return True


def _check_quandle(rows: list, n: int) -> bool:
    k = len(rows)
    if rows[k - 1][k - 1] != k - 1:
        return False
    return _check_rack(rows, n)


def _check_sm1(rows: list, n: int) -> bool:
    k = len(rows)
    for x in range(k):
        rx = rows[x]
        sx = rx[x]
        if sx >= k:
            continue
        rsx = rows[sx]
        for y in range(k):
            v = rx[y]
            if v >= k:
                continue
            ry, rv = rows[y], rows[v]
            if any(rsx[ry[z]] != rv[rx[z]] for z in range(n)):
                return False
    return True


def _check_2ds(rows: list, n: int) -> bool:
    k = len(rows)
    diag = [rows[i][i] for i in range(k)]
    if len(set(diag)) != k:
        return False
    return _check_sm1(rows, n)


def _check_medial(rows: list, n: int) -> bool:
    k = len(rows)
    for x in range(k):
        rx = rows[x]
        for y in range(k):
            u1 = rx[y]
            if u1 >= k:
                continue
            for z in range(y, k):
                u2 = rx[z]
                if u2 >= k:
                    continue
                # L_{x*y} L_z == L_{x*z} L_y pointwise
                r1, r2, ry, rz = rows[u1], rows[u2], rows[y], rows[z]
                if any(r1[rz[w]] != r2[ry[w]] for w in range(n)):
                    return False
    return True


_CHECKERS: dict[str, Callable[[list, int], bool] | None] = {
    "all": None,
    "latin": _check_latin,
    "rack": _check_rack,
    "quandle": _check_quandle,
    "semimedial": _check_sm1,
    "2-divisible-semimedial": _check_2ds,
    "medial": _check_medial,
}


def backtrack_rows(n: int, checkers: Sequence[Callable[[list, int], bool]],
                   limit: int | None = None) -> Iterator[LeftQuasigroup]:
    """Row-by-row generation over permutations in lexicographic order,
    pruning with every checker after each placed row."""
    perms = [list(p) for p in permutations(range(n))]
    rows: list = []
    emitted = 0

    def rec() -> Iterator[LeftQuasigroup]:
        nonlocal emitted
        if limit is not None and emitted >= limit:
            return
        if len(rows) == n:
            emitted += 1
            yield LeftQuasigroup([list(r) for r in rows])
            return
        for p in perms:
            rows.append(p)
            if all(chk(rows, n) for chk in checkers):
                yield from rec()
            rows.pop()
            if limit is not None and emitted >= limit:
                return

    yield from rec()


def backtrack_rows_conjugation_forced(
        n: int, extra_checkers: Sequence[Callable[[dict, int], bool]] = (),
        limit: int | None = None) -> Iterator[LeftQuasigroup]:
    """Row generation for tables satisfying the conjugation form of the
    semimedial identity, L_{x*y} = L_{x*x} L_y L_x^-1.

    Whenever the rows of x, y and x*x are decided, the row of x*y is fully
    determined, so such rows are recorded as forced and never branched over.
    Rows are placed in a dynamic order (forced rows first, then diagonal
    targets of decided rows, which is what unlocks new forcings); the output
    is sorted into table-lexicographic order at the end.  Extra checkers see
    the partial table as an index -> row dict.
    """
    perms = [tuple(p) for p in permutations(range(n))]
    decided: dict[int, tuple[int, ...]] = {}
    forced: dict[int, tuple[int, ...]] = {}
    out: list[LeftQuasigroup] = []

    def conj_target(x: int, y: int) -> tuple[int, ...]:
        rx, ry, rsx = decided[x], decided[y], decided[decided[x][x]]
        rxi = [0] * n
        for i, v in enumerate(rx):
            rxi[v] = i
        return tuple(rsx[ry[rxi[w]]] for w in range(n))

    def register(v: int, target: tuple[int, ...], added: list[int]) -> bool:
        if v in decided:
            return decided[v] == target
        prev = forced.get(v)
        if prev is None:
            forced[v] = target
            added.append(v)
            return True
        return prev == target

    def derive_after(k: int, added: list[int]) -> bool:
        """Process constraint instances that the newly decided row k enables."""
        ys = list(decided)
        if decided[k][k] in decided:
            for y in ys:
                if not register(decided[k][y], conj_target(k, y), added):
                    return False
        for x in ys:
            if x != k and decided[x][x] in decided:
                if not register(decided[x][k], conj_target(x, k), added):
                    return False
            if x != k and decided[x][x] == k:
                for y in ys:
                    if not register(decided[x][y], conj_target(x, y), added):
                        return False
        return True

    def choose() -> int:
        if forced:
            return min(forced)
        for x in sorted(decided):
            sx = decided[x][x]
            if sx not in decided:
                return sx
        return min(i for i in range(n) if i not in decided)

    def rec() -> None:
        if limit is not None and len(out) >= limit:
            return
        if len(decided) == n:
            out.append(LeftQuasigroup([list(decided[i]) for i in range(n)]))
            return
        k = choose()
        if k in forced:
            pinned = forced.pop(k)  # composition of bijections, always a row
            candidates: tuple = (pinned,)
        else:
            pinned = None
            candidates = perms
        for p in candidates:
            decided[k] = p
            added: list[int] = []
            if derive_after(k, added) and \
                    all(chk(decided, n) for chk in extra_checkers):
                rec()
            for v in added:
                del forced[v]
            del decided[k]
            if limit is not None and len(out) >= limit:
                break
        if pinned is not None:
            forced[k] = pinned

    rec()
    out.sort(key=lambda t: t.rows)
    yield from out


def _partial_latin(decided: dict, n: int) -> bool:
    for c in range(n):
        col = [r[c] for r in decided.values()]
        if len(set(col)) != len(col):
            return False
    return True


def _partial_distinct_diagonal(decided: dict, n: int) -> bool:
    diag = [r[i] for i, r in decided.items()]
    return len(set(diag)) == len(diag)


def _partial_medial(decided: dict, n: int) -> bool:
    for x, rx in decided.items():
        for y in decided:
            u1 = rx[y]
            if u1 not in decided:
                continue
            r1, ry = decided[u1], decided[y]
            for z in decided:
                u2 = rx[z]
                if u2 not in decided or z < y:
                    continue
                r2, rz = decided[u2], decided[z]
                if any(r1[rz[w]] != r2[ry[w]] for w in range(n)):
                    return False
    return True


_FORCED_CLASSES = {
    "semimedial": (),
    "2-divisible-semimedial": (_partial_distinct_diagonal,),
    "medial": (_partial_medial,),
}


def enumerate_tables(spec: EnumSpec) -> Iterator[LeftQuasigroup]:
    """Deterministic stream of all tables of the requested order and class.

    Classes implying the semimedial law run through the row-forcing
    backtracker; the rest use plain pointwise pruning.
    """
    cap = ALL_CLASS_CAP if spec.klass == "all" else CONSTRAINED_CAP
    if spec.n > cap:
        raise OrderTooLarge(
            f"enumeration of class {spec.klass!r} capped at order {cap}")
    inner_limit = None if spec.up_to_iso else spec.limit
    if spec.klass in _FORCED_CLASSES:
        stream = backtrack_rows_conjugation_forced(
            spec.n, _FORCED_CLASSES[spec.klass], inner_limit)
    else:
        chk = _CHECKERS[spec.klass]
        stream = backtrack_rows(spec.n, [chk] if chk else [], inner_limit)
    if not spec.up_to_iso:
        yield from stream
        return
    reps = dedupe_up_to_iso(list(stream))
    if spec.limit is not None:
        reps = reps[:spec.limit]
    yield from reps


def enumerate_tables_plain(spec: EnumSpec) -> Iterator[LeftQuasigroup]:
    """The pointwise-pruning strategy for any class; slower than
    enumerate_tables on semimedial classes but fully independent of the
    row-forcing logic (used for cross-validation)."""
    cap = ALL_CLASS_CAP if spec.klass == "all" else CONSTRAINED_CAP
    if spec.n > cap:
        raise OrderTooLarge(
            f"enumeration of class {spec.klass!r} capped at order {cap}")
    chk = _CHECKERS[spec.klass]
    yield from backtrack_rows(spec.n, [chk] if chk else [], spec.limit)


def enumerate_racklike_by_conjugation(n: int, idempotent: bool,
                                      ) -> Iterator[LeftQuasigroup]:
    """Second, independent generator for racks (and quandles when
    `idempotent`): rows are chosen so that the row of x*y equals the
    conjugate L_x L_y L_x^-1 wherever that row is already decided."""
    if n > CONSTRAINED_CAP:
        raise OrderTooLarge(f"conjugation enumeration capped at order {CONSTRAINED_CAP}")
    perms = [Perm(p) for p in permutations(range(n))]
    rows: list[Perm] = []

    def consistent() -> bool:
        k = len(rows)
        for x in range(k):
            if idempotent and rows[x][x] != x:
                return False
            for y in range(k):
                v = rows[x][y]
                if v < k and rows[v] != rows[x] * rows[y] * rows[x].inv():
                    return False
        return True

    def rec() -> Iterator[LeftQuasigroup]:
        if len(rows) == n:
            yield LeftQuasigroup([list(r) for r in rows])
            return
        for p in perms:
            rows.append(p)
            if consistent():
                yield from rec()
            rows.pop()

    yield from rec()


# isomorphism dedup ----------------------------------------------------------------


def relabel_table(q: LeftQuasigroup, p: Perm) -> tuple[int, ...]:
    """Flattened table of the isomorphic copy through p."""
    n = q.n
    pi = p.inv()
    return tuple(p[q.mul(pi[a], pi[b])] for a in range(n) for b in range(n))


def canonical_form(q: LeftQuasigroup) -> tuple[int, ...]:
    """Lexicographically least flattened table over all relabelings."""
    return min(relabel_table(q, Perm(p)) for p in permutations(range(q.n)))


def _from_flat(flat: Sequence[int], n: int) -> LeftQuasigroup:
    return LeftQuasigroup([list(flat[i * n:(i + 1) * n]) for i in range(n)])


def dedupe_up_to_iso(tables: Sequence[LeftQuasigroup],
                     method: str = "auto") -> list[LeftQuasigroup]:
    """One representative per isomorphism class: the lexicographically least
    table.  `method` is "canonical" (minimum over all relabelings, order <= 6),
    "pairwise" (fingerprint buckets plus backtracking isomorphism tests,
    order <= 10), or "auto"."""
    if not tables:
        return []
    n = tables[0].n
    if any(t.n != n for t in tables):
        raise ValueError("mixed orders in dedupe input")
    if method == "auto":
        method = "canonical" if n <= DEDUPE_CANONICAL_CAP else "pairwise"
    if method == "canonical":
        if n > DEDUPE_CANONICAL_CAP:
            raise OrderTooLarge("canonical form only runs at order <= "
                                f"{DEDUPE_CANONICAL_CAP}")
        forms = {canonical_form(t) for t in tables}
        return [_from_flat(f, n) for f in sorted(forms)]
    if n > DEDUPE_CAP:
        raise OrderTooLarge(f"isomorphism dedup capped at order {DEDUPE_CAP}")
    buckets: dict[tuple, list[LeftQuasigroup]] = {}
    for t in tables:
        key = (tuple(sorted(r.cycle_type() for r in t.rows)),
               len(t.idempotents), len(set(t.rows)))
        group = buckets.setdefault(key, [])
        if not any(_iso_backtrack(t, seen, collect_all=False) for seen in group):
            group.append(t)
    reps = []
    for group in buckets.values():
        for t in group:
            flat = min(relabel_table(t, Perm(p)) for p in permutations(range(n))) \
                if n <= DEDUPE_CANONICAL_CAP else tuple(
                    v for row in t.rows for v in row)
            reps.append(_from_flat(flat, n))
    reps.sort(key=lambda t: t.rows)
    return reps


def count_tables(spec: EnumSpec) -> int:
    return sum(1 for _ in enumerate_tables(spec))
