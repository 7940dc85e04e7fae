"""Sparse exact linear algebra over Q(y) and tensor-index bookkeeping.

Basis vectors of V^(x)n are words over the alphabet {1..m}; a word maps to
its rank in lexicographic order with the leftmost letter most significant,
so for m = 2, n = 2 the order is 11, 12, 21, 22.

Linear maps are sparse: a dict keyed by (row, col) holding nonzero RatFunc
entries.  Subspaces are stored as reduced column echelon bases (unit pivots,
pivot rows strictly increasing, pivot rows zero in every other column); the
echelon form is unique per subspace, so equality of subspaces is equality
of stored data.

Rank and kernel come from sparse Gaussian elimination over the field Q(y).
Pivots are chosen from the sparsest active column, preferring constant
entries in low-fill rows, which keeps the rational-function entries small
on the structured matrices this library produces.  `rank_eval` is the
evaluation fast path: it samples y at distinct rational points, computes
exact ranks of the evaluated matrices, and returns the maximum once enough
points have been seen to exceed every candidate minor's degree bound, which
makes the result deterministically equal to the symbolic rank.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .scalar import (
    RF1,
    RatFunc,
    format_scalar,
    parse_scalar,
    pdivexact,
    peval,
    pgcd,
    pmul,
)


class RankMismatchError(RuntimeError):
    """The evaluation fast path disagreed with exact elimination."""


class NeedMorePointsError(ValueError):
    """Too few usable sample points to certify an evaluated rank."""


# ---------------------------------------------------------------------------
# tensor words


def word_to_index(word, m: int) -> int:
    idx = 0
    for letter in word:
        if not 1 <= letter <= m:
            raise ValueError(f"letter {letter} outside 1..{m}")
        idx = idx * m + (letter - 1)
    return idx


def index_to_word(idx: int, n: int, m: int) -> tuple:
    letters = []
    for _ in range(n):
        idx, rem = divmod(idx, m)
        letters.append(rem + 1)
    return tuple(reversed(letters))


def all_words(n: int, m: int):
    return itertools.product(range(1, m + 1), repeat=n)


# ---------------------------------------------------------------------------
# sparse vectors: dict row -> nonzero RatFunc


def vec_iadd_scaled(acc: dict, coeff: RatFunc, vec: dict) -> dict:
    """acc += coeff * vec, in place, dropping entries that cancel."""
    if coeff.num:
        for r, v in vec.items():
            cur = acc.get(r)
            nv = coeff * v if cur is None else cur + coeff * v
            if nv.num:
                acc[r] = nv
            elif cur is not None:
                del acc[r]
    return acc


def vec_scale(vec: dict, coeff: RatFunc) -> dict:
    if not coeff.num:
        return {}
    if coeff is RF1 or coeff == RF1:
        return dict(vec)
    return {r: coeff * v for r, v in vec.items()}


def vec_kron(a: dict, b: dict, dim_b: int) -> dict:
    """Tensor product of sparse vectors; dim_b is the right ambient size."""
    out = {}
    for ra, va in a.items():
        base = ra * dim_b
        for rb, vb in b.items():
            out[base + rb] = va * vb
    return out


# ---------------------------------------------------------------------------
# linear maps


class LinMap:
    """A sparse matrix over Q(y) acting on column vectors."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict):
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinMap":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "LinMap":
        return cls(n, n, {(i, i): RF1 for i in range(n)})

    @classmethod
    def from_entries(cls, rows: int, cols: int, items) -> "LinMap":
        entries = {}
        for r, c, v in items:
            if not 0 <= r < rows and 0 <= c < cols:
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            if v.num:
                entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns) -> "LinMap":
        entries = {}
        columns = list(columns)
        for c, col in enumerate(columns):
            for r, v in col.items():
                entries[(r, c)] = v
        return cls(rows, len(columns), entries)

    def column(self, c: int) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> list:
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, LinMap)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __add__(self, other):
        self._check_same_shape(other)
        entries = dict(self.entries)
        for key, v in other.entries.items():
            cur = entries.get(key)
            nv = v if cur is None else cur + v
            if nv.num:
                entries[key] = nv
            elif cur is not None:
                del entries[key]
        return LinMap(self.rows, self.cols, entries)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LinMap(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def scale(self, coeff: RatFunc) -> "LinMap":
        if not coeff.num:
            return LinMap.zero(self.rows, self.cols)
        return LinMap(self.rows, self.cols, {k: coeff * v for k, v in self.entries.items()})

    def __matmul__(self, other: "LinMap") -> "LinMap":
        if self.cols != other.rows:
            raise ValueError(f"composition mismatch: {self.cols} vs {other.rows}")
        by_col_f = {}
        for (r, c), v in self.entries.items():
            by_col_f.setdefault(c, []).append((r, v))
        by_col_g = {}
        for (r, c), v in other.entries.items():
            by_col_g.setdefault(c, []).append((r, v))
        entries = {}
        for c, terms in by_col_g.items():
            acc = {}
            for k, gv in terms:
                fl = by_col_f.get(k)
                if fl:
                    vec_iadd_scaled(acc, gv, dict(fl))
            for r, v in acc.items():
                entries[(r, c)] = v
        return LinMap(self.rows, other.cols, entries)

    def apply(self, vec: dict) -> dict:
        """Image of a sparse column vector."""
        by_col = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, {})[r] = v
        acc = {}
        for c, coeff in vec.items():
            col = by_col.get(c)
            if col:
                vec_iadd_scaled(acc, coeff, col)
        return acc

    def kron(self, other: "LinMap") -> "LinMap":
        entries = {}
        orows, ocols = other.rows, other.cols
        for (ra, ca), va in self.entries.items():
            for (rb, cb), vb in other.entries.items():
                entries[(ra * orows + rb, ca * ocols + cb)] = va * vb
        return LinMap(self.rows * orows, self.cols * ocols, entries)

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def max_cleared_degree(self) -> int:
        """Largest entry degree after clearing denominators matrix-wide."""
        if not self.entries:
            return 0
        lcm = (1,)
        seen = set()
        for v in self.entries.values():
            if v.den != (1,) and v.den not in seen:
                seen.add(v.den)
                lcm = pmul(pdivexact(lcm, pgcd(lcm, v.den)), v.den)
        shift = len(lcm) - 1
        return max(len(v.num) - 1 + shift - (len(v.den) - 1) for v in self.entries.values())

    def __repr__(self):
        return f"<LinMap {self.rows}x{self.cols}, {len(self.entries)} entries>"

    def to_json(self) -> dict:
        items = sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, format_scalar(v)] for (r, c), v in items],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinMap":
        return cls.from_entries(
            data["rows"],
            data["cols"],
            ((r, c, parse_scalar(s)) for r, c, s in data["entries"]),
        )


def place(op: LinMap, left: int, right: int, m: int) -> LinMap:
    """id^(x)left (x) op (x) id^(x)right on tensor factors of dimension m."""
    if left == 0 and right == 0:
        return op
    dl, dr = m**left, m**right
    entries = {}
    orows, ocols = op.rows, op.cols
    for (r, c), v in op.entries.items():
        for i in range(dl):
            base_r = (i * orows + r) * dr
            base_c = (i * ocols + c) * dr
            for j in range(dr):
                entries[(base_r + j, base_c + j)] = v
    return LinMap(orows * dl * dr, ocols * dl * dr, entries)


# ---------------------------------------------------------------------------
# elimination engine


def _entry_weight(v: RatFunc) -> tuple:
    return (0 if v.is_constant() else 1, len(v.num) + len(v.den))


def _column_eliminate(cols: list, track: list | None = None) -> list:
    """Forward column elimination in place; returns the pivot column indices.

    Columns that end up empty were dependent on the pivots; when `track`
    holds identity columns on entry, the tracked images of the emptied
    columns form a kernel basis.
    """
    row_cols = {}
    for ci, col in enumerate(cols):
        for r in col:
            row_cols.setdefault(r, set()).add(ci)
    alive = [ci for ci in range(len(cols)) if cols[ci]]
    pivots = []
    while alive:
        best = None
        best_key = None
        kept = []
        for ci in alive:
            col = cols[ci]
            if not col:
                continue
            kept.append(ci)
            key = (len(col), ci)
            if best_key is None or key < best_key:
                best_key = key
                best = ci
        alive = kept
        if best is None:
            break
        col0 = cols[best]
        r0 = min(
            col0,
            key=lambda r: (*_entry_weight(col0[r]), len(row_cols[r]), r),
        )
        v = col0[r0]
        if v != RF1:
            inv = v.inv()
            for r in col0:
                col0[r] = col0[r] * inv
            if track is not None:
                t0 = track[best]
                for r in t0:
                    t0[r] = t0[r] * inv
        for c in sorted(row_cols[r0] - {best}):
            colc = cols[c]
            f = colc.pop(r0)
            row_cols[r0].discard(c)
            for r, pv in col0.items():
                if r == r0:
                    continue
                cur = colc.get(r)
                nv = -(f * pv) if cur is None else cur - f * pv
                if nv.num:
                    if cur is None:
                        row_cols.setdefault(r, set()).add(c)
                    colc[r] = nv
                elif cur is not None:
                    del colc[r]
                    row_cols[r].discard(c)
            if track is not None:
                tc = track[c]
                for r, pv in track[best].items():
                    cur = tc.get(r)
                    nv = -(f * pv) if cur is None else cur - f * pv
                    if nv.num:
                        tc[r] = nv
                    elif cur is not None:
                        del tc[r]
        for r in col0:
            row_cols[r].discard(best)
        pivots.append(best)
        alive.remove(best)
    return pivots


def _rcef(columns) -> list:
    """Reduced column echelon form; returns [(pivot_row, column_dict), ...]
    sorted by pivot row.  Unique per column span."""
    basis = []
    for col in columns:
        col = dict(col)
        for pr, b in basis:
            f = col.pop(pr, None)
            if f is not None:
                for r, pv in b.items():
                    if r == pr:
                        continue
                    cur = col.get(r)
                    nv = -(f * pv) if cur is None else cur - f * pv
                    if nv.num:
                        col[r] = nv
                    elif cur is not None:
                        del col[r]
        if not col:
            continue
        pr = min(col)
        v = col.pop(pr)
        if v != RF1:
            inv = v.inv()
            col = {r: val * inv for r, val in col.items()}
        col[pr] = RF1
        for _, b in basis:
            f = b.pop(pr, None)
            if f is not None:
                for r, pv in col.items():
                    if r == pr:
                        continue
                    cur = b.get(r)
                    nv = -(f * pv) if cur is None else cur - f * pv
                    if nv.num:
                        b[r] = nv
                    elif cur is not None:
                        del b[r]
        basis.append((pr, col))
        basis.sort(key=lambda item: item[0])
    return basis


class Subspace:
    """A subspace of Q(y)^n held as a reduced column echelon basis."""

    __slots__ = ("ambient_dim", "pivots", "_cols")

    def __init__(self, ambient_dim: int, echelon):
        self.ambient_dim = ambient_dim
        self.pivots = tuple(pr for pr, _ in echelon)
        self._cols = tuple(col for _, col in echelon)

    @classmethod
    def from_columns(cls, ambient_dim: int, columns) -> "Subspace":
        return cls(ambient_dim, _rcef(columns))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [(i, {i: RF1}) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self._cols)

    @property
    def basis(self) -> LinMap:
        return LinMap.from_columns(self.ambient_dim, self._cols)

    def basis_columns(self) -> tuple:
        return self._cols

    def reduce(self, vec: dict) -> dict:
        """Residual of vec after reduction against the echelon basis."""
        vec = dict(vec)
        for pr, col in zip(self.pivots, self._cols):
            f = vec.pop(pr, None)
            if f is not None:
                for r, pv in col.items():
                    if r == pr:
                        continue
                    cur = vec.get(r)
                    nv = -(f * pv) if cur is None else cur - f * pv
                    if nv.num:
                        vec[r] = nv
                    elif cur is not None:
                        del vec[r]
        return vec

    def contains_vector(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(not self.reduce(col) for col in other._cols)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_columns(self.ambient_dim, self._cols + other._cols)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        stacked = [dict(col) for col in self._cols + other._cols]
        track = [{i: RF1} for i in range(len(stacked))]
        _column_eliminate(stacked, track)
        na = len(self._cols)
        vectors = []
        for ci, col in enumerate(stacked):
            if col:
                continue
            combo = track[ci]
            vec = {}
            for i, coeff in combo.items():
                if i < na:
                    vec_iadd_scaled(vec, coeff, self._cols[i])
            if vec:
                vectors.append(vec)
        return Subspace.from_columns(self.ambient_dim, vectors)

    def tensor(self, other: "Subspace") -> "Subspace":
        # the Kronecker product of two reduced echelon bases is reduced
        amb = self.ambient_dim * other.ambient_dim
        echelon = []
        for pa, ca in zip(self.pivots, self._cols):
            for pb, cb in zip(other.pivots, other._cols):
                col = {}
                for ra, va in ca.items():
                    for rb, vb in cb.items():
                        col[ra * other.ambient_dim + rb] = va * vb
                echelon.append((pa * other.ambient_dim + pb, col))
        echelon.sort(key=lambda item: item[0])
        return Subspace(amb, echelon)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self._cols == other._cols
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self):
        return f"<Subspace dim {self.dim} of {self.ambient_dim}>"

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Subspace":
        basis = LinMap.from_json(data["basis"])
        return cls.from_columns(data["ambient_dim"], basis.columns())


# ---------------------------------------------------------------------------
# rank and kernel


def rank_exact(f: LinMap) -> int:
    """Rank over Q(y) by sparse exact elimination."""
    return len(_column_eliminate(f.columns()))


def nullspace(f: LinMap) -> tuple:
    """(rank, kernel Subspace) from one elimination pass."""
    cols = f.columns()
    track = [{i: RF1} for i in range(f.cols)]
    pivots = _column_eliminate(cols, track)
    kernel = [track[ci] for ci, col in enumerate(cols) if not col]
    return len(pivots), Subspace.from_columns(f.cols, kernel)


def kernel_basis(f: LinMap) -> Subspace:
    return nullspace(f)[1]


def image_basis(f: LinMap) -> Subspace:
    cols = f.columns()
    pivots = _column_eliminate(cols)
    return Subspace.from_columns(f.rows, [cols[ci] for ci in pivots])


# -- evaluation fast path ----------------------------------------------------


def prime_stream():
    primes = []
    candidate = 2
    while True:
        if all(candidate % p for p in primes):
            primes.append(candidate)
            yield candidate
        candidate += 1 if candidate == 2 else 2


def _rank_at_point(f: LinMap, point: Fraction) -> int | None:
    """Exact rank of f evaluated at y = point; None when a pole is hit."""
    cols = [dict() for _ in range(f.cols)]
    cache = {}
    for (r, c), v in f.entries.items():
        key = (v.num, v.den)
        val = cache.get(key)
        if val is None:
            den = peval(v.den, point)
            if den == 0:
                return None
            val = peval(v.num, point) / den
            cache[key] = val
        if val:
            cols[c][r] = val
    row_cols = {}
    for ci, col in enumerate(cols):
        for r in col:
            row_cols.setdefault(r, set()).add(ci)
    alive = [ci for ci in range(len(cols)) if cols[ci]]
    rank = 0
    while alive:
        best = None
        best_len = None
        kept = []
        for ci in alive:
            col = cols[ci]
            if not col:
                continue
            kept.append(ci)
            if best_len is None or len(col) < best_len:
                best_len = len(col)
                best = ci
        alive = kept
        if best is None:
            break
        col0 = cols[best]
        r0 = min(col0, key=lambda r: (len(row_cols[r]), r))
        inv = 1 / col0[r0]
        for r in col0:
            col0[r] *= inv
        for c in list(row_cols[r0] - {best}):
            colc = cols[c]
            fct = colc.pop(r0)
            row_cols[r0].discard(c)
            for r, pv in col0.items():
                if r == r0:
                    continue
                cur = colc.get(r)
                nv = -(fct * pv) if cur is None else cur - fct * pv
                if nv:
                    if cur is None:
                        row_cols.setdefault(r, set()).add(c)
                    colc[r] = nv
                elif cur is not None:
                    del colc[r]
                    row_cols[r].discard(c)
        for r in col0:
            row_cols[r].discard(best)
        alive.remove(best)
        rank += 1
    return rank


def _minor_degree_bounds(f: LinMap):
    """Per-size bounds on the degree of any k x k minor after clearing."""
    if not f.entries:
        return lambda k: 0
    lcm = (1,)
    seen = set()
    for v in f.entries.values():
        if v.den != (1,) and v.den not in seen:
            seen.add(v.den)
            lcm = pmul(pdivexact(lcm, pgcd(lcm, v.den)), v.den)
    shift = len(lcm) - 1
    col_max = {}
    row_max = {}
    for (r, c), v in f.entries.items():
        d = len(v.num) - 1 + shift - (len(v.den) - 1)
        if d > col_max.get(c, -1):
            col_max[c] = d
        if d > row_max.get(r, -1):
            row_max[r] = d
    cols_desc = sorted(col_max.values(), reverse=True)
    rows_desc = sorted(row_max.values(), reverse=True)

    def prefix(sorted_desc):
        acc, out = 0, [0]
        for d in sorted_desc:
            acc += d
            out.append(acc)
        return out

    pc, pr = prefix(cols_desc), prefix(rows_desc)

    def bound(k: int) -> int:
        kc = min(k, len(pc) - 1)
        kr = min(k, len(pr) - 1)
        return min(pc[kc], pr[kr])

    return bound


def rank_eval(f: LinMap, points=None) -> int:
    """Rank via evaluation at distinct points, exact by the degree bound.

    With `points=None`, y runs over consecutive primes until the number of
    evaluated points exceeds the degree of every possible (r+1) x (r+1)
    minor, where r is the best rank seen; past that bound a larger minor
    would need more roots than its degree, so the maximum is the true rank.
    """
    return _rank_eval_full(f, points)[0]


def _rank_eval_full(f: LinMap, points=None) -> tuple:
    s = min(f.rows, f.cols)
    if s == 0 or not f.entries:
        return 0, False
    bound = _minor_degree_bounds(f)
    full_bound = bound(s)
    if points is None:
        supply = prime_stream()
    else:
        supply = list(dict.fromkeys(points))
        if len(supply) <= full_bound:
            raise NeedMorePointsError(
                f"{len(supply)} points given, need more than {full_bound}"
            )
        supply = iter(supply)
    r_max = 0
    processed = 0
    ranks_seen = set()
    for a in supply:
        r = _rank_at_point(f, Fraction(a))
        if r is None:
            continue
        processed += 1
        ranks_seen.add(r)
        if r > r_max:
            r_max = r
        if r_max == s or processed > bound(r_max + 1):
            return r_max, len(ranks_seen) > 1
    if processed > full_bound:
        return r_max, len(ranks_seen) > 1
    raise NeedMorePointsError(
        f"only {processed} usable points (poles skipped), need more than {full_bound}"
    )


class RankPolicy:
    """How rank queries are answered: exact, evaluated, or cross-checked."""

    def __init__(self, mode: str = "exact"):
        if mode not in ("exact", "eval", "both"):
            raise ValueError(f"unknown rank mode {mode!r}")
        self.mode = mode
        self.checked = 0

    def rank(self, f: LinMap) -> int:
        if self.mode == "exact":
            return rank_exact(f)
        if self.mode == "eval":
            r, disagreed = _rank_eval_full(f)
            if disagreed:
                # tripwire: sample ranks varied, confirm against elimination
                exact = rank_exact(f)
                if exact != r:
                    raise RankMismatchError(
                        f"eval rank {r} != exact rank {exact} on {f!r}"
                    )
            return r
        exact = rank_exact(f)
        self.confirm(f, exact)
        return exact

    def confirm(self, f: LinMap, symbolic_rank: int) -> None:
        """In `both` mode, cross-check a rank already known from elimination."""
        if self.mode != "both":
            return
        evaluated = rank_eval(f)
        self.checked += 1
        if evaluated != symbolic_rank:
            raise RankMismatchError(
                f"eval rank {evaluated} != exact rank {symbolic_rank} on {f!r}"
            )


EXACT_POLICY = RankPolicy("exact")
