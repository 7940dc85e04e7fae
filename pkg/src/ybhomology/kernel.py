"""The kernels of the alternating-sum operators and their graded structure.

Writing K(n) for ker sigma_n on V^(x)n, the dimensions satisfy

    m^n = sum_i C(m, i) * dim K(n-i)

because V^(x)n splits into eigenspaces bracket_k (x) K(n-k) of sigma_n with
eigenvalue the quantum integer [k].  The direct sum of all K(n) is a graded
algebra under concatenation, freely generated by complements ("new" kernel
vectors) chosen degree by degree: at each n we take the canonical echelon
basis of K(n) and greedily keep the vectors independent of the span of
K(n-k) (x) new_k for k < n.  The generator counts b_i = (i-1) C(m+1, i)
vanish above degree m+1 and satisfy

    1 - sum b_i q^i = (1 - m q)(1 + q)^m,

whose power-series inverse generates the dimensions dim K(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .scalar import RF1, RatFunc, format_scalar, quantum_int
from .tensor import (
    EXACT_POLICY,
    LinMap,
    RankPolicy,
    Subspace,
    index_to_word,
    vec_iadd_scaled,
    vec_kron,
    vec_scale,
)
from .ybop import YangBaxter


class RecurrenceError(RuntimeError):
    """The kernel-dimension recurrences disagreed; indicates a bug."""


# ---------------------------------------------------------------------------
# dimension recurrences


def _dim_table(m: int, n_max: int) -> list:
    """dim K(0..n_max) from m^n = sum C(m,i) * K(n-i), seeded K(0)=1, K(1)=0."""
    dims = []
    for n in range(n_max + 1):
        value = m**n
        for i in range(1, min(m, n) + 1):
            value -= math.comb(m, i) * dims[n - i]
        dims.append(value)
    if n_max >= 1 and dims[1] != 0:
        raise RecurrenceError("degree-1 kernel dimension must vanish")
    return dims


def kernel_dim_recurrence(m: int, n: int) -> int:
    """dim ker sigma_n from the binomial recurrence, cross-validated against
    the companion identity 0 = sum (i-1) C(m+1, i) K(n-i)."""
    if n < 0:
        return 0
    dims = _dim_table(m, n)
    for k in range(1, n + 1):
        acc = 0
        for i in range(0, min(m + 1, k) + 1):
            acc += (i - 1) * math.comb(m + 1, i) * dims[k - i]
        if acc != 0:
            raise RecurrenceError(f"companion identity fails at degree {k}")
    return dims[n]


def kernel_dim_direct(yb: YangBaxter, n: int, policy: RankPolicy = EXACT_POLICY) -> int:
    """dim ker sigma_n by exact elimination."""
    rank = yb.sigma_rank(n)
    policy.confirm(yb.sigma(n), rank)
    return yb.dim(n) - rank


def m2_recurrences_hold(dims: list) -> bool:
    """The three equivalent m = 2 recurrences against a computed table."""
    get = lambda i: dims[i] if i >= 0 else 0
    for n in range(1, len(dims)):
        if dims[n] != 3 * get(n - 2) + 2 * get(n - 3):
            return False
        if dims[n] != 4 * get(n - 2) + (-1) ** (n + 1) * (n - 1):
            return False
        if dims[n] != 2 * get(n - 1) + (-1) ** n * (n + 1):
            return False
    return True


# ---------------------------------------------------------------------------
# the tower of kernels and chosen complements


class _MutableEchelon:
    """Incremental triangular basis for independence tests over Q(y)."""

    __slots__ = ("by_pivot",)

    def __init__(self):
        self.by_pivot = {}

    def add(self, vec: dict) -> bool:
        """Reduce vec; insert the residual if independent.  True if added."""
        vec = dict(vec)
        while vec:
            r = min(vec)
            base = self.by_pivot.get(r)
            if base is None:
                inv = vec[r].inv()
                self.by_pivot[r] = {row: v * inv for row, v in vec.items()}
                return True
            vec_iadd_scaled(vec, -vec[r], base)
        return False


class KernelTower:
    """Kernels, chosen complements, and generator counts, degree by degree.

    Degrees have a data dependency through the complements (degree n needs
    every lower tilde space), so they are sealed in increasing order.
    """

    def __init__(self, yb: YangBaxter, policy: RankPolicy = EXACT_POLICY):
        self.yb = yb
        self.policy = policy
        self._tilde = {}
        self._confirmed = set()

    def kernel(self, n: int) -> Subspace:
        kernel = self.yb.sigma_kernel(n)
        if n not in self._confirmed:
            self.policy.confirm(self.yb.sigma(n), self.yb.dim(n) - kernel.dim)
            self._confirmed.add(n)
        return kernel

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        return self.kernel(n).dim

    def spanned_by_lower(self, n: int) -> Subspace:
        """Sum of K(n-k) (x) tilde_k over 2 <= k <= n-1 inside V^(x)n."""
        cols = []
        for k in range(2, n):
            part = self.kernel(n - k).tensor(self.tilde(k))
            cols.extend(part.basis_columns())
        return Subspace.from_columns(self.yb.dim(n), cols)

    def tilde(self, n: int) -> Subspace:
        """The chosen complement of the lower-degree span inside K(n)."""
        if n < 1:
            raise ValueError("complements start at degree 1")
        cached = self._tilde.get(n)
        if cached is None:
            if n == 1:
                cached = Subspace.zero(self.yb.dim(1))
            else:
                echelon = _MutableEchelon()
                for col in self.spanned_by_lower(n).basis_columns():
                    echelon.add(col)
                chosen = []
                for col in self.kernel(n).basis_columns():
                    if echelon.add(col):
                        chosen.append(col)
                cached = Subspace.from_columns(self.yb.dim(n), chosen)
            self._tilde[n] = cached
        return cached

    def generator_count(self, n: int) -> int:
        return self.tilde(n).dim


def tilde_complement(tower: KernelTower, n: int) -> Subspace:
    return tower.tilde(n)


def expected_generator_count(m: int, n: int) -> int:
    if 2 <= n <= m + 1:
        return (n - 1) * math.comb(m + 1, n)
    return 0


def check_kernel_vanishing(tower: KernelTower, n: int) -> bool:
    """For n > m+1: K(n) equals the direct sum of K(n-k) (x) tilde_k."""
    m = tower.yb.m
    if n <= m + 1:
        raise ValueError("vanishing applies above degree m+1")
    cols = []
    total = 0
    for k in range(2, m + 2):
        part = tower.kernel(n - k).tensor(tower.tilde(k))
        total += part.dim
        cols.extend(part.basis_columns())
    span = Subspace.from_columns(tower.yb.dim(n), cols)
    return span.dim == total and span == tower.kernel(n)


def check_graded_algebra(tower: KernelTower, s: int, t: int) -> bool:
    """Concatenation closure: K(s) (x) K(t) inside K(s+t)."""
    target = tower.kernel(s + t)
    dim_t = tower.yb.dim(t)
    for a in tower.kernel(s).basis_columns():
        for b in tower.kernel(t).basis_columns():
            if not target.contains_vector(vec_kron(a, b, dim_t)):
                return False
    return True


def count_identity_holds(tower: KernelTower, n: int) -> bool:
    """m^n = sum_k C(m, k) * dim K(n-k)."""
    m = tower.yb.m
    total = sum(math.comb(m, k) * tower.dim(n - k) for k in range(0, n + 1))
    return total == m**n


# ---------------------------------------------------------------------------
# eigenspace decomposition


@dataclass
class DecompositionPart:
    k: int
    dim: int
    eigenvalue: RatFunc
    eigen_ok: bool
    subspace: Subspace = field(repr=False)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "dim": self.dim,
            "eigenvalue": format_scalar(self.eigenvalue),
            "eigen_ok": self.eigen_ok,
        }


@dataclass
class DecompositionReport:
    n: int
    parts: list
    direct_sum_ok: bool
    pairwise_ok: bool
    dims_sum: int
    ambient_dim: int

    @property
    def passed(self) -> bool:
        return (
            self.direct_sum_ok
            and self.pairwise_ok
            and self.dims_sum == self.ambient_dim
            and all(p.eigen_ok for p in self.parts)
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "parts": [p.to_json() for p in self.parts],
            "direct_sum_ok": self.direct_sum_ok,
            "pairwise_ok": self.pairwise_ok,
            "dims_sum": self.dims_sum,
            "ambient_dim": self.ambient_dim,
            "passed": self.passed,
        }


def verify_decomposition(
    yb: YangBaxter,
    n: int,
    tower: KernelTower | None = None,
    policy: RankPolicy = EXACT_POLICY,
) -> DecompositionReport:
    """Check V^(x)n = K(n) + bracket_1 (x) K(n-1) + ... + bracket_n, with
    part k an exact eigenspace of sigma_n for the quantum integer [k]."""
    if n < 1:
        raise ValueError("decomposition starts at degree 1")
    tower = tower if tower is not None else KernelTower(yb, policy)
    sigma = yb.sigma(n)
    parts = []
    for k in range(0, n + 1):
        if k == 0:
            space = tower.kernel(n)
        else:
            space = yb.bracket_space(k).space.tensor(tower.kernel(n - k))
        value = quantum_int(k)
        eigen_ok = True
        for col in space.basis_columns():
            if sigma.apply(col) != vec_scale(col, value):
                eigen_ok = False
                break
        parts.append(DecompositionPart(k, space.dim, value, eigen_ok, space))

    dims_sum = sum(p.dim for p in parts)
    all_cols = [col for p in parts for col in p.subspace.basis_columns()]
    combined = LinMap.from_columns(yb.dim(n), all_cols)
    combined_rank = policy.rank(combined)
    direct_sum_ok = combined_rank == dims_sum

    pairwise_ok = True
    nonzero = [p for p in parts if p.dim]
    for a in range(len(nonzero)):
        for b in range(a + 1, len(nonzero)):
            if nonzero[a].subspace.intersect(nonzero[b].subspace).dim:
                pairwise_ok = False
    return DecompositionReport(n, parts, direct_sum_ok, pairwise_ok, dims_sum, yb.dim(n))


# ---------------------------------------------------------------------------
# generators of the kernel algebra


def omega(yb: YangBaxter, x: dict, k: int, n: int) -> dict:
    """v_k (x) x + (-1)^n x (x) v_k for x in K(n-1), letters of x all >= k.

    Raises ValueError when the hypothesis fails; asserts that the output
    lies in K(n).
    """
    m = yb.m
    if not 1 <= k <= m:
        raise ValueError(f"letter {k} outside 1..{m}")
    dim_in = yb.dim(n - 1)
    for idx in x:
        word = index_to_word(idx, n - 1, m)
        if min(word) < k:
            raise ValueError(
                f"letter {k} exceeds the minimum letter of the support word {word}"
            )
    if yb.sigma(n - 1).apply(x):
        raise ValueError("input vector is not in the degree n-1 kernel")
    out = {}
    base = (k - 1) * dim_in
    for idx, v in x.items():
        out[base + idx] = v
    sign = RF1 if n % 2 == 0 else -RF1
    for idx, v in x.items():
        cur = out.get(idx * m + (k - 1))
        nv = sign * v if cur is None else cur + sign * v
        if nv.num:
            out[idx * m + (k - 1)] = nv
        else:
            out.pop(idx * m + (k - 1), None)
    if yb.sigma(n).apply(out):
        raise AssertionError("omega image escaped the kernel")
    return out


def _symmetric_pair(yb: YangBaxter, i: int, j: int) -> dict:
    """v_i (x) v_j + y^2 v_j (x) v_i, a degree-2 kernel vector for i < j."""
    y2 = RatFunc((0, 0, 1), (1,))
    vec = dict(yb.unit_vector((i, j)))
    vec_iadd_scaled(vec, y2, yb.unit_vector((j, i)))
    return vec


def generator_sets(yb: YangBaxter) -> dict:
    """The explicit kernel-algebra generators for m = 2 and m = 3."""
    m = yb.m
    gens = {2: []}
    for i in range(1, m + 1):
        gens[2].append(dict(yb.unit_vector((i, i))))
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            gens[2].append(_symmetric_pair(yb, i, j))

    if m == 2:
        gens[3] = [
            omega(yb, dict(yb.unit_vector((2, 2))), 1, 3),
            omega(yb, _symmetric_pair(yb, 1, 2), 1, 3),
        ]
        return gens

    if m == 3:
        gens[3] = []
        for i in range(1, 4):
            for j in range(i + 1, 4):
                gens[3].append(omega(yb, dict(yb.unit_vector((j, j))), i, 3))
        for i in range(1, 4):
            for j in range(i + 1, 4):
                for s in range(1, i + 1):
                    gens[3].append(omega(yb, _symmetric_pair(yb, i, j), s, 3))
        special = {}
        y2 = RatFunc((0, 0, 1), (1,))
        q3 = quantum_int(3)
        vec_iadd_scaled(special, y2, yb.bracket((1, 2, 3)))
        vec_iadd_scaled(special, q3, yb.unit_vector((1, 3, 2)))
        vec_iadd_scaled(special, -q3, yb.unit_vector((2, 3, 1)))
        gens[3].append(special)
        gens[4] = [
            omega(yb, omega(yb, dict(yb.unit_vector((3, 3))), 2, 3), 1, 4),
            omega(yb, omega(yb, _symmetric_pair(yb, 2, 3), 2, 3), 1, 4),
            omega(yb, special, 1, 4),
        ]
        return gens

    raise ValueError("explicit generators are provided for m = 2 and m = 3 only")


def products_span_kernel(
    yb: YangBaxter, gens: dict, n: int, tower: KernelTower
) -> bool:
    """Do left-to-right concatenations of the given generators span K(n)?"""
    products = {0: [({}, 0)]}  # degree -> list of (vector, ambient power)

    def vectors(limit):
        if limit in products:
            return products[limit]
        out = []
        for k in sorted(gens):
            if k > limit:
                break
            for prefix, _ in vectors(limit - k):
                for g in gens[k]:
                    if prefix:
                        out.append((vec_kron(prefix, g, yb.dim(k)), limit))
                    else:
                        out.append((dict(g), limit))
        products[limit] = out
        return out

    cols = [vec for vec, _ in vectors(n)]
    span = Subspace.from_columns(yb.dim(n), cols)
    return span == tower.kernel(n)


def verify_generator_examples(
    yb: YangBaxter,
    tower: KernelTower | None = None,
    max_degree: int | None = None,
) -> bool:
    """The explicit generating sets: membership in their kernels, the
    expected counts per degree, and spanning of K(n) under concatenation."""
    tower = tower if tower is not None else KernelTower(yb)
    gens = generator_sets(yb)
    if max_degree is None:
        max_degree = 5 if yb.m == 2 else 4
    for degree, vectors in gens.items():
        kernel = tower.kernel(degree)
        for vec in vectors:
            if not kernel.contains_vector(vec):
                return False
        span = Subspace.from_columns(yb.dim(degree), [dict(v) for v in vectors])
        if span.dim != expected_generator_count(yb.m, degree):
            return False
    for n in range(2, max_degree + 1):
        if not products_span_kernel(yb, gens, n, tower):
            return False
    return True


# ---------------------------------------------------------------------------
# generating function identity


def hilbert_check(m: int, degree_bound: int) -> bool:
    """1 - sum b_i q^i = (1 - m q)(1 + q)^m with b_i = (i-1) C(m+1, i),
    and the series inverse of the right side generates dim K(n)."""
    from .scalar import pmul, ppow, psub

    lhs = [1] + [0] * (m + 1)
    for i in range(2, m + 2):
        lhs[i] = -(i - 1) * math.comb(m + 1, i)
    lhs = tuple(lhs)
    rhs = pmul((1, -m), ppow((1, 1), m))
    if psub(lhs, rhs):
        return False

    dims = _dim_table(m, degree_bound)
    series = [1]
    for n in range(1, degree_bound + 1):
        acc = 0
        for j in range(1, min(n, len(rhs) - 1) + 1):
            acc -= rhs[j] * series[n - j]
        series.append(acc)
    return series == dims
