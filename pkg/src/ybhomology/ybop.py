"""The rank-m Yang-Baxter operator family and the maps it induces on V^(x)n.

For an m-dimensional space V with basis v_1..v_m the operator R acts on
V (x) V by

    v_i (x) v_j  ->  (1-y^2) v_i (x) v_j + y^2 v_j (x) v_i     (i < j)
    v_i (x) v_i  ->  v_i (x) v_i
    v_j (x) v_i  ->  v_i (x) v_j                               (i < j)

From R we derive the cascade maps d_k acting on n tensor factors (d_1 is
the identity; d_k pulls the k-th strand to the front through k-1 crossings),
their alternating sum sigma_n, the telescoping compositions phi_n^i, and the
fully antisymmetrized n-bracket whose image spans the top eigenspace of
sigma_n.  All derived operators are cached per degree on the YangBaxter
object, since sigma_n reuses every d_k and phi reuses every sigma.
"""

from __future__ import annotations

import itertools
import math

from .scalar import RF1, RatFunc, quantum_int, y_power
from .tensor import (
    LinMap,
    Subspace,
    all_words,
    image_basis,
    kernel_basis,
    nullspace,
    place,
    rank_exact,
    vec_iadd_scaled,
    word_to_index,
)

_RF_NEG1 = -RF1


def build_R(m: int) -> LinMap:
    """The m^2 x m^2 matrix of R in lexicographic word order."""
    if m < 1:
        raise ValueError("alphabet size must be positive")
    one_minus_y2 = RatFunc((1, 0, -1), (1,))
    y2 = y_power(2)
    entries = {}
    for i in range(1, m + 1):
        entries[(word_to_index((i, i), m), word_to_index((i, i), m))] = RF1
        for j in range(i + 1, m + 1):
            ij = word_to_index((i, j), m)
            ji = word_to_index((j, i), m)
            entries[(ij, ij)] = one_minus_y2
            entries[(ji, ij)] = y2
            entries[(ij, ji)] = RF1
    return LinMap(m * m, m * m, entries)


def check_ybe(R: LinMap) -> bool:
    """Exact check of (R(x)id)(id(x)R)(R(x)id) = (id(x)R)(R(x)id)(id(x)R)."""
    if R.rows != R.cols:
        return False
    m = math.isqrt(R.rows)
    if m * m != R.rows:
        raise ValueError(f"operator dimension {R.rows} is not a perfect square")
    r_left = place(R, 0, 1, m)
    r_right = place(R, 1, 0, m)
    return r_left @ r_right @ r_left == r_right @ r_left @ r_right


def inv_count(seq) -> int:
    """Number of pairs p < q with seq[p] > seq[q]."""
    seq = tuple(seq)
    return sum(
        1
        for p in range(len(seq))
        for q in range(p + 1, len(seq))
        if seq[p] > seq[q]
    )


def _perm_sign(perm) -> int:
    return -1 if inv_count(perm) % 2 else 1


class BracketSpace:
    """The image of the full antisymmetrizer in V^(x)n.

    `bracket_of` maps each strictly decreasing letter tuple to its bracket
    vector; those vectors form the stored basis, so the dimension is
    C(m, n) and the space is zero for n > m.
    """

    __slots__ = ("n", "space", "bracket_of")

    def __init__(self, n: int, space: Subspace, bracket_of: dict):
        self.n = n
        self.space = space
        self.bracket_of = bracket_of

    @property
    def dim(self) -> int:
        return self.space.dim


class YangBaxter:
    """R for a given alphabet size plus cached derived operators."""

    def __init__(self, m: int, validate: bool = True):
        self.m = m
        self.R = build_R(m)
        self._cache = {}
        if validate:
            if rank_exact(self.R) != m * m:
                raise ValueError("operator is not invertible")
            if not check_ybe(self.R):
                raise ValueError("operator fails the Yang-Baxter equation")

    def dim(self, n: int) -> int:
        return self.m**n

    # -- cascades and alternating sums ----------------------------------------

    def d(self, k: int, n: int) -> LinMap:
        """Cascade map: R applied at positions k-1, k-2, ..., 1; d_1 = id."""
        if not 1 <= k <= n:
            raise ValueError(f"cascade index {k} outside 1..{n}")
        key = ("d", k, n)
        cached = self._cache.get(key)
        if cached is None:
            if k == 1:
                cached = LinMap.identity(self.dim(n))
            else:
                cached = self.d(k - 1, n) @ place(self.R, k - 2, n - k, self.m)
            self._cache[key] = cached
        return cached

    def sigma(self, n: int) -> LinMap:
        """Alternating sum of the cascades; the zero map for n = 0."""
        if n < 0:
            raise ValueError("negative tensor degree")
        key = ("sigma", n)
        cached = self._cache.get(key)
        if cached is None:
            if n == 0:
                cached = LinMap.zero(1, 1)
            else:
                cached = self.d(1, n)
                for k in range(2, n + 1):
                    term = self.d(k, n)
                    cached = cached + term if k % 2 else cached - term
            self._cache[key] = cached
        return cached

    def _sigma_split(self, n: int):
        key = ("sigma_split", n)
        cached = self._cache.get(key)
        if cached is None:
            rank, kernel = nullspace(self.sigma(n))
            image = image_basis(self.sigma(n))
            assert image.dim == rank
            cached = (rank, kernel, image)
            self._cache[key] = cached
        return cached

    def sigma_rank(self, n: int) -> int:
        return self._sigma_split(n)[0]

    def sigma_kernel(self, n: int) -> Subspace:
        return self._sigma_split(n)[1]

    def sigma_image(self, n: int) -> Subspace:
        return self._sigma_split(n)[2]

    def psi(self, n: int) -> LinMap:
        """Sum of signed double cascades pairing d_i with a shifted d_j."""
        if n < 2:
            raise ValueError("psi needs at least two tensor factors")
        key = ("psi", n)
        cached = self._cache.get(key)
        if cached is None:
            total = LinMap.zero(self.dim(n), self.dim(n))
            for i in range(1, n):
                di = self.d(i, n)
                for j in range(i, n):
                    term = place(self.d(j, n - 1), 1, 0, self.m) @ di
                    total = total + term if (i + j) % 2 == 0 else total - term
            cached = total
            self._cache[key] = cached
        return cached

    def phi(self, n: int, i: int) -> LinMap:
        """Telescoping composition (id (x) sigma_i) o ... o sigma_n."""
        if not 1 <= i <= n:
            raise ValueError(f"phi index {i} outside 1..{n}")
        key = ("phi", n, i)
        cached = self._cache.get(key)
        if cached is None:
            if i == n:
                cached = self.sigma(n)
            else:
                cached = place(self.sigma(i), n - i, 0, self.m) @ self.phi(n, i + 1)
            self._cache[key] = cached
        return cached

    # -- brackets --------------------------------------------------------------

    def bracket(self, indices) -> dict:
        """Signed sum over all permutations of the tensor positions."""
        indices = tuple(indices)
        n = len(indices)
        counts = {}
        for perm in itertools.permutations(range(n)):
            word = tuple(indices[p] for p in perm)
            counts[word] = counts.get(word, 0) + _perm_sign(perm)
        vec = {}
        for word, c in counts.items():
            if c:
                vec[word_to_index(word, self.m)] = RatFunc.from_rational(c)
        return vec

    def bracket_space(self, n: int) -> BracketSpace:
        key = ("bracket_space", n)
        cached = self._cache.get(key)
        if cached is None:
            dim = self.dim(n)
            if n > self.m:
                cached = BracketSpace(n, Subspace.zero(dim), {})
            else:
                bracket_of = {}
                for combo in itertools.combinations(range(1, self.m + 1), n):
                    dec = tuple(reversed(combo))
                    bracket_of[dec] = self.bracket(dec)
                space = Subspace.from_columns(dim, list(bracket_of.values()))
                assert space.dim == math.comb(self.m, n)
                cached = BracketSpace(n, space, bracket_of)
            self._cache[key] = cached
        return cached

    def unit_vector(self, word) -> dict:
        return {word_to_index(word, self.m): RF1}


# ---------------------------------------------------------------------------
# identity checkers


def check_sigma_identities(yb: YangBaxter, n: int) -> bool:
    """Exact verification of the sigma recursion, the double-cascade
    exchange identity, and the psi factorization, for all valid (k, i, j)."""
    if n < 2:
        raise ValueError("identities need at least two tensor factors")
    m = yb.m
    sigma_n = yb.sigma(n)
    sigma2_front = place(yb.sigma(2), 0, n - 2, m)

    for k in range(1, n):
        left = place(yb.sigma(k), 0, n - k, m)
        tail = yb.d(k + 1, n) @ place(yb.sigma(n - k), k, 0, m)
        combined = left + tail if k % 2 == 0 else left - tail
        if combined != sigma_n:
            return False

    for i in range(1, n):
        di = yb.d(i, n)
        for j in range(i, n):
            a = place(yb.d(j, n - 1), 1, 0, m) @ di
            b = place(yb.d(i, n - 1), 1, 0, m) @ yb.d(j + 1, n)
            if a - b != sigma2_front @ a:
                return False

    lhs = place(yb.sigma(n - 1), 1, 0, m) @ sigma_n
    if lhs != sigma2_front @ yb.psi(n):
        return False
    return True


def check_bracket_recursions(yb: YangBaxter, n: int) -> bool:
    """Antisymmetry plus the one-factor and two-factor bracket expansions,
    verified on every strictly decreasing letter tuple."""
    if n < 2:
        raise ValueError("bracket recursions need at least two letters")
    m = yb.m
    if n > m:
        return True
    dim_rest = yb.dim(n - 1)
    dim_rest2 = yb.dim(n - 2)
    for combo in itertools.combinations(range(1, m + 1), n):
        letters = tuple(reversed(combo))
        full = yb.bracket(letters)

        for p in range(n - 1):
            swapped = list(letters)
            swapped[p], swapped[p + 1] = swapped[p + 1], swapped[p]
            flipped = {r: -v for r, v in yb.bracket(swapped).items()}
            if flipped != full:
                return False

        one = {}
        for s in range(n):
            rest = yb.bracket(letters[:s] + letters[s + 1 :])
            base = (letters[s] - 1) * dim_rest
            shifted = {base + r: v for r, v in rest.items()}
            coeff = RF1 if s % 2 == 0 else _RF_NEG1
            vec_iadd_scaled(one, coeff, shifted)
        if one != full:
            return False

        two = {}
        for s in range(n):
            for t in range(s + 1, n):
                pair = yb.bracket((letters[s], letters[t]))
                rest = yb.bracket(
                    tuple(x for q, x in enumerate(letters) if q not in (s, t))
                )
                coeff = RF1 if (s + t + 1) % 2 == 0 else _RF_NEG1
                for rp, vp in pair.items():
                    shifted = {rp * dim_rest2 + r: vp * v for r, v in rest.items()}
                    vec_iadd_scaled(two, coeff, shifted)
        if two != full:
            return False
    return True


def check_phi_formula(yb: YangBaxter, n: int) -> bool:
    """phi_n^1 equals the inversion-number closed form on every basis word,
    and phi_n^i lands in bracket_(n-i+1) (x) V^(x)(i-1) for every i."""
    m = yb.m
    phi1 = yb.phi(n, 1)
    cols = phi1.columns()
    for word in all_words(n, m):
        idx = word_to_index(word, m)
        expected = {}
        power = y_power(2 * inv_count(tuple(reversed(word))))
        vec_iadd_scaled(expected, power, yb.bracket(word))
        if cols[idx] != expected:
            return False
    for i in range(1, n + 1):
        target = yb.bracket_space(n - i + 1).space.tensor(
            Subspace.full(yb.dim(i - 1))
        )
        for col in yb.phi(n, i).columns():
            if not target.contains_vector(col):
                return False
    return True
