"""The half covering quantum group as free algebra modulo the radical of
the bilinear form.

Per weight we hold the Gram matrix of the form on words, a basis of its
kernel (the radical), and the complementary pivot words.  Equality and
reduction happen per pi-component; the two components must agree on
dimensions and pivot words, which is asserted.

The radical is found by echelonizing the span of padded Serre elements
and certifying completeness with a nonzero complementary Gram minor; if
the certificate fails we fall back to a direct kernel computation.
"""

import json
import os
from math import comb

from . import kernels
from .cartan import stats_N, stats_p, weight_add, weight_sub
from .freealg import (
    FreeAlgebra,
    FreeElement,
    render_word,
    word_weight,
)
from .scalars import (
    PS_ONE,
    PS_ZERO,
    GaussianRational,
    LaurentPoly,
    PiScalar,
    RationalFn,
    parse_scalar,
    qbinomial,
    render_scalar,
)

_SIGNS = (1, -1)


def _ratfn_to_lp(r):
    """RationalFn -> integer Laurent kernel tuple; ValueError if not one."""
    if r.den.coeffs != {0: GaussianRational(1)}:
        raise ValueError("scalar has a genuine denominator")
    if not r.num.coeffs:
        return kernels.LP_ZERO
    coeffs = {}
    for e, c in r.num.coeffs.items():
        if c.im != 0 or c.re.denominator != 1:
            raise ValueError("scalar is not an integer Laurent polynomial")
        coeffs[e] = int(c.re)
    lo = min(coeffs)
    hi = max(coeffs)
    return kernels.lp_trim(lo, tuple(coeffs.get(e, 0) for e in range(lo, hi + 1)))


def _lp_to_ratfn(a):
    off, coeffs = a
    return RationalFn(LaurentPoly(
        {off + k: GaussianRational(c) for k, c in enumerate(coeffs) if c}))


class QuotientContext:
    """Caches Gram data per weight for one datum; write-once per key."""

    def __init__(self, datum, root, twist_form, cache_dir=None):
        self.datum = datum
        self.root = root
        self.tf = twist_form
        self.free = FreeAlgebra(datum, twist_form)
        self.cache_dir = cache_dir
        self._pair_memo = {}
        self._words = {}
        self._gram = {}
        self._radical = {}   # nu -> {sign: (rows, pivot_cols)}
        self._pivots = {}    # nu -> pivot word list
        self._radical_route = {}  # nu -> "serre" | "fallback"
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)

    # --- words and Gram matrices --------------------------------------------

    def words(self, nu):
        got = self._words.get(nu)
        if got is None:
            got = self.free.words_of_weight(nu)
            self._words[nu] = got
        return got

    def gram(self, nu):
        got = self._gram.get(nu)
        if got is not None:
            return got
        mat = self._load_gram(nu)
        if mat is None:
            words = self.words(nu)
            mat = [[self.free.pair_words(w1, w2, self._pair_memo)
                    for w2 in words] for w1 in words]
            self._store_gram(nu, mat)
        self._gram[nu] = mat
        return mat

    def _cache_path(self, nu):
        from .cartan import datum_hash
        name = datum_hash(self.datum, self.root, self.tf) + "_" + \
            "-".join(str(c) for c in nu) + ".json"
        return os.path.join(self.cache_dir, name)

    def _load_gram(self, nu):
        if not self.cache_dir:
            return None
        path = self._cache_path(nu)
        if not os.path.exists(path):
            return None
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if data["weight"] != list(nu):
            raise ValueError(f"cache file {path} holds the wrong weight")
        return [[parse_scalar(cell) for cell in row] for row in data["gram"]]

    def _store_gram(self, nu, mat):
        if not self.cache_dir:
            return
        data = {
            "weight": list(nu),
            "words": [render_word(self.datum, w) for w in self.words(nu)],
            "gram": [[render_scalar(cell) for cell in row] for row in mat],
        }
        path = self._cache_path(nu)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(data, fh, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False)
        os.replace(tmp, path)

    def gram_component(self, nu, sign):
        """Gram matrix of one component as integer Laurent rows."""
        mat = self.gram(nu)
        pick = (lambda s: s.plus) if sign > 0 else (lambda s: s.minus)
        return [[_ratfn_to_lp(pick(cell)) for cell in row] for row in mat]

    # --- radical -----------------------------------------------------------------

    def radical(self, nu):
        got = self._radical.get(nu)
        if got is None:
            got = self._compute_radical(nu)
        return got

    def pivots(self, nu):
        self.radical(nu)
        return self._pivots[nu]

    def dimension(self, nu):
        return len(self.pivots(nu))

    def radical_route(self, nu):
        self.radical(nu)
        return self._radical_route[nu]

    def _serre_span_rows(self, nu):
        """Free-algebra vectors of padded Serre elements at weight nu."""
        words = self.words(nu)
        index = {w: t for t, w in enumerate(words)}
        rows = []
        n = self.datum.rank
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if not isinstance(self.datum.a(i, j), int):
                    continue
                s = self.serre_element(i, j)
                s_wt = s.homogeneous_weight(n)
                rest = weight_sub(nu, s_wt)
                if any(c < 0 for c in rest):
                    continue
                for left in self._subweights(rest):
                    right = weight_sub(rest, left)
                    for u in self.free.words_of_weight(left):
                        for w in self.free.words_of_weight(right):
                            el = self.free.mul(
                                self.free.mul(self.free.monomial(u), s),
                                self.free.monomial(w))
                            rows.append(self._to_int_rows(el, index))
        return rows

    @staticmethod
    def _subweights(nu):
        out = [()]
        for c in nu:
            out = [w + (k,) for w in out for k in range(c + 1)]
        return out

    def _to_int_rows(self, el, index):
        """Element -> per-sign integer LP vectors over the word basis."""
        out = {}
        for sign in _SIGNS:
            vec = [kernels.LP_ZERO] * len(index)
            for w, c in el.terms.items():
                comp = c.plus if sign > 0 else c.minus
                vec[index[w]] = _ratfn_to_lp(comp)
            out[sign] = vec
        return out

    def _compute_radical(self, nu):
        words = self.words(nu)
        ncols = len(words)
        serre_rows = self._serre_span_rows(nu)
        result = {}
        route = "serre"
        for sign in _SIGNS:
            rows = [r[sign] for r in serre_rows]
            ech, piv = kernels.echelon(rows, ncols)
            gm = self.gram_component(nu, sign)
            if self._certify(gm, ech, piv, ncols):
                result[sign] = (ech, piv)
            else:
                route = "fallback"
                result[sign] = self._kernel_direct(gm, ncols)
        lead_sets = {tuple(result[s][1]) for s in _SIGNS}
        if len(lead_sets) != 1:
            raise ArithmeticError(
                f"radical pivot words differ between pi-components at {nu}")
        lead = set(result[1][1])
        self._pivots[nu] = [w for t, w in enumerate(words) if t not in lead]
        self._radical_route[nu] = route
        self._radical[nu] = result
        return result

    def _certify(self, gram_rows, ech, piv, ncols):
        """The echelonized Serre span is the whole radical iff every row is
        in the kernel and the complementary Gram minor is nonsingular."""
        for row in ech:
            for i in range(ncols):
                acc = kernels.LP_ZERO
                for j in range(ncols):
                    acc = kernels.lp_add(
                        acc, kernels.lp_mul(gram_rows[i][j], row[j]))
                if not kernels.lp_is_zero(acc):
                    return False
        keep = [c for c in range(ncols) if c not in set(piv)]
        minor = [[gram_rows[i][j] for j in keep] for i in keep]
        return not kernels.lp_is_zero(kernels.det_bareiss(minor))

    @staticmethod
    def _kernel_direct(gram_rows, ncols):
        """Kernel basis by echelonizing [G^T | I] (G symmetric here)."""
        aug = []
        for i in range(ncols):
            row = list(gram_rows[i]) + [
                kernels.lp_const(1) if j == i else kernels.LP_ZERO
                for j in range(ncols)]
            aug.append(row)
        ech, piv = kernels.echelon(aug, 2 * ncols)
        kern_rows = [r[ncols:] for r, c in zip(ech, piv) if c >= ncols]
        return kernels.echelon(kern_rows, ncols)

    # --- reduction and equality ---------------------------------------------------

    def _component_vector(self, part, nu, sign):
        words = self.words(nu)
        index = {w: t for t, w in enumerate(words)}
        zero = RationalFn(LaurentPoly())
        vec = [zero] * len(words)
        for w, c in part.terms.items():
            vec[index[w]] = c.plus if sign > 0 else c.minus
        return vec

    def reduce(self, x):
        """Coordinates of x's class on the pivot words, as PiScalar.

        x must be homogeneous; returns (pivot_words, coords).
        """
        nu = x.homogeneous_weight(self.datum.rank) if x.terms else None
        if nu is None:
            raise ValueError("cannot infer the weight of the zero element; "
                             "use reduce_at")
        return self.reduce_at(x, nu)

    def reduce_at(self, x, nu):
        rad = self.radical(nu)
        words = self.words(nu)
        pivot_words = self._pivots[nu]
        pivot_pos = {w: t for t, w in enumerate(pivot_words)}
        comps = {}
        for sign in _SIGNS:
            vec = self._component_vector(x, nu, sign)
            rows, piv = rad[sign]
            for row, lead in zip(rows, piv):
                f = vec[lead]
                if f:
                    ratio = f / _lp_to_ratfn(row[lead])
                    for j in range(len(words)):
                        if row[j][1]:
                            vec[j] = vec[j] - ratio * _lp_to_ratfn(row[j])
            coords = [None] * len(pivot_words)
            for t, w in enumerate(words):
                if w in pivot_pos:
                    coords[pivot_pos[w]] = vec[t]
                elif vec[t]:
                    raise AssertionError(
                        "reduction left mass outside the pivot words")
            comps[sign] = coords
        coords = [PiScalar(p, m) for p, m in zip(comps[1], comps[-1])]
        return pivot_words, coords

    def reduce_element(self, x):
        """The canonical pivot-word representative of x's class."""
        if x.is_zero():
            return FreeElement()
        out = FreeElement()
        for nu, part in x.graded(self.datum.rank).items():
            pivot_words, coords = self.reduce_at(part, nu)
            for w, c in zip(pivot_words, coords):
                if not c.is_zero():
                    out = out + FreeElement({w: c})
        return out

    def is_zero_in_f(self, x):
        if x.is_zero():
            return True
        for nu, part in x.graded(self.datum.rank).items():
            _, coords = self.reduce_at(part, nu)
            if any(not c.is_zero() for c in coords):
                return False
        return True

    def equal_in_f(self, x, y):
        return self.is_zero_in_f(x - y)

    # --- Serre elements and verifications -------------------------------------------

    def serre_element(self, i, j):
        """Sum_k (-1)^k pi^{C(k,2)p(i)+k p(i)p(j)} [b,k]_{v_i}
        theta_i^{b-k} theta_j theta_i^k with b = 1 - a_ij."""
        if i == j:
            raise ValueError("Serre elements need two distinct indices")
        datum = self.datum
        b = 1 - datum.a(i, j)
        di = datum.d(i)
        out = FreeElement()
        for k in range(b + 1):
            word = (i,) * (b - k) + (j,) + (i,) * k
            pi_exp = comb(k, 2) * datum.p(i) + k * datum.p(i) * datum.p(j)
            coeff = qbinomial(b, k, di) * PiScalar.pi_power(pi_exp)
            if k % 2:
                coeff = -coeff
            out = out + FreeElement({word: coeff})
        return out

    def serre_element_twisted(self, i, j, mutate=False):
        """The *-product Serre combination with twisted coefficients,
        expanded into plain products.  With mutate=True one term's
        t-exponent is deliberately off by one (negative control)."""
        if i == j:
            raise ValueError("Serre elements need two distinct indices")
        datum = self.datum
        F = self.free
        b = 1 - datum.a(i, j)
        di = datum.d(i)
        out = FreeElement()
        for k in range(b + 1):
            left = F.one()
            for _ in range(b - k):
                left = F.star_mul(left, F.theta(i))
            mid = F.star_mul(left, F.theta(j))
            term = mid
            for _ in range(k):
                term = F.star_mul(term, F.theta(i))
            pi_exp = comb(k, 2) * datum.p(i) + k * datum.p(i) * datum.p(j)
            coeff = qbinomial(b, k, di).twist() * \
                (-PiScalar.pi_power(1)) ** pi_exp
            if k % 2:
                coeff = -coeff
            if mutate and k == min(1, b):
                coeff = coeff * PiScalar.t_power(1)
            out = out + term.scale(coeff)
        return out

    def verify_twistor_serre(self, i, j, mutate=False):
        """The twisted Serre combination must vanish in f."""
        return self.is_zero_in_f(self.serre_element_twisted(i, j, mutate))

    def verify_rho_psi(self, x):
        """twistor(rho(twistor_inv(x))) = (-1)^{N(nu)/2 + p(nu)} rho(x) in f."""
        F = self.free
        nu = x.homogeneous_weight(self.datum.rank)
        n_half = stats_N(self.datum, nu) // 2
        sign_exp = n_half + stats_p(self.datum, nu)
        lhs = F.twistor(F.rho(F.twistor_inv(x)))
        rhs = F.rho(x)
        if sign_exp % 2:
            rhs = -rhs
        return self.equal_in_f(lhs, rhs)
