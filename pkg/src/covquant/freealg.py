"""Weight-graded free algebra on the generators theta_i over the pi-ring.

Words are tuples of index positions (file order of the datum's index
list).  Elements map words to PiScalar coefficients; zero coefficients
are never stored.  All operations are pure; the pairing accepts an
external memo dict so a quotient context can own the cache.
"""

from .cartan import weight_add
from .scalars import PS_ONE, PS_ZERO, PiScalar


class FreeElement:
    """Finite linear combination of words with PiScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                if not c.is_zero():
                    acc = clean.get(w)
                    c = c if acc is None else acc + c
                    if c.is_zero():
                        clean.pop(w, None)
                    else:
                        clean[w] = c
        self.terms = clean

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        res = FreeElement()
        res.terms = out
        return res

    def __sub__(self, other):
        return self + other.scale(-PS_ONE)

    def __neg__(self):
        return self.scale(-PS_ONE)

    def scale(self, c):
        if c.is_zero():
            return FreeElement()
        res = FreeElement()
        res.terms = {w: s * c for w, s in self.terms.items()}
        return res

    def words(self):
        return sorted(self.terms)

    def coefficient(self, word):
        return self.terms.get(word, PS_ZERO)

    def homogeneous_weight(self, rank):
        """The common weight of all words; ValueError if mixed or zero."""
        weights = {word_weight(w, rank) for w in self.terms}
        if len(weights) != 1:
            raise ValueError("element is not homogeneous")
        return weights.pop()

    def graded(self, rank):
        """Split into weight -> homogeneous part."""
        parts = {}
        for w, c in self.terms.items():
            nu = word_weight(w, rank)
            parts.setdefault(nu, {})[w] = c
        out = {}
        for nu, terms in parts.items():
            el = FreeElement()
            el.terms = terms
            out[nu] = el
        return out

    def map_coefficients(self, f):
        res = FreeElement()
        res.terms = {}
        for w, c in self.terms.items():
            fc = f(c)
            if not fc.is_zero():
                res.terms[w] = fc
        return res

    def __repr__(self):
        if not self.terms:
            return "FreeElement(0)"
        bits = [f"{w}: {c!r}" for w, c in sorted(self.terms.items())]
        return "FreeElement({" + ", ".join(bits) + "})"


def word_weight(word, rank):
    counts = [0] * rank
    for k in word:
        counts[k] += 1
    return tuple(counts)


def word_parity(word, datum):
    return sum(datum.parity[k] for k in word) % 2


class FreeAlgebra:
    """Operation bundle for a fixed datum and twist form."""

    def __init__(self, datum, twist_form):
        self.datum = datum
        self.tf = twist_form
        self.rank = datum.rank

    # --- constructors ---------------------------------------------------

    def zero(self):
        return FreeElement()

    def one(self):
        return FreeElement({(): PS_ONE})

    def theta(self, k):
        return FreeElement({(k,): PS_ONE})

    def monomial(self, word, coeff=PS_ONE):
        return FreeElement({tuple(word): coeff})

    # --- products ---------------------------------------------------------

    def mul(self, x, y):
        out = {}
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        res = FreeElement()
        res.terms = out
        return res

    def star_mul(self, x, y):
        """Twisted product: t^{phi(|x|,|y|)} xy on homogeneous pieces."""
        out = FreeElement()
        for w1, c1 in x.terms.items():
            nu1 = word_weight(w1, self.rank)
            for w2, c2 in y.terms.items():
                nu2 = word_weight(w2, self.rank)
                e = self.tf.phi(nu1, nu2)
                out = out + FreeElement(
                    {w1 + w2: c1 * c2 * PiScalar.t_power(e)})
        return out

    def power(self, x, n):
        acc = self.one()
        for _ in range(n):
            acc = self.mul(acc, x)
        return acc

    def divided_power(self, k, n):
        """theta_k^n / <n>!_{v_k, pi_k}."""
        from .scalars import qfactorial
        fact = qfactorial(n, self.datum.d(k))
        if not fact.plus or not fact.minus:
            raise ArithmeticError("quantum factorial has a zero component")
        return FreeElement({(k,) * n: PS_ONE / fact})

    # --- the derivation and the bilinear form ------------------------------

    def eprime_word(self, k, word):
        """e_k' of a single word as {word: PiScalar}; removes one
        occurrence of k with the accumulated commutation factor."""
        dot = self.datum.dot
        par = self.datum.parity
        out = {}
        pi_exp = 0
        v_exp = 0
        for t, letter in enumerate(word):
            if letter == k:
                rest = word[:t] + word[t + 1:]
                c = PiScalar.pi_power(pi_exp) * PiScalar.v_power(v_exp)
                s = out.get(rest)
                out[rest] = c if s is None else s + c
            pi_exp += par[k] * par[letter]
            v_exp -= dot[k][letter]
        return out

    def e_prime(self, k, x):
        out = FreeElement()
        for w, c in x.terms.items():
            for rest, s in self.eprime_word(k, w).items():
                out = out + FreeElement({rest: c * s})
        return out

    def pair_words(self, w1, w2, memo=None):
        """Recursive bilinear form on two words."""
        if len(w1) != len(w2):
            return PS_ZERO
        if not w1:
            return PS_ONE
        if memo is None:
            memo = {}
        return self._pair_words(w1, w2, memo)

    def _pair_words(self, w1, w2, memo):
        if not w1:
            return PS_ONE
        key = (w1, w2)
        hit = memo.get(key)
        if hit is not None:
            return hit
        k = w1[0]
        tail = w1[1:]
        acc = PS_ZERO
        for rest, s in self.eprime_word(k, w2).items():
            acc = acc + s * self._pair_words(tail, rest, memo)
        memo[key] = acc
        return acc

    def pairing(self, x, y, memo=None):
        if memo is None:
            memo = {}
        acc = PS_ZERO
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                if len(w1) != len(w2):
                    continue
                acc = acc + c1 * c2 * self._pair_words(w1, w2, memo)
        return acc

    # --- (anti)automorphisms ----------------------------------------------

    def rho(self, x):
        res = FreeElement()
        out = {}
        for w, c in x.terms.items():
            rw = w[::-1]
            s = out.get(rw)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(rw, None)
            else:
                out[rw] = s
        res.terms = out
        return res

    def bar(self, x):
        return x.map_coefficients(lambda c: c.bar())

    def word_twist_exponent(self, word):
        """e(w) = sum over r < s of phi(w_r, w_s)."""
        table = self.tf._table
        e = 0
        for r in range(len(word)):
            row = table[word[r]]
            for s in range(r + 1, len(word)):
                e += row[word[s]]
        return e

    def twistor(self, x):
        """Diagonal twistor: c_w w -> twist(c_w) t^{e(w)} w."""
        res = FreeElement()
        res.terms = {}
        for w, c in x.terms.items():
            tc = c.twist() * PiScalar.t_power(self.word_twist_exponent(w))
            if not tc.is_zero():
                res.terms[w] = tc
        return res

    def twistor_inv(self, x):
        res = FreeElement()
        res.terms = {}
        for w, c in x.terms.items():
            tc = c.twist_inv() * PiScalar.t_power(
                -self.word_twist_exponent(w))
            if not tc.is_zero():
                res.terms[w] = tc
        return res

    # --- word enumeration ---------------------------------------------------

    def words_of_weight(self, nu):
        """All words of the given weight, lexicographic order."""
        out = []

        def go(prefix, counts):
            if all(c == 0 for c in counts):
                out.append(tuple(prefix))
                return
            for k in range(self.rank):
                if counts[k]:
                    counts[k] -= 1
                    prefix.append(k)
                    go(prefix, counts)
                    prefix.pop()
                    counts[k] += 1

        go([], list(nu))
        return out

    def weights_up_to_height(self, h):
        """All nonzero weights of height <= h, ordered by (height, lex)."""
        out = []
        level = [tuple([0] * self.rank)]
        for _ in range(h):
            nxt = set()
            for nu in level:
                for k in range(self.rank):
                    nxt.add(weight_add(nu, tuple(
                        1 if t == k else 0 for t in range(self.rank))))
            level = sorted(nxt)
            out.extend(level)
        return out


# --- rendering and parsing (golden-file contract) ---------------------------

def render_word(datum, word):
    if not word:
        return "1"
    return "".join(f"θ[{datum.indices[k]}]" for k in word)


def parse_word(datum, text):
    text = text.strip()
    if text == "1":
        return ()
    out = []
    pos = 0
    index_of = {name: k for k, name in enumerate(datum.indices)}
    while pos < len(text):
        if not text.startswith("θ[", pos):
            raise ValueError(f"malformed word at position {pos}: {text!r}")
        end = text.index("]", pos)
        name = text[pos + 2:end]
        if name not in index_of:
            raise ValueError(f"unknown index {name!r} in word {text!r}")
        out.append(index_of[name])
        pos = end + 1
    return tuple(out)


def render_element(datum, x):
    """List of (word, scalar) pairs sorted lexicographically by word."""
    from .scalars import render_scalar
    return [[render_word(datum, w), render_scalar(x.terms[w])]
            for w in sorted(x.terms)]


def parse_element(datum, data):
    from .scalars import parse_scalar
    terms = {}
    for word_text, scalar_data in data:
        w = parse_word(datum, word_text)
        c = parse_scalar(scalar_data)
        if w in terms:
            raise ValueError(f"duplicate word {word_text!r}")
        terms[w] = c
    return FreeElement(terms)
