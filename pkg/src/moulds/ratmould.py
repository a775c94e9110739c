"""Exact rational moulds.

A rational mould of arity ``n`` is a finite sum of fraction terms

    coeff * u_{i1} * ... * u_{ik} / (L_1 * ... * L_r)

where each ``L_j`` is a linear form with integer coefficients in the
variables ``u_1 .. u_n``.  Every mould in this package has that shape, so
there is never any need for general multivariate gcds.

Terms are kept in a canonical form (primitive denominator forms with a
positive leading coefficient, numerator variables cancelled against equal
single-variable forms, like terms merged), which makes structural equality
meaningful.  Identity of rational functions that are written differently is
decided by :func:`equal`, a Schwartz-Zippel test over exact rationals.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import HigherPoleError, NotInSpanError, PoleError

DEFAULT_SEED = 20080117
SAMPLE_BOUND = 10**4
MAX_REDRAWS = 100


@dataclass(frozen=True, order=True)
class LinearForm:
    """Integer linear combination of the variables; ``coeffs`` is index-sorted."""

    coeffs: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> LinearForm:
        return cls(tuple(sorted((i, c) for i, c in mapping.items() if c)))

    @classmethod
    def sum_of(cls, indices: Iterable[int]) -> LinearForm:
        return cls.of(Counter(indices))

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.coeffs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def evaluate(self, point: Sequence) -> Fraction:
        return sum((c * point[i - 1] for i, c in self.coeffs), Fraction(0))

    def normalized(self) -> tuple[int, LinearForm]:
        """Split as ``factor * primitive`` with a positive leading coefficient."""
        if not self.coeffs:
            raise PoleError("empty linear form in a denominator")
        g = 0
        for _, c in self.coeffs:
            g = gcd(g, c)
        if self.coeffs[0][1] < 0:
            g = -g
        if g == 1:
            return 1, self
        return g, LinearForm(tuple((i, c // g) for i, c in self.coeffs))

    def is_single(self, var: int) -> bool:
        return self.coeffs == ((var, 1),)

    def __str__(self) -> str:
        parts = []
        for k, (i, c) in enumerate(self.coeffs):
            sign = "-" if c < 0 else ("+" if k else "")
            mag = abs(c)
            parts.append(f"{sign}{'' if mag == 1 else mag}u{i}")
        return "".join(parts)


Monomial = tuple[int, ...]
Denominator = tuple[LinearForm, ...]
TermKey = tuple[Monomial, Denominator]


@dataclass(frozen=True)
class FractionTerm:
    coeff: object
    monomial: Monomial
    denominator: Denominator

    @property
    def key(self) -> TermKey:
        return self.monomial, self.denominator

    def evaluate(self, point: Sequence, cache: dict | None = None):
        value = self.coeff
        for i in self.monomial:
            value = value * point[i - 1]
        for form in self.denominator:
            if cache is not None and form in cache:
                d = cache[form]
            else:
                d = form.evaluate(point)
                if cache is not None:
                    cache[form] = d
            if d == 0:
                raise PoleError(f"{form} vanishes at {list(map(str, point))}")
            value = value / d
        return value


def _canonical_term(coeff, monomial: Iterable[int], forms: Iterable[LinearForm]):
    """Return ``(coeff, key)`` for a raw term, or ``None`` when it is zero."""
    if coeff == 0:
        return None
    if isinstance(coeff, int):
        coeff = Fraction(coeff)
    den = []
    for form in forms:
        factor, prim = form.normalized()
        if factor != 1:
            coeff = coeff / factor
        den.append(prim)
    mono = list(monomial)
    if mono and den:
        # u_i / (u_i * rest) -> 1 / rest
        singles = Counter(f.coeffs[0][0] for f in den if len(f.coeffs) == 1)
        if singles:
            kept = []
            for i in mono:
                if singles.get(i):
                    singles[i] -= 1
                    den.remove(LinearForm(((i, 1),)))
                else:
                    kept.append(i)
            mono = kept
    return coeff, (tuple(sorted(mono)), tuple(sorted(den)))


class RatMould:
    """A homogeneous-arity rational mould in canonical form.

    Instances are immutable; all operations return new moulds.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Iterable[FractionTerm] = ()):
        acc: dict[TermKey, object] = {}
        for t in terms:
            _accumulate(acc, t.coeff, t.monomial, t.denominator)
        self._set(arity, acc)

    def _set(self, arity: int, acc: Mapping[TermKey, object]) -> None:
        self.arity = arity
        self.terms = tuple(
            FractionTerm(c, k[0], k[1]) for k, c in sorted(acc.items(), key=lambda kv: kv[0]) if c != 0
        )

    @classmethod
    def _from_acc(cls, arity: int, acc: Mapping[TermKey, object]) -> RatMould:
        m = cls.__new__(cls)
        m._set(arity, acc)
        return m

    @classmethod
    def from_raw(cls, arity: int, raw: Iterable[tuple[object, Iterable[int], Iterable[LinearForm]]]) -> RatMould:
        """Build from ``(coeff, monomial indices, denominator forms)`` triples."""
        acc: dict[TermKey, object] = {}
        for coeff, mono, forms in raw:
            _accumulate(acc, coeff, mono, forms)
        return cls._from_acc(arity, acc)

    @classmethod
    def zero(cls, arity: int) -> RatMould:
        return cls._from_acc(arity, {})

    @classmethod
    def constant(cls, value, arity: int = 0) -> RatMould:
        return cls.from_raw(arity, [(value, (), ())])

    def as_dict(self) -> dict[TermKey, object]:
        return {t.key: t.coeff for t in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        # structural equality of canonical forms; see equal() for identity of functions
        if not isinstance(other, RatMould):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, self.terms))

    def __add__(self, other: RatMould) -> RatMould:
        if not isinstance(other, RatMould):
            return NotImplemented
        _check_arity(self, other)
        acc = self.as_dict()
        for t in other.terms:
            acc[t.key] = acc.get(t.key, 0) + t.coeff
        return RatMould._from_acc(self.arity, acc)

    def __neg__(self) -> RatMould:
        return RatMould._from_acc(self.arity, {t.key: -t.coeff for t in self.terms})

    def __sub__(self, other: RatMould) -> RatMould:
        return self + (-other)

    def __mul__(self, scalar) -> RatMould:
        if isinstance(scalar, RatMould):
            return NotImplemented
        if scalar == 0:
            return RatMould.zero(self.arity)
        return RatMould._from_acc(self.arity, {t.key: t.coeff * scalar for t in self.terms})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> RatMould:
        return self * (1 / Fraction(scalar) if isinstance(scalar, int) else 1 / scalar)

    def __repr__(self) -> str:
        from .textio import format_mould

        return f"RatMould({self.arity}, {format_mould(self)!r})"

    def __str__(self) -> str:
        from .textio import format_mould

        return format_mould(self)


def _accumulate(acc: dict, coeff, mono, forms) -> None:
    ct = _canonical_term(coeff, mono, forms)
    if ct is not None:
        c, key = ct
        acc[key] = acc.get(key, 0) + c


def _check_arity(a: RatMould, b: RatMould) -> None:
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} vs {b.arity}")


# ---------------------------------------------------------------- constructors


def perm_mould(sigma: Sequence[int]) -> RatMould:
    """``f_sigma = 1 / (u_s1 (u_s1 + u_s2) ... (u_s1 + ... + u_sn))``."""
    forms = [LinearForm.sum_of(sigma[: k + 1]) for k in range(len(sigma))]
    return RatMould.from_raw(len(sigma), [(Fraction(1), (), forms)])


def uniform_mould(n: int) -> RatMould:
    return RatMould.from_raw(n, [(Fraction(1), (), [LinearForm.sum_of([i]) for i in range(1, n + 1)])])


# ------------------------------------------------------------------ evaluation


def eval_mould(m: RatMould, point: Sequence):
    """Exact value at ``point``; raises :class:`PoleError` on a vanishing form."""
    if len(point) != m.arity:
        raise ValueError(f"point has length {len(point)}, mould arity is {m.arity}")
    point = [p if not isinstance(p, int) else Fraction(p) for p in point]
    cache: dict = {}
    total = Fraction(0)
    for t in m.terms:
        total = total + t.evaluate(point, cache)
    return total


def random_point(arity: int, rng: random.Random) -> list[Fraction]:
    return [Fraction(rng.randint(1, SAMPLE_BOUND)) for _ in range(arity)]


def equal(a: RatMould, b: RatMould, trials: int = 20, seed: int = DEFAULT_SEED) -> bool:
    """Decide whether ``a`` and ``b`` are the same rational function.

    Exact when the canonical forms coincide or when every term of ``a - b``
    shares one denominator; otherwise probabilistic with ``trials`` random
    integer points in ``[1, 10^4]^n`` (Schwartz-Zippel).
    """
    _check_arity(a, b)
    diff = a - b
    if diff.is_zero():
        return True
    if len({t.denominator for t in diff.terms}) == 1:
        return False
    rng = random.Random(seed)
    for _ in range(trials):
        if _eval_random(diff, rng) != 0:
            return False
    return True


def _eval_random(m: RatMould, rng: random.Random):
    for _ in range(MAX_REDRAWS):
        try:
            return eval_mould(m, random_point(m.arity, rng))
        except PoleError:
            continue
    raise PoleError(f"no pole-free point found in {MAX_REDRAWS} draws")


# ---------------------------------------------------------------- substitution


def _expand_product(factors: Iterable[Mapping[int, int]]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {(): 1}
    for f in factors:
        nxt: dict[Monomial, int] = defaultdict(int)
        for mono, c in out.items():
            for i, a in f.items():
                nxt[tuple(sorted(mono + (i,)))] += c * a
        out = {k: v for k, v in nxt.items() if v}
    return out


def _subst_form(form: LinearForm, images: Sequence[Mapping[int, int]]) -> LinearForm:
    acc: dict[int, int] = defaultdict(int)
    for i, c in form.coeffs:
        for j, a in images[i - 1].items():
            acc[j] += c * a
    return LinearForm.of(acc)


def substitute(m: RatMould, images: Sequence[Mapping[int, int]], arity: int) -> RatMould:
    """Linear change of variables ``u_k <- sum_j images[k-1][j] * u_j``.

    The result is a mould of the given ``arity``.  Numerator monomials become
    products of linear forms and are expanded.
    """
    if len(images) != m.arity:
        raise ValueError("one image per variable is required")
    form_cache: dict[LinearForm, LinearForm] = {}
    raw = []
    for t in m.terms:
        forms = []
        for f in t.denominator:
            g = form_cache.get(f)
            if g is None:
                g = form_cache[f] = _subst_form(f, images)
            forms.append(g)
        if t.monomial:
            for mono, c in _expand_product(images[i - 1] for i in t.monomial).items():
                raw.append((t.coeff * c, mono, forms))
        else:
            raw.append((t.coeff, (), forms))
    return RatMould.from_raw(arity, raw)


def relabel(m: RatMould, mapping: Sequence[int], arity: int) -> RatMould:
    """Rename variable ``u_k`` to ``u_{mapping[k-1]}``."""
    return substitute(m, [{j: 1} for j in mapping], arity)


def permute_variables(m: RatMould, word: Sequence[int]) -> RatMould:
    """``m(u_{w1}, ..., u_{wn})``."""
    return relabel(m, word, m.arity)


def reverse_variables(m: RatMould) -> RatMould:
    """``m(u_n, ..., u_1)``."""
    return permute_variables(m, range(m.arity, 0, -1))


def multiply(a: RatMould, b: RatMould) -> RatMould:
    """Pointwise product of two moulds of the same arity."""
    _check_arity(a, b)
    raw = [
        (s.coeff * t.coeff, s.monomial + t.monomial, s.denominator + t.denominator)
        for s in a.terms
        for t in b.terms
    ]
    return RatMould.from_raw(a.arity, raw)


def concat_product(a: RatMould, b: RatMould) -> RatMould:
    """``a(u_1..u_m) * b(u_{m+1}..u_{m+n})``."""
    n = a.arity + b.arity
    return multiply(relabel(a, range(1, a.arity + 1), n), relabel(b, range(a.arity + 1, n + 1), n))


def multiply_by_form(m: RatMould, form: LinearForm) -> RatMould:
    """Multiply by a linear form, cancelling it against an equal denominator form."""
    factor, prim = form.normalized()
    raw = []
    for t in m.terms:
        if prim in t.denominator:
            den = list(t.denominator)
            den.remove(prim)
            raw.append((t.coeff * factor, t.monomial, den))
        else:
            for i, c in form.coeffs:
                raw.append((t.coeff * c, t.monomial + (i,), t.denominator))
    return RatMould.from_raw(m.arity, raw)


# -------------------------------------------------------------------- residues


def _residue_term(coeff, mono: Monomial, den: Denominator, var: int):
    if var in mono:
        return None
    single = LinearForm(((var, 1),))
    hits = den.count(single)
    if hits == 0:
        return None
    if hits > 1:
        raise HigherPoleError(f"pole of order {hits} in u{var}")
    forms = []
    for f in den:
        if f == single:
            continue
        if var in f.variables:
            f = LinearForm(tuple((i, c) for i, c in f.coeffs if i != var))
        forms.append(f)
    return coeff, mono, forms


def residue_step(m: RatMould, var: int) -> RatMould:
    """``(u_var * m)`` restricted to ``u_var = 0``, term by term.

    Requires every term to have at most a simple pole along ``u_var = 0``.
    The arity is unchanged; ``u_var`` simply no longer occurs.
    """
    if not 1 <= var <= m.arity:
        raise IndexError(f"variable u{var} out of range for arity {m.arity}")
    raw = []
    for t in m.terms:
        r = _residue_term(t.coeff, t.monomial, t.denominator, var)
        if r is not None:
            raw.append(r)
    return RatMould.from_raw(m.arity, raw)


def iterated_residue(m: RatMould, order: Sequence[int]):
    """Constant left after taking residues along ``order`` (a permutation)."""
    for v in order:
        m = residue_step(m, v)
        if m.is_zero():
            return Fraction(0)
    return sum((t.coeff for t in m.terms if not t.monomial and not t.denominator), Fraction(0))


def _decompose_into(m: RatMould, alive: tuple[int, ...], prefix: tuple[int, ...], out: dict) -> None:
    if not alive:
        c = sum((t.coeff for t in m.terms if not t.monomial and not t.denominator), Fraction(0))
        if c != 0:
            out[prefix] = c
        return
    for v in alive:
        r = residue_step(m, v)
        if not r.is_zero():
            _decompose_into(r, tuple(x for x in alive if x != v), prefix + (v,), out)


def decompose_fsym(m: RatMould, verify: bool = True, seed: int = DEFAULT_SEED):
    """Write ``m`` as a combination of the permutational moulds ``f_sigma``.

    The coefficient of ``f_sigma`` is the iterated residue of ``m`` at
    ``u_{sigma_1} = 0``, then ``u_{sigma_2} = 0``, and so on; residue chains
    sharing a prefix are computed once.  With ``verify`` the result is
    compared back against ``m`` and :class:`NotInSpanError` is raised when
    the two differ.
    """
    from .fqsym import FQSymElement, to_rational

    out: dict[tuple[int, ...], object] = {}
    _decompose_into(m, tuple(range(1, m.arity + 1)), (), out)
    elem = FQSymElement(m.arity, out)
    if verify and not equal(to_rational(elem), m, seed=seed):
        raise NotInSpanError("mould is not in the span of the permutational moulds")
    return elem


# -------------------------------------------------------- operadic structure


def compose_at(f: RatMould, i: int, g: RatMould) -> RatMould:
    """Operadic composition ``f o_i g``.

    ``(u_i+...+u_{i+n-1}) * f(u_1..u_{i-1}, U, u_{i+n}..) * g(u_i..u_{i+n-1})``
    with ``U = u_i + ... + u_{i+n-1}`` and ``n`` the arity of ``g``.
    """
    m, n = f.arity, g.arity
    if not 1 <= i <= m:
        raise IndexError(f"slot {i} out of range 1..{m}")
    if n < 1:
        raise ValueError("inner mould must have arity >= 1")
    arity = m + n - 1
    block = range(i, i + n)
    images: list[dict[int, int]] = []
    for k in range(1, m + 1):
        if k < i:
            images.append({k: 1})
        elif k == i:
            images.append({j: 1 for j in block})
        else:
            images.append({k + n - 1: 1})
    outer = substitute(f, images, arity)
    inner = relabel(g, block, arity)
    return multiply_by_form(multiply(outer, inner), LinearForm.sum_of(block))


def gamma(m: RatMould) -> RatMould:
    """Cyclic action ``f(u_1..u_n) -> f(u_2, .., u_n, -u_1 - ... - u_n)``."""
    n = m.arity
    if n < 1:
        raise ValueError("gamma needs arity >= 1")
    images = [{k + 1: 1} for k in range(1, n)]
    images.append({j: -1 for j in range(1, n + 1)})
    return substitute(m, images, n)


def over(f: RatMould, g: RatMould) -> RatMould:
    """``(f/g)(u) = f(u_1..u_n) * g(u_1+...+u_{n+1}, u_{n+2}, ..)``."""
    n, m = f.arity, g.arity
    arity = n + m
    images = [{j: 1 for j in range(1, n + 2)}] + [{n + k: 1} for k in range(2, m + 1)]
    return multiply(relabel(f, range(1, n + 1), arity), substitute(g, images, arity))


def under(f: RatMould, g: RatMould) -> RatMould:
    """``(f\\g)(u) = f(u_1..u_{n-1}, u_n+...+u_{n+m}) * g(u_{n+1}..u_{n+m})``."""
    n, m = f.arity, g.arity
    arity = n + m
    images = [{k: 1} for k in range(1, n)] + [{j: 1 for j in range(n, arity + 1)}]
    return multiply(substitute(f, images, arity), relabel(g, range(n + 1, arity + 1), arity))


# ------------------------------------------------------------ scalar operator


def compositions(k: int, parts: int | None = None):
    """Compositions of ``k``, optionally with a fixed number of parts."""
    if k == 0:
        if not parts:
            yield ()
        return
    if parts == 0:
        return
    for first in range(1, k + 1):
        for rest in compositions(k - first, None if parts is None else parts - 1):
            yield (first,) + rest


def scalar_apply(family, a: Sequence, N: int) -> list:
    """Coefficients ``c_1..c_N`` of ``F[h]`` for a commutative input.

    ``family(n)`` returns the arity-``n`` component of the mould and
    ``a[i-1]`` is the coefficient of ``t^(i-1)`` in ``h``.  Tuples whose
    product of ``a``'s vanishes are skipped, so poles there are harmless.
    """
    coeffs = list(a) + [0] * max(0, N - len(a))
    out = []
    cache: dict[int, RatMould] = {}
    for k in range(1, N + 1):
        total = Fraction(0)
        for comp in compositions(k):
            weight = Fraction(1)
            for i in comp:
                weight = weight * coeffs[i - 1]
                if weight == 0:
                    break
            if weight == 0:
                continue
            n = len(comp)
            if n not in cache:
                cache[n] = family(n)
            total = total + eval_mould(cache[n], comp) * weight
        out.append(total)
    return out
