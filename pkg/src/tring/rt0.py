"""The t0-extension of the graded family ring and its two products.

Elements are finite families (f_n) with f_n in I_n[t0]: each term of f_n
carries positive exponents on exactly t1, ..., tn plus an arbitrary t0
power.  Three structures live here:

* the commutative "dot" product, extending the covering-pair product
  with t0 as a free scalar variable;
* the involution iota, determined by t0 -> -(t0+t1) together with
  reversal of the interval variables on each component;
* the non-commutative, degree-raising "odot" product, computed through
  its finite truncations and decoded back into components.

Monomials t0^a0 * t1^a1 * ... * tn^an (a_i >= 1) form a vector-space
basis; in each total degree n there are exactly 2^n of them, and the
words t0^a1 (*) ... (*) t0^ar of odot-factors form a second basis, which
the expansion routines convert to and from.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from . import base as base_algebra
from .linalg import solve_exact
from .poly import (
    Mono,
    Polynomial,
    ScalarLike,
    mono_degree,
    mono_str,
    positive_support,
)
from .ring import (
    Components,
    NotInRingError,
    RElement,
    _check_component_t0,
    add_components,
    decode_components,
    multiply_components,
    normalize_components,
    project_components,
    scale_components,
)


class InvalidElementError(ValueError):
    """A polynomial has a term that belongs to no component I_n[t0]."""


class ConsistencyError(RuntimeError):
    """Two independent computation paths disagree; indicates a bug."""


class RT0Element:
    """A finite family (f_n) with f_n in I_n[t0]."""

    __slots__ = ("components", "_hash")

    def __init__(self, components: Mapping[int, Polynomial]):
        for n, p in components.items():
            if p and not _check_component_t0(n, p):
                raise InvalidElementError(
                    f"component {n} does not have support t1..t{n}: {p}"
                )
        self.components = normalize_components(components)

    @classmethod
    def _raw(cls, components: Components) -> "RT0Element":
        elt = cls.__new__(cls)
        elt.components = components
        return elt

    @classmethod
    def zero(cls) -> "RT0Element":
        return cls._raw({})

    @classmethod
    def one(cls) -> "RT0Element":
        return cls._raw({0: Polynomial.one()})

    @classmethod
    def scalar(cls, c: ScalarLike) -> "RT0Element":
        c = Fraction(c)
        return cls._raw({0: Polynomial.const(c)} if c else {})

    @classmethod
    def t0_power(cls, a: int) -> "RT0Element":
        return cls._raw({0: Polynomial.variable(0, a)})

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RT0Element":
        """Group the terms of p by the length of their variable prefix.

        Every term must use a contiguous block t1, ..., tn of interval
        variables; a gap such as t1*t3 is rejected by name.
        """
        grouped: dict[int, dict[Mono, Fraction]] = {}
        for mono, coeff in p.terms.items():
            support = positive_support(mono)
            n = len(support)
            if support != frozenset(range(1, n + 1)):
                raise InvalidElementError(
                    f"not a valid element: monomial {mono_str(mono)} "
                    f"skips an interval variable"
                )
            grouped.setdefault(n, {})[mono] = coeff
        return cls._raw({n: Polynomial(terms) for n, terms in grouped.items()})

    @classmethod
    def from_relement(cls, f: RElement) -> "RT0Element":
        return cls._raw(dict(f.components))

    @classmethod
    def from_text(cls, text: str) -> "RT0Element":
        from .poly import parse_polynomial

        return cls.from_polynomial(parse_polynomial(text))

    # -- views -----------------------------------------------------------

    def to_polynomial(self) -> Polynomial:
        out = Polynomial.zero()
        for p in self.components.values():
            out = out + p
        return out

    def __str__(self) -> str:
        return str(self.to_polynomial())

    def __repr__(self) -> str:
        return f"RT0Element({str(self)!r})"

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self) -> bool:
        return bool(self.components)

    def degree(self) -> int:
        if not self.components:
            return -1
        return max(p.total_degree() for p in self.components.values())

    def is_homogeneous(self) -> bool:
        degrees = {
            mono_degree(m) for p in self.components.values() for m in p.terms
        }
        return len(degrees) <= 1

    def homogeneous_parts(self) -> dict[int, "RT0Element"]:
        parts: dict[int, dict[int, dict[Mono, Fraction]]] = {}
        for n, p in self.components.items():
            for mono, coeff in p.terms.items():
                parts.setdefault(mono_degree(mono), {}).setdefault(n, {})[
                    mono
                ] = coeff
        return {
            deg: RT0Element._raw(
                {n: Polynomial(terms) for n, terms in comps.items()}
            )
            for deg, comps in sorted(parts.items())
        }

    def t0_free(self) -> bool:
        return all(
            all(var for var, _ in mono)
            for p in self.components.values()
            for mono in p.terms
        )

    def t0_coefficients(self) -> dict[int, RElement]:
        """Write the element as sum_a t0^a * h_a with t0-free h_a."""
        split: dict[int, Components] = {}
        for n, p in self.components.items():
            for mono, coeff in p.terms.items():
                a0 = 0
                rest = mono
                if mono and mono[0][0] == 0:
                    a0 = mono[0][1]
                    rest = mono[1:]
                comp = split.setdefault(a0, {})
                comp[n] = comp.get(n, Polynomial.zero()) + Polynomial(
                    {rest: coeff}
                )
        return {
            a0: RElement._raw(normalize_components(comps))
            for a0, comps in sorted(split.items())
        }

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "RT0Element") -> "RT0Element":
        return RT0Element._raw(add_components(self.components, other.components))

    def __sub__(self, other: "RT0Element") -> "RT0Element":
        return self + other.scale(-1)

    def __neg__(self) -> "RT0Element":
        return self.scale(-1)

    def scale(self, c: ScalarLike) -> "RT0Element":
        return RT0Element._raw(scale_components(self.components, Fraction(c)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RT0Element):
            return self.components == other.components
        return NotImplemented

    def __hash__(self) -> int:
        cached = getattr(self, "_hash", None)
        if cached is None:
            cached = hash(frozenset(self.components.items()))
            self._hash = cached
        return cached

    # -- products ------------------------------------------------------------

    def dot(self, other: "RT0Element") -> "RT0Element":
        return dot_mul(self, other)

    def odot(self, other: "RT0Element") -> "RT0Element":
        return odot(self, other)


def dot_mul(x: RT0Element, y: RT0Element) -> RT0Element:
    """Commutative product; t0 powers add, interval parts merge over
    covering pairs of increasing maps."""
    return RT0Element._raw(multiply_components(x.components, y.components))


def dot_power(x: RT0Element, exp: int) -> RT0Element:
    if exp < 0:
        raise ValueError("negative power")
    out = RT0Element.one()
    for _ in range(exp):
        out = dot_mul(out, x)
    return out


@lru_cache(maxsize=None)
def _neg_t0_t1_power(exp: int) -> RT0Element:
    return dot_power(RT0Element.from_text("-t0-t1"), exp)


@lru_cache(maxsize=None)
def _psi1_power(exp: int) -> RT0Element:
    return dot_power(RT0Element.from_text("t0+t1"), exp)


def iota(x: RT0Element) -> RT0Element:
    """The involution: t0 -> -(t0+t1) as a dot-power, interval variables
    reversed on each component.

    It is a ring homomorphism for the dot product and an
    anti-homomorphism for odot; applying it twice gives the identity.
    """
    out = RT0Element.zero()
    for n, p in x.components.items():
        reversal = {i: n - i + 1 for i in range(1, n + 1)}
        by_t0: dict[int, dict[Mono, Fraction]] = {}
        for mono, coeff in p.terms.items():
            a0 = 0
            rest = mono
            if mono and mono[0][0] == 0:
                a0 = mono[0][1]
                rest = mono[1:]
            by_t0.setdefault(a0, {})[rest] = coeff
        for a0, terms in by_t0.items():
            reversed_part = RT0Element._raw(
                {n: Polynomial(terms).rename(reversal)}
            )
            out = out + dot_mul(_neg_t0_t1_power(a0), reversed_part)
    return out


# ---------------------------------------------------------------------------
# The odot product through its truncations
# ---------------------------------------------------------------------------


def q_k(x: RT0Element, y: RT0Element, k: int) -> Polynomial:
    """Level-k truncation of x odot y.

    For each insertion position j the left factor is projected into the
    variables t1..t_{j-1}, multiplied by t_j, and the right factor is
    spread over the window t_{j+1}..t_k with t0 replaced by t0+...+tj.
    """
    if k < 1:
        raise ValueError("truncation level must be >= 1")
    out = Polynomial.zero()
    for j in range(1, k + 1):
        left = project_components(x.components, j - 1)
        if not left:
            continue
        shift = Polynomial.zero()
        for i in range(j + 1):
            shift = shift + Polynomial.variable(i)
        right = Polynomial.zero()
        window = range(j + 1, k + 1)
        for m, ym in y.components.items():
            if m > len(window):
                continue
            for values in combinations(window, m):
                renamed = ym.rename({i + 1: values[i] for i in range(m)})
                right = right + renamed.substitute_t0(shift)
        if right:
            out = out + left * Polynomial.variable(j) * right
    return out


def _concatenation(x: RT0Element, y: RT0Element) -> RT0Element:
    # closed form for a t0-free right factor: the left component keeps its
    # variables, a fresh separator variable is inserted, and the right
    # component is shifted past it
    acc: Components = {}
    for n, xn in x.components.items():
        separator = Polynomial.variable(n + 1)
        for m, ym in y.components.items():
            shifted = ym.rename({i: i + n + 1 for i in range(1, m + 1)})
            piece = xn * separator * shifted
            k = n + m + 1
            acc[k] = acc.get(k, Polynomial.zero()) + piece
    return RT0Element._raw(normalize_components(acc))


def odot(x: RT0Element, y: RT0Element) -> RT0Element:
    """The degree-raising product: deg(x odot y) = deg x + deg y + 1.

    Computed by evaluating the truncation at level deg x + deg y + 1 and
    decoding the components; when the right factor is t0-free the closed
    concatenation form is computed as well and must agree.
    """
    if x.is_zero() or y.is_zero():
        return RT0Element.zero()
    level = x.degree() + y.degree() + 1
    truncation = q_k(x, y, level)
    try:
        result = RT0Element._raw(decode_components(truncation, level))
    except NotInRingError as err:
        raise ConsistencyError(
            f"odot truncation failed to decode at level {level}"
        ) from err
    if y.t0_free():
        direct = _concatenation(x, y)
        if direct != result:
            raise ConsistencyError(
                "odot decode path disagrees with the concatenation form"
            )
    return result


# ---------------------------------------------------------------------------
# Monomial and word bases
# ---------------------------------------------------------------------------


def monomials_of_degree(n: int) -> list[Mono]:
    """All valid monomials t0^a0 * t1^a1 ... tk^ak (a_i >= 1) of degree n,
    in the canonical print order.  There are exactly 2^n of them."""
    out: list[Mono] = []
    for k in range(n + 1):
        for weights in _compositions(n - k, k):
            exps = {0: n - k - sum(weights)} if n - k - sum(weights) else {}
            # distribute: t_i gets 1 + weights[i-1]; remaining degree on t0
            for i in range(1, k + 1):
                exps[i] = 1 + weights[i - 1]
            total = sum(exps.values())
            if total != n:
                continue
            out.append(tuple(sorted(exps.items())))
    unique = sorted(set(out), key=_grlex_key)
    return unique


def _compositions(budget: int, parts: int) -> Iterable[tuple[int, ...]]:
    """All ways to distribute a surplus budget over the given number of
    parts, including keeping some of it back (the rest lands on t0)."""
    if parts == 0:
        yield ()
        return
    for first in range(budget + 1):
        for rest in _compositions(budget - first, parts - 1):
            yield (first,) + rest


def _grlex_key(mono: Mono) -> tuple:
    width = mono[-1][0] + 1 if mono else 0
    vec = [0] * width
    for var, exp in mono:
        vec[var] = exp
    return (mono_degree(mono), tuple(-e for e in vec))


def structure_words(n: int) -> list[tuple[int, ...]]:
    """Words (a_1, ..., a_r) with sum a_i + (r - 1) = n, ordered by length
    then lexicographically; they index the odot-factor basis."""
    words: list[tuple[int, ...]] = []
    for r in range(1, n + 2):
        total = n - (r - 1)
        if total < 0:
            continue
        words.extend(sorted(_exact_compositions(total, r)))
    return words


def _exact_compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exact_compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def evaluate_structure_word(word: tuple[int, ...]) -> RT0Element:
    """Left-fold of odot over the factors t0^a_i."""
    if not word:
        raise ValueError("a word needs at least one factor")
    if len(word) == 1:
        return RT0Element.t0_power(word[0])
    return odot(evaluate_structure_word(word[:-1]), RT0Element.t0_power(word[-1]))


@lru_cache(maxsize=None)
def evaluate_involution_word(word: tuple[int, ...]) -> RT0Element:
    """Left-fold of odot over the factors (t0+t1)^a_i (dot powers)."""
    if not word:
        raise ValueError("a word needs at least one factor")
    if len(word) == 1:
        return _psi1_power(word[0])
    return odot(evaluate_involution_word(word[:-1]), _psi1_power(word[-1]))


_WORD_EVALUATORS = {
    "structure": evaluate_structure_word,
    "iota-basis": evaluate_involution_word,
}


@lru_cache(maxsize=None)
def _basis_matrix(n: int, kind: str) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[tuple[int, ...], ...], tuple[Mono, ...]]:
    words = tuple(structure_words(n))
    monos = tuple(monomials_of_degree(n))
    evaluate = _WORD_EVALUATORS[kind]
    columns = []
    for word in words:
        value = evaluate(word).to_polynomial()
        columns.append(tuple(value.coefficient(m) for m in monos))
    matrix = tuple(
        tuple(columns[j][i] for j in range(len(words)))
        for i in range(len(monos))
    )
    return matrix, words, monos


def odot_basis_expand(
    x: RT0Element, kind: str = "structure"
) -> dict[tuple[int, ...], Fraction]:
    """Exact coefficients of x in the odot-word basis.

    Works degree by degree; the change-of-basis matrix in each degree is
    square of size 2^n and provably invertible, so a singular matrix can
    only mean an internal defect.
    """
    if kind not in _WORD_EVALUATORS:
        raise ValueError(f"unknown basis kind {kind!r}")
    out: dict[tuple[int, ...], Fraction] = {}
    for degree, part in x.homogeneous_parts().items():
        matrix, words, monos = _basis_matrix(degree, kind)
        poly = part.to_polynomial()
        rhs = [poly.coefficient(m) for m in monos]
        solution = solve_exact([list(row) for row in matrix], rhs)
        if solution is None:
            raise ConsistencyError(
                f"degree-{degree} word basis matrix is singular"
            )
        for word, coeff in zip(words, solution):
            if coeff:
                out[word] = coeff
    return out


def odot_basis_expand_iota(x: RT0Element) -> dict[tuple[int, ...], Fraction]:
    """Expansion in the involution-conjugated word basis.

    Obtained by expanding iota(x) in the plain word basis and conjugating
    word by word: each word reverses and picks up the parity sign of its
    total t0 weight.
    """
    inner = odot_basis_expand(iota(x), "structure")
    out: dict[tuple[int, ...], Fraction] = {}
    for word, coeff in inner.items():
        sign = -1 if sum(word) % 2 else 1
        out[tuple(reversed(word))] = coeff * sign
    return out


def leading_term_check(x: RT0Element) -> bool:
    """Check the shape of 1 odot x for a single nonzero monomial x.

    The product must contain t1^(r+1) * t2^a1 * ... * t_{k+1}^ak with
    coefficient one, every other term must carry a strictly smaller t1
    power, and at least one term must be free of t0.
    """
    terms = [
        (mono, coeff)
        for p in x.components.values()
        for mono, coeff in p.terms.items()
    ]
    if len(terms) != 1:
        raise ValueError("leading_term_check expects a single monomial")
    mono, coeff = terms[0]
    if coeff != 1:
        raise ValueError("leading_term_check expects coefficient one")
    exps = dict(mono)
    r = exps.pop(0, 0)
    shifted = {1: r + 1}
    for var, exp in exps.items():
        shifted[var + 1] = exp
    expected = tuple(sorted((v, e) for v, e in shifted.items() if e))
    product = odot(RT0Element.one(), x).to_polynomial()
    if product.coefficient(expected) != 1:
        return False
    lead_t1 = r + 1
    saw_t0_free = False
    for m in product.terms:
        e = dict(m)
        if m != expected and e.get(1, 0) >= lead_t1:
            return False
        if not e.get(0, 0):
            saw_t0_free = True
    return saw_t0_free


# ---------------------------------------------------------------------------
# Substitution of t0 by a nilpotent class of a graded algebra
# ---------------------------------------------------------------------------


def substitute_class(
    x: RT0Element,
    c: "base_algebra.AlgebraElement",
    algebra: "base_algebra.GradedAlgebra",
) -> dict[str, RElement]:
    """Replace t0 by a degree-one algebra class.

    Writes x as sum_a t0^a h_a and returns sum_a c^a tensor h_a as a
    mapping from algebra basis names to t0-free family elements.
    Nilpotence of c truncates the sum.
    """
    if not algebra.is_homogeneous(c, 1):
        raise base_algebra.DegreeMismatchError(
            "substitution class must be homogeneous of degree 1"
        )
    parts = x.t0_coefficients()
    out: dict[str, RElement] = {}
    power = algebra.unit_element()
    max_a = max(parts) if parts else -1
    for a in range(max_a + 1):
        if a:
            power = algebra.mul(power, c)
        if not power:
            break
        h = parts.get(a)
        if h is None:
            continue
        for name, scalar in power.items():
            acc = out.get(name, RElement.zero()) + h.scale(scalar)
            if acc:
                out[name] = acc
            elif name in out:
                del out[name]
    return out


# ---------------------------------------------------------------------------
# Distinguished degree-one classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassConstants:
    """The four degree-one marked-point classes of the two-slot theory."""

    psi0: RT0Element
    psi1: RT0Element
    phi0: RT0Element
    phi1: RT0Element


def class_constants() -> ClassConstants:
    return ClassConstants(
        psi0=RT0Element.from_text("-t0"),
        psi1=RT0Element.from_text("t0+t1"),
        phi0=RT0Element.from_text("-t0-t1"),
        phi1=RT0Element.from_text("t0"),
    )
