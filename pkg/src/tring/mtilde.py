"""The extended cyclic operad over a pluggable coefficient base.

Arity one is the t0-extended ring itself, with the degree-raising
product as composition and the involution as the slot swap.  At arity
n >= 2 an element is a sum of terms (base class) tensor (n+1 slots of
t0-free family monomials).  Composition comes in four shapes:

* two arity-one elements compose through the degree-raising product;
* an arity-one element entering slot j of a bigger one multiplies the
  slot-j family by it (via the degree-raising product), substitutes t0
  by the base phi class of that slot, and re-inserts the result;
* entering slot 0 from the left works the same after twisting the
  arity-one argument by the involution;
* two big elements contract slot j against slot 0, keeping only the
  constant parts of those slots, while the base classes combine through
  the configured clutching map.

The family slots are all even, so no Koszul signs appear anywhere; the
permutation action moves slots and lets the config act on the base
class.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .base import AlgebraElement, BaseOperadConfig, ConfigError
from .poly import Mono, Polynomial, positive_support
from .ring import RElement, multiply_components
from .rt0 import (
    RT0Element,
    class_constants,
    dot_mul,
    dot_power,
    iota,
    odot,
    substitute_class,
)

# the involution is hit with the same few arguments over and over when
# axiom suites run; elements are immutable, so caching is safe
_iota_cached = lru_cache(maxsize=4096)(iota)

MTKey = tuple[str, tuple[Mono, ...]]
MONO_ONE: Mono = ()


class MTildeElement:
    """An element of the extended operad at a fixed arity."""

    __slots__ = ("arity", "rt0", "terms", "_hash")

    def __init__(
        self,
        arity: int,
        terms: Mapping[MTKey, Fraction] | None = None,
        rt0: RT0Element | None = None,
    ):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        if arity == 1:
            self.rt0 = rt0 if rt0 is not None else RT0Element.zero()
            self.terms = None
            if terms:
                raise ValueError("arity-1 elements carry a ring element")
            return
        self.rt0 = None
        normalized: dict[MTKey, Fraction] = {}
        if terms:
            for (name, monos), coeff in terms.items():
                if len(monos) != arity + 1:
                    raise ValueError(
                        f"expected {arity + 1} slots, got {len(monos)}"
                    )
                for mono in monos:
                    support = positive_support(mono)
                    if any(var == 0 for var, _ in mono) or support != frozenset(
                        range(1, len(support) + 1)
                    ):
                        raise ValueError(f"invalid slot monomial {mono}")
                c = Fraction(coeff)
                if c:
                    normalized[(name, monos)] = c
        self.terms = normalized

    @classmethod
    def from_rt0(cls, x: RT0Element) -> "MTildeElement":
        return cls(1, rt0=x)

    @classmethod
    def zero(cls, arity: int) -> "MTildeElement":
        return cls(arity) if arity == 1 else cls(arity, {})

    @classmethod
    def unit_tensor(cls, arity: int, base: BaseOperadConfig) -> "MTildeElement":
        """The base unit with every slot equal to one."""
        algebra = base.algebra(arity)
        key = (algebra.unit, (MONO_ONE,) * (arity + 1))
        return cls(arity, {key: Fraction(1)})

    def is_zero(self) -> bool:
        if self.arity == 1:
            return self.rt0.is_zero()
        return not self.terms

    def __add__(self, other: "MTildeElement") -> "MTildeElement":
        if self.arity != other.arity:
            raise ValueError("arities differ")
        if self.arity == 1:
            return MTildeElement.from_rt0(self.rt0 + other.rt0)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return MTildeElement._raw(self.arity, out)

    def __sub__(self, other: "MTildeElement") -> "MTildeElement":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "MTildeElement":
        c = Fraction(c)
        if self.arity == 1:
            return MTildeElement.from_rt0(self.rt0.scale(c))
        if not c:
            return MTildeElement.zero(self.arity)
        return MTildeElement._raw(
            self.arity, {k: v * c for k, v in self.terms.items()}
        )

    @classmethod
    def _raw(cls, arity: int, terms: dict[MTKey, Fraction]) -> "MTildeElement":
        elt = cls.__new__(cls)
        elt.arity = arity
        elt.rt0 = None
        elt.terms = terms
        return elt

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MTildeElement):
            if self.arity != other.arity:
                return False
            if self.arity == 1:
                return self.rt0 == other.rt0
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        cached = getattr(self, "_hash", None)
        if cached is None:
            if self.arity == 1:
                cached = hash((1, self.rt0))
            else:
                cached = hash((self.arity, frozenset(self.terms.items())))
            self._hash = cached
        return cached

    def __repr__(self) -> str:
        if self.arity == 1:
            return f"MTildeElement(1, {self.rt0!r})"
        return f"MTildeElement({self.arity}, {len(self.terms)} terms)"


def _add_term(
    acc: dict[MTKey, Fraction], name: str, monos: tuple[Mono, ...], coeff: Fraction
) -> None:
    if not coeff:
        return
    key = (name, monos)
    s = acc.get(key, Fraction(0)) + coeff
    if s:
        acc[key] = s
    elif key in acc:
        del acc[key]


def _mono_as_rt0(mono: Mono) -> RT0Element:
    return RT0Element._raw({len(positive_support(mono)): Polynomial({mono: 1})})


def _relement_monos(relt: RElement) -> Iterable[tuple[Mono, Fraction]]:
    for p in relt.components.values():
        yield from p.terms.items()


def _mono_r_mul(a: Mono, b: Mono) -> list[tuple[Mono, Fraction]]:
    ka = len(positive_support(a))
    kb = len(positive_support(b))
    product = multiply_components(
        {ka: Polynomial({a: 1})}, {kb: Polynomial({b: 1})}
    )
    return [(m, c) for p in product.values() for m, c in p.terms.items()]


def mt_mul(
    x: MTildeElement, y: MTildeElement, base: BaseOperadConfig
) -> MTildeElement:
    """Slotwise family product combined with the base-class product."""
    if x.arity != y.arity:
        raise ValueError("arities differ")
    if x.arity == 1:
        return MTildeElement.from_rt0(dot_mul(x.rt0, y.rt0))
    algebra = base.algebra(x.arity)
    out: dict[MTKey, Fraction] = {}
    for (name_x, monos_x), cx in x.terms.items():
        for (name_y, monos_y), cy in y.terms.items():
            base_part = algebra.mul({name_x: Fraction(1)}, {name_y: Fraction(1)})
            if not base_part:
                continue
            expansions: list[tuple[tuple[Mono, ...], Fraction]] = [((), cx * cy)]
            for slot in range(x.arity + 1):
                grown: list[tuple[tuple[Mono, ...], Fraction]] = []
                for mono, c in _mono_r_mul(monos_x[slot], monos_y[slot]):
                    for monos_acc, coeff_acc in expansions:
                        grown.append((monos_acc + (mono,), coeff_acc * c))
                expansions = grown
            for bname, cb in base_part.items():
                for monos_acc, coeff_acc in expansions:
                    _add_term(out, bname, monos_acc, coeff_acc * cb)
    return MTildeElement._raw(x.arity, out)


def mt_power(
    x: MTildeElement, exp: int, base: BaseOperadConfig
) -> MTildeElement:
    if exp < 0:
        raise ValueError("negative power")
    if x.arity == 1:
        return MTildeElement.from_rt0(dot_power(x.rt0, exp))
    out = MTildeElement.unit_tensor(x.arity, base)
    for _ in range(exp):
        out = mt_mul(out, x, base)
    return out


def _slot_insert(
    base: BaseOperadConfig,
    arity: int,
    slot: int,
    slot_mono: Mono,
    argument: RT0Element,
) -> list[tuple[str, Mono, Fraction]]:
    """Multiply a slot monomial by an arity-one argument and substitute
    t0 by the slot's phi class; returns (base name, slot monomial, coeff)
    triples.  Memoised on the config, keyed by the exact inputs."""
    cache = getattr(base, "_slot_insert_cache", None)
    if cache is None:
        cache = {}
        base._slot_insert_cache = cache
    key = (arity, slot, slot_mono, argument)
    cached = cache.get(key)
    if cached is None:
        algebra = base.algebra(arity)
        product = odot(_mono_as_rt0(slot_mono), argument)
        substituted = substitute_class(product, base.phi(arity, slot), algebra)
        cached = [
            (name, mono, coeff)
            for name, relt in substituted.items()
            for mono, coeff in _relement_monos(relt)
        ]
        cache[key] = cached
    return cached


def compose(
    x: MTildeElement, y: MTildeElement, j: int, base: BaseOperadConfig
) -> MTildeElement:
    """Operadic composition; the shape depends on which arities meet."""
    m, n = x.arity, y.arity
    if not 1 <= j <= m:
        raise ValueError(f"slot {j} outside [1,{m}]")
    if m == 1 and n == 1:
        return MTildeElement.from_rt0(odot(x.rt0, y.rt0))
    if m >= 2 and n == 1:
        out: dict[MTKey, Fraction] = {}
        algebra = base.algebra(m)
        for (name, monos), c in x.terms.items():
            for pname, mono_r, coeff in _slot_insert(base, m, j, monos[j], y.rt0):
                for bname, cb in algebra.mul(
                    {name: Fraction(1)}, {pname: Fraction(1)}
                ).items():
                    _add_term(
                        out,
                        bname,
                        monos[:j] + (mono_r,) + monos[j + 1 :],
                        c * coeff * cb,
                    )
        return MTildeElement._raw(m, out)
    if m == 1 and n >= 2:
        if j != 1:
            raise ValueError("an arity-one element has a single slot")
        out = {}
        algebra = base.algebra(n)
        twisted = _iota_cached(x.rt0)
        for (name, monos), c in y.terms.items():
            for pname, mono_r, coeff in _slot_insert(base, n, 0, monos[0], twisted):
                for bname, cb in algebra.mul(
                    {name: Fraction(1)}, {pname: Fraction(1)}
                ).items():
                    _add_term(
                        out, bname, (mono_r,) + monos[1:], c * coeff * cb
                    )
        return MTildeElement._raw(n, out)
    # both arities >= 2: unsigned contraction of the family slots
    # combined with the configured clutching of the base classes
    out = {}
    for (name_x, monos_x), cx in x.terms.items():
        if monos_x[j] != MONO_ONE:
            continue
        for (name_y, monos_y), cy in y.terms.items():
            if monos_y[0] != MONO_ONE:
                continue
            clutched = base.clutch(
                m, n, j, {name_x: Fraction(1)}, {name_y: Fraction(1)}
            )
            new_monos = monos_x[:j] + monos_y[1:] + monos_x[j + 1 :]
            for bname, cb in clutched.items():
                _add_term(out, bname, new_monos, cx * cy * cb)
    return MTildeElement._raw(m + n - 1, out)


def act(
    perm: tuple[int, ...], x: MTildeElement, base: BaseOperadConfig
) -> MTildeElement:
    """Slot permutation; at arity one the only non-trivial move is the
    involution, above that the base class is acted on by the config."""
    n = x.arity
    if sorted(perm) != list(range(n + 1)):
        raise ValueError(f"{perm} is not a permutation of 0..{n}")
    if n == 1:
        return x if perm == (0, 1) else MTildeElement.from_rt0(_iota_cached(x.rt0))
    inverse = [0] * (n + 1)
    for i, value in enumerate(perm):
        inverse[value] = i
    out: dict[MTKey, Fraction] = {}
    for (name, monos), c in x.terms.items():
        new_monos = tuple(monos[inverse[i]] for i in range(n + 1))
        for bname, cb in base.act(n, perm, {name: Fraction(1)}).items():
            _add_term(out, bname, new_monos, c * cb)
    return MTildeElement._raw(n, out)


def psi_phi_classes(
    n: int, slot: int, base: BaseOperadConfig
) -> tuple[MTildeElement, MTildeElement]:
    """The degree-one psi and phi classes of the given slot; they differ
    by the class that puts t1 into the slot."""
    if n == 1:
        constants = class_constants()
        if slot == 0:
            pair = (constants.psi0, constants.phi0)
        elif slot == 1:
            pair = (constants.psi1, constants.phi1)
        else:
            raise ValueError("arity-one elements have slots 0 and 1")
        return (
            MTildeElement.from_rt0(pair[0]),
            MTildeElement.from_rt0(pair[1]),
        )
    if not 0 <= slot <= n:
        raise ValueError(f"slot {slot} outside 0..{n}")
    phi_class = base.phi(n, slot)
    ones = (MONO_ONE,) * (n + 1)
    phi_terms: dict[MTKey, Fraction] = {}
    for name, c in phi_class.items():
        _add_term(phi_terms, name, ones, c)
    phi_tilde = MTildeElement._raw(n, phi_terms)
    algebra = base.algebra(n)
    t1_slot = ones[:slot] + (((1, 1),),) + ones[slot + 1 :]
    t1_terms: dict[MTKey, Fraction] = {}
    _add_term(t1_terms, algebra.unit, t1_slot, Fraction(1))
    psi_tilde = phi_tilde + MTildeElement._raw(n, t1_terms)
    return psi_tilde, phi_tilde


def morphism_F(
    xi: AlgebraElement, n: int, base: BaseOperadConfig
) -> MTildeElement:
    """Inclusion of a bare base class with all slots set to one; at arity
    one the map is zero."""
    if n == 1:
        return MTildeElement.zero(1)
    algebra = base.algebra(n)
    ones = (MONO_ONE,) * (n + 1)
    out: dict[MTKey, Fraction] = {}
    for name, c in xi.items():
        if name not in algebra.degrees:
            raise ConfigError(f"unknown basis name {name!r}")
        _add_term(out, name, ones, Fraction(c))
    return MTildeElement._raw(n, out)


def important_b_check(
    n: int,
    d: tuple[int, ...],
    e: tuple[int, ...],
    j: int,
    base: BaseOperadConfig,
) -> bool:
    """Trade one psi power in slot j for a phi power plus a composition
    with a power of the degree-one slot-1 class of the two-slot theory.

    Exact comparison of both sides over the supplied base."""
    if len(d) != n + 1 or len(e) != n + 1:
        raise ValueError("exponent tuples must cover slots 0..n")
    if not (1 <= j <= n and d[j] >= 1):
        raise ValueError("slot j must carry a positive psi exponent")
    classes = [psi_phi_classes(n, i, base) for i in range(n + 1)]

    def product(dd: tuple[int, ...], ee: tuple[int, ...]) -> MTildeElement:
        acc = MTildeElement.unit_tensor(n, base)
        for i in range(n + 1):
            psi_i, phi_i = classes[i]
            acc = mt_mul(acc, mt_power(psi_i, dd[i], base), base)
            acc = mt_mul(acc, mt_power(phi_i, ee[i], base), base)
        return acc

    lhs = product(d, e)
    d_shift = tuple(di - (1 if i == j else 0) for i, di in enumerate(d))
    e_shift = tuple(ei + (1 if i == j else 0) for i, ei in enumerate(e))
    rhs = product(d_shift, e_shift)
    d_rest = tuple(0 if i == j else di for i, di in enumerate(d))
    e_rest = tuple(e[i] if i != j else e[j] for i in range(n + 1))
    rest = product(d_rest, e_rest)
    argument = MTildeElement.from_rt0(
        dot_power(RT0Element.from_text("t0+t1"), d[j] - 1)
    )
    rhs = rhs + compose(rest, argument, j, base)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Axiom suite over a base
# ---------------------------------------------------------------------------


def _t0_free_monomials_upto(max_degree: int) -> list[Mono]:
    from .rt0 import monomials_of_degree

    out: list[Mono] = []
    for degree in range(max_degree + 1):
        for mono in monomials_of_degree(degree):
            if all(var for var, _ in mono):
                out.append(mono)
    return out


def _slot_tuples(
    slots: int, max_degree: int, monos: list[Mono]
) -> list[tuple[Mono, ...]]:
    from .poly import mono_degree

    out: list[tuple[Mono, ...]] = [()]
    for _ in range(slots):
        grown = []
        for acc in out:
            used = sum(mono_degree(m) for m in acc)
            for mono in monos:
                if used + mono_degree(mono) <= max_degree:
                    grown.append(acc + (mono,))
        out = grown
    return out


def spanning_elements(
    arity: int, base: BaseOperadConfig, max_degree: int
) -> list[MTildeElement]:
    """A spanning family within the degree bound: at arity one, all
    monomials of the t0-ring; above, every base basis class tensored with
    every slot tuple of bounded total degree."""
    if arity == 1:
        from .rt0 import monomials_of_degree

        out = []
        for degree in range(max_degree + 1):
            for mono in monomials_of_degree(degree):
                out.append(
                    MTildeElement.from_rt0(
                        RT0Element.from_polynomial(Polynomial({mono: 1}))
                    )
                )
        return out
    algebra = base.algebra(arity)
    monos = _t0_free_monomials_upto(max_degree)
    tuples = _slot_tuples(arity + 1, max_degree, monos)
    return [
        MTildeElement._raw(arity, {(name, monos_tuple): Fraction(1)})
        for name in algebra.basis
        for monos_tuple in tuples
    ]


def _describe(x: MTildeElement) -> str:
    if x.arity == 1:
        return str(x.rt0)
    from .poly import mono_str

    parts = []
    for (name, monos), c in sorted(x.terms.items()):
        slots = ",".join(mono_str(m) for m in monos)
        parts.append(f"{c}*{name}({slots})")
    return " + ".join(parts) if parts else "0"


def operad_axiom_check(
    base: BaseOperadConfig, max_arity: int = 3, max_degree: int = 2
) -> dict[str, "AxiomReport"]:
    """Verify the four cyclic-operad axioms over the given base on
    spanning sets of bounded slot degree; the family slots are even so
    all four axioms are sign-free here."""
    from .superops import AxiomReport, compose_permutations

    spanning = {
        arity: spanning_elements(arity, base, max_degree)
        for arity in range(1, max_arity + 1)
    }

    compose_cache: dict = {}
    act_cache: dict = {}

    def ccompose(x: MTildeElement, y: MTildeElement, j: int) -> MTildeElement:
        key = (x, y, j)
        result = compose_cache.get(key)
        if result is None:
            result = compose(x, y, j, base)
            compose_cache[key] = result
        return result

    def cact(perm: tuple[int, ...], x: MTildeElement) -> MTildeElement:
        key = (perm, x)
        result = act_cache.get(key)
        if result is None:
            result = act(perm, x, base)
            act_cache[key] = result
        return result

    def perms_fixing_zero(n: int) -> list[tuple[int, ...]]:
        from itertools import permutations

        return [(0,) + rest for rest in permutations(range(1, n + 1))]

    def cycle(n: int) -> tuple[int, ...]:
        return tuple((i + 1) % (n + 1) for i in range(n + 1))

    reports: dict[str, AxiomReport] = {}

    checked = 0
    failure = None
    for m in range(1, max_arity + 1):
        for n in range(1, max_arity + 1):
            for j in range(1, m + 1):
                for pi in perms_fixing_zero(m):
                    for rho in perms_fixing_zero(n):
                        sigma = compose_permutations(pi, rho, j, m, n)
                        for x in spanning[m]:
                            for y in spanning[n]:
                                lhs = cact(sigma, ccompose(x, y, j))
                                rhs = ccompose(
                                    cact(pi, x), cact(rho, y), pi[j]
                                )
                                checked += 1
                                if lhs != rhs and failure is None:
                                    failure = (
                                        f"m={m} n={n} j={j} pi={pi} rho={rho} "
                                        f"x={_describe(x)} y={_describe(y)}"
                                    )
    reports["axiom1"] = AxiomReport(failure is None, checked, failure)

    checked = 0
    failure = None
    for m in range(1, max_arity + 1):
        for n in range(1, max_arity + 1):
            tau_out = cycle(m + n - 1)
            tau_m, tau_n = cycle(m), cycle(n)
            for x in spanning[m]:
                for y in spanning[n]:
                    lhs = cact(tau_out, ccompose(x, y, m))
                    rhs = ccompose(cact(tau_n, y), cact(tau_m, x), 1)
                    checked += 1
                    if lhs != rhs and failure is None:
                        failure = (
                            f"m={m} n={n} x={_describe(x)} y={_describe(y)}"
                        )
    reports["axiom2"] = AxiomReport(failure is None, checked, failure)

    checked = 0
    failure = None
    for k in range(2, max_arity + 1):
        for l in range(1, max_arity + 1):
            for m in range(1, max_arity + 1):
                for i in range(1, k + 1):
                    for j in range(i + 1, k + 1):
                        for a in spanning[k]:
                            for b in spanning[l]:
                                for c in spanning[m]:
                                    lhs = ccompose(
                                        ccompose(a, b, i), c, j + l - 1
                                    )
                                    rhs = ccompose(ccompose(a, c, j), b, i)
                                    checked += 1
                                    if lhs != rhs and failure is None:
                                        failure = (
                                            f"k={k} l={l} m={m} i={i} j={j} "
                                            f"a={_describe(a)} b={_describe(b)} "
                                            f"c={_describe(c)}"
                                        )
    reports["axiom3"] = AxiomReport(failure is None, checked, failure)

    checked = 0
    failure = None
    for k in range(1, max_arity + 1):
        for l in range(1, max_arity + 1):
            for m in range(1, max_arity + 1):
                for i in range(1, k + 1):
                    for j in range(1, l + 1):
                        for a in spanning[k]:
                            for b in spanning[l]:
                                for c in spanning[m]:
                                    lhs = ccompose(
                                        ccompose(a, b, i), c, i + j - 1
                                    )
                                    rhs = ccompose(a, ccompose(b, c, j), i)
                                    checked += 1
                                    if lhs != rhs and failure is None:
                                        failure = (
                                            f"k={k} l={l} m={m} i={i} j={j} "
                                            f"a={_describe(a)} b={_describe(b)} "
                                            f"c={_describe(c)}"
                                        )
    reports["axiom4"] = AxiomReport(failure is None, checked, failure)
    return reports
