"""Verification suites: each one machine-checks a family of identities
and returns a structured verdict report.

Reports are deterministic for fixed inputs: checks appear in a fixed
order and the seed of every randomized check is recorded.  Wall-clock
durations are collected but only emitted when explicitly requested, so
that identical invocations produce identical bytes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import base as base_mod
from . import mtilde, rt0, superops
from .linalg import is_invertible
from .poly import Polynomial, format_polynomial, parse_polynomial
from .ring import (
    RElement,
    decode_rd,
    project_to_level,
    r_mul,
    restrict_level,
)

SCHEMA_VERSION = 1

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "suite", "seed", "bounds", "checks", "passed", "failed", "total"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "suite": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "bounds": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "params", "pass", "counterexample"],
                "properties": {
                    "id": {"type": "string"},
                    "params": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "counterexample": {"type": ["string", "null"]},
                },
                "additionalProperties": False,
            },
        },
        "passed": {"type": "integer"},
        "failed": {"type": "integer"},
        "total": {"type": "integer"},
        "duration_seconds": {"type": "number"},
    },
    "additionalProperties": False,
}


@dataclass
class CheckResult:
    id: str
    params: str
    passed: bool
    counterexample: str | None = None


@dataclass
class SuiteReport:
    suite: str
    seed: int
    bounds: dict
    checks: list[CheckResult] = field(default_factory=list)
    duration_seconds: float = 0.0

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    def all_passed(self) -> bool:
        return self.failed == 0

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "bounds": self.bounds,
            "checks": [
                {
                    "id": c.id,
                    "params": c.params,
                    "pass": c.passed,
                    "counterexample": c.counterexample,
                }
                for c in self.checks
            ],
            "passed": self.passed,
            "failed": self.failed,
            "total": len(self.checks),
        }
        if with_timings:
            out["duration_seconds"] = self.duration_seconds
        return out

    def render_text(self, with_timings: bool = False) -> str:
        lines = []
        for c in self.checks:
            status = "ok  " if c.passed else "FAIL"
            line = f"{status} {c.id} {c.params}".rstrip()
            if c.counterexample:
                line += f"  [{c.counterexample}]"
            lines.append(line)
        summary = (
            f"suite={self.suite} passed={self.passed} failed={self.failed} "
            f"total={len(self.checks)} seed={self.seed}"
        )
        if with_timings:
            summary += f" time={self.duration_seconds:.2f}s"
        lines.append(summary)
        return "\n".join(lines)


@dataclass
class Bounds:
    max_degree: int | None = None
    max_n: int | None = None
    max_arity: int | None = None
    dim: int | None = None
    seed: int = 0
    base: str | None = None

    def resolved(self, **defaults: int) -> dict:
        out = {}
        for name, value in defaults.items():
            given = getattr(self, name, None)
            out[name] = given if given is not None else value
        return out


def _E(text: str) -> rt0.RT0Element:
    return rt0.RT0Element.from_text(text)


def _random_polynomial(rng: random.Random, max_var: int = 3, terms: int = 4) -> Polynomial:
    out = Polynomial.zero()
    for _ in range(rng.randint(0, terms)):
        mono = {}
        for var in range(max_var + 1):
            exp = rng.randint(0, 2)
            if exp:
                mono[var] = exp
        coeff = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        out = out + Polynomial.monomial(mono, coeff) if coeff else out
    return out


def _random_relement(rng: random.Random, max_n: int = 2, extra: int = 2) -> RElement:
    components: dict[int, Polynomial] = {}
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(0, max_n)
        exps = {i: 1 for i in range(1, n + 1)}
        for _ in range(rng.randint(0, extra)):
            if n:
                exps[rng.randint(1, n)] += 1
        coeff = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        p = Polynomial.monomial(exps, coeff)
        components[n] = components.get(n, Polynomial.zero()) + p
    return RElement({n: p for n, p in components.items() if p})


def _random_rt0_monomial(rng: random.Random, max_n: int = 2, max_exp: int = 2) -> rt0.RT0Element:
    n = rng.randint(0, max_n)
    exps = {i: rng.randint(1, max_exp) for i in range(1, n + 1)}
    a0 = rng.randint(0, max_exp)
    if a0:
        exps[0] = a0
    return rt0.RT0Element.from_polynomial(Polynomial.monomial(exps))


def _monomial_elements(max_degree: int) -> list[tuple[int, rt0.RT0Element]]:
    out = []
    for degree in range(max_degree + 1):
        for mono in rt0.monomials_of_degree(degree):
            out.append(
                (degree, rt0.RT0Element.from_polynomial(Polynomial({mono: 1})))
            )
    return out


# ---------------------------------------------------------------------------
# Individual suites
# ---------------------------------------------------------------------------


def run_ring(bounds: Bounds) -> SuiteReport:
    report = SuiteReport("ring", bounds.seed, bounds.resolved())
    rng = random.Random(bounds.seed)

    ok = True
    witness = None
    for _ in range(40):
        p = _random_polynomial(rng)
        q = _random_polynomial(rng)
        r = _random_polynomial(rng)
        if not (
            p + q == q + p
            and (p + q) + r == p + (q + r)
            and p * q == q * p
            and (p * q) * r == p * (q * r)
            and p * (q + r) == p * q + p * r
        ):
            ok = False
            witness = f"p={p} q={q} r={r}"
            break
    report.checks.append(CheckResult("poly_ring_laws", "40 random triples", ok, witness))

    ok = True
    witness = None
    for _ in range(40):
        p = _random_polynomial(rng)
        if parse_polynomial(format_polynomial(p)) != p:
            ok = False
            witness = format_polynomial(p)
            break
    report.checks.append(CheckResult("parse_print_roundtrip", "40 random", ok, witness))

    from math import comb

    from .poly import IncreasingMap, enumerate_increasing_maps, pullback, pushforward

    ok = True
    witness = None
    for n in range(0, 5):
        for d in range(0, 7):
            maps = enumerate_increasing_maps(n, d)
            if len(maps) != comb(d, n) or len({m.values for m in maps}) != len(maps):
                ok = False
                witness = f"n={n} d={d}"
    report.checks.append(CheckResult("increasing_map_counts", "n<=4 d<=6", ok, witness))

    alpha = IncreasingMap((2, 3, 5), 5)
    ok = True
    witness = None
    for _ in range(25):
        p = _random_polynomial(rng, max_var=3)
        q = _random_polynomial(rng, max_var=3)
        if pushforward(alpha, p * q) != pushforward(alpha, p) * pushforward(alpha, q):
            ok, witness = False, f"p={p} q={q}"
            break
        if pullback(alpha, pushforward(alpha, p)) != p:
            ok, witness = False, f"p={p}"
            break
    report.checks.append(
        CheckResult("pushforward_pullback", "25 random against (2,3,5)", ok, witness)
    )

    ok = True
    witness = None
    for _ in range(20):
        f = _random_relement(rng)
        g = _random_relement(rng)
        h = _random_relement(rng)
        if r_mul(f, g) != r_mul(g, f) or r_mul(r_mul(f, g), h) != r_mul(
            f, r_mul(g, h)
        ):
            ok, witness = False, f"f={f.to_pairs()} g={g.to_pairs()} h={h.to_pairs()}"
            break
    report.checks.append(
        CheckResult("family_product_comm_assoc", "20 random triples", ok, witness)
    )

    ok = True
    witness = None
    for _ in range(20):
        f = _random_relement(rng)
        g = _random_relement(rng)
        for d in range(0, 6):
            lhs = project_to_level(r_mul(f, g), d).value
            rhs = project_to_level(f, d).value * project_to_level(g, d).value
            if lhs != rhs:
                ok, witness = False, f"d={d} f={f.to_pairs()} g={g.to_pairs()}"
                break
        if not ok:
            break
    report.checks.append(
        CheckResult("projection_is_ring_hom", "20 random pairs, d<=5", ok, witness)
    )

    ok = True
    witness = None
    for _ in range(20):
        f = _random_relement(rng)
        top = max(f.components, default=0)
        for d in range(max(top, 1), top + 3):
            projected = project_to_level(f, d)
            if restrict_level(projected) != project_to_level(f, d - 1):
                ok, witness = False, f"d={d} f={f.to_pairs()}"
                break
            if decode_rd(projected.value, d) != f:
                ok, witness = False, f"decode d={d} f={f.to_pairs()}"
                break
        if not ok:
            break
    report.checks.append(
        CheckResult("tower_and_decode", "20 random families", ok, witness)
    )
    return report


def run_iota(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(max_degree=5)
    report = SuiteReport("iota", bounds.seed, resolved)
    max_degree = resolved["max_degree"]
    elements = _monomial_elements(max_degree)

    for degree in range(max_degree + 1):
        ok = True
        witness = None
        for d, x in elements:
            if d != degree:
                continue
            if rt0.iota(rt0.iota(x)) != x:
                ok, witness = False, str(x)
                break
        report.checks.append(
            CheckResult("involution_squares_to_id", f"degree={degree}", ok, witness)
        )

    ok = True
    witness = None
    for d1, x in elements:
        for d2, y in elements:
            if d1 + d2 > max_degree:
                continue
            if rt0.iota(rt0.dot_mul(x, y)) != rt0.dot_mul(rt0.iota(x), rt0.iota(y)):
                ok, witness = False, f"x={x} y={y}"
                break
        if not ok:
            break
    report.checks.append(
        CheckResult(
            "involution_respects_dot", f"all pairs, total degree<={max_degree}", ok, witness
        )
    )

    anti_bound = max(max_degree - 1, 0)
    ok = True
    witness = None
    for d1, x in elements:
        for d2, y in elements:
            if d1 + d2 > anti_bound:
                continue
            if rt0.iota(rt0.odot(x, y)) != rt0.odot(rt0.iota(y), rt0.iota(x)):
                ok, witness = False, f"x={x} y={y}"
                break
        if not ok:
            break
    report.checks.append(
        CheckResult(
            "involution_reverses_odot", f"all pairs, total degree<={anti_bound}", ok, witness
        )
    )
    return report


def run_odot(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(max_degree=4, max_n=6)
    report = SuiteReport("odot", bounds.seed, resolved)
    max_degree = resolved["max_degree"]
    tower_k = resolved["max_n"]
    rng = random.Random(bounds.seed)
    elements = _monomial_elements(max_degree)

    ok = True
    witness = None
    pair_products: dict[tuple[int, int], rt0.RT0Element] = {}
    for i, (d1, x) in enumerate(elements):
        for j, (d2, y) in enumerate(elements):
            if d1 + d2 > max_degree:
                continue
            pair_products[(i, j)] = rt0.odot(x, y)
    for i, (d1, x) in enumerate(elements):
        for j, (d2, y) in enumerate(elements):
            for k, (d3, z) in enumerate(elements):
                if d1 + d2 + d3 > max_degree:
                    continue
                lhs = rt0.odot(pair_products[(i, j)], z)
                rhs = rt0.odot(x, pair_products[(j, k)])
                if lhs != rhs:
                    ok, witness = False, f"x={x} y={y} z={z}"
                    break
            if not ok:
                break
        if not ok:
            break
    report.checks.append(
        CheckResult(
            "odot_associative", f"all monomial triples, total degree<={max_degree}", ok, witness
        )
    )

    ok = True
    witness = None
    for a in range(0, 4):
        t0a = rt0.RT0Element.t0_power(a)
        for d1, x in elements:
            if d1 > 3:
                continue
            lifted = rt0.dot_mul(t0a, x)
            for d2, y in elements:
                if d2 > 3:
                    continue
                if rt0.odot(lifted, y) != rt0.dot_mul(t0a, rt0.odot(x, y)):
                    ok, witness = False, f"a={a} x={x} y={y}"
                    break
            if not ok:
                break
        if not ok:
            break
    report.checks.append(
        CheckResult("left_t0_linearity", "a<=3, monomial degrees<=3", ok, witness)
    )

    ok = True
    witness = None
    for _ in range(15):
        f = _random_rt0_monomial(rng)
        g = _random_rt0_monomial(rng)
        for k in range(1, tower_k):
            if rt0.q_k(f, g, k + 1).set_var_zero(k + 1) != rt0.q_k(f, g, k):
                ok, witness = False, f"k={k} f={f} g={g}"
                break
        if not ok:
            break
    report.checks.append(
        CheckResult(
            "truncation_tower", f"15 seeded pairs, k<{tower_k}", ok, witness
        )
    )

    ok = True
    witness = None
    for d1, x in elements:
        for d2, y in elements:
            if d1 + d2 > max_degree:
                continue
            product = rt0.odot(x, y)
            if product.is_zero() or not product.is_homogeneous():
                ok, witness = False, f"x={x} y={y}"
                break
            if product.degree() != d1 + d2 + 1:
                ok, witness = False, f"x={x} y={y}"
                break
        if not ok:
            break
    report.checks.append(
        CheckResult(
            "degree_raising", f"all pairs, total degree<={max_degree}", ok, witness
        )
    )

    ok = True
    witness = None
    for _ in range(20):
        f = _random_rt0_monomial(rng)
        n = rng.randint(0, 2)
        exps = {i: rng.randint(1, 2) for i in range(1, n + 1)}
        g = rt0.RT0Element.from_polynomial(Polynomial.monomial(exps))
        if rt0.odot(f, g) != rt0._concatenation(f, g):
            ok, witness = False, f"f={f} g={g}"
            break
    report.checks.append(
        CheckResult(
            "concatenation_consistency", "20 seeded pairs, t0-free right factor", ok, witness
        )
    )

    leading_bound = 5
    ok = True
    witness = None
    count = 0
    for degree in range(leading_bound + 1):
        for mono in rt0.monomials_of_degree(degree):
            x = rt0.RT0Element.from_polynomial(Polynomial({mono: 1}))
            count += 1
            if not rt0.leading_term_check(x):
                ok, witness = False, str(x)
                break
        if not ok:
            break
    report.checks.append(
        CheckResult(
            "unit_insertion_leading_term",
            f"{count} monomials, degree<={leading_bound}",
            ok,
            witness,
        )
    )
    return report


def run_identity(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(max_n=6)
    report = SuiteReport("identity", bounds.seed, resolved)
    one = rt0.RT0Element.one()
    t1 = _E("t1")
    psi = _E("t0+t1")
    for n in range(resolved["max_n"] + 1):
        power = rt0.dot_power(psi, n)
        ok = rt0.odot(one, power) == rt0.dot_mul(t1, power)
        report.checks.append(
            CheckResult("unit_insertion_identity", f"n={n}", ok, None if ok else f"n={n}")
        )
    return report


def run_dim(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(max_degree=10)
    report = SuiteReport("dim", bounds.seed, resolved)
    for n in range(resolved["max_degree"] + 1):
        monos = rt0.monomials_of_degree(n)
        ok = len(monos) == 2**n and len(set(monos)) == len(monos)
        report.checks.append(
            CheckResult(
                "monomial_count",
                f"degree={n}",
                ok,
                None if ok else f"found {len(monos)} expected {2 ** n}",
            )
        )
    return report


def run_structure(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(max_degree=6)
    report = SuiteReport("structure", bounds.seed, resolved)
    max_degree = resolved["max_degree"]

    for kind in ("structure", "iota-basis"):
        for n in range(max_degree + 1):
            matrix, _, _ = rt0._basis_matrix(n, kind)
            ok = is_invertible([list(row) for row in matrix])
            report.checks.append(
                CheckResult(
                    "word_matrix_invertible",
                    f"kind={kind} degree={n} size={2 ** n}",
                    ok,
                    None if ok else "singular",
                )
            )

    roundtrip_bound = min(max_degree, 5)
    evaluators: dict[str, Callable] = {
        "structure": rt0.evaluate_structure_word,
        "iota-basis": rt0.evaluate_involution_word,
    }
    for kind, evaluate in evaluators.items():
        ok = True
        witness = None
        count = 0
        for degree in range(roundtrip_bound + 1):
            for mono in rt0.monomials_of_degree(degree):
                x = rt0.RT0Element.from_polynomial(Polynomial({mono: 1}))
                if kind == "structure":
                    expansion = rt0.odot_basis_expand(x, kind)
                else:
                    expansion = rt0.odot_basis_expand_iota(x)
                rebuilt = rt0.RT0Element.zero()
                for word, coeff in expansion.items():
                    rebuilt = rebuilt + evaluate(word).scale(coeff)
                count += 1
                if rebuilt != x:
                    ok, witness = False, str(x)
                    break
            if not ok:
                break
        report.checks.append(
            CheckResult(
                "expand_roundtrip",
                f"kind={kind} {count} monomials, degree<={roundtrip_bound}",
                ok,
                witness,
            )
        )
    return report


def run_super(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(dim=3, max_arity=3)
    report = SuiteReport("super", bounds.seed, resolved)
    dim = resolved["dim"]
    max_arity = resolved["max_arity"]
    for d in range(1, dim + 1):
        space = superops.mixed_space(d)
        reports = superops.es_axiom_check(space, max_arity=max_arity)
        for name, axiom_report in sorted(reports.items()):
            report.checks.append(
                CheckResult(
                    name,
                    f"mixed dim={d} arity<={max_arity} checked={axiom_report.checked}",
                    axiom_report.ok,
                    axiom_report.counterexample,
                )
            )
    even = superops.even_space(2)
    for name, axiom_report in sorted(
        superops.es_axiom_check(even, max_arity=2).items()
    ):
        report.checks.append(
            CheckResult(
                name,
                f"even dim=2 arity<=2 checked={axiom_report.checked}",
                axiom_report.ok,
                axiom_report.counterexample,
            )
        )
    return report


def run_vowa(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(dim=3, max_arity=3)
    report = SuiteReport("vowa", bounds.seed, resolved)
    dim = resolved["dim"]
    max_arity = resolved["max_arity"]
    for d in range(1, dim + 1):
        space = superops.mixed_space(d)
        ok, checked, witness = superops.vowa_exhaustive(space, max_arity=max_arity)
        report.checks.append(
            CheckResult(
                "pairing_exchange",
                f"mixed dim={d} arity<={max_arity} checked={checked}",
                ok,
                witness,
            )
        )
    ok, checked, witness = superops.vowa_exhaustive(
        superops.even_space(2), max_arity=2
    )
    report.checks.append(
        CheckResult(
            "pairing_exchange", f"even dim=2 arity<=2 checked={checked}", ok, witness
        )
    )
    return report


def _exponent_tuples(slots: int, total: int):
    if slots == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _exponent_tuples(slots - 1, total - first):
            yield (first,) + rest


def run_important(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(max_degree=6)
    report = SuiteReport("important", bounds.seed, resolved)
    classes = rt0.class_constants()

    for d0 in range(resolved["max_degree"] + 1):
        ok = True
        witness = None
        for d1 in range(1, resolved["max_degree"] - d0 + 1):
            lhs = rt0.dot_mul(
                rt0.dot_power(classes.psi0, d0), rt0.dot_power(classes.psi1, d1)
            )
            rhs = rt0.dot_mul(
                rt0.dot_power(classes.psi0, d0 + 1),
                rt0.dot_power(classes.psi1, d1 - 1),
            ).scale(-1) + rt0.odot(
                rt0.dot_power(classes.psi0, d0), rt0.dot_power(classes.psi1, d1 - 1)
            )
            if lhs != rhs:
                ok, witness = False, f"d0={d0} d1={d1}"
                break
        report.checks.append(
            CheckResult(
                "two_slot_psi_relation",
                f"d0={d0}, d0+d1<={resolved['max_degree']}",
                ok,
                witness,
            )
        )

    budget = 3
    for base_name, arities in (("trivial", (2, 3)), ("rank2", (2,))):
        config = base_mod.BUILTIN_BASES[base_name]()
        for n in arities:
            ok = True
            witness = None
            count = 0
            for total in range(1, budget + 1):
                for d in _exponent_tuples(n + 1, total):
                    remaining = budget - sum(d)
                    for e_total in range(remaining + 1):
                        for e in _exponent_tuples(n + 1, e_total):
                            for j in range(1, n + 1):
                                if d[j] < 1:
                                    continue
                                count += 1
                                if not mtilde.important_b_check(n, d, e, j, config):
                                    ok, witness = (
                                        False,
                                        f"n={n} d={d} e={e} j={j}",
                                    )
                                    break
                            if not ok:
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
            report.checks.append(
                CheckResult(
                    "psi_to_phi_exchange",
                    f"base={base_name} n={n} sum(d)+sum(e)<={budget} ({count} instances)",
                    ok,
                    witness,
                )
            )
    return report


def run_operad_axioms(bounds: Bounds) -> SuiteReport:
    resolved = bounds.resolved(max_arity=3, max_degree=2)
    resolved["base"] = bounds.base or "trivial"
    report = SuiteReport("operad-axioms", bounds.seed, resolved)
    config = base_mod.resolve_base(bounds.base)
    reports = mtilde.operad_axiom_check(
        config,
        max_arity=resolved["max_arity"],
        max_degree=resolved["max_degree"],
    )
    for name, axiom_report in sorted(reports.items()):
        report.checks.append(
            CheckResult(
                name,
                f"base={config.name} arity<={resolved['max_arity']} "
                f"slot-degree<={resolved['max_degree']} checked={axiom_report.checked}",
                axiom_report.ok,
                axiom_report.counterexample,
            )
        )
    return report


SUITES: dict[str, Callable[[Bounds], SuiteReport]] = {
    "ring": run_ring,
    "iota": run_iota,
    "odot": run_odot,
    "identity": run_identity,
    "dim": run_dim,
    "structure": run_structure,
    "super": run_super,
    "vowa": run_vowa,
    "important": run_important,
    "operad-axioms": run_operad_axioms,
}


def run_suite(name: str, bounds: Bounds) -> SuiteReport:
    """Run one suite, or every suite in order for the name 'all'."""
    start = time.monotonic()
    if name == "all":
        combined = SuiteReport("all", bounds.seed, {"defaults": "per-suite"})
        for suite_name, runner in SUITES.items():
            sub = runner(bounds)
            for check in sub.checks:
                combined.checks.append(
                    CheckResult(
                        f"{suite_name}/{check.id}",
                        check.params,
                        check.passed,
                        check.counterexample,
                    )
                )
        combined.duration_seconds = time.monotonic() - start
        return combined
    if name not in SUITES:
        raise KeyError(name)
    report = SUITES[name](bounds)
    report.duration_seconds = time.monotonic() - start
    return report
