"""Seeded randomized verification suites.

Every suite draws exact rational instances from a deterministic generator and
checks one identity per trial.  Given the same seed and bounds, a suite
produces the same trials and the same report.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import identities as ids
from .errors import CDKernelError, DegenerateMeasure
from .kernels import (
    ROUTES,
    SqrtChoice,
    ZetaChoice,
    contraction_check,
    correlation_integral,
    general_expansion,
    general_expansion_polynomial,
    hodge_check,
    hodge_double_check,
    hodge_star,
    kernel_numerator,
    km_confluent,
    km_eval,
    km_pfaffian,
    km_polynomial,
    schur_expansion,
    subset_to_partition,
)
from .linalg import determinant, pfaffian
from .measure import Measure, integrate_sym, pair
from .ortho import OrthoSystem, basis_minor, build_system, cd_kernel, subsets
from .poly import MultiPoly, permutation_sign, vandermonde, vandermonde_poly

MAX_RETRIES = 100


class RetryExhausted(CDKernelError):
    pass


@dataclass
class SuiteReport:
    name: str
    attempted: int
    passed: int
    counterexample: Optional[dict]
    duration: float

    @property
    def ok(self) -> bool:
        return self.passed == self.attempted

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"suite={self.name} trials={self.attempted} status={status}"

    def counterexample_line(self) -> Optional[str]:
        if self.counterexample is None:
            return None
        payload = json.dumps(self.counterexample, sort_keys=True, separators=(",", ":"), default=str)
        return f"suite={self.name} counterexample={payload}"


class Generator:
    """Small random rationals: numerators in [-9, 9], denominators in {1, 2, 3}."""

    def __init__(self, seed):
        self.rng = random.Random(seed)

    def integer(self, lo: int, hi: int) -> int:
        return self.rng.randint(lo, hi)

    def rational(self) -> Fraction:
        return Fraction(self.rng.randint(-9, 9), self.rng.choice((1, 2, 3)))

    def nonzero(self) -> Fraction:
        return self.resample(self.rational, lambda v: v != 0)

    def resample(self, draw: Callable, accept: Callable):
        for _ in range(MAX_RETRIES):
            value = draw()
            if accept(value):
                return value
        raise RetryExhausted("could not draw an instance meeting the preconditions")

    def distinct(self, k: int, exclude: Sequence = ()) -> List[Fraction]:
        def draw():
            return [self.rational() for _ in range(k)]

        return self.resample(
            draw, lambda v: len(set(v)) == k and not set(v) & set(exclude)
        )

    def measure(self, size: int, positive: bool = False) -> Measure:
        points = self.distinct(size)
        weights = []
        for _ in range(size):
            if positive:
                weights.append(Fraction(self.rng.randint(1, 5)))
            else:
                weights.append(Fraction(self.rng.choice([-3, -2, -1, 1, 2, 3, 4, 5])))
        return Measure(tuple(points), tuple(weights))

    def system(self, n: int, max_points: int = 6, positive: bool = False) -> OrthoSystem:
        for _ in range(MAX_RETRIES):
            size = self.rng.randint(n, max(n, max_points))
            try:
                return build_system(self.measure(size, positive), n)
            except DegenerateMeasure:
                continue
        raise RetryExhausted("no nondegenerate measure found")

    def zeta_parameters(self, size: int) -> List[Fraction]:
        """s_i such that zeta_i = s_i**2 and z_i = (s_i - 1/s_i)**2 are all distinct."""

        def accept(s):
            if any(v == 0 for v in s):
                return False
            z = [(v - 1 / v) ** 2 for v in s]
            zeta = [v * v for v in s]
            return len(set(z)) == size and len(set(zeta)) == size

        return self.resample(lambda: [self.rational() for _ in range(size)], accept)


def _ser(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Measure):
        return value.to_json()
    if isinstance(value, OrthoSystem):
        return {"measure": value.measure.to_json(), "n": value.n}
    if isinstance(value, dict):
        return {str(k): _ser(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_ser(v) for v in value]
    return value


def _n_m(gen: Generator, max_n: int, max_m: int, min_m: int = 1) -> Tuple[int, int]:
    n = gen.integer(1, max(1, max_n))
    return n, gen.integer(min_m, max(min_m, min(max_m, n)))


# -- suites ---------------------------------------------------------------------
# Each suite takes (gen, max_n, max_m) and returns (ok, payload).

Outcome = Tuple[bool, dict]


def suite_cd_formula(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, _ = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    grid = gen.distinct(5)
    for x, y in itertools.permutations(grid, 2):
        a, b = cd_kernel(sys, x, y, "sum"), cd_kernel(sys, x, y, "quotient")
        if a != b:
            return False, {"system": sys, "x": x, "y": y, "sum": a, "quotient": b}
    return True, {}


def suite_orthogonality(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, _ = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    polys = sys.polys
    for k, p in enumerate(polys):
        if p.leading_coefficient() != 1 or p.total_degree() != k:
            return False, {"system": sys, "k": k, "poly": str(p)}
    for i, j in itertools.combinations(range(n), 2):
        value = pair(polys[i], polys[j], sys.measure)
        if value:
            return False, {"system": sys, "i": i, "j": j, "pairing": value}
    return True, {}


def suite_po(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    for s in subsets(n, m):
        for t in subsets(n, m):
            value = integrate_sym(
                lambda y: basis_minor(sys, s, y) * basis_minor(sys, t, y), sys.measure, m
            )
            expected = sys.norm_product(s) if s == t else Fraction(0)
            if value != expected:
                return False, {"system": sys, "S": s, "T": t, "lhs": value, "rhs": expected}
    return True, {}


def suite_dsp(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    mu = gen.measure(gen.integer(1, 6))
    fs = [MultiPoly.univariate([gen.rational() for _ in range(n)]) for _ in range(m)]
    gs = [MultiPoly.univariate([gen.rational() for _ in range(n)]) for _ in range(m)]

    def integrand(y):
        df = determinant([[f(yi) for f in fs] for yi in y])
        dg = determinant([[g(yi) for g in gs] for yi in y])
        return df * dg

    lhs = integrate_sym(integrand, mu, m)
    rhs = determinant([[pair(f, g, mu) for g in gs] for f in fs])
    return lhs == rhs, {"measure": mu, "f": [str(f) for f in fs], "g": [str(g) for g in gs], "lhs": lhs, "rhs": rhs}


def _route_values(sys: OrthoSystem, m: int, gen: Generator) -> dict:
    s = gen.zeta_parameters(2 * m)
    sqrt = SqrtChoice(tuple(v - 1 / v for v in s))
    zeta = ZetaChoice(tuple(v * v for v in s))
    z = sqrt.z
    x, y = z[:m], z[m:]
    values = {route: km_eval(sys, x, y, route) for route in ROUTES}
    values["pfaffian_sqrt"] = km_pfaffian(sys, sqrt)
    values["pfaffian_zeta"] = km_pfaffian(sys, zeta)
    return {"x": x, "y": y, "t": sqrt.t, "zeta": zeta.zeta, "values": values}


def suite_route_agreement(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    data = _route_values(sys, m, gen)
    ok = len(set(data["values"].values())) == 1
    return ok, {"system": sys, **data}


def suite_symmetry(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    z = [gen.rational() for _ in range(2 * m)]
    base = km_eval(sys, z[:m], z[m:], "integral")
    for _ in range(10):
        perm = list(z)
        gen.rng.shuffle(perm)
        value = km_eval(sys, perm[:m], perm[m:], "integral")
        if value != base:
            return False, {"system": sys, "z": z, "permuted": perm, "base": base, "value": value}
    return True, {}


def suite_choice_independence(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    s = gen.zeta_parameters(2 * m)
    t = [v - 1 / v for v in s]
    zeta = [v * v for v in s]
    base_t = km_pfaffian(sys, SqrtChoice(tuple(t)))
    base_z = km_pfaffian(sys, ZetaChoice(tuple(zeta)))
    i = gen.integer(0, 2 * m - 1)
    flipped = list(t)
    flipped[i] = -flipped[i]
    inverted = list(zeta)
    inverted[i] = 1 / inverted[i]
    # distinct z rule out coincidences among the flipped or inverted roots
    value_t = km_pfaffian(sys, SqrtChoice(tuple(flipped)))
    value_z = km_pfaffian(sys, ZetaChoice(tuple(inverted)))
    ok = base_t == value_t and base_z == value_z and base_t == base_z
    return ok, {"system": sys, "t": t, "zeta": zeta, "index": i,
                "values": [base_t, value_t, base_z, value_z]}


def suite_bb(gen: Generator, max_n: int, max_m: int) -> Outcome:
    zi, zj = gen.nonzero(), gen.nonzero()
    z = lambda v: v + 1 / v - 2  # noqa: E731
    lhs = z(zj) - z(zi)
    rhs = -(zj - zi) * (1 - zi * zj) / (zi * zj)
    return lhs == rhs, {"zeta": [zi, zj], "lhs": lhs, "rhs": rhs}


def suite_hodge(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m, min_m=0)
    sys = gen.system(n, max_points=5)
    for s in subsets(n, m):
        sign, target = hodge_star(sys, m, s)
        sign_back, back = hodge_star(sys, n - m, target)
        if back != s or sign * sign_back != (-1) ** (m * (n - m)):
            return False, {"system": sys, "S": s, "signs": [sign, sign_back]}
        for _ in range(3):
            x = [gen.rational() for _ in range(n - m)]
            direct, predicted = hodge_check(sys, s, x)
            if direct != predicted:
                return False, {"system": sys, "S": s, "x": x, "lhs": direct, "rhs": predicted}
        y = [gen.rational() for _ in range(m)]
        twice, expected = hodge_double_check(sys, s, y)
        if twice != expected:
            return False, {"system": sys, "S": s, "x": y, "lhs": twice, "rhs": expected}
    return True, {}


def suite_reproducing(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    for u in subsets(n, m):
        for _ in range(2):
            x = [gen.rational() for _ in range(m)]
            value = integrate_sym(
                lambda y: basis_minor(sys, u, y) * kernel_numerator(sys, x, y), sys.measure, m
            )
            expected = basis_minor(sys, u, x)
            if value != expected:
                return False, {"system": sys, "U": u, "x": x, "lhs": value, "rhs": expected}
    return True, {}


def suite_confluent(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    positive = gen.rng.random() < 0.5
    sys = gen.system(n, positive=positive)
    x = gen.distinct(m)
    value = km_confluent(sys, x)
    integral = km_eval(sys, x, x, "integral")
    corr = correlation_integral(sys, x)
    d2 = vandermonde(x) ** 2
    ok = value == integral and corr == d2 * value
    if positive and sys.measure.positive:
        ok = ok and d2 * value >= 0
    return ok, {"system": sys, "x": x, "confluent": value, "integral": integral, "correlation": corr}


def suite_contraction(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, _ = _n_m(gen, max_n, max_m)
    sys = gen.system(n, max_points=5)
    for m in range(n + 1):
        for l in range(m, n + 1):
            x = [gen.rational() for _ in range(m)]
            y = [gen.rational() for _ in range(m)]
            lhs, rhs = contraction_check(sys, m, l, x, y)
            if lhs != rhs:
                return False, {"system": sys, "m": m, "l": l, "x": x, "y": y, "lhs": lhs, "rhs": rhs}
    return True, {}


def suite_schur(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    expansion = schur_expansion(sys, m).polynomial()
    kernel = km_polynomial(sys, m)
    return expansion == kernel, {"system": sys, "m": m, "expansion": str(expansion), "kernel": str(kernel)}


def suite_general_expansion(gen: Generator, max_n: int, max_m: int) -> Outcome:
    n, m = _n_m(gen, max_n, max_m)
    sys = gen.system(n)
    monomials = [MultiPoly.univariate([0] * k + [1]) for k in range(n)]
    ortho = [sys.poly(k) for k in range(n)]
    payload = {"system": sys, "m": m}

    coeffs = general_expansion(sys, m, ortho, ortho)
    for (s, t), c in coeffs.items():
        expected = 1 / sys.norm_product(s) if s == t else Fraction(0)
        if c != expected:
            return False, {**payload, "basis": "orthogonal", "S": s, "T": t, "coeff": c}

    schur = schur_expansion(sys, m)
    coeffs = general_expansion(sys, m, monomials, monomials)
    for (s, t), c in coeffs.items():
        if c != schur.coefficient(subset_to_partition(s), subset_to_partition(t)):
            return False, {**payload, "basis": "monomial", "S": s, "T": t, "coeff": c}

    def random_basis():
        # unit upper-triangular change of basis keeps linear independence
        return [
            MultiPoly.univariate([gen.rational() for _ in range(k)] + [1]) for k in range(n)
        ]

    e, f = random_basis(), random_basis()
    coeffs = general_expansion(sys, m, e, f)
    xs = vandermonde_poly(m, [f"x{i}" for i in range(1, m + 1)])
    ys = vandermonde_poly(m, [f"y{i}" for i in range(1, m + 1)])
    target = km_polynomial(sys, m) * xs * ys
    target = target.with_variables(xs.variables + ys.variables)
    rebuilt = general_expansion_polynomial(coeffs, e, f, m)
    return rebuilt == target, {**payload, "basis": "random", "rebuilt": str(rebuilt), "target": str(target)}


def suite_rains(gen: Generator, max_n: int, max_m: int) -> Outcome:
    m = gen.integer(1, max(1, max_m))
    a = [[gen.integer(-9, 9) for _ in range(2 * m)] for _ in range(2 * m)]
    lhs, rhs = ids.rains_sides(a)
    return lhs == rhs, {"matrix": a, "lhs": lhs, "rhs": rhs}


def suite_sundquist(gen: Generator, max_n: int, max_m: int) -> Outcome:
    m = gen.integer(1, max(1, max_m))

    def draw():
        s = gen.zeta_parameters(2 * m)
        flips = [i for i in range(2 * m) if gen.rng.random() < 0.5]
        inp = ids.FreeInput.from_parameters([gen.rational() for _ in range(2 * m)], s, flips)
        try:
            results = [ids.sundquist_sides(inp, S) for S in subsets(2 * m, m)]
        except ids.SingularInput:
            return None
        return inp, results

    inp, results = gen.resample(draw, lambda v: v is not None)
    for S, (dpi, dpia, dpib) in zip(subsets(2 * m, m), results):
        if not dpi == dpia == dpib:
            return False, {"a": inp.a, "t": inp.t, "zeta": inp.zeta, "S": S, "values": [dpi, dpia, dpib]}
    return True, {}


def _quadratic_params(gen: Generator, need_discriminant: bool) -> Tuple[Fraction, Fraction, Fraction]:
    def draw():
        return gen.rational(), gen.rational(), gen.rational()

    return gen.resample(draw, lambda p: not need_discriminant or p[1] ** 2 - p[0] * p[2] != 0)


def suite_iw(gen: Generator, max_n: int, max_m: int) -> Outcome:
    m = gen.integer(1, max(1, max_m))

    def draw():
        a, b, c = _quadratic_params(gen, m >= 2)
        x = [gen.rational() for _ in range(2 * m)]
        z = [gen.rational() for _ in range(2 * m)]
        try:
            sides = ids.iw_sides(x, z, a, b, c)
            diag = ids.iw_sides(x, x, a, b, c)[0], ids.iw_diagonal_closed_form(x, a, b, c)
            rains = ids.rains_sides(ids.iw_rains_matrix(x, z, a, b, c))
        except ids.SingularInput:
            return None
        return (a, b, c, x, z), sides, diag, rains

    params, (lhs, rhs), diag, rains = gen.resample(draw, lambda v: v is not None)
    ok = lhs == rhs and diag[0] == diag[1] and rains == (lhs, rhs)
    return ok, {"params": params, "sides": [lhs, rhs], "diagonal": diag, "rains": rains}


def suite_ssc(gen: Generator, max_n: int, max_m: int) -> Outcome:
    m = gen.integer(1, max(1, max_m))
    x = [gen.rational() for _ in range(2 * m)]
    a, b, c = _quadratic_params(gen, False)
    lhs, rhs = ids.ssc_sides(x, a, b, c)
    # a second triple with the same b^2 - ac
    disc = b * b - a * c
    b2 = gen.rational()
    c2 = gen.nonzero()
    a2 = (b2 * b2 - disc) / c2
    lhs2, _ = ids.ssc_sides(x, a2, b2, c2)
    return lhs == rhs == lhs2, {"x": x, "params": [a, b, c], "params2": [a2, b2, c2],
                                "values": [lhs, rhs, lhs2]}


def suite_cauchy(gen: Generator, max_n: int, max_m: int) -> Outcome:
    m = gen.integer(1, 3)

    def draw():
        a, b, c = _quadratic_params(gen, True)
        x = [gen.rational() for _ in range(m)]
        y = [gen.rational() for _ in range(m)]
        try:
            return (a, b, c, x, y), ids.cauchy_sides(x, y, a, b, c)
        except ids.SingularInput:
            return None

    params, (lhs, rhs) = gen.resample(draw, lambda v: v is not None)
    return lhs == rhs, {"params": params, "lhs": lhs, "rhs": rhs}


def _leibniz(a) -> Fraction:
    size = len(a)
    total = Fraction(0)
    for perm in itertools.permutations(range(size)):
        term = Fraction(permutation_sign(perm))
        for i in range(size):
            term *= a[i][perm[i]]
        total += term
    return total


def suite_pfaffian_det(gen: Generator, max_n: int, max_m: int) -> Outcome:
    dim = 2 * gen.integer(1, 3)
    a = [[Fraction(0)] * dim for _ in range(dim)]
    for i, j in itertools.combinations(range(dim), 2):
        a[i][j] = gen.rational()
        a[j][i] = -a[i][j]
    pf, det = pfaffian(a), determinant(a)
    return pf * pf == det, {"matrix": a, "pfaffian": pf, "determinant": det}


def suite_determinant(gen: Generator, max_n: int, max_m: int) -> Outcome:
    size = gen.integer(1, 5)
    a = [[gen.rational() for _ in range(size)] for _ in range(size)]
    if gen.rng.random() < 0.3 and size > 1:
        a[1] = list(a[0])
    lhs, rhs = determinant(a), _leibniz(a)
    return lhs == rhs, {"matrix": a, "bareiss": lhs, "leibniz": rhs}


def suite_prop4_from_prop5(gen: Generator, max_n: int, max_m: int) -> Outcome:
    """a_i = p_n(z_i)/p_{n-1}(z_i) turns the determinant form into K_m(z)."""
    n, m = _n_m(gen, max_n, max_m)
    sys = gen.system(n)

    def draw():
        s = gen.zeta_parameters(2 * m)
        t = [v - 1 / v for v in s]
        z = [v * v for v in t]
        if any(sys.value(n - 1, zi) == 0 for zi in z):
            return None
        return s, t, z

    s, t, z = gen.resample(draw, lambda v: v is not None)
    a = [sys.value(n, zi) / sys.value(n - 1, zi) for zi in z]
    inp = ids.FreeInput.from_parameters(a, s)
    dpi, dpia, dpib = ids.sundquist_sides(inp, range(1, m + 1))
    scale = Fraction(1)
    for zi in z:
        scale *= sys.value(n - 1, zi)
    recovered = dpi * scale / (sys.norms[n - 1] ** m * vandermonde(z))
    expected = km_pfaffian(sys, SqrtChoice(tuple(t)))
    other = km_eval(sys, z[:m], z[m:], "integral")
    return recovered == expected == other, {"system": sys, "z": z,
                                            "values": [recovered, expected, other]}


SUITES: Dict[str, Callable[[Generator, int, int], Outcome]] = {
    "route-agreement": suite_route_agreement,
    "cd-formula": suite_cd_formula,
    "orthogonality": suite_orthogonality,
    "po": suite_po,
    "dsp": suite_dsp,
    "symmetry": suite_symmetry,
    "choice-independence": suite_choice_independence,
    "bb": suite_bb,
    "hodge": suite_hodge,
    "reproducing": suite_reproducing,
    "confluent": suite_confluent,
    "contraction": suite_contraction,
    "schur": suite_schur,
    "general-expansion": suite_general_expansion,
    "rains": suite_rains,
    "sundquist": suite_sundquist,
    "iw": suite_iw,
    "ssc": suite_ssc,
    "cauchy": suite_cauchy,
    "pfaffian-det": suite_pfaffian_det,
    "determinant": suite_determinant,
    "prop4-from-prop5": suite_prop4_from_prop5,
}


def run_suite(name: str, trials: int, seed: int, max_n: int, max_m: int) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    gen = Generator(f"{seed}/{name}")
    check = SUITES[name]
    passed = 0
    counterexample = None
    start = time.perf_counter()
    for trial in range(trials):
        try:
            ok, payload = check(gen, max_n, max_m)
        except CDKernelError as exc:
            ok, payload = False, {"error": f"{type(exc).__name__}: {exc}"}
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = {"trial": trial, **_ser(payload)}
    return SuiteReport(name, trials, passed, counterexample, time.perf_counter() - start)


def run_suites(names: Sequence[str], trials: int, seed: int, max_n: int, max_m: int) -> List[SuiteReport]:
    return [run_suite(name, trials, seed, max_n, max_m) for name in names]
