"""Identity verification suites over the fixed corpus.

Each suite returns a list of report items; an item names the identity being
checked, the case (corpus entry or parameter point), the exactness window on
which it was certified, a pass/fail status, and the first discrepancy when
one exists.  Identity failures are report content, never exceptions.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .corpus import load_corpus, random_generators, split_by_multiplier
from .laguerre import (
    cross_sequence_check,
    degenerate_laguerre_explicit,
    degenerate_laguerre_operator,
    frac_laguerre,
    laguerre_delta_series,
    laguerre_generator,
    laguerre_genfun_check,
    laguerre_ode_residual,
    laguerre_p0_float_demo,
)
from .operators import (
    NormalForm,
    apply_op,
    compose_ops,
    d_op,
    d_power_op,
    diag_op,
    exp_loc_nilpotent,
    first_discrepancy,
    gen_pow,
    identity_op,
    km_operator,
    log_unipotent,
    normal_form,
    nth_pincherle,
    op_add,
    op_from_D_series,
    op_from_normal_form,
    op_from_x_poly,
    op_from_x_series,
    op_scale,
    op_sub,
    pincherle_derivative,
    xD_op,
)
from .polynomials import Polynomial
from .scalars import FLOAT
from .series import DEFAULT_ORDER, TruncatedSeries
from .umbral import (
    CONSTRUCTIONS,
    UmbralSpec,
    coeff_identity_scan,
    duality_check,
    extract_generator_field,
    genfun_check,
    group_law_checks,
    itlog,
    julia_residual,
    pincherle_ode_residual,
    umbral_bucc,
    umbral_exp_itlog,
    umbral_garsia,
)

SCHEMA_VERSION = 1


def _item(suite, identity, case, window, ok, where=None):
    return {
        "suite": suite,
        "identity": identity,
        "case": case,
        "window": window,
        "status": "exact-pass" if ok else "fail",
        "first_discrepancy": None if ok else where,
    }


def _from_report(suite, case, report):
    out = dict(report)
    out["suite"] = suite
    out["case"] = case
    return out


def suite_formulas(corpus, order):
    items = []
    for name, f in corpus:
        spec = UmbralSpec(f)
        base = umbral_garsia(spec)
        for cname, builder in CONSTRUCTIONS.items():
            if cname == "garsia":
                continue
            other = builder(spec)
            d = first_discrepancy(base.matrix, other.matrix)
            w = min(base.matrix.window, other.matrix.window)
            items.append(
                _item("formulas", f"cross-formula:{cname}", name, w, d is None, d)
            )
    return items


def suite_duality(corpus, order):
    return [
        _from_report("duality", name, duality_check(UmbralSpec(f)))
        for name, f in corpus
    ]


def suite_itlog(corpus, order):
    items = []
    tangent, _ = split_by_multiplier(corpus)
    for name, f in tangent:
        spec = UmbralSpec(f)
        v = spec.itlog_series
        extracted = extract_generator_field(umbral_exp_itlog(spec))
        ok = extracted == v.truncate(extracted.order)
        items.append(_item("itlog", "field-extraction", name, extracted.order, ok))
        resid = julia_residual(f, v)
        items.append(
            _item(
                "itlog",
                "julia-equation",
                name,
                resid.order,
                resid.is_zero(),
                None if resid.is_zero() else {"coeff": resid.valuation()},
            )
        )
    return items


def suite_ode(corpus, order):
    items = []
    for name, f in corpus:
        spec = UmbralSpec(f)
        resid = pincherle_ode_residual(umbral_bucc(spec))
        ok = resid.is_window_zero()
        items.append(_item("ode", "derivation-equation", name, resid.window, ok))
    return items


def suite_genfun(corpus, order):
    items = []
    t_order = min(8, order - 2)
    for name, f in corpus:
        spec = UmbralSpec(f)
        rep = genfun_check(umbral_bucc(spec), t_order)
        items.append(_from_report("genfun", name, rep))
    return items


def suite_group(corpus, order):
    items = []
    tangent, general = split_by_multiplier(corpus)
    pairs = [
        (Fraction(1, 2), Fraction(1, 2)),
        (Fraction(1, 2), Fraction(1, 3)),
        (Fraction(-1, 1), Fraction(1, 2)),
    ]
    for name, f in tangent:
        spec = UmbralSpec(f)
        for s, t in pairs:
            rep = group_law_checks(spec, s, t)
            for it in rep["items"]:
                items.append(_from_report("group", f"{name}[s={s},t={t}]", it))
    for name, f in general:
        spec = UmbralSpec(f)
        rep = group_law_checks(spec, 2, 3)
        for it in rep["items"]:
            items.append(_from_report("group", f"{name}[s=2,t=3]", it))
    return items


def suite_coeff(corpus, order):
    items = []
    tangent, general = split_by_multiplier(corpus)
    n_max = min(8, order - 2)
    for name, f in tangent:
        spec = UmbralSpec(f)
        for s in (Fraction(1, 2), Fraction(2), Fraction(-1)):
            bad = coeff_identity_scan(spec, s, n_max)
            items.append(
                _item(
                    "coeff",
                    "fractional-coefficient-identity",
                    f"{name}[s={s}]",
                    n_max,
                    bad is None,
                    None if bad is None else {"col": bad[0], "coeff": bad[1]},
                )
            )
    for name, f in general:
        spec = UmbralSpec(f)
        for s in (2, 3):
            bad = coeff_identity_scan(spec, s, n_max)
            items.append(
                _item(
                    "coeff",
                    "fractional-coefficient-identity",
                    f"{name}[s={s}]",
                    n_max,
                    bad is None,
                    None if bad is None else {"col": bad[0], "coeff": bad[1]},
                )
            )
    return items


def _random_normal_form(rng, j_max=3, k_max=3, terms=4) -> NormalForm:
    table = {}
    for _ in range(terms):
        j = rng.randint(0, j_max)
        k = rng.randint(0, k_max)
        table[(j, k)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return NormalForm(table)


def _random_poly(rng, deg=3) -> Polynomial:
    return Polynomial([Fraction(rng.randint(-3, 3)) for _ in range(deg + 1)])


def suite_kernel(corpus, order, seed=None):
    items = []
    rng = random.Random(0 if seed is None else seed)
    n0 = 6

    # commutator [D, x] = 1 via the derivative rule x' = 1 and D' = 1
    dprime = pincherle_derivative(d_op(n0 + 1))
    ok = first_discrepancy(dprime, identity_op(dprime.n_in, dprime.max_out)) is None
    items.append(_item("kernel", "commutator-D-x", "D", dprime.window, ok))

    # Leibniz rule and the derivation property on seeded sparse operators
    for i in range(25):
        nf = _random_normal_form(rng)
        U = op_from_normal_form(nf, n0 + 6, n0 + 9)
        p = _random_poly(rng)
        P = op_from_x_poly(p, n0)
        lhs = compose_ops(U, P)
        rhs = None
        for k in range(p.degree + 1):
            Uk = nth_pincherle(U, k)
            pk = p.derivative(k).scale(Fraction(1, math.factorial(k)))
            if pk.is_zero():
                continue
            term = compose_ops(op_from_x_poly(pk, Uk.max_out), compose_ops(Uk, identity_op(n0)))
            rhs = term if rhs is None else op_add(rhs, term)
        d = first_discrepancy(lhs, rhs)
        items.append(
            _item("kernel", "operator-leibniz-rule", f"random-{i}", min(lhs.window, rhs.window), d is None, d)
        )

    for i in range(10):
        A = op_from_normal_form(_random_normal_form(rng), n0 + 6, n0 + 9)
        B = op_from_normal_form(_random_normal_form(rng), n0 + 6, n0 + 9)
        lhs = pincherle_derivative(compose_ops(A, B))
        rhs = op_add(
            compose_ops(pincherle_derivative(A), B),
            compose_ops(A, pincherle_derivative(B)),
        )
        d = first_discrepancy(lhs, rhs)
        items.append(
            _item("kernel", "derivative-is-derivation", f"random-{i}", min(lhs.window, rhs.window), d is None, d)
        )

    # both iterated-derivative paths agree (nth_pincherle cross-checks internally)
    try:
        for i in range(5):
            U = op_from_normal_form(_random_normal_form(rng), n0 + 6, n0 + 9)
            nth_pincherle(U, 3)
        items.append(_item("kernel", "iterated-derivative-paths", "random", n0, True))
    except AssertionError:
        items.append(_item("kernel", "iterated-derivative-paths", "random", n0, False))

    # x^n D^n equals the falling factorial of the degree operator
    for n in range(5):
        dn = d_power_op(n, n0)
        lhs = compose_ops(op_from_x_poly(Polynomial.monomial(n, 1), n0), dn)
        falling = [math.prod(range(m, m - n, -1)) for m in range(n0 + 1)]
        rhs = diag_op(falling, n0)
        d = first_discrepancy(lhs, rhs)
        items.append(_item("kernel", "degree-falling-factorial", f"n={n}", n0, d is None, d))

    # exponentiation identity: sum x^n V^n / n! = (e^x)^V for V = f(D) - D
    f = TruncatedSeries([0, 1, 1], order)
    spec = UmbralSpec(f)
    n_max = spec.default_n_max()
    v_series = TruncatedSeries([0, 0, 1], n_max)
    V = op_from_D_series(v_series, n_max)
    exp_x = TruncatedSeries(
        [Fraction(1, math.factorial(k)) for k in range(n_max + 1)], n_max
    )
    eU = op_from_x_series(exp_x, n_max, n_max)
    lhs = gen_pow(eU, V)
    rhs = umbral_bucc(spec, n_max).matrix
    d = first_discrepancy(lhs, rhs)
    items.append(
        _item("kernel", "exponentiation-identity", "f=t+t^2", min(lhs.window, rhs.window), d is None, d)
    )

    # exp / log inversion on the corpus umbral matrices
    tangent, _ = split_by_multiplier(corpus)
    for name, g in tangent:
        U = umbral_bucc(UmbralSpec(g)).matrix
        back = exp_loc_nilpotent(log_unipotent(U))
        d = first_discrepancy(U, back)
        items.append(_item("kernel", "exp-log-roundtrip", name, U.window, d is None, d))

    # normal-form round trip and the x/D swap on random tables
    for i in range(10):
        nf = _random_normal_form(rng)
        U = op_from_normal_form(nf, n0 + 6, n0 + 9)
        back = normal_form(U, k_max=3, j_max=3)
        ok = back == nf
        items.append(_item("kernel", "normal-form-roundtrip", f"random-{i}", U.window, ok))
        ok2 = nf.l_transform().l_transform() == nf
        items.append(_item("kernel", "swap-involution", f"random-{i}", U.window, ok2))

    # the swap is anti-multiplicative: rebuilt matrices of L(UV) and L(V)L(U)
    for i in range(5):
        nfa = _random_normal_form(rng, terms=2)
        nfb = _random_normal_form(rng, terms=2)
        A = op_from_normal_form(nfa, n0 + 8, n0 + 12)
        B = op_from_normal_form(nfb, n0 + 4, n0 + 8)
        prod_nf = normal_form(compose_ops(A, B), k_max=n0, j_max=n0 + 12)
        lhs = op_from_normal_form(prod_nf.l_transform(), n0, n0 + 12)
        LA = op_from_normal_form(nfa.l_transform(), n0 + 4, n0 + 8)
        LB = op_from_normal_form(nfb.l_transform(), n0 + 8, n0 + 12)
        rhs = compose_ops(LB, LA)
        d = first_discrepancy(lhs, rhs)
        items.append(
            _item("kernel", "swap-anti-multiplicative", f"random-{i}", min(lhs.window, rhs.window), d is None, d)
        )

    # two-sided expansion in x-series and delta-operator series rebuilding
    # the direct construction
    n_max = spec.default_n_max()
    gs = [
        TruncatedSeries([0] * k + [Fraction(1, math.factorial(k))], n_max)
        for k in range(n_max + 1)
    ]
    diff = (spec.f - TruncatedSeries.t(spec.f.order, spec.f.mode)).truncate(n_max)
    hs = [TruncatedSeries.one(n_max)]
    for k in range(n_max):
        hs.append(hs[-1] * diff)
    km = km_operator(gs, hs, d_op(n_max))
    d = first_discrepancy(km, umbral_bucc(spec, n_max).matrix)
    items.append(
        _item("kernel", "two-sided-expansion", "f=t+t^2", min(km.window, n_max), d is None, d)
    )

    # placement of the binomial factors matters: search for an operator pair
    # where the two orderings of the generalized power differ
    base = op_from_D_series(TruncatedSeries([1, -1], n0), n0)
    expo = xD_op(n0)
    left = gen_pow(base, expo, term_bound=n0 + 2)
    um1 = op_sub(base, identity_op(n0, n0))
    right = identity_op(n0, n0)
    power = identity_op(n0, n0)
    bino = identity_op(n0, n0)
    for m in range(1, n0 + 3):
        power = compose_ops(power, um1)
        shifted = op_sub(expo, op_scale(identity_op(n0, n0), m - 1))
        bino = op_scale(compose_ops(bino, shifted), Fraction(1, m))
        right = op_add(right, compose_ops(bino, power))
    d = first_discrepancy(left, right)
    items.append(
        _item("kernel", "power-placement-counterexample", "(1-D)^(xD)", n0, d is not None, None)
    )

    return items


def suite_laguerre(corpus, order):
    items = []
    for p in (1, 2, 3):
        for alpha in (-1, 0, 1, 2):
            ok_agree = True
            ok_ode = True
            where = None
            for n in range(11):
                e = degenerate_laguerre_explicit(p, n, alpha)
                o = degenerate_laguerre_operator(p, n, alpha)
                if e != o and ok_agree:
                    ok_agree = False
                    where = {"n": n}
                if not laguerre_ode_residual(p, n, alpha).is_zero() and ok_ode:
                    ok_ode = False
            case = f"p={p},alpha={alpha}"
            items.append(_item("laguerre", "explicit-vs-operator", case, 10, ok_agree, where))
            items.append(_item("laguerre", "ode-residual", case, 10, ok_ode))
        for alpha, beta in ((1, -1), (0, 2)):
            rep = cross_sequence_check(p, 6, alpha, beta)
            items.append(_from_report("laguerre", f"p={p},alpha={alpha},beta={beta}", rep))
        rep = laguerre_genfun_check(p, 1, 7)
        items.append(_from_report("laguerre", f"p={p},alpha=1", rep))
        # closed-form flow against the general machinery
        from .umbral import flow

        v = TruncatedSeries([0] * (p + 1) + [-1], order)
        for s in (1, Fraction(1, 2)):
            ok = flow(v, s) == laguerre_generator(p, s, order)
            items.append(_item("laguerre", "flow-closed-form", f"p={p},s={s}", order, ok))
        ok = laguerre_delta_series(p, order - 1) == laguerre_generator(p, 1, order - 1).comp_inverse()
        items.append(_item("laguerre", "delta-series", f"p={p}", order - 1, ok))
        # fractional members against the general fractional power
        from .umbral import frac_power

        spec = UmbralSpec(laguerre_generator(p, 1, order))
        for s in (Fraction(1, 2), 2):
            P = frac_power(spec, s)
            ok = all(
                apply_op(P.matrix, Polynomial.monomial(n, 1)) == frac_laguerre(p, n, s)
                for n in range(min(9, P.matrix.window + 1))
            )
            items.append(_item("laguerre", "fractional-member", f"p={p},s={s}", 8, ok))
    return items


def suite_float(corpus, order):
    items = []
    demo = laguerre_p0_float_demo()
    items.append(
        {
            "suite": "float",
            "identity": demo["identity"],
            "case": "f=t/e",
            "window": 8,
            "status": "exact-pass" if demo["status"] == "pass" else "fail",
            "first_discrepancy": None
            if demo["status"] == "pass"
            else {"max_abs_error": demo["max_abs_error"]},
        }
    )
    f = TruncatedSeries([0.0, 2.0], order, FLOAT)
    v = itlog(f)
    err = max(
        abs(v[n] - (math.log(2.0) if n == 1 else 0.0)) for n in range(order + 1)
    )
    items.append(
        _item("float", "scaling-field", "f=2t", order, err <= 1e-12, {"max_abs_error": err} if err > 1e-12 else None)
    )
    return items


SUITES = {
    "formulas": suite_formulas,
    "duality": suite_duality,
    "itlog": suite_itlog,
    "ode": suite_ode,
    "genfun": suite_genfun,
    "group": suite_group,
    "coeff": suite_coeff,
    "kernel": suite_kernel,
    "laguerre": suite_laguerre,
    "float": suite_float,
}


def run_verify(
    suites="all",
    seed: int | None = None,
    corpus_path: str | None = None,
    order: int = DEFAULT_ORDER,
) -> dict:
    """Run the requested suites and assemble the versioned report."""
    if suites == "all":
        names = list(SUITES)
    elif isinstance(suites, str):
        names = [s.strip() for s in suites.split(",") if s.strip()]
    else:
        names = list(suites)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite: {name}")
    corpus = load_corpus(corpus_path, order)
    if seed is not None:
        corpus = corpus + random_generators(seed, count=3, order=order)
    items = []
    for name in names:
        fn = SUITES[name]
        if name == "kernel":
            items.extend(fn(corpus, order, seed=seed))
        else:
            items.extend(fn(corpus, order))
    items.sort(key=lambda it: (it["suite"], it["identity"], it["case"]))
    passed = all(it["status"] == "exact-pass" for it in items)
    return {
        "schema_version": SCHEMA_VERSION,
        "suites": names,
        "order": order,
        "seed": seed,
        "passed": passed,
        "items": items,
    }
