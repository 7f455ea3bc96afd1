"""
Verification suites. Each builder turns a SuiteConfig into a list of cases; each case
compares a closed form with its oracle and reports rel_err and passed.
"""
import logging
import math
import time
import typing

import numpy as np

from ..arith import coprime_residues, divisors, factorize, odd_squarefree, primes_up_to
from ..charsums import (
    RealCharacter, char_sum_ap_exact, char_sum_ap_table, compare_t_sums, gauss_sum_closed, gauss_sum_oracle,
)
from ..charsums.tsum import ORACLE_MAX_MODULUS
from ..errors import ConfigError
from ..numeric import relative_error
from ..oscillatory import (
    OscParams, Regime, h0_transform, i_integral, ibp_decay_ratios, k_plus, mellin_surrogate, phase_taylor, regime_of,
    scaled_stationary_point, stationary_phase_leading,
)
from ..poisson import check_poisson_modulus, compare_sides, gaussian_shapes
from ..sieve import (
    CoefficientMode, SieveScanConfig, large_sieve_ratio, lvalue_oracle, quadratic_L_value, weighted_second_moment,
)
from ..zseries import (
    CaseLabel, Domain, DomainLabel, Z2Part, local_factor_oracle, local_factor_ramified, local_factor_unramified,
    random_point, z2_closed, z2_oracle, z_kl_oracle, z_kl_product,
)
from .config import SuiteConfig
from .report import RunReport, version_string
from .runner import Case, execute

logger = logging.getLogger(__name__)

LOCAL_MARGIN = 0.2
GLOBAL_MARGIN = 1.0
GLOBAL_POINTS = 5
GLOBAL_CUTOFF = 600
Z2_SPLITS = range(3, 20)
Z2_SPLIT_LIMIT = 1e-13
MULTIPLICATIVE_PAIRS = 500
MULTIPLICATIVE_RANGE = 64
STATIONARY_POINT_LIMIT = 1e-6
PARITY_LIMIT = 1e-9
REMAINDER_SLACK = 0.2
SUPPRESSION_LIMIT = 1e-3
IBP_MIN_RATIO = 8.0
H0_LIMIT = 1e-7
N_REGIME_ONE, N_REGIME_TWO, U_REGIME_TWO = 100.0, 50.0, 5.0


# character sums

def _t_sum_case(c: int, pairs: list[tuple[int, int]], tol: float) -> dict:
    rows = [compare_t_sums(a, b, c) for a, b in pairs]
    worst = max(rows, key=lambda row: row["rel_err"])
    return {
        "c": c, "pairs": len(rows), "a": worst["a"], "b": worst["b"],
        "rel_err": float(worst["rel_err"]), "passed": bool(worst["rel_err"] <= tol),
    }


def t_sum_moduli(c_max: int, exponents: typing.Iterable[int]) -> list[int]:
    """c = 2**j c_o <= c_max with c_o odd and j among the exponents."""
    return sorted(c for j in set(exponents) for c in range(2 ** j, c_max + 1, 2 ** (j + 1)))


def charsums_suite(cfg: SuiteConfig) -> list[Case]:
    if min(cfg.j) < 4:
        raise ConfigError("the closed form of T covers 2**j | c with j >= 4 only.")
    if cfg.c_max > ORACLE_MAX_MODULUS:
        raise ConfigError(f"c_max is limited to {ORACLE_MAX_MODULUS} by the oracle.")
    block = [(a, b) for a in range(-cfg.block, cfg.block + 1) for b in range(-cfg.block, cfg.block + 1)]
    cases = []
    for c in t_sum_moduli(cfg.c_max, cfg.j):
        rng = np.random.default_rng([cfg.seed, c])
        random_pairs = [tuple(int(v) for v in pair) for pair in rng.integers(0, c, size=(cfg.rand_pairs, 2))]
        cases.append(Case((c,), f"c={c}", _t_sum_case, {"c": c, "pairs": block + random_pairs, "tol": cfg.tol}))
    return cases


def _gauss_case(c: int, residues: list[int], tol: float) -> dict:
    errors = [
        relative_error(gauss_sum_closed(a, c).value, gauss_sum_oracle(a, c).value, scale=math.sqrt(c))
        for a in residues
    ]
    worst = int(np.argmax(errors))
    return {"c": c, "samples": len(errors), "a": residues[worst], "rel_err": errors[worst], "passed": errors[worst] <= tol}


def _gauss_multiplicative_case(seed: int, pairs: int, tol: float) -> dict:
    """G(a; c1 c2) = G(a c2; c1) G(a c1; c2) for coprime c1, c2."""
    rng = np.random.default_rng([seed, pairs])
    worst = 0.0
    done = 0
    while done < pairs:
        c1, c2 = (int(v) for v in rng.integers(1, MULTIPLICATIVE_RANGE + 1, size=2))
        if math.gcd(c1, c2) != 1:
            continue
        units = coprime_residues(c1 * c2)
        a = int(units[rng.integers(0, len(units))])
        product = gauss_sum_oracle(a * c2, c1).value * gauss_sum_oracle(a * c1, c2).value
        worst = max(worst, relative_error(product, gauss_sum_oracle(a, c1 * c2).value, scale=math.sqrt(c1 * c2)))
        done += 1
    return {"c": 0, "samples": pairs, "a": 0, "rel_err": worst, "passed": worst <= tol}


def gauss_suite(cfg: SuiteConfig) -> list[Case]:
    cases = []
    for c in range(1, cfg.c_max + 1):
        if c % 4 == 2:
            continue
        units = coprime_residues(c)
        rng = np.random.default_rng([cfg.seed, c])
        picked = rng.choice(units, size=min(cfg.samples, len(units)), replace=False)
        cases.append(Case((0, c), f"c={c}", _gauss_case, {"c": c, "residues": sorted(int(a) for a in picked), "tol": cfg.tol}))
    cases.append(Case(
        (1, 0), "multiplicativity", _gauss_multiplicative_case,
        {"seed": cfg.seed, "pairs": MULTIPLICATIVE_PAIRS, "tol": cfg.tol},
    ))
    return cases


def characters_mod(q: int) -> list[RealCharacter]:
    """Every real character of the progression form: q_star an odd squarefree divisor of q."""
    primes = list(factorize(q))
    radical_q = math.prod(primes)
    return [
        RealCharacter(q, q_star, radical_q // q_star)
        for q_star in divisors(radical_q) if q_star % 2
    ]


def _progression_case(q: int) -> dict:
    checked = mismatches = 0
    for chi in characters_mod(q):
        for d in divisors(q):
            table = char_sum_ap_table(chi, d)
            for a in coprime_residues(d).tolist():
                checked += 1
                if char_sum_ap_exact(chi, a, d) != int(table[a]):
                    mismatches += 1
    return {"q": q, "checked": checked, "mismatches": mismatches, "rel_err": float(mismatches), "passed": mismatches == 0}


def charsum_ap_suite(cfg: SuiteConfig) -> list[Case]:
    return [Case((q,), f"q={q}", _progression_case, {"q": q}) for q in range(1, cfg.q_max + 1)]


# Dirichlet series

def _points(seed: int, count: int, margin: float, spread: float = 1.0) -> list:
    rng = np.random.default_rng(seed)
    return [random_point(rng, DomainLabel(Domain.D0, margin), spread=spread) for _ in range(count)]


def _local_case(p: int, seed: int, points: int, tol: float) -> dict:
    worst = 0.0
    for pt in _points(seed, points, LOCAL_MARGIN):
        for chi_p in (-1, 0, 1):
            closed = local_factor_ramified(p, pt) if chi_p == 0 else local_factor_unramified(p, chi_p, pt)
            worst = max(worst, relative_error(closed, local_factor_oracle(p, chi_p, pt).value))
    return {"p": p, "points": points, "rel_err": worst, "passed": worst <= tol}


def zseries_local_suite(cfg: SuiteConfig) -> list[Case]:
    return [
        Case((p,), f"p={p}", _local_case, {"p": p, "seed": cfg.seed, "points": cfg.points, "tol": cfg.tol})
        for p in primes_up_to(cfg.p_max).tolist() if p > 2
    ]


def _global_case(k: int, l: int, seed: int, tol: float) -> dict:
    worst = 0.0
    for pt in _points(seed, GLOBAL_POINTS, GLOBAL_MARGIN, spread=0.5):
        oracle = z_kl_oracle(k, l, pt, cutoff=GLOBAL_CUTOFF)
        worst = max(worst, relative_error(z_kl_product(k, l, pt).value, oracle.value))
    return {"k": k, "l": l, "rel_err": worst, "passed": worst <= tol}


def zseries_global_suite(cfg: SuiteConfig) -> list[Case]:
    moduli = odd_squarefree(cfg.kl_max).tolist()
    return [
        Case((k, l), f"k={k} l={l}", _global_case, {"k": k, "l": l, "seed": cfg.seed, "tol": cfg.tol})
        for k in moduli for l in moduli
    ]


def _z2_case(index: int, seed: int, tol: float) -> dict:
    pt = _points(seed, index + 1, LOCAL_MARGIN)[index]
    worst = split = 0.0
    for delta in (0, 1):
        for case in CaseLabel:
            worst = max(worst, relative_error(z2_closed(case, pt, delta), z2_oracle(case, pt, delta).value))
        for L in Z2_SPLITS:
            for part in (Z2Part.HEAD, Z2Part.TAIL):
                closed = z2_closed(CaseLabel.IV, pt, delta, L, part)
                worst = max(worst, relative_error(closed, z2_oracle(CaseLabel.IV, pt, delta, L, part=part).value))
            total = z2_closed(CaseLabel.IV, pt, delta)
            pieces = z2_closed(CaseLabel.IV, pt, delta, L, Z2Part.HEAD) + z2_closed(CaseLabel.IV, pt, delta, L, Z2Part.TAIL)
            split = max(split, relative_error(pieces, total))
    return {
        "point": index, "split_err": split, "rel_err": worst,
        "passed": worst <= tol and split <= Z2_SPLIT_LIMIT,
    }


def z2_suite(cfg: SuiteConfig) -> list[Case]:
    return [
        Case((i,), f"point={i}", _z2_case, {"index": i, "seed": cfg.seed, "tol": cfg.tol})
        for i in range(cfg.points)
    ]


# oscillatory integrals

def regime_one_params(U: float, N: float = N_REGIME_ONE) -> OscParams:
    """U-dominant parameters with the stationary point at (1.5 N, 1.5 N) and eps N^2 / U = 0.1."""
    eps = 0.1 * U / N ** 2
    x0 = 1.5 * N
    return OscParams(U / x0 - eps * x0, U / x0 + eps * x0, U, eps, N)


def regime_two_params(eps: float, U: float = U_REGIME_TWO, N: float = N_REGIME_TWO) -> OscParams:
    x0 = 1.5 * N
    return OscParams(U / x0 - eps * x0, U / x0 + eps * x0, U, eps, N)


def _magnitude_case(params: dict, scale: float, bound: float) -> dict:
    p = OscParams(**params)
    value = abs(i_integral(p).value)
    measure = value * scale
    row = {"U": p.U, "eps": p.eps, "N": p.N, "measure": measure, "rel_err": None}
    if p.U > 0 and regime_of(p) is Regime.U_DOMINANT:
        row["rel_err"] = abs(value / abs(stationary_phase_leading(p)) - 1)
    row["passed"] = 1 / bound <= measure <= bound
    return row


def _suppression_case(U: float, N: float) -> dict:
    inside = abs(i_integral(OscParams(2 * U / (3 * N), 2 * U / (3 * N), U, 0, N)).value)
    outside = abs(i_integral(OscParams(3 * U / N, 3 * U / N, U, 0, N)).value)
    ratio = outside / inside
    return {"U": U, "eps": 0.0, "N": N, "measure": ratio, "rel_err": None, "passed": ratio <= SUPPRESSION_LIMIT}


def _ibp_case() -> dict:
    decay = ibp_decay_ratios()
    worst = float(np.min(decay.ratios))
    return {"U": 0.0, "eps": 0.0, "N": 0.0, "measure": worst, "rel_err": None, "passed": worst >= IBP_MIN_RATIO}


def oscillatory_suite(cfg: SuiteConfig) -> list[Case]:
    cases = [
        Case((0, U), f"regime-one U={U:g}", _magnitude_case,
             {"params": regime_one_params(U)._asdict(), "scale": U / N_REGIME_ONE ** 2, "bound": cfg.bound})
        for U in sorted(cfg.U)
    ]
    cases += [
        Case((1, eps), f"regime-two eps={eps:g}", _magnitude_case,
             {"params": regime_two_params(eps)._asdict(), "scale": eps, "bound": cfg.bound})
        for eps in (0.03, 0.06)
    ]
    cases.append(Case((2, 0), "suppression", _suppression_case, {"U": 100.0, "N": N_REGIME_TWO}))
    cases.append(Case((3, 0), "integration-by-parts", _ibp_case, {}))
    return cases


def _stationary_case(check: str, tol: float) -> dict:
    if check == "u-taylor":
        taylor = phase_taylor(Regime.U_DOMINANT, 0.2, 1)
        error = max(abs(taylor.coefficients[0] - 1), abs(taylor.coefficients[1] + 1 / 3))
        limit = tol
    elif check == "u-point":
        x, y, _ = scaled_stationary_point(Regime.U_DOMINANT, 0.1)
        error, limit = abs(x * y - 0.990195), STATIONARY_POINT_LIMIT
    elif check == "u-remainder":
        ratio = phase_taylor(Regime.U_DOMINANT, 0.2, 1).remainder / phase_taylor(Regime.U_DOMINANT, 0.1, 1).remainder
        error, limit = abs(ratio / 32 - 1), REMAINDER_SLACK
    elif check == "eps-point":
        x, _, _ = scaled_stationary_point(Regime.EPS_DOMINANT, 0.1)
        error, limit = abs(x - 0.909902), STATIONARY_POINT_LIMIT
    elif check == "eps-parity":
        error, limit = phase_taylor(Regime.EPS_DOMINANT, 0.1, 2).parity_defect, PARITY_LIMIT
    else:
        raise ConfigError(f"unknown stationary phase check {check!r}.")
    return {"check": check, "limit": limit, "rel_err": float(error), "passed": bool(error <= limit)}


STATIONARY_CHECKS = ("u-taylor", "u-point", "u-remainder", "eps-point", "eps-parity")


def stationary_suite(cfg: SuiteConfig) -> list[Case]:
    return [
        Case((i,), check, _stationary_case, {"check": check, "tol": cfg.tol})
        for i, check in enumerate(STATIONARY_CHECKS)
    ]


def _k_plus_support_case(T: float, Delta: float, tol: float) -> dict:
    scale = Delta * T
    peak = max(abs(k_plus(x, T, Delta).value) for x in np.geomspace(scale, 10 * scale, 5))
    ratio = abs(k_plus(scale / 10, T, Delta).value) / peak
    return {"check": "support", "rel_err": ratio, "passed": ratio <= tol}


def _h0_case(T: float, Delta: float) -> dict:
    x = 2 * Delta * T
    h0 = h0_transform(x, T, Delta).value
    expected = 2 * Delta * T * complex(np.exp(1j * x)) * k_plus(x, T, Delta).value
    error = relative_error(h0, expected)
    return {"check": "h0", "rel_err": error, "passed": error <= H0_LIMIT}


def kplus_suite(cfg: SuiteConfig) -> list[Case]:
    return [
        Case((0,), "support", _k_plus_support_case, {"T": cfg.T, "Delta": cfg.Delta, "tol": cfg.tol}),
        Case((1,), "h0", _h0_case, {"T": cfg.T, "Delta": cfg.Delta}),
    ]


def _mellin_case(X: float, tol: float) -> dict:
    report = mellin_surrogate(X)
    row = {k: float(v) for k, v in report._asdict().items()}
    row.update(rel_err=report.reconstruction_error, passed=report.reconstruction_error <= tol)
    return row


def mellin_suite(cfg: SuiteConfig) -> list[Case]:
    return [Case((X,), f"X={X:g}", _mellin_case, {"X": X, "tol": cfg.tol}) for X in sorted(cfg.X)]


# Poisson summation

def _poisson_case(c: int, shape: str, tol: float) -> dict:
    case = compare_sides(c, gaussian_shapes(c)[shape], shape)
    return {
        "c": c, "shape": shape,
        "direct_re": case.direct.real, "direct_im": case.direct.imag,
        "dual_re": case.dual.real, "dual_im": case.dual.imag,
        "rel_err": case.relative_error, "passed": case.passed(tol),
    }


def poisson_suite(cfg: SuiteConfig) -> list[Case]:
    cases = []
    for c in sorted(set(cfg.moduli)):
        check_poisson_modulus(c)
        for index, shape in enumerate(list(gaussian_shapes(c))[:cfg.shapes]):
            cases.append(Case((c, index), f"c={c} shape={shape}", _poisson_case, {"c": c, "shape": shape, "tol": cfg.tol}))
    return cases


# large sieve and L-values

def _sieve_case(config: dict, bound: float) -> dict:
    report = large_sieve_ratio(SieveScanConfig(**config))
    return {
        "mode": report.config.mode.value, "trials": len(report.lhs),
        "max_ratio": report.max_ratio, "median_ratio": report.median_ratio,
        "rel_err": None, "passed": report.max_ratio <= bound,
    }


def sieve_suite(cfg: SuiteConfig) -> list[Case]:
    base = SieveScanConfig(cfg.M, cfg.sieve_N, cfg.trials, cfg.coefficients, cfg.seed, cfg.spike)
    spike = base._replace(trials=1, mode=CoefficientMode.SINGLE_SPIKE)
    for config in (base, spike):
        config.validated()
    return [
        Case((0,), base.mode.value, _sieve_case, {"config": base._asdict(), "bound": cfg.bound}),
        Case((1,), "single_spike", _sieve_case, {"config": spike._asdict(), "bound": 1.0}),
    ]


def _lvalue_case(m: int, t: float, tol: float) -> dict:
    value, oracle = quadratic_L_value(m, t), lvalue_oracle(m, t)
    error = relative_error(value, oracle, scale=1.0)
    return {"m": m, "t": t, "re": value.real, "im": value.imag, "rel_err": error, "passed": error <= tol}


def _moment_case(M: int, t: float, bound: float) -> dict:
    report = weighted_second_moment(M, t)
    return {"M": M, "t": t, "total": report.total, "ratio": report.ratio, "rel_err": None, "passed": report.ratio <= bound}


def lvalues_suite(cfg: SuiteConfig) -> list[Case]:
    cases = [
        Case((0, m, t), f"m={m} t={t:g}", _lvalue_case, {"m": m, "t": t, "tol": cfg.tol})
        for m in odd_squarefree(cfg.m_max).tolist() for t in sorted(cfg.heights)
    ]
    cases += [
        Case((1, cfg.M, t), f"moment M={cfg.M} t={t:g}", _moment_case, {"M": cfg.M, "t": t, "bound": cfg.bound})
        for t in sorted(cfg.heights)
    ]
    return cases


VERIFY_SUITES: dict[str, typing.Callable[[SuiteConfig], list[Case]]] = {
    "charsums": charsums_suite,
    "gauss": gauss_suite,
    "charsum-ap": charsum_ap_suite,
    "zseries-local": zseries_local_suite,
    "zseries-global": zseries_global_suite,
    "z2": z2_suite,
    "oscillatory": oscillatory_suite,
    "stationary": stationary_suite,
    "kplus": kplus_suite,
    "mellin": mellin_suite,
    "poisson": poisson_suite,
    "sieve": sieve_suite,
    "lvalues": lvalues_suite,
}


def build_report(cfg: SuiteConfig, cases: list[Case], summary: typing.Optional[dict] = None) -> RunReport:
    """Runs the cases and wraps the sorted rows; wall time is zeroed for deterministic runs."""
    if not cases:
        raise ConfigError(f"{cfg.mode.value} {cfg.suite} has no cases for this configuration.")
    logger.info("%s %s: %d cases on %d workers", cfg.mode.value, cfg.suite, len(cases), cfg.jobs)
    start = time.perf_counter()
    rows = execute(cases, cfg.jobs)
    wall_ms = 0.0 if cfg.deterministic else round(1000 * (time.perf_counter() - start), 3)
    return RunReport(cfg, version_string(), rows, wall_ms, summary or {})


def run_suite(cfg: SuiteConfig) -> RunReport:
    """
    Runs a verification suite and writes its JSON and CSV reports.

    :raises ConfigError: on an invalid range or an unwritable output directory
    """
    report = build_report(cfg, VERIFY_SUITES[cfg.suite](cfg))
    for row in report.failures:
        logger.warning("%s failed: %s", row["case"], row)
    logger.info(
        "verify %s: %d cases, %d failures, max rel err %s", cfg.suite, report.n_cases, report.n_failures,
        report.max_rel_err,
    )
    report.write()
    return report
