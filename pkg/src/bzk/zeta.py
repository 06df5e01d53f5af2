"""Rooted Bartholdi zeta function by independent routes.

Routes: exponential of the cyclic-bump log-series, the closed product
formula, the spectral form for regular graphs, and the Euler product over
primitive rooted closed walks.  The first, second and fourth are exact
truncated series; the third is numeric and comes with a reported truncation
bound.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graphs import operators
from .operators import (adjacency_poly, alpha, cm_sequence, delta_diag,
                        qxt_poly, r_values)
from .paths import primitive_rooted_closed_paths
from .series import (ONE_MINUS_T, TPOLY_ONE, TPOLY_T, TPOLY_ZERO,
                     OperatorPoly, OperatorSeries, TPoly, USeries)


class DomainError(ValueError):
    """Numeric parameters outside the guaranteed region."""


class NotRegular(ValueError):
    """A regular-graph-only route was asked of a non-regular graph."""


class EigensolverFailure(RuntimeError):
    """Numeric eigenvalues failed the exact cross-check."""


# ---------------------------------------------------------------------------
# log-series route


def cbc_entries(g, x0, x, order):
    """Cyclic-bump operator entries (x0, x) for every length m <= order.

    Same values as cm_cbc(g, m)[x0, x], computed through row-level
    recursions so large orders stay cheap.
    """
    cms = cm_sequence(g, order)
    deg = g.degrees[x0]
    one_minus_t_sq = ONE_MINUS_T * ONE_MINUS_T
    one_minus_t2 = TPoly((1, 0, -1))
    diagonal = x == x0

    # s[m] = sum_{j>=1} (1-t)^(2j-1) C_{m-2j}[x0, x]
    entries = [TPOLY_ZERO] * (order + 1)
    if order >= 0:
        entries[0] = cms[0].entry(x0, x)
    if order >= 1:
        entries[1] = cms[1].entry(x0, x)
    if order >= 2:
        entries[2] = cms[2].entry(x0, x) * TPOLY_T
    s_prev2, s_prev1 = TPOLY_ZERO, TPOLY_ZERO  # s[1], s[2]
    if diagonal:
        # R_m via its generating recursion:
        # R_m = DC_{m-2} + ((1-t)^2 + (1-t^2)) R_{m-2} - (1-t)^2 (1-t^2) R_{m-4}
        dvals = [delta_diag(g, cms[k])[x0] for k in range(max(order - 1, 0))]
        r_prev = [TPOLY_ZERO] * 4  # R_{m-4}..R_{m-1} rolling
        mix = one_minus_t_sq + one_minus_t2
        prod = one_minus_t_sq * one_minus_t2
    dfac = TPoly((deg - 2, 2))
    for m in range(3, order + 1):
        s_m = ONE_MINUS_T * cms[m - 2].entry(x0, x) + one_minus_t_sq * s_prev2
        ent = cms[m].entry(x0, x) - dfac * s_m
        if diagonal:
            r_m = dvals[m - 2] + mix * r_prev[2] - prod * r_prev[0]
            ent = ent + ONE_MINUS_T * r_m
            if m % 2 == 0:
                ent = ent - ONE_MINUS_T ** (m - 1) * TPoly((0, deg))
            r_prev = [r_prev[1], r_prev[2], r_prev[3], r_m]
        entries[m] = ent
        s_prev2, s_prev1 = s_prev1, s_m
    return entries


def zeta_log_coefficients(g, x0, x, order):
    """Coefficients of log Z: entry_m / m for m >= 1 (index 0 unused)."""
    ent = cbc_entries(g, x0, x, order)
    return [TPOLY_ZERO] + [ent[m] * Fraction(1, m) for m in range(1, order + 1)]


def zeta_log_series(g, x0, x, order):
    """exp of the cyclic-bump log-series, truncated at the given order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = zeta_log_coefficients(g, x0, x, order)
    return USeries(order, coeffs).exp()


# ---------------------------------------------------------------------------
# closed product-formula route


@lru_cache(maxsize=16)
def _f_power_table(g, order):
    """Powers f^0..f^order of f(u) = u A - u^2 (1-t)(D - (1-t)I)."""
    n = g.vertex_count
    f = OperatorSeries(
        n, order,
        [OperatorPoly.zero(n), adjacency_poly(g), -(qxt_poly(g).scale(ONE_MINUS_T))],
    )
    powers = [OperatorSeries.identity(n, order)]
    for _ in range(order):
        powers.append(powers[-1] * f)
    return tuple(powers)


def _commutator_matrix(g):
    """A D - D A as integer rows; zero exactly when the graph is regular."""
    adjacency, valency, _ = operators(g)
    n = g.vertex_count
    return [
        [adjacency[i][j] * (valency[j][j] - valency[i][i]) for j in range(n)]
        for i in range(n)
    ]


def zeta_formula_series(g, x0, x, order):
    """Closed-formula route: product of the prefactor, the matrix-log
    factor, the commutator integral, the length-2 correction and the defect
    series, each exponentiated as exact truncated series."""
    if order < 1:
        raise ValueError("order must be >= 1")
    n = g.vertex_count
    deg = g.degrees[x0]
    powers = _f_power_table(g, order)
    one = USeries.one(order)
    one_minus_t_sq = ONE_MINUS_T * ONE_MINUS_T

    # exp(-[log(I - f)](x0, x)) with log(I - f) = -sum f^k / k
    log_entry = USeries.zero(order)
    for k in range(1, order + 1):
        pk = powers[k].entry(x0, x)
        if not pk.is_zero():
            log_entry = log_entry + pk * Fraction(1, k)
    factor_log = log_entry.exp()

    # (1-(1-t)^2 u^2)^(-(deg-2)/2) at the root, 1 off the diagonal
    if x == x0:
        quad = USeries(order, [TPOLY_ONE, TPOLY_ZERO, -one_minus_t_sq])
        factor_pre = quad.pow_scalar(Fraction(-(deg - 2), 2))
    else:
        factor_pre = one

    # commutator integral; the commutator vanishes on regular graphs
    commutator = _commutator_matrix(g)
    pairs = [
        (p, q, commutator[p][q])
        for p in range(n)
        for q in range(n)
        if commutator[p][q]
    ]
    if pairs:
        integrand = USeries.zero(order)
        for nn in range(2, order + 1):
            inner = USeries.zero(order)
            for j in range(1, nn):
                left = powers[nn - 1 - j]
                right = powers[j - 1]
                ent = USeries.zero(order)
                for p, q, kpq in pairs:
                    lp = left.entry(x0, p)
                    if lp.is_zero():
                        continue
                    rq = right.entry(q, x)
                    if rq.is_zero():
                        continue
                    ent = ent + lp * rq * kpq
                if not ent.is_zero():
                    inner = inner + ent * j
            if not inner.is_zero():
                integrand = integrand + inner * Fraction(1, nn)
        exponent = (integrand.shift(2) * ONE_MINUS_T).integrate()
        factor_comm = exponent.exp()
    else:
        factor_comm = one

    # exp([t D - C_2](x0, x) / 2 * (1-t) u^2)
    c2 = cm_sequence(g, 2)[2].entry(x0, x)
    correction = (TPoly((0, deg)) if x == x0 else TPOLY_ZERO) - c2
    factor_c2 = USeries(
        order, [TPOLY_ZERO, TPOLY_ZERO, correction * ONE_MINUS_T * Fraction(1, 2)]
    ).exp()

    # exp(sum_{m>=3} (1-t) R_m(x0) / m u^m); the defect operator is diagonal
    if x == x0 and order >= 3:
        rv = r_values(g, order)
        coeffs = [TPOLY_ZERO] * (order + 1)
        for m in range(3, order + 1):
            coeffs[m] = ONE_MINUS_T * rv[m][x0] * Fraction(1, m)
        factor_defect = USeries(order, coeffs).exp()
    else:
        factor_defect = one

    return factor_pre * factor_log * factor_comm * factor_c2 * factor_defect


# ---------------------------------------------------------------------------
# Euler product route


def euler_product_series(g, x0, order):
    """Product over primitive rooted closed walks of length <= order of
    (1 - t^cbc u^len)^(-1/len), truncated.

    Accumulated as the exponent sum over walks of
    sum_k t^(cbc k) u^(len k) / (len k), then exponentiated once; this equals
    the factor-by-factor truncated product exactly.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    acc = [dict() for _ in range(order + 1)]
    for _, length, cbc in primitive_rooted_closed_paths(g, x0, order):
        for k in range(1, order // length + 1):
            row = acc[length * k]
            power = cbc * k
            row[power] = row.get(power, Fraction(0)) + Fraction(1, length * k)
    coeffs = [TPOLY_ZERO] * (order + 1)
    for m, row in enumerate(acc):
        if row:
            top = max(row)
            coeffs[m] = TPoly([row.get(p, 0) for p in range(top + 1)])
    return USeries(order, coeffs).exp()


# ---------------------------------------------------------------------------
# exact eigenvalue machinery (characteristic polynomial cross-check)


def charpoly_exact(mat):
    """Monic characteristic polynomial det(lambda I - M), ascending
    Fraction coefficients, by the trace recursion."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    coeff = [Fraction(0)] * (n + 1)
    coeff[n] = Fraction(1)
    m = [row[:] for row in a]
    coeff[n - 1] = -sum(m[i][i] for i in range(n))
    for k in range(2, n + 1):
        for i in range(n):
            m[i][i] += coeff[n - k + 1]
        m = [
            [sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
        coeff[n - k] = -sum(m[i][i] for i in range(n)) / k
    return coeff


def _poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_deriv(p):
    return [c * k for k, c in enumerate(p)][1:] or [Fraction(0)]


def _poly_trim(p):
    q = list(p)
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if b == [Fraction(0)]:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    rem = [Fraction(x) for x in a]
    while True:
        rem = _poly_trim(rem)
        if rem == [Fraction(0)] or len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        factor = rem[-1] / b[-1]
        quo[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
    return _poly_trim(quo), rem


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b != [Fraction(0)]:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def _squarefree_decomposition(p):
    """Yun's algorithm: list of (factor, multiplicity), factors monic and
    squarefree, product of factor^multiplicity = p up to a constant."""
    p = _poly_trim(p)
    lead = p[-1]
    p = [c / lead for c in p]
    dp = _poly_deriv(p)
    g = _poly_gcd(p, dp)
    if len(g) == 1:
        return [(p, 1)]
    c, _ = _poly_divmod(p, g)
    d = _poly_sub(_poly_divmod(dp, g)[0], _poly_deriv(c))
    out = []
    i = 1
    while c != [Fraction(1)]:
        a = _poly_gcd(c, d)
        if len(a) > 1:
            out.append((a, i))
        c, _ = _poly_divmod(c, a)
        d = _poly_sub(_poly_divmod(d, a)[0], _poly_deriv(c))
        i += 1
    return out


def _sturm_chain(p):
    chain = [_poly_trim(p), _poly_deriv(p)]
    while _poly_trim(chain[-1]) != [Fraction(0)] and len(chain[-1]) > 1:
        _, r = _poly_divmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    if _poly_trim(chain[-1]) == [Fraction(0)]:
        chain.pop()
    return chain


def _sign_variations(chain, x):
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _roots_in(chain, lo, hi):
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def isolate_real_roots(p, lo, hi, width=Fraction(1, 10**12)):
    """Distinct real roots of p in (lo, hi] with multiplicities, each bracketed
    to the requested width.  Returns a list of (lo, hi, multiplicity)."""
    out = []
    for factor, mult in _squarefree_decomposition(p):
        if len(factor) == 1:
            continue
        chain = _sturm_chain(factor)
        total = _roots_in(chain, lo, hi)
        stack = [(lo, hi, total)]
        while stack:
            a, b, cnt = stack.pop()
            if cnt == 0:
                continue
            if cnt == 1 and b - a <= width:
                out.append((a, b, mult))
                continue
            mid = (a + b) / 2
            if _poly_eval(factor, mid) == 0:
                if cnt == 1:
                    out.append((mid, mid, mult))
                    continue
                left = _roots_in(chain, a, mid)
                stack.append((a, mid, left))
                stack.append((mid, b, cnt - left))
                continue
            left = _roots_in(chain, a, mid)
            stack.append((a, mid, left))
            stack.append((mid, b, cnt - left))
    out.sort(key=lambda item: item[0])
    return out


# ---------------------------------------------------------------------------
# spectral route


@dataclass
class SpectralData:
    """Distinct Laplacian eigenvalues with local pair weights.

    weights[i] is the (x0, x) entry of the eigenprojection for
    eigenvalues[i]; multiplicities records the eigenspace dimensions.
    """

    x0: int
    x: int
    eigenvalues: tuple
    weights: tuple
    multiplicities: tuple


@lru_cache(maxsize=32)
def _eigh_cached(g):
    _, _, laplacian = operators(g)
    w, v = np.linalg.eigh(np.array(laplacian, dtype=float))
    return w, v


def _grouped_spectrum(g, gap=1e-8):
    w, v = _eigh_cached(g)
    groups = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > gap:
            groups.append((start, i))
            start = i
    return w, v, groups


def local_spectrum(g, x0, x):
    """Eigendecomposition of the Laplacian with per-pair local weights.

    On graphs with at most 10 vertices the numeric eigenvalues are verified
    against exact characteristic-polynomial root isolation to 1e-10;
    disagreement raises EigensolverFailure.
    """
    w, v, groups = _grouped_spectrum(g)
    eigenvalues = []
    weights = []
    mults = []
    for a, b in groups:
        eigenvalues.append(float(np.mean(w[a:b])))
        weights.append(float(np.dot(v[x0, a:b], v[x, a:b])))
        mults.append(b - a)
    if g.vertex_count <= 10:
        _, _, laplacian = operators(g)
        p = charpoly_exact(laplacian)
        top = 2 * g.max_degree + 1
        roots = isolate_real_roots(p, Fraction(-1), Fraction(top))
        if len(roots) != len(groups):
            raise EigensolverFailure(
                f"{len(groups)} numeric eigenvalue groups vs {len(roots)} exact roots"
            )
        for (lo, hi, mult), lam, k in zip(roots, eigenvalues, mults):
            if mult != k:
                raise EigensolverFailure(f"multiplicity mismatch near {lam}")
            mid = float((lo + hi) / 2)
            if abs(mid - lam) > 1e-10:
                raise EigensolverFailure(f"eigenvalue {lam} vs exact {mid}")
    return SpectralData(
        x0=x0,
        x=x,
        eigenvalues=tuple(eigenvalues),
        weights=tuple(weights),
        multiplicities=tuple(mults),
    )


def _require_regular(g):
    q_plus_1 = g.regular_degree()
    if q_plus_1 is None:
        raise NotRegular(f"{g.label} is not regular")
    return q_plus_1 - 1


R_TAIL_ORDER = 20


def zeta_spectral_report(g, x0, x, u, t):
    """Spectral-route evaluation with the full numeric record."""
    q = _require_regular(g)
    if not -1.0 < t < 1.0:
        raise DomainError("need |t| < 1")
    a = alpha(g, abs(t))
    if not 0.0 < u < 1.0 / a:
        raise DomainError(f"need 0 < u < 1/alpha = {1.0 / a:.6g}")

    spd = local_spectrum(g, x0, x)
    integral = 0.0
    for lam, mu in zip(spd.eigenvalues, spd.weights):
        arg = 1.0 - (q + 1 - lam) * u + (1.0 - t) * (q + t) * u * u
        if arg <= 0.0:
            raise DomainError("log argument left the positive region")
        integral -= math.log(arg) * mu
    spectral_factor = math.exp(integral)

    if x == x0:
        prefactor = (1.0 - (1.0 - t) ** 2 * u * u) ** (-(q - 1) / 2.0)
    else:
        prefactor = 1.0

    c2 = cm_sequence(g, 2)[2].entry(x0, x)
    corr = (t * g.degrees[x0] if x == x0 else 0.0) - c2.evaluate(t)
    c2_factor = math.exp(corr / 2.0 * (1.0 - t) * u * u)

    order = R_TAIL_ORDER
    if x == x0:
        rv = r_values(g, order)
        r_sum = sum(
            (1.0 - t) * rv[m][x0].evaluate(t) / m * u**m for m in range(3, order + 1)
        )
    else:
        r_sum = 0.0
    defect_factor = math.exp(r_sum)

    # |R_m| <= 2 M a^(m-2) / (1 - beta/a^2)^2 with beta = |1-t|(1+|t|),
    # so the dropped tail is geometric in (a u).
    beta = abs(1.0 - t) * (1.0 + abs(t))
    au = a * u
    if beta < a * a and au < 1.0:
        scale = abs(1.0 - t) * 2.0 * g.max_degree / (a * a * (1.0 - beta / a**2) ** 2)
        tail = scale * au ** (order + 1) / ((order + 1) * (1.0 - au))
    else:
        tail = math.inf
    value = prefactor * spectral_factor * c2_factor * defect_factor
    return {
        "value": value,
        "u": u,
        "t": t,
        "order": order,
        "r_tail_bound": tail,
        "spectral_factor": spectral_factor,
        "prefactor": prefactor,
        "c2_factor": c2_factor,
        "defect_factor": defect_factor,
    }


def zeta_spectral(g, x0, x, u, t):
    """Numeric spectral-route value of the rooted zeta at (u, t)."""
    return zeta_spectral_report(g, x0, x, u, t)["value"]
