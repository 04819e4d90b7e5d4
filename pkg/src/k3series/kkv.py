"""BPS counts, Hodge integral series, and stable-pairs invariants of K3 fibers.

Everything is derived from two exact generating functions: the discriminant
Delta(q) and its two-variable refinement Delta(y, q).  The module builds

  * the integer BPS table r_{g,h} (z-basis coefficients of 1/Delta(y,q)),
  * the rational Hodge integral table R_{g,h} (a bivariate exp formula),
  * Euler characteristics of stable-pairs moduli and their point-constrained
    refinements C^k_{n,h},
  * the variable change y = -exp(iu) connecting the two sides, kept exact
    through the symmetric substitution w = y + 1/y -> s^2 - 2 with
    s = 2 sin(u/2).

Bivariate series are nested: an outer u-Series whose coefficients are
q-Series; all window bookkeeping is inherited from the series layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .series import (
    PrecisionError,
    Series,
    YLaurent,
    series_exp,
    series_inv,
    series_log,
    sin_half_square,
    symmetric_to_z,
    trig_substitute,
)
from . import modforms
from .modforms import bernoulli, discriminant_q, discriminant_yq, eisenstein


def format_rational(x):
    """Render a Fraction as 'p' or 'p/q' (never a float)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _sign(m):
    """(-1)^m, safe for negative m."""
    return -1 if m % 2 else 1


_TABLE_FIELDS = {
    "r": ("g", "h"),
    "R": ("g", "h"),
    "euler": ("n", "h"),
    "signedZ": ("n", "h"),
    "C_point": ("k", "n", "h"),
    "euler_pk": ("k", "n", "h"),
}


@dataclass
class InvariantTable:
    """Exact table of invariants, keyed by integer index tuples."""

    kind: str
    entries: dict
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _TABLE_FIELDS:
            raise ValueError(f"unknown table kind {self.kind!r}")

    def fields(self):
        return _TABLE_FIELDS[self.kind]

    def value(self, *index):
        if index not in self.entries:
            raise KeyError(f"{self.kind} table has no entry {index}")
        return self.entries[index]

    def rows(self):
        return sorted(self.entries.items())

    def to_json_obj(self):
        names = self.fields()
        rows = []
        for idx, v in self.rows():
            row = {name: int(i) for name, i in zip(names, idx)}
            row["value"] = format_rational(v)
            rows.append(row)
        return {"kind": self.kind, "rows": rows}

    def to_csv(self):
        names = self.fields()
        lines = [",".join(names) + ",value"]
        for idx, v in self.rows():
            lines.append(",".join(str(i) for i in idx) + "," + format_rational(v))
        return "\n".join(lines) + "\n"

    def to_text(self):
        names = self.fields()
        lines = []
        for idx, v in self.rows():
            head = " ".join(f"{n}={i}" for n, i in zip(names, idx))
            lines.append(f"{head}  {format_rational(v)}")
        return "\n".join(lines) + "\n"


@dataclass
class CorrespondenceReport:
    """Result of one GW/pairs comparison after the variable change."""

    h: int
    k: int
    u_order: int
    gw_side: Series
    pairs_side: Series
    numerator_symmetric: bool
    equal: bool


@lru_cache(maxsize=None)
def inv_discriminant_q(order):
    """1/Delta(q), certified from q^-1 through q^order."""
    return series_inv(discriminant_q(order + 2))


@lru_cache(maxsize=None)
def inv_discriminant_yq(order):
    """1/Delta(y, q) with exact symmetric YLaurent coefficients."""
    return series_inv(discriminant_yq(order + 2))


def _as_ylaurent(c):
    if isinstance(c, YLaurent):
        return c
    return YLaurent({0: c})


def bps_r_table(g_max, h_max):
    """The BPS counts r_{g,h}: signed z-basis coefficients of 1/Delta(y,q).

    Integrality and the support bound (zero above z-degree h) are asserted
    while filling the table.
    """
    inv = inv_discriminant_yq(max(h_max - 1, -1))
    entries = {}
    for h in range(0, h_max + 1):
        row = _as_ylaurent(inv.coeff(h - 1))
        zs = symmetric_to_z(row)
        top = len(zs) - 1
        if any(zs[g] for g in range(h + 1, top + 1)):
            raise AssertionError(f"BPS row h={h} has z-degree above h")
        for g in range(0, g_max + 1):
            v = Fraction((-1) ** g) * (zs[g] if g < len(zs) else Fraction(0))
            if v.denominator != 1:
                raise AssertionError(f"BPS count r_{{{g},{h}}} is not an integer")
            entries[(g, h)] = v
    return InvariantTable("r", entries)


def _bernoulli_abs_factor(g):
    """|B_2g| / (g * (2g)!)."""
    return abs(bernoulli(2 * g)) / (g * factorial(2 * g))


@lru_cache(maxsize=None)
def hodge_r_series(u_order, q_order):
    """The bivariate Hodge series sum R_{g,h} u^{2g-2} q^{h-1}.

    Equals u^-2/Delta(q) times the exponential of
    sum_{g>=1} u^{2g} |B_2g|/(g (2g)!) E_2g(q).
    """
    bu = u_order + 2
    bq = q_order + 1
    inv_d = series_inv(discriminant_q(bq + 2))
    coeffs = []
    for j in range(2, bu + 1):
        if j % 2 == 0:
            coeffs.append(_bernoulli_abs_factor(j // 2) * eisenstein(j, bq + 1))
        else:
            coeffs.append(Fraction(0))
    arg = Series("u", 2, coeffs, bu)
    expo = series_exp(arg)
    pre = Series("u", -2, [inv_d] + [Fraction(0)] * (bu + 2), bu)
    out = pre * expo
    if out.order < u_order:
        raise AssertionError("window bookkeeping error in hodge_r_series")
    return out


def _inner_coeff(bivariate, u_exp, q_exp):
    """Coefficient of u^u_exp q^q_exp in a nested series."""
    c = bivariate.coeff(u_exp)
    if isinstance(c, Series):
        return c.coeff(q_exp)
    return Fraction(c) if q_exp == 0 else Fraction(0)


def u_slice(bivariate, q_exp):
    """The u-series of coefficients of q^q_exp."""
    coeffs = [_inner_coeff(bivariate, j, q_exp)
              for j in range(bivariate.min_exp, bivariate.order + 1)]
    return Series("u", bivariate.min_exp, coeffs, bivariate.order)


def hodge_r_table(g_max, h_max):
    """The Hodge integral table R_{g,h}; odd u-rows are asserted zero."""
    biv = hodge_r_series(2 * g_max - 2, max(h_max - 1, 0))
    for j in range(biv.min_exp, 2 * g_max - 1):
        if j % 2:
            row = biv.coeff(j)
            if isinstance(row, Series):
                if not row.is_zero_on_window():
                    raise AssertionError("odd u-power appears in the Hodge series")
            elif row != 0:
                raise AssertionError("odd u-power appears in the Hodge series")
    entries = {}
    for g in range(0, g_max + 1):
        for h in range(0, h_max + 1):
            entries[(g, h)] = _inner_coeff(biv, 2 * g - 2, h - 1)
    return InvariantTable("R", entries)


@dataclass
class TransformReport:
    g_max: int
    h_max: int
    u_order: int
    equal: bool
    mismatches: list


def bps_transform_check(g_max, h_max):
    """Check sum_g R_{g,h} u^{2g-2} = sum_g r_{g,h} s^{2g-2}, s = 2 sin(u/2).

    Verified per h on the certified window u^-2 .. u^{2*g_max-2}.
    """
    u_order = 2 * g_max - 2
    budget = 2 * g_max + 2
    r_tab = bps_r_table(g_max, h_max)
    big_tab = hodge_r_table(g_max, h_max)
    s2 = sin_half_square(budget)
    powers = {-1: series_inv(s2), 0: Series.one("u", budget)}
    for g in range(2, g_max + 1):
        powers[g - 1] = powers[g - 2] * s2
    mismatches = []
    for h in range(0, h_max + 1):
        lhs = Series.zero("u", u_order, -2)
        for g in range(0, g_max + 1):
            v = r_tab.value(g, h)
            if v:
                lhs = lhs + v * powers[g - 1]
        coeffs = []
        for j in range(-2, u_order + 1):
            coeffs.append(big_tab.value((j + 2) // 2, h) if j % 2 == 0 else Fraction(0))
        rhs = Series("u", -2, coeffs, u_order)
        if min(lhs.order, rhs.order) < u_order:
            raise AssertionError("window bookkeeping error in bps_transform_check")
        if lhs != rhs:
            mismatches.append(h)
    return TransformReport(g_max, h_max, u_order, not mismatches, mismatches)


def ky_euler_table(n_max, h_max):
    """Euler characteristics e(P_n(S, h)) of stable-pairs moduli spaces.

    Row h of 1/Delta(y,q) is an exact Laurent polynomial; multiplying by the
    ascending expansion 1/(y - 2 + 1/y) = sum_{i>=1} i y^i gives the Euler
    characteristics, which vanish for n < 1 - h (asserted).
    """
    inv = inv_discriminant_yq(max(h_max - 1, -1))
    entries = {}
    for h in range(0, h_max + 1):
        row = _as_ylaurent(inv.coeff(h - 1))
        for n in range(1 - h - 3, 1 - h):
            if _ascending_extract(row, n):
                raise AssertionError(f"e(P_{n}(S,{h})) should vanish below n = 1-h")
        for n in range(1 - h, n_max + 1):
            v = _ascending_extract(row, n)
            if v.denominator != 1:
                raise AssertionError("Euler characteristic is not an integer")
            entries[(n, h)] = v
    return InvariantTable("euler", entries)


def _ascending_extract(row, n):
    """Coefficient of y^n in row(y) * sum_{i>=1} i y^i."""
    acc = Fraction(0)
    for j, c in row.terms.items():
        if n - j >= 1:
            acc += c * (n - j)
    return acc


def signed_euler_table(euler):
    """(-1)^{n + 2h - 1} e(P_n(S,h)): the signed pairs partition numbers."""
    entries = {}
    for (n, h), v in euler.entries.items():
        entries[(n, h)] = Fraction(_sign(n + 1)) * v
    return InvariantTable("signedZ", entries)


def pairs_signed_Z(h, n_window):
    """Closed rational form of the signed pairs series at genus parameter h.

    Returns (N_h, report): the numerator N_h(y) = [q^{h-1}] 1/Delta(-y, q)
    with Z_h(y) = N_h(y) * y/(1+y)^2, plus a report checking symmetry and
    the ascending expansion against the signed Euler characteristics up to
    y^n_window.
    """
    inv = inv_discriminant_yq(max(h - 1, -1))
    numerator = _as_ylaurent(inv.coeff(h - 1)).substitute_neg()
    euler = ky_euler_table(n_window, h)
    signed = signed_euler_table(euler)
    mismatches = []
    for n in range(1 - h, n_window + 1):
        # y/(1+y)^2 = sum_{i>=1} (-1)^{i-1} i y^i
        acc = Fraction(0)
        for j, c in numerator.terms.items():
            i = n - j
            if i >= 1:
                acc += c * Fraction(_sign(i - 1) * i)
        if acc != signed.value(n, h):
            mismatches.append(n)
    report = {
        "h": h,
        "n_window": n_window,
        "symmetric": numerator.is_symmetric(),
        "matches_signed_euler": not mismatches,
        "mismatches": mismatches,
    }
    return numerator, report


@lru_cache(maxsize=None)
def pairs_point_factor(q_order):
    """sum_m q^m sum_{d|m} (m/d) (y^d - 2 + y^-d), exact in YLaurent."""
    coeffs = []
    for m in range(1, q_order + 1):
        term = YLaurent()
        for d in range(1, m + 1):
            if m % d == 0:
                w = Fraction(m, d)
                term = term + YLaurent({d: w, -d: w, 0: -2 * w})
        coeffs.append(term)
    return Series("q", 1, coeffs, q_order)


@lru_cache(maxsize=None)
def gw_point_factor(u_order, q_order):
    """sum_m q^m sum_{d|m} (m/d) (2 sin(du/2))^2 as a nested (u, q) series."""
    sig = {}
    for m in range(1, q_order + 1):
        for d in range(1, m + 1):
            if m % d == 0:
                sig.setdefault(m, []).append(d)
    coeffs = []
    for j in range(2, u_order + 1):
        if j % 2:
            coeffs.append(Fraction(0))
            continue
        g = j // 2
        inner = []
        for m in range(1, q_order + 1):
            val = Fraction(0)
            for d in sig[m]:
                val += Fraction(m, d) * Fraction((-1) ** (g + 1) * 2 * d ** (2 * g),
                                                 factorial(2 * g))
            inner.append(val)
        coeffs.append(Series("q", 1, inner, q_order))
    return Series("u", 2, coeffs, u_order)


def point_series_gw(k, g_max, h_max):
    """Gromov-Witten side with k point insertions.

    Returns (bivariate, table): the series hodge_r_series * point_factor^k
    and the table of its coefficients at u^{2g-2} q^{h-1}; at k = 0 the
    table coincides with hodge_r_table.
    """
    u_order = 2 * g_max - 2
    q_order = max(h_max - 1, 0)
    biv = hodge_r_series(u_order + 2, q_order + 2)
    if k:
        pf = gw_point_factor(u_order + 4, q_order + 3)
        biv = biv * pf ** k
    entries = {}
    for g in range(0, g_max + 1):
        for h in range(0, h_max + 1):
            entries[(g, h)] = _inner_coeff(biv, 2 * g - 2, h - 1)
    return biv, InvariantTable("R", entries, meta={"points": k})


def pairs_point_numerators(k, h_max):
    """Rows [q^{h-1}] of (-1)^{k+1} (1/Delta(y,q)) point_factor(y,q)^k.

    Row h times the ascending expansion of 1/(y - 2 + 1/y) generates
    (-1)^n C^k_{n,h}.
    """
    inv = inv_discriminant_yq(h_max + 1)
    prod = inv
    if k:
        pf = pairs_point_factor(h_max + 2)
        prod = inv * pf ** k
    sign = Fraction((-1) ** (k + 1))
    rows = {}
    for h in range(0, h_max + 1):
        row = _as_ylaurent(prod.coeff(h - 1)) * sign
        if not row.is_symmetric():
            raise AssertionError("pairs numerator is not symmetric in y <-> 1/y")
        rows[h] = row
    return rows


def point_series_pairs(k, n_max, h_max):
    """Stable-pairs side with k point insertions: the table C^k_{n,h}."""
    rows = pairs_point_numerators(k, h_max)
    entries = {}
    for h in range(0, h_max + 1):
        row = rows[h]
        for n in range(1 - h - 3, 1 - h):
            if _ascending_extract(row, n):
                raise AssertionError("C-value should vanish below n = 1 - h")
        for n in range(1 - h, n_max + 1):
            v = _ascending_extract(row, n)
            entries[(k, n, h)] = Fraction(_sign(n)) * v
    return InvariantTable("C_point", entries, meta={"points": k})


def euler_pk(c_table, k, n, h):
    """Euler characteristic of the moduli of pairs with k point constraints.

    e(P^k_n(S,h)) = (-1)^{n+2h-1-k} sum_{i>=0} (-1)^i C(i+k-1, k-1) C^{k+i}_{n,h},
    the sum running while k+i <= n+2h-1.
    """
    m_top = n + 2 * h - 1
    if k > m_top:
        return Fraction(0)
    sign = Fraction(_sign(m_top - k))
    if k == 0:
        return sign * Fraction(c_table.value(0, n, h))
    acc = Fraction(0)
    for i in range(0, m_top - k + 1):
        acc += Fraction(_sign(i) * comb(i + k - 1, k - 1)) * c_table.value(k + i, n, h)
    return sign * acc


def inverse_euler_pk(e_values, k, n, h):
    """Invert euler_pk: recover C^k_{n,h} from e(P^j_n(S,h)), j = k..n+2h-1.

    e_values maps (j, n, h) to the Euler characteristics; the linear system
    is triangular from the top index down.
    """
    m_top = n + 2 * h - 1
    if k > m_top:
        raise ValueError("k exceeds n + 2h - 1")
    c = {}
    for j in range(m_top, k - 1, -1):
        val = Fraction(_sign(m_top - j)) * Fraction(e_values[(j, n, h)])
        if j == 0:
            c[j] = val
            continue
        for i in range(1, m_top - j + 1):
            val -= Fraction(_sign(i) * comb(i + j - 1, j - 1)) * c[j + i]
        c[j] = val
    return c[k]


@lru_cache(maxsize=None)
def _inv_s2(order):
    return series_inv(sin_half_square(order + 4))


def gw_pairs_check(h, k, u_order):
    """Compare both sides of the variable change y = -exp(iu) at fixed (h, k).

    GW side: the q^{h-1} u-slice of hodge_r_series * gw_point_factor^k.
    Pairs side: the closed rational form, substituted via w -> s^2 - 2 and
    divided by s^2.  Exact equality on the common window through u^u_order.
    """
    biv, _ = point_series_gw(k, u_order // 2 + 3, h + 1)
    gw_u = u_slice(biv, h - 1).truncate(u_order)

    rows = pairs_point_numerators(k, h)
    # undo the table-facing sign and flip y -> -y:
    # sum_n C^k y^n q^{h-1} = (-1)^k / Delta(-y,q) * PF(-y,q)^k / (y + 2 + 1/y)
    numerator = (rows[h] * Fraction((-1) ** (k + 1))).substitute_neg() * Fraction((-1) ** k)
    budget = u_order + 4
    pairs_u = (trig_substitute(numerator, budget) * _inv_s2(budget)).truncate(u_order)

    if min(gw_u.order, pairs_u.order) < u_order:
        raise AssertionError("window bookkeeping error in gw_pairs_check")
    return CorrespondenceReport(
        h=h, k=k, u_order=u_order,
        gw_side=gw_u, pairs_side=pairs_u,
        numerator_symmetric=numerator.is_symmetric(),
        equal=(gw_u == pairs_u),
    )


@dataclass
class LogIdentityReport:
    u_order: int
    q_order: int
    bivariate_equal: bool
    scalar_equal: bool

    @property
    def equal(self):
        return self.bivariate_equal and self.scalar_equal


def _transpose_y_rows(qs, u_order, flip_sign):
    """Bivariate (outer u, inner q) from a q-series with YLaurent rows.

    Each row is substituted via trig_substitute after an optional y -> -y
    flip (flip_sign=True realizes y = exp(iu), False realizes y = -exp(iu)).
    """
    rows = []
    for hq in range(qs.min_exp, qs.order + 1):
        row = _as_ylaurent(qs.coeff(hq))
        if flip_sign:
            row = row.substitute_neg()
        rows.append(trig_substitute(row, u_order))
    coeffs = []
    for j in range(0, u_order + 1):
        inner = [rows[i].coeff(j) for i in range(len(rows))]
        coeffs.append(Series("q", qs.min_exp, inner, qs.order))
    return Series("u", 0, coeffs, u_order)


def log_identity_check(u_order, q_order):
    """Verify log( Delta(q) / (S(u)^2 Delta(exp(iu), q)) ) term by term.

    The claim: the log equals sum_{g>=1} u^{2g} |B_2g|/(g(2g)!) E_2g(q),
    together with the scalar expansion
    log S(u) = sum_{g>=1} (-1)^g B_2g/(2g (2g)!) u^{2g}, S(u) = sin(u/2)/(u/2).
    """
    bu = u_order + 4
    bq = q_order + bu + 4
    d_yq = discriminant_yq(bq)
    d_u = _transpose_y_rows(d_yq, bu, flip_sign=True)
    inv_du = series_inv(d_u)
    s2 = sin_half_square(bu + 2)
    big_s2 = Series("u", 0, s2.coeffs, bu)  # S(u)^2 = s^2 / u^2
    inv_big_s2 = series_inv(big_s2)
    prod = inv_big_s2 * inv_du
    target = prod.scale(discriminant_q(bq))

    row0 = target.coeff(0)
    if not (row0 == 1):
        raise AssertionError("u^0 row of the log-identity product is not 1")
    shifted = [Fraction(1)] + [target.coeff(j) for j in range(1, target.order + 1)]
    lhs = series_log(Series("u", 0, shifted, target.order))

    coeffs = []
    for j in range(2, lhs.order + 1):
        if j % 2 == 0:
            coeffs.append(_bernoulli_abs_factor(j // 2) * eisenstein(j, bq))
        else:
            coeffs.append(Fraction(0))
    rhs = Series("u", 2, coeffs, lhs.order)
    if min(lhs.order, rhs.order) < u_order:
        raise AssertionError("window bookkeeping error in log_identity_check")
    biv_ok = True
    for j in range(1, u_order + 1):
        left = lhs.coeff(j)
        right = rhs.coeff(j)
        for side in (left, right):
            if isinstance(side, Series) and side.order < q_order:
                raise AssertionError("q window too short in log_identity_check")
        if not (left == right):
            biv_ok = False
            break

    log_s = Fraction(1, 2) * series_log(big_s2)
    scalar_rhs = Series(
        "u", 2,
        [Fraction((-1) ** (j // 2)) * bernoulli(j) / (j * factorial(j))
         if j % 2 == 0 else Fraction(0)
         for j in range(2, log_s.order + 1)],
        log_s.order)
    scalar_ok = log_s == scalar_rhs
    return LogIdentityReport(u_order, q_order, biv_ok, scalar_ok)


def quasimodularity_audit(k_max, g_max):
    """Recognize Delta(q) times every u-row of the k-point GW series.

    Returns rows (k, g, element); recognition enforces weight <= 2g + 2k
    and re-verifies on the window, so success certifies quasimodularity.
    """
    w_max = 2 * g_max + 2 * k_max
    dim = len(modforms.weight_basis(w_max))
    q_order = dim + 8
    results = []
    for k in range(0, k_max + 1):
        u_order = 2 * g_max - 2
        biv = hodge_r_series(u_order + 2, q_order + 3)
        if k:
            biv = biv * gw_point_factor(u_order + 4, q_order + 3) ** k
        delta = discriminant_q(q_order + 2)
        for g in range(0, g_max + 1):
            row = biv.coeff(2 * g - 2)
            if not isinstance(row, Series):
                # exact zero below the outer window floor
                row = Series.zero("q", q_order + 2, -1) + Fraction(row)
            prod = row * delta
            elem = modforms.qmod_recognize(prod.truncate(min(prod.order, q_order)),
                                           2 * g + 2 * k)
            results.append((k, g, elem))
    return results
