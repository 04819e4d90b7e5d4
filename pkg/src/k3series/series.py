"""Exact truncated Laurent series and symmetric Laurent polynomials.

Every series carries an explicit certified window [min_exp, order]: the
coefficients inside the window are exact rationals (or exact values of a
coefficient ring such as YLaurent, or a nested Series), coefficients below
min_exp are exactly zero, and nothing is claimed past the order.  Arithmetic
propagates the window pessimistically, so equality of two series always means
coefficient-wise equality on the common certified window.

Coefficients may be int/Fraction, YLaurent, or another Series (for bivariate
work an outer u-series holds q-series coefficients).  All operations stay
exact; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial


class PrecisionError(Exception):
    """A coefficient past the certified window was requested."""


def _is_exact_zero(c):
    if isinstance(c, Series):
        return False
    if isinstance(c, YLaurent):
        return not c.terms
    return c == 0


def _is_scalar(c):
    return isinstance(c, (int, Fraction))


def _inv_coeff(c):
    """Multiplicative inverse of a unit coefficient."""
    if isinstance(c, Series):
        return series_inv(c)
    if isinstance(c, YLaurent):
        return c.inverse_unit()
    if c == 0:
        raise ZeroDivisionError("leading coefficient is zero")
    return Fraction(1) / c


class YLaurent:
    """Exact Laurent polynomial in y with Fraction coefficients.

    Terms are a dict exponent -> nonzero Fraction.  Supports the ring ops,
    the involution y -> 1/y, and the sign substitution y -> -y.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                v = Fraction(v)
                if v:
                    self.terms[k] = v

    @classmethod
    def y_power(cls, k, coeff=1):
        return cls({k: Fraction(coeff)})

    def coeff(self, k):
        return self.terms.get(k, Fraction(0))

    def is_zero(self):
        return not self.terms

    def min_exp(self):
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        return min(self.terms)

    def max_exp(self):
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        return max(self.terms)

    def conj(self):
        """The involution y -> 1/y."""
        return YLaurent({-k: v for k, v in self.terms.items()})

    def substitute_neg(self):
        """The substitution y -> -y."""
        return YLaurent({k: (v if k % 2 == 0 else -v) for k, v in self.terms.items()})

    def is_symmetric(self):
        return self.terms == self.conj().terms

    def evaluate_one(self):
        """Value at y = 1."""
        return sum(self.terms.values(), Fraction(0))

    def inverse_unit(self):
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible in YLaurent")
        (k, v), = self.terms.items()
        return YLaurent({-k: Fraction(1) / v})

    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        return YLaurent({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        if _is_scalar(other):
            other = YLaurent({0: other})
        if not isinstance(other, YLaurent):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return YLaurent(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, YLaurent) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return YLaurent({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, YLaurent):
            return NotImplemented
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                s = out.get(k, Fraction(0)) + a * b
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return YLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse_unit() ** (-n)
        out = YLaurent({0: 1})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if _is_scalar(other):
            other = YLaurent({0: other})
        if not isinstance(other, YLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "YLaurent(0)"
        bits = [f"{v}*y^{k}" for k, v in sorted(self.terms.items())]
        return "YLaurent(" + " + ".join(bits) + ")"


class Series:
    """Truncated Laurent series with a certified coefficient window.

    coeffs[i] is the coefficient of var^(min_exp + i); the window is
    certified through var^order inclusive.  An empty window (order ==
    min_exp - 1) is a valid "nothing known" series.
    """

    def __init__(self, var, min_exp, coeffs, order=None):
        if order is None:
            order = min_exp + len(coeffs) - 1
        if len(coeffs) != order - min_exp + 1:
            raise ValueError("coefficient count does not match window")
        coeffs = list(coeffs)
        # normalize: leading exact zeros move the window floor up
        while coeffs and _is_exact_zero(coeffs[0]):
            coeffs.pop(0)
            min_exp += 1
        self.var = var
        self.min_exp = min_exp
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, var, order, min_exp=0):
        return cls(var, min_exp, [Fraction(0)] * (order - min_exp + 1), order)

    @classmethod
    def one(cls, var, order):
        return cls.monomial(var, 0, Fraction(1), order)

    @classmethod
    def monomial(cls, var, exp, coeff, order):
        if order < exp:
            raise ValueError("window does not reach the monomial")
        coeffs = [Fraction(0)] * (order - exp + 1)
        coeffs[0] = coeff
        return cls(var, exp, coeffs, order)

    def coeff(self, k):
        if k > self.order:
            raise PrecisionError(
                f"coefficient of {self.var}^{k} past certified order {self.order}")
        if k < self.min_exp:
            return Fraction(0)
        return self.coeffs[k - self.min_exp]

    def window(self):
        return (self.min_exp, self.order)

    def is_zero_on_window(self):
        return all(_is_exact_zero(c) or c == 0 for c in self.coeffs)

    def truncate(self, order):
        if order > self.order:
            raise PrecisionError("cannot extend a certified window")
        if order < self.min_exp:
            return Series(self.var, order + 1, [], order)
        return Series(self.var, self.min_exp, self.coeffs[: order - self.min_exp + 1], order)

    def scale(self, c):
        """Multiply every coefficient by a fixed ring element."""
        return Series(self.var, self.min_exp, [c * a for a in self.coeffs], self.order)

    def _check_var(self, other):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other):
        if isinstance(other, Series):
            self._check_var(other)
            lo = min(self.min_exp, other.min_exp)
            hi = min(self.order, other.order)
            coeffs = [self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)]
            return Series(self.var, lo, coeffs, hi)
        if _is_exact_zero(other):
            return self
        # scalar (or YLaurent) adds at exponent 0
        if self.order < 0:
            raise PrecisionError("window does not reach exponent 0")
        lo = min(self.min_exp, 0)
        coeffs = [self.coeff(k) for k in range(lo, self.order + 1)]
        coeffs[0 - lo] = coeffs[0 - lo] + other
        return Series(self.var, lo, coeffs, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.var, self.min_exp, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series) and other.var == self.var:
            a, b = self, other
            lo = a.min_exp + b.min_exp
            hi = min(a.order + b.min_exp, b.order + a.min_exp)
            coeffs = []
            for k in range(lo, hi + 1):
                acc = Fraction(0)
                i0 = max(a.min_exp, k - b.order)
                i1 = min(a.order, k - b.min_exp)
                for i in range(i0, i1 + 1):
                    acc = acc + a.coeffs[i - a.min_exp] * b.coeffs[k - i - b.min_exp]
                coeffs.append(acc)
            return Series(self.var, lo, coeffs, hi)
        if isinstance(other, Series):
            raise ValueError(
                f"variable mismatch: {self.var} vs {other.var} (use scale())")
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Series):
            raise ValueError("variable mismatch")
        return Series(self.var, self.min_exp,
                      [other * a for a in self.coeffs], self.order)

    def __pow__(self, n):
        if n < 0:
            return series_inv(self) ** (-n)
        out = None
        base = self
        while True:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if not n:
                break
            base = base * base
        if out is None:
            return Series.one(self.var, self.order)
        return out

    def __eq__(self, other):
        if isinstance(other, Series):
            if self.var != other.var:
                return False
            lo = min(self.min_exp, other.min_exp)
            hi = min(self.order, other.order)
            return all(self.coeff(k) == other.coeff(k) for k in range(lo, hi + 1))
        if _is_scalar(other) or isinstance(other, YLaurent):
            lo = min(self.min_exp, 0)
            for k in range(lo, self.order + 1):
                want = other if k == 0 else Fraction(0)
                if self.coeff(k) != want:
                    return False
            return True
        return NotImplemented

    def __repr__(self):
        bits = []
        for k in range(self.min_exp, min(self.order, self.min_exp + 7) + 1):
            c = self.coeff(k)
            if not _is_exact_zero(c):
                bits.append(f"{c!r}*{self.var}^{k}")
        tail = " + ..." if self.order > self.min_exp + 7 else ""
        body = " + ".join(bits) if bits else "0"
        return f"<Series {body}{tail} (order {self.order})>"


def series_inv(a):
    """Inverse of a series whose leading coefficient is a unit.

    The certified order drops to a.order - 2*a.min_exp, which keeps the
    window honest for Laurent inputs such as q^-1 + 24 + ...
    """
    if not a.coeffs:
        raise ValueError("cannot invert a series with an empty window")
    m = a.min_exp
    lead = a.coeffs[0]
    if _is_exact_zero(lead):
        raise ValueError("leading coefficient must be a unit")
    b0 = _inv_coeff(lead)
    length = len(a.coeffs)
    out = [b0]
    for k in range(1, length):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc = acc + a.coeffs[j] * out[k - j]
        out.append(-(b0 * acc))
    return Series(a.var, -m, out, a.order - 2 * m)


def series_exp(a):
    """exp of a series with min_exp >= 1; result certified to a.order."""
    if a.min_exp < 1:
        raise ValueError("series_exp needs positive valuation")
    order = a.order
    acc = Series.one(a.var, order)
    term = Series.one(a.var, order)
    k = 1
    while k * a.min_exp <= order:
        term = term * a
        acc = acc + Fraction(1, factorial(k)) * term
        k += 1
    return acc.truncate(order)


def series_log(a):
    """log of a series whose constant term is exactly the scalar 1."""
    if a.min_exp > 0:
        raise ValueError("series_log needs constant term 1")
    lead = a.coeff(0)
    if not (_is_scalar(lead) and lead == 1 and a.min_exp == 0):
        raise ValueError("series_log needs an exact scalar 1 constant term")
    eps = a - 1
    if eps.coeffs and eps.min_exp < 1:
        raise ValueError("series_log needs an exact scalar 1 constant term")
    order = a.order
    acc = Series.zero(a.var, order)
    if not eps.coeffs:
        return acc
    term = Series.one(a.var, order)
    k = 1
    while k * eps.min_exp <= order:
        term = term * eps
        acc = acc + Fraction((-1) ** (k + 1), k) * term
        k += 1
    return acc.truncate(order)


def q_derive(a):
    """The operator q d/dq (or var d/dvar): multiply coefficient k by k."""
    coeffs = [k * a.coeffs[k - a.min_exp] for k in range(a.min_exp, a.order + 1)]
    return Series(a.var, a.min_exp, coeffs, a.order)


def first_mismatch(a, b):
    """First exponent where two series differ on their common window, or None.

    Scans the same window that __eq__ compares, so a None result is exactly
    a == b (for series in the same variable).
    """
    lo = min(a.min_exp, b.min_exp)
    hi = min(a.order, b.order)
    for k in range(lo, hi + 1):
        if a.coeff(k) != b.coeff(k):
            return k
    return None


def weighted_product(exponents, order, default=0, var="q"):
    """Product over n >= 1 of (1 - q^n)^e(n), expanded exactly to order.

    exponents maps n to an integer exponent; missing n fall back to default.
    Negative exponents use the binomial series for (1 - x)^-m.
    """
    acc = Series.one(var, order)
    for n in range(1, order + 1):
        e = exponents.get(n, default)
        if e:
            acc = acc * _binomial_factor(n, e, order, var)
    return acc


def _binomial_factor(n, e, order, var):
    coeffs = [Fraction(0)] * (order + 1)
    if e >= 0:
        for k in range(0, min(e, order // n) + 1):
            coeffs[n * k] = Fraction((-1) ** k * comb(e, k))
    else:
        m = -e
        for k in range(0, order // n + 1):
            coeffs[n * k] = Fraction(comb(m + k - 1, k))
    return Series(var, 0, coeffs, order)


def to_w_basis(p):
    """Rewrite a symmetric YLaurent as a polynomial in w = y + 1/y.

    Returns the list [b_0, b_1, ...] with p = sum b_d * w^d.
    """
    if not isinstance(p, YLaurent):
        p = YLaurent({0: p})
    if not p.is_symmetric():
        raise ValueError("polynomial is not symmetric under y -> 1/y")
    if p.is_zero():
        return [Fraction(0)]
    top = p.max_exp()
    w = YLaurent({1: 1, -1: 1})
    wpow = [YLaurent({0: 1})]
    for _ in range(top):
        wpow.append(wpow[-1] * w)
    out = [Fraction(0)] * (top + 1)
    rem = p
    for d in range(top, 0, -1):
        c = rem.coeff(d)
        if c:
            out[d] = c
            rem = rem - wpow[d] * c
    if rem.terms and set(rem.terms) != {0}:
        raise ValueError("symmetric reduction failed")
    out[0] = rem.coeff(0)
    return out


def symmetric_to_z(p):
    """Coefficients of a symmetric YLaurent in the basis z^g, z = y - 2 + 1/y.

    Returns [a_0, a_1, ...]; the z-degree equals the y-degree of p.
    """
    b = to_w_basis(p)
    out = [Fraction(0)] * len(b)
    # w = z + 2, so w^d = sum_g C(d,g) 2^(d-g) z^g
    for d, bd in enumerate(b):
        if bd:
            for g in range(d + 1):
                out[g] += bd * comb(d, g) * Fraction(2) ** (d - g)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def sin_half_square(order, multiple=1, var="u"):
    """(2 sin(multiple*u/2))^2 = 2 - 2 cos(multiple*u) as an exact u-series."""
    d = multiple
    coeffs = [Fraction(0)] * (order - 1)
    for j in range(1, order // 2 + 1):
        coeffs[2 * j - 2] = Fraction((-1) ** (j + 1) * 2 * d ** (2 * j), factorial(2 * j))
    return Series(var, 2, coeffs, order)


def trig_substitute(p, order, var="u"):
    """Substitute y = -e^{iu} (so w = y + 1/y -> s^2 - 2, s = 2 sin(u/2)).

    p must be symmetric; the result is an even exact u-series.
    """
    b = to_w_basis(p)
    base = sin_half_square(order, 1, var) - 2
    acc = Series.monomial(var, 0, b[-1], order)
    for d in range(len(b) - 2, -1, -1):
        acc = acc * base + b[d]
    return acc.truncate(order)


def series_to_text(a):
    """Serialize to the exchange format: header line, then exponent lines.

    Every exponent in the window appears, zeros included, so the window
    round-trips exactly.  Coefficients must be plain rationals.
    """
    if a.var not in ("q", "u", "y"):
        raise ValueError(f"text format only covers q, u, y series (got {a.var})")
    lines = [f"var={a.var} order={a.order}"]
    for k in range(a.min_exp, a.order + 1):
        c = a.coeff(k)
        if not _is_scalar(c):
            raise ValueError("text format only covers rational coefficients")
        c = Fraction(c)
        lines.append(f"{k}: {c.numerator}/{c.denominator}")
    return "\n".join(lines) + "\n"


def series_from_text(text):
    """Parse the exchange format produced by series_to_text."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty series text")
    head = lines[0].split()
    if len(head) != 2 or not head[0].startswith("var=") or not head[1].startswith("order="):
        raise ValueError(f"bad series header: {lines[0]!r}")
    var = head[0][4:]
    if var not in ("q", "u", "y"):
        raise ValueError(f"bad series variable: {var!r}")
    order = int(head[1][6:])
    entries = {}
    for ln in lines[1:]:
        exp_part, _, val = ln.partition(":")
        if not _:
            raise ValueError(f"bad series line: {ln!r}")
        k = int(exp_part.strip())
        num, slash, den = val.strip().partition("/")
        frac = Fraction(int(num), int(den)) if slash else Fraction(int(num))
        if k in entries:
            raise ValueError(f"duplicate exponent {k}")
        if k > order:
            raise ValueError(f"exponent {k} past declared order {order}")
        entries[k] = frac
    if not entries:
        return Series(var, order + 1, [], order)
    lo = min(entries)
    coeffs = [entries.get(k, Fraction(0)) for k in range(lo, order + 1)]
    return Series(var, lo, coeffs, order)
