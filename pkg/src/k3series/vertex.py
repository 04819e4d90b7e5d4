"""Equivariant vertex weights for box configurations over a partition.

A torus-invariant module with limiting profile mu is encoded by a chain of
Young diagrams nu with mu = nus[0] >= nus[1] >= ... ; level i of the chain
puts the skew diagram mu \\ nus[i] in x3-degree -(m - i) where m = len(nus).
The vertex series H built from the weight generating functions reduces to an
exact Laurent polynomial in t1, t2, t3, and its specialized constant term
(t1 = t, t2 = 1/t, t3 = u; keep t^0 u^0) matches a closed formula in the
diagonal profiles of the chain.
"""

from __future__ import annotations

from fractions import Fraction


class NotPolynomial(ArithmeticError):
    """The (1 - t3)-denominator failed to cancel; indicates a logic error."""


def normalize_partition(parts):
    """Validate and canonicalize a partition (weakly decreasing, zeros dropped)."""
    parts = tuple(int(p) for p in parts if int(p) != 0)
    if any(p < 0 for p in parts):
        raise ValueError("partition parts must be non-negative")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("partition parts must be weakly decreasing")
    return parts


def boxes(partition):
    """Boxes (a, b) of a Young diagram: b indexes the part, a runs along it."""
    out = []
    for b, part in enumerate(partition):
        for a in range(part):
            out.append((a, b))
    return out


def subdiagrams(partition):
    """All Young diagrams contained in the given one, sorted."""
    out = []

    def build(prefix, idx, cap):
        if idx == len(partition):
            out.append(tuple(p for p in prefix if p))
            return
        top = min(partition[idx], cap)
        # the cap keeps parts weakly decreasing; trailing zeros are stripped
        for p in range(top + 1):
            build(prefix + [p], idx + 1, p)

    build([], 0, partition[0] if partition else 0)
    seen = sorted(set(out))
    return seen


class BoxConfig:
    """A chain nus[0] = mu >= nus[1] >= ... encoding a box configuration.

    rho(k) for k in [-m, 0] is the skew diagram mu \\ nus[-k ... ]: level
    nus[i] sits at x3-degree i - m, so rho(-m) is empty and rho(0) = mu.
    size is the total box count of the negative levels.
    """

    __slots__ = ("mu", "nus", "size")

    def __init__(self, mu, nus):
        mu = normalize_partition(mu)
        nus = tuple(normalize_partition(n) for n in nus)
        if not nus or nus[0] != mu:
            raise ValueError("chain must start at mu")
        for a, b in zip(nus, nus[1:]):
            if not _contains(a, b):
                raise ValueError("chain must be weakly decreasing")
        if len(nus) > 1 and nus[1] == mu:
            raise ValueError("redundant leading level (chain not canonical)")
        self.mu = mu
        self.nus = nus
        self.size = sum(_size(mu) - _size(n) for n in nus)

    def levels(self):
        return len(self.nus)

    def rho(self, k):
        """Boxes of the skew diagram at x3-degree k (empty below -m, mu above -1)."""
        m = len(self.nus)
        if k >= 0:
            return boxes(self.mu)
        if k < -m:
            return []
        nu = self.nus[k + m]
        return _skew_boxes(self.mu, nu)

    def chain_key(self):
        return (self.size, self.nus)

    def __repr__(self):
        return f"BoxConfig(mu={self.mu}, nus={list(self.nus)}, size={self.size})"


def _size(partition):
    return sum(partition)


def _contains(outer, inner):
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


def _skew_boxes(outer, inner):
    out = []
    for b, part in enumerate(outer):
        lo = inner[b] if b < len(inner) else 0
        for a in range(lo, part):
            out.append((a, b))
    return out


def enumerate_configs(mu, excess):
    """All canonical box configurations with size <= |mu| + excess.

    Ordered by (size, chain) so output is deterministic.
    """
    mu = normalize_partition(mu)
    if excess < 0:
        raise ValueError("excess must be >= 0")
    budget = _size(mu) + excess
    out = []

    def extend(chain, total):
        out.append(BoxConfig(mu, tuple(chain)))
        last = chain[-1]
        for nu in subdiagrams(last):
            if len(chain) == 1 and nu == mu:
                continue
            deficit = _size(mu) - _size(nu)
            if total + deficit <= budget:
                chain.append(nu)
                extend(chain, total + deficit)
                chain.pop()

    extend([mu], 0)
    out.sort(key=BoxConfig.chain_key)
    return out


def profile_c(rho_boxes):
    """Diagonal counts: c[r] = number of boxes with a - b = r."""
    out = {}
    for a, b in rho_boxes:
        out[a - b] = out.get(a - b, 0) + 1
    return out


def profile_d(rho_boxes):
    """First differences along diagonals: d[r] = c[r] - c[r+1]."""
    c = profile_c(rho_boxes)
    rs = set(c)
    rs.update(r - 1 for r in c)
    return {r: c.get(r, 0) - c.get(r + 1, 0) for r in sorted(rs)}


def profile_formula_value(config):
    """Closed form for the specialized constant term of the vertex series.

    -c_0(rho_-1) + 1/2 sum_r ( d_r(rho_0)^2
                               - sum_{k<=0} (d_r(rho_k) - d_r(rho_{k-1}))^2 ).
    """
    m = config.levels()
    d_by_level = {k: profile_d(config.rho(k)) for k in range(-m, 1)}
    c_top = profile_c(config.rho(-1))
    rs = set()
    for d in d_by_level.values():
        rs.update(d)
    total = Fraction(0)
    for r in sorted(rs):
        square_sum = 0
        for k in range(-m, 1):
            prev = d_by_level.get(k - 1, {}).get(r, 0)
            cur = d_by_level[k].get(r, 0)
            square_sum += (cur - prev) ** 2
        total += Fraction(d_by_level[0].get(r, 0) ** 2 - square_sum, 2)
    return Fraction(-c_top.get(0, 0)) + total


class Laurent3:
    """Laurent polynomial in t1, t2, t3 over Z, divided by (1 - t3)^e.

    num maps exponent triples (a, b, c) to nonzero integers; e is kept
    minimal by cancelling (1 - t3) factors eagerly, so e == 0 certifies an
    honest Laurent polynomial.
    """

    __slots__ = ("num", "e")

    def __init__(self, num=None, e=0, reduce=True):
        self.num = {k: v for k, v in (num or {}).items() if v}
        self.e = e
        if reduce:
            self._reduce()

    @classmethod
    def monomial(cls, a, b, c, coeff=1):
        return cls({(a, b, c): coeff})

    @classmethod
    def geometric_t3(cls):
        """1 / (1 - t3)."""
        return cls({(0, 0, 0): 1}, e=1)

    def _reduce(self):
        while self.e > 0:
            quotient = _div_1mt3(self.num)
            if quotient is None:
                return
            self.num = quotient
            self.e -= 1

    def is_polynomial(self):
        return self.e == 0

    def __add__(self, other):
        if not isinstance(other, Laurent3):
            return NotImplemented
        e = max(self.e, other.e)
        a = _mul_pow_1mt3(self.num, e - self.e)
        for k, v in _mul_pow_1mt3(other.num, e - other.e).items():
            s = a.get(k, 0) + v
            if s:
                a[k] = s
            else:
                a.pop(k, None)
        return Laurent3(a, e)

    def __neg__(self):
        return Laurent3({k: -v for k, v in self.num.items()}, self.e, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Laurent3):
            return NotImplemented
        out = {}
        for (a1, b1, c1), v1 in self.num.items():
            for (a2, b2, c2), v2 in other.num.items():
                k = (a1 + a2, b1 + b2, c1 + c2)
                s = out.get(k, 0) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Laurent3(out, self.e + other.e)

    def conj(self):
        """Invert all three variables; stays in normal form."""
        num = {(-a, -b, -c): v for (a, b, c), v in self.num.items()}
        sign = -1 if self.e % 2 else 1
        shifted = {(a, b, c + self.e): sign * v for (a, b, c), v in num.items()}
        return Laurent3(shifted, self.e)

    def __eq__(self, other):
        if not isinstance(other, Laurent3):
            return NotImplemented
        return self.e == other.e and self.num == other.num

    def to_polynomial(self):
        """The monomial dict, raising NotPolynomial when e cannot reach 0."""
        if self.e:
            raise NotPolynomial("(1 - t3) denominator did not cancel")
        return dict(self.num)

    def __repr__(self):
        bits = [f"{v}*t^{k}" for k, v in sorted(self.num.items())]
        body = " + ".join(bits) if bits else "0"
        tail = f" / (1-t3)^{self.e}" if self.e else ""
        return f"Laurent3({body}{tail})"


def _mul_pow_1mt3(num, p):
    """Multiply a monomial dict by (1 - t3)^p, p >= 0."""
    out = dict(num)
    for _ in range(p):
        nxt = {}
        for (a, b, c), v in out.items():
            for k, w in (((a, b, c), v), ((a, b, c + 1), -v)):
                s = nxt.get(k, 0) + w
                if s:
                    nxt[k] = s
                else:
                    nxt.pop(k, None)
        out = nxt
    return out


def _div_1mt3(num):
    """Exact quotient num / (1 - t3), or None when not divisible.

    Writing num = sum_c N_c(t1,t2) t3^c, divisibility means the N_c sum to
    zero; the quotient coefficients are the running sums from the bottom.
    """
    if not num:
        return {}
    by_ab = {}
    for (a, b, c), v in num.items():
        by_ab.setdefault((a, b), {})[c] = v
    out = {}
    for (a, b), col in by_ab.items():
        lo, hi = min(col), max(col)
        run = 0
        for c in range(lo, hi + 1):
            run += col.get(c, 0)
            if run:
                if c == hi:
                    return None
                out[(a, b, c)] = run
    return out


def weight_series_F(config):
    """Torus-weight generating function of the module encoded by the chain."""
    m = config.levels()
    g_num = {(a, b, 0): 1 for (a, b) in boxes(config.mu)}
    f = Laurent3(g_num, e=1)
    for k in range(-m, 0):
        level = {}
        for (a, b) in config.rho(k):
            level[(a, b, k)] = 1
        f = f + Laurent3(level)
    return f


def weight_series_G(mu):
    """Weight generating function of the plane profile."""
    mu = normalize_partition(mu)
    return Laurent3({(a, b, 0): 1 for (a, b) in boxes(mu)})


def vertex_H(config):
    """The vertex Laurent polynomial H(t1, t2, t3) of a box configuration.

    H = F - conj(F)/(t1 t2 t3) + F conj(F) prod (1 - ti)/ti
        - (G + conj(G)/(t1 t2) - G conj(G)(1-t1)(1-t2)/(t1 t2)) / (1 - t3)

    The (1 - t3) denominators always cancel; failure raises NotPolynomial.
    """
    f = weight_series_F(config)
    fbar = f.conj()
    g = weight_series_G(config.mu)
    gbar = g.conj()
    shift_all = Laurent3.monomial(-1, -1, -1)
    shift_12 = Laurent3.monomial(-1, -1, 0)
    one = Laurent3.monomial(0, 0, 0)
    t1 = Laurent3.monomial(1, 0, 0)
    t2 = Laurent3.monomial(0, 1, 0)
    t3 = Laurent3.monomial(0, 0, 1)
    k_factor = (one - t1) * (one - t2) * (one - t3) * shift_all
    bracket = g + gbar * shift_12 - g * gbar * (one - t1) * (one - t2) * shift_12
    h = f - fbar * shift_all + f * fbar * k_factor - Laurent3.geometric_t3() * bracket
    h.to_polynomial()
    return h


def constant_term_specialized(h):
    """Constant term after t1 = t, t2 = 1/t, t3 = u: keep a - b = 0, c = 0."""
    total = 0
    for (a, b, c), v in h.to_polynomial().items():
        if a - b == 0 and c == 0:
            total += v
    return Fraction(total)


def divisibility_audit(mu, excess):
    """Cross-check every configuration and collect the sign evidence.

    Per config: the direct specialized constant term of H, the closed
    profile formula, their agreement, and the non-positivity bounds (< 0
    strictly when the size exceeds |mu|).
    """
    mu = normalize_partition(mu)
    rows = []
    violations = 0
    for config in enumerate_configs(mu, excess):
        direct = constant_term_specialized(vertex_H(config))
        formula = profile_formula_value(config)
        strict = config.size > _size(mu)
        ok = (direct == formula) and direct <= 0 and (not strict or direct <= -1)
        if not ok:
            violations += 1
        rows.append({
            "mu": list(mu),
            "chain": [list(nu) for nu in config.nus],
            "size": config.size,
            "direct": direct,
            "formula": formula,
            "match": direct == formula,
            "nonpositive": direct <= 0,
            "strict_ok": (direct <= -1) if strict else True,
        })
    return {"mu": list(mu), "excess": excess, "configs": len(rows),
            "violations": violations, "rows": rows}
