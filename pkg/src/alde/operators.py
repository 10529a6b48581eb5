"""Differential operators, the abstract two-generator algebra, and its
one- and d-variable representations.

``DiffOp`` is a linear partial differential operator: a finite sum of
rational-function coefficients times mixed partial derivatives.  Composition
expands by the Leibniz rule and stays exact.

``AlgElem`` is a normal-form element of the associative algebra R<G1, G2>
with the relation G2*G1 = G1*G2 + G2.  Normal order puts every G1 to the
left, which is a closed form for products because
G2^b * G1^c = (G1 + b)^c * G2^b.  Coefficients are rational functions of
free parameters, with plain rationals as the constant case.

Operator equality is decided by coefficient comparison after normalization,
so intertwining identities certified here are operator identities, not
spot checks on test functions.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .poly import (MPoly, NonPolynomialError, RatFn, as_mpoly, as_ratfn,
                   rat_str, ratfn, scalar_is_zero)


class DiffOp:
    """Linear partial differential operator with RatFn coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms: dict):
        # Internal: use from_terms for coercion and zero filtering.
        self.vars = vars
        self.terms = terms

    @staticmethod
    def from_terms(vars: Iterable[str], terms: Mapping[tuple, object]) -> "DiffOp":
        vs = tuple(vars)
        out = {}
        for idx, c in terms.items():
            c = as_ratfn(c)
            if not c.is_zero:
                out[tuple(idx)] = out.get(tuple(idx), as_ratfn(0)) + c
        return DiffOp(vs, {i: c for i, c in out.items() if not c.is_zero})

    @staticmethod
    def zero(vars: Iterable[str]) -> "DiffOp":
        return DiffOp(tuple(vars), {})

    @staticmethod
    def identity(vars: Iterable[str]) -> "DiffOp":
        vs = tuple(vars)
        return DiffOp(vs, {(0,) * len(vs): as_ratfn(1)})

    @staticmethod
    def partial(vars: Iterable[str], name: str) -> "DiffOp":
        vs = tuple(vars)
        idx = [0] * len(vs)
        idx[vs.index(name)] = 1
        return DiffOp(vs, {tuple(idx): as_ratfn(1)})

    # -- vector-space structure ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        if not self.terms:
            return -1
        return max(sum(i) for i in self.terms)

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        if self.vars != other.vars:
            raise ValueError("operators act on different variable lists")
        out = dict(self.terms)
        for i, c in other.terms.items():
            s = out.get(i, as_ratfn(0)) + c
            if s.is_zero:
                out.pop(i, None)
            else:
                out[i] = s
        return DiffOp(self.vars, out)

    def __neg__(self):
        return DiffOp(self.vars, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def scaled(self, c) -> "DiffOp":
        c = as_ratfn(c)
        if c.is_zero:
            return DiffOp(self.vars, {})
        return DiffOp(self.vars, {i: c * v for i, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    # -- action ----------------------------------------------------------------

    def apply(self, p):
        """Apply to a polynomial or rational function; exact.

        For MPoly input the result must stay polynomial (the coefficient
        denominators must divide out); otherwise NonPolynomialError.
        """
        poly_in = isinstance(p, MPoly)
        q = as_ratfn(p)
        derivs = {(0,) * len(self.vars): q}

        def deriv(idx):
            if idx in derivs:
                return derivs[idx]
            for axis in range(len(idx)):
                if idx[axis]:
                    lower = idx[:axis] + (idx[axis] - 1,) + idx[axis + 1:]
                    d = deriv(lower).diff(self.vars[axis])
                    derivs[idx] = d
                    return d
            raise AssertionError

        acc = as_ratfn(0)
        for idx, c in self.terms.items():
            d = deriv(idx)
            if not d.is_zero:
                acc = acc + c * d
        if poly_in:
            return acc.as_poly()
        return acc

    def compose(self, other: "DiffOp") -> "DiffOp":
        """Operator composition self o other via the Leibniz rule."""
        if self.vars != other.vars:
            raise ValueError("operators act on different variable lists")
        width = len(self.vars)
        out = {}
        # Partial derivatives of the right-hand coefficients, cached per term.
        dcache = {}

        def dcoeff(jkey, cJ, K):
            if K in dcache[jkey]:
                return dcache[jkey][K]
            for axis in range(width):
                if K[axis]:
                    lower = K[:axis] + (K[axis] - 1,) + K[axis + 1:]
                    d = dcoeff(jkey, cJ, lower).diff(self.vars[axis])
                    dcache[jkey][K] = d
                    return d
            raise AssertionError

        for I, cI in self.terms.items():
            for jkey, (J, cJ) in enumerate(other.terms.items()):
                dcache.setdefault(jkey, {(0,) * width: cJ})
                for K in _sub_indices(I):
                    dcJ = dcoeff(jkey, cJ, K)
                    if dcJ.is_zero:
                        continue
                    mult = 1
                    for a, b in zip(I, K):
                        mult *= comb(a, b)
                    idx = tuple(i - k + j for i, k, j in zip(I, K, J))
                    term = cI * dcJ * mult
                    s = out.get(idx, as_ratfn(0)) + term
                    if s.is_zero:
                        out.pop(idx, None)
                    else:
                        out[idx] = s
        return DiffOp(self.vars, out)

    def to_json(self) -> list:
        entries = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            j = c.to_json()
            entries.append({"derivative": list(idx), "num": j["num"],
                            "den": j["den"], "vars": j["vars"]})
        return entries

    @staticmethod
    def from_json(data: list, vars: Iterable[str]) -> "DiffOp":
        vs = tuple(vars)
        terms = {}
        for e in data:
            c = RatFn.from_json({"vars": e["vars"], "num": e["num"],
                                 "den": e["den"]})
            terms[tuple(e["derivative"])] = c
        return DiffOp.from_terms(vs, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx in sorted(self.terms, key=lambda i: (sum(i), i), reverse=True):
            ds = "*".join(f"d{v}^{k}" if k > 1 else f"d{v}"
                          for v, k in zip(self.vars, idx) if k)
            c = self.terms[idx]
            parts.append(f"({c!r})*{ds}" if ds else f"({c!r})")
        return " + ".join(parts)


def _sub_indices(I: tuple):
    """All multi-indices K <= I componentwise."""
    if not I:
        yield ()
        return
    head, rest = I[0], I[1:]
    for tail in _sub_indices(rest):
        for k in range(head + 1):
            yield (k,) + tail


def op_compose(o1: DiffOp, o2: DiffOp) -> DiffOp:
    """Composition o1 o o2 with exact rational-function coefficients."""
    return o1.compose(o2)


def commutator(o1: DiffOp, o2: DiffOp) -> DiffOp:
    return o1.compose(o2) - o2.compose(o1)


class WeightedPoly:
    """p(t) * (1-t)^s for a polynomial p and fixed nonnegative integer s."""

    __slots__ = ("p", "s")

    VAR = "t"

    def __init__(self, p, s: int):
        if s < 0:
            raise ValueError("weight exponent must be nonnegative")
        self.p = as_mpoly(p) if not isinstance(p, RatFn) else p
        self.s = s

    def expand(self):
        """The underlying polynomial p(t)*(1-t)^s."""
        w = (1 - MPoly.var(self.VAR)) ** self.s
        return self.p * w

    @staticmethod
    def from_expanded(q, s: int) -> "WeightedPoly":
        if s == 0:
            return WeightedPoly(q, 0)
        w = (1 - MPoly.var(WeightedPoly.VAR)) ** s
        if isinstance(q, RatFn):
            p = q / w
            if p.den != 1:
                raise NonPolynomialError("value leaves the weighted space")
            return WeightedPoly(p.num, s)
        p = q.divexact(w)
        if p is None:
            raise NonPolynomialError("value leaves the weighted space")
        return WeightedPoly(p, s)

    def _check(self, other):
        if self.s != other.s:
            raise ValueError("weighted values with different exponents")

    def __add__(self, other):
        self._check(other)
        return WeightedPoly(self.p + other.p, self.s)

    def __sub__(self, other):
        self._check(other)
        return WeightedPoly(self.p - other.p, self.s)

    def scaled(self, c):
        return WeightedPoly(self.p * c if isinstance(c, (int, Fraction))
                            else as_ratfn(c) * self.p, self.s)

    @property
    def is_zero(self):
        return scalar_is_zero(self.p)

    def __eq__(self, other):
        return (isinstance(other, WeightedPoly) and self.s == other.s
                and self.p == other.p)

    def __repr__(self):
        return f"({self.p!r})*(1-t)^{self.s}"


def op_apply(op: DiffOp, p):
    """Exact action of an operator on MPoly or WeightedPoly input."""
    if isinstance(p, WeightedPoly):
        result = op.apply(as_ratfn(p.expand()))
        return WeightedPoly.from_expanded(result, p.s)
    return op.apply(p)


# -- the abstract algebra R<G1,G2>, G2*G1 = G1*G2 + G2 -------------------------


class AlgElem:
    """Normal-form element sum c_{a,b} G1^a G2^b of R<G1,G2>."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = terms

    @staticmethod
    def from_terms(terms: Mapping[tuple, object]) -> "AlgElem":
        out = {}
        for key, c in terms.items():
            c = as_ratfn(c)
            if not c.is_zero:
                out[tuple(key)] = out.get(tuple(key), as_ratfn(0)) + c
        return AlgElem({k: c for k, c in out.items() if not c.is_zero})

    @staticmethod
    def one() -> "AlgElem":
        return AlgElem({(0, 0): as_ratfn(1)})

    @staticmethod
    def gen1() -> "AlgElem":
        return AlgElem({(1, 0): as_ratfn(1)})

    @staticmethod
    def gen2() -> "AlgElem":
        return AlgElem({(0, 1): as_ratfn(1)})

    @staticmethod
    def from_scalar(c) -> "AlgElem":
        c = as_ratfn(c)
        return AlgElem({} if c.is_zero else {(0, 0): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def wordlen(self) -> int:
        """Differential order of the represented operator: max(a + 2b)."""
        if not self.terms:
            return -1
        return max(a + 2 * b for a, b in self.terms)

    def __add__(self, other):
        other = _coerce_alg(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, as_ratfn(0)) + c
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        return AlgElem(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_alg(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MPoly, RatFn)):
            c = as_ratfn(other)
            if c.is_zero:
                return AlgElem({})
            return AlgElem({k: c * v for k, v in self.terms.items()})
        if not isinstance(other, AlgElem):
            return NotImplemented
        out = {}
        for (a, b), ca in self.terms.items():
            for (c, e), cb in other.terms.items():
                # (G1^a G2^b)(G1^c G2^e) = G1^a (G1+b)^c G2^(b+e)
                coeff = ca * cb
                for i in range(c + 1):
                    w = comb(c, i) * b ** (c - i)
                    if w == 0:
                        continue
                    key = (a + i, b + e)
                    s = out.get(key, as_ratfn(0)) + coeff * w
                    if s.is_zero:
                        out.pop(key, None)
                    else:
                        out[key] = s
        return AlgElem(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, MPoly, RatFn)):
            return self * other
        return NotImplemented

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative power in R<G1,G2>")
        out = AlgElem.one()
        for _ in range(m):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce_alg(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def substitute(self, bindings) -> "AlgElem":
        """Substitute into every coefficient (parameter specialization)."""
        return AlgElem.from_terms(
            {k: c.substitute(bindings) for k, c in self.terms.items()})

    def to_json(self) -> list:
        entries = []
        for (a, b) in sorted(self.terms):
            c = self.terms[(a, b)]
            if c.den == 1 and c.num.is_constant():
                entries.append({"a": a, "b": b,
                                "coeff": rat_str(c.num.constant_value())})
            else:
                entries.append({"a": a, "b": b, "coeff": c.to_json()})
        return entries

    @staticmethod
    def from_json(data: list) -> "AlgElem":
        terms = {}
        for e in data:
            c = e["coeff"]
            if isinstance(c, str):
                terms[(e["a"], e["b"])] = as_ratfn(Fraction(c))
            else:
                terms[(e["a"], e["b"])] = RatFn.from_json(c)
        return AlgElem.from_terms(terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, key=lambda k: (k[0] + 2 * k[1], k),
                             reverse=True):
            mono = "*".join(s for s in (f"G1^{a}" if a > 1 else "G1" if a else "",
                                        f"G2^{b}" if b > 1 else "G2" if b else "")
                            if s)
            c = self.terms[(a, b)]
            parts.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        return " + ".join(parts)


def _coerce_alg(x):
    if isinstance(x, AlgElem):
        return x
    if isinstance(x, (int, Fraction, MPoly, RatFn)):
        return AlgElem.from_scalar(x)
    return None


def alg_mul(a: AlgElem, b: AlgElem) -> AlgElem:
    """Normal-form product in R<G1,G2>."""
    return a * b


def _horner_coeffs(f: MPoly, var: str) -> dict:
    """Coefficients of f in the main variable; a missing degree means 0."""
    coeffs = f.coeffs_in(var)
    top = max(coeffs) if coeffs else 0
    zero = MPoly.zero(())
    return {j: coeffs.get(j, zero) for j in range(top + 1)}


def f_of_algelem(f: MPoly, arg: AlgElem, shift=0, var: str = "t") -> AlgElem:
    """f(arg + shift) inside R<G1,G2>; f is a polynomial in ``var`` whose
    coefficients may carry free parameters."""
    x = arg + AlgElem.from_scalar(shift)
    coeffs = _horner_coeffs(f, var)
    out = AlgElem({})
    for j in sorted(coeffs, reverse=True):
        out = out * x + AlgElem.from_scalar(coeffs[j])
    return out


def f_of_diffop(f: MPoly, arg: DiffOp, shift=0, var: str = "t") -> DiffOp:
    """f(arg + shift*Id) as a composed operator; f polynomial in ``var``."""
    x = arg + DiffOp.identity(arg.vars).scaled(shift)
    coeffs = _horner_coeffs(f, var)
    out = DiffOp.zero(arg.vars)
    for j in sorted(coeffs, reverse=True):
        out = out.compose(x) + DiffOp.identity(arg.vars).scaled(coeffs[j])
    return out


# -- concrete operators ----------------------------------------------------------

T = "t"


def d1_op() -> DiffOp:
    """(t-1) d/dt, the first generator in one variable."""
    t = MPoly.var(T)
    return DiffOp.from_terms((T,), {(1,): t - 1})


def d2_op(alpha) -> DiffOp:
    """(1-t) d^2/dt^2 - (alpha+1) d/dt, the second generator."""
    t = MPoly.var(T)
    return DiffOp.from_terms((T,), {(2,): 1 - t, (1,): -(alpha + 1) + 0 * t})


def d2s_op(alpha, s) -> DiffOp:
    """The weight-s modification: d2 - s(s+alpha)/(1-t)."""
    t = MPoly.var(T)
    base = d2_op(alpha)
    extra = DiffOp.from_terms((T,), {(0,): ratfn(as_mpoly(-(s * (s + alpha))),
                                                 1 - t)})
    return base + extra


def jacobi_op(alpha, beta) -> DiffOp:
    """The hypergeometric operator t(1-t) d^2 + [(beta+1)-(alpha+beta+2)t] d."""
    t = MPoly.var(T)
    return DiffOp.from_terms((T,), {
        (2,): t * (1 - t),
        (1,): (beta + 1) - (alpha + beta + 2) * t,
    })


def jacobi_op_weighted(alpha, beta, s) -> DiffOp:
    """d2s - d1^2 - (alpha+beta+1) d1: acts on p(t)(1-t)^s eigenspaces."""
    d1 = d1_op()
    return (d2s_op(alpha, s) - d1.compose(d1)
            - d1.scaled(alpha + beta + 1))


def _xvars(d: int) -> tuple:
    return tuple(f"x{i}" for i in range(1, d + 1))


def dhat1_op(d: int) -> DiffOp:
    """(x1-1) d_1 + sum_{j>=2} x_j d_j."""
    vs = _xvars(d)
    terms = {}
    x1 = MPoly.var("x1")
    e = [0] * d
    e[0] = 1
    terms[tuple(e)] = x1 - 1
    for j in range(2, d + 1):
        e = [0] * d
        e[j - 1] = 1
        terms[tuple(e)] = MPoly.var(f"x{j}")
    return DiffOp.from_terms(vs, terms)


def dhat2_op(gamma: Sequence, d: int) -> DiffOp:
    """The d-variable extension of d2; depends only on gamma_2..gamma_{d+1}."""
    vs = _xvars(d)
    x1 = MPoly.var("x1")
    gsum = _tail_sum(gamma, 2)
    terms = {}

    def bump(idx, c):
        idx = tuple(idx)
        terms[idx] = terms.get(idx, as_ratfn(0)) + as_ratfn(c)

    e = [0] * d
    e[0] = 2
    bump(e, 1 - x1)
    for j in range(2, d + 1):
        xj = MPoly.var(f"x{j}")
        e = [0] * d
        e[j - 1] = 2
        bump(e, xj)
        e = [0] * d
        e[j - 1] = 1
        e[0] = 1
        bump(e, -2 * xj)
    e = [0] * d
    e[0] = 1
    bump(e, -(gsum + d))
    for j in range(2, d + 1):
        e = [0] * d
        e[j - 1] = 1
        bump(e, gamma[j - 1] + 1)
    return DiffOp.from_terms(vs, terms)


def _tail_sum(gamma: Sequence, start: int):
    """gamma_start + ... + gamma_{d+1} (1-based indexing into gamma)."""
    out = Fraction(0)
    for i in range(start - 1, len(gamma)):
        out = out + gamma[i]
    return out


def simplex_op(j: int, d: int, gamma: Sequence) -> DiffOp:
    """The j-th commuting operator on the d-simplex, 1 <= j <= d."""
    if not 1 <= j <= d:
        raise ValueError("need 1 <= j <= d")
    if len(gamma) != d + 1:
        raise ValueError("gamma must have d+1 components")
    vs = _xvars(d)
    head = MPoly.zero(())  # |x_{j-1}| = x_1 + ... + x_{j-1}
    for i in range(1, j):
        head = head + MPoly.var(f"x{i}")
    gtail = _tail_sum(gamma, j)
    terms = {}

    def bump(idx, c):
        idx = tuple(idx)
        terms[idx] = terms.get(idx, as_ratfn(0)) + as_ratfn(c)

    for kk in range(j, d + 1):
        xk = MPoly.var(f"x{kk}")
        e = [0] * d
        e[kk - 1] = 2
        bump(e, (1 - head - xk) * xk)
        e = [0] * d
        e[kk - 1] = 1
        bump(e, (gamma[kk - 1] + 1) * (1 - head) - (gtail + d - j + 2) * xk)
    for kk in range(j, d + 1):
        for ll in range(kk + 1, d + 1):
            e = [0] * d
            e[kk - 1] += 1
            e[ll - 1] += 1
            bump(e, -2 * MPoly.var(f"x{kk}") * MPoly.var(f"x{ll}"))
    return DiffOp.from_terms(vs, terms)


def lauricella_op(d: int, gamma: Sequence) -> DiffOp:
    """The Appell-Lauricella operator (the j=1 simplex operator)."""
    return simplex_op(1, d, gamma)


def sphere_integral_op(i: int, j: int, d: int, gamma: Sequence) -> DiffOp:
    """Second-order operators commuting with the Appell-Lauricella operator.

    For 1 <= i < j <= d this is the pair coupling in x_i, x_j; for j = d+1
    it couples x_i with the simplex boundary factor 1-|x|.
    """
    if not (1 <= i < j <= d + 1):
        raise ValueError("need 1 <= i < j <= d+1")
    vs = _xvars(d)
    terms = {}
    if j <= d:
        xi, xj = MPoly.var(f"x{i}"), MPoly.var(f"x{j}")
        gi, gj = gamma[i - 1], gamma[j - 1]
        quad = xi * xj
        lin = (gi + 1) * xj - (gj + 1) * xi
        # (d_i - d_j)^2 expands to d_i^2 - 2 d_i d_j + d_j^2.
        for idx, c in (((i, i), quad), ((i, j), -2 * quad), ((j, j), quad)):
            e = [0] * d
            e[idx[0] - 1] += 1
            e[idx[1] - 1] += 1
            terms[tuple(e)] = terms.get(tuple(e), as_ratfn(0)) + as_ratfn(c)
        for which, sign in ((i, 1), (j, -1)):
            e = [0] * d
            e[which - 1] = 1
            terms[tuple(e)] = terms.get(tuple(e), as_ratfn(0)) \
                + as_ratfn(lin * sign)
    else:
        one_minus = MPoly.const(1)
        for v in vs:
            one_minus = one_minus - MPoly.var(v)
        xi = MPoly.var(f"x{i}")
        gi, glast = gamma[i - 1], gamma[d]
        e = [0] * d
        e[i - 1] = 2
        terms[tuple(e)] = as_ratfn(xi * one_minus)
        e = [0] * d
        e[i - 1] = 1
        terms[tuple(e)] = as_ratfn((gi + 1) * one_minus - (glast + 1) * xi)
    return DiffOp.from_terms(vs, terms)


# -- representations -----------------------------------------------------------


def _rep(e: AlgElem, op1: DiffOp, op2: DiffOp) -> DiffOp:
    """sum c_ab op1^a o op2^b, with cached powers."""
    vars = op1.vars
    pow1 = {0: DiffOp.identity(vars)}
    pow2 = {0: DiffOp.identity(vars)}

    def power(cache, op, m):
        if m not in cache:
            cache[m] = power(cache, op, m - 1).compose(op)
        return cache[m]

    out = DiffOp.zero(vars)
    for (a, b), c in sorted(e.terms.items()):
        term = power(pow1, op1, a).compose(power(pow2, op2, b))
        out = out + term.scaled(c)
    return out


def rep_1d(e: AlgElem, alpha) -> DiffOp:
    """Representation G1 -> d1, G2 -> d2 in the variable t; a ring map."""
    return _rep(e, d1_op(), d2_op(alpha))


def rep_1d_s(e: AlgElem, alpha, s) -> DiffOp:
    """Same with G2 -> d2s: the weight-s representation."""
    return _rep(e, d1_op(), d2s_op(alpha, s))


def rep_multi(e: AlgElem, gamma: Sequence, d: int) -> DiffOp:
    """Representation G1 -> dhat1, G2 -> dhat2 in x_1..x_d."""
    return _rep(e, dhat1_op(d), dhat2_op(gamma, d))


def m1_algelem(alpha, beta) -> AlgElem:
    """The hypergeometric operator as G2 - G1^2 - (alpha+beta+1) G1."""
    return (AlgElem.gen2() - AlgElem.gen1() * AlgElem.gen1()
            - AlgElem.gen1() * (alpha + beta + 1))


NAMED_OPERATORS = {
    "jacobi": lambda p: jacobi_op(p["alpha"], p["beta"]),
    "jacobi_weighted": lambda p: jacobi_op_weighted(p["alpha"], p["beta"], p["s"]),
    "d1": lambda p: d1_op(),
    "d2": lambda p: d2_op(p["alpha"]),
    "d2s": lambda p: d2s_op(p["alpha"], p["s"]),
    "dhat1": lambda p: dhat1_op(p["d"]),
    "dhat2": lambda p: dhat2_op(p["gamma"], p["d"]),
    "simplex": lambda p: simplex_op(p["j"], p["d"], p["gamma"]),
    "lauricella": lambda p: lauricella_op(p["d"], p["gamma"]),
    "sphere_integral": lambda p: sphere_integral_op(p["i"], p["j"], p["d"],
                                                    p["gamma"]),
}


def named_operator(tag: str, **params) -> DiffOp:
    """Constructor dispatch for every named operator in the engine."""
    if tag not in NAMED_OPERATORS:
        raise ValueError(f"unknown operator tag {tag!r}")
    return NAMED_OPERATORS[tag](params)
