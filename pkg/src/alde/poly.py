"""Exact sparse multivariate polynomials and rational functions.

Every scalar in the engine is a ``fractions.Fraction``; there is no floating
point anywhere.  Polynomials are stored sparsely as a map from exponent
tuples to nonzero rational coefficients.  Variables are interned names kept
in sorted order, so one-variable and d-variable layers share a single type
and values over different variable sets combine transparently.

Rational functions (``RatFn``) are gcd-reduced quotients of two polynomials
with a monic denominator, which makes equality a structural check and keeps
zero-residual tests trivial.

The monomial order used for leading terms is graded lexicographic over the
sorted variable names.  It only pins down canonical forms (denominator
normalization, JSON output order); no correctness depends on it.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Optional, Union

Rat = Fraction

Scalar = Union[int, Fraction, "MPoly", "RatFn"]


class NonPolynomialError(ArithmeticError):
    """A result expected to be polynomial has a nontrivial denominator."""


def rat(value) -> Fraction:
    """Parse a rational from an int, Fraction, or ``"p/q"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when q = 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pochhammer(a, m: int):
    """Rising factorial a(a+1)...(a+m-1), with empty product 1.

    Works for rational, polynomial, and rational-function arguments alike.
    """
    if m < 0:
        raise ValueError("pochhammer requires m >= 0")
    out = Fraction(1)
    for i in range(m):
        out = (a + i) * out
    return out


def _canon_vars(names: Iterable[str]) -> tuple:
    return tuple(sorted(set(names)))


def _union_vars(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b)))


def _grlex_key(exps: tuple):
    return (sum(exps), exps)


class MPoly:
    """Sparse polynomial over Fraction with named variables.

    ``terms`` maps exponent tuples (one entry per variable in ``vars``) to
    nonzero coefficients.  Instances are immutable once constructed and may
    be shared across threads.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: tuple, terms: dict):
        # Internal constructor: callers must pass canonical data.
        self.vars = vars
        self.terms = terms
        self._hash = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def const(value, vars: Iterable[str] = ()) -> "MPoly":
        c = rat(value)
        vs = _canon_vars(vars)
        if c == 0:
            return MPoly(vs, {})
        return MPoly(vs, {(0,) * len(vs): c})

    @staticmethod
    def zero(vars: Iterable[str] = ()) -> "MPoly":
        return MPoly(_canon_vars(vars), {})

    @staticmethod
    def var(name: str) -> "MPoly":
        return MPoly((name,), {(1,): Fraction(1)})

    @staticmethod
    def from_terms(vars: Iterable[str], terms: Mapping[tuple, Fraction]) -> "MPoly":
        vars = tuple(vars)
        vs = _canon_vars(vars)
        if vars != vs:
            order = {v: i for i, v in enumerate(vars)}
            perm = [order[v] for v in vs]
            terms = {tuple(e[i] for i in perm): c for e, c in terms.items()}
        out = {}
        for e, c in terms.items():
            c = rat(c)
            if c != 0:
                out[tuple(e)] = out.get(tuple(e), Fraction(0)) + c
        return MPoly(vs, {e: c for e, c in out.items() if c != 0})

    # -- alignment ---------------------------------------------------------

    def extended(self, vars: tuple) -> dict:
        """Terms re-indexed onto the superset variable tuple ``vars``."""
        if self.vars == vars:
            return self.terms
        pos = [vars.index(v) for v in self.vars]
        width = len(vars)
        out = {}
        for exps, c in self.terms.items():
            e = [0] * width
            for i, x in zip(pos, exps):
                e[i] = x
            out[tuple(e)] = c
        return out

    def with_vars(self, vars: Iterable[str]) -> "MPoly":
        vs = _union_vars(self.vars, _canon_vars(vars))
        return MPoly(vs, self.extended(vs))

    def _trimmed(self) -> "MPoly":
        used = [i for i, _ in enumerate(self.vars)
                if any(e[i] for e in self.terms)]
        if len(used) == len(self.vars):
            return self
        vs = tuple(self.vars[i] for i in used)
        return MPoly(vs, {tuple(e[i] for i in used): c
                          for e, c in self.terms.items()})

    # -- predicates and basic data ------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self!r} is not constant")
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if name not in self.vars or not self.terms:
            return 0 if self.terms else -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading(self) -> tuple:
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other, self.vars)
        return None

    def __add__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vs = _union_vars(self.vars, other.vars)
        out = dict(self.extended(vs))
        for e, c in other.extended(vs).items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return MPoly(self.vars, {})
            return MPoly(self.vars, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        vs = _union_vars(self.vars, other.vars)
        ta, tb = self.extended(vs), other.extended(vs)
        if len(ta) > len(tb):
            ta, tb = tb, ta
        out = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly(vs, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFn")
        out = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return MPoly(self.vars, {e: v / c for e, v in self.terms.items()})
        return ratfn(self, other)

    def __rtruediv__(self, other):
        return ratfn(other, self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, RatFn):
            return other == self
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        vs = _union_vars(self.vars, other.vars)
        return self.extended(vs) == other.extended(vs)

    def __hash__(self):
        if self._hash is None:
            t = self._trimmed()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    # -- calculus and composition -------------------------------------------

    def diff(self, name: str) -> "MPoly":
        if name not in self.vars:
            return MPoly(self.vars, {})
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = out.get(e2, Fraction(0)) + c * e[i]
        return MPoly(self.vars, {e: c for e, c in out.items() if c})

    def coeffs_in(self, name: str) -> dict:
        """Map degree-in-``name`` -> coefficient polynomial in the other vars."""
        if name not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        out = {}
        for e, c in self.terms.items():
            er = e[:i] + e[i + 1:]
            out.setdefault(e[i], {})[er] = c
        return {j: MPoly(rest, t) for j, t in out.items()}

    def coeff_of(self, name: str, power: int) -> "MPoly":
        return self.coeffs_in(name).get(power, MPoly.zero(
            tuple(v for v in self.vars if v != name)))

    def substitute(self, bindings: Mapping[str, Scalar]):
        """Exact composition; unbound variables pass through.

        Returns an MPoly when every bound value is polynomial, a RatFn when
        any value is a genuine rational function.
        """
        relevant = {k: v for k, v in bindings.items() if k in self.vars}
        if not relevant:
            return self
        keep = tuple(v for v in self.vars if v not in relevant)
        acc = None
        powers = {k: {0: Fraction(1)} for k in relevant}

        def power(name, exp):
            cache = powers[name]
            if exp not in cache:
                cache[exp] = power(name, exp - 1) * relevant[name]
            return cache[exp]

        for e, c in self.terms.items():
            factor = c
            mono = []
            for name, x in zip(self.vars, e):
                if name in relevant:
                    if x:
                        factor = factor * power(name, x)
                else:
                    mono.append((name, x))
            piece = MPoly.from_terms(tuple(n for n, _ in mono),
                                     {tuple(x for _, x in mono): Fraction(1)})
            term = piece * factor
            acc = term if acc is None else acc + term
        if acc is None:
            return MPoly.zero(keep)
        if isinstance(acc, RatFn) and acc.den == 1:
            return acc.num
        return acc

    def eval_all(self, values: Mapping[str, Fraction]) -> Fraction:
        """Evaluate with every variable bound to a Fraction."""
        out = Fraction(0)
        vals = [Fraction(values[v]) for v in self.vars]
        for e, c in self.terms.items():
            t = c
            for v, x in zip(vals, e):
                if x:
                    t *= v ** x
            out += t
        return out

    # -- exact division and content ------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators / lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, abs(c.numerator))
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def divexact(self, g: "MPoly") -> Optional["MPoly"]:
        """Quotient h with self = g*h when division is exact, else None."""
        if isinstance(g, (int, Fraction)):
            g = MPoly.const(g)
        if g.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return MPoly.zero(self.vars)
        vs = _union_vars(self.vars, g.vars)
        r = dict(self.extended(vs))
        gt = g.extended(vs)
        ge = max(gt, key=_grlex_key)
        gc = gt[ge]
        q = {}
        while r:
            re = max(r, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(re, ge))
            if any(d < 0 for d in diff):
                return None
            c = r[re] / gc
            q[diff] = c
            for e, v in gt.items():
                k = tuple(a + b for a, b in zip(diff, e))
                s = r.get(k, Fraction(0)) - c * v
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        return MPoly(vs, q)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> list:
        """Canonical JSON form: list of {"exponents": [...], "coeff": "p/q"}."""
        items = sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))
        return [{"exponents": list(e), "coeff": rat_str(c)} for e, c in items]

    @staticmethod
    def from_json(data: list, vars: Iterable[str]) -> "MPoly":
        vs = tuple(vars)
        return MPoly.from_terms(
            vs, {tuple(item["exponents"]): rat(item["coeff"]) for item in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{v}**{x}" if x > 1 else v
                            for v, x in zip(self.vars, e) if x)
            if mono:
                cs = "" if c == 1 else ("-" if c == -1 else f"{rat_str(c)}*")
                parts.append(f"{cs}{mono}")
            else:
                parts.append(rat_str(c))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def poly_divexact(f: MPoly, g: MPoly) -> Optional[MPoly]:
    """Exact polynomial quotient f/g, or None when g does not divide f."""
    return f.divexact(g)


def substitute(p: MPoly, bindings: Mapping[str, Scalar]):
    """Exact composition of ``p`` with the bound values (see MPoly.substitute)."""
    return p.substitute(bindings)


# -- gcd ---------------------------------------------------------------------

def _poly_gcd_list(polys):
    g = None
    for p in polys:
        g = p if g is None else mpoly_gcd(g, p)
        if g.is_constant() and not g.is_zero:
            return MPoly.const(1)
    return g


def _univar(p: MPoly, name: str) -> dict:
    return p.coeffs_in(name)


def _from_univar(u: dict, name: str) -> MPoly:
    x = MPoly.var(name)
    out = None
    for j, c in u.items():
        t = c * x ** j
        out = t if out is None else out + t
    return out if out is not None else MPoly.zero((name,))


def _prem(f: dict, g: dict, x: str):
    """Pseudo-remainder of f by g, both as degree->coefficient maps in x."""
    df = max(f)
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        new = {}
        for j, c in r.items():
            if j == dr:
                continue
            new[j] = c * lg
        for j, c in g.items():
            if j == dg:
                continue
            k = dr - dg + j
            s = new.get(k, MPoly.zero(())) - lr * c
            if s.is_zero:
                new.pop(k, None)
            else:
                new[k] = s
        r = {j: c for j, c in new.items() if not c.is_zero}
    return r


def _dense_int(p: MPoly, name: str):
    """Univariate p as an integer coefficient list (content stripped)."""
    coeffs = {e[0]: c for e, c in p.with_vars((name,)).extended((name,)).items()}
    deg = max(coeffs)
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [0] * (deg + 1)
    for j, c in coeffs.items():
        ints[j] = c.numerator * (den // c.denominator)
    content = 0
    for v in ints:
        content = _int_gcd(content, abs(v))
    return [v // content for v in ints]


def _int_prem(a: list, b: list) -> list:
    """Integer pseudo-remainder of dense univariate coefficient lists."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, c in enumerate(b):
            r[shift + j] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return r


def _gcd_univar(f: MPoly, g: MPoly, name: str) -> MPoly:
    """Fast primitive Euclid over the integers for one-variable gcds."""
    a = _dense_int(f, name)
    b = _dense_int(g, name)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        content = 0
        for v in r:
            content = _int_gcd(content, abs(v))
        a = b
        b = [v // content for v in r] if content else []
    if len(a) == 1:
        return MPoly.const(1)
    x = MPoly.var(name)
    out = MPoly.zero((name,))
    for j, c in enumerate(a):
        if c:
            out = out + c * x ** j
    return _monic(out)


def _coeff_gcd_over(p: MPoly, keep: set) -> MPoly:
    """GCD of p's coefficients viewed as a polynomial in the non-kept vars."""
    drop = [i for i, v in enumerate(p.vars) if v not in keep]
    kept = [i for i, v in enumerate(p.vars) if v in keep]
    kept_vars = tuple(p.vars[i] for i in kept)
    groups: dict = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for i in drop)
        groups.setdefault(key, {})[tuple(e[i] for i in kept)] = c
    g = None
    for terms in groups.values():
        piece = MPoly(kept_vars, terms)
        g = piece if g is None else mpoly_gcd(g, piece)
        if g.is_constant():
            return MPoly.const(1)
    return _monic(g)


def mpoly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """GCD in Q[vars], normalized with leading coefficient 1."""
    if f.is_zero and g.is_zero:
        return MPoly.zero(())
    if f.is_zero:
        return _monic(g)
    if g.is_zero:
        return _monic(f)
    f = f._trimmed()
    g = g._trimmed()
    if f.is_constant() or g.is_constant():
        return MPoly.const(1)
    sf, sg = set(f.vars), set(g.vars)
    if sf != sg:
        common = sf & sg
        if not common:
            return MPoly.const(1)
        # The gcd lives in the common variables, so each side reduces to the
        # gcd of its coefficients over them; this keeps leaf gcds small.
        if sf - common:
            f = _coeff_gcd_over(f, common)
            if f.is_constant():
                return MPoly.const(1)
        if sg - common:
            g = _coeff_gcd_over(g, common)
            if g.is_constant():
                return MPoly.const(1)
        return mpoly_gcd(f, g)
    if len(f.vars) == 1:
        return _gcd_univar(f, g, f.vars[0])
    common = tuple(sorted(sf & sg))
    # Main variable: smallest combined degree keeps the PRS short.
    x = min(common, key=lambda v: min(f.degree_in(v), g.degree_in(v)))
    fu, gu = _univar(f.with_vars((x,)), x), _univar(g.with_vars((x,)), x)

    def primitive(u):
        cont = _poly_gcd_list(list(u.values()))
        if cont.is_constant():
            c = _content_scale(u)
            return ({j: p / c for j, p in u.items()}, MPoly.const(1))
        out = {j: p.divexact(cont) for j, p in u.items()}
        return out, cont

    fp, cf = primitive(fu)
    gp, cg = primitive(gu)
    cont = mpoly_gcd(cf, cg)
    A, B = (fp, gp) if max(fp) >= max(gp) else (gp, fp)
    while B:
        if max(B) == 0:
            return _monic(cont)
        R = _prem(A, B, x)
        A = B
        B, _ = primitive(R) if R else ({}, None)
    h = _from_univar(A, x) * cont
    return _monic(h)


def _content_scale(u: dict) -> Fraction:
    num = 0
    den = 1
    for p in u.values():
        for c in p.terms.values():
            num = _int_gcd(num, abs(c.numerator))
            den = den * c.denominator // _int_gcd(den, c.denominator)
    return Fraction(num, den) if num else Fraction(1)


def _monic(p: MPoly) -> MPoly:
    if p.is_zero:
        return p
    _, lc = p.leading()
    return p / lc


# -- rational functions --------------------------------------------------------

_ONE = MPoly.const(1)


class RatFn:
    """Quotient num/den of two MPoly values.

    Canonical form: gcd-reduced, denominator monic under graded lex (hence
    positive leading coefficient), zero stored as 0/1.  With a canonical
    form, equality is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly):
        # Internal: use ratfn() to construct with normalization.
        self.num = num
        self.den = den
        self._hash = None

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.den == 1 and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if self.den != 1:
            raise ValueError(f"{self!r} is not constant")
        return self.num.constant_value()

    def as_poly(self) -> MPoly:
        if self.den == 1:
            return self.num
        raise NonPolynomialError(f"nontrivial denominator: {self.den!r}")

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, MPoly):
            return RatFn(other, _ONE)
        if isinstance(other, (int, Fraction)):
            return RatFn(MPoly.const(other), _ONE)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == 1 and other.den == 1:
            return RatFn(self.num + other.num, _ONE)
        if self.den == other.den:
            return ratfn(self.num + other.num, self.den)
        return ratfn(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == 1 and other.den == 1:
            return RatFn(self.num * other.num, _ONE)
        return ratfn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return ratfn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFn(_ONE, _ONE) / self ** (-n)
        return RatFn(self.num ** n, self.den ** n) if self.den != 1 \
            else RatFn(self.num ** n, _ONE)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- calculus -----------------------------------------------------------

    def diff(self, name: str) -> "RatFn":
        if self.den == 1:
            return RatFn(self.num.diff(name), _ONE)
        if self.den.degree_in(name) <= 0:
            return ratfn(self.num.diff(name), self.den)
        return ratfn(self.num.diff(name) * self.den
                     - self.num * self.den.diff(name),
                     self.den * self.den)

    def substitute(self, bindings: Mapping[str, Scalar]) -> "RatFn":
        num = self.num.substitute(bindings)
        den = self.den.substitute(bindings)
        return ratfn(num, den)

    def coeffs_in(self, name: str) -> dict:
        """Degree-in-``name`` -> RatFn coefficients (denominator must avoid it)."""
        if self.den.degree_in(name) > 0:
            raise ValueError(f"denominator involves {name}")
        return {j: ratfn(c, self.den) for j, c in self.num.coeffs_in(name).items()}

    def eval_all(self, values: Mapping[str, Fraction]) -> Fraction:
        d = self.den.eval_all(values)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval_all(values) / d

    def to_json(self) -> dict:
        vs = _union_vars(self.num.vars, self.den.vars)
        return {"vars": list(vs),
                "num": self.num.with_vars(vs).to_json(),
                "den": self.den.with_vars(vs).to_json()}

    @staticmethod
    def from_json(data: dict) -> "RatFn":
        vs = tuple(data["vars"])
        return ratfn(MPoly.from_json(data["num"], vs),
                     MPoly.from_json(data["den"], vs))

    def __repr__(self):
        if self.den == 1:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def ratfn(num, den=None) -> RatFn:
    """Build a normalized rational function num/den."""
    if den is None:
        if isinstance(num, RatFn):
            return num
        den = _ONE
    if isinstance(num, RatFn) or isinstance(den, RatFn):
        num = as_ratfn(num)
        den = as_ratfn(den)
        return num / den
    num = as_mpoly(num)
    den = as_mpoly(den)
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return RatFn(MPoly.zero(num.vars), _ONE)
    if den.is_constant():
        return RatFn(num / den.constant_value(), _ONE)
    g = mpoly_gcd(num, den)
    if not g.is_constant():
        num = num.divexact(g)
        den = den.divexact(g)
        if den.is_constant():
            return RatFn(num / den.constant_value(), _ONE)
    _, lc = den.leading()
    if lc != 1:
        num = num / lc
        den = den / lc
    return RatFn(num, den)


def as_mpoly(x) -> MPoly:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MPoly.const(x)
    if isinstance(x, RatFn):
        return x.as_poly()
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


def as_ratfn(x) -> RatFn:
    if isinstance(x, RatFn):
        return x
    if isinstance(x, MPoly):
        return RatFn(x, _ONE)
    if isinstance(x, (int, Fraction)):
        return RatFn(MPoly.const(x), _ONE)
    raise TypeError(f"cannot interpret {x!r} as a rational function")


def scalar_is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    if isinstance(x, MPoly):
        return x.is_zero
    if isinstance(x, RatFn):
        return x.is_zero
    raise TypeError(f"not a scalar: {x!r}")


def divmod_in(f, g, name: str):
    """Long division of f by g as polynomials in ``name``.

    Coefficients live in the rational-function field of the remaining
    variables.  Returns (quotient, remainder) as RatFn values with
    f = q*g + r and deg_name(r) < deg_name(g).
    """
    f = as_ratfn(f)
    g = as_ratfn(g)
    if g.is_zero:
        raise ZeroDivisionError("division by zero")
    fc = f.coeffs_in(name)
    gc = g.coeffs_in(name)
    dg = max(gc) if gc else 0
    lg = gc[dg]
    x = RatFn(MPoly.var(name), _ONE)
    r = dict(fc)
    q = {}
    while r and max(r) >= dg:
        dr = max(r)
        c = r[dr] / lg
        q[dr - dg] = q.get(dr - dg, as_ratfn(0)) + c
        for j, gj in gc.items():
            k = dr - dg + j
            s = r.get(k, as_ratfn(0)) - c * gj
            if s.is_zero:
                r.pop(k, None)
            else:
                r[k] = s
    def rebuild(parts):
        out = as_ratfn(0)
        for j, c in parts.items():
            out = out + c * x ** j
        return out
    return rebuild(q), rebuild(r)
