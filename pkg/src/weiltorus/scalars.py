"""Exact scalar domains with conjugation.

Three coefficient domains are supported, each with a decidable canonical
form and an involutive conjugation:

* ``QQ``             -- rationals (``fractions.Fraction``), fixed by conjugation;
* ``QI``             -- Gaussian rationals a + b*i;
* ``FunctionField``  -- reduced fractions of sparse multivariate polynomials
                        with Gaussian-rational coefficients.  Variables are
                        real by convention: conjugation acts on coefficients
                        only.

Arithmetic is arbitrary precision throughout.  Function-field elements are
kept as reduced fractions (GCD reduction on every arithmetic result) with a
monic denominator under the fixed graded-lexicographic monomial order, so
equality of canonical forms is plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import DenominatorVanishes, ParseError

RationalLike = Union[int, Fraction]


class GaussianRational:
    """An element a + b*i of Q(i), with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return gauss_to_text(self)


I_UNIT = GaussianRational(0, 1)


def gauss_to_text(z: GaussianRational) -> str:
    """Canonical text form: "p/q", "r/s*i", or "p/q+r/s*i" (exact round-trip)."""
    if z.im == 0:
        return str(z.re)
    im_abs = abs(z.im)
    im_body = "i" if im_abs == 1 else f"{im_abs}*i"
    if z.re == 0:
        return im_body if z.im > 0 else "-" + im_body
    sign = "+" if z.im > 0 else "-"
    return f"{z.re}{sign}{im_body}"


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials over Q(i)
# ---------------------------------------------------------------------------

Monomial = tuple  # tuple[int, ...], one exponent per variable


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Polynomial:
    """Sparse multivariate polynomial over Q(i), keyed by exponent tuples."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if c:
                    clean[tuple(mono)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def const(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "Polynomial":
        mono = tuple(1 if j == idx else 0 for j in range(nvars))
        return cls(nvars, {mono: GaussianRational(1)})

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Polynomial.const(self.nvars, other)
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for mono, c in o.terms.items():
            s = terms.get(mono)
            s = c if s is None else s + c
            if s:
                terms[mono] = s
            elif mono in terms:
                del terms[mono]
        return Polynomial(self.nvars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = out.get(mono)
                s = c if s is None else s + c
                if s:
                    out[mono] = s
                elif mono in out:
                    del out[mono]
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == Polynomial.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.terms:
            return GaussianRational(0)
        return self.terms[(0,) * self.nvars]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, idx: int) -> int:
        return max((m[idx] for m in self.terms), default=0)

    def leading(self):
        """Leading (monomial, coefficient) under graded-lex order."""
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        _, lc = self.leading()
        return Polynomial(self.nvars, {m: c / lc for m, c in self.terms.items()})

    def conj(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: c.conj() for m, c in self.terms.items()})

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def pad(self, nvars: int) -> "Polynomial":
        """Reinterpret in a larger variable set (existing indices keep meaning)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink variable set")
        extra = (0,) * (nvars - self.nvars)
        return Polynomial(nvars, {m + extra: c for m, c in self.terms.items()})

    def evaluate(self, values) -> GaussianRational:
        """Full evaluation; ``values`` is a sequence of GaussianRational."""
        out = GaussianRational(0)
        for mono, c in self.terms.items():
            term = c
            for idx, e in enumerate(mono):
                if e:
                    term = term * values[idx] ** e
            out = out + term
        return out

    def substitute(self, idx: int, repl: "Polynomial") -> "Polynomial":
        """Replace variable ``idx`` by a polynomial in the same variable set."""
        out = Polynomial(self.nvars, {})
        powers = {0: Polynomial.const(self.nvars, 1)}

        def power(e):
            if e not in powers:
                powers[e] = power(e - 1) * repl
            return powers[e]

        for mono, c in self.terms.items():
            rest = tuple(0 if j == idx else m for j, m in enumerate(mono))
            term = Polynomial(self.nvars, {rest: c})
            if mono[idx]:
                term = term * power(mono[idx])
            out = out + term
        return out

    def exact_div(self, g: "Polynomial") -> Optional["Polynomial"]:
        """Exact quotient self/g, or None when g does not divide self."""
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        if not self:
            return self
        gm, gc = g.leading()
        rem = self
        q: dict = {}
        while rem:
            rm, rc = rem.leading()
            dm = tuple(a - b for a, b in zip(rm, gm))
            if any(e < 0 for e in dm):
                return None
            qc = rc / gc
            q[dm] = qc
            rem = rem - Polynomial(self.nvars, {dm: qc}) * g
        return Polynomial(self.nvars, q)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.terms!r})"


# -- polynomial gcd (primitive PRS) -----------------------------------------


def _gcd_list(polys: Iterable[Polynomial]) -> Polynomial:
    it = iter(polys)
    g = next(it)
    for p in it:
        g = poly_gcd(g, p)
        if g.is_constant() and g:
            return g.monic()
    return g


def _as_univariate(p: Polynomial, v: int) -> dict:
    """View p as a univariate polynomial in variable v with Polynomial coefficients."""
    out: dict = {}
    for mono, c in p.terms.items():
        d = mono[v]
        rest = tuple(0 if j == v else m for j, m in enumerate(mono))
        coeff = out.setdefault(d, {})
        coeff[rest] = coeff.get(rest, GaussianRational(0)) + c
    return {
        d: Polynomial(p.nvars, terms)
        for d, terms in out.items()
        if any(terms.values())
    }


def _from_univariate(nvars: int, v: int, u: dict) -> Polynomial:
    out = Polynomial(nvars, {})
    for d, coeff in u.items():
        shift = {
            tuple(m[j] + (d if j == v else 0) for j in range(nvars)): c
            for m, c in coeff.terms.items()
        }
        out = out + Polynomial(nvars, shift)
    return out


def _uni_scale(u: dict, c: Polynomial) -> dict:
    return {d: coeff * c for d, coeff in u.items() if coeff}


def _uni_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for d, coeff in b.items():
        s = out.get(d)
        s = -coeff if s is None else s - coeff
        if s:
            out[d] = s
        elif d in out:
            del out[d]
    return out


def _uni_shift(u: dict, k: int) -> dict:
    return {d + k: coeff for d, coeff in u.items()}


def _prem(a: dict, b: dict) -> dict:
    """Pseudo-remainder of univariate-with-polynomial-coefficient dicts."""
    db = max(b)
    if db == 0:
        return {}
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        r = _uni_sub(_uni_scale(r, lb), _uni_shift(_uni_scale(b, lr), dr - db))
    return r


def _uni_primitive(u: dict) -> dict:
    if not u:
        return u
    cont = _gcd_list(list(u.values()))
    out = {}
    for d, coeff in u.items():
        q = coeff.exact_div(cont)
        assert q is not None
        out[d] = q
    return out


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """GCD over Q(i)[t1..tm], normalized monic under graded-lex order.

    Primitive pseudo-remainder sequences, recursing on the highest variable
    present; the coefficient field makes every constant a unit.
    """
    if not f and not g:
        return f
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Polynomial.const(f.nvars, 1)
    vf = {j for m in f.terms for j in range(f.nvars) if m[j]}
    vg = {j for m in g.terms for j in range(g.nvars) if m[j]}
    v = max(vf | vg)
    if v not in vf:
        return poly_gcd(f, _gcd_list(list(_as_univariate(g, v).values())))
    if v not in vg:
        return poly_gcd(_gcd_list(list(_as_univariate(f, v).values())), g)
    uf = _as_univariate(f, v)
    ug = _as_univariate(g, v)
    cf = _gcd_list(list(uf.values()))
    cg = _gcd_list(list(ug.values()))
    cont = poly_gcd(cf, cg)
    a = _uni_primitive(uf)
    b = _uni_primitive(ug)
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _uni_primitive(r)
    pp = _from_univariate(f.nvars, v, _uni_primitive(a))
    return (cont * pp).monic()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Reduced fraction num/den of polynomials; den monic under graded-lex."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Optional[Polynomial] = None):
        if den is None:
            den = Polynomial.const(num.nvars, 1)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = Polynomial.const(num.nvars, 1)
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = num.exact_div(g)
                den = den.exact_div(g)
            _, lc = den.leading()
            if lc != 1:
                inv = GaussianRational(1) / lc
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def nvars(self):
        return self.num.nvars

    def _coerce(self, other) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RationalFunction(Polynomial.const(self.nvars, other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            self.num * o.den - o.num * self.den, self.den * o.den
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def conj(self) -> "RationalFunction":
        return RationalFunction(self.num.conj(), self.den.conj())

    def is_real(self) -> bool:
        return self == self.conj()

    def pad(self, nvars: int) -> "RationalFunction":
        return RationalFunction(self.num.pad(nvars), self.den.pad(nvars))

    def evaluate(self, values) -> GaussianRational:
        d = self.den.evaluate(values)
        if not d:
            raise DenominatorVanishes("denominator vanishes at the point")
        return self.num.evaluate(values) / d

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


Scalar = Union[Fraction, GaussianRational, RationalFunction]


# ---------------------------------------------------------------------------
# Generic helpers usable on any scalar
# ---------------------------------------------------------------------------


def conj_scalar(x):
    """Conjugation: fixes rationals and variables, sends i to -i."""
    if isinstance(x, (int, Fraction)):
        return x
    return x.conj()


def is_real_scalar(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    return x.is_real()


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

RATIONAL = "Q"
GAUSSIAN = "Qi"
FUNCTION_FIELD = "FunctionField"


class ScalarDomain:
    """One of Q, Q(i), or Q(i)(t1..tm), with element factories and parsing."""

    def __init__(self, kind: str, variables: tuple = ()):
        if kind not in (RATIONAL, GAUSSIAN, FUNCTION_FIELD):
            raise ValueError(f"unknown domain kind {kind!r}")
        if kind != FUNCTION_FIELD and variables:
            raise ValueError("only function fields carry variables")
        if kind == FUNCTION_FIELD and not variables:
            raise ValueError("function field needs at least one variable")
        self.kind = kind
        self.variables = tuple(variables)
        self._var_index = {name: j for j, name in enumerate(self.variables)}

    def __repr__(self):
        if self.kind == FUNCTION_FIELD:
            return f"ScalarDomain({self.kind!r}, {self.variables!r})"
        return f"ScalarDomain({self.kind!r})"

    def __eq__(self, other):
        return (
            isinstance(other, ScalarDomain)
            and self.kind == other.kind
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.kind, self.variables))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    # -- element factories --------------------------------------------------

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def i_unit(self):
        if self.kind == RATIONAL:
            raise ParseError("no imaginary unit in Q")
        return self.coerce(I_UNIT)

    def variable(self, name: str):
        if self.kind != FUNCTION_FIELD:
            raise ParseError(f"no variable {name!r} in domain {self.kind}")
        if name not in self._var_index:
            raise ParseError(f"unknown variable {name!r}")
        return RationalFunction(
            Polynomial.variable(self.nvars, self._var_index[name])
        )

    def coerce(self, x) -> Scalar:
        """Embed ints, Fractions, Gaussian rationals, or lower-domain scalars."""
        if self.kind == RATIONAL:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            if isinstance(x, GaussianRational) and x.im == 0:
                return x.re
            raise ParseError(f"cannot coerce {x!r} into Q")
        if self.kind == GAUSSIAN:
            if isinstance(x, (int, Fraction)):
                return GaussianRational(x)
            if isinstance(x, GaussianRational):
                return x
            raise ParseError(f"cannot coerce {x!r} into Q(i)")
        if isinstance(x, RationalFunction):
            if x.nvars != self.nvars:
                raise ParseError("variable count mismatch")
            return x
        if isinstance(x, Polynomial):
            if x.nvars != self.nvars:
                raise ParseError("variable count mismatch")
            return RationalFunction(x)
        if isinstance(x, (int, Fraction, GaussianRational)):
            return RationalFunction(Polynomial.const(self.nvars, x))
        raise ParseError(f"cannot coerce {x!r} into {self.kind}")

    def extend(self, extra: Iterable[str]) -> "ScalarDomain":
        """Function field with additional (real) variables appended."""
        base = self.variables if self.kind == FUNCTION_FIELD else ()
        return ScalarDomain(FUNCTION_FIELD, base + tuple(extra))

    def lift(self, x, target: "ScalarDomain"):
        """Reinterpret an element of this domain inside an extension of it."""
        if target.kind != FUNCTION_FIELD:
            raise ParseError("lift target must be a function field")
        if target.variables[: self.nvars] != self.variables:
            raise ParseError("target does not extend this domain")
        if isinstance(x, RationalFunction):
            return x.pad(target.nvars)
        return target.coerce(x)

    # -- conjugation / specialization ---------------------------------------

    def conj(self, x):
        return conj_scalar(x)

    def is_real(self, x) -> bool:
        return is_real_scalar(x)

    def specialize(self, x, assignment: Mapping[str, GaussianRational]):
        """Evaluate at a point; the assignment must cover all domain variables.

        Raises DenominatorVanishes when the point is outside the domain of
        definition of x.
        """
        if self.kind != FUNCTION_FIELD:
            return x
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise ValueError(f"assignment misses variables {missing}")
        values = [
            a if isinstance(a, GaussianRational) else GaussianRational(a)
            for a in (assignment[v] for v in self.variables)
        ]
        x = self.coerce(x)
        return x.evaluate(values)

    # -- text ----------------------------------------------------------------

    def to_text(self, x) -> str:
        x = self.coerce(x)
        if isinstance(x, Fraction):
            return str(x)
        if isinstance(x, GaussianRational):
            return gauss_to_text(x)
        return self._rf_to_text(x)

    def _poly_to_text(self, p: Polynomial) -> str:
        if not p:
            return "0"
        parts = []
        for mono in sorted(p.terms, key=_grlex_key, reverse=True):
            c = p.terms[mono]
            factors = [
                self.variables[j] + (f"^{e}" if e > 1 else "")
                for j, e in enumerate(mono)
                if e
            ]
            mono_txt = "*".join(factors)
            if not mono_txt:
                sign, body = self._coeff_text(c, standalone=True)
            else:
                sign, body = self._coeff_text(c, standalone=False)
                body = mono_txt if body == "" else f"{body}*{mono_txt}"
            parts.append((sign, body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    @staticmethod
    def _coeff_text(c: GaussianRational, standalone: bool):
        """Render a coefficient as (sign, body); body "" means implicit 1."""
        if c.im == 0:
            sign = "-" if c.re < 0 else "+"
            mag = abs(c.re)
            if mag == 1 and not standalone:
                return sign, ""
            return sign, str(mag)
        if c.re == 0:
            sign = "-" if c.im < 0 else "+"
            mag = abs(c.im)
            return sign, ("i" if mag == 1 else f"{mag}*i")
        return "+", f"({gauss_to_text(c)})"

    def _rf_to_text(self, x: RationalFunction) -> str:
        num = self._poly_to_text(x.num)
        if x.den == Polynomial.const(x.nvars, 1):
            return num
        return f"({num})/({self._poly_to_text(x.den)})"

    def parse(self, text: str):
        """Parse the canonical text forms (and ordinary +-*/^ expressions)."""
        return _Parser(text, self).parse()


QQ = ScalarDomain(RATIONAL)
QI = ScalarDomain(GAUSSIAN)


def function_field(names: Iterable[str]) -> ScalarDomain:
    return ScalarDomain(FUNCTION_FIELD, tuple(names))


# ---------------------------------------------------------------------------
# Expression parser
# ---------------------------------------------------------------------------


class _Parser:
    """Recursive-descent parser for exact scalar expressions."""

    def __init__(self, text: str, domain: ScalarDomain):
        self.text = text
        self.domain = domain
        self.pos = 0

    def parse(self):
        value = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError(f"trailing input at {self.pos}: {self.text!r}")
        return value

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self):
        ch = self._peek()
        if ch == "-":
            self.pos += 1
            value = -self._term()
        else:
            if ch == "+":
                self.pos += 1
            value = self._term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                value = value + self._term()
            elif ch == "-":
                self.pos += 1
                value = value - self._term()
            else:
                return value

    def _term(self):
        value = self._factor()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                value = value * self._factor()
            elif ch == "/":
                self.pos += 1
                rhs = self._factor()
                if not rhs:
                    raise ParseError("division by zero in scalar text")
                if isinstance(value, Fraction) and isinstance(rhs, Fraction):
                    value = value / rhs
                else:
                    value = value / rhs
            else:
                return value

    def _factor(self):
        base = self._base()
        if self._peek() == "^":
            self.pos += 1
            exp = self._integer()
            base = base**exp
        return base

    def _base(self):
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                raise ParseError("expected ')'")
            self.pos += 1
            return value
        if ch == "-":
            self.pos += 1
            return -self._base()
        if ch.isdigit():
            return self.domain.coerce(self._integer())
        if ch.isalpha() or ch == "_":
            name = self._name()
            if name == "i":
                return self.domain.i_unit()
            return self.domain.variable(name)
        raise ParseError(f"unexpected character {ch!r} at {self.pos}")

    def _integer(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(f"expected integer at {start}")
        return int(self.text[start : self.pos])

    def _name(self) -> str:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]
