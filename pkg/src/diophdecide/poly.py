"""Exact polynomials over the integers.

Two representations live here:

* ``SparsePoly`` -- multivariate, a map from exponent vectors to nonzero
  Python ints, printed and hashed in graded-lex order.
* ``UniPoly`` -- dense univariate over ZZ (``coeffs[i]`` is the coefficient
  of ``x**i``), with ``RatUniPoly`` adding a positive denominator.

Everything is immutable and exact.  Rational intermediate results use
``fractions.Fraction``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

__all__ = [
    "PolySyntaxError",
    "SparsePoly",
    "UniPoly",
    "RatUniPoly",
    "PolySystem",
    "Sizes",
    "parse",
    "arith",
    "derivative",
    "substitute",
    "evaluate",
    "size",
    "sizes",
    "squarefree_part",
    "default_var_order",
]


class PolySyntaxError(ValueError):
    """Raised by :func:`parse`; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_KNOWN_VARS = ("v", "x", "y") + tuple(f"x{i}" for i in range(1, 10))


def default_var_order(names: Iterable[str]) -> tuple[str, ...]:
    """Canonical ordering: v, x, y, then x1..x9."""
    names = set(names)
    return tuple(v for v in _KNOWN_VARS if v in names)


def size(c: int) -> int:
    """Bit size of an integer: 1 + ceil(log2(|c| + 1))."""
    # ceil(log2(n + 1)) == n.bit_length() for n >= 0
    return 1 + abs(c).bit_length()


def _glex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class SparsePoly:
    """Multivariate integer polynomial, immutable.

    ``terms`` maps exponent tuples (one entry per variable in ``vars``) to
    nonzero ints.
    """

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], int] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(vars):
                raise ValueError(f"exponent {exp} does not match variables {vars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if c:
                clean[exp] = int(c)
        self._vars = vars
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c: int, vars: Sequence[str] = ()) -> SparsePoly:
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, name: str, vars: Sequence[str]) -> SparsePoly:
        vars = tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise ValueError(f"unknown variable {name!r}")
        return cls(vars, {exp: 1})

    @property
    def vars(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return len(self._vars)

    def items(self):
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda t: _glex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def involves(self, var: str) -> bool:
        return self.degree_in(var) > 0

    def max_coeff(self) -> int:
        return max((abs(c) for c in self._terms.values()), default=0)

    def content(self) -> int:
        return reduce(math.gcd, self._terms.values(), 0)

    def _index(self, var: str) -> int:
        try:
            return self._vars.index(var)
        except ValueError:
            raise ValueError(f"{var!r} is not one of {self._vars}") from None

    # equality / hashing
    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            if other._vars != self._vars:
                if not other._terms:
                    return SparsePoly(self._vars)
                if other.is_constant() and other.nvars == 0:
                    return SparsePoly.constant(other.constant_value(), self._vars)
                if self.is_constant() and self.nvars == 0:
                    raise _SwapCoercion
                raise ValueError(f"incompatible variables {self._vars} vs {other._vars}")
            return other
        if isinstance(other, int):
            return SparsePoly.constant(other, self._vars)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, tuple(self.items())))
        return self._hash

    # arithmetic
    def __neg__(self):
        return SparsePoly(self._vars, {e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except _SwapCoercion:
            return other.__add__(self)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self._vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except _SwapCoercion:
            return (-other).__add__(self)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except _SwapCoercion:
            return other.__mul__(self)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self._vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = SparsePoly.constant(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: int) -> SparsePoly:
        return SparsePoly(self._vars, {e: c * v for e, v in self._terms.items()})

    def exact_div_int(self, c: int) -> SparsePoly:
        out = {}
        for e, v in self._terms.items():
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError(f"{c} does not divide coefficient {v}")
            out[e] = q
        return SparsePoly(self._vars, out)

    def exact_div(self, other: SparsePoly) -> SparsePoly:
        """Quotient self / other over ZZ; ArithmeticError unless it is exact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead_e, lead_c = other.items()[0]
        rem = dict(self._terms)
        quot: dict[tuple[int, ...], int] = {}
        while rem:
            e = max(rem, key=_glex_key)
            c = rem[e]
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift) or c % lead_c:
                raise ArithmeticError("polynomial division is not exact")
            q = c // lead_c
            quot[shift] = q
            for oe, oc in other._terms.items():
                te = tuple(a + b for a, b in zip(oe, shift))
                nv = rem.get(te, 0) - q * oc
                if nv:
                    rem[te] = nv
                else:
                    rem.pop(te, None)
        return SparsePoly(self._vars, quot)

    # calculus and specialisation
    def derivative(self, var: str) -> SparsePoly:
        i = self._index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return SparsePoly(self._vars, out)

    def substitute(self, var: str, value) -> tuple[SparsePoly, int]:
        """Set ``var = value`` (int or Fraction) and drop ``var``.

        Returns ``(g, m)`` where ``g`` is the integer polynomial
        ``m * f|_{var=value}`` and ``m = den(value) ** deg_var(f)``.
        """
        value = Fraction(value)
        i = self._index(var)
        deg = max(self.degree_in(var), 0)
        num, den = value.numerator, value.denominator
        mult = den ** deg
        out: dict[tuple[int, ...], int] = {}
        for e, c in self._terms.items():
            k = e[i]
            ne = e[:i] + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * num ** k * den ** (deg - k)
        rest = self._vars[:i] + self._vars[i + 1:]
        return SparsePoly(rest, out), mult

    def eval(self, point) -> Fraction:
        """Exact value at a rational point; ``point`` is a sequence or a name->value map."""
        if isinstance(point, Mapping):
            point = [point[v] for v in self._vars]
        point = [Fraction(p) for p in point]
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = Fraction(0)
        for e, c in self._terms.items():
            t = Fraction(c)
            for p, k in zip(point, e):
                if k:
                    t *= p ** k
            total += t
        return total

    def eval_int_mod(self, point: Sequence[int], p: int) -> int:
        total = 0
        for e, c in self._terms.items():
            t = c
            for a, k in zip(point, e):
                if k:
                    t = t * pow(a, k, p) % p
            total += t
        return total % p

    # change of representation
    def with_vars(self, vars: Sequence[str]) -> SparsePoly:
        """Re-embed in a (super)set of variables, possibly reordered."""
        vars = tuple(vars)
        idx = []
        for v in self._vars:
            if v in vars:
                idx.append(vars.index(v))
            elif self.involves(v):
                raise ValueError(f"cannot drop variable {v!r}: it occurs")
            else:
                idx.append(None)
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(vars)
            for j, k in zip(idx, e):
                if j is not None:
                    ne[j] = k
            out[tuple(ne)] = c
        return SparsePoly(vars, out)

    def coeffs_in(self, var: str) -> list[SparsePoly]:
        """Coefficients as a polynomial in ``var`` (index = power); the rest keep their variables."""
        i = self._index(var)
        rest = self._vars[:i] + self._vars[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self._terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        d = max(buckets, default=-1)
        return [SparsePoly(rest, buckets.get(k, {})) for k in range(d + 1)]

    @classmethod
    def from_coeffs_in(cls, var: str, coeffs: Sequence[SparsePoly], vars: Sequence[str]) -> SparsePoly:
        vars = tuple(vars)
        i = vars.index(var)
        out = {}
        for k, cp in enumerate(coeffs):
            for e, c in cp._terms.items():
                out[e[:i] + (k,) + e[i:]] = c
        return cls(vars, out)

    def to_uni(self) -> UniPoly:
        if self.nvars == 0:
            return UniPoly([self.constant_value()])
        live = [v for v in self._vars if self.involves(v)]
        if len(live) > 1:
            raise ValueError(f"not univariate: involves {live}")
        var = live[0] if live else self._vars[0]
        i = self._index(var)
        coeffs = [0] * (max(self.degree_in(var), 0) + 1)
        for e, c in self._terms.items():
            coeffs[e[i]] += c
        return UniPoly(coeffs)

    @classmethod
    def from_uni(cls, f: UniPoly, var: str = "x") -> SparsePoly:
        return cls((var,), {(k,): c for k, c in enumerate(f.coeffs)})

    def monomial_content(self) -> tuple[int, ...]:
        """Componentwise minimum exponent (the largest monomial dividing self)."""
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    def strip_monomial(self) -> SparsePoly:
        m = self.monomial_content()
        return SparsePoly(self._vars, {tuple(a - b for a, b in zip(e, m)): c for e, c in self._terms.items()})

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.items():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self._vars, e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"SparsePoly({str(self)!r}, vars={self._vars})"


class _SwapCoercion(Exception):
    pass


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(\d+)|(x[1-9]|[A-Za-z_]\w*)|(.))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            name = m.group(2)
            if name not in _KNOWN_VARS:
                raise PolySyntaxError(f"unknown variable {name!r}", start)
            toks.append(("var", name, start))
        else:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := unary ('*' unary)*
    # unary  := ('+'|'-') unary | power
    # power  := atom ('^' INT)?
    # atom   := INT | VAR | '(' expr ')'

    def __init__(self, text: str, vars: tuple[str, ...]):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise PolySyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> SparsePoly:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "var", "("):
                raise PolySyntaxError("implicit multiplication is not allowed", tok[2])
            raise PolySyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise PolySyntaxError("exponent must be a nonnegative integer literal", tok[2])
            self.take()
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return SparsePoly.constant(val, self.vars)
        if kind == "var":
            if val not in self.vars:
                raise PolySyntaxError(f"unknown variable {val!r}", pos)
            return SparsePoly.variable(val, self.vars)
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected {val!r}", pos)


def parse(text: str, vars: Sequence[str] | None = None) -> SparsePoly:
    """Parse an ASCII polynomial expression into expanded canonical form.

    Variables are v, x, y and x1..x9; ``^`` binds tighter than ``*``, which
    binds tighter than ``+``/``-``.  Without ``vars`` the variables occurring
    in ``text`` are used in canonical order.
    """
    if vars is None:
        seen = [t[1] for t in _tokenize(text) if t[0] == "var"]
        vars = default_var_order(seen) or ("x",)
    vars = tuple(vars)
    for v in vars:
        if v not in _KNOWN_VARS:
            raise ValueError(f"unsupported variable name {v!r}")
    return _Parser(text, vars).parse()


def arith(f: SparsePoly, g: SparsePoly, op: str) -> SparsePoly:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def derivative(f: SparsePoly, var: str) -> SparsePoly:
    return f.derivative(var)


def substitute(f: SparsePoly, var: str, value) -> tuple[SparsePoly, int]:
    return f.substitute(var, value)


def evaluate(f: SparsePoly, point) -> Fraction:
    return f.eval(point)


# ---------------------------------------------------------- univariate


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class UniPoly:
    """Dense univariate polynomial over ZZ; ``coeffs[i]`` multiplies ``x**i``.

    The zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim(int(c) for c in coeffs)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"

    def __str__(self):
        return str(SparsePoly.from_uni(self))

    def __add__(self, other):
        other = _as_uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_uni(other))

    def __rsub__(self, other):
        return _as_uni(other) - self

    def __mul__(self, other):
        other = _as_uni(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> int:
        g = reduce(math.gcd, self.coeffs, 0)
        return g

    def primitive(self) -> UniPoly:
        """Divide by the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return UniPoly(c // g for c in self.coeffs)

    def shift_out_zero(self) -> tuple[int, UniPoly]:
        """Return ``(k, g)`` with ``self = x**k * g`` and ``g(0) != 0``."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return k, UniPoly(self.coeffs[k:])

    def exact_div(self, other: UniPoly) -> UniPoly:
        q, r = _qdivmod(_to_q(self), _to_q(other))
        if r:
            raise ArithmeticError("division is not exact")
        if any(c.denominator != 1 for c in q):
            raise ArithmeticError("quotient is not integral")
        return UniPoly(int(c) for c in q)


def _as_uni(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, int):
        return UniPoly([x])
    raise TypeError(f"cannot use {type(x).__name__} as UniPoly")


@dataclass(frozen=True)
class RatUniPoly:
    """``numerator / denominator`` with ``denominator > 0`` in lowest terms."""

    numerator: UniPoly
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(self.numerator.content(), self.denominator)
        if g > 1:
            object.__setattr__(self, "numerator", UniPoly(c // g for c in self.numerator.coeffs))
            object.__setattr__(self, "denominator", self.denominator // g)

    @classmethod
    def from_fractions(cls, coeffs: Sequence[Fraction]) -> RatUniPoly:
        coeffs = [Fraction(c) for c in coeffs]
        den = reduce(math.lcm, (c.denominator for c in coeffs), 1)
        return cls(UniPoly(int(c * den) for c in coeffs), den)

    def fractions(self) -> list[Fraction]:
        return [Fraction(c, self.denominator) for c in self.numerator.coeffs]

    @property
    def degree(self) -> int:
        return self.numerator.degree

    @property
    def lc(self) -> Fraction:
        return Fraction(self.numerator.lc, self.denominator)

    def __call__(self, x) -> Fraction:
        return Fraction(self.numerator(Fraction(x))) / self.denominator

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator})/{self.denominator}"


# exact arithmetic on Fraction coefficient lists (low degree first)


def _to_q(f: UniPoly) -> list[Fraction]:
    return [Fraction(c) for c in f.coeffs]


def _qtrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a, b):
    a, b = _qtrim(a), _qtrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                r[k + j] -= c * bj
    return _qtrim(q), _qtrim(r[: len(b) - 1])


def _qgcd(a, b):
    a, b = _qtrim(a), _qtrim(b)
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def _q_to_primitive(a) -> UniPoly:
    a = _qtrim(a)
    if not a:
        return UniPoly()
    den = reduce(math.lcm, (c.denominator for c in a), 1)
    return UniPoly(int(c * den) for c in a).primitive()


def gcd_q(f: UniPoly, g: UniPoly) -> UniPoly:
    """Greatest common divisor over QQ, returned primitive with positive lc."""
    return _q_to_primitive(_qgcd(_to_q(f), _to_q(g)))


def squarefree_part(f: UniPoly) -> UniPoly:
    """Primitive integer polynomial with the same distinct roots as ``f`` and no repeated factors."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial is undefined")
    if f.degree == 0:
        return UniPoly([1])
    g = _qgcd(_to_q(f), _to_q(f.derivative()))
    q, r = _qdivmod(_to_q(f), g)
    assert not r
    return _q_to_primitive(q)


# ------------------------------------------------------------- systems


@dataclass(frozen=True)
class PolySystem:
    """A list of polynomials over one shared variable list."""

    polys: tuple[SparsePoly, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        if not polys:
            raise ValueError("a system needs at least one polynomial")
        vars = polys[0].vars
        if not vars:
            raise ValueError("a system needs at least one variable")
        if any(p.vars != vars for p in polys):
            raise ValueError("all polynomials must share one variable list")
        object.__setattr__(self, "polys", polys)

    @classmethod
    def from_polys(cls, polys: Sequence[SparsePoly]) -> PolySystem:
        """Build a system, unifying variable lists in canonical order."""
        names = set()
        for p in polys:
            names.update(p.vars)
        vars = default_var_order(names) if all(n in _KNOWN_VARS for n in names) else tuple(sorted(names))
        return cls(tuple(p.with_vars(vars) for p in polys))

    @classmethod
    def from_strings(cls, texts: Sequence[str], vars: Sequence[str] | None = None) -> PolySystem:
        if vars is None:
            names = set()
            for t in texts:
                names.update(parse(t).vars)
            vars = default_var_order(names)
        return cls(tuple(parse(t, vars) for t in texts))

    @property
    def vars(self) -> tuple[str, ...]:
        return self.polys[0].vars

    @property
    def m(self) -> int:
        return len(self.polys)

    @property
    def n(self) -> int:
        return len(self.vars)

    def __str__(self):
        return "; ".join(str(p) for p in self.polys)


@dataclass(frozen=True)
class Sizes:
    sparse_size: int
    sigma: int
    total_degree: int
    dense_size: int


def sizes(F: PolySystem | SparsePoly) -> Sizes:
    """Size measures of a system.

    ``sparse_size`` sums ``size()`` over every coefficient and every exponent
    entry of every term.  ``sigma`` is the largest coefficient ``size()``.
    ``dense_size`` is total degree plus sigma.
    """
    polys = F.polys if isinstance(F, PolySystem) else (F,)
    sparse = 0
    sigma = 0
    deg = 0
    for p in polys:
        for e, c in p.terms.items():
            sparse += size(c) + sum(size(k) for k in e)
            sigma = max(sigma, size(c))
        deg = max(deg, p.total_degree())
    return Sizes(sparse, sigma, deg, deg + sigma)
