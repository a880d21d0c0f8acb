"""Exact scalars: rationals, one quadratic extension Q(sqrt s), and F(v).

Rationals are plain :class:`fractions.Fraction` (ints are accepted wherever a
rational is).  :class:`QuadElement` is ``a + b*sqrt(s)`` for a fixed radicand
``s``; two radicands never mix.  :class:`FuncElement` is a reduced rational
function in a formal variable ``v`` used to approach zero/infinite
parameters without limits.
"""
from __future__ import annotations

import math
import operator
import re
from fractions import Fraction
from numbers import Rational

from .errors import FieldError, PoleError
from .ratfunc import Poly, _reduce, format_poly, parse_poly

__all__ = [
    "QuadElement",
    "FuncElement",
    "V",
    "field_arith",
    "try_sqrt",
    "rational_sqrt",
    "specialize",
    "format_scalar",
    "parse_scalar",
    "as_exact",
]


def as_exact(x):
    """Promote ints to Fraction; leave other exact elements alone."""
    if isinstance(x, bool):
        raise TypeError("bool is not a field element")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, QuadElement, FuncElement)):
        return x
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact field element: {x!r}")


class QuadElement:
    """``a + b*sqrt(s)`` with rational ``a``, ``b`` and a fixed radicand ``s``."""

    __slots__ = ("a", "b", "s")

    def __init__(self, a, b, s):
        s = Fraction(s)
        if s == 0:
            raise FieldError("radicand must be nonzero")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "s", s)

    def __setattr__(self, name, value):
        raise AttributeError("QuadElement is immutable")

    @classmethod
    def root(cls, s) -> QuadElement:
        return cls(0, 1, s)

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.s != self.s:
                raise FieldError(f"mixed field contexts: sqrt({self.s}) and sqrt({other.s})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElement(other, 0, self.s)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b, self.s)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.s)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a - o.a, self.b - o.b, self.s)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a * o.a + self.s * self.b * o.b, self.a * o.b + self.b * o.a, self.s)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.s * self.b * self.b

    def conjugate(self) -> QuadElement:
        return QuadElement(self.a, -self.b, self.s)

    def inverse(self) -> QuadElement:
        n = self.norm()
        if n == 0:
            # s a rational square and self a zero divisor, or self == 0
            raise ZeroDivisionError("division by zero in Q(sqrt %s)" % self.s)
        return QuadElement(self.a / n, -self.b / n, self.s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadElement(1, 0, self.s), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return self.s == other.s and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.s))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"QuadElement({self.a}, {self.b}, s={self.s})"

    def __str__(self):
        return format_scalar(self)


class FuncElement:
    """Reduced rational function ``num(v)/den(v)`` over a base field."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = Poly.const(1) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        num, den = _reduce(num, den)
        if num.is_zero():
            den = Poly.const(1)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("FuncElement is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, FuncElement):
            return other
        if isinstance(other, (int, Fraction, QuadElement)) and not isinstance(other, bool):
            return FuncElement(Poly.const(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FuncElement(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FuncElement(-self.num, self.den)

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

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FuncElement(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return FuncElement(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return FuncElement(1) / (self ** (-n))
        return FuncElement(self.num**n, self.den**n)

    def is_constant(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.num.lead if self.num else 0)
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"FuncElement({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


#: the formal deformation variable
V = FuncElement(Poly.x())

_OPS = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}


def field_arith(op: str, x, y):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} exactly."""
    x, y = as_exact(x), as_exact(y)
    if op == "div" and y == 0:
        raise ZeroDivisionError("division by zero")
    return _OPS[op](x, y)


def rational_sqrt(x: Fraction):
    x = Fraction(x)
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _canonical(r):
    # positive rational part first, then positive sqrt(s) coefficient
    if isinstance(r, QuadElement):
        if r.a < 0 or (r.a == 0 and r.b < 0):
            return -r
        return r
    return -r if r < 0 else r


def try_sqrt(x, adjoin=None):
    """Square root of ``x`` in its field, or in Q(sqrt adjoin) for a rational ``x``.

    Returns ``None`` when no root exists there.  The sign is canonical:
    positive rational part preferred, else positive sqrt(s) coefficient.
    """
    if isinstance(x, FuncElement):
        raise TypeError("try_sqrt is defined on rational and quadratic elements only")
    if isinstance(x, QuadElement):
        if adjoin is not None and Fraction(adjoin) != x.s:
            raise FieldError(f"mixed field contexts: sqrt({x.s}) and sqrt({adjoin})")
        return _quad_sqrt(x)
    x = Fraction(x)
    r = rational_sqrt(x)
    if r is not None:
        return r if adjoin is None else QuadElement(r, 0, adjoin)
    if adjoin is None:
        return None
    return _quad_sqrt(QuadElement(x, 0, adjoin))


def _quad_sqrt(x: QuadElement):
    # (u + w rt)^2 = u^2 + s w^2 + 2 u w rt
    s = x.s
    if x == 0:
        return QuadElement(0, 0, s)
    n = rational_sqrt(x.norm())
    if n is None:
        return None
    for u2 in ((x.a + n) / 2, (x.a - n) / 2):
        u = rational_sqrt(u2)
        if u is None:
            continue
        if u == 0:
            w = rational_sqrt(x.a / s) if x.b == 0 else None
            if w is None:
                continue
            cand = QuadElement(0, w, s)
        else:
            cand = QuadElement(u, x.b / (2 * u), s)
        if cand * cand == x:
            return _canonical(cand)
    return None


def specialize(x, v0):
    """Evaluate a :class:`FuncElement` at ``v = v0`` after gcd reduction."""
    if not isinstance(x, FuncElement):
        return x
    d = x.den(v0)
    if d == 0:
        raise PoleError(f"pole at v = {v0}")
    val = x.num(v0) / (Fraction(d) if isinstance(d, int) else d)
    return as_exact(val) if isinstance(val, int) else val


# -- text ------------------------------------------------------------------

def _frac_text(f: Fraction) -> str:
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(x) -> str:
    """Exact text: ``n/d``, ``a+b*rt`` (rt = sqrt of the declared radicand)
    or ``(num)/(den)`` in ``v``."""
    if isinstance(x, bool):
        raise TypeError("bool is not a field element")
    if isinstance(x, (int, Fraction)):
        return _frac_text(x)
    if isinstance(x, QuadElement):
        if x.b == 0:
            return _frac_text(x.a)
        bt = "rt" if x.b == 1 else ("-rt" if x.b == -1 else f"{_frac_text(x.b)}*rt")
        if x.a == 0:
            return bt
        return f"{_frac_text(x.a)}{'' if bt.startswith('-') else '+'}{bt}"
    if isinstance(x, FuncElement):
        num = format_poly(x.num, "v")
        if x.den == Poly.const(1):
            return num
        return f"({num})/({format_poly(x.den, 'v')})"
    raise TypeError(f"not an exact field element: {x!r}")


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD = re.compile(rf"^(?:(?P<a>{_RAT})(?=[+-]))?(?P<b>[+-]?(?:\d+(?:/\d+)?\*)?)rt$")


def parse_scalar(text: str, adjoin=None):
    """Inverse of :func:`format_scalar`.  ``adjoin`` declares the radicand
    behind ``rt``; with it, rationals parse as rationals still."""
    t = text.strip().replace(" ", "")
    if not t:
        raise ValueError("empty scalar")
    if "v" in t:
        return _parse_func(t, adjoin)
    if "rt" in t:
        if adjoin is None:
            raise FieldError(f"{text!r} uses rt but no radicand was declared (adjoin)")
        m = _QUAD.match(t)
        if not m:
            raise ValueError(f"cannot parse extension element {text!r}")
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        bt = m.group("b").rstrip("*")
        b = Fraction(1) if bt in ("", "+") else (Fraction(-1) if bt == "-" else Fraction(bt))
        return QuadElement(a, b, adjoin)
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc


def _parse_func(t: str, adjoin):
    if t.startswith("(") and ")/(" in t and t.endswith(")"):
        num_txt, den_txt = t[1:-1].split(")/(", 1)
        return FuncElement(parse_poly(num_txt, "v", adjoin), parse_poly(den_txt, "v", adjoin))
    return FuncElement(parse_poly(t, "v", adjoin))
