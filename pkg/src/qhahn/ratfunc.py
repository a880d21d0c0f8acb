"""Univariate polynomials and rational functions over an exact field.

Coefficients may be any exact field element supporting ``+ - * /`` and
comparison with ``0``: ``int``/``Fraction``, :class:`~qhahn.exactfield.QuadElement`
or :class:`~qhahn.exactfield.FuncElement`.  Nothing here rounds.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import PoleError, ZeroDenominatorError

NEG_INF = float("-inf")


def _strip(coeffs: Iterable[Any]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Dense polynomial, coefficients lowest degree first.

    The zero polynomial is the empty tuple and has degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def linear(cls, a, b) -> Poly:
        """``a*x + b``"""
        return cls((b, a))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = _as_poly(other)
            if other is None:
                return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self)

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Poly:
        return Poly(c * a for a in self.coeffs)

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead_inv = 1 / _field(other.lead)
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1 - dq, -1, -1):
            c = rem[i + dq] * lead_inv
            if c == 0:
                continue
            quot[i] = c
            for j, oc in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - c * oc
        return Poly(quot), Poly(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(1 / _field(self.lead))

    def __call__(self, x0):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def map_coeffs(self, fn) -> Poly:
        return Poly(fn(c) for c in self.coeffs)


def _field(c):
    # ints would turn 1/c into a float
    return Fraction(c) if isinstance(c, int) else c


def _as_poly(obj) -> Poly | None:
    if isinstance(obj, Poly):
        return obj
    if isinstance(obj, RatFunc):
        return None
    return Poly.const(obj)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm over the coefficient field."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RatFunc:
    """Rational function kept both as a factor list and in reduced form.

    ``factors`` is a sequence of ``(Poly, exponent)`` pairs with integer,
    possibly negative, exponents; ``scalar`` multiplies the product.  The
    reduced pair ``(num, den)`` is computed lazily with ``den`` monic.
    """

    __slots__ = ("scalar", "factors", "_reduced")

    def __init__(self, factors: Sequence[tuple[Poly, int]] = (), scalar=1):
        self.scalar = scalar
        self.factors = tuple((f if isinstance(f, Poly) else Poly.const(f), int(e)) for f, e in factors)
        self._reduced = None

    @classmethod
    def from_pair(cls, num: Poly, den: Poly) -> RatFunc:
        return cls(((num, 1), (den, -1)))

    def zero_factors(self) -> list[int]:
        """Indices of factors that are the zero polynomial."""
        return [i for i, (f, _) in enumerate(self.factors) if f.is_zero()]

    def without_zero_factors(self) -> RatFunc:
        return RatFunc([fe for fe in self.factors if not fe[0].is_zero()], self.scalar)

    def numerator_factors(self):
        return [(f, e) for f, e in self.factors if e > 0]

    def denominator_factors(self):
        return [(f, -e) for f, e in self.factors if e < 0]

    def raw_pair(self) -> tuple[Poly, Poly]:
        num, den = Poly.const(self.scalar), Poly.const(1)
        for f, e in self.factors:
            if e > 0:
                num = num * f**e
            elif e < 0:
                den = den * f ** (-e)
        return num, den

    def normalized(self) -> tuple[Poly, Poly]:
        if self._reduced is None:
            self._reduced = _reduce(*self.raw_pair())
        return self._reduced

    def __call__(self, x0):
        return rf_eval(self, x0)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self.factors + other.factors, self.scalar * other.scalar)
        if isinstance(other, Poly):
            return RatFunc(self.factors + ((other, 1),), self.scalar)
        return RatFunc(self.factors, self.scalar * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatFunc):
            inv = tuple((f, -e) for f, e in other.factors)
            return RatFunc(self.factors + inv, self.scalar / _field(other.scalar))
        if isinstance(other, Poly):
            return RatFunc(self.factors + ((other, -1),), self.scalar)
        return RatFunc(self.factors, self.scalar / _field(other))

    def factored_str(self, var: str = "x") -> str:
        """Unreduced text form, one parenthesised factor per entry."""
        from .exactfield import format_scalar

        num = [f"({format_poly(f, var)})" + (f"^{e}" if e > 1 else "") for f, e in self.factors if e > 0]
        den = [f"({format_poly(f, var)})" + (f"^{-e}" if e < -1 else "") for f, e in self.factors if e < 0]
        text = "*".join([f"({format_scalar(self.scalar)})"] + num)
        return f"{text} / ({'*'.join(den)})" if den else text

    def __repr__(self):
        num, den = self.normalized()
        return f"RatFunc(({num}) / ({den}))"

    def __str__(self):
        num, den = self.normalized()
        if den == Poly.const(1):
            return format_poly(num)
        return f"({format_poly(num)}) / ({format_poly(den)})"


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDenominatorError("rational function with identically zero denominator")
    if num.is_zero():
        # keep the denominator so its degree stays observable
        return Poly(), den.monic()
    g = poly_gcd(num, den)
    num, den = num // g, den // g
    lc = 1 / _field(den.lead)
    return num.scale(lc), den.scale(lc)


def rf_normalize(f: RatFunc) -> RatFunc:
    num, den = f.normalized()
    out = RatFunc.from_pair(num, den)
    out._reduced = (num, den)
    return out


def rf_eval(f: RatFunc, x0):
    num, den = f.normalized()
    d = den(x0)
    if d == 0:
        raise PoleError(f"evaluation at a pole x = {x0}")
    return num(x0) / _field(d)


def rf_degrees(f: RatFunc):
    num, den = f.normalized()
    return num.degree, den.degree


# -- text form ---------------------------------------------------------------

def format_poly(p: Poly, var: str = "x") -> str:
    from .exactfield import format_scalar

    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        text = format_scalar(c)
        compound = not _is_rational(c)
        neg = False
        if not compound and text.startswith("-"):
            neg, text = True, text[1:]
        if compound:
            text = f"({text})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono:
            term = mono if text == "1" else f"{text}*{mono}"
        else:
            term = text
        if not parts:
            parts.append(f"-{term}" if neg else term)
        else:
            parts.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(parts)


def _is_rational(c) -> bool:
    return isinstance(c, (int, Fraction))


_TERM = re.compile(r"^(?:(?P<coef>.+?)\*)?(?P<var>[a-z])(?:\^(?P<exp>\d+))?$")


def _split_terms(text: str) -> list[str]:
    terms, depth, cur = [], 0, ""
    i = 0
    text = text.replace(" ", "")
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and cur[-1] not in "*/^(":
            terms.append(cur)
            cur = "-" if ch == "-" else ""
        else:
            cur += ch
        i += 1
    if cur:
        terms.append(cur)
    return terms


def parse_poly(text: str, var: str = "x", adjoin=None) -> Poly:
    """Inverse of :func:`format_poly`; terms may come in any order."""
    from .exactfield import parse_scalar

    coeffs: dict[int, Any] = {}
    for term in _split_terms(text):
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        m = _TERM.match(term)
        if m and m.group("var") == var:
            coef_txt = m.group("coef")
            exp = int(m.group("exp") or 1)
        else:
            coef_txt, exp = term, 0
        if coef_txt is None:
            coef = Fraction(1)
        else:
            if coef_txt.startswith("(") and coef_txt.endswith(")"):
                coef_txt = coef_txt[1:-1]
            coef = parse_scalar(coef_txt, adjoin=adjoin)
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    top = max(coeffs) if coeffs else -1
    return Poly(coeffs.get(i, 0) for i in range(top + 1))
