"""Recurrence coefficients of the extended q-Hahn class.

Given ``(y, d1, d2, d3)``, the scale ``alpha1`` and ``q`` this module builds
the rational functions Z and V (and their starred, q-reversed forms),
evaluates the coefficient sequences

    alpha_k = alpha1 * Z(q^k) / Z(q)
    sigma_k = sigma0 * V(q^k) / V(1),   beta_k = sigma_k - sigma_{k-1}

together with sigma0^2 and t, and provides the initial-data route (the
closed forms in terms of alpha1, sigma0, sigma1, sigma2 and t) used as an
independent cross-check.

Conventions for degenerate parameters:

* a factor of Z that is the zero polynomial is dropped from every ratio
  (its ratio is taken as 1), which makes zero and infinite parameters
  computable without limits;
* Z(q) is the value at the normalisation point with the pair
  (x - y)/(x^2 - q y) replaced by its exact value 1/q there (starred:
  (y x - 1)/(y x^2 - q)), so y = q is admissible;
* when the linear numerator factor of V is the zero polynomial every
  sigma_k is 0 (the sigma-zero rule).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import FieldError, ParameterError, PoleError, PreconditionError
from .exactfield import FuncElement, QuadElement, V, as_exact, specialize, try_sqrt
from .ratfunc import Poly, RatFunc, rf_degrees, rf_normalize

ROOT_OF_UNITY_CHECK = 64


class _Infinity:
    """Projective infinity for a d-parameter (approached through d = 1/v)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _coerce_param(x, name, allow_inf=False):
    if x is INF or (isinstance(x, str) and x.strip().lower() == "inf"):
        if not allow_inf:
            raise ParameterError(f"{name} = inf has no deformation path")
        return INF
    return as_exact(x)


@dataclass(frozen=True)
class ParamSet:
    q: object
    y: object
    d: tuple
    alpha1: object = Fraction(1)
    branch: str = "A"
    variant: str = "standard"
    sigma0_sign: str = "plus"
    sigma0_override: object = None
    adjoin: object = None
    mode: str = "strict"

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "q", _coerce_param(self.q, "q"))
        set_(self, "y", _coerce_param(self.y, "y"))
        d = tuple(self.d)
        if len(d) != 3:
            raise ParameterError("d must have exactly three entries")
        set_(self, "d", tuple(_coerce_param(x, f"d{i + 1}", allow_inf=True) for i, x in enumerate(d)))
        set_(self, "alpha1", _coerce_param(self.alpha1, "alpha1"))
        if self.sigma0_override is not None:
            set_(self, "sigma0_override", as_exact(self.sigma0_override))
        if self.adjoin is not None:
            set_(self, "adjoin", Fraction(self.adjoin))
        if self.branch not in ("A", "B"):
            raise ParameterError(f"branch must be A or B, not {self.branch!r}")
        if self.variant not in ("standard", "starred"):
            raise ParameterError(f"variant must be standard or starred, not {self.variant!r}")
        if self.sigma0_sign not in ("plus", "minus"):
            raise ParameterError(f"sigma0_sign must be plus or minus, not {self.sigma0_sign!r}")
        if self.mode not in ("strict", "permissive"):
            raise ParameterError(f"mode must be strict or permissive, not {self.mode!r}")
        q = self.q
        if q == 0 or q == 1 or q == -1:
            raise ParameterError(f"q = {q} is zero or a root of unity")
        if not isinstance(q, Fraction):
            qk = q
            for k in range(1, ROOT_OF_UNITY_CHECK + 1):
                if qk == 1:
                    raise ParameterError(f"q is a root of unity (q^{k} = 1)")
                qk = qk * q
        if self.alpha1 == 0:
            raise ParameterError("alpha1 must be nonzero")
        if self.branch == "B" and self.y == 0:
            raise ParameterError("branch B requires y != 0")

    @property
    def deformed(self) -> bool:
        return any(x is INF for x in self.d)

    def lifted_d(self) -> tuple:
        """d with every infinity replaced by 1/v."""
        return tuple(1 / V if x is INF else x for x in self.d)

    def flipped(self) -> ParamSet:
        return replace(self, sigma0_sign="minus" if self.sigma0_sign == "plus" else "plus")


@dataclass(frozen=True)
class SymConstants:
    k1: object
    k2: object


@dataclass(frozen=True)
class AuxConstants:
    c0: object
    c1: object
    c2: object
    q: object

    def g(self, k: int):
        return q_number(k - 2, self.q) * self.c0 + self.c1


@dataclass
class RecurrenceTable:
    kmax: int
    alpha: list  # alpha_1 .. alpha_kmax
    sigma: list  # sigma_0 .. sigma_kmax
    beta: list  # beta_0 .. beta_kmax
    sigma0_sq: object
    t: object
    degree_pair: tuple
    flags: dict = field(default_factory=dict)
    params: Optional[ParamSet] = None

    def alpha_at(self, k: int):
        return self.alpha[k - 1]


def q_number(k: int, q):
    """``[k] = (q^k - 1)/(q - 1)`` for any integer ``k``."""
    q = as_exact(q)
    if q == 1:
        return Fraction(k)
    if k >= 0:
        acc, qi = Fraction(0), Fraction(1)
        for _ in range(k):
            acc = acc + qi
            qi = qi * q
        return acc
    return (q**k - 1) / (q - 1)


def _sym(y, d):
    d1, d2, d3 = d
    return y + d1 * d2 + d1 * d3 + d2 * d3, y * (d1 + d2 + d3) + d1 * d2 * d3


def sym_constants(p: ParamSet) -> SymConstants:
    k1, k2 = _sym(p.y, p.lifted_d())
    try:
        return SymConstants(specialize(k1, 0), specialize(k2, 0))
    except PoleError as exc:
        raise ParameterError("k1, k2 are infinite for these parameters") from exc


def _lin(a, b) -> Poly:
    return Poly((b, a))  # a*x + b


def _quad(a, b) -> Poly:
    return Poly((b, 0, a))  # a*x^2 + b


def _z_factors(q, y, d, starred: bool):
    """Tagged factor list of Z (or Z*) in the printed grouping."""
    one = Fraction(1)
    if not starred:
        out = [("unit", _lin(one, -one), 1), ("pair", _lin(one, -y), 1)]
        for dj in d:
            out += [("root", _lin(one, -dj), 1), ("h", _lin(dj, -y), 1)]
        out += [("pair", _quad(one, -q * y), -1), ("den", _quad(one, -y), -2), ("den", _quad(q, -y), -1)]
        return Fraction(1), out
    out = [("unit", _lin(one, -one), 1), ("pair", _lin(y, -one), 1)]
    for dj in d:
        out += [("h", _lin(y, -dj), 1), ("root", _lin(dj, -one), 1)]
    out += [("pair", _quad(y, -q), -1), ("den", _quad(y, -one), -2), ("den", _quad(y * q, -one), -1)]
    return q * q, out


def build_Z(p: ParamSet) -> RatFunc:
    """Z (standard) or Z* (starred) as a factored rational function.

    Identically zero factors are kept; see :meth:`RatFunc.zero_factors`.
    """
    scalar, tagged = _z_factors(p.q, p.y, p.lifted_d(), p.variant == "starred")
    return RatFunc([(f, e) for _, f, e in tagged], scalar)


def _v_parts(p: ParamSet):
    q, y = p.q, p.y
    k1, k2 = _sym(y, p.lifted_d())
    up = _lin(q, -Fraction(1))
    if p.variant == "standard":
        lin = _lin(k1 * q, -k2) if p.branch == "A" else _lin(k2 * q, -y * k1)
        return 1 / (q - 1), up, lin, _quad(q * q, -y)
    lin = _lin(k2 * q, -k1) if p.branch == "A" else _lin(y * k1 * q, -k2)
    return q / (q - 1), up, lin, _quad(y * q * q, -Fraction(1))


def build_V(p: ParamSet) -> RatFunc:
    """V, V_a, V* or V_a* according to ``p.branch`` and ``p.variant``."""
    if p.branch == "B" and p.y == 0:
        raise PreconditionError("branch B divides by y; y = 0 given")
    scalar, up, lin, den = _v_parts(p)
    return RatFunc([(up, 1), (lin, 1), (den, -1)], scalar)


class _Model:
    """Per-parameter-set cache of the reduced functions and constants.

    Values may live in F(v) when some d_j is infinite; public accessors
    specialise at v = 0.
    """

    def __init__(self, p: ParamSet):
        self.p = p
        q = p.q
        starred = p.variant == "starred"
        scalar, tagged = _z_factors(q, p.y, p.lifted_d(), starred)
        self.tagged = tagged
        # factors carrying an infinite d_j live in F(v); they are only ever
        # evaluated factor by factor, never gcd-reduced as polynomials in x
        self.fin = [(tag, f, e) for tag, f, e in tagged if not _over_v(f)]
        self.inf = [(tag, f, e) for tag, f, e in tagged if _over_v(f)]
        live = [(f, e) for _, f, e in self.fin if not f.is_zero()]
        self.zhat = rf_normalize(RatFunc(live, scalar))
        self._zq_scalar = scalar / q
        self._zq = None
        self._zq_noh = None
        self._vstate = None
        self._degrees = None

    def degrees(self):
        if self._degrees is None:
            if not self.inf:
                self._degrees = rf_degrees(self.zhat)
            else:
                # leading behaviour as v -> 0: v * f(x) specialised at v = 0
                lim = [(Poly(specialize(V * c, 0) for c in f.coeffs), e) for _, f, e in self.inf]
                live = [(f, e) for _, f, e in self.fin if not f.is_zero()]
                self._degrees = rf_degrees(RatFunc(live + lim))
        return self._degrees

    def _inf_value(self, x0, skip_h=False):
        val = Fraction(1)
        for tag, f, e in self.inf:
            if skip_h and tag == "h":
                continue
            fx = f(x0)
            val = val * (fx**e if e > 0 else 1 / fx ** (-e))
        return val

    # -- Z side --------------------------------------------------------
    def _z_at_q(self, skip_h: bool):
        keep = [
            (f, e)
            for tag, f, e in self.fin
            if tag != "pair" and not f.is_zero() and not (skip_h and tag == "h")
        ]
        try:
            val = rf_normalize(RatFunc(keep, self._zq_scalar))(self.p.q)
        except PoleError as exc:
            raise PreconditionError("Z(q) has a pole: the normalisation point is singular") from exc
        return val * self._inf_value(self.p.q, skip_h) if self.inf else val

    def _check_zero_factors(self):
        # A vanishing (d_j x - y) factor means Z(q^k) = 0 for every k.  Only the
        # starred forms with sigma = 0 have a consistent value there (the factor
        # ratio tends to 1 along y ~ p^2, d_j ~ p); everything else is refused.
        if not any(tag == "h" and f.is_zero() for tag, f, _ in self.tagged):
            return
        p = self.p
        if p.variant == "standard":
            raise PreconditionError(
                "a factor (d_j x - y) of Z vanishes identically (y = d_j = 0): "
                "Z(q^k) = 0 for all k; use the starred variant"
            )
        if not self.vstate()[0]:
            raise PreconditionError(
                "a factor (y x - d_j) of Z* vanishes identically (y = d_j = 0) while sigma is not "
                "identically zero: sigma0^2 has no finite value"
            )

    @property
    def zq(self):
        if self._zq is None:
            self._check_zero_factors()
            val = self._z_at_q(False)
            if _is_zero(val):
                raise PreconditionError("Z(q) = 0: the coefficient formulas need Z(q) != 0")
            self._zq = val
        return self._zq

    def alpha_raw(self, k: int):
        p = self.p
        if k == 1:
            return p.alpha1
        if k < 1:
            raise ValueError("alpha_k is defined for k >= 1")
        zq = self.zq
        try:
            zk = self.zhat(p.q**k)
        except PoleError as exc:
            raise PreconditionError(f"Z(q^{k}) has a pole") from exc
        if self.inf:
            zk = zk * self._inf_value(p.q**k)
        return p.alpha1 * zk / zq

    def t_raw(self):
        p = self.p
        q = p.q
        self.zq  # raises on Z(q) = 0
        starred = p.variant == "starred"
        tau = 1
        for dj, (tag, h, _) in zip(p.lifted_d(), [t for t in self.tagged if t[0] == "h"]):
            if h.is_zero():
                tau = tau * (Fraction(-1) if starred else 1 / q)
            else:
                tau = tau * dj / h(q)
        if self._zq_noh is None:
            self._zq_noh = self._z_at_q(True)
        pref = -p.alpha1 * (q - 1) ** 2
        if not starred:
            pref = pref / (q * q)
        return pref * tau / self._zq_noh

    # -- V side --------------------------------------------------------
    def vstate(self):
        if self._vstate is None:
            p = self.p
            if p.branch == "B" and p.y == 0:
                raise PreconditionError("branch B divides by y; y = 0 given")
            scalar, up, lin, den = _v_parts(p)
            zero = lin.is_zero()
            factors = [(up, 1), (den, -1)] if zero else [(up, 1), (lin, 1), (den, -1)]
            shape = rf_normalize(RatFunc(factors, scalar))
            v1 = None
            if not zero or p.sigma0_override is not None:
                try:
                    v1 = shape(Fraction(1))
                except PoleError as exc:
                    raise PreconditionError("V(1) is a pole") from exc
                if _is_zero(v1):
                    raise PreconditionError("V(1)=0: the sigma formulas need V(1) != 0")
            self._vstate = (zero, shape, v1)
        return self._vstate

    def sigma0_sq_raw(self):
        zero, _, v1 = self.vstate()
        if zero:
            return Fraction(0)
        p = self.p
        val = p.alpha1 * v1 * v1 / self.zq
        if p.branch == "B":
            val = val / p.y
        return val

    def sigma_shape(self, k: int):
        zero, shape, v1 = self.vstate()
        if v1 is None:
            return Fraction(0)
        try:
            return shape(self.p.q**k) / v1
        except PoleError as exc:
            raise PreconditionError(f"V(q^{k}) has a pole") from exc


def _over_v(f: Poly) -> bool:
    return any(isinstance(c, FuncElement) for c in f.coeffs)


def _is_zero(x) -> bool:
    if isinstance(x, FuncElement):
        try:
            return specialize(x, 0) == 0
        except PoleError:
            return False
    return x == 0


@lru_cache(maxsize=512)
def _model(p: ParamSet) -> _Model:
    return _Model(p)


def _spec(x, what: str):
    try:
        return specialize(x, 0)
    except PoleError as exc:
        raise PreconditionError(f"{what} has a pole at v = 0 (no finite value on this deformation path)") from exc


def alpha_at(p: ParamSet, k: int):
    """alpha_k = alpha1 Z(q^k)/Z(q) with zero factors cancelled."""
    val = _spec(_model(p).alpha_raw(k), f"alpha_{k}")
    if k >= 2 and val == 0 and p.mode == "strict":
        raise PreconditionError(f"Z(q^{k}) = 0: alpha_{k} vanishes (finite family; use permissive mode)")
    return val


def sigma0_sq(p: ParamSet):
    return _spec(_model(p).sigma0_sq_raw(), "sigma0^2")


def sigma_identically_zero(p: ParamSet) -> bool:
    return _model(p).vstate()[0]


def sigma0(p: ParamSet):
    """Signed square root of sigma0^2 in the active field, or the override."""
    if p.sigma0_override is not None:
        return p.sigma0_override
    m = _model(p)
    if m.vstate()[0]:
        return Fraction(0)
    s2 = sigma0_sq(p)
    root = try_sqrt(s2, adjoin=p.adjoin)
    if root is None:
        raise FieldError(
            f"sigma0^2 = {s2} has no square root in the current field; "
            f"adjoin its root (e.g. adjoin={s2}) or pass a sigma0 override"
        )
    return -root if p.sigma0_sign == "minus" else root


def sigma_at(p: ParamSet, k: int):
    s0 = sigma0(p)
    if k == 0 or s0 == 0:
        return s0
    return s0 * _spec(_model(p).sigma_shape(k), f"sigma_{k}")


def t_value(p: ParamSet):
    return _spec(_model(p).t_raw(), "t")


def classify_degrees(p: ParamSet) -> tuple:
    """Degrees of the reduced numerator/denominator of Z with zero factors dropped.

    An infinite d_j contributes the v -> 0 leading form of its factors.
    """
    return _model(p).degrees()


def q_reverse(p: ParamSet) -> ParamSet:
    """Parameter set whose coefficients are the originals with q -> 1/q."""
    return replace(p, variant="starred" if p.variant == "standard" else "standard")


def build_table(p: ParamSet, kmax: int) -> RecurrenceTable:
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    alpha, finite_at = [], None
    for k in range(1, kmax + 1):
        if k >= 2:
            a = _spec(_model(p).alpha_raw(k), f"alpha_{k}")
            if a == 0:
                if p.mode == "strict":
                    raise PreconditionError(
                        f"Z(q^{k}) = 0: alpha_{k} vanishes (finite family; use permissive mode)"
                    )
                finite_at = k
                break
        else:
            a = p.alpha1
        alpha.append(a)
    n = len(alpha)
    sigma = [sigma_at(p, k) for k in range(n + 1)]
    beta = [sigma[0]] + [sigma[k] - sigma[k - 1] for k in range(1, n + 1)]
    return RecurrenceTable(
        kmax=n,
        alpha=alpha,
        sigma=sigma,
        beta=beta,
        sigma0_sq=sigma0_sq(p),
        t=t_value(p),
        degree_pair=classify_degrees(p),
        flags={"sigma_identically_zero": sigma_identically_zero(p), "finite_family_at": finite_at},
        params=p,
    )


# -- initial-data route ---------------------------------------------------

def aux_constants(sigma0, sigma1, sigma2, q) -> AuxConstants:
    q3, q4 = q_number(3, q), q_number(4, q)
    c0 = q3 * (q * sigma0 - sigma1) + sigma2
    c1 = q3 * (sigma0 + sigma1 - sigma2)
    c2 = q4 * sigma0 * sigma2 - q3 * sigma0 * sigma1 - q * q * sigma1 * sigma2
    return AuxConstants(c0, c1, c2, q)


def g_direction(p: ParamSet) -> AuxConstants:
    """Auxiliary constants up to scale when every sigma_k vanishes.

    g(k) is then proportional to q^(k+1) - y (starred: y q^(k+1) - 1),
    read off from the factor of Z that g(k-1) produces.
    """
    q, y = p.q, p.y
    q3 = q**3
    lead, const = (Fraction(1), y) if p.variant == "standard" else (y, Fraction(1))
    return AuxConstants(lead * q3, (lead * q3 - const) / (q - 1), Fraction(0), q)


def aux_for_table(table: RecurrenceTable) -> AuxConstants:
    s = table.sigma
    q = table.params.q
    if s[0] == 0 and s[1] == 0 and s[2] == 0:
        return g_direction(table.params)
    return aux_constants(s[0], s[1], s[2], q)


def _nonzero_g(a: AuxConstants, k: int):
    g = a.g(k)
    if g == 0:
        raise PreconditionError(f"g({k}) = 0")
    return g


def sigma_from_initial(a: AuxConstants, sigma0, q, k: int):
    g = _nonzero_g(a, 2 * k + 1)
    return q_number(k + 1, q) * (q_number(k, q) / q * a.c2 + sigma0 * a.g(1)) / g


def alpha_from_initial(a: AuxConstants, alpha1, sigma0, t, q, k: int):
    if k < 1:
        raise ValueError("alpha_k is defined for k >= 1")
    if k == 1:
        # [0] = 0 and the g(0) factors cancel identically
        return alpha1
    g2k, g2k2 = _nonzero_g(a, 2 * k), _nonzero_g(a, 2 * k - 2)
    c0, c1, c2 = a.c0, a.c1, a.c2
    km1 = q_number(k - 1, q)
    inner = q ** (k - 2) * a.g(2) * alpha1
    if km1 != 0:
        g2k1 = _nonzero_g(a, 2 * k - 1)
        s0c0 = sigma0 * c0
        w = (
            q ** (k - 3)
            * ((q ** (k - 1) + 1) * s0c0 - c2)
            * ((s0c0 - c2) * q ** (k - 2) + sigma0 * (c0 - (q - 1) * c1))
            / (g2k1 * g2k1)
            - t
        )
        inner = inner + km1 * a.g(k) * w
    return q * q_number(k, q) * a.g(k - 1) / (g2k * g2k2) * inner


def tilde_coeffs(table: RecurrenceTable, a: AuxConstants, q, kmax: int):
    """Coefficients of the companion tridiagonal matrix M.

    Returns ``(sigma_tilde[0..kmax], alpha_tilde[1..kmax])``.
    """
    if len(table.sigma) < kmax + 2 or len(table.alpha) < kmax + 1:
        raise PreconditionError(f"table too short for tilde coefficients up to k = {kmax}")
    for k in range(1, kmax + 2):
        _nonzero_g(a, k)
    st = [q_number(k + 1, q) / q_number(k + 2, q) * table.sigma[k + 1] for k in range(kmax + 1)]
    at = [
        q_number(k, q) * a.g(k + 1) / (q * q_number(k + 1, q) * a.g(k)) * table.alpha[k]
        for k in range(1, kmax + 1)
    ]
    return st, at


def with_root_field(p: ParamSet) -> ParamSet:
    """Adjoin sqrt(sigma0^2) when it is not already a square in the field."""
    if p.sigma0_override is not None or sigma_identically_zero(p):
        return p
    s2 = sigma0_sq(p)
    if isinstance(s2, QuadElement) or try_sqrt(s2, adjoin=p.adjoin) is not None:
        return p
    return replace(p, adjoin=s2)
