"""Named families: Askey-Wilson and q-Racah parameter maps and a preset catalog."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .coeffs import INF, ParamSet, classify_degrees
from .errors import FieldError, ParameterError
from .exactfield import as_exact, try_sqrt


@dataclass(frozen=True)
class FamilySpec:
    name: str
    inputs: dict
    params: ParamSet


def askey_wilson(a, b, c, d, q, alpha1=1, **extra) -> ParamSet:
    """ParamSet whose recurrence is the monic Askey-Wilson one.

    The substitution lands in the starred (q-reversed) forms with the same q.
    """
    a, b, c, d, q = (as_exact(x) for x in (a, b, c, d, q))
    return ParamSet(
        q=q,
        y=a * b * c * d / (q * q),
        d=(b * c / q, c * d / q, b * d / q),
        alpha1=alpha1,
        variant="starred",
        **extra,
    )


def _root(x, adjoin, what):
    r = try_sqrt(x, adjoin=adjoin)
    if r is None:
        raise FieldError(f"{what} = {x} has no square root in the current field; adjoin its root (adjoin={x})")
    return r


def askey_wilson_inverse(p: ParamSet, adjoin=None):
    """Recover (a, b, c, d) from y, d1, d2, d3 and q, canonical root signs."""
    if any(x is INF for x in p.d):
        raise ParameterError("Askey-Wilson parameters need finite d_j")
    d1, d2, d3 = p.d
    if d1 == 0 or d2 == 0 or d3 == 0:
        raise ParameterError("some d_j = 0: the Askey-Wilson parameters are not defined")
    q, y = p.q, p.y
    adjoin = p.adjoin if adjoin is None else adjoin
    a = y * _root(q / (d1 * d2 * d3), adjoin, "q/(d1 d2 d3)")
    b = _root(q * d1 * d3 / d2, adjoin, "q d1 d3/d2")
    c = _root(q * d1 * d2 / d3, adjoin, "q d1 d2/d3")
    d = _root(q * d2 * d3 / d1, adjoin, "q d2 d3/d1")
    return a, b, c, d


def q_racah(alpha, beta, gamma, delta, q, alpha1=1, **extra) -> ParamSet:
    """ParamSet whose recurrence is the monic q-Racah one (standard forms)."""
    alpha, beta, gamma, delta, q = (as_exact(x) for x in (alpha, beta, gamma, delta, q))
    if alpha == 0 or beta == 0 or gamma == 0:
        raise ParameterError("q-Racah map needs alpha, beta, gamma nonzero")
    return ParamSet(
        q=q,
        y=1 / (alpha * beta),
        d=(1 / alpha, 1 / gamma, delta / alpha),
        alpha1=alpha1,
        **extra,
    )


def _sqrt_q(q):
    r = try_sqrt(as_exact(q))
    if r is None:
        raise ParameterError(f"this preset needs r = sqrt(q); q = {q} is not a square (try q = 4)")
    return r


@dataclass(frozen=True)
class Preset:
    name: str
    template: str
    tag: str
    build: Callable  # (q, d override or None) -> (y, d, variant)


def _fixed(y, d, variant="standard"):
    return lambda q, d_over: (y, d if d_over is None else tuple(d_over), variant)


CATALOG = {
    p.name: p
    for p in [
        Preset("constant", "y=1, d=(-1, r, -r), r^2=q", "constant sequences, deg (0,0)",
               lambda q, _: (1, (-1, _sqrt_q(q), -_sqrt_q(q)), "standard")),
        Preset("half-constant", "y=q, d=(r, -r, -1), r^2=q", "alpha_k = alpha1/2 for k >= 2, sigma = 0",
               lambda q, _: (q, (_sqrt_q(q), -_sqrt_q(q), -1), "standard")),
        Preset("sigma-zero-44", "y=1, d=(-1, 1, 1)", "sigma = 0, deg (4,4)", _fixed(1, (-1, 1, 1))),
        Preset("y1-cube-zero", "y=1, d=(0, 0, 0)", "t = 0, sigma0^2 = -[3] alpha1, deg (3,6)", _fixed(1, (0, 0, 0))),
        Preset("discrete-q-hermite", "starred, y=0, d=(inf, 0, 0)", "discrete q-Hermite, alpha_k = q^(k-1)[k]",
               _fixed(0, (INF, 0, 0), "starred")),
        Preset("y1-generic-66", "y=1, d free (default 5, 7, 11)", "y = 1, generic d, deg (6,6)",
               _fixed(1, (5, 7, 11))),
        Preset("y1-minus-one-44", "y=1, d=(-1, d2, d3) (default d2=5, d3=7)", "y = 1, d1 = -1, deg (4,4)",
               _fixed(1, (-1, 5, 7))),
    ]
}

# degree pairs of the named families, used by classification
KNOWN_DEGREES = {
    (8, 8): "Askey-Wilson / q-Racah",
    (0, 0): "constant / half-constant",
    (3, 6): "y1-cube-zero",
    (2, 0): "discrete q-Hermite",
}
POSSIBLY_NEW = {(6, 6), (4, 4)}


def preset(name: str, q, alpha1=1, d=None, **extra) -> ParamSet:
    if name not in CATALOG:
        raise ParameterError(f"unknown preset {name!r}; known: {', '.join(CATALOG)}")
    q = as_exact(q)
    y, dd, variant = CATALOG[name].build(q, d)
    extra.setdefault("variant", variant)
    return ParamSet(q=q, y=y, d=dd, alpha1=alpha1, **extra)


def family_match(p: ParamSet) -> tuple:
    """(degree pair, catalog match or None, possibly-new flag)."""
    deg = classify_degrees(p)
    return deg, KNOWN_DEGREES.get(deg), deg in POSSIBLY_NEW
