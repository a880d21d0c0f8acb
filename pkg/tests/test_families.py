from fractions import Fraction as Fr

import pytest

from oracles import askey_wilson as aw_oracle
from oracles import q_racah as qr_oracle
from qhahn.coeffs import INF, ParamSet, build_table, with_root_field
from qhahn.errors import FieldError, ParameterError
from qhahn.families import (
    CATALOG,
    askey_wilson,
    askey_wilson_inverse,
    family_match,
    preset,
    q_racah,
)


def test_askey_wilson_matches_reference_recurrence():
    a, b, c, d, q = Fr(1, 2), Fr(1, 3), Fr(1, 5), Fr(1, 7), Fr(2)
    ref_alpha, ref_beta = aw_oracle(a, b, c, d, q, 8)
    p = with_root_field(askey_wilson(a, b, c, d, q, alpha1=ref_alpha[0]))
    t = build_table(p, 8)
    assert t.alpha == ref_alpha and t.beta == ref_beta[:9]
    assert family_match(p)[:2] == ((8, 8), "Askey-Wilson / q-Racah")


def test_q_racah_matches_reference_recurrence():
    args = (Fr(1, 3), Fr(1, 5), Fr(1, 7), Fr(1, 11), Fr(2))
    ref_alpha, ref_beta = qr_oracle(*args, 8)
    p = with_root_field(q_racah(*args, alpha1=ref_alpha[0]))
    t = build_table(p, 8)
    assert t.alpha == ref_alpha and t.beta == ref_beta[:9]


def test_q_racah_map():
    p = q_racah(Fr(1, 2), Fr(1, 3), Fr(1, 4), Fr(1, 5), 2)
    assert p.y == 6 and p.d == (2, 4, Fr(2, 5)) and p.variant == "standard"
    with pytest.raises(ParameterError):
        q_racah(0, 1, 1, 1, 2)


def test_askey_wilson_inverse_round_trip():
    args = (Fr(1, 2), Fr(1, 3), Fr(1, 5), Fr(1, 7))
    p = askey_wilson(*args, 2)
    assert askey_wilson(*askey_wilson_inverse(p), 2) == p
    # a generic parameter set needs a square root outside Q
    with pytest.raises(FieldError, match="adjoin"):
        askey_wilson_inverse(ParamSet(2, 1, (1, 2, 3), variant="starred"))


def test_askey_wilson_inverse_errors():
    with pytest.raises(ParameterError):
        askey_wilson_inverse(ParamSet(2, 1, (1, 0, 3), variant="starred"))
    with pytest.raises(ParameterError):
        askey_wilson_inverse(ParamSet(2, 1, (INF, 2, 3), variant="starred"))


def test_presets():
    assert set(CATALOG) >= {"constant", "half-constant", "sigma-zero-44", "y1-cube-zero", "discrete-q-hermite"}
    p = preset("constant", 4)
    assert (p.y, p.d) == (1, (-1, 2, -2))
    with pytest.raises(ParameterError, match="not a square"):
        preset("constant", 2)
    with pytest.raises(ParameterError, match="unknown preset"):
        preset("nope", 2)
    assert preset("y1-generic-66", 2, d=(3, 5, 7)).d == (3, 5, 7)
    assert preset("discrete-q-hermite", 2).variant == "starred"


def test_half_constant():
    t = build_table(preset("half-constant", 4, alpha1=3), 6)
    assert t.alpha == [3] + [Fr(3, 2)] * 5
    assert all(s == 0 for s in t.sigma)


def test_family_match_degrees():
    assert family_match(preset("y1-generic-66", 2)) == ((6, 6), None, True)
    assert family_match(preset("y1-minus-one-44", 2)) == ((4, 4), None, True)
    assert family_match(preset("y1-cube-zero", 2))[1] == "y1-cube-zero"
    assert family_match(preset("constant", 4))[1] == "constant / half-constant"
