from __future__ import annotations

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mclab import linalg
from mclab.poly import Poly, monomials_of_weighted_degree, parse_fraction


coeffs = st.fractions(min_value=-5, max_value=5,
                      max_denominator=6)


def rand_poly(draw, nvars=3, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = tuple(draw(st.integers(0, max_exp)) for _ in range(nvars))
        terms[mono] = draw(coeffs)
    return Poly(nvars, terms)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_axioms(data):
    p = rand_poly(data.draw)
    q = rand_poly(data.draw)
    r = rand_poly(data.draw)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert p - p == Poly.zero(3)
    assert p * Poly.const(3, 1) == p


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_diff_leibniz(data):
    p = rand_poly(data.draw)
    q = rand_poly(data.draw)
    for i in range(3):
        assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


def test_subs_and_eval():
    p = Poly(2, {(2, 0): Q(1), (0, 1): Q(-3)})
    q = p.subs({0: Poly.var(2, 1)})
    assert q == Poly(2, {(0, 2): Q(1), (0, 1): Q(-3)})
    assert p.eval([Q(2), Q(1)]) == 1
    assert p.subs({0: Q(2), 1: Q(0)}).constant_value() == 4


def test_weighted_grading():
    p = Poly(2, {(1, 1): Q(1), (3, 0): Q(2)})
    assert p.weighted_degree([1, 2]) == 3
    parts = p.weighted_parts([1, 2])
    assert set(parts) == {3}
    assert p.is_weighted_homogeneous([1, 2])
    assert not (p + Poly.const(2, 1)).is_weighted_homogeneous([1, 2])


def test_render_and_lift():
    p = Poly(2, {(1, 2): Q(-1, 2), (0, 0): Q(3)})
    assert p.render(["x", "y"]) == "-1/2*x*y^2 + 3"
    lifted = p.lift(3, [2, 0])
    assert lifted == Poly(3, {(2, 0, 1): Q(-1, 2), (0, 0, 0): Q(3)})


def test_monomial_enumeration_deterministic():
    out = monomials_of_weighted_degree([1, 2], 4)
    assert out == [(0, 2), (2, 1), (4, 0)]
    assert monomials_of_weighted_degree([1], 0) == [(0,)]


def test_parse_fraction():
    assert parse_fraction("3/4") == Q(3, 4)
    assert parse_fraction(" -2 ") == Q(-2)


def test_power_and_errors():
    p = Poly.var(1, 0) + 1
    assert p ** 3 == Poly(1, {(0,): 1, (1,): 3, (2,): 3, (3,): 1})
    with pytest.raises(ValueError):
        p ** -1
    with pytest.raises(ValueError):
        Poly.var(2, 0) + Poly.var(3, 0)


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------

def test_rref_and_rank():
    m = [[Q(1), Q(2)], [Q(2), Q(4)], [Q(0), Q(1)]]
    red, piv = linalg.rref(m)
    assert piv == [0, 1]
    assert linalg.rank(m) == 2


def test_solve_and_span():
    a = [[Q(1), Q(1)], [Q(0), Q(1)]]
    assert linalg.solve(a, [Q(3), Q(1)]) == [Q(2), Q(1)]
    assert linalg.solve([[Q(1), Q(1)], [Q(1), Q(1)]], [Q(0), Q(1)]) is None
    basis = [[Q(1), Q(0), Q(1)], [Q(0), Q(1), Q(1)]]
    assert linalg.coordinates_in_span(basis, [Q(2), Q(3), Q(5)]) == \
        [Q(2), Q(3)]
    assert linalg.coordinates_in_span(basis, [Q(0), Q(0), Q(1)]) is None


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_sparse_nullspace_property(data):
    rows = []
    ncols = data.draw(st.integers(1, 6))
    for _ in range(data.draw(st.integers(0, 6))):
        row = {i: data.draw(coeffs) for i in range(ncols)
               if data.draw(st.booleans())}
        row = {i: c for i, c in row.items() if c != 0}
        rows.append(row)
    basis = linalg.sparse_nullspace(rows, ncols)
    dense = [[r.get(i, Q(0)) for i in range(ncols)] for r in rows]
    for v in basis:
        for r in dense:
            assert sum(a * b for a, b in zip(r, v)) == 0
    assert len(basis) == ncols - linalg.rank(dense)
    # determinism
    assert basis == linalg.sparse_nullspace(rows, ncols)


def test_symmetric_signature():
    m = [[Q(2), Q(0)], [Q(0), Q(-3)]]
    assert linalg.symmetric_signature(m) == (2, 1, 1)
    deg = [[Q(0), Q(1)], [Q(1), Q(0)]]
    rank, pos, neg = linalg.symmetric_signature(deg)
    assert rank == 2 and pos == 1 and neg == 1
    assert linalg.symmetric_signature([[Q(0)]]) == (0, 0, 0)


def test_nilpotent_series():
    ident = linalg.frac_identity(3)
    n = [[Q(0), Q(1), Q(2)], [Q(0), Q(0), Q(3)], [Q(0), Q(0), Q(0)]]
    u = linalg.mat_add(ident, n)
    inv = linalg.unipotent_inverse(u, ident)
    assert linalg.mat_eq(linalg.mat_mul(u, inv), ident)
    log = linalg.unipotent_log(u, ident)
    exp = linalg.nilpotent_exp(log, ident)
    assert linalg.mat_eq(exp, u)
