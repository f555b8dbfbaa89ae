import pytest

from hopfexact.errors import HopfExactError
from hopfexact.field import FieldContext
from hopfexact.poly import MultiPoly, concrete_solutions

Q = FieldContext(1)
QI = FieldContext(4)


def _xy(ctx):
    return MultiPoly.var(ctx, "x"), MultiPoly.var(ctx, "y")


def test_product_of_conjugates():
    x, _ = _xy(Q)
    assert (x + 1) * (x - 1) == x * x - 1


def test_substitute_polynomial_values():
    x, y = _xy(Q)
    p = x * x + y
    q = p.substitute({"x": y + 1})
    assert q == y * y + 3 * y + 1


def test_divide_out_requires_common_factor():
    x, y = _xy(Q)
    p = x * x * y + x * y
    assert p.divide_out("x") == x * y + y
    assert (p + 1).divide_out("x") is None


def test_univariate_detection():
    x, y = _xy(Q)
    assert (x * x - 2).univariate_in() == ("x", [Q.scalar(-2), Q.zero(), Q.one()])
    assert (x + y).univariate_in() is None


def test_solutions_of_a_split_system():
    x, y = _xy(Q)
    sols = concrete_solutions([x * x - 1, x * y - x], Q)
    assert sorted((s["x"].as_rational(), s["y"].as_rational())
                  for s in sols) == [(-1, 1), (1, 1)]


def test_solution_requires_the_right_field():
    x, _ = _xy(Q)
    eqs = [x * x + 1, 0 * x]
    assert concrete_solutions(eqs, Q) == []
    xi = MultiPoly.var(QI, "x")
    sols = concrete_solutions([xi * xi + 1], QI)
    assert {repr(s["x"]) for s in sols} == {"i", "-i"}


def test_linear_chain_resolves_backwards():
    x, y = _xy(Q)
    sols = concrete_solutions([x - y, y * y - 4], Q)
    assert sorted(s["x"].as_rational() for s in sols) == [-2, 2]
    for s in sols:
        assert s["x"] == s["y"]


def test_underdetermined_systems_are_refused():
    x, y = _xy(Q)
    with pytest.raises(HopfExactError):
        concrete_solutions([x * y - 1], Q)
