"""Finite-dimensional associative algebras given by exact structure constants.

An :class:`Algebra` is a labelled basis, a unit vector, and the full
multiplication table ``table[i][j] = e_i * e_j`` (each entry a coordinate
vector).  Axioms are checked as literal matrix identities, so a verdict of
"associative" is a proof over the coefficient field, not a sample.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionMismatch, NotAnAlgebra
from .field import FieldContext, FieldElement, scal
from .linalg import (
    Mat,
    RrefAccumulator,
    Scalar,
    Subspace,
    Vec,
    basis_vector,
    kernel,
    kron,
    vzero,
)


class Algebra:
    """An associative unital algebra over a fixed field context."""

    def __init__(self, ctx: FieldContext, labels: Sequence[str],
                 unit: Sequence[Scalar],
                 table: Sequence[Sequence[Sequence[Scalar]]]):
        n = len(labels)
        if len(set(labels)) != n:
            raise NotAnAlgebra(f"duplicate basis labels: {labels}")
        if len(unit) != n or len(table) != n or any(len(r) != n for r in table):
            raise DimensionMismatch("unit/table sizes do not match the basis")
        self.ctx = ctx
        self.labels = tuple(labels)
        self.unit: Vec = tuple(scal(ctx, c) for c in unit)
        self.table: tuple[tuple[Vec, ...], ...] = tuple(
            tuple(self._as_vec(entry) for entry in row) for row in table)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._mult_matrix: Optional[Mat] = None

    def _as_vec(self, v: Sequence[Scalar]) -> Vec:
        if len(v) != len(self.labels):
            raise DimensionMismatch(
                f"expected {len(self.labels)} coordinates, got {len(v)}")
        return tuple(scal(self.ctx, c) for c in v)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def label_index(self, label: str) -> int:
        if label not in self._index:
            raise KeyError(f"no basis label {label!r}; have {list(self.labels)}")
        return self._index[label]

    def basis_element(self, key: Union[int, str]) -> Vec:
        i = key if isinstance(key, int) else self.label_index(key)
        return basis_vector(self.ctx, self.dim, i)

    def element(self, coeffs: dict[str, Scalar]) -> Vec:
        v = [self.ctx.zero()] * self.dim
        for lab, c in coeffs.items():
            v[self.label_index(lab)] = scal(self.ctx, c)
        return tuple(v)

    def coefficient(self, v: Sequence[FieldElement], label: str) -> FieldElement:
        return v[self.label_index(label)]

    def zero(self) -> Vec:
        return vzero(self.ctx, self.dim)

    def multiply(self, x: Sequence[FieldElement], y: Sequence[FieldElement]) -> Vec:
        out = list(self.zero())
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                c = xi * yj
                entry = row[j]
                for k in range(self.dim):
                    if not entry[k].is_zero():
                        out[k] = out[k] + c * entry[k]
        return tuple(out)

    def mult_matrix(self) -> Mat:
        """Multiplication as a ``dim x dim**2`` matrix on ``x (x) y``."""
        if self._mult_matrix is None:
            n = self.dim
            cols = [self.table[i][j] for i in range(n) for j in range(n)]
            self._mult_matrix = Mat.from_columns(self.ctx, cols)
        return self._mult_matrix

    def left_mult(self, x: Sequence[FieldElement]) -> Mat:
        cols = [self.multiply(x, self.basis_element(j)) for j in range(self.dim)]
        return Mat.from_columns(self.ctx, cols)

    def right_mult(self, x: Sequence[FieldElement]) -> Mat:
        cols = [self.multiply(self.basis_element(j), x) for j in range(self.dim)]
        return Mat.from_columns(self.ctx, cols)

    def render(self, v: Sequence[FieldElement]) -> str:
        terms = []
        for lab, c in zip(self.labels, v):
            if c.is_zero():
                continue
            if c == self.ctx.one():
                terms.append(lab)
            else:
                terms.append(f"({c!r})*{lab}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Algebra(dim={self.dim}, labels={list(self.labels)})"


def check_algebra(alg: Algebra) -> list[str]:
    """Return the list of violated algebra axioms (empty means all hold).

    Associativity is checked on every basis triple, which proves it for all
    elements by trilinearity.
    """
    problems = []
    n = alg.dim
    ident = Mat.identity(alg.ctx, n)
    if alg.left_mult(alg.unit) != ident:
        problems.append("unit is not a left unit")
    if alg.right_mult(alg.unit) != ident:
        problems.append("unit is not a right unit")
    assoc_ok = True
    for i in range(n):
        for j in range(n):
            ij = alg.table[i][j]
            for k in range(n):
                lhs = alg.multiply(ij, alg.basis_element(k))
                rhs = alg.multiply(alg.basis_element(i), alg.table[j][k])
                if lhs != rhs:
                    assoc_ok = False
    if not assoc_ok:
        problems.append("multiplication is not associative")
    return problems


def require_algebra(alg: Algebra) -> Algebra:
    problems = check_algebra(alg)
    if problems:
        raise NotAnAlgebra("; ".join(problems))
    return alg


def trace(mat: Mat) -> FieldElement:
    if mat.nrows != mat.ncols:
        raise DimensionMismatch("trace needs a square matrix")
    acc = mat.ctx.zero()
    for i in range(mat.nrows):
        acc = acc + mat[i, i]
    return acc


def trace_radical(alg: Algebra) -> Subspace:
    """Radical of the trace form  t(a, b) = tr(L_a L_b)  of the left regular
    representation; over characteristic zero this is the Jacobson radical."""
    lefts = [alg.left_mult(alg.basis_element(i)) for i in range(alg.dim)]
    gram = Mat(alg.ctx, [[trace(lefts[i] @ lefts[j]) for j in range(alg.dim)]
                         for i in range(alg.dim)])
    return Subspace.from_vectors(alg.ctx, alg.dim, kernel(gram))


def generated_operator_algebra(gens: Sequence[Mat],
                               include_identity: bool = True) -> list[Mat]:
    """Basis of the matrix algebra generated by ``gens`` (worklist closure).

    The elimination is done on sparse dict rows: vecced operator matrices are
    mostly zero and the ambient dimension n**2 gets large quickly, so dense
    reduction would dominate everything else in the package.
    """
    if not gens:
        raise DimensionMismatch("need at least one generator")
    ctx = gens[0].ctx
    n = gens[0].nrows
    if any(g.nrows != n or g.ncols != n or g.ctx != ctx for g in gens):
        raise DimensionMismatch("generators must be square of equal size")
    rows: dict[int, dict[int, object]] = {}   # pivot -> normalized sparse row

    def reduce_and_add(mat: Mat) -> bool:
        d = {i: c for i, c in enumerate(mat.vec()) if not c.is_zero()}
        while d:
            p = min(d)
            row = rows.get(p)
            if row is None:
                inv = d[p].inverse()
                rows[p] = {k: inv * v for k, v in d.items()}
                return True
            c = d[p]
            for k, rv in row.items():
                nv = d.get(k, ctx.zero()) - c * rv
                if nv.is_zero():
                    d.pop(k, None)
                else:
                    d[k] = nv
        return False

    # every word in the generators is reachable by right extensions, so
    # closing the span under right multiplication by each generator suffices
    basis: list[Mat] = []
    queue: list[Mat] = ([Mat.identity(ctx, n)] if include_identity else []) + list(gens)
    while queue:
        m = queue.pop()
        if reduce_and_add(m):
            for g in gens:
                queue.append(m @ g)
            basis.append(m)
    return basis


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    if a.ctx != b.ctx:
        raise DimensionMismatch("direct sum needs a common field context")
    ctx = a.ctx
    n, m = a.dim, b.dim
    labels = [f"{lab}.1" for lab in a.labels] + [f"{lab}.2" for lab in b.labels]
    zero_n, zero_m = vzero(ctx, n), vzero(ctx, m)
    unit = a.unit + b.unit

    def pad_a(v: Vec) -> Vec:
        return v + zero_m

    def pad_b(v: Vec) -> Vec:
        return zero_n + v

    table = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(pad_a(a.table[i][j]))
            elif i >= n and j >= n:
                row.append(pad_b(b.table[i - n][j - n]))
            else:
                row.append(zero_n + zero_m)
        table.append(row)
    return Algebra(ctx, labels, unit, table)


def is_algebra_morphism(src: Algebra, dst: Algebra, phi: Mat) -> bool:
    """Does ``phi`` send unit to unit and products to products?"""
    if phi.nrows != dst.dim or phi.ncols != src.dim:
        raise DimensionMismatch(
            f"map must be {dst.dim}x{src.dim}, got {phi.nrows}x{phi.ncols}")
    if phi.apply(src.unit) != dst.unit:
        return False
    return phi @ src.mult_matrix() == dst.mult_matrix() @ kron(phi, phi)


def is_algebra_isomorphism(src: Algebra, dst: Algebra, phi: Mat) -> bool:
    from .linalg import rank
    return (src.dim == dst.dim and is_algebra_morphism(src, dst, phi)
            and rank(phi) == src.dim)


def algebra_from_products(ctx: FieldContext, labels: Sequence[str],
                          unit: Sequence[Scalar],
                          product) -> Algebra:
    """Build the table by calling ``product(i, j) -> coordinate vector``."""
    n = len(labels)
    table = [[product(i, j) for j in range(n)] for i in range(n)]
    return Algebra(ctx, labels, unit, table)


def span_of_elements(alg: Algebra, elements: Iterable[Vec]) -> Subspace:
    return Subspace.from_vectors(alg.ctx, alg.dim, elements)


def subalgebra_closure(alg: Algebra, seeds: Iterable[Vec],
                       include_unit: bool = True) -> Subspace:
    """Smallest unital subalgebra containing the seeds, as a subspace."""
    acc = RrefAccumulator(alg.ctx, alg.dim)
    basis: list[Vec] = []
    queue = ([alg.unit] if include_unit else []) + [tuple(v) for v in seeds]
    while queue:
        v = queue.pop()
        if acc.add(v):
            for b in basis:
                queue.append(alg.multiply(v, b))
                queue.append(alg.multiply(b, v))
            queue.append(alg.multiply(v, v))
            basis.append(v)
    return acc.subspace()
