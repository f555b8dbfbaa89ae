"""Hopf algebras as exact data: axioms, grouplikes, wedge, coradical filtration.

A :class:`Hopf` extends :class:`~hopfexact.algebra.Algebra` with a
comultiplication matrix (``dim**2 x dim``, the column for basis vector ``j``
holding the coordinates of its coproduct with the left tensor leg on the
coarse index), a counit functional, and an antipode matrix.  Every axiom is
checked as a literal matrix identity.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import Algebra, check_algebra, trace_radical
from .errors import (
    DimensionMismatch,
    FiltrationNotExhaustive,
    HopfExactError,
    NotASubcoalgebra,
    SingularAntipode,
)
from .field import FieldContext, FieldElement, polynomial_roots, scal
from .linalg import (
    Mat,
    Scalar,
    Subspace,
    Vec,
    basis_vector,
    eigenspace,
    inverse,
    kernel,
    minimal_polynomial,
    restrict_operator,
    slice_right,
    tensor_vec,
    vadd,
    vscale,
)


class Hopf(Algebra):
    """A Hopf algebra presented by exact structure matrices."""

    def __init__(self, ctx: FieldContext, labels: Sequence[str],
                 unit: Sequence[Scalar],
                 table: Sequence[Sequence[Sequence[Scalar]]],
                 comult: Mat, counit: Sequence[Scalar], antipode: Mat):
        super().__init__(ctx, labels, unit, table)
        n = self.dim
        if comult.nrows != n * n or comult.ncols != n:
            raise DimensionMismatch(
                f"comultiplication must be {n * n}x{n}, got "
                f"{comult.nrows}x{comult.ncols}")
        if len(counit) != n:
            raise DimensionMismatch(f"counit must have {n} coordinates")
        if antipode.nrows != n or antipode.ncols != n:
            raise DimensionMismatch(f"antipode must be {n}x{n}")
        self.comult = comult
        self.counit: Vec = tuple(scal(ctx, c) for c in counit)
        self.antipode = antipode

    def counit_row(self) -> Mat:
        return Mat(self.ctx, [self.counit])

    def counit_value(self, v: Sequence[FieldElement]) -> FieldElement:
        acc = self.ctx.zero()
        for c, x in zip(self.counit, v):
            acc = acc + c * x
        return acc

    def comult_vec(self, v: Sequence[FieldElement]) -> Vec:
        return self.comult.apply(v)

    def __repr__(self):
        return f"Hopf(dim={self.dim}, labels={list(self.labels)})"


def tensor_square_product(h: Algebra, u: Sequence[FieldElement],
                          v: Sequence[FieldElement]) -> Vec:
    """Product of two elements of H (x) H, written in coarse-left coordinates.

    Works sparsely over the nonzero entries, so checking bialgebra axioms
    basis pair by basis pair stays cheap even though the full matrix of the
    tensor-square multiplication would be dim**2 x dim**4.
    """
    n = h.dim
    out = [h.ctx.zero()] * (n * n)
    for idx1, c1 in enumerate(u):
        if c1.is_zero():
            continue
        h1, k1 = divmod(idx1, n)
        for idx2, c2 in enumerate(v):
            if c2.is_zero():
                continue
            h2, k2 = divmod(idx2, n)
            c = c1 * c2
            left = h.table[h1][h2]
            right = h.table[k1][k2]
            for a, la in enumerate(left):
                if la.is_zero():
                    continue
                cla = c * la
                for b, rb in enumerate(right):
                    if not rb.is_zero():
                        out[a * n + b] = out[a * n + b] + cla * rb
    return tuple(out)


# -- axiom checks -------------------------------------------------------------


def check_coalgebra(h: Hopf) -> list[str]:
    problems = []
    n = h.dim
    ctx = h.ctx
    coassoc_ok = True
    counit_left_ok = True
    counit_right_ok = True
    for j in range(n):
        col = h.comult.col(j)
        lhs = [ctx.zero()] * (n ** 3)
        rhs = [ctx.zero()] * (n ** 3)
        eps_left = [ctx.zero()] * n
        eps_right = [ctx.zero()] * n
        for idx, c in enumerate(col):
            if c.is_zero():
                continue
            a, b = divmod(idx, n)
            for idx2, c2 in enumerate(h.comult.col(a)):
                if not c2.is_zero():
                    lhs[idx2 * n + b] = lhs[idx2 * n + b] + c * c2
            for idx2, c2 in enumerate(h.comult.col(b)):
                if not c2.is_zero():
                    rhs[a * n * n + idx2] = rhs[a * n * n + idx2] + c * c2
            eps_left[b] = eps_left[b] + c * h.counit[a]
            eps_right[a] = eps_right[a] + c * h.counit[b]
        if lhs != rhs:
            coassoc_ok = False
        ej = list(basis_vector(ctx, n, j))
        if eps_left != ej:
            counit_left_ok = False
        if eps_right != ej:
            counit_right_ok = False
    if not coassoc_ok:
        problems.append("comultiplication is not coassociative")
    if not counit_left_ok:
        problems.append("counit fails on the left tensor leg")
    if not counit_right_ok:
        problems.append("counit fails on the right tensor leg")
    return problems


def check_bialgebra_compat(h: Hopf) -> list[str]:
    problems = []
    n = h.dim
    comult_ok = True
    counit_ok = True
    for i in range(n):
        for j in range(n):
            product = h.table[i][j]
            if h.comult.apply(product) != tensor_square_product(
                    h, h.comult.col(i), h.comult.col(j)):
                comult_ok = False
            if h.counit_value(product) != h.counit[i] * h.counit[j]:
                counit_ok = False
    if not comult_ok:
        problems.append("comultiplication is not an algebra morphism")
    if h.comult.apply(h.unit) != tensor_vec(h.unit, h.unit):
        problems.append("comultiplication does not fix the unit")
    if not counit_ok:
        problems.append("counit is not an algebra morphism")
    if h.counit_value(h.unit) != h.ctx.one():
        problems.append("counit does not send the unit to 1")
    return problems


def check_antipode(h: Hopf) -> list[str]:
    problems = []
    n = h.dim
    left_ok = True
    right_ok = True
    for j in range(n):
        target = vscale(h.counit[j], h.unit)
        left = h.zero()
        right = h.zero()
        for idx, c in enumerate(h.comult.col(j)):
            if c.is_zero():
                continue
            a, b = divmod(idx, n)
            left = vadd(left, vscale(c, h.multiply(h.antipode.col(a),
                                                   h.basis_element(b))))
            right = vadd(right, vscale(c, h.multiply(h.basis_element(a),
                                                     h.antipode.col(b))))
        if left != target:
            left_ok = False
        if right != target:
            right_ok = False
    if not left_ok:
        problems.append("antipode fails the left convolution identity")
    if not right_ok:
        problems.append("antipode fails the right convolution identity")
    return problems


AXIOM_FAMILIES = ("algebra", "coalgebra", "comult-morphism", "counit-morphism",
                  "antipode")


def hopf_axiom_report(h: Hopf) -> dict[str, list[str]]:
    """Violations grouped into the five axiom families (empty lists = pass)."""
    compat = check_bialgebra_compat(h)
    return {
        "algebra": check_algebra(h),
        "coalgebra": check_coalgebra(h),
        "comult-morphism": [p for p in compat if p.startswith("comultiplication")],
        "counit-morphism": [p for p in compat if p.startswith("counit")],
        "antipode": check_antipode(h),
    }


def check_hopf(h: Hopf) -> list[str]:
    report = hopf_axiom_report(h)
    return [p for fam in AXIOM_FAMILIES for p in report[fam]]


def antipode_inverse(h: Hopf) -> Mat:
    try:
        return inverse(h.antipode)
    except DimensionMismatch:
        raise SingularAntipode("the antipode matrix is singular")


# -- grouplikes ---------------------------------------------------------------


def is_grouplike(h: Hopf, v: Sequence[FieldElement]) -> bool:
    v = tuple(v)
    return (h.comult.apply(v) == tensor_vec(v, v)
            and h.counit_value(v) == h.ctx.one())


def coalgebra_components(h: Hopf) -> list[list[int]]:
    """Connected components of the basis under appearing together in some
    coproduct; each component spans a subcoalgebra direct summand."""
    n = h.dim
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for j in range(n):
        col = h.comult.col(j)
        touched = set()
        for idx, c in enumerate(col):
            if not c.is_zero():
                touched.add(idx // n)
                touched.add(idx % n)
        for t in touched:
            union(j, t)
    groups: dict[int, list[int]] = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    return [sorted(g) for g in sorted(groups.values())]


def _right_slice_op(h: Hopf, k: int) -> Mat:
    return slice_right(h.comult, h.dim, h.dim, k)


def grouplike_elements(h: Hopf) -> list[Vec]:
    """All grouplike elements, exactly.

    A grouplike lies inside one coalgebra component.  If every basis vector
    of a component is itself grouplike, the component contributes exactly
    those (coefficients there satisfy c_g*c_h = delta*c_g, so over a field
    exactly one coefficient is 1).  Otherwise each coordinate of a grouplike
    is an eigenvalue of the matching right coproduct slice, and the search
    branches over the exactly-computed spectra.
    """
    out: list[Vec] = []
    for comp in coalgebra_components(h):
        members = [basis_vector(h.ctx, h.dim, j) for j in comp]
        if all(is_grouplike(h, v) for v in members):
            out.extend(members)
            continue
        out.extend(_grouplikes_by_slices(h, comp))
    return out


def _grouplikes_by_slices(h: Hopf, comp: list[int]) -> list[Vec]:
    ctx = h.ctx
    n = h.dim
    span = Subspace.from_vectors(ctx, n, [basis_vector(ctx, n, j) for j in comp])
    found: list[Vec] = []

    def recurse(space: Subspace, assignment: dict[int, FieldElement],
                remaining: list[int]):
        if space.dim == 0:
            return
        if not remaining:
            v = [ctx.zero()] * n
            for k, c in assignment.items():
                v[k] = c
            v = tuple(v)
            if space.contains(v) and is_grouplike(h, v):
                found.append(v)
            return
        k, rest = remaining[0], remaining[1:]
        op = _right_slice_op(h, k)
        restricted = restrict_operator(op, span)
        minpoly = minimal_polynomial(restricted)
        roots = polynomial_roots(ctx, minpoly)
        if roots is None:
            raise HopfExactError(
                "grouplike enumeration needs polynomial factoring beyond "
                f"quadratics (slice {k} has minimal degree {len(minpoly) - 1})")
        for c in roots:
            refined = space.intersect(eigenspace(op, c))
            recurse(refined, {**assignment, k: c}, rest)

    recurse(span, {}, list(comp))
    return found


# -- wedge and coradical filtration -------------------------------------------


def wedge(h: Hopf, x: Subspace, y: Subspace) -> Subspace:
    """The subspace of vectors whose coproduct lies in X(x)H + H(x)Y."""
    n = h.dim
    if x.ambient != n or y.ambient != n:
        raise DimensionMismatch("wedge arguments must live in the Hopf algebra")
    ctx = h.ctx
    gens = []
    for xv in x.basis():
        for j in range(n):
            gens.append(tensor_vec(xv, basis_vector(ctx, n, j)))
    for j in range(n):
        ej = basis_vector(ctx, n, j)
        for yv in y.basis():
            gens.append(tensor_vec(ej, yv))
    target = Subspace.from_vectors(ctx, n * n, gens)
    return target.preimage_under(h.comult)


def is_subcoalgebra(h: Hopf, c: Subspace) -> bool:
    n = h.dim
    gens = [tensor_vec(a, b) for a in c.basis() for b in c.basis()]
    tensor_sq = Subspace.from_vectors(h.ctx, n * n, gens)
    return all(tensor_sq.contains(h.comult.apply(v)) for v in c.basis())


def coradical_filtration(h: Hopf, c0: Subspace) -> list[Subspace]:
    """Ascending filtration C0 <= C1 <= ... <= H obtained by wedging with C0.

    ``c0`` must be a subcoalgebra; if the chain stabilises before reaching
    the whole algebra, :class:`FiltrationNotExhaustive` is raised.
    """
    if c0.ambient != h.dim:
        raise DimensionMismatch("filtration seed must live in the Hopf algebra")
    if not is_subcoalgebra(h, c0):
        raise NotASubcoalgebra("the seed is not a subcoalgebra")
    chain = [c0]
    while chain[-1].dim < h.dim:
        nxt = wedge(h, c0, chain[-1])
        if nxt == chain[-1]:
            raise FiltrationNotExhaustive(
                f"filtration stabilised at dimension {nxt.dim} of {h.dim}")
        chain.append(nxt)
    return chain


def dual_algebra(h: Hopf) -> Algebra:
    """The convolution algebra on the dual basis: the product of two dual
    functionals is dual to the comultiplication, the unit is the counit."""
    n = h.dim
    table = [[tuple(h.comult[i * n + j, k] for k in range(n))
              for j in range(n)] for i in range(n)]
    return Algebra(h.ctx, [lab + "*" for lab in h.labels], h.counit, table)


def coradical_zero(h: Hopf) -> Subspace:
    """The coradical (the sum of all simple subcoalgebras), computed as the
    annihilator of the radical of the dual algebra.

    Over a characteristic-zero field the radical of the trace form is the
    Jacobson radical, so this is exact.  The result is the canonical seed
    for :func:`coradical_filtration`.
    """
    rad = trace_radical(dual_algebra(h))
    if rad.dim == 0:
        return Subspace.full(h.ctx, h.dim)
    sols = kernel(Mat(h.ctx, [list(f) for f in rad.basis()]))
    return Subspace.from_vectors(h.ctx, h.dim, sols)


def rebase_hopf(h: Hopf, ctx: FieldContext) -> Hopf:
    """The same Hopf algebra with every structure constant coerced into ctx.

    The target context must contain the original one (larger cyclotomic
    order, or an extra adjoined square root); coercion failures propagate
    from the scalar layer.
    """
    unit = [c.coerce(ctx) for c in h.unit]
    table = [[[c.coerce(ctx) for c in cell] for cell in row] for row in h.table]
    comult = Mat(ctx, h.comult.rows)
    counit = [c.coerce(ctx) for c in h.counit]
    antipode = Mat(ctx, h.antipode.rows)
    return Hopf(ctx, h.labels, unit, table, comult, counit, antipode)
