"""Comodules and comodule algebras over a Hopf algebra, with exact verdicts.

A left coaction on V is stored as a ``(dim_H * dim_V) x dim_V`` matrix: the
column for basis vector ``j`` holds the coordinates of its coaction image in
H (x) V, with the Hopf leg on the coarse index.  All axioms are checked
sparsely, basis column by basis column.

The module also hosts the decomposition machinery that is special to the
eight-dimensional Hopf algebra from :func:`~hopfexact.constructions.build_kp`:
splitting a comodule into its group-graded part and the 2-dimensional-corep
part, the involution tau exchanging the two legs of the latter, and the
further eigenvalue decomposition of comodule algebras under their grouplike
units.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .algebra import Algebra, check_algebra
from .errors import (
    BadWitness,
    DimensionMismatch,
    HopfExactError,
    MissingGrouplikeUnits,
    NotOverKp,
)
from .field import FieldContext, FieldElement, sqrt_in_context
from .hopf import Hopf, coradical_filtration, rebase_hopf
from .linalg import (
    Mat,
    Scalar,
    Subspace,
    Vec,
    basis_vector,
    complement_in,
    eigenspace,
    inverse,
    kernel,
    kron,
    rank,
    slice_left,
    solve,
    tensor_vec,
    vscale,
)


class Comodule:
    """A left H-comodule presented by its coaction matrix."""

    def __init__(self, hopf: Hopf, dim: int, coaction: Mat):
        if coaction.nrows != hopf.dim * dim or coaction.ncols != dim:
            raise DimensionMismatch(
                f"coaction must be {hopf.dim * dim}x{dim}, got "
                f"{coaction.nrows}x{coaction.ncols}")
        if coaction.ctx != hopf.ctx:
            raise DimensionMismatch("coaction and Hopf algebra contexts differ")
        self.hopf = hopf
        self.dim = dim
        self.coaction = coaction

    @property
    def ctx(self) -> FieldContext:
        return self.hopf.ctx

    def __repr__(self):
        return f"Comodule(dim={self.dim} over Hopf dim={self.hopf.dim})"


class ComoduleAlgebra(Algebra):
    """An algebra in the category of left H-comodules."""

    def __init__(self, hopf: Hopf, labels, unit, table, coaction: Mat):
        super().__init__(hopf.ctx, labels, unit, table)
        if coaction.nrows != hopf.dim * self.dim or coaction.ncols != self.dim:
            raise DimensionMismatch(
                f"coaction must be {hopf.dim * self.dim}x{self.dim}, got "
                f"{coaction.nrows}x{coaction.ncols}")
        self.hopf = hopf
        self.coaction = coaction

    def __repr__(self):
        return (f"ComoduleAlgebra(dim={self.dim}, labels={list(self.labels)}, "
                f"over Hopf dim={self.hopf.dim})")


ComoduleLike = Union[Comodule, ComoduleAlgebra]


def coaction_slice(c: ComoduleLike, h_index: int) -> Mat:
    """The operator (h-th coordinate functional (x) id) o coaction on V."""
    return slice_left(c.coaction, c.hopf.dim, c.dim, h_index)


def check_comodule(c: ComoduleLike) -> list[str]:
    problems = []
    h = c.hopf
    nh, nv = h.dim, c.dim
    ctx = h.ctx
    coassoc_ok = True
    counit_ok = True
    for j in range(nv):
        col = c.coaction.col(j)
        lhs = {}
        rhs = {}
        eps_applied = [ctx.zero()] * nv
        for idx, coef in enumerate(col):
            if coef.is_zero():
                continue
            a, k = divmod(idx, nv)
            for idx2, c2 in enumerate(h.comult.col(a)):
                if not c2.is_zero():
                    key = idx2 * nv + k
                    lhs[key] = lhs.get(key, ctx.zero()) + coef * c2
            for idx2, c2 in enumerate(c.coaction.col(k)):
                if not c2.is_zero():
                    b, m = divmod(idx2, nv)
                    key = (a * nh + b) * nv + m
                    rhs[key] = rhs.get(key, ctx.zero()) + coef * c2
            eps_applied[k] = eps_applied[k] + coef * h.counit[a]
        keys = set(lhs) | set(rhs)
        if any(lhs.get(k, ctx.zero()) != rhs.get(k, ctx.zero()) for k in keys):
            coassoc_ok = False
        if tuple(eps_applied) != basis_vector(ctx, nv, j):
            counit_ok = False
    if not coassoc_ok:
        problems.append("coaction is not coassociative")
    if not counit_ok:
        problems.append("coaction fails the counit law")
    return problems


def mixed_tensor_product(h: Algebra, a: Algebra, u: Sequence[FieldElement],
                         v: Sequence[FieldElement]) -> Vec:
    """Product of two elements of H (x) A (coarse index on the H leg)."""
    nh, na = h.dim, a.dim
    ctx = h.ctx
    out = [ctx.zero()] * (nh * na)
    for idx1, c1 in enumerate(u):
        if c1.is_zero():
            continue
        h1, a1 = divmod(idx1, na)
        for idx2, c2 in enumerate(v):
            if c2.is_zero():
                continue
            h2, a2 = divmod(idx2, na)
            c = c1 * c2
            left = h.table[h1][h2]
            right = a.table[a1][a2]
            for p, lp in enumerate(left):
                if lp.is_zero():
                    continue
                clp = c * lp
                for q, rq in enumerate(right):
                    if not rq.is_zero():
                        out[p * na + q] = out[p * na + q] + clp * rq
    return tuple(out)


def check_comodule_algebra(a: ComoduleAlgebra) -> list[str]:
    problems = check_algebra(a) + check_comodule(a)
    mult_ok = True
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = a.coaction.apply(a.table[i][j])
            rhs = mixed_tensor_product(a.hopf, a, a.coaction.col(i),
                                       a.coaction.col(j))
            if lhs != rhs:
                mult_ok = False
    if not mult_ok:
        problems.append("coaction is not an algebra morphism")
    if a.coaction.apply(a.unit) != tensor_vec(a.hopf.unit, a.unit):
        problems.append("coaction does not send the unit to 1 (x) 1")
    return problems


# -- invariants and isotypic parts -------------------------------------------


def isotypic_part(c: ComoduleLike, g: Sequence[FieldElement]) -> Subspace:
    """The subspace {v : coaction(v) = g (x) v} for a fixed element g of H."""
    g_col = Mat.from_columns(c.ctx, [g])
    shifted = c.coaction - kron(g_col, Mat.identity(c.ctx, c.dim))
    return Subspace.from_vectors(c.ctx, c.dim, kernel(shifted))


def coinvariants(c: ComoduleLike) -> Subspace:
    """Vectors on which the coaction is trivial."""
    return isotypic_part(c, c.hopf.unit)


def graded_component_span(c: ComoduleLike, h_subspace: Subspace) -> Subspace:
    """The preimage of (subspace of H) (x) V under the coaction."""
    nh, nv = c.hopf.dim, c.dim
    gens = []
    for hv in h_subspace.basis():
        for j in range(nv):
            gens.append(tensor_vec(hv, basis_vector(c.ctx, nv, j)))
    target = Subspace.from_vectors(c.ctx, nh * nv, gens)
    return target.preimage_under(c.coaction)


# -- decomposition over the eight-dimensional Hopf algebra --------------------


@dataclass
class KpParts:
    """Comodule split over the 8-dimensional Hopf algebra: the group-graded
    part, the 2-corep part with its two canonical legs, and the exchange
    involution tau (given as an operator on the whole comodule that is zero
    on the group-graded part)."""
    group_part: Subspace
    two_part: Subspace
    v_leg: Subspace
    w_leg: Subspace
    tau: Mat


def _require_over_kp(c: ComoduleLike) -> Hopf:
    from .constructions import build_kp
    h = c.hopf
    reference = build_kp(h.ctx)
    same = (h.dim == reference.dim and h.table == reference.table
            and h.comult == reference.comult and h.counit == reference.counit
            and h.antipode == reference.antipode)
    if not same:
        raise NotOverKp(
            "this decomposition needs the 8-dimensional Hopf algebra with its "
            "standard basis order")
    return h


def kp_decompose(c: ComoduleLike) -> KpParts:
    h = _require_over_kp(c)
    ctx = c.ctx
    n = c.dim
    group_span = Subspace.from_vectors(ctx, 8,
                                       [basis_vector(ctx, 8, j) for j in range(4)])
    z_span = Subspace.from_vectors(ctx, 8,
                                   [basis_vector(ctx, 8, 4 + j) for j in range(4)])
    group_part = graded_component_span(c, group_span)
    two_part = graded_component_span(c, z_span)
    if group_part.dim + two_part.dim != n:
        raise HopfExactError(
            "comodule does not split into group-graded and 2-corep parts")
    iz, izx, izy, izxy = (h.label_index(lab) for lab in ("z", "zx", "zy", "zxy"))
    v_leg = two_part.intersect(
        Subspace.from_vectors(ctx, n, kernel(coaction_slice(c, izy))))
    w_leg = two_part.intersect(
        Subspace.from_vectors(ctx, n, kernel(coaction_slice(c, iz))))
    if v_leg.dim + w_leg.dim != two_part.dim:
        raise HopfExactError("the two legs of the 2-corep part do not split it")
    tau_on_v = coaction_slice(c, iz) - coaction_slice(c, izx)
    tau_on_w = coaction_slice(c, izy) - coaction_slice(c, izxy)
    columns_in = (list(v_leg.basis()) + list(w_leg.basis())
                  + list(group_part.basis()))
    columns_out = ([tau_on_v.apply(v) for v in v_leg.basis()]
                   + [tau_on_w.apply(w) for w in w_leg.basis()]
                   + [tuple(ctx.zero() for _ in range(n))
                      for _ in group_part.basis()])
    base = Mat.from_columns(ctx, columns_in)
    tau = Mat.from_columns(ctx, columns_out) @ inverse(base)
    return KpParts(group_part, two_part, v_leg, w_leg, tau)


@dataclass
class MuParts:
    """Eigen-decomposition of the 2-corep legs of a comodule algebra under
    right multiplication by the x-unit and left multiplication by the y-unit.
    Keys are (right-x eigenvalue, left-y eigenvalue) as integers +-1."""
    x_unit: Vec
    y_unit: Vec
    v_parts: dict[tuple[int, int], Subspace]
    w_parts: dict[tuple[int, int], Subspace]


def _normalized_grouplike_unit(a: ComoduleAlgebra, label: str) -> Vec:
    g = a.hopf.basis_element(label)
    part = isotypic_part(a, g)
    if part.dim != 1:
        raise MissingGrouplikeUnits(
            f"the {label}-graded component has dimension {part.dim}, need 1")
    u = part.basis()[0]
    square = a.multiply(u, u)
    coeff = None
    for c, unit_c in zip(square, a.unit):
        if unit_c.is_zero():
            if not c.is_zero():
                raise MissingGrouplikeUnits(
                    f"the square of the {label}-graded generator is not scalar")
        else:
            coeff = c / unit_c
    if coeff is None or coeff.is_zero():
        raise MissingGrouplikeUnits(
            f"the {label}-graded generator squares to zero")
    if vscale(coeff, a.unit) != square:
        raise MissingGrouplikeUnits(
            f"the square of the {label}-graded generator is not scalar")
    root = sqrt_in_context(coeff)
    return vscale(root.inverse(), u)


def mu_decompose(a: ComoduleAlgebra) -> MuParts:
    parts = kp_decompose(a)
    ex = _normalized_grouplike_unit(a, "x")
    ey = _normalized_grouplike_unit(a, "y")
    right_x = a.right_mult(ex)
    left_y = a.left_mult(ey)
    ctx = a.ctx
    one, minus = ctx.one(), ctx.scalar(-1)
    v_parts = {}
    w_parts = {}
    for s_r, ev_r in ((1, one), (-1, minus)):
        for s_l, ev_l in ((1, one), (-1, minus)):
            cell = eigenspace(right_x, ev_r).intersect(eigenspace(left_y, ev_l))
            v_parts[(s_r, s_l)] = parts.v_leg.intersect(cell)
            w_parts[(s_r, s_l)] = parts.w_leg.intersect(cell)
    if sum(s.dim for s in v_parts.values()) != parts.v_leg.dim:
        raise HopfExactError("the 2-corep leg is not split by the unit actions")
    return MuParts(ex, ey, v_parts, w_parts)


# -- filtration-induced grading ------------------------------------------------


def loewy_filtration(c: ComoduleLike, h_coradical_zero: Subspace) -> list[Subspace]:
    """Preimages of the coradical filtration: A_k = coaction^{-1}(H_k (x) A)."""
    chain = coradical_filtration(c.hopf, h_coradical_zero)
    out = [graded_component_span(c, hk) for hk in chain]
    for lower, upper in zip(out, out[1:]):
        if not upper.contains_subspace(lower):
            raise HopfExactError("filtration preimages fail to nest")
    return out


def associated_graded(filtration: Sequence[Subspace]) -> list[list[Vec]]:
    """Echelon-pivot complements between consecutive filtration steps."""
    if not filtration:
        return []
    layers = [list(filtration[0].basis())]
    for lower, upper in zip(filtration, filtration[1:]):
        layers.append(complement_in(lower, upper))
    return layers


def _subalgebra_on_basis(a: Algebra, basis: Sequence[Vec],
                         labels: Optional[Sequence[str]] = None
                         ) -> Optional[tuple[Algebra, Mat]]:
    """Express a multiplicatively closed subspace as an algebra of its own.

    Returns (algebra, coordinate matrix)  with  coords @ (vector in A) giving
    the coordinates over ``basis``, or None when the subspace is not closed
    under multiplication or misses the unit.
    """
    span = Subspace.from_vectors(a.ctx, a.dim, basis)
    if not span.contains(a.unit):
        return None
    body = Mat.from_columns(a.ctx, basis)
    d = len(basis)
    unit_coords = solve(body, a.unit)
    table = []
    for u in basis:
        row = []
        for v in basis:
            prod = a.multiply(u, v)
            if not span.contains(prod):
                return None
            row.append(solve(body, prod))
        table.append(row)
    labels = labels or [f"b{i}" for i in range(d)]
    sub = Algebra(a.ctx, labels, unit_coords, table)
    # coordinate map: solve basis expansion for each ambient basis vector of
    # the span; outside the span it is only used after projection
    coords_cols = []
    for j in range(a.dim):
        ej = basis_vector(a.ctx, a.dim, j)
        c = solve(body, ej)
        coords_cols.append(c if c is not None else tuple([a.ctx.zero()] * d))
    coords = Mat.from_columns(a.ctx, coords_cols)
    return sub, coords


# -- the two canonical comparison maps ----------------------------------------


@dataclass
class KappaReport:
    """The map  (id (x) degree-zero projection) o coaction  from the algebra
    to H (x) A(0), with its verdicts."""
    matrix: Mat
    injective: bool
    algebra_morphism: Optional[bool]
    comodule_morphism: bool
    degree_zero_closed: bool


def degree_zero_projection(c: ComoduleLike, filtration: Sequence[Subspace]
                           ) -> tuple[Mat, list[Vec]]:
    """Projection onto the first filtration layer along the echelon
    complements of the higher layers; returns (projection rows, layer basis)."""
    layers = associated_graded(filtration)
    zero_layer = layers[0]
    ordered = [v for layer in layers for v in layer]
    base = Mat.from_columns(c.ctx, ordered)
    coords = inverse(base)
    d0 = len(zero_layer)
    proj = Mat(c.ctx, [coords.rows[i] for i in range(d0)])
    return proj, zero_layer


def kappa_map(a: ComoduleAlgebra, h_coradical_zero: Subspace) -> KappaReport:
    filtration = loewy_filtration(a, h_coradical_zero)
    proj, zero_layer = degree_zero_projection(a, filtration)
    nh = a.hopf.dim
    kappa = kron(Mat.identity(a.ctx, nh), proj) @ a.coaction
    injective = rank(kappa) == a.dim
    d0 = len(zero_layer)
    comodule_ok = (kron(a.hopf.comult, Mat.identity(a.ctx, d0)) @ kappa
                   == kron(Mat.identity(a.ctx, nh), kappa) @ a.coaction)
    packed = _subalgebra_on_basis(a, zero_layer)
    if packed is None:
        algebra_ok: Optional[bool] = None
        closed = False
    else:
        sub, _ = packed
        closed = True
        algebra_ok = True
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = kappa.apply(a.table[i][j])
                rhs = mixed_tensor_product(a.hopf, sub, kappa.col(i), kappa.col(j))
                if lhs != rhs:
                    algebra_ok = False
        if kappa.apply(a.unit) != tensor_vec(a.hopf.unit, sub.unit):
            algebra_ok = False
    return KappaReport(kappa, injective, algebra_ok, comodule_ok, closed)


@dataclass
class PhiReport:
    """The map (id (x) character o degree-zero projection) o coaction from the
    algebra into H, with its verdicts."""
    matrix: Mat
    injective: bool
    algebra_morphism: bool
    image: Subspace
    image_is_left_coideal: bool
    image_is_subalgebra: bool


def phi_embed(a: ComoduleAlgebra, h_coradical_zero: Subspace,
              witness: Sequence[Scalar]) -> PhiReport:
    """Collapse the degree-zero leg with a character and land in H.

    ``witness`` gives the claimed character of the degree-zero subalgebra in
    the coordinates of its canonical (echelon) basis; it is rejected with
    :class:`BadWitness` unless it is a unital algebra character.
    """
    filtration = loewy_filtration(a, h_coradical_zero)
    proj, zero_layer = degree_zero_projection(a, filtration)
    packed = _subalgebra_on_basis(a, zero_layer)
    if packed is None:
        raise BadWitness("the degree-zero layer is not a unital subalgebra")
    sub, _ = packed
    ctx = a.ctx
    w = [c if isinstance(c, FieldElement) else ctx.scalar(c) for c in witness]
    if len(w) != sub.dim:
        raise BadWitness(
            f"witness has {len(w)} coordinates, degree-zero layer has {sub.dim}")

    def char(vec_in_sub: Sequence[FieldElement]) -> FieldElement:
        acc = ctx.zero()
        for c, x in zip(w, vec_in_sub):
            acc = acc + c * x
        return acc

    if char(sub.unit) != ctx.one():
        raise BadWitness("witness does not send the unit to 1")
    for i in range(sub.dim):
        for j in range(sub.dim):
            if char(sub.table[i][j]) != w[i] * w[j]:
                raise BadWitness("witness is not multiplicative on the "
                                 "degree-zero layer")
    # functional on all of A: character after degree-zero projection
    functional = Mat(ctx, [w]) @ proj          # 1 x dim A
    nh, na = a.hopf.dim, a.dim
    rows = []
    for h_idx in range(nh):
        row = []
        for j in range(na):
            acc = ctx.zero()
            for k in range(na):
                coef = a.coaction[h_idx * na + k, j]
                if not coef.is_zero():
                    acc = acc + coef * functional[0, k]
            row.append(acc)
        rows.append(row)
    phi = Mat(ctx, rows)
    injective = rank(phi) == a.dim
    algebra_ok = (phi.apply(a.unit) == a.hopf.unit)
    if algebra_ok:
        for i in range(na):
            for j in range(na):
                if phi.apply(a.table[i][j]) != a.hopf.multiply(phi.col(i),
                                                               phi.col(j)):
                    algebra_ok = False
    image = Subspace.from_vectors(ctx, nh, [phi.col(j) for j in range(na)])
    coideal_ok = all(
        _in_tensor_right(a.hopf, image, a.hopf.comult.apply(v))
        for v in image.basis())
    subalg_ok = all(image.contains(a.hopf.multiply(u, v))
                    for u in image.basis() for v in image.basis())
    return PhiReport(phi, injective, algebra_ok, image, coideal_ok, subalg_ok)


def _in_tensor_right(h: Hopf, right_space: Subspace, vec_hh: Vec) -> bool:
    """Is a vector of H (x) H inside H (x) (subspace)?"""
    n = h.dim
    gens = []
    for j in range(n):
        ej = basis_vector(h.ctx, n, j)
        for s in right_space.basis():
            gens.append(tensor_vec(ej, s))
    return Subspace.from_vectors(h.ctx, n * n, gens).contains(vec_hh)


def coideal_generated(h: Hopf, seeds: Sequence[Vec],
                      multiplicative: bool = True) -> Subspace:
    """Smallest subspace containing the seeds and the unit that is closed
    under all left coproduct slices (so its coproduct lies in H (x) itself)
    and, by default, under multiplication."""
    from .linalg import RrefAccumulator
    n = h.dim
    ctx = h.ctx
    slices = [slice_left(h.comult, n, n, idx) for idx in range(n)]
    acc = RrefAccumulator(ctx, n)
    basis: list[Vec] = []
    queue: list[Vec] = [h.unit] + [tuple(s) for s in seeds]
    while queue:
        v = queue.pop()
        if acc.add(v):
            for sl in slices:
                queue.append(sl.apply(v))
            if multiplicative:
                for b in basis:
                    queue.append(h.multiply(v, b))
                    queue.append(h.multiply(b, v))
                queue.append(h.multiply(v, v))
            basis.append(v)
    return acc.subspace()


def comodule_algebra_from_subspace(h: Hopf, space: Subspace,
                                   labels: Optional[Sequence[str]] = None
                                   ) -> ComoduleAlgebra:
    """Realise a unital subalgebra of H that is also a right coideal as a
    comodule algebra in its own right, coacted on by the restricted coproduct.

    Raises :class:`HopfExactError` when the subspace misses the unit, is not
    closed under multiplication, or its coproduct leaves H (x) (subspace).
    """
    basis = space.basis()
    packed = _subalgebra_on_basis(h, basis, labels)
    if packed is None:
        raise HopfExactError(
            "subspace is not a unital subalgebra of the Hopf algebra")
    sub, _ = packed
    n, d = h.dim, len(basis)
    body = Mat.from_columns(h.ctx, basis)
    rows: list[list[FieldElement]] = [[h.ctx.zero()] * d for _ in range(n * d)]
    for j, v in enumerate(basis):
        dv = h.comult.apply(v)
        for a_idx in range(n):
            piece = tuple(dv[a_idx * n + k] for k in range(n))
            if all(c.is_zero() for c in piece):
                continue
            coords = solve(body, piece)
            if coords is None:
                raise HopfExactError(
                    "coproduct of the subspace leaves H (x) (subspace)")
            for k in range(d):
                rows[a_idx * d + k][j] = coords[k]
    return ComoduleAlgebra(h, sub.labels, sub.unit, sub.table,
                           Mat(h.ctx, rows))


def rebase_comodule_algebra(a: ComoduleAlgebra,
                            ctx: FieldContext) -> ComoduleAlgebra:
    """The same comodule algebra with every scalar coerced into ctx, the
    Hopf algebra included."""
    h = rebase_hopf(a.hopf, ctx)
    unit = [c.coerce(ctx) for c in a.unit]
    table = [[[c.coerce(ctx) for c in cell] for cell in row]
             for row in a.table]
    return ComoduleAlgebra(h, a.labels, unit, table, Mat(ctx, a.coaction.rows))
