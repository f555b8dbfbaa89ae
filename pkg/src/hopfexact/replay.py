"""Symbolic engine for extensions of grouplike bases by two-dimensional blocks.

Every comodule algebra studied in this package decomposes as a grouplike base
``A_K`` (one of six kinds) plus ``n_2`` copies of the two-dimensional simple
corepresentation, spanned by pairs ``v_i, w_i``.  This module builds the
*generic* such algebra: a multiplication table whose block products carry
indeterminate structure constants, with every coefficient pattern pre-solved
from colinearity of the standard block coaction.  Associativity then becomes
a system of polynomial constraints, and the classification arguments reduce
to exact linear eliminations over those constraints.

The three layers:

* :func:`generic_extension` / :func:`associativity_constraints` — build the
  symbolic table and harvest the constraint polynomials;
* :func:`forces_vanishing` — a certified linear elimination: decides whether
  the constraints force given structure constants to vanish and returns the
  expressing combination as a replayable certificate;
* :func:`replay_lemma` / :func:`classify_n2_le_1` — scripted eliminations for
  the named collapse arguments, and the exhaustive classification of exact
  extensions with at most one block.

Only linear reasoning is ever used: case splits over sign assignments and
fourth roots of unity keep everything linear, and a system that still needs
nonlinear reasoning raises :class:`~hopfexact.errors.NonlinearResidue` rather
than guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .comodule import ComoduleAlgebra, check_comodule_algebra
from .constructions import (PSI_STANDARD, build_kp,
                            build_regular_comodule_algebra, catalog)
from .errors import HopfExactError, InvalidKind, NonlinearResidue
from .exactness import check_exactness
from .field import FieldContext, FieldElement
from .linalg import Mat, basis_vector, tensor_vec, vadd, vscale, vsub
from .morita import colinear_iso_search
from .poly import MultiPoly, concrete_solutions

KINDS = ("trivial", "ga_x", "ga_y", "ga_xy", "ga_K", "kpsi")

_BASE_MASKS = {
    "trivial": (0,),
    "ga_x": (0, 1),
    "ga_y": (0, 2),
    "ga_xy": (0, 3),
    "ga_K": (0, 1, 2, 3),
    "kpsi": (0, 1, 2, 3),
}
_MASK_LABEL = {0: "1", 1: "ex", 2: "ey", 3: "exy"}
_MASK_GROUPLIKE = {0: "1", 1: "x", 2: "y", 3: "xy"}

# Grouplike-component signs of the four block products, solved once from
# colinearity of the block coaction: the (1, e_x, e_y, e_xy) coefficients of
# v_i*v_j are (alpha, beta, gamma, delta), and the three partner products
# carry the same scalars with these signs.
_COMPONENT_SIGNS = {
    ("v", "v"): (1, 1, 1, 1),
    ("v", "w"): (1, -1, 1, -1),
    ("w", "v"): (1, 1, -1, -1),
    ("w", "w"): (-1, 1, 1, -1),
}

_EXTRA_CONSTANT = {"trivial": None, "ga_x": "beta", "ga_y": "gamma",
                   "ga_xy": "delta"}

SymVec = tuple[MultiPoly, ...]


def _require_kind(kind: str) -> None:
    if kind not in KINDS:
        raise InvalidKind(f"unknown generic-extension kind {kind!r}; "
                          f"expected one of {KINDS}")


@dataclass(frozen=True)
class GenericExtension:
    """A generic block extension: symbolic table over a concrete base.

    ``table[i][j]`` is the coordinate vector of ``e_i * e_j`` with
    :class:`~hopfexact.poly.MultiPoly` entries.  ``unknowns`` lists the block
    structure constants, ``action_symbols`` the indeterminate entries of the
    base action on the blocks; everything else in the table is concrete.
    """

    kind: str
    n2: int
    signs: Optional[tuple[tuple[int, int], ...]]
    ctx: FieldContext
    labels: tuple[str, ...]
    base_dim: int
    table: tuple[tuple[SymVec, ...], ...]
    unknowns: tuple[str, ...]
    action_symbols: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def v_index(self, i: int) -> int:
        return self.base_dim + (i - 1)

    def w_index(self, i: int) -> int:
        return self.base_dim + self.n2 + (i - 1)

    def specialize(self, values: Mapping[str, Union[FieldElement, int,
                                                    Fraction]]
                   ) -> ComoduleAlgebra:
        """Substitute concrete values for every symbol and build the algebra."""
        return _specialize(self, values)

    def __repr__(self) -> str:
        return (f"GenericExtension(kind={self.kind!r}, n2={self.n2}, "
                f"signs={self.signs}, dim={self.dim})")


def _scalarize(ctx: FieldContext, values: Mapping) -> dict[str, FieldElement]:
    out = {}
    for name, val in values.items():
        out[name] = val if isinstance(val, FieldElement) else ctx.scalar(val)
    return out


def _specialize(self: GenericExtension, values: Mapping) -> ComoduleAlgebra:
    ctx = self.ctx
    assignment = _scalarize(ctx, values)
    dim = self.dim
    table = []
    for row in self.table:
        new_row = []
        for vec in row:
            coords = []
            for p in vec:
                c = p.substitute(assignment).as_constant()
                if c is None:
                    missing = sorted(p.variables() - set(assignment))
                    raise HopfExactError(
                        f"cannot specialize: unresolved symbols {missing}")
                coords.append(c)
            new_row.append(coords)
        table.append(new_row)
    h = build_kp(ctx)
    unit = basis_vector(ctx, dim, 0)
    cols = []
    masks = _BASE_MASKS[self.kind]
    for pos, mask in enumerate(masks):
        cols.append(tensor_vec(h.basis_element(_MASK_GROUPLIKE[mask]),
                               basis_vector(ctx, dim, pos)))
    half = ctx.scalar(Fraction(1, 2))
    hz = [h.basis_element(lab) for lab in ("z", "zx", "zy", "zxy")]
    block_cols: list[tuple[int, object]] = []
    for i in range(1, self.n2 + 1):
        v = basis_vector(ctx, dim, self.v_index(i))
        w = basis_vector(ctx, dim, self.w_index(i))
        col_v = vscale(half, vadd(tensor_vec(vadd(hz[0], hz[1]), v),
                                  tensor_vec(vsub(hz[0], hz[1]), w)))
        col_w = vscale(half, vadd(tensor_vec(vsub(hz[2], hz[3]), v),
                                  tensor_vec(vadd(hz[2], hz[3]), w)))
        block_cols.append((self.v_index(i), col_v))
        block_cols.append((self.w_index(i), col_w))
    all_cols = list(cols) + [None] * (2 * self.n2)
    for idx, col in block_cols:
        all_cols[idx] = col
    coaction = Mat.from_columns(ctx, all_cols)
    return ComoduleAlgebra(h, self.labels, unit, table, coaction)


def _base_coeff(kind: str, g: int, h: int) -> int:
    if kind != "kpsi" or g == 0 or h == 0:
        return 1
    return PSI_STANDARD[(g, h)]


def generic_extension(kind: str, n2: int,
                      signs: Optional[Sequence[tuple[int, int]]] = None,
                      ctx: Optional[FieldContext] = None) -> GenericExtension:
    """The generic extension of the given base kind by ``n2`` blocks.

    ``signs`` assigns each block index i the pair ``(a_i, b_i)`` of
    eigenvalues of right multiplication by e_x and left multiplication by
    e_y on v_i; it is required exactly for the four-dimensional base kinds
    (``ga_K``, ``kpsi``) with ``n2 > 0`` and must be omitted otherwise.
    """
    _require_kind(kind)
    ctx = ctx or FieldContext(4)
    if not isinstance(n2, int) or n2 < 0:
        raise HopfExactError(f"n2 must be a non-negative integer, got {n2!r}")
    if n2 > 9:
        raise HopfExactError("block counts above 9 are not supported")
    needs_signs = kind in ("ga_K", "kpsi") and n2 > 0
    if needs_signs:
        if signs is None:
            raise HopfExactError(
                f"kind {kind!r} needs a sign pair (a_i, b_i) per block")
        signs = tuple((int(a), int(b)) for a, b in signs)
        if len(signs) != n2 or any(a * a != 1 or b * b != 1
                                   for a, b in signs):
            raise HopfExactError(
                f"signs must be {n2} pairs from {{+1, -1}}, got {signs!r}")
    elif signs is not None:
        raise HopfExactError(
            f"kind {kind!r} takes no sign assignment")

    masks = _BASE_MASKS[kind]
    base_dim = len(masks)
    dim = base_dim + 2 * n2
    labels = tuple(_MASK_LABEL[m] for m in masks) \
        + tuple(f"v{i}" for i in range(1, n2 + 1)) \
        + tuple(f"w{i}" for i in range(1, n2 + 1))

    zero = MultiPoly(ctx, {})
    one = MultiPoly.const(ctx, 1)

    def const(x) -> MultiPoly:
        return MultiPoly.const(ctx, x)

    def var(name: str) -> MultiPoly:
        return MultiPoly.var(ctx, name)

    def unit_vec(idx: int, coeff: MultiPoly) -> list[MultiPoly]:
        vec = [zero] * dim
        vec[idx] = coeff
        return vec

    table = [[None] * dim for _ in range(dim)]

    # base x base: group law, twisted for kpsi
    pos_of = {m: p for p, m in enumerate(masks)}
    for p, gm in enumerate(masks):
        for q, hm in enumerate(masks):
            coeff = _base_coeff(kind, gm, hm)
            table[p][q] = unit_vec(pos_of[gm ^ hm], const(coeff))

    unknowns: list[str] = []
    action_symbols: list[str] = []
    rng = range(1, n2 + 1)
    vi = lambda i: base_dim + (i - 1)
    wi = lambda i: base_dim + n2 + (i - 1)

    # unit acts as identity on the blocks
    for i in rng:
        for idx in (vi(i), wi(i)):
            table[0][idx] = unit_vec(idx, one)
            table[idx][0] = unit_vec(idx, one)

    def matrix_symbols(prefix: str) -> dict[tuple[int, int], MultiPoly]:
        out = {}
        for i in rng:
            for m in rng:
                name = f"{prefix}_{i}{m}"
                action_symbols.append(name)
                out[(i, m)] = var(name)
        return out

    def span(coeffs: dict[int, MultiPoly], which: str) -> list[MultiPoly]:
        vec = [zero] * dim
        at = vi if which == "v" else wi
        for m, c in coeffs.items():
            vec[at(m)] = c
        return vec

    # base action on the blocks.  The sign patterns (which of the four maps
    # V->V, V->W acquire a minus on the w-side) are forced by colinearity of
    # the block coaction, exactly like the component signs of the products.
    if kind in ("ga_K", "kpsi"):
        lx = matrix_symbols("lx")
        ry = matrix_symbols("ry")
        a = {i: signs[i - 1][0] for i in rng}
        b = {i: signs[i - 1][1] for i in rng}
        px, py, pxy = pos_of[1], pos_of[2], pos_of[3]
        for i in rng:
            table[px][vi(i)] = span({m: lx[(i, m)] for m in rng}, "w")
            table[px][wi(i)] = span({m: lx[(i, m)] for m in rng}, "v")
            table[vi(i)][px] = unit_vec(vi(i), const(a[i]))
            table[wi(i)][px] = unit_vec(wi(i), const(-a[i]))
            table[py][vi(i)] = unit_vec(vi(i), const(b[i]))
            table[py][wi(i)] = unit_vec(wi(i), const(-b[i]))
            table[vi(i)][py] = span({m: ry[(i, m)] for m in rng}, "w")
            table[wi(i)][py] = span({m: ry[(i, m)] for m in rng}, "v")
            # e_xy rows via e_x(e_y .) and (. e_x)e_y; in the twisted base
            # e_x e_y is still e_xy, so the same composites apply.
            table[pxy][vi(i)] = span(
                {m: const(b[i]) * lx[(i, m)] for m in rng}, "w")
            table[pxy][wi(i)] = span(
                {m: const(-b[i]) * lx[(i, m)] for m in rng}, "v")
            table[vi(i)][pxy] = span(
                {m: const(a[i]) * ry[(i, m)] for m in rng}, "w")
            table[wi(i)][pxy] = span(
                {m: const(-a[i]) * ry[(i, m)] for m in rng}, "v")
    elif kind == "ga_x":
        lx = matrix_symbols("lx")
        rx = matrix_symbols("rx")
        px = pos_of[1]
        for i in rng:
            table[px][vi(i)] = span({m: lx[(i, m)] for m in rng}, "w")
            table[px][wi(i)] = span({m: lx[(i, m)] for m in rng}, "v")
            table[vi(i)][px] = span({m: rx[(i, m)] for m in rng}, "v")
            table[wi(i)][px] = span({m: -rx[(i, m)] for m in rng}, "w")
    elif kind == "ga_y":
        ly = matrix_symbols("ly")
        ry = matrix_symbols("ry")
        py = pos_of[2]
        for i in rng:
            table[py][vi(i)] = span({m: ly[(i, m)] for m in rng}, "v")
            table[py][wi(i)] = span({m: -ly[(i, m)] for m in rng}, "w")
            table[vi(i)][py] = span({m: ry[(i, m)] for m in rng}, "w")
            table[wi(i)][py] = span({m: ry[(i, m)] for m in rng}, "v")
    elif kind == "ga_xy":
        lxy = matrix_symbols("lxy")
        rxy = matrix_symbols("rxy")
        pxy = pos_of[3]
        for i in rng:
            table[pxy][vi(i)] = span({m: lxy[(i, m)] for m in rng}, "w")
            table[pxy][wi(i)] = span({m: -lxy[(i, m)] for m in rng}, "v")
            table[vi(i)][pxy] = span({m: rxy[(i, m)] for m in rng}, "w")
            table[wi(i)][pxy] = span({m: -rxy[(i, m)] for m in rng}, "v")

    # block x block products: four grouplike components per pair (i, j),
    # shared across the v/w combinations up to the fixed component signs.
    extra = _EXTRA_CONSTANT.get(kind)
    for i in rng:
        for j in rng:
            alpha = var(f"alpha_{i}{j}")
            unknowns.append(f"alpha_{i}{j}")
            comps = [zero, zero, zero, zero]
            comps[0] = alpha
            if kind in ("ga_K", "kpsi"):
                aj = const(signs[j - 1][0])
                bi = const(signs[i - 1][1])
                eps = const(-1) if kind == "kpsi" else one
                comps[1] = aj * alpha
                comps[2] = bi * alpha
                comps[3] = eps * aj * bi * alpha
            elif extra is not None:
                name = f"{extra}_{i}{j}"
                unknowns.append(name)
                slot = {"beta": 1, "gamma": 2, "delta": 3}[extra]
                comps[slot] = var(name)
            for (s, si), (t, tj) in itertools.product(
                    (("v", vi(i)), ("w", wi(i))),
                    (("v", vi(j)), ("w", wi(j)))):
                sgn = _COMPONENT_SIGNS[(s, t)]
                vec = [zero] * dim
                for mask in masks:
                    if comps[mask].is_zero():
                        continue
                    vec[pos_of[mask]] = const(sgn[mask]) * comps[mask]
                table[si][tj] = vec

    frozen = tuple(tuple(tuple(vec) for vec in row) for row in table)
    return GenericExtension(kind=kind, n2=n2,
                            signs=signs if needs_signs else None,
                            ctx=ctx, labels=labels, base_dim=base_dim,
                            table=frozen, unknowns=tuple(unknowns),
                            action_symbols=tuple(action_symbols))


def _normalize(poly: MultiPoly) -> MultiPoly:
    lead = min(poly.terms)
    c = poly.terms[lead]
    if c == poly.ctx.one():
        return poly
    return poly * c.inverse()


def associativity_constraints(g: GenericExtension) -> list[MultiPoly]:
    """Constraint polynomials: both association orders of every basis triple.

    Each returned polynomial is required to vanish; the list is deduplicated
    up to scalar multiples and ordered by first occurrence.
    """
    dim = g.dim
    table = g.table
    zero = MultiPoly(g.ctx, {})
    out: list[MultiPoly] = []
    seen: set = set()
    supports = [[tuple(m for m, p in enumerate(vec) if p.terms)
                 for vec in row] for row in table]
    for i in range(dim):
        for j in range(dim):
            tij = table[i][j]
            sup_ij = supports[i][j]
            for k in range(dim):
                acc = [zero] * dim
                for m in sup_ij:
                    c = tij[m]
                    row = table[m][k]
                    for t in supports[m][k]:
                        acc[t] = acc[t] + c * row[t]
                tjk = table[j][k]
                for m in supports[j][k]:
                    c = tjk[m]
                    row = table[i][m]
                    for t in supports[i][m]:
                        acc[t] = acc[t] - c * row[t]
                for poly in acc:
                    if not poly.terms:
                        continue
                    norm = _normalize(poly)
                    key = tuple(sorted(norm.terms.items()))
                    if key not in seen:
                        seen.add(key)
                        out.append(norm)
    return out


# -- certified linear elimination ----------------------------------------------


Certificate = dict[int, MultiPoly]


class _Row:
    __slots__ = ("poly", "prov")

    def __init__(self, poly: MultiPoly, prov: Certificate):
        self.poly = poly
        self.prov = prov


def _prov_add(a: Certificate, factor: MultiPoly, b: Certificate
              ) -> Certificate:
    out = dict(a)
    for idx, mult in b.items():
        bumped = factor * mult
        if idx in out:
            total = out[idx] + bumped
            if total.is_zero():
                del out[idx]
            else:
                out[idx] = total
        elif not bumped.is_zero():
            out[idx] = bumped
    return out


def _prov_scale(a: Certificate, factor: MultiPoly) -> Certificate:
    return {idx: factor * mult for idx, mult in a.items()}


def _mono_degree(mono) -> int:
    return sum(e for _, e in mono)


def _linear_quotient(poly: MultiPoly, name: str, value: FieldElement
                     ) -> MultiPoly:
    """U with poly == poly.substitute({name: value}) + U * (name - value)."""
    ctx = poly.ctx
    out = MultiPoly(ctx, {})
    name_var = MultiPoly.var(ctx, name)
    for mono, c in poly.terms.items():
        exp = dict(mono).get(name, 0)
        if exp == 0:
            continue
        rest = tuple((v, e) for v, e in mono if v != name)
        geom = MultiPoly(ctx, {})
        for t in range(exp):
            geom = geom + name_var ** t * (value ** (exp - 1 - t))
        out = out + MultiPoly(ctx, {rest: c}) * geom
    return out


@dataclass
class Elimination:
    """Outcome of the iterated linear elimination with provenance."""

    pins: dict[str, FieldElement]
    certificates: dict[str, Certificate]
    residual: list[MultiPoly]
    contradiction: Optional[Certificate]
    contradiction_value: Optional[FieldElement]


def eliminate(constraints: Sequence[MultiPoly]) -> Elimination:
    """Repeatedly row-reduce and substitute pinned variables.

    Works over the monomial basis: a pass of exact Gaussian elimination, then
    every row of the shape ``c*x + d == 0`` pins the variable ``x``, pinned
    values are substituted everywhere (with the provenance updated through
    the substitution), and the loop repeats until stable.  Every pin carries
    a certificate: multipliers m_i with  sum m_i * constraints[i] == x - value.
    """
    if not constraints:
        return Elimination({}, {}, [], None, None)
    ctx = constraints[0].ctx
    one = MultiPoly.const(ctx, 1)
    rows = [_Row(p, {idx: one}) for idx, p in enumerate(constraints)
            if not p.is_zero()]
    pins: dict[str, FieldElement] = {}
    certs: dict[str, Certificate] = {}
    max_rounds = len({v for p in constraints for v in p.variables()}) + 2
    for _ in range(max_rounds):
        # one full reduction pass
        cols = sorted({m for r in rows for m in r.poly.terms if m != ()},
                      key=lambda m: (-_mono_degree(m), m))
        free = list(rows)
        for col in cols:
            pick = None
            for r in free:
                if col in r.poly.terms:
                    pick = r
                    break
            if pick is None:
                continue
            free.remove(pick)
            inv = MultiPoly.const(ctx, pick.poly.terms[col].inverse())
            pick.poly = pick.poly * inv
            pick.prov = _prov_scale(pick.prov, inv)
            for r in rows:
                if r is pick or col not in r.poly.terms:
                    continue
                c = MultiPoly.const(ctx, -r.poly.terms[col])
                r.poly = r.poly + c * pick.poly
                r.prov = _prov_add(r.prov, c, pick.prov)
        rows = [r for r in rows if not r.poly.is_zero()]
        # inconsistency and fresh pins
        new_pins: list[tuple[str, FieldElement, Certificate]] = []
        for r in rows:
            monos = list(r.poly.terms)
            if monos == [()]:
                return Elimination(pins, certs, [r.poly for r in rows],
                                   r.prov, r.poly.terms[()])
            nonconst = [m for m in monos if m != ()]
            if len(nonconst) != 1:
                continue
            mono = nonconst[0]
            if len(mono) != 1 or mono[0][1] != 1:
                continue
            name = mono[0][0]
            if name in pins or any(name == n for n, _, _ in new_pins):
                continue
            c1 = r.poly.terms[mono]
            c0 = r.poly.terms.get((), ctx.zero())
            value = -c0 / c1
            inv = MultiPoly.const(ctx, c1.inverse())
            new_pins.append((name, value, _prov_scale(r.prov, inv)))
        if not new_pins:
            return Elimination(pins, certs, [r.poly for r in rows],
                               None, None)
        for name, value, prov in new_pins:
            pins[name] = value
            certs[name] = prov
            next_rows = []
            for r in rows:
                if name not in r.poly.variables():
                    next_rows.append(r)
                    continue
                quot = _linear_quotient(r.poly, name, value)
                r.poly = r.poly.substitute({name: value})
                r.prov = _prov_add(r.prov, -quot, prov)
                if not r.poly.is_zero():
                    next_rows.append(r)
            rows = next_rows
    raise HopfExactError("elimination did not stabilize")


def verify_combination(constraints: Sequence[MultiPoly], cert: Certificate,
                       expected: MultiPoly) -> bool:
    """Check that the certified combination of constraints equals ``expected``."""
    if not cert:
        return False
    ctx = expected.ctx
    total = MultiPoly(ctx, {})
    for idx, mult in cert.items():
        total = total + mult * constraints[idx]
    return total == expected


@dataclass(frozen=True)
class VanishingReport:
    """Answer of :func:`forces_vanishing`, with replayable certificates.

    When ``forced`` is true, ``certificates[t]`` maps constraint indices to
    polynomial multipliers whose weighted sum equals the bare variable ``t``
    — substituting the constraints back in therefore yields zero.  A
    ``vacuous`` report means the constraint system itself is contradictory
    (no algebra exists at all), which forces everything.
    """

    forced: bool
    certificates: dict[str, Certificate]
    pins: dict[str, FieldElement]
    undecided: tuple[str, ...]
    nonzero: tuple[str, ...]
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.forced

    def verify(self, constraints: Sequence[MultiPoly]) -> bool:
        """Recheck every certificate against the constraint list."""
        if not self.forced:
            return False
        for target, cert in self.certificates.items():
            ctx = constraints[0].ctx
            if not verify_combination(constraints, cert,
                                      MultiPoly.var(ctx, target)):
                return False
        return True


def forces_vanishing(constraints: Sequence[MultiPoly],
                     targets: Sequence[str]) -> VanishingReport:
    """Decide whether the constraints force every target variable to zero.

    True exactly when each target lies in the span of the constraints (after
    substituting the variables the span already pins); the certificates are
    the expressing combinations.  A target pinned to a nonzero value yields
    False.  Undecided targets entangled with nonlinear residue raise
    :class:`~hopfexact.errors.NonlinearResidue` — never silently ignored.
    """
    targets = list(targets)
    elim = eliminate(list(constraints))
    if elim.contradiction is not None:
        ctx = constraints[0].ctx
        scale = elim.contradiction_value.inverse()
        certs = {}
        for t in targets:
            factor = MultiPoly.var(ctx, t) * MultiPoly.const(ctx, scale)
            certs[t] = _prov_scale(elim.contradiction, factor)
        return VanishingReport(forced=True, certificates=certs,
                               pins=dict(elim.pins), undecided=(),
                               nonzero=(), vacuous=True)
    nonzero = tuple(t for t in targets
                    if t in elim.pins and not elim.pins[t].is_zero())
    if nonzero:
        return VanishingReport(forced=False, certificates={},
                               pins=dict(elim.pins), undecided=(),
                               nonzero=nonzero)
    undecided = tuple(t for t in targets if t not in elim.pins)
    if not undecided:
        certs = {t: elim.certificates[t] for t in targets}
        return VanishingReport(forced=True, certificates=certs,
                               pins=dict(elim.pins), undecided=(),
                               nonzero=())
    if any(_mono_degree(m) > 1 for p in elim.residual for m in p.terms):
        raise NonlinearResidue(
            f"cannot decide {sorted(undecided)}: nonlinear constraints "
            f"remain after elimination")
    return VanishingReport(forced=False, certificates={},
                           pins=dict(elim.pins), undecided=undecided,
                           nonzero=())


# -- scripted replays ------------------------------------------------------------


@dataclass(frozen=True)
class ReplayCase:
    """One sign assignment (or hypothesis variant) inside a replay.

    ``constraints`` is the exact polynomial system the case was decided on
    (associativity plus injected hypotheses), kept so that the certificates
    in ``report`` or ``elimination`` can be re-verified independently.
    """

    kind: str
    n2: int
    signs: Optional[tuple[tuple[int, int], ...]]
    hypotheses: tuple[str, ...]
    ok: bool
    detail: str
    constraints: tuple[MultiPoly, ...] = ()
    report: Optional[VanishingReport] = None
    solution: Optional[dict[str, FieldElement]] = None
    elimination: Optional["Elimination"] = None


@dataclass(frozen=True)
class ReplayReport:
    """Outcome of one named elimination argument across all its cases."""

    name: str
    conclusion: str
    cases: tuple[ReplayCase, ...]
    passed: bool


def _all_sign_pairs():
    return tuple(itertools.product((1, -1), repeat=2))


def _alpha_names(n2: int) -> tuple[str, ...]:
    return tuple(f"alpha_{i}{j}"
                 for i in range(1, n2 + 1) for j in range(1, n2 + 1))


def _null_product_report(kind: str, ctx: FieldContext, name: str
                         ) -> ReplayReport:
    targets = _alpha_names(2)
    cases = []
    for s1 in _all_sign_pairs():
        for s2 in _all_sign_pairs():
            signs = (s1, s2)
            g = generic_extension(kind, 2, signs, ctx)
            cons = associativity_constraints(g)
            for hyp in ("alpha_12", "alpha_11"):
                full = cons + [MultiPoly.var(ctx, hyp)]
                report = forces_vanishing(full, targets)
                ok = bool(report) and report.verify(full)
                detail = ("vacuous: no extension with these signs exists"
                          if report.vacuous else
                          "one vanishing product collapses all of them")
                cases.append(ReplayCase(
                    kind=kind, n2=2, signs=signs,
                    hypotheses=(f"{hyp} = 0",), ok=ok, detail=detail,
                    constraints=tuple(full), report=report))
    return ReplayReport(
        name=name,
        conclusion=("a single vanishing product between block generators "
                    "forces every block product to vanish, so the algebra "
                    "collapses onto its grouplike base"),
        cases=tuple(cases),
        passed=all(c.ok for c in cases))


def _dimension_bound_report(ctx: FieldContext) -> ReplayReport:
    targets = _alpha_names(2)
    cases = []
    for s1 in _all_sign_pairs():
        for s2 in _all_sign_pairs():
            if s1[0] * s1[1] == s2[0] * s2[1]:
                continue  # only mixed-parity assignments are at stake
            signs = (s1, s2)
            g = generic_extension("ga_K", 2, signs, ctx)
            cons = associativity_constraints(g)
            report = forces_vanishing(cons, targets)
            ok = bool(report) and report.verify(cons)
            cases.append(ReplayCase(
                kind="ga_K", n2=2, signs=signs, hypotheses=(),
                ok=ok, constraints=tuple(cons), report=report,
                detail=("blocks of opposite parity cannot both multiply "
                        "nontrivially" if report.forced else "NOT forced")))
    return ReplayReport(
        name="group-dimension-bound",
        conclusion=("two blocks whose sign pairs have opposite parity force "
                    "all block products to vanish: a nontrivial extension "
                    "holds at most two blocks of equal parity, bounding the "
                    "dimension by eight"),
        cases=tuple(cases),
        passed=all(c.ok for c in cases))


def _dependent_collapse_report(kind: str, name: str, conclusion: str,
                               ctx: FieldContext) -> ReplayReport:
    targets = _alpha_names(2)
    cases = []
    for a, b in _all_sign_pairs():
        signs = ((a, b), (-a, b))
        g = generic_extension(kind, 2, signs, ctx)
        cons = associativity_constraints(g)
        # v_1^2 = c * (v_2 v_1) with c an unresolved scalar; both products
        # share the same grouplike support (b_1 = b_2, right factor v_1),
        # so the dependence reduces to one scalar relation.
        hyp = MultiPoly.var(ctx, "alpha_11") \
            - MultiPoly.var(ctx, "c") * MultiPoly.var(ctx, "alpha_21")
        full = cons + [hyp]
        report = forces_vanishing(full, targets)
        ok = bool(report) and report.verify(full)
        cases.append(ReplayCase(
            kind=kind, n2=2, signs=signs,
            hypotheses=("alpha_11 - c*alpha_21 = 0",),
            ok=ok, constraints=tuple(full), report=report,
            detail=("vacuous: no extension with these signs exists"
                    if report.vacuous else
                    "the dependent pair forces total collapse")))
    return ReplayReport(name=name, conclusion=conclusion,
                        cases=tuple(cases),
                        passed=all(c.ok for c in cases))


def _plain_base_report(ctx: FieldContext) -> ReplayReport:
    cases = []
    for kind in ("trivial", "ga_x", "ga_y"):
        g = generic_extension(kind, 2, None, ctx)
        cons = associativity_constraints(g)
        targets = g.unknowns
        report = forces_vanishing(cons, targets)
        ok = bool(report) and report.verify(cons)
        cases.append(ReplayCase(
            kind=kind, n2=2, signs=None, hypotheses=(), ok=ok,
            constraints=tuple(cons), report=report,
            detail="all block structure constants vanish unconditionally"
            if report.forced else "NOT forced"))
    return ReplayReport(
        name="plain-base-collapse",
        conclusion=("over the one-dimensional base and the bases generated "
                    "by e_x or e_y alone, every block product vanishes: "
                    "those bases admit no extension at all"),
        cases=tuple(cases),
        passed=all(c.ok for c in cases))


def _diagonal_bound_report(ctx: FieldContext) -> ReplayReport:
    g = generic_extension("ga_xy", 2, None, ctx)
    cons = associativity_constraints(g)
    targets = g.unknowns
    report = forces_vanishing(cons, targets)
    ok = bool(report) and report.verify(cons)
    case = ReplayCase(
        kind="ga_xy", n2=2, signs=None, hypotheses=(), ok=ok,
        constraints=tuple(cons), report=report,
        detail="two blocks over the e_xy base cannot multiply nontrivially"
        if report.forced else "NOT forced")
    return ReplayReport(
        name="diagonal-base-pair-bound",
        conclusion=("the base generated by e_xy supports at most one block: "
                    "with two blocks every structure constant is forced to "
                    "vanish"),
        cases=(case,),
        passed=case.ok)


def _full_extension_report(ctx: FieldContext) -> ReplayReport:
    cases = []
    regular = build_regular_comodule_algebra(ctx)
    for signs in (((1, 1), (-1, -1)), ((1, -1), (-1, 1))):
        g = generic_extension("ga_K", 2, signs, ctx)
        cons = associativity_constraints(g)
        hyps = [MultiPoly.var(ctx, "alpha_11") - 1,
                MultiPoly.var(ctx, "alpha_12") + 1]
        full = cons + hyps
        elim = eliminate(full)
        ok = elim.contradiction is None and not elim.residual
        expected = {"alpha_11": ctx.one(), "alpha_12": -ctx.one(),
                    "alpha_21": -ctx.one(), "alpha_22": -ctx.one()}
        ok = ok and all(elim.pins.get(k) == v for k, v in expected.items())
        ok = ok and all(
            verify_combination(full, elim.certificates[name],
                               MultiPoly.var(ctx, name) - value)
            for name, value in elim.pins.items())
        solution = dict(elim.pins)
        detail = "solved constants do not match"
        algebra = None
        if ok:
            missing = set(g.unknowns) | set(g.action_symbols)
            missing -= set(solution)
            ok = not missing
            if ok:
                algebra = g.specialize(solution)
                problems = check_comodule_algebra(algebra)
                exact = check_exactness(algebra)
                iso = colinear_iso_search(algebra, regular)
                ok = not problems and exact.am_exact and iso is not None
                detail = ("unique solution: the eight-dimensional extension, "
                          "isomorphic to the ambient Hopf algebra as a "
                          "comodule algebra") if ok else \
                    f"specialization failed: {problems or 'not exact/iso'}"
        cases.append(ReplayCase(
            kind="ga_K", n2=2, signs=signs,
            hypotheses=("alpha_11 = 1", "alpha_12 = -1"),
            ok=ok, detail=detail, constraints=tuple(full),
            solution=solution, elimination=elim))
    return ReplayReport(
        name="group-full-extension",
        conclusion=("with two blocks of equal parity and the normalization "
                    "alpha_11 = 1, alpha_12 = -1, associativity pins every "
                    "remaining constant (alpha_21 = alpha_22 = -1) and the "
                    "resulting algebra is the full eight-dimensional one"),
        cases=tuple(cases),
        passed=all(c.ok for c in cases))


_REPLAYS = {
    "group-null-product": lambda ctx: _null_product_report(
        "ga_K", ctx, "group-null-product"),
    "twisted-null-product": lambda ctx: _null_product_report(
        "kpsi", ctx, "twisted-null-product"),
    "group-dimension-bound": _dimension_bound_report,
    "group-dependent-collapse": lambda ctx: _dependent_collapse_report(
        "ga_K", "group-dependent-collapse",
        ("a linear dependence between v_1^2 and v_2 v_1 forces every block "
         "product to vanish: no eigenspace of the sign action holds two "
         "independent generators"), ctx),
    "twisted-no-extension": lambda ctx: _dependent_collapse_report(
        "kpsi", "twisted-no-extension",
        ("over the twisted base the dependent pair collapses as well; the "
         "twisted base admits no block extension whatsoever"), ctx),
    "plain-base-collapse": _plain_base_report,
    "diagonal-base-pair-bound": _diagonal_bound_report,
    "group-full-extension": _full_extension_report,
}

_REPLAY_CACHE: dict[tuple[str, FieldContext], ReplayReport] = {}


def replay_names() -> tuple[str, ...]:
    return tuple(sorted(_REPLAYS))


def replay_lemma(name: str, ctx: Optional[FieldContext] = None
                 ) -> ReplayReport:
    """Run one of the named elimination replays and report pass/fail."""
    if name not in _REPLAYS:
        raise HopfExactError(
            f"unknown replay {name!r}; available: {', '.join(replay_names())}")
    ctx = ctx or FieldContext(4)
    key = (name, ctx)
    if key not in _REPLAY_CACHE:
        _REPLAY_CACHE[key] = _REPLAYS[name](ctx)
    return _REPLAY_CACHE[key]


# -- classification for at most one block ----------------------------------------


@dataclass(frozen=True)
class SolutionFamily:
    """One family of exact extensions found by :func:`classify_n2_le_1`."""

    kind: str
    n2: int
    signs: Optional[tuple[tuple[int, int], ...]]
    constants: dict[str, FieldElement]
    presentations: tuple[dict[str, FieldElement], ...]
    algebra: ComoduleAlgebra
    catalog_match: str


def classify_n2_le_1(ctx: Optional[FieldContext] = None
                     ) -> tuple[SolutionFamily, ...]:
    """All exact extensions with at most one block, solved symbolically.

    For every base kind and n2 in {0, 1} the associativity constraints are
    solved exactly, under the scale normalization alpha_11 = 1 (one block
    generator can always be rescaled; families differing only by that scale
    are identified).  Solutions related by a colinear isomorphism are merged
    into a single family.  The result is checked two ways before returning:
    every family specializes to an algebra that passes the comodule-algebra
    axioms and is exact, and the families are in bijection with the built-in
    catalog entries of dimension below eight.
    """
    ctx = ctx or FieldContext(4)
    families: list[SolutionFamily] = []
    for kind in KINDS:
        g0 = generic_extension(kind, 0, None, ctx)
        cons0 = associativity_constraints(g0)
        if cons0:
            raise HopfExactError(
                f"base kind {kind!r} is not associative on its own")
        base_algebra = g0.specialize({})
        families.append(SolutionFamily(
            kind=kind, n2=0, signs=None, constants={}, presentations=({},),
            algebra=base_algebra, catalog_match=""))
        # one block
        if kind in ("ga_K", "kpsi"):
            sign_cases = [((a, b),) for a, b in _all_sign_pairs()]
        else:
            sign_cases = [None]
        found: list[tuple] = []
        for signs in sign_cases:
            g = generic_extension(kind, 1, signs, ctx)
            cons = associativity_constraints(g)
            normalized = cons + [MultiPoly.var(ctx, "alpha_11") - 1]
            for sol in concrete_solutions(normalized, ctx):
                found.append((signs, sol, g.specialize(sol)))
        # merge presentations of isomorphic algebras into one family each
        groups: list[list[tuple]] = []
        for item in found:
            for grp in groups:
                if colinear_iso_search(item[2], grp[0][2]) is not None:
                    grp.append(item)
                    break
            else:
                groups.append([item])
        for grp in groups:
            grp_sorted = sorted(
                grp, key=lambda it: sorted(
                    (k, repr(v)) for k, v in it[1].items()))
            signs, sol, algebra = grp_sorted[0]
            problems = check_comodule_algebra(algebra)
            if problems:
                raise HopfExactError(
                    f"classified family {kind!r} n2=1 is not a comodule "
                    f"algebra: {problems}")
            if not check_exactness(algebra).am_exact:
                raise HopfExactError(
                    f"classified family {kind!r} n2=1 is not exact")
            families.append(SolutionFamily(
                kind=kind, n2=1, signs=signs, constants=dict(sol),
                presentations=tuple(dict(s) for _, s, _ in grp_sorted),
                algebra=algebra, catalog_match=""))
    shape = {(f.kind, f.n2) for f in families}
    expected = {(k, 0) for k in KINDS} | {("ga_xy", 1)}
    if shape != expected:
        raise HopfExactError(
            f"classification shape {sorted(shape)} does not match the "
            f"expected list {sorted(expected)}")
    # bijection against the catalog entries of dimension < 8
    cat = {k: v for k, v in catalog(ctx).items() if v.dim < 8}
    matched: dict[str, str] = {}
    final: list[SolutionFamily] = []
    for fam in families:
        match = None
        for key, entry in cat.items():
            if key in matched or entry.dim != fam.algebra.dim:
                continue
            if colinear_iso_search(fam.algebra, entry) is not None:
                match = key
                break
        if match is None:
            raise HopfExactError(
                f"family {fam.kind!r} n2={fam.n2} matches no catalog entry")
        matched[match] = f"{fam.kind}/{fam.n2}"
        final.append(SolutionFamily(
            kind=fam.kind, n2=fam.n2, signs=fam.signs,
            constants=fam.constants, presentations=fam.presentations,
            algebra=fam.algebra, catalog_match=match))
    if set(matched) != set(cat):
        raise HopfExactError(
            f"catalog entries {sorted(set(cat) - set(matched))} have no "
            f"classified counterpart")
    return tuple(final)
