"""The action induced by invertible bimodules, and the commutant theorems.

An invertible pair ``X : B -> A`` consists of subspaces ``A``, ``B``, ``X``,
``X^-1`` of an algebra with ``X X^-1 = A`` and ``X^-1 X = B``.  A dual basis
``(x_i, y_i)`` with ``sum x_i y_i = 1_A`` drives everything else:
``f^X(m) = sum x_i f(y_i m)`` on bimodule endomorphisms and
``sigma(r) = sum x_i r y_i`` on commutants.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    FiniteAlgebra,
    GradedAlgebra,
    center,
    check_strong,
    commutant,
    is_identity_of,
    local_commutant,
    local_units,
    object_block,
    subring,
    subspace_product,
    unit_of,
)
from .errors import (
    CertificateFailure,
    NoDualBasis,
    NotBimoduleMap,
    NotInvertible,
    NotStrong,
    SourceMismatch,
    Unsolvable,
)
from .groupoid import FiniteGroupoid, Subgroupoid, closure
from .linalg import (
    ONE,
    ZERO,
    LinearMap,
    RowReducer,
    Subspace,
    Vector,
    axpy,
    combination,
    invert_square,
    matmul,
    rank,
    solve,
    span,
    zero_subspace,
)


@dataclass(frozen=True, eq=False)
class InvertiblePair:
    """A verified morphism ``X : B -> A`` of invertible submodules of ``ring``."""

    alg: FiniteAlgebra
    ring: Subspace
    a: Subspace
    b: Subspace
    x: Subspace
    xinv: Subspace
    unit_a: Vector
    unit_b: Vector

    def inverse(self) -> "InvertiblePair":
        return InvertiblePair(self.alg, self.ring, self.b, self.a, self.xinv, self.x, self.unit_b, self.unit_a)

    def compose(self, inner: "InvertiblePair") -> "InvertiblePair":
        """``XY : C -> A`` for ``self = X : B -> A`` and ``inner = Y : C -> B``."""
        if inner.a != self.b:
            raise SourceMismatch("inner pair does not land in the source of the outer pair")
        alg = self.alg
        xy = subspace_product(alg, self.x, inner.x)
        xy_inv = subspace_product(alg, inner.xinv, self.xinv)
        return verify_invertible(alg, self.ring, self.a, inner.b, xy, xy_inv, self.unit_a, inner.unit_b)


def _sub_closed(alg, left: Subspace, right: Subspace, target: Subspace) -> bool:
    return all(not target.residue(alg.mul(u, v)) for u in left.basis() for v in right.basis())


def verify_invertible(
    alg: FiniteAlgebra,
    ring: Subspace,
    a: Subspace,
    b: Subspace,
    x: Subspace,
    xinv: Subspace,
    unit_a: Mapping | None = None,
    unit_b: Mapping | None = None,
) -> InvertiblePair:
    """Check that ``X`` is an invertible unital ``A``-``B``-submodule with inverse ``xinv``.

    Units are solved for when not supplied.  Raises :class:`NotInvertible`
    naming the first failed condition: ``X X^-1 = A``, ``X^-1 X = B``, the
    bimodule closures of ``X`` and ``X^-1``, then unitality.
    """
    if unit_a is None:
        unit_a = unit_of(alg, a)
    if unit_b is None:
        unit_b = unit_of(alg, b)
    if unit_a is None or not is_identity_of(alg, unit_a, a):
        raise NotInvertible("A has no identity element", ("unit_a",))
    if unit_b is None or not is_identity_of(alg, unit_b, b):
        raise NotInvertible("B has no identity element", ("unit_b",))
    checks = [
        ("X X^-1 = A", lambda: subspace_product(alg, x, xinv) == a),
        ("X^-1 X = B", lambda: subspace_product(alg, xinv, x) == b),
        ("A X in X", lambda: _sub_closed(alg, a, x, x)),
        ("X B in X", lambda: _sub_closed(alg, x, b, x)),
        ("B X^-1 in X^-1", lambda: _sub_closed(alg, b, xinv, xinv)),
        ("X^-1 A in X^-1", lambda: _sub_closed(alg, xinv, a, xinv)),
        ("1_A x = x = x 1_B", lambda: all(alg.mul(unit_a, v) == v == alg.mul(v, unit_b) for v in x.basis())),
        ("1_B y = y = y 1_A", lambda: all(alg.mul(unit_b, v) == v == alg.mul(v, unit_a) for v in xinv.basis())),
    ]
    for name, check in checks:
        if not check():
            raise NotInvertible(f"condition failed: {name}", (name,))
    return InvertiblePair(alg, ring, a, b, x, xinv, dict(unit_a), dict(unit_b))


@dataclass(frozen=True, eq=False)
class DualBasis:
    pairs: tuple  # of (x_i, y_i) with x_i in X, y_i in X^-1

    def __len__(self) -> int:
        return len(self.pairs)


def dual_basis_from_pairs(pair: InvertiblePair, pairs: Iterable[tuple[Mapping, Mapping]]) -> DualBasis:
    """Validate user supplied pairs: memberships and ``sum x_i y_i = 1_A``."""
    alg = pair.alg
    pairs = tuple((dict(x), dict(y)) for x, y in pairs)
    total: Vector = {}
    for x, y in pairs:
        if x not in pair.x or y not in pair.xinv:
            raise NoDualBasis("pair member outside X or X^-1", (alg.format(x), alg.format(y)))
        axpy(total, ONE, alg.mul(x, y))
    if total != pair.unit_a:
        raise NoDualBasis(f"sum x_i y_i = {alg.format(total)} is not 1_A", (alg.format(total),))
    return DualBasis(pairs)


def dual_basis_system(pair: InvertiblePair):
    """Coefficients ``c_ab`` with ``sum c_ab u_a v_b = 1_A`` over basis products.

    Returns ``(index, solution)`` where ``index`` lists the ``(a, b)`` basis
    positions of the unknowns.  Raises :class:`NoDualBasis` when ``1_A`` is
    not in ``X X^-1``.
    """
    alg = pair.alg
    xs, ys = pair.x.basis(), pair.xinv.basis()
    index = []
    cols: list[Vector] = []
    for a, u in enumerate(xs):
        for b, v in enumerate(ys):
            p = alg.mul(u, v)
            if p:
                index.append((a, b))
                cols.append(p)
    coords = sorted(set(pair.unit_a).union(*cols)) if cols else sorted(pair.unit_a)
    where = {c: r for r, c in enumerate(coords)}
    rows: list[dict[int, Fraction]] = [{} for _ in coords]
    for k, p in enumerate(cols):
        for c, val in p.items():
            rows[where[c]][k] = val
    rhs = {where[c]: val for c, val in pair.unit_a.items()}
    try:
        sol = solve(rows, rhs, ncols=len(index))
    except Unsolvable:
        raise NoDualBasis("1_A is not a sum of products x y", ()) from None
    return index, sol


def dual_basis(pair: InvertiblePair, shift: Sequence | None = None) -> DualBasis:
    """Dual basis from the canonical solution of the product system.

    ``shift`` adds a combination of null-space vectors, giving another valid
    dual basis for the same pair.
    """
    index, sol = dual_basis_system(pair)
    coeffs = dict(sol.particular)
    if shift is not None:
        for c, v in zip(shift, sol.nullspace.basis()):
            axpy(coeffs, c, v)
    xs, ys = pair.x.basis(), pair.xinv.basis()
    pairs = []
    for k in sorted(coeffs):
        a, b = index[k]
        pairs.append(({i: coeffs[k] * val for i, val in xs[a].items()}, ys[b]))
    return dual_basis_from_pairs(pair, pairs)


@dataclass(frozen=True, eq=False)
class ProjectivityCertificate:
    """Dual-basis witnesses for ``X`` as a right ``B``-module and a left ``A``-module.

    Right: ``x = sum x_i (y_i x)`` with ``y_i x`` in ``B``.
    Left: ``x = sum (x p_j) q_j`` with ``x p_j`` in ``A``, from ``sum p_j q_j = 1_B``.
    """

    right: DualBasis
    left: DualBasis
    checked: int


def projectivity_certificate(pair: InvertiblePair, basis: DualBasis) -> ProjectivityCertificate:
    alg = pair.alg
    left = dual_basis(pair.inverse())
    for x in pair.x.basis():
        acc: Vector = {}
        for xi, yi in basis.pairs:
            coord = alg.mul(yi, x)
            if coord not in pair.b:
                raise CertificateFailure("y_i x is not in B", (alg.format(x),))
            axpy(acc, ONE, alg.mul(xi, coord))
        if acc != x:
            raise CertificateFailure("x != sum x_i (y_i x)", (alg.format(x),))
        acc = {}
        for p, q in left.pairs:
            coord = alg.mul(x, p)
            if coord not in pair.a:
                raise CertificateFailure("x p_j is not in A", (alg.format(x),))
            axpy(acc, ONE, alg.mul(coord, q))
        if acc != x:
            raise CertificateFailure("x != sum (x p_j) q_j", (alg.format(x),))
    return ProjectivityCertificate(basis, left, pair.x.dim)


# bimodule endomorphisms of R


def left_multiplication(alg: FiniteAlgebra, c: Mapping, domain: Subspace) -> LinearMap:
    return LinearMap.from_function(domain, lambda m: alg.mul(c, m))


def check_bimodule_map(alg: FiniteAlgebra, f: LinearMap, b: Subspace, ring: Subspace) -> None:
    """``f`` on ``BR`` is left ``B``-linear, right ``R``-linear and maps ``BR`` into itself."""
    br = subspace_product(alg, b, ring)
    if f.domain != br:
        raise NotBimoduleMap("map is not defined on BR", ("domain",))
    for m, fm in zip(br.basis(), f.images):
        if fm not in br:
            raise NotBimoduleMap("f(m) leaves BR", (alg.format(m),))
    for bb in b.basis():
        for m, fm in zip(br.basis(), f.images):
            if f(alg.mul(bb, m)) != alg.mul(bb, fm):
                raise NotBimoduleMap("f(b m) != b f(m)", (alg.format(bb), alg.format(m)))
    for m, fm in zip(br.basis(), f.images):
        for r in ring.basis():
            if f(alg.mul(m, r)) != alg.mul(fm, r):
                raise NotBimoduleMap("f(m r) != f(m) r", (alg.format(m), alg.format(r)))


def apply_fX(pair: InvertiblePair, basis: DualBasis, f: LinearMap, check: bool = True) -> LinearMap:
    """``f^X(m) = sum x_i f(y_i m)`` on ``AR``, verified against ``f^X(x m) = x f(1_B m)``."""
    alg, ring = pair.alg, pair.ring
    if check:
        check_bimodule_map(alg, f, pair.b, ring)
    ar = subspace_product(alg, pair.a, ring)

    def fx(m):
        acc: Vector = {}
        for xi, yi in basis.pairs:
            axpy(acc, ONE, alg.mul(xi, f(alg.mul(yi, m))))
        return acc

    g = LinearMap.from_function(ar, fx)
    for x in pair.x.basis():
        for m in ring.basis():
            if g(alg.mul(x, m)) != alg.mul(x, f(alg.mul(pair.unit_b, m))):
                raise CertificateFailure("f^X(x m) != x f(1_B m)", (alg.format(x), alg.format(m)))
    return g


# sigma maps


@dataclass(frozen=True, eq=False)
class SigmaMap:
    """Linear map between subspaces; ``matrix[i]`` holds the target coordinates of the image of source basis ``i``."""

    source: Subspace
    target: Subspace
    matrix: tuple

    @classmethod
    def from_images(cls, source: Subspace, target: Subspace, images: Sequence[Mapping]) -> "SigmaMap":
        rows = []
        for v in images:
            try:
                rows.append(tuple(target.coordinates(v)))
            except ValueError:
                raise SourceMismatch("image outside the target space") from None
        return cls(source, target, tuple(rows))

    @classmethod
    def identity(cls, space: Subspace) -> "SigmaMap":
        k = space.dim
        return cls(space, space, tuple(tuple(ONE if i == j else ZERO for j in range(k)) for i in range(k)))

    def images(self) -> list[Vector]:
        return [self.target.element(row) for row in self.matrix]

    def __call__(self, v: Mapping) -> Vector:
        return combination(self.source.coordinates(v), self.images())

    def compose(self, inner: "SigmaMap") -> "SigmaMap":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise SourceMismatch("inner map does not land in the source of the outer map")
        m = matmul(inner.matrix, self.matrix, self.source.dim, self.target.dim)
        return SigmaMap(inner.source, self.target, tuple(tuple(r) for r in m))

    def inverse(self) -> "SigmaMap":
        if self.source.dim != self.target.dim:
            raise ValueError("map between spaces of different dimension is not invertible")
        inv = invert_square(self.matrix)
        if inv is None:
            raise ValueError("map is singular")
        return SigmaMap(self.target, self.source, tuple(tuple(r) for r in inv))

    def is_bijective(self) -> bool:
        k = self.source.dim
        return k == self.target.dim and rank(self.matrix, k) == k

    def is_identity(self) -> bool:
        return self.source == self.target and self == SigmaMap.identity(self.source)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SigmaMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.matrix == other.matrix

    def __repr__(self) -> str:
        return f"SigmaMap({self.source.dim} -> {self.target.dim})"


def _conjugate(alg, basis: DualBasis, r: Mapping) -> Vector:
    acc: Vector = {}
    for xi, yi in basis.pairs:
        axpy(acc, ONE, alg.mul(alg.mul(xi, r), yi))
    return acc


def sigma_general(
    pair: InvertiblePair,
    basis: DualBasis,
    source: Subspace | None = None,
    target: Subspace | None = None,
) -> SigmaMap:
    """``sigma(r) = sum x_i r y_i`` from ``C_{BR}(B)`` to ``C_{AR}(A)``.

    ``source``/``target`` default to those commutants; callers that know
    them already (graded case) pass them in.  The result is checked to be a
    unit preserving multiplicative bijection satisfying ``sigma(r) x = x r``.
    """
    alg, ring = pair.alg, pair.ring
    if source is None:
        source = commutant(alg, subspace_product(alg, pair.b, ring), pair.b)
    if target is None:
        target = commutant(alg, subspace_product(alg, pair.a, ring), pair.a)
    src = source.basis()
    images = [_conjugate(alg, basis, r) for r in src]
    sigma = SigmaMap.from_images(source, target, images)
    if not sigma.is_bijective():
        raise CertificateFailure("sigma is not bijective", (source.dim, target.dim))
    for r, sr in zip(src, images):
        for r2, sr2 in zip(src, images):
            if sigma(alg.mul(r, r2)) != alg.mul(sr, sr2):
                raise CertificateFailure("sigma is not multiplicative", (alg.format(r), alg.format(r2)))
        for x in pair.x.basis():
            if alg.mul(sr, x) != alg.mul(x, r):
                raise CertificateFailure("sigma(r) x != x r", (alg.format(r), alg.format(x)))
    if pair.unit_b in source and sigma(pair.unit_b) != pair.unit_a:
        raise CertificateFailure("sigma(1_B) != 1_A", ())
    return sigma


def graded_pair(ga: GradedAlgebra, s) -> InvertiblePair:
    """``R_s : R_{d(s)} -> R_{c(s)}`` with inverse ``R_{s^-1}``."""
    cat = ga.cat
    if not isinstance(cat, FiniteGroupoid):
        raise NotStrong("the action needs a groupoid grading", ())
    s = cat.morphism_id(s)

    def compute():
        if not ga.cached("strong", lambda: bool(check_strong(ga))):
            raise NotStrong("grading is not strong", ())
        units = local_units(ga)
        d, c = cat.dom(s), cat.cod(s)
        comps = ga.components
        return verify_invertible(
            ga.alg,
            ga.total,
            comps[cat.identity[c]],
            comps[cat.identity[d]],
            comps[s],
            comps[cat.inv(s)],
            units[c],
            units[d],
        )

    return ga.cached(("pair", s), compute)


def sigma_graded(ga: GradedAlgebra, s) -> SigmaMap:
    """``sigma_s : C_{R_{G_d(s)}}(R_d(s)) -> C_{R_{G_c(s)}}(R_c(s))``."""
    cat = ga.cat
    pair = graded_pair(ga, s)
    s = cat.morphism_id(s)

    def compute():
        basis = dual_basis(pair)
        return sigma_general(
            pair, basis, local_commutant(ga, cat.dom(s)), local_commutant(ga, cat.cod(s))
        )

    return ga.cached(("sigma", s), compute)


def sigma_center(ga: GradedAlgebra, s) -> SigmaMap:
    """Restriction of :func:`sigma_graded` to ``Z(R_d(s)) -> Z(R_c(s))``."""
    cat, alg = ga.cat, ga.alg
    s = cat.morphism_id(s)
    full = sigma_graded(ga, s)
    z_src = center(alg, ga.components[cat.identity[cat.dom(s)]])
    z_tgt = center(alg, ga.components[cat.identity[cat.cod(s)]])
    if not z_src.issubspace(full.source):
        raise SourceMismatch("center is not inside the commutant")
    restricted = SigmaMap.from_images(z_src, z_tgt, [full(z) for z in z_src.basis()])
    if not restricted.is_bijective():
        raise CertificateFailure("sigma does not map the center bijectively", (s,))
    return restricted


def fixed_subspace(space: Subspace, maps: Iterable[SigmaMap]) -> Subspace:
    """Elements of ``space`` fixed by every map (joint kernel of ``sigma - id``)."""
    maps = list(maps)
    k = space.dim
    red = RowReducer(k)
    for m in maps:
        if m.source != space or m.target != space:
            raise SourceMismatch("fixed points need maps from the space to itself")
        for j in range(k):
            row = {i: m.matrix[i][j] - (ONE if i == j else ZERO) for i in range(k)}
            red.insert({i: v for i, v in row.items() if v})
    basis = space.basis()
    return span([combination([c.get(i, ZERO) for i in range(k)], basis) for c in red.nullspace()], space.ambient)


# commutant theorems


@dataclass(frozen=True, eq=False)
class TheoremCheck:
    morphisms: tuple  # the subgroup / subgroupoid, sorted ids
    lhs: Subspace
    rhs: Subspace
    details: dict = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self) -> bool:
        return self.equal


def generators(g: FiniteGroupoid, members: Iterable[int]) -> list[int]:
    """Greedy generating set of a subgroupoid."""
    members = sorted(members)
    gens: list[int] = []
    have = closure(g, [g.identity[g.dom(members[0])]]) if members else frozenset()
    for s in members:
        if s not in have:
            gens.append(s)
            have = closure(g, list(have) + [s])
    return gens


def _as_subgroupoid(g: FiniteGroupoid, h) -> Subgroupoid:
    if isinstance(h, Subgroupoid):
        return h
    members = frozenset(g.morphism_id(s) for s in h)
    if not members or closure(g, members) != members:
        raise ValueError("not a subgroupoid: " + ", ".join(g.name(s) for s in sorted(members)))
    return Subgroupoid(g, members)


def commutant_group_theorem(ga: GradedAlgebra, h) -> TheoremCheck:
    """``C_R(R_H)`` by a direct solve against the fixed ring ``C_R(R_e)^H``."""
    g = ga.cat
    if not isinstance(g, FiniteGroupoid) or g.n_objects != 1:
        raise ValueError("the group theorem needs a one-object groupoid")
    sub = _as_subgroupoid(g, h)
    lhs = commutant(ga.alg, ga.total, subring(ga, sub.morphisms))
    gens = generators(g, sub.morphisms)
    rhs = fixed_subspace(local_commutant(ga, 0), [sigma_graded(ga, s) for s in gens])
    return TheoremCheck(tuple(sub.sorted_ids()), lhs, rhs, {"generators": gens})


def commutant_groupoid_theorem(ga: GradedAlgebra, h, off_h: str = "loops") -> TheoremCheck:
    """``C_R(R_H)`` by a direct solve against the assembled right-hand side.

    The right-hand side is the space of families ``(x_e)`` with ``x_e`` free
    in ``R_{G_e}`` off ``ob(H)``, in ``C_{R_{G_e}}(R_e)`` on ``ob(H)``, and
    ``sigma_s(x_d(s)) = x_c(s)`` for ``s`` in ``H``; one linear system over
    the blocks in object order.

    With ``off_h="loops"`` (the default) that is the whole right-hand side.
    It misses ``R_s`` for ``s`` between two different objects outside
    ``ob(H)``: such components commute with ``R_H`` because both products
    vanish.  ``off_h="all"`` adds them as a further free summand;
    ``details["outside"]`` lists those morphisms either way.
    """
    if off_h not in ("loops", "all"):
        raise ValueError(f"off_h must be 'loops' or 'all', not {off_h!r}")
    g = ga.cat
    if not isinstance(g, FiniteGroupoid):
        raise ValueError("the groupoid theorem needs a groupoid grading")
    sub = _as_subgroupoid(g, h)
    lhs = commutant(ga.alg, ga.total, subring(ga, sub.morphisms))

    on_h = set(sub.objects)
    blocks = [local_commutant(ga, e) if e in on_h else object_block(ga, e) for e in range(g.n_objects)]
    offsets = []
    n = 0
    for blk in blocks:
        offsets.append(n)
        n += blk.dim
    red = RowReducer(n)
    for s in sub.sorted_ids():
        if g.is_identity(s):
            continue
        sigma = sigma_graded(ga, s)
        d, c = g.dom(s), g.cod(s)
        if sigma.source != blocks[d] or sigma.target != blocks[c]:
            raise SourceMismatch("sigma does not act between the expected blocks", (s,))
        for j in range(blocks[c].dim):
            row: dict[int, Fraction] = {}
            for i in range(blocks[d].dim):
                v = sigma.matrix[i][j]
                if v:
                    row[offsets[d] + i] = row.get(offsets[d] + i, ZERO) + v
            key = offsets[c] + j
            row[key] = row.get(key, ZERO) - ONE
            red.insert({k: v for k, v in row.items() if v})
    elements = []
    flat = [(e, b) for e, blk in enumerate(blocks) for b in blk.basis()]
    for coeffs in red.nullspace():
        acc: Vector = {}
        for k, c in coeffs.items():
            axpy(acc, c, flat[k][1])
        elements.append(acc)
    outside = [
        s for s in g.ids() if g.dom(s) != g.cod(s) and g.dom(s) not in on_h and g.cod(s) not in on_h
    ]
    if off_h == "all":
        elements += [v for s in outside for v in ga.components[s].basis()]
    rhs = span(elements, ga.alg.dim) if elements else zero_subspace(ga.alg.dim)
    details = {"objects": sorted(on_h), "off_h": off_h, "outside": outside}
    return TheoremCheck(tuple(sub.sorted_ids()), lhs, rhs, details)
