"""Finite-dimensional algebras over Q with a category grading.

Algebra elements are sparse vectors (see :mod:`gradedring.linalg`) in the
coordinates of the algebra's basis.  A :class:`GradedAlgebra` may live inside
a larger ambient algebra (a graded subring of a full matrix ring); every
ring-level answer is taken relative to its total space ``R = sum_s R_s``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DimensionMismatch,
    NotADirectSum,
    NotAssociative,
    NotLocallyUnital,
    NotUnital,
)
from .groupoid import FiniteCategory, FiniteGroupoid
from .linalg import (
    ONE,
    ZERO,
    RowReducer,
    Subspace,
    Vector,
    axpy,
    format_scalar,
    scalar,
    span,
    sub,
    subspace_sum,
    zero_subspace,
)


class FiniteAlgebra:
    """Associative algebra given by sparse structure constants.

    ``table[(i, j)]`` maps ``k`` to the coefficient of ``b_k`` in ``b_i b_j``;
    missing pairs multiply to zero.
    """

    def __init__(self, dim: int, table: Mapping, labels: Sequence[str] | None = None, check: bool = True):
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise DimensionMismatch("one label per basis element required", (len(self.labels), dim))
        self._left: dict[int, dict[int, Vector]] = {}
        for (i, j), prod in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"structure constant index ({i}, {j}) out of range", (i, j))
            v = {int(k): scalar(c) for k, c in prod.items() if c}
            if v:
                self._left.setdefault(i, {})[j] = v
        self._label_index = {name: i for i, name in enumerate(self.labels)}
        if check:
            bad = self.associativity_witness()
            if bad is not None:
                raise NotAssociative(f"(b{bad[0]} b{bad[1]}) b{bad[2]} != b{bad[0]} (b{bad[1]} b{bad[2]})", bad)

    def basis_product(self, i: int, j: int) -> Vector:
        return dict(self._left.get(i, {}).get(j, {}))

    def structure_constants(self) -> dict[tuple[int, int], Vector]:
        return {(i, j): dict(v) for i, row in self._left.items() for j, v in row.items()}

    def mul(self, u: Mapping, v: Mapping) -> Vector:
        acc: Vector = {}
        for i, a in u.items():
            row = self._left.get(i)
            if not row:
                continue
            for j, b in v.items():
                prod = row.get(j)
                if prod:
                    axpy(acc, a * b, prod)
        return acc

    def commutator(self, u: Mapping, v: Mapping) -> Vector:
        return sub(self.mul(u, v), self.mul(v, u))

    def basis_vector(self, i: int) -> Vector:
        return {i: ONE}

    def associativity_witness(self):
        """First basis triple ``(i, j, k)`` breaking associativity, else None.

        Only triples where one side can be nonzero are visited.
        """
        idx = range(self.dim)
        for i, row in sorted(self._left.items()):
            for j in sorted(row):
                for k in idx:
                    if self.mul(self.mul({i: ONE}, {j: ONE}), {k: ONE}) != self.mul({i: ONE}, self.basis_product(j, k)):
                        return (i, j, k)
        for j, row in sorted(self._left.items()):
            for k in sorted(row):
                for i in idx:
                    if self.mul(self.mul({i: ONE}, {j: ONE}), {k: ONE}) != self.mul({i: ONE}, self.basis_product(j, k)):
                        return (i, j, k)
        return None

    # labels

    def element(self, spec) -> Vector:
        """Element from a label mapping or a string such as ``"e44+e55"`` or ``"2*u0 - 1/2*u1"``."""
        if isinstance(spec, Mapping):
            out: Vector = {}
            for name, c in spec.items():
                axpy(out, scalar(c), {self.label_index(name): ONE})
            return out
        out = {}
        text = spec.replace(" ", "")
        if text in ("", "0"):
            return out
        for sign, coeff, name in re.findall(r"([+-]?)(?:([0-9]+(?:/[0-9]+)?)\*)?([A-Za-z][\w,]*)", text):
            c = Fraction(coeff) if coeff else ONE
            if sign == "-":
                c = -c
            axpy(out, c, {self.label_index(name): ONE})
        return out

    def label_index(self, name: str) -> int:
        try:
            return self._label_index[name]
        except KeyError:
            raise KeyError(f"no basis element labelled {name!r}") from None

    def format(self, v: Mapping) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            if c == ONE:
                term = self.labels[k]
            elif c == -ONE:
                term = "-" + self.labels[k]
            else:
                term = f"{format_scalar(c)}*{self.labels[k]}"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})"


class MatrixUnitAlgebra(FiniteAlgebra):
    """``M_n(Q)`` on the matrix units ``e_ij`` (basis index ``(i-1)*n + (j-1)``)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("matrix size must be positive")
        self.n = n
        sep = "" if n < 10 else "_"
        labels = [f"e{i}{sep}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
        table = {
            (a * n + b, b * n + d): {a * n + d: ONE} for a in range(n) for b in range(n) for d in range(n)
        }
        # the matrix-unit relations are associative by construction
        super().__init__(n * n, table, labels, check=False)

    def index(self, i: int, j: int) -> int:
        """Basis index of ``e_ij`` with 1-based ``i, j``."""
        return (i - 1) * self.n + (j - 1)

    def unit(self, i: int, j: int) -> Vector:
        return {self.index(i, j): ONE}

    def identity_matrix(self) -> Vector:
        return {self.index(i, i): ONE for i in range(1, self.n + 1)}

    def mul(self, u: Mapping, v: Mapping) -> Vector:
        n = self.n
        by_row: dict[int, list] = {}
        for k, c in v.items():
            by_row.setdefault(k // n, []).append((k % n, c))
        acc: Vector = {}
        for k, a in u.items():
            row = by_row.get(k % n)
            if not row:
                continue
            base = (k // n) * n
            for d, b in row:
                key = base + d
                x = acc.get(key, ZERO) + a * b
                if x:
                    acc[key] = x
                else:
                    del acc[key]
        return acc

    def to_matrix(self, v: Mapping) -> list[list[Fraction]]:
        n = self.n
        m = [[ZERO] * n for _ in range(n)]
        for k, c in v.items():
            m[k // n][k % n] = c
        return m


@lru_cache(maxsize=None)
def matrix_unit_algebra(n: int) -> MatrixUnitAlgebra:
    return MatrixUnitAlgebra(n)


def subspace_product(alg: FiniteAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """``UV``: span of all products of basis elements."""
    if u.ambient != alg.dim or v.ambient != alg.dim:
        raise DimensionMismatch("subspaces must live in the algebra", (u.ambient, v.ambient, alg.dim))
    red = RowReducer(alg.dim)
    vb = v.basis()
    for x in u.basis():
        for y in vb:
            red.insert(alg.mul(x, y))
    return Subspace(alg.dim, red.sorted_rows())


@dataclass(frozen=True)
class Verdict:
    ok: bool
    check: str
    detail: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


class GradedAlgebra:
    """An algebra with one component subspace per morphism of a finite category.

    With ``require_direct`` (the default) the components must form a direct
    sum; builders that may produce overlapping components (category filters
    over non-cancellative categories) pass ``require_direct=False`` and the
    result records :attr:`is_direct`.  The filter law is checked by
    :func:`check_filter`, not here.
    """

    def __init__(self, alg: FiniteAlgebra, cat: FiniteCategory, components, require_direct: bool = True):
        self.alg = alg
        self.cat = cat
        if isinstance(components, Mapping):
            comps = [components.get(s, zero_subspace(alg.dim)) for s in cat.ids()]
        else:
            comps = list(components)
        if len(comps) != len(cat):
            raise DimensionMismatch("one component per morphism required", (len(comps), len(cat)))
        for s, c in enumerate(comps):
            if c.ambient != alg.dim:
                raise DimensionMismatch(f"component of {cat.name(s)} has the wrong ambient dimension", (s,))
        self.components: tuple[Subspace, ...] = tuple(comps)
        self.total: Subspace = subspace_sum(*comps) if comps else zero_subspace(alg.dim)
        self.is_direct = sum(c.dim for c in comps) == self.total.dim
        if require_direct and not self.is_direct:
            raise NotADirectSum(
                f"component dimensions sum to {sum(c.dim for c in comps)} but R has dimension {self.total.dim}",
                (sum(c.dim for c in comps), self.total.dim),
            )
        self._cache: dict = {}

    def component(self, s) -> Subspace:
        return self.components[self.cat.morphism_id(s)]

    def dims(self) -> list[int]:
        return [c.dim for c in self.components]

    @property
    def is_groupoid(self) -> bool:
        return isinstance(self.cat, FiniteGroupoid)

    def cached(self, key, compute):
        # memo for derived data (blocks, local units, sigma maps); values are pure functions of self
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def __repr__(self) -> str:
        return f"GradedAlgebra(dims={self.dims()}, ambient={self.alg.dim})"


# grading checks


def _first_product_outside(alg, u: Subspace, v: Subspace, target: Subspace):
    for x in u.basis():
        for y in v.basis():
            xy = alg.mul(x, y)
            if target.residue(xy):
                return x, y, xy
    return None


def check_filter(ga: GradedAlgebra) -> Verdict:
    """``R_s R_t`` inside ``R_st`` on composable pairs and zero otherwise."""
    cat, alg = ga.cat, ga.alg
    zero = zero_subspace(alg.dim)
    for s in cat.ids():
        for t in cat.ids():
            st = cat.compose(s, t)
            target = ga.components[st] if st is not None else zero
            bad = _first_product_outside(alg, ga.components[s], ga.components[t], target)
            if bad is not None:
                x, y, xy = bad
                where = f"outside R_{cat.name(st)}" if st is not None else "nonzero for a non-composable pair"
                return Verdict(
                    False,
                    "filter",
                    f"R_{cat.name(s)} R_{cat.name(t)}: {alg.format(x)} * {alg.format(y)} = {alg.format(xy)} {where}",
                    (s, t, alg.format(x), alg.format(y)),
                )
    return Verdict(True, "filter")


def check_strong(ga: GradedAlgebra) -> Verdict:
    """Strongness.  For groupoids only ``R_s R_{s^-1} = R_{c(s)}`` is tested."""
    cat, alg = ga.cat, ga.alg
    if isinstance(cat, FiniteGroupoid):
        pairs = [(s, cat.inv(s)) for s in cat.ids()]
    else:
        pairs = cat.composable_pairs()
    for s, t in pairs:
        st = cat.compose(s, t)
        prod = subspace_product(alg, ga.components[s], ga.components[t])
        if prod != ga.components[st]:
            return Verdict(
                False,
                "strong",
                f"R_{cat.name(s)} R_{cat.name(t)} has dimension {prod.dim}, R_{cat.name(st)} has dimension {ga.components[st].dim}",
                (s, t),
            )
    return Verdict(True, "strong")


def check_strong_all_pairs(ga: GradedAlgebra) -> Verdict:
    """Strongness tested on every composable pair, whatever the category."""
    cat, alg = ga.cat, ga.alg
    for s, t in cat.composable_pairs():
        st = cat.compose(s, t)
        if subspace_product(alg, ga.components[s], ga.components[t]) != ga.components[st]:
            return Verdict(False, "strong", f"R_{cat.name(s)} R_{cat.name(t)} != R_{cat.name(st)}", (s, t))
    return Verdict(True, "strong")


def _solve_unit(alg, space: Subspace, left: Iterable[Vector], right: Iterable[Vector]):
    """Unique ``u`` in ``space`` with ``u x = x`` for ``x`` in ``left`` and ``x u = x`` for ``x`` in ``right``.

    Returns ``(u, None)`` or ``(None, (side, x))`` naming the first
    constraint that makes the system unsolvable.
    """
    basis = space.basis()
    n = len(basis)
    red = RowReducer(n + 1)
    for side, xs in (("left", left), ("right", right)):
        for x in xs:
            prods = [alg.mul(b, x) if side == "left" else alg.mul(x, b) for b in basis]
            coords = sorted(set(x).union(*prods))
            for c in coords:
                row = {i: p[c] for i, p in enumerate(prods) if c in p}
                if c in x:
                    row[n] = x[c]
                red.insert(row)
                if n in red.rows:
                    return None, (side, x)
    u: Vector = {}
    for p, row in red.rows.items():
        c = row.get(n)
        if c:
            axpy(u, c, basis[p])
    if red.rank < n:
        # a unit, when it exists, is unique; free directions mean something is wrong upstream
        null = red.nullspace(n)
        raise RuntimeError(f"unit not unique: {len(null)} free directions")
    return u, None


def local_units(ga: GradedAlgebra) -> dict[int, Vector]:
    """``1_e`` in ``R_{id_e}`` for every object, by linear solve."""

    def compute():
        cat, alg = ga.cat, ga.alg
        units = {}
        for e in range(cat.n_objects):
            left = [x for s in cat.morphisms_into(e) for x in ga.components[s].basis()]
            right = [x for s in cat.morphisms_from(e) for x in ga.components[s].basis()]
            u, bad = _solve_unit(alg, ga.components[cat.identity[e]], left, right)
            if bad is not None:
                side, x = bad
                what = "1_e x = x" if side == "left" else "x 1_e = x"
                raise NotLocallyUnital(
                    f"object {cat.objects[e]}: no element of R_{cat.objects[e]} satisfies {what} for x = {alg.format(x)}",
                    (e, side, alg.format(x)),
                )
            units[e] = u
        return units

    return dict(ga.cached("local_units", compute))


def unit_of(alg: FiniteAlgebra, space: Subspace) -> Vector | None:
    """Two-sided identity of the subring ``space``, or None."""
    basis = space.basis()
    try:
        u, bad = _solve_unit(alg, space, basis, basis)
    except RuntimeError:
        return None
    return u if bad is None else None


def is_identity_of(alg: FiniteAlgebra, u: Mapping, space: Subspace) -> bool:
    return u in space and all(alg.mul(u, x) == x == alg.mul(x, u) for x in space.basis())


def check_unital(ga: GradedAlgebra) -> Vector:
    """Identity element of ``R``.

    When ``R`` is locally unital the candidate is ``sum_e 1_e``; the identity
    is also solved for directly, and the two routes must agree.
    """
    alg, total = ga.alg, ga.total
    direct = unit_of(alg, total)
    try:
        units = local_units(ga)
    except NotLocallyUnital:
        units = None
    if units is not None:
        candidate: Vector = {}
        for u in units.values():
            axpy(candidate, ONE, u)
        if is_identity_of(alg, candidate, total):
            if direct != candidate:
                raise RuntimeError("identity from local units disagrees with the direct solve")
            return candidate
    if direct is None:
        raise NotUnital("R has no identity element", ())
    return direct


def subring(ga: GradedAlgebra, morphisms: Iterable) -> Subspace:
    """``R_H``: the sum of the components named in ``morphisms``."""
    ids = [ga.cat.morphism_id(s) for s in morphisms]
    if not ids:
        return zero_subspace(ga.alg.dim)
    return subspace_sum(*(ga.components[s] for s in ids))


def object_block(ga: GradedAlgebra, e: int) -> Subspace:
    """``R_{G_e}``: components of the loops at ``e``."""
    return ga.cached(("block", e), lambda: subring(ga, ga.cat.loops(e)))


def commutant(alg: FiniteAlgebra, w: Subspace, x: Subspace) -> Subspace:
    """``{a in W : a b = b a for b in X}`` by one exact solve in W-coordinates."""
    if w.ambient != alg.dim or x.ambient != alg.dim:
        raise DimensionMismatch("subspaces must live in the algebra", (w.ambient, x.ambient, alg.dim))
    basis = w.basis()
    n = len(basis)
    red = RowReducer(n)
    seen = set()
    for b in x.basis():
        if red.rank == n:
            break
        diffs = [alg.commutator(a, b) for a in basis]
        rows: dict[int, dict[int, Fraction]] = {}
        for i, d in enumerate(diffs):
            for c, val in d.items():
                rows.setdefault(c, {})[i] = val
        for row in rows.values():
            key = tuple(sorted(row.items()))
            if key in seen:
                continue
            seen.add(key)
            red.insert(row)
    result: list[Vector] = []
    for coeffs in red.nullspace():
        v: Vector = {}
        for i, c in coeffs.items():
            axpy(v, c, basis[i])
        result.append(v)
    out = span(result, alg.dim)
    xb = x.basis()
    for a in out.basis():
        for b in xb:
            if alg.mul(a, b) != alg.mul(b, a):
                raise RuntimeError("commutant element fails to commute after the solve")
    return out


def center(alg: FiniteAlgebra, w: Subspace) -> Subspace:
    return commutant(alg, w, w)


def local_commutant(ga: GradedAlgebra, e: int) -> Subspace:
    """``C_{R_{G_e}}(R_e)``."""
    return ga.cached(
        ("local_commutant", e),
        lambda: commutant(ga.alg, object_block(ga, e), ga.components[ga.cat.identity[e]]),
    )
