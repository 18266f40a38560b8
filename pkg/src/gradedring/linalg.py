"""Exact rational linear algebra.

Vectors are sparse: a ``dict`` mapping coordinate index to a nonzero
:class:`~fractions.Fraction`.  Dense sequences are accepted wherever a vector
is an input.  Subspaces are stored in reduced row-echelon form, so two
subspaces are equal exactly when their stored bases are identical.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Union

from .errors import DimensionMismatch, Unsolvable

Scalar = Fraction
Vector = Dict[int, Fraction]
VectorLike = Union[Mapping, Sequence]

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def format_scalar(q: Fraction) -> str:
    # Fraction.__str__ is already "p/q" in lowest terms, or "p" for integers
    return str(q)


def vector(v: VectorLike, dim: int | None = None) -> Vector:
    """Sparse copy of ``v`` with zero entries dropped."""
    if isinstance(v, Mapping):
        out = {}
        for k, x in v.items():
            k = int(k)
            if dim is not None and not 0 <= k < dim:
                raise DimensionMismatch(f"index {k} outside dimension {dim}", (k, dim))
            x = scalar(x)
            if x:
                out[k] = x
        return out
    if dim is not None and len(v) != dim:
        raise DimensionMismatch(f"vector of length {len(v)} in dimension {dim}", (len(v), dim))
    return {k: scalar(x) for k, x in enumerate(v) if x}


def dense(v: Mapping, dim: int) -> list[Fraction]:
    out = [ZERO] * dim
    for k, x in v.items():
        out[k] = x
    return out


def axpy(acc: Vector, c, v: Mapping) -> Vector:
    """In place ``acc += c * v``."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def add(u: Mapping, v: Mapping) -> Vector:
    return axpy(dict(u), ONE, v)


def sub(u: Mapping, v: Mapping) -> Vector:
    return axpy(dict(u), -ONE, v)


def scale(c, v: Mapping) -> Vector:
    c = scalar(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def combination(coeffs: Iterable, vectors: Iterable[Mapping]) -> Vector:
    acc: Vector = {}
    for c, v in zip(coeffs, vectors):
        axpy(acc, c, v)
    return acc


def _key(v: Mapping) -> tuple:
    return tuple(sorted(v.items()))


class RowReducer:
    """Incremental reduced row-echelon form.

    Every stored row has a leading 1 at its pivot and zeros in all other
    pivot columns, so reducing a new row needs one pass over its pivot
    entries.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> Vector:
        r = dict(v)
        for p in [k for k in r if k in self.rows]:
            c = r.get(p)
            if c:
                axpy(r, -c, self.rows[p])
        return r

    def insert(self, v: Mapping) -> bool:
        """Add ``v`` to the row space; return whether the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = ONE / r[p]
        if inv != ONE:
            r = {k: x * inv for k, x in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def sorted_rows(self) -> list[Vector]:
        return [self.rows[p] for p in sorted(self.rows)]

    def nullspace(self, ncols: int | None = None) -> list[Vector]:
        """Basis of the solutions of ``row . x = 0``, one vector per free column."""
        n = self.ncols if ncols is None else ncols
        out = []
        for f in range(n):
            if f in self.rows:
                continue
            v = {f: ONE}
            for p, row in self.rows.items():
                c = row.get(f)
                if c:
                    v[p] = -c
            out.append(v)
        return out


class Subspace:
    """A linear subspace of ``Q^ambient`` held in canonical RREF."""

    __slots__ = ("ambient", "_rows", "_key", "_hash")

    def __init__(self, ambient: int, rows: Sequence[Mapping] = ()):
        # callers outside this module should go through span()
        self.ambient = ambient
        self._rows = {min(r): dict(r) for r in rows}
        self._key = tuple(_key(self._rows[p]) for p in sorted(self._rows))
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[Vector]:
        """Basis rows in pivot order (fresh copies)."""
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def dense_basis(self) -> list[list[Fraction]]:
        return [dense(r, self.ambient) for r in self.basis()]

    def __iter__(self):
        return iter(self.basis())

    def is_zero(self) -> bool:
        return not self._rows

    def residue(self, v: Mapping) -> Vector:
        r = dict(v)
        for p in [k for k in r if k in self._rows]:
            c = r.get(p)
            if c:
                axpy(r, -c, self._rows[p])
        return r

    def __contains__(self, v) -> bool:
        return not self.residue(vector(v, self.ambient))

    def coordinates(self, v: Mapping) -> list[Fraction]:
        """Coefficients of ``v`` on :meth:`basis`; raises if ``v`` is outside."""
        if self.residue(v):
            raise ValueError("vector does not lie in the subspace")
        return [v.get(p, ZERO) for p in sorted(self._rows)]

    def element(self, coeffs: Sequence) -> Vector:
        return combination(coeffs, (self._rows[p] for p in sorted(self._rows)))

    def issubspace(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        return all(not other.residue(r) for r in self._rows.values())

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self._key == other._key

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient, self._key))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def _same_ambient(*spaces: Subspace) -> int:
    dims = {s.ambient for s in spaces}
    if len(dims) != 1:
        raise DimensionMismatch(f"ambient dimensions differ: {sorted(dims)}", tuple(sorted(dims)))
    return dims.pop()


def zero_subspace(ambient: int) -> Subspace:
    return Subspace(ambient)


def full_subspace(ambient: int) -> Subspace:
    return Subspace(ambient, [{k: ONE} for k in range(ambient)])


def span(vectors: Iterable[VectorLike], ambient: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``vectors``.

    ``ambient`` may be omitted when at least one dense vector fixes it.
    """
    vectors = list(vectors)
    if ambient is None:
        lengths = {len(v) for v in vectors if not isinstance(v, Mapping)}
        if len(lengths) > 1:
            raise DimensionMismatch(f"vectors of lengths {sorted(lengths)}", tuple(sorted(lengths)))
        if not lengths:
            if vectors:
                raise DimensionMismatch("ambient dimension needed for sparse vectors")
            ambient = 0
        else:
            ambient = lengths.pop()
    red = RowReducer(ambient)
    for v in vectors:
        red.insert(vector(v, ambient))
        if red.rank == ambient:
            break
    return Subspace(ambient, red.sorted_rows())


def subspace_sum(*spaces: Subspace) -> Subspace:
    ambient = _same_ambient(*spaces)
    return span((r for s in spaces for r in s._rows.values()), ambient)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Zassenhaus: reduce ``[u | u]`` and ``[v | 0]``; rows starting in the right half span ``u ∩ v``."""
    n = _same_ambient(u, v)
    red = RowReducer(2 * n)
    for r in u._rows.values():
        row = dict(r)
        row.update({n + k: x for k, x in r.items()})
        red.insert(row)
    for r in v._rows.values():
        red.insert(r)
    rows = [{k - n: x for k, x in row.items()} for p, row in red.rows.items() if p >= n]
    return span(rows, n)


def contains(u: Subspace, x) -> bool:
    """``x`` may be a vector or a Subspace."""
    if isinstance(x, Subspace):
        return x.issubspace(u)
    return x in u


def equal(u: Subspace, v: Subspace) -> bool:
    _same_ambient(u, v)
    return u == v


@dataclass(frozen=True)
class Solution:
    particular: Vector
    nullspace: Subspace


def solve(a: Sequence[VectorLike], b: VectorLike, ncols: int | None = None) -> Solution:
    """Solve ``a x = b`` exactly.

    Returns the solution with all free variables set to zero together with
    the null space of ``a``.  Raises :class:`Unsolvable` when ``b`` is not
    in the column space.
    """
    rows = list(a)
    if ncols is None:
        lengths = {len(r) for r in rows if not isinstance(r, Mapping)}
        if len(lengths) != 1:
            raise DimensionMismatch("cannot infer the number of columns", tuple(sorted(lengths)))
        ncols = lengths.pop()
    bv = vector(b, len(rows))
    red = RowReducer(ncols + 1)
    for i, r in enumerate(rows):
        row = vector(r, ncols)
        if i in bv:
            row[ncols] = bv[i]
        red.insert(row)
    if ncols in red.rows:
        raise Unsolvable("right-hand side is outside the column space")
    x = {p: row[ncols] for p, row in red.rows.items() if ncols in row}
    null = red.nullspace(ncols)
    return Solution(x, span(null, ncols))


def nullspace(rows: Iterable[VectorLike], ncols: int) -> Subspace:
    red = RowReducer(ncols)
    for r in rows:
        red.insert(vector(r, ncols))
    return span(red.nullspace(), ncols)


class LinearMap:
    """A linear map defined on a subspace, stored as the images of its RREF basis."""

    def __init__(self, domain: Subspace, images: Sequence[Mapping]):
        if len(images) != domain.dim:
            raise DimensionMismatch("one image per domain basis vector required", (len(images), domain.dim))
        self.domain = domain
        self.images = tuple(dict(v) for v in images)

    @classmethod
    def from_function(cls, domain: Subspace, fn) -> "LinearMap":
        return cls(domain, [fn(b) for b in domain.basis()])

    @classmethod
    def zero(cls, domain: Subspace) -> "LinearMap":
        return cls(domain, [{} for _ in range(domain.dim)])

    @classmethod
    def identity(cls, domain: Subspace) -> "LinearMap":
        return cls(domain, domain.basis())

    def __call__(self, v: Mapping) -> Vector:
        return combination(self.domain.coordinates(v), self.images)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """``self ∘ inner``."""
        return LinearMap(inner.domain, [self(y) for y in inner.images])

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if self.domain != other.domain:
            raise DimensionMismatch("maps have different domains")
        return LinearMap(self.domain, [add(a, b) for a, b in zip(self.images, other.images)])

    def scaled(self, c) -> "LinearMap":
        return LinearMap(self.domain, [scale(c, v) for v in self.images])

    def restrict(self, sub: Subspace) -> "LinearMap":
        return LinearMap(sub, [self(b) for b in sub.basis()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.domain == other.domain and self.images == other.images

    def __repr__(self) -> str:
        return f"LinearMap(domain_dim={self.domain.dim})"


def invert_square(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Inverse of a square matrix, or None when singular."""
    k = len(matrix)
    red = RowReducer(2 * k)
    for i, row in enumerate(matrix):
        v = {j: x for j, x in enumerate(row) if x}
        v[k + i] = ONE
        red.insert(v)
    out = []
    for i in range(k):
        row = red.rows.get(i)
        if row is None:
            return None
        out.append([row.get(k + j, ZERO) for j in range(k)])
    return out


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]], inner: int, cols: int) -> list[list[Fraction]]:
    return [[sum((a[i][t] * b[t][j] for t in range(inner)), ZERO) for j in range(cols)] for i in range(len(a))]


def rank(rows: Iterable[VectorLike], ncols: int) -> int:
    red = RowReducer(ncols)
    for r in rows:
        red.insert(vector(r, ncols))
    return red.rank
