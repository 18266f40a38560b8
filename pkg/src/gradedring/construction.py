"""Builders for graded matrix rings, category algebras and the nonfree witness.

The main builder takes a category ``G`` and a selection ``s_1, ..., s_n`` of
morphisms (repeats allowed) and grades a subring of ``M_n(Q)`` by letting
``R_s`` be spanned by the matrix units ``e_ij`` with ``s_i s = s_j``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .algebra import (
    FiniteAlgebra,
    GradedAlgebra,
    check_strong,
    check_unital,
    matrix_unit_algebra,
)
from .errors import IdentityMorphism, InvalidSelection, UnknownMorphism
from .groupoid import (
    FiniteCategory,
    FiniteGroupoid,
    as_groupoid,
    connected_components,
    validate_category,
)
from .linalg import ONE, Subspace, span


@dataclass(frozen=True)
class SelectionSpec:
    cat: FiniteCategory
    selection: tuple[int, ...]

    def __post_init__(self):
        if not self.selection:
            raise InvalidSelection("selection must be nonempty")
        for s in self.selection:
            if not (isinstance(s, int) and 0 <= s < len(self.cat)):
                raise InvalidSelection(f"{s!r} is not a morphism id", (s,))

    @classmethod
    def of(cls, cat: FiniteCategory, selection: Sequence) -> "SelectionSpec":
        """Accepts morphism names or ids."""
        try:
            ids = tuple(cat.morphism_id(s) for s in selection)
        except UnknownMorphism as exc:
            raise InvalidSelection(str(exc), exc.witness) from None
        return cls(cat, ids)

    @property
    def n(self) -> int:
        return len(self.selection)

    def product_closed(self) -> bool:
        """``s_i s`` lies in the selection whenever it is defined."""
        chosen = set(self.selection)
        for si in chosen:
            for s in self.cat.ids():
                st = self.cat.compose(si, s)
                if st is not None and st not in chosen:
                    return False
        return True

    def covers_domains(self) -> bool:
        """Every ``d(s_i)`` (as an identity morphism) is selected."""
        chosen = set(self.selection)
        return all(self.cat.identity[self.cat.dom(s)] in chosen for s in self.selection)

    def covers_category(self) -> bool:
        return set(self.selection) == set(self.cat.ids())

    def names(self) -> list[str]:
        return [self.cat.name(s) for s in self.selection]


PositionSets = dict  # morphism id -> frozenset of 1-based (i, j) pairs


def position_sets(spec: SelectionSpec) -> PositionSets:
    cat, sel = spec.cat, spec.selection
    where: dict[int, list[int]] = {}
    for j, sj in enumerate(sel, start=1):
        where.setdefault(sj, []).append(j)
    out = {}
    for s in cat.ids():
        pairs = set()
        for i, si in enumerate(sel, start=1):
            target = cat.compose(si, s)
            if target is None:
                continue
            for j in where.get(target, ()):
                pairs.add((i, j))
        out[s] = frozenset(pairs)
    return out


def build_das(spec: SelectionSpec) -> tuple[GradedAlgebra, PositionSets]:
    """Matrix-unit filter ``R_s = span{e_ij : s_i s = s_j}`` inside ``M_n(Q)``.

    Components overlap only when the category is not cancellative, in which
    case the returned algebra has ``is_direct`` False.
    """
    alg = matrix_unit_algebra(spec.n)
    pos = position_sets(spec)
    comps = [
        Subspace(alg.dim, [alg.unit(i, j) for i, j in sorted(pos[s])]) for s in spec.cat.ids()
    ]
    return GradedAlgebra(alg, spec.cat, comps, require_direct=False), pos


def das_identity(spec: SelectionSpec) -> dict:
    """``sum_f 1_f`` where ``1_f`` sums the ``e_ii`` with ``d(s_i) = f``."""
    alg = matrix_unit_algebra(spec.n)
    out = {}
    for f in range(spec.cat.n_objects):
        for i, si in enumerate(spec.selection, start=1):
            if spec.cat.dom(si) == f:
                out[alg.index(i, i)] = ONE
    return out


def category_algebra(cat: FiniteCategory) -> GradedAlgebra:
    """``QG`` with basis ``u_s`` and ``u_s u_t = u_st`` when composable."""
    table = {(s, t): {st: ONE} for (s, t) in cat.composable_pairs() for st in [cat.compose(s, t)]}
    alg = FiniteAlgebra(len(cat), table, [f"u_{cat.name(s)}" for s in cat.ids()])
    comps = [Subspace(alg.dim, [{s: ONE}]) for s in cat.ids()]
    return GradedAlgebra(alg, cat, comps)


def monoid_category() -> FiniteCategory:
    """The monoid ``{e, s}`` with ``e`` the identity and ``s^2 = s``."""
    return validate_category(
        {
            "objects": ["*"],
            "morphisms": [["e", "*", "*"], ["s", "*", "*"]],
            "identity": {"*": "e"},
            "compose": [["e", "e", "e"], ["e", "s", "s"], ["s", "e", "s"], ["s", "s", "s"]],
        }
    )


def monoid_counterexample() -> GradedAlgebra:
    """Unital but not locally unital: ``R_e = Q e33`` and ``R_s`` the upper 2x2 block of ``M_3``."""
    cat = monoid_category()
    alg = matrix_unit_algebra(3)
    r_e = span([alg.unit(3, 3)], alg.dim)
    r_s = span([alg.unit(i, j) for i in (1, 2) for j in (1, 2)], alg.dim)
    return GradedAlgebra(alg, cat, [r_e, r_s])


@dataclass(frozen=True)
class NonfreeCertificate:
    """``0 < dim R_t < dim R_{c(t)}``: no free module of any rank has dimension ``dim R_t``."""

    t: int
    m: int
    dim_unit: int
    dim_t: int

    @property
    def holds(self) -> bool:
        return 0 < self.dim_t < self.dim_unit


@dataclass(frozen=True)
class Inconclusive:
    t: int
    dim_unit: int
    dim_t: int
    reason: str


def nonfree_check(ga: GradedAlgebra, t) -> NonfreeCertificate | Inconclusive:
    cat = ga.cat
    t = cat.morphism_id(t)
    c = cat.cod(t)
    dim_t = ga.components[t].dim
    dim_unit = ga.components[cat.identity[c]].dim
    m = len(cat.morphisms_from(c))
    if 0 < dim_t < dim_unit:
        return NonfreeCertificate(t, m, dim_unit, dim_t)
    if dim_t == 0:
        reason = "component is zero"
    else:
        reason = f"dim R_t = {dim_t} >= {dim_unit} = dim R_c(t); the dimension count does not decide freeness"
    return Inconclusive(t, dim_unit, dim_t, reason)


def nonfree_selection(g: FiniteGroupoid, t: int) -> list[int]:
    """Selection used by :func:`nonfree_example`.

    Components are concatenated in order of their smallest object.  In the
    component of ``t``: ``t`` first when it is not a loop, then the remaining
    morphisms in id order, ``id_{c(t)}`` last and once more as a duplicate.
    """
    unit = g.identity[g.cod(t)]
    selection: list[int] = []
    for _objs, comp in connected_components(g):
        ids = comp.sorted_ids()
        if t not in comp:
            selection.extend(ids)
            continue
        head = [t] if g.dom(t) != g.cod(t) else []
        middle = [s for s in ids if s not in head and s != unit]
        selection.extend(head + middle + [unit, unit])
    return selection


def nonfree_example(g: FiniteGroupoid, t) -> tuple[GradedAlgebra, NonfreeCertificate]:
    """Strongly graded unital ring with every component nonzero and ``R_t`` nonfree over ``R_{c(t)}``.

    The direct sum over connected components is realised as one block
    diagonal selection: composites never leave a component.
    """
    g = as_groupoid(g)
    t = g.morphism_id(t)
    if g.is_identity(t):
        raise IdentityMorphism(f"{g.name(t)} is an identity morphism", (t,))
    spec = SelectionSpec(g, tuple(nonfree_selection(g, t)))
    ga, _ = build_das(spec)
    if not ga.is_direct:
        raise RuntimeError("grading over a groupoid must be direct")
    if not check_strong(ga):
        raise RuntimeError("construction is not strongly graded")
    if any(c.is_zero() for c in ga.components):
        raise RuntimeError("construction has a zero component")
    check_unital(ga)
    cert = nonfree_check(ga, t)
    if not isinstance(cert, NonfreeCertificate):
        raise RuntimeError(f"no nonfreeness certificate for {g.name(t)}: {cert.reason}")
    expected = cert.m + (1 if g.dom(t) != g.cod(t) else 2)
    if cert.dim_unit != cert.m + 3 or cert.dim_t != expected:
        raise RuntimeError(f"unexpected dimensions {cert}")
    return ga, cert
