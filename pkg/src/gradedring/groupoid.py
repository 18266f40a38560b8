"""Finite categories and groupoids as explicit composition tables.

Objects and morphisms are dense integer ids; names are display metadata.
``compose(s, t)`` is the composite ``st`` ("first t, then s") and is defined
exactly when ``dom(s) == cod(t)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from itertools import product
from typing import Any

from .errors import (
    BrokenAssociativity,
    BrokenIdentity,
    CategoryError,
    MissingComposite,
    NotAGroupoid,
    SpuriousComposite,
    TooLarge,
    UnknownMorphism,
    UnknownObject,
)

SUBGROUPOID_LIMIT = 20


@dataclass(frozen=True)
class Morphism:
    id: int
    dom: int
    cod: int
    name: str


class FiniteCategory:
    """A validated finite category.  Build instances with :func:`validate_category`."""

    def __init__(self, objects, morphisms, identity, table):
        self.objects: tuple[str, ...] = tuple(objects)
        self.morphisms: tuple[Morphism, ...] = tuple(morphisms)
        self.identity: tuple[int, ...] = tuple(identity)
        self._table: dict[tuple[int, int], int] = dict(table)
        self._mor_by_name = {m.name: m.id for m in self.morphisms}
        self._obj_by_name = {name: i for i, name in enumerate(self.objects)}
        self._key = None

    # bookkeeping

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def __len__(self) -> int:
        return len(self.morphisms)

    def ids(self) -> range:
        return range(len(self.morphisms))

    def dom(self, s: int) -> int:
        return self.morphisms[s].dom

    def cod(self, s: int) -> int:
        return self.morphisms[s].cod

    def name(self, s: int) -> str:
        return self.morphisms[s].name

    def composable(self, s: int, t: int) -> bool:
        return self.morphisms[s].dom == self.morphisms[t].cod

    def compose(self, s: int, t: int) -> int | None:
        """``st`` or None when the pair is not composable."""
        return self._table.get((s, t))

    def composable_pairs(self):
        return sorted(self._table)

    def is_identity(self, s: int) -> bool:
        return self.identity[self.morphisms[s].dom] == s

    def morphism_id(self, ref) -> int:
        if isinstance(ref, int) and not isinstance(ref, bool):
            if 0 <= ref < len(self.morphisms):
                return ref
        elif ref in self._mor_by_name:
            return self._mor_by_name[ref]
        raise UnknownMorphism(f"unknown morphism {ref!r}", (ref,))

    def object_id(self, ref) -> int:
        if isinstance(ref, int) and not isinstance(ref, bool):
            if 0 <= ref < len(self.objects):
                return ref
        elif ref in self._obj_by_name:
            return self._obj_by_name[ref]
        raise UnknownObject(f"unknown object {ref!r}", (ref,))

    def morphisms_from(self, e: int) -> list[int]:
        return [m.id for m in self.morphisms if m.dom == e]

    def morphisms_into(self, e: int) -> list[int]:
        return [m.id for m in self.morphisms if m.cod == e]

    def loops(self, e: int) -> list[int]:
        """The monoid ``G_e`` of morphisms ``e -> e``."""
        return hom_set(self, e, e)

    def table_key(self) -> tuple:
        if self._key is None:
            self._key = (self.objects, self.morphisms, self.identity, tuple(sorted(self._table.items())))
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return type(self) is type(other) and self.table_key() == other.table_key()

    def __hash__(self) -> int:
        return hash(self.table_key())

    def __repr__(self) -> str:
        return f"{type(self).__name__}(objects={len(self.objects)}, morphisms={len(self.morphisms)})"


class FiniteGroupoid(FiniteCategory):
    def __init__(self, objects, morphisms, identity, table, inverse):
        super().__init__(objects, morphisms, identity, table)
        self.inverse: tuple[int, ...] = tuple(inverse)

    def inv(self, s: int) -> int:
        return self.inverse[s]


@dataclass(frozen=True)
class Subgroupoid:
    parent: FiniteGroupoid
    morphisms: frozenset

    @property
    def objects(self) -> list[int]:
        g = self.parent
        return sorted({g.dom(s) for s in self.morphisms} | {g.cod(s) for s in self.morphisms})

    def sorted_ids(self) -> list[int]:
        return sorted(self.morphisms)

    def names(self) -> list[str]:
        return [self.parent.name(s) for s in self.sorted_ids()]

    def __len__(self) -> int:
        return len(self.morphisms)

    def __contains__(self, s) -> bool:
        return s in self.morphisms

    def __iter__(self):
        return iter(self.sorted_ids())


# parsing and validation


def _resolve(ref, by_name: Mapping[str, int], count: int, what: str, err):
    if isinstance(ref, int) and not isinstance(ref, bool):
        if 0 <= ref < count:
            return ref
    elif isinstance(ref, str) and ref in by_name:
        return by_name[ref]
    raise err(f"unknown {what} {ref!r}", (ref,))


def _parse_morphism(entry, i: int) -> tuple[str, Any, Any]:
    if isinstance(entry, Mapping):
        return str(entry.get("name", i)), entry["dom"], entry["cod"]
    if isinstance(entry, Sequence) and not isinstance(entry, str) and len(entry) == 3:
        name, dom, cod = entry
        return str(name), dom, cod
    raise CategoryError(f"morphism entry {i} must be [name, dom, cod] or a mapping", (i,))


def validate_category(raw: Mapping) -> FiniteCategory:
    """Validate a category description and return the category.

    ``raw`` has keys ``objects`` (names), ``morphisms`` (``[name, dom, cod]``
    entries), ``compose`` (``[s, t, st]`` triples) and optionally
    ``identity`` (object -> morphism).  References may be names or integer
    indices.  Without an ``identity`` map, a loop named like its object is
    taken as the identity; failing that, the unique loop satisfying the
    identity laws.

    Checks, in order: ids, composites present for every composable pair and
    absent otherwise, identity laws, associativity.  An associativity triple
    with one side undefined counts as broken, which also catches composites
    with the wrong domain or codomain.
    """
    objects = [str(o) for o in raw.get("objects", ())]
    if len(set(objects)) != len(objects):
        raise CategoryError("duplicate object names", tuple(objects))
    obj_idx = {name: i for i, name in enumerate(objects)}

    morphisms: list[Morphism] = []
    for i, entry in enumerate(raw.get("morphisms", ())):
        name, dom, cod = _parse_morphism(entry, i)
        d = _resolve(dom, obj_idx, len(objects), "object", UnknownObject)
        c = _resolve(cod, obj_idx, len(objects), "object", UnknownObject)
        morphisms.append(Morphism(i, d, c, name))
    names = [m.name for m in morphisms]
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise CategoryError(f"duplicate morphism names {dup}", tuple(dup))
    mor_idx = {m.name: m.id for m in morphisms}
    n = len(morphisms)

    def mor(ref):
        return _resolve(ref, mor_idx, n, "morphism", UnknownMorphism)

    table: dict[tuple[int, int], int] = {}
    for entry in raw.get("compose", ()):
        if len(entry) != 3:
            raise CategoryError(f"compose entry {entry!r} must be [s, t, st]", (entry,))
        s, t, st = (mor(x) for x in entry)
        if (s, t) in table and table[(s, t)] != st:
            raise CategoryError(
                f"conflicting composites for ({names[s]}, {names[t]})", (s, t, table[(s, t)], st)
            )
        table[(s, t)] = st

    for s, t in product(range(n), repeat=2):
        ok = morphisms[s].dom == morphisms[t].cod
        if ok and (s, t) not in table:
            raise MissingComposite(f"no composite given for ({names[s]}, {names[t]})", (s, t))
        if not ok and (s, t) in table:
            raise SpuriousComposite(
                f"composite given for non-composable pair ({names[s]}, {names[t]})", (s, t)
            )

    identity = _identities(raw, objects, obj_idx, morphisms, table, mor)

    for s in range(n):
        m = morphisms[s]
        right = table.get((s, identity[m.dom]))
        left = table.get((identity[m.cod], s))
        if right != s:
            raise BrokenIdentity(
                f"{names[s]} * id({objects[m.dom]}) != {names[s]}", (s, identity[m.dom])
            )
        if left != s:
            raise BrokenIdentity(
                f"id({objects[m.cod]}) * {names[s]} != {names[s]}", (identity[m.cod], s)
            )

    for (s, t), st in sorted(table.items()):
        for u in range(n):
            if morphisms[t].dom != morphisms[u].cod:
                continue
            tu = table.get((t, u))
            lhs = table.get((st, u))
            rhs = table.get((s, tu)) if tu is not None else None
            if lhs is None or rhs is None or lhs != rhs:
                raise BrokenAssociativity(
                    f"({names[s]}{names[t]}){names[u]} != {names[s]}({names[t]}{names[u]})",
                    (s, t, u),
                )

    return FiniteCategory(objects, morphisms, identity, table)


def _identities(raw, objects, obj_idx, morphisms, table, mor) -> list[int]:
    given = raw.get("identity")
    identity: list[int | None] = [None] * len(objects)
    if given is not None:
        for o, s in given.items():
            e = _resolve(o, obj_idx, len(objects), "object", UnknownObject)
            identity[e] = mor(s)
    for e, name in enumerate(objects):
        if identity[e] is not None:
            continue
        named = [m.id for m in morphisms if m.name == name and m.dom == e and m.cod == e]
        if named:
            identity[e] = named[0]
            continue
        candidates = [
            m.id
            for m in morphisms
            if m.dom == e == m.cod
            and all(table.get((k.id, m.id), k.id) == k.id for k in morphisms if k.dom == e)
            and all(table.get((m.id, k.id), k.id) == k.id for k in morphisms if k.cod == e)
        ]
        if len(candidates) != 1:
            raise BrokenIdentity(f"no unique identity morphism for object {name}", (e,))
        identity[e] = candidates[0]
    for e, s in enumerate(identity):
        m = morphisms[s]
        if m.dom != e or m.cod != e:
            raise BrokenIdentity(f"identity of {objects[e]} is not a loop at it", (e, s))
    return identity


def as_groupoid(cat: FiniteCategory) -> FiniteGroupoid:
    """Inverse table for ``cat``, or :class:`NotAGroupoid` listing the non-invertible morphisms."""
    if isinstance(cat, FiniteGroupoid):
        return cat
    inverse: list[int] = []
    bad: list[int] = []
    for s in cat.ids():
        d, c = cat.dom(s), cat.cod(s)
        found = [
            t
            for t in hom_set(cat, d, c)
            if cat.compose(s, t) == cat.identity[c] and cat.compose(t, s) == cat.identity[d]
        ]
        if found:
            inverse.append(found[0])
        else:
            bad.append(s)
    if bad:
        names = [cat.name(s) for s in bad]
        raise NotAGroupoid(f"morphisms without a two-sided inverse: {names}", tuple(bad))
    return FiniteGroupoid(cat.objects, cat.morphisms, cat.identity, cat._table, inverse)


@dataclass(frozen=True)
class Cancellation:
    ok: bool
    witness: tuple = ()  # ("mono" | "epi", s, t, t2): s t == s t2 or t s == t2 s with t != t2

    def __bool__(self) -> bool:
        return self.ok


def is_cancellative(cat: FiniteCategory) -> Cancellation:
    """Every morphism monic and epic, checked over the whole table."""
    for s in cat.ids():
        seen_left: dict[int, int] = {}
        seen_right: dict[int, int] = {}
        for t in cat.ids():
            st = cat.compose(s, t)
            if st is not None:
                if st in seen_left:
                    return Cancellation(False, ("mono", s, seen_left[st], t))
                seen_left[st] = t
            ts = cat.compose(t, s)
            if ts is not None:
                if ts in seen_right:
                    return Cancellation(False, ("epi", s, seen_right[ts], t))
                seen_right[ts] = t
    return Cancellation(True)


def hom_set(cat: FiniteCategory, f, e) -> list[int]:
    """``G_{f,e}``: morphisms with codomain ``f`` and domain ``e``, in id order."""
    f = cat.object_id(f)
    e = cat.object_id(e)
    return [m.id for m in cat.morphisms if m.cod == f and m.dom == e]


def full_subgroupoid(g: FiniteGroupoid, objects: Iterable[int]) -> Subgroupoid:
    objs = set(objects)
    return Subgroupoid(g, frozenset(s for s in g.ids() if g.dom(s) in objs and g.cod(s) in objs))


def connected_components(g: FiniteGroupoid) -> list[tuple[tuple[int, ...], Subgroupoid]]:
    """Blocks of objects joined by morphisms, each with its full subgroupoid.

    Blocks are ordered by their smallest object.
    """
    parent = list(range(g.n_objects))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in g.morphisms:
        a, b = find(m.dom), find(m.cod)
        if a != b:
            parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for e in range(g.n_objects):
        blocks.setdefault(find(e), []).append(e)
    out = []
    for root in sorted(blocks):
        objs = tuple(blocks[root])
        out.append((objs, full_subgroupoid(g, objs)))
    return out


def closure(g: FiniteGroupoid, generators: Iterable) -> frozenset:
    """Smallest subgroupoid containing ``generators``: identities of touched objects, inverses, composites."""
    members = {g.morphism_id(s) for s in generators}
    frontier = list(members)
    while frontier:
        new = set()
        for s in frontier:
            new.add(g.inv(s))
            new.add(g.identity[g.dom(s)])
            new.add(g.identity[g.cod(s)])
        new -= members
        members |= new
        for s in list(members):
            for t in list(members):
                st = g.compose(s, t)
                if st is not None and st not in members:
                    new.add(st)
                    members.add(st)
        frontier = list(new)
    return frozenset(members)


def subgroupoid(g: FiniteGroupoid, generators: Iterable) -> Subgroupoid:
    return Subgroupoid(g, closure(g, generators))


def is_subgroupoid(g: FiniteGroupoid, morphisms: Iterable[int]) -> bool:
    members = frozenset(morphisms)
    return bool(members) and closure(g, members) == members


def enumerate_subgroupoids(g: FiniteGroupoid, limit: int = SUBGROUPOID_LIMIT) -> list[Subgroupoid]:
    """All nonempty subgroupoids, sorted by size then by sorted morphism ids.

    Every subgroupoid is reached from the closure of one of its morphisms by
    repeatedly adjoining a further morphism and closing, so a search over
    closed sets is exhaustive.
    """
    if len(g) > limit:
        raise TooLarge(f"{len(g)} morphisms exceeds the enumeration limit {limit}", (len(g), limit))
    found: set[frozenset] = set()
    queue = []
    for s in g.ids():
        h = closure(g, [s])
        if h not in found:
            found.add(h)
            queue.append(h)
    while queue:
        h = queue.pop()
        for s in g.ids():
            if s in h:
                continue
            k = closure(g, h | {s})
            if k not in found:
                found.add(k)
                queue.append(k)
    return [Subgroupoid(g, h) for h in sorted(found, key=lambda h: (len(h), sorted(h)))]


def to_doc(cat: FiniteCategory) -> dict:
    """Description accepted by :func:`validate_category` (names throughout)."""
    doc = {
        "objects": list(cat.objects),
        "morphisms": [[m.name, cat.objects[m.dom], cat.objects[m.cod]] for m in cat.morphisms],
        "identity": {cat.objects[e]: cat.name(s) for e, s in enumerate(cat.identity)},
        "compose": [[cat.name(s), cat.name(t), cat.name(st)] for (s, t), st in sorted(cat._table.items())],
    }
    if isinstance(cat, FiniteGroupoid):
        doc["inverse"] = {cat.name(s): cat.name(cat.inv(s)) for s in cat.ids()}
    return doc


def from_doc(doc: Mapping) -> FiniteCategory:
    """Validate ``doc``; when it carries an ``inverse`` table, return the groupoid and check the table."""
    cat = validate_category(doc)
    if "inverse" not in doc:
        return cat
    g = as_groupoid(cat)
    for s, t in doc["inverse"].items():
        s, t = g.morphism_id(s), g.morphism_id(t)
        if g.inv(s) != t:
            raise NotAGroupoid(f"listed inverse of {g.name(s)} is wrong", (s, t))
    return g


def category_from_table(objects: Sequence[str], morphisms: Sequence[tuple], compose) -> FiniteCategory:
    """Build and validate a category from a composition function on morphism ids.

    ``morphisms`` holds ``(name, dom, cod)`` with dom/cod object indices;
    ``compose(s, t)`` is only called on composable pairs.
    """
    morphisms = list(morphisms)
    triples = [
        [s, t, compose(s, t)]
        for s, t in product(range(len(morphisms)), repeat=2)
        if morphisms[s][1] == morphisms[t][2]
    ]
    return validate_category({"objects": list(objects), "morphisms": morphisms, "compose": triples})
