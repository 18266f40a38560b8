"""Named categories, groupoids and gradings used by the CLI and the tests.

Every finite groupoid is a disjoint union of pair groupoids crossed with a
group, so the random generators below build exactly those, then shuffle the
morphism ids so nothing depends on a friendly ordering.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Sequence

from .construction import SelectionSpec, build_das, monoid_category
from .groupoid import FiniteCategory, FiniteGroupoid, as_groupoid, to_doc, validate_category


def group_category(names: Sequence[str], mul: Callable[[int, int], int], obj: str = "*") -> FiniteGroupoid:
    """One-object groupoid on ``names`` with ``names[mul(a, b)]`` the product ``ab``; element 0 is the identity."""
    k = len(names)
    doc = {
        "objects": [obj],
        "morphisms": [[n, obj, obj] for n in names],
        "identity": {obj: names[0]},
        "compose": [[names[a], names[b], names[mul(a, b)]] for a in range(k) for b in range(k)],
    }
    return as_groupoid(validate_category(doc))


def cyclic_group(n: int) -> FiniteGroupoid:
    return group_category([str(i) for i in range(n)], lambda a, b: (a + b) % n)


def z4() -> FiniteGroupoid:
    return cyclic_group(4)


def trivial_group() -> FiniteGroupoid:
    return group_category(["e"], lambda a, b: 0, obj="e")


def klein_four() -> FiniteGroupoid:
    return group_category(["1", "a", "b", "ab"], lambda x, y: x ^ y)


def symmetric_group3() -> FiniteGroupoid:
    perms = list(itertools.permutations(range(3)))
    names = ["".join(str(i) for i in p) for p in perms]
    where = {p: i for i, p in enumerate(perms)}
    # ab means "first b, then a"
    return group_category(names, lambda a, b: where[tuple(perms[a][perms[b][i]] for i in range(3))])


def pair_group_groupoid(k: int, names: Sequence[str], mul: Callable[[int, int], int], prefix: str = "") -> FiniteGroupoid:
    """Pair groupoid on ``k`` objects crossed with a group.

    The morphism ``(i, j, g)`` goes from object ``j`` to object ``i``; ``(i, j, g)(j, l, h) = (i, l, gh)``.
    """
    objects = [f"{prefix}o{i}" for i in range(k)]
    mors = [(i, j, g) for i in range(k) for j in range(k) for g in range(len(names))]
    label = {m: f"{prefix}{names[m[2]]}[{m[0]}{m[1]}]" for m in mors}
    doc = {
        "objects": objects,
        "morphisms": [[label[m], objects[m[1]], objects[m[0]]] for m in mors],
        "identity": {objects[i]: label[(i, i, 0)] for i in range(k)},
        "compose": [
            [label[a], label[b], label[(a[0], b[1], mul(a[2], b[2]))]]
            for a in mors
            for b in mors
            if a[1] == b[0]
        ],
    }
    return as_groupoid(validate_category(doc))


def pair_groupoid(k: int) -> FiniteGroupoid:
    return pair_group_groupoid(k, ["g"], lambda a, b: 0)


def two_object_groupoid() -> FiniteGroupoid:
    """Objects ``e``, ``f``; loops ``e, alpha`` and ``f, beta``; ``t0, t1 : e -> f``; ``u0, u1 : f -> e``.

    Isomorphic to the pair groupoid on two objects crossed with ``Z_2``; the
    table is written out so that the defining relations (``alpha^2 = e``,
    ``u0 t0 = e``, ``t0 u1 = beta``, ...) can be read off directly.
    """
    # name -> (codomain, domain, bit); composition adds bits mod 2
    model = {
        "e": ("e", "e", 0),
        "alpha": ("e", "e", 1),
        "t0": ("f", "e", 0),
        "t1": ("f", "e", 1),
        "f": ("f", "f", 0),
        "beta": ("f", "f", 1),
        "u0": ("e", "f", 0),
        "u1": ("e", "f", 1),
    }
    back = {v: k for k, v in model.items()}
    compose = []
    for s, (cs, ds, bs) in model.items():
        for t, (ct, dt, bt) in model.items():
            if ds == ct:
                compose.append([s, t, back[(cs, dt, (bs + bt) % 2)]])
    doc = {
        "objects": ["e", "f"],
        "morphisms": [[name, dom, cod] for name, (cod, dom, _) in model.items()],
        "identity": {"e": "e", "f": "f"},
        "compose": compose,
    }
    return as_groupoid(validate_category(doc))


def four_morphism_groupoid() -> FiniteGroupoid:
    """``{id_e, id_f, t : f -> e, t^-1}``."""
    doc = {
        "objects": ["e", "f"],
        "morphisms": [["e", "e", "e"], ["f", "f", "f"], ["t", "f", "e"], ["t_inv", "e", "f"]],
        "identity": {"e": "e", "f": "f"},
        "compose": [
            ["e", "e", "e"], ["f", "f", "f"],
            ["t", "f", "t"], ["e", "t", "t"],
            ["t_inv", "e", "t_inv"], ["f", "t_inv", "t_inv"],
            ["t", "t_inv", "e"], ["t_inv", "t", "f"],
        ],
    }
    return as_groupoid(validate_category(doc))


def disjoint_union(*cats: FiniteCategory) -> FiniteCategory:
    """Disjoint union; names get a ``k:`` prefix for the k-th summand."""
    doc = {"objects": [], "morphisms": [], "identity": {}, "compose": []}
    groupoid = all(isinstance(c, FiniteGroupoid) for c in cats)
    for k, cat in enumerate(cats):
        sub = to_doc(cat)
        p = f"{k}:"
        doc["objects"] += [p + o for o in sub["objects"]]
        doc["morphisms"] += [[p + n, p + d, p + c] for n, d, c in sub["morphisms"]]
        doc["identity"].update({p + o: p + s for o, s in sub["identity"].items()})
        doc["compose"] += [[p + s, p + t, p + st] for s, t, st in sub["compose"]]
    cat = validate_category(doc)
    return as_groupoid(cat) if groupoid else cat


def arrow_category() -> FiniteCategory:
    """``e -> f``: two identities and one arrow ``a``."""
    return validate_category(
        {
            "objects": ["e", "f"],
            "morphisms": [["e", "e", "e"], ["f", "f", "f"], ["a", "e", "f"]],
            "compose": [["e", "e", "e"], ["f", "f", "f"], ["a", "e", "a"], ["f", "a", "a"]],
        }
    )


def chain_category(k: int) -> FiniteCategory:
    """The poset ``0 < 1 < ... < k-1`` as a category."""
    objects = [str(i) for i in range(k)]
    mors = [(i, j) for i in range(k) for j in range(i, k)]  # i -> j
    label = {(i, j): (objects[i] if i == j else f"{i}<{j}") for i, j in mors}
    return validate_category(
        {
            "objects": objects,
            "morphisms": [[label[m], objects[m[0]], objects[m[1]]] for m in mors],
            "compose": [[label[(b, c)], label[(a, b)], label[(a, c)]] for (a, b) in mors for (b2, c) in mors if b2 == b],
        }
    )


def transformation_monoid(gens: Sequence[tuple[int, ...]], points: int = 3) -> FiniteCategory:
    """Monoid of maps on ``points`` points generated by ``gens``; usually not cancellative."""
    ident = tuple(range(points))
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(points))  # first x, then g
                if y not in elems:
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    names = ["id" if x == ident else "".join(map(str, x)) for x in elems]
    where = {x: i for i, x in enumerate(elems)}
    doc = {
        "objects": ["*"],
        "morphisms": [[n, "*", "*"] for n in names],
        "identity": {"*": "id"},
        "compose": [
            [names[a], names[b], names[where[tuple(elems[a][elems[b][i]] for i in range(points))]]]
            for a in range(len(elems))
            for b in range(len(elems))
        ],
    }
    return validate_category(doc)


# gradings


def z4_grading():
    """``M_5`` graded by ``Z_4`` from the selection ``0, 1, 2, 3, 3``."""
    g = z4()
    ga, _ = build_das(SelectionSpec.of(g, ["0", "1", "2", "3", "3"]))
    return ga


TWO_OBJECT_SELECTION = ["f", "beta", "u0", "u1", "t0", "t1", "alpha", "e", "e"]


def two_object_grading():
    """Subring of ``M_9`` graded by :func:`two_object_groupoid`."""
    g = two_object_groupoid()
    ga, _ = build_das(SelectionSpec.of(g, TWO_OBJECT_SELECTION))
    return ga


FIXTURES = {
    "z4": (z4, ["0", "1", "2", "3", "3"]),
    "two-object": (two_object_groupoid, TWO_OBJECT_SELECTION),
    "monoid-counterexample": (monoid_category, None),
    "four-morphism": (four_morphism_groupoid, ["e", "f", "t", "t_inv"]),
    "trivial": (trivial_group, ["e"]),
    "klein": (klein_four, ["1", "a", "b", "ab"]),
}


def fixture_doc(name: str) -> dict:
    """Document for a named fixture, with its default selection when it has one."""
    build, selection = FIXTURES[name]
    doc = to_doc(build())
    if selection is not None:
        doc["selection"] = list(selection)
    return doc


# random corpora

_GROUPS = [
    (["0"], lambda a, b: 0),
    (["0", "1"], lambda a, b: (a + b) % 2),
    (["0", "1", "2"], lambda a, b: (a + b) % 3),
    (["0", "1", "2", "3"], lambda a, b: (a + b) % 4),
    (["1", "a", "b", "ab"], lambda a, b: a ^ b),
]


def _relabel(g: FiniteCategory, rng: random.Random) -> FiniteCategory:
    """Same category with morphism ids shuffled."""
    doc = to_doc(g)
    rng.shuffle(doc["morphisms"])
    out = validate_category(doc)
    return as_groupoid(out) if isinstance(g, FiniteGroupoid) else out


def random_group(rng: random.Random) -> FiniteGroupoid:
    kind = rng.choice(["cyclic", "cyclic", "klein"])
    return klein_four() if kind == "klein" else cyclic_group(rng.randint(1, 6))


def random_groupoid(rng: random.Random, max_objects: int = 3, max_morphisms: int = 12) -> FiniteGroupoid:
    """Disjoint union of pair groupoids crossed with small groups, within the size bounds."""
    parts = []
    objects = morphisms = 0
    while True:
        options = [
            (k, gi)
            for k in range(1, max_objects - objects + 1)
            for gi, (names, _) in enumerate(_GROUPS)
            if morphisms + k * k * len(names) <= max_morphisms
        ]
        if not options or (parts and rng.random() < 0.5):
            break
        k, gi = rng.choice(options)
        names, mul = _GROUPS[gi]
        parts.append(pair_group_groupoid(k, names, mul, prefix=f"c{len(parts)}"))
        objects += k
        morphisms += k * k * len(names)
    g = parts[0] if len(parts) == 1 else disjoint_union(*parts)
    return _relabel(g, rng)


def random_transformation_monoid(rng: random.Random, points: int = 3, max_size: int = 12) -> FiniteCategory:
    """Random finitely generated transformation monoid with at most ``max_size`` elements."""
    while True:
        gens = [tuple(rng.randrange(points) for _ in range(points)) for _ in range(rng.randint(1, 2))]
        m = transformation_monoid(gens, points)
        if len(m) <= max_size:
            return m


def random_selection(rng: random.Random, cat: FiniteCategory, max_len: int = 8) -> list[int]:
    """Arbitrary nonempty selection, repeats allowed."""
    return [rng.randrange(len(cat)) for _ in range(rng.randint(1, max_len))]


def covering_selection(rng: random.Random, cat: FiniteCategory, max_extra: int = 2) -> list[int]:
    """Every morphism once plus up to ``max_extra`` duplicates, shuffled."""
    sel = list(cat.ids()) + [rng.randrange(len(cat)) for _ in range(rng.randint(0, max_extra))]
    rng.shuffle(sel)
    return sel
