#!/usr/bin/env python3
"""Regenerate the bundled instance corpus under corpus/.

Tables are built here from first principles (modular arithmetic,
permutation composition, quaternion units) so the corpus does not depend on
the C++ builders it is used to test.
"""

import argparse
from pathlib import Path


class Group:
    def __init__(self, name, elements, mul, names=None):
        self.name = name
        self.elements = list(elements)
        index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        self.mul = [[index[mul(a, b)] for b in self.elements] for a in self.elements]
        self.unit = next((i for i in range(n)
                          if all(self.mul[i][j] == j for j in range(n))), None)
        self.inv = [next(j for j in range(n) if self.mul[i][j] == self.unit)
                    for i in range(n)]
        self.names = names

    def __len__(self):
        return len(self.elements)


def cyclic(n):
    return Group(f"z{n}", range(n), lambda a, b: (a + b) % n)


def product(g, h, name):
    elems = [(a, b) for a in range(len(g)) for b in range(len(h))]
    return Group(name, elems,
                 lambda x, y: (g.mul[x[0]][y[0]], h.mul[x[1]][y[1]]))


def compose(p, q):
    # apply p first, then q
    return tuple(q[p[i]] for i in range(len(p)))


def s3():
    # e, (12), (13), (23), (123), (132); element 1 is a transposition
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ["e", "t12", "t13", "t23", "c123", "c132"]
    return Group("s3", perms, compose, names)


def d4():
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    e = (0, 1, 2, 3)
    rots = [e]
    for _ in range(3):
        rots.append(compose(rots[-1], r))
    elems = rots + [compose(x, s) for x in rots]
    names = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
    return Group("d4", elems, compose, names)


def q8():
    # quaternion units as (sign, axis) with axis in 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(a, b):
        sign, axis = table[(a[1], b[1])]
        return (a[0] * b[0] * sign, axis)

    elems = [(s, ax) for s in (1, -1) for ax in ("1", "i", "j", "k")]
    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return Group("q8", elems, mul, names)


def group_doc(g, context="gp", comment=None):
    n = len(g)
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines += [f"context {context}", f"carrier {n}"]
    if g.names:
        lines.append("names " + " ".join(g.names))
    if n:
        lines.append("op mul 2")
        lines += [" ".join(map(str, row)) for row in g.mul]
        lines.append("op inv 1")
        lines.append(" ".join(map(str, g.inv)))
    else:
        lines += ["op mul 2", "op inv 1"]
    return "\n".join(lines) + "\n"


class Groupoid:
    """Arrows as (src, tgt, label) triples; composition in diagrammatic order."""

    def __init__(self, objects, arrows, comp, inv, identity, object_names=None):
        self.objects = objects
        self.arrows = arrows
        self.index = {a: i for i, a in enumerate(arrows)}
        self.comp = comp
        self.inv = inv
        self.identity = identity
        self.object_names = object_names


def connected(k, g, object_names):
    arrows = [(i, j, x) for i in range(k) for j in range(k) for x in range(len(g))]
    return Groupoid(
        k, arrows,
        lambda a, b: (a[0], b[1], g.mul[a[2]][b[2]]),
        lambda a: (a[1], a[0], g.inv[a[2]]),
        [(i, i, g.unit) for i in range(k)],
        object_names)


def disjoint(components, object_names):
    """components: list of (objects, Groupoid); objects are renumbered."""
    arrows, comps, invs, ids = [], {}, {}, []
    offset = 0
    for gpd in components:
        def lift(a, off=offset):
            return (a[0] + off, a[1] + off, a[2])
        for a in gpd.arrows:
            la = lift(a)
            arrows.append(la)
            invs[la] = lift(gpd.inv(a))
            for b in gpd.arrows:
                if a[1] == b[0]:
                    comps[(la, lift(b))] = lift(gpd.comp(a, b))
        ids += [lift(i) for i in gpd.identity]
        offset += gpd.objects
    return Groupoid(offset, arrows, lambda a, b: comps[(a, b)], lambda a: invs[a], ids,
                    object_names)


def groupoid_doc(gpd, comment):
    n = len(gpd.arrows)
    idx = gpd.index
    lines = [f"# {comment}", "context gpds", f"carrier {n}", f"objects {gpd.objects}"]
    if gpd.object_names:
        lines.append("object-names " + " ".join(gpd.object_names))
    lines.append("src " + " ".join(str(a[0]) for a in gpd.arrows))
    lines.append("tgt " + " ".join(str(a[1]) for a in gpd.arrows))
    lines.append("id " + " ".join(str(idx[i]) for i in gpd.identity))
    lines.append("op comp 2")
    for a in gpd.arrows:
        for b in gpd.arrows:
            if a[1] == b[0]:
                lines.append(f"{idx[a]} {idx[b]} {idx[gpd.comp(a, b)]}")
    lines.append("end")
    lines.append("op inv 1")
    lines.append(" ".join(str(idx[gpd.inv(a)]) for a in gpd.arrows))
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=Path(__file__).resolve().parent.parent / "corpus",
                        type=Path)
    args = parser.parse_args()

    z = {n: cyclic(n) for n in range(1, 9)}
    groups = [z[n] for n in range(1, 9)] + [
        product(z[2], z[2], "z2xz2"),
        product(z[2], z[4], "z2xz4"),
        product(product(z[2], z[2], "z2xz2"), z[2], "z2x3"),
        s3(), d4(), q8(),
    ]
    files = {}
    for g in groups:
        files[f"gp/{g.name}.alg"] = group_doc(g, comment=f"group {g.name}")

    trivial = z[1]
    files["gpds/disc2_z2.alg"] = groupoid_doc(
        disjoint([connected(1, z[2], None), connected(1, z[2], None)], ["a", "b"]),
        "two objects, vertex groups Z2, no arrows between them")
    files["gpds/codisc2.alg"] = groupoid_doc(
        connected(2, trivial, ["a", "b"]), "codiscrete groupoid on two objects")
    files["gpds/conn2_z2.alg"] = groupoid_doc(
        connected(2, z[2], ["a", "b"]), "connected, two objects, vertex group Z2")
    files["gpds/codisc3.alg"] = groupoid_doc(
        connected(3, trivial, ["a", "b", "c"]), "codiscrete groupoid on three objects")
    files["gpds/mixed3.alg"] = groupoid_doc(
        disjoint([connected(2, z[2], None), connected(1, z[2], None)], ["a", "b", "c"]),
        "component {a,b} with vertex group Z2 plus c with vertex group Z2")
    files["gpds/conn2_z3.alg"] = groupoid_doc(
        connected(2, z[3], ["a", "b"]), "connected, two objects, vertex group Z3")
    files["gpds/one_s3.alg"] = groupoid_doc(
        connected(1, s3(), ["a"]), "one object with vertex group S3")
    files["gpds/disc3_mixed.alg"] = groupoid_doc(
        disjoint([connected(1, z[3], None), connected(1, z[2], None),
                  connected(1, trivial, None)], ["a", "b", "c"]),
        "three objects, vertex groups Z3, Z2, 1, totally disconnected")
    files["gpds-large/conn2_klein.alg"] = groupoid_doc(
        connected(2, product(z[2], z[2], "z2xz2"), ["a", "b"]),
        "connected, two objects, vertex group Z2xZ2")
    files["gpds-large/conn2_z4.alg"] = groupoid_doc(
        connected(2, z[4], ["a", "b"]), "connected, two objects, vertex group Z4")

    empty = Group("empty", [], lambda a, b: None)
    files["gpcirc/empty.alg"] = group_doc(empty, "gpcirc", "the initial algebra")
    for g in [z[1], z[2], z[3], z[4], product(z[2], z[2], "z2xz2"), s3()]:
        files[f"gpcirc/{g.name}.alg"] = group_doc(g, "gpcirc", f"{g.name} in gpcirc")

    for rel, text in files.items():
        path = args.out / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


if __name__ == "__main__":
    main()
