#!/usr/bin/env python3
"""Regenerate the graph corpus in crates/core/corpus.

Rotation systems are derived from coordinates: planar layouts for 2D
graphs, outward normals for convex polyhedra. Every rotation lists the
incident edges counter-clockwise (seen from outside for polyhedra).
"""
import itertools
import math
import os
import sys

import numpy as np

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "corpus")


def rotation_2d(pos, edges, v, missing_angle=None):
    inc = []
    for (lab, a, b) in edges:
        if a == v or b == v:
            w = b if a == v else a
            d = np.array(pos[w]) - np.array(pos[v])
            inc.append((math.atan2(d[1], d[0]) % (2 * math.pi), lab))
    inc.sort()
    if missing_angle is not None and len(inc) == 2:
        # start right after the missing direction so the appended loop sits there
        m = missing_angle % (2 * math.pi)
        inc.sort(key=lambda t: (t[0] - m) % (2 * math.pi))
    return [lab for _, lab in inc]


def rotation_3d(pos, edges, v):
    p = np.array(pos[v], dtype=float)
    n = p / np.linalg.norm(p)
    ref = None
    inc = []
    for (lab, a, b) in edges:
        if a == v or b == v:
            w = b if a == v else a
            d = np.array(pos[w], dtype=float) - p
            d = d - n * np.dot(d, n)
            if ref is None:
                ref = d / np.linalg.norm(d)
                ref2 = np.cross(n, ref)
            inc.append((math.atan2(np.dot(d, ref2), np.dot(d, ref)) % (2 * math.pi), lab))
    inc.sort()
    return [lab for _, lab in inc]


def trace_faces(nv, edges, rot):
    ends = {lab: (a, b) for (lab, a, b) in edges}
    darts = []
    for v in range(nv):
        for lab in rot[v]:
            a, b = ends[lab]
            darts.append((v, b if a == v else a, lab))
    seen = set()
    faces = []
    for d in darts:
        if d in seen:
            continue
        face = []
        cur = d
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            u, v, lab = cur
            r = rot[v]
            nxt = r[(r.index(lab) + 1) % len(r)]
            a, b = ends[nxt]
            cur = (v, b if a == v else a, nxt)
        faces.append(face)
    return faces


def write(name, nv, edges, rot=None, outer=None, comment=""):
    lines = []
    for c in comment.strip().splitlines():
        lines.append("# " + c)
    lines.append(f"vertices {nv}")
    for (lab, a, b) in edges:
        lines.append(f"edge {lab} {a} {b}")
    if rot is not None:
        for v in range(nv):
            if rot[v]:
                lines.append(f"rotation {v}: " + " ".join(rot[v]))
        faces = trace_faces(nv, edges, rot)
        assert len(faces) + nv - len(edges) == 2, (name, len(faces))
        if outer is not None:
            f = faces[outer]
            lines.append("outer_face: " + ",".join(d[2] for d in f))
    with open(os.path.join(OUT, name), "w") as fh:
        fh.write("\n".join(lines) + "\n")


def cube():
    pos = {}
    for v in range(8):
        x, y, z = v & 1, (v >> 1) & 1, (v >> 2) & 1
        pos[v] = (x - 0.5, y - 0.5, z - 0.5)
    edges = []
    for axis, bit in (("x", 1), ("y", 2), ("z", 4)):
        for v in range(8):
            if not v & bit:
                edges.append((f"{axis}{v}{v | bit}", v, v | bit))
    rot = [rotation_3d(pos, edges, v) for v in range(8)]
    faces = trace_faces(8, edges, rot)
    top = [i for i, f in enumerate(faces) if all(d[0] >= 4 for d in f)][0]
    write("cube.graph", 8, edges, rot, outer=top,
          comment="Cube; vertex number = binary zyx coordinates.\nEdge labels: axis letter + endpoints. Outer face: top (z=1).")


def dodecahedron():
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for s in itertools.product((-1, 1), repeat=3):
        pts.append(s)
    for a, b in itertools.product((-1, 1), repeat=2):
        pts.append((0, a / phi, b * phi))
        pts.append((a / phi, b * phi, 0))
        pts.append((a * phi, 0, b / phi))
    pos = {i: p for i, p in enumerate(pts)}
    edges = []
    for i in range(20):
        for j in range(i + 1, 20):
            if abs(np.linalg.norm(np.subtract(pts[i], pts[j])) - 2 / phi) < 1e-9:
                edges.append((f"e{len(edges)}", i, j))
    assert len(edges) == 30
    rot = [rotation_3d(pos, edges, v) for v in range(20)]
    write("dodecahedron.graph", 20, edges, rot, comment="Regular dodecahedron (12 pentagonal faces).")


def honeycomb():
    # coronene: a central hexagon with its six neighbours
    centers = [(0.0, 0.0)]
    for k in range(6):
        ang = k * math.pi / 3
        centers.append((math.sqrt(3) * math.cos(ang), math.sqrt(3) * math.sin(ang)))
    verts = []

    def vid(p):
        for i, q in enumerate(verts):
            if abs(p[0] - q[0]) < 1e-6 and abs(p[1] - q[1]) < 1e-6:
                return i
        verts.append(p)
        return len(verts) - 1

    for (cx, cy) in centers:
        for k in range(6):
            ang = math.pi / 2 + k * math.pi / 3
            vid((round(cx + math.cos(ang), 9), round(cy + math.sin(ang), 9)))
    order = sorted(range(len(verts)), key=lambda i: (-round(verts[i][1], 6), round(verts[i][0], 6)))
    verts = [verts[i] for i in order]
    pos = dict(enumerate(verts))
    edges = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            d = np.subtract(verts[j], verts[i])
            if abs(np.linalg.norm(d) - 1) < 1e-6:
                ang = math.degrees(math.atan2(d[1], d[0])) % 180
                cls = {90: "v", 30: "p", 150: "m"}[int(round(ang))]
                edges.append((f"{cls}{len(edges)}", i, j))
    rot = []
    for v in range(len(verts)):
        deg = sum(1 for e in edges if v in e[1:])
        missing = None
        if deg == 2:
            dirs = []
            for (lab, a, b) in edges:
                if v in (a, b):
                    w = b if a == v else a
                    d = np.subtract(verts[w], verts[v])
                    dirs.append(math.atan2(d[1], d[0]))
            # the third lattice direction is opposite to the sum of the two present ones
            sx = sum(math.cos(t) for t in dirs)
            sy = sum(math.sin(t) for t in dirs)
            missing = math.atan2(-sy, -sx)
        rot.append(rotation_2d(pos, edges, v, missing))
    write("honeycomb.graph", len(verts), edges, rot,
          comment="Honeycomb patch (coronene, 7 hexagons).\nLabel prefix = lattice direction class (v vertical, p +30deg, m -30deg).\nDegree-2 rotations start after the missing lattice direction.")


def hexagon():
    pos = {k: (math.cos(math.pi / 2 + k * math.pi / 3), math.sin(math.pi / 2 + k * math.pi / 3)) for k in range(6)}
    edges = [(f"h{k}", k, (k + 1) % 6) for k in range(6)]
    rot = []
    for v in range(6):
        p = pos[v]
        rot.append(rotation_2d(pos, edges, v, math.atan2(p[1], p[0])))
    write("hexagon.graph", 6, edges, rot, comment="Single honeycomb hexagon; every vertex gets one loop.")


def planar(name, pos, edges, comment, outer=None):
    nv = len(pos)
    rot = [rotation_2d(pos, edges, v) for v in range(nv)]
    write(name, nv, edges, rot, outer=outer, comment=comment)


def main():
    os.makedirs(OUT, exist_ok=True)
    cube()
    dodecahedron()
    honeycomb()
    hexagon()
    planar("triangle.graph", {0: (0, 0), 1: (1, 0), 2: (0.5, 0.8)},
           [("A", 0, 1), ("B", 1, 2), ("C", 2, 0)], "Triangle (odd cycle).")
    planar("path3.graph", {0: (0, 0), 1: (1, 0), 2: (2, 0)},
           [("B", 0, 1), ("C", 1, 2)], "Three-vertex path v1 - v2 - v3 with edges B, C.")
    planar("k4.graph", {0: (0, 0), 1: (2, 0), 2: (1, 2), 3: (1, 0.7)},
           [("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("d", 0, 3), ("e", 1, 3), ("f", 2, 3)],
           "Complete graph on four vertices (tetrahedron).")
    planar("prism.graph", {0: (0, 0), 1: (4, 0), 2: (2, 3.5), 3: (1.5, 1), 4: (2.5, 1), 5: (2, 1.9)},
           [("o1", 0, 1), ("o2", 1, 2), ("o3", 2, 0), ("i1", 3, 4), ("i2", 4, 5), ("i3", 5, 3),
            ("s1", 0, 3), ("s2", 1, 4), ("s3", 2, 5)],
           "Triangular prism: two triangles and three quadrilaterals.")
    planar("noncolorable.graph", {0: (0, 0), 1: (2, 0), 2: (1, 2), 3: (1, 0.7), 4: (1, -0.6)},
           [("a", 0, 4), ("g", 4, 1), ("b", 1, 2), ("c", 2, 0), ("d", 0, 3), ("e", 1, 3), ("f", 2, 3)],
           "Tetrahedron with one edge subdivided: planar, maximal degree 3,\n5 vertices and 7 edges, hence no proper edge-3-coloring.")
    line = {v: (v, 0) for v in range(5)}
    edges = [(f"s{v}", v, v + 1) for v in range(4)]
    rot = []
    for v in range(5):
        r = []
        if v < 4:
            r.append(f"s{v}")
        if v > 0:
            r.append(f"s{v - 1}")
        rot.append(r)
    write("line5.graph", 5, edges, rot,
          comment="Line segment of five sites -2..2 (ids 0..4). Rotation lists the\nright-going edge first so slot 0 = '+' and slot 1 = '-'.")
    write("single.graph", 1, [], None, comment="A single vertex without edges.")
    pet = [(f"o{i}", i, (i + 1) % 5) for i in range(5)] + [(f"s{i}", i, i + 5) for i in range(5)] + \
          [(f"i{i}", 5 + i, 5 + (i + 2) % 5) for i in range(5)]
    write("petersen.graph", 10, pet, comment="Petersen graph (non-planar, no rotation system).")
    k33 = [(f"k{a}{b}", a, 3 + b) for a in range(3) for b in range(3)]
    write("k33.graph", 6, k33, comment="Complete bipartite graph K3,3 (non-planar, no rotation system).")


if __name__ == "__main__":
    sys.exit(main())
