"""Independent reference values for the semigroup and polytope tests.

Cone facets come from scipy's hull of the generators; semigroup elements are
enumerated as explicit sums of generators.
"""
import itertools
import json
import math

import numpy as np
from scipy.spatial import ConvexHull


def total_matrix(rays, d):
    n = len(rays[0])
    c = len(d)
    cols = [list(r) + [row[i] for row in d] for i, r in enumerate(rays)]
    for j in range(c):
        e = [0] * (n + c)
        e[n + j] = 1
        cols.append(e)
    return cols


def homogenize(cols):
    dim = len(cols[0])
    return [[1] + [0] * dim] + [[1] + list(c) for c in cols]


def cone_facets(cols):
    pts = np.array([[0.0] * len(cols[0])] + [list(map(float, c)) for c in cols])
    hull = ConvexHull(pts)
    out = []
    for eq in hull.equations:
        normal, off = -eq[:-1], -eq[-1]
        if abs(off) < 1e-9:
            out.append(normal)
    return out


def in_cone(x, facets, strict=False):
    for f in facets:
        v = float(np.dot(f, x))
        if strict and v <= 1e-9:
            return False
        if v < -1e-9:
            return False
    return True


def sums_up_to(cols, degree):
    elems = {tuple([0] * len(cols[0]))}
    frontier = set(elems)
    for _ in range(degree):
        new = set()
        for p in frontier:
            for g in cols:
                q = tuple(a + b for a, b in zip(p, g))
                if q[0] <= degree:
                    new.add(q)
        frontier = new - elems
        elems |= new
    return elems


def cone_points(cols, degree):
    facets = cone_facets(cols)
    dim = len(cols[0])
    lo = [min(0, min(c[i] for c in cols) * degree) for i in range(dim)]
    hi = [max(0, max(c[i] for c in cols) * degree) for i in range(dim)]
    pts = []
    for x in itertools.product(*[range(lo[i], hi[i] + 1) for i in range(dim)]):
        if x[0] <= degree and in_cone(x, facets):
            pts.append(x)
    return pts, facets


def analyse(name, rays, d, degree=6):
    a2 = homogenize(total_matrix(rays, d))
    pts, facets = cone_points(a2, degree)
    elems = sums_up_to(a2, degree)
    missing = sorted((p for p in pts if p not in elems), key=lambda p: (p[0], p))
    c = len(d)
    shift = [sum(v) for v in zip(a2[0], *a2[len(a2) - c:])]
    interior = {p for p in pts if in_cone(p, facets, strict=True)}
    shifted = {tuple(a + b for a, b in zip(p, shift)) for p in elems if p[0] <= degree - (c + 1)}
    res = {
        "name": name,
        "cone_points": len(pts),
        "missing": [list(p) for p in missing[:5]],
        "missing_count": len(missing),
        "min_missing_degree": missing[0][0] if missing else None,
    }
    if not missing:
        res["interior"] = len(interior)
        res["shift_holds"] = interior == shifted
    return res


def hull_volume(points):
    pts = np.array(points, dtype=float)
    dim = pts.shape[1]
    return round(ConvexHull(pts).volume * math.factorial(dim))


if __name__ == "__main__":
    p1 = [[1], [-1]]
    p2 = [[1, 0], [0, 1], [-1, -1]]
    p1p1 = [[1, 0], [-1, 0], [0, 1], [0, -1]]
    f3 = [[1, 0], [0, 1], [-1, 3], [0, -1]]
    out = [
        analyse("P1/O(2)", p1, [[2, 0]]),
        analyse("P2", p2, []),
        analyse("P2/O(1)", p2, [[1, 0, 0]]),
        analyse("P1xP1/O(1,1)", p1p1, [[1, 0, 1, 0]]),
        analyse("P1", p1, [], degree=5),
        analyse("F3/-K", f3, [[1, 1, 1, 1]]),
    ]
    vols = {
        "P2": hull_volume([[0, 0]] + p2),
        "P1xP1": hull_volume([[0, 0]] + p1p1),
        "F1": hull_volume([[0, 0], [1, 0], [0, 1], [-1, 1], [0, -1]]),
        "P1/O(2)": hull_volume([[0, 0]] + total_matrix(p1, [[2, 0]])),
        "P2/O(1)": hull_volume([[0, 0, 0]] + total_matrix(p2, [[1, 0, 0]])),
        "P1xP1/O(1,1)": hull_volume([[0, 0, 0]] + total_matrix(p1p1, [[1, 0, 1, 0]])),
        "F3/-K": hull_volume([[0, 0, 0]] + total_matrix(f3, [[1, 1, 1, 1]])),
    }
    print(json.dumps({"semigroups": out, "volumes": vols}, indent=1))
