"""Pure-Python twisted-conjugacy orbit kernel.

Reference implementation of the box-enumeration union-find used by the
Reidemeister oracle. The compiled twin in _orbit_cy.pyx must agree with this
function exactly; both count the classes that meet the inner box.

Node layout: flat index y_idx * mod + theta, where y_idx runs over the cube
[-be, be]^r in odometer order (coordinate 0 fastest) and theta over Z_mod.
Each conjugator row carries (d, a, t): the free-part shift d = (Id - M) k,
the torsion twist a = P(M k), and the torsion offset t of phi(S^k). Twisted
conjugation by (k, l) sends (y, theta) to
(y + d, a * (pinv[y] * l + theta - t - mu * l) mod mod),
and the pair is unioned whenever y + d stays inside the box.
"""

from __future__ import annotations

from typing import Sequence


def twisted_orbit_count(
    r: int,
    mod: int,
    be: int,
    inner: int,
    mu: int,
    pinv: Sequence[int],
    dvecs: Sequence[int],
    avals: Sequence[int],
    tvals: Sequence[int],
) -> int:
    side = 2 * be + 1
    n_y = side**r
    n_nodes = n_y * mod
    parent = list(range(n_nodes))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    coords = []
    cur = [-be] * r
    for _ in range(n_y):
        coords.append(tuple(cur))
        for i in range(r):
            if cur[i] < be:
                cur[i] += 1
                break
            cur[i] = -be
    strides = [side**i for i in range(r)]

    for row in range(len(avals)):
        d = list(dvecs[row * r : (row + 1) * r])
        a = avals[row]
        t = tvals[row]
        if any(abs(di) > 2 * be for di in d):
            continue  # no source y keeps y + d inside the box
        off = sum(di * si for di, si in zip(d, strides)) * mod
        valid = [
            idx
            for idx in range(n_y)
            if all(-be <= coords[idx][i] + d[i] <= be for i in range(r))
        ]
        for l in range(mod):
            m2 = (t + mu * l) % mod
            for idx in valid:
                base = a * ((pinv[idx] * l - m2) % mod) % mod
                n1 = idx * mod
                n2 = n1 + off
                tp = base
                for theta in range(mod):
                    ra = find(n1 + theta)
                    rb = find(n2 + tp)
                    if ra != rb:
                        parent[rb] = ra
                    tp += a
                    if tp >= mod:
                        tp -= mod

    roots = set()
    for idx in range(n_y):
        if all(abs(cv) <= inner for cv in coords[idx]):
            base = idx * mod
            for theta in range(mod):
                roots.add(find(base + theta))
    return len(roots)
