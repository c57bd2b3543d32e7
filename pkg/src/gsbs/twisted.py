"""Twisted conjugacy: finiteness, canonical forms, and Reidemeister counts.

For an automorphism phi, elements g and g' are phi-twisted conjugate when
g' = h g phi(h)^{-1} for some h. The free part of the class of g is a coset
of (Id - M) Z^r, so the class count is finite exactly when det(M - Id) != 0,
and is then at most |det(M - Id)| * m^c.

Two independent counters are provided: reidemeister_exact works on canonical
class representatives (cokernel coset x torsion residue) and unions them by
elementary conjugators; reidemeister_oracle enumerates a box of raw group
elements and conjugators with no canonicalization at all, escalating the
conjugator radius until the count stabilizes.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Sequence

from ._orbit import BACKEND, twisted_orbit_count
from .autos import Automorphism, apply, require_valid
from .errors import CapError, RefusalError
from .groups import (
    GroupElement,
    GroupParams,
    action_exponent,
    element,
    inverse,
    multiply,
    params_to_json,
)
from .intlin import (
    IntMatrix,
    det,
    inverse_unimodular,
    smith_normal_form,
    solve_integral,
)
from .jsonutil import encode_int

DEFAULT_ORBIT_CAP = 10**7
DEFAULT_ELEMENT_BOX = 4
DEFAULT_CONJUGATOR_BOX = 8
MAX_CONJUGATOR_BOX = 24

_INT64_SAFE_MOD = 2**31 - 1


def displacement_matrix(params: GroupParams, phi: Automorphism) -> IntMatrix:
    """T = Id - M; twisted conjugation by S^k shifts the free part by T k."""
    return IntMatrix.identity(params.r) - phi.M


def reidemeister_finite(params: GroupParams, phi: Automorphism) -> bool:
    """Finitely many twisted classes iff det(M - Id) != 0."""
    return det(phi.M - IntMatrix.identity(params.r)) != 0


def reidemeister_abelianized(M: IntMatrix) -> int | None:
    """Class count of the induced map on Z^r: |det(M - Id)|, None if infinite."""
    if not M.is_square:
        raise ValueError("M must be square")
    d = det(M)
    if d not in (1, -1):
        raise RefusalError(f"matrix is not in GL_{M.rows}(Z) (det = {d})")
    dmi = det(M - IntMatrix.identity(M.rows))
    return abs(dmi) if dmi else None


def twisted_conjugate(
    params: GroupParams, phi: Automorphism, h: GroupElement, g: GroupElement
) -> GroupElement:
    """h g phi(h)^{-1}."""
    return multiply(params, multiply(params, h, g), inverse(params, apply(params, phi, h)))


@dataclass(frozen=True)
class TwistedNode:
    """Canonical class label: cokernel coset representative plus torsion residue."""

    rep: tuple[int, ...]
    theta: int


class _Canonicalizer:
    """Cokernel machinery for T = Id - M, shared by canonicalize and the exact count."""

    def __init__(self, params: GroupParams, phi: Automorphism):
        self.params = params
        self.phi = phi
        self.T = displacement_matrix(params, phi)
        self.det_T = det(self.T)
        if self.det_T == 0:
            raise ValueError("det(M - Id) = 0: no finite canonical form")
        self.snf = smith_normal_form(self.T)
        self.diag = self.snf.diagonal()
        self.uinv = inverse_unimodular(self.snf.U)
        self.reps: list[tuple[int, ...]] = []
        self.rep_index: dict[tuple[int, ...], int] = {}
        for w in product(*(range(d) for d in reversed(self.diag))):
            rep = self.uinv.matvec(tuple(reversed(w)))
            self.rep_index[rep] = len(self.reps)
            self.reps.append(rep)

    def rep_of(self, y: Sequence[int]) -> tuple[int, ...]:
        uy = self.snf.U.matvec(y)
        w = tuple(v % d for v, d in zip(uy, self.diag))
        return self.uinv.matvec(w)

    def canonicalize(self, g: GroupElement) -> tuple[TwistedNode, tuple[int, ...]]:
        """Canonical node of g's class and the conjugator exponent that lands there."""
        rho = self.rep_of(g.y)
        k = solve_integral(self.T, tuple(a - b for a, b in zip(rho, g.y)))
        if k is None:
            raise AssertionError("coset representative not reachable")
        h = element(self.params, k, 0)
        img = twisted_conjugate(self.params, self.phi, h, g)
        if img.y != rho:
            raise AssertionError("canonicalization missed its coset representative")
        return TwistedNode(rho, img.theta), k


@lru_cache(maxsize=128)
def _canonicalizer(params: GroupParams, phi: Automorphism) -> _Canonicalizer:
    return _Canonicalizer(params, phi)


def canonicalize(params: GroupParams, phi: Automorphism, g: GroupElement) -> TwistedNode:
    """Canonical label of the twisted class of g.

    The returned node is twisted conjugate to g (the conjugator is computed
    and the landing verified), and canonical labels of one class coincide on
    the free part by construction.
    """
    node, _ = _canonicalizer(params, phi).canonicalize(g)
    return node


def canonicalize_with_witness(
    params: GroupParams, phi: Automorphism, g: GroupElement
) -> tuple[TwistedNode, GroupElement]:
    """Canonical node plus the conjugator h with h g phi(h)^{-1} landing on it."""
    node, k = _canonicalizer(params, phi).canonicalize(g)
    return node, element(params, k, 0)


@dataclass(frozen=True)
class ReidemeisterReport:
    """Outcome of a class count: finiteness, count, a priori bound, method."""

    finite: bool
    count: int | None
    bound: int
    method: str
    det_m_minus_id: int
    params: GroupParams

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"finite": self.finite}
        if self.count is not None:
            doc["count"] = encode_int(self.count)
        doc["bound"] = encode_int(self.bound)
        doc["method"] = self.method
        doc["det_M_minus_I"] = encode_int(self.det_m_minus_id)
        doc["params"] = params_to_json(self.params)
        return doc


def reidemeister_exact(
    params: GroupParams,
    phi: Automorphism,
    *,
    cap: int = DEFAULT_ORBIT_CAP,
    validate_input: bool = True,
) -> ReidemeisterReport:
    """Exact twisted class count over canonical nodes.

    Nodes are (coset representative, theta) pairs, d * m^c of them. Every
    node is unioned with the canonical form of its twist by each elementary
    conjugator s_i^{+-1} and x^{+-1}; components are the classes. Infinite
    case (det(M - Id) = 0) reports finite=False with no count.
    """
    if validate_input:
        require_valid(params, phi)
    dmi = det(displacement_matrix(params, phi))
    if dmi == 0:
        return ReidemeisterReport(False, None, 0, "exact", 0, params)
    d = abs(dmi)
    mod = params.modulus
    bound = d * mod
    if bound > cap:
        raise CapError(f"orbit size {bound} exceeds cap {cap}")
    canon = _canonicalizer(params, phi)

    n_nodes = d * mod
    parent = list(range(n_nodes))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    conjugators = []
    for i in range(params.r):
        for sign in (1, -1):
            k = [0] * params.r
            k[i] = sign
            conjugators.append(element(params, k, 0))
    conjugators.append(element(params, (0,) * params.r, 1))
    conjugators.append(element(params, (0,) * params.r, -1))

    for rep_i, rep in enumerate(canon.reps):
        for theta in range(mod):
            g = GroupElement(rep, theta)
            node_a = rep_i * mod + theta
            for h in conjugators:
                img = twisted_conjugate(params, phi, h, g)
                node, _ = canon.canonicalize(img)
                node_b = canon.rep_index[node.rep] * mod + node.theta
                ra, rb = find(node_a), find(node_b)
                if ra != rb:
                    parent[rb] = ra

    count = sum(1 for v in range(n_nodes) if find(v) == v)
    return ReidemeisterReport(True, count, bound, "exact", dmi, params)


@dataclass(frozen=True)
class OracleRecord:
    """Stabilization trace of the box oracle.

    counts maps conjugator radius to the class count seen at that radius;
    stable means the two largest radii agreed, and count is that agreed
    value (None when not stable).
    """

    element_box: int
    conjugator_box: int
    counts: tuple[tuple[int, int], ...]
    stable: bool
    count: int | None
    det_m_minus_id: int
    params: GroupParams

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"finite": True}
        if self.count is not None:
            doc["count"] = encode_int(self.count)
        doc["bound"] = encode_int(abs(self.det_m_minus_id) * self.params.modulus)
        doc["method"] = "oracle"
        doc["det_M_minus_I"] = encode_int(self.det_m_minus_id)
        doc["params"] = params_to_json(self.params)
        doc["stabilization"] = {
            "element_box": self.element_box,
            "conjugator_box": self.conjugator_box,
            "counts": {str(radius): cnt for radius, cnt in self.counts},
            "stable": self.stable,
        }
        return doc


def _odometer(r: int, radius: int):
    # odometer order, coordinate 0 fastest, matching the kernel node layout
    cur = [-radius] * r
    while True:
        yield tuple(cur)
        for i in range(r):
            if cur[i] < radius:
                cur[i] += 1
                break
            cur[i] = -radius
        else:
            return


def _oracle_count_once(
    params: GroupParams,
    phi: Automorphism,
    element_box: int,
    conjugator_box: int,
    cap: int,
) -> int:
    r = params.r
    mod = params.modulus
    side = 2 * element_box + 1
    n_nodes = side**r * mod
    if n_nodes > cap:
        raise CapError(f"oracle box holds {n_nodes} nodes, exceeding cap {cap}")

    pinv = array("q", (0,) * side**r)
    for idx, y in enumerate(_odometer(r, element_box)):
        pinv[idx] = action_exponent(params, tuple(-v for v in y)) % mod

    dvecs = array("q")
    avals = array("q")
    tvals = array("q")
    for k in _odometer(r, conjugator_box):
        mk = phi.M.matvec(k)
        d = tuple(a - b for a, b in zip(k, mk))
        if any(abs(v) > 2 * element_box for v in d):
            continue  # never lands back in the box
        dvecs.extend(d)
        avals.append(action_exponent(params, mk) % mod)
        tvals.append(apply(params, phi, element(params, k, 0)).theta % mod)

    kernel = twisted_orbit_count
    if mod > _INT64_SAFE_MOD:
        from ._orbit_py import twisted_orbit_count as kernel  # exactness over speed

    return kernel(
        r,
        mod,
        element_box,
        element_box // 2,
        phi.mu % mod,
        pinv,
        dvecs,
        avals,
        tvals,
    )


def reidemeister_oracle(
    params: GroupParams,
    phi: Automorphism,
    element_box: int = DEFAULT_ELEMENT_BOX,
    conjugator_box: int = DEFAULT_CONJUGATOR_BOX,
    *,
    escalate: bool = True,
    max_conjugator_box: int = MAX_CONJUGATOR_BOX,
    cap: int = DEFAULT_ORBIT_CAP,
    validate_input: bool = True,
) -> OracleRecord:
    """Box-enumeration class count, independent of all canonical-form code.

    Counts the classes of elements in the inner half-box after unioning every
    twisted conjugation by conjugators in the given box that stays inside the
    element box. The count at radius conjugator_box - 1 is compared with the
    count at conjugator_box; on disagreement the radius escalates by one until
    the two largest radii agree (or max_conjugator_box is hit, which raises).
    Requires det(M - Id) != 0.
    """
    if validate_input:
        require_valid(params, phi)
    dmi = det(displacement_matrix(params, phi))
    if dmi == 0:
        raise ValueError("oracle needs det(M - Id) != 0")
    if conjugator_box < 2:
        raise ValueError("conjugator_box must be at least 2")

    counts: list[tuple[int, int]] = []
    radius = conjugator_box - 1
    counts.append((radius, _oracle_count_once(params, phi, element_box, radius, cap)))
    while True:
        radius += 1
        counts.append((radius, _oracle_count_once(params, phi, element_box, radius, cap)))
        if counts[-1][1] == counts[-2][1]:
            return OracleRecord(
                element_box, radius, tuple(counts), True, counts[-1][1], dmi, params
            )
        if radius >= max_conjugator_box or not escalate:
            if not escalate:
                return OracleRecord(
                    element_box, radius, tuple(counts), False, None, dmi, params
                )
            raise RuntimeError(
                f"oracle did not stabilize by conjugator radius {max_conjugator_box}"
            )


def oracle_report(record: OracleRecord) -> ReidemeisterReport:
    """Reshape a stable oracle record as a ReidemeisterReport."""
    if not record.stable:
        raise ValueError("oracle record is not stable")
    return ReidemeisterReport(
        True,
        record.count,
        abs(record.det_m_minus_id) * record.params.modulus,
        "oracle",
        record.det_m_minus_id,
        record.params,
    )
