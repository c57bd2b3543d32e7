"""Witness automorphisms certifying finite twisted-conjugacy counts.

For every class c the scaled shear family M = q N_r(q) + Id with q = m^{c-1}
produces a unimodular matrix satisfying all column congruences, with
det(M - Id) = q^r != 0. Every entry of M - Id is divisible by q = m^{c-1},
and any integer congruent to 1 mod m has m^{c-1}-th power congruent to
1 mod m^c, which is what makes the column congruences hold for free.

The single-prime case r = 1 is refused throughout: those groups sit in the
solvable Baumslag-Solitar range and need different methods.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from .autos import Automorphism, congruence_holds, make_automorphism, validate_automorphism
from .errors import RefusalError
from .groups import (
    DEFAULT_MODULUS_CAP,
    GroupParams,
    factorize,
    make_params,
    params_to_json,
)
from .intlin import IntMatrix, det, matrix_to_json
from .jsonutil import encode_int
from .twisted import DEFAULT_ORBIT_CAP, ReidemeisterReport, reidemeister_exact


def unit_power_reduces(base: int, m: int, c: int) -> bool:
    """Whether base^(m^(c-1)) == 1 mod m^c, given base == 1 mod m.

    Drives the congruence argument for the witness family: each p_i^{y_i}
    is 1 mod m by the definition of m.
    """
    if m == 1:
        return True
    if base % m != 1:
        raise ValueError("base must be congruent to 1 mod m")
    mod = m**c
    return pow(base, m ** (c - 1), mod) == 1


def build_N(r: int, q: int) -> IntMatrix:
    """The unimodular shear core N_r(q).

    Row one is (1, -(q+2), q+1, -(q+1), ...), row two (1, -(q+1), q, -q, ...)
    with alternating signs from column three on; the remaining rows shift:
    row i has a single 1 in column i-1. det N_r(q) = 1 for all r >= 2, q >= 1.
    """
    if r < 2:
        raise ValueError("the shear core needs rank r >= 2")
    if q < 1:
        raise ValueError("scale q must be positive")
    rows = [
        [1, -(q + 2)] + [(q + 1) * (-1) ** (j - 3) for j in range(3, r + 1)],
        [1, -(q + 1)] + [q * (-1) ** (j - 3) for j in range(3, r + 1)],
    ]
    for i in range(3, r + 1):
        rows.append([1 if j == i - 1 else 0 for j in range(1, r + 1)])
    return IntMatrix.from_rows(rows)


@dataclass(frozen=True)
class WitnessCertificate:
    """A checked witness matrix for one (n, c) with its determinant data."""

    n: int
    c: int
    k: int
    q: int
    N: IntMatrix
    M: IntMatrix
    det_N: int
    det_M: int
    det_M_minus_I: int
    congruences_checked: bool
    reidemeister: ReidemeisterReport | None

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "n": encode_int(self.n),
            "c": self.c,
            "k": self.k,
            "q": encode_int(self.q),
            "N": matrix_to_json(self.N),
            "M": matrix_to_json(self.M),
            "det_N": encode_int(self.det_N),
            "det_M": encode_int(self.det_M),
            "det_M_minus_I": encode_int(self.det_M_minus_I),
            "congruences_checked": self.congruences_checked,
        }
        if self.reidemeister is not None:
            doc["reidemeister"] = self.reidemeister.to_json()
        return doc


def build_witness_matrix(params: GroupParams) -> WitnessCertificate:
    """Witness matrix M = q N_r(q) + Id with q = m^{c-1}.

    All certificate claims (unimodularity of N and M, det(M - Id) = q^r,
    every column congruence) are recomputed here rather than assumed.
    """
    if params.r == 1:
        raise RefusalError(
            "single-prime degree: the quotients are solvable Baumslag-Solitar "
            "groups, outside this witness family"
        )
    k = params.c - 1
    q = params.m**k
    N = build_N(params.r, q)
    M = N.scale(q) + IntMatrix.identity(params.r)
    det_N = det(N)
    det_M = det(M)
    dmi = det(M - IntMatrix.identity(params.r))
    if det_N != 1 or det_M != 1:
        raise AssertionError(f"witness family lost unimodularity at r={params.r}, q={q}")
    if dmi != q**params.r:
        raise AssertionError("witness displacement determinant is off")
    congruences = all(congruence_holds(params, M, i) for i in range(params.r))
    if not congruences:
        raise AssertionError("witness matrix failed a column congruence")
    return WitnessCertificate(
        n=params.n,
        c=params.c,
        k=k,
        q=q,
        N=N,
        M=M,
        det_N=det_N,
        det_M=det_M,
        det_M_minus_I=dmi,
        congruences_checked=congruences,
        reidemeister=None,
    )


def witness_automorphism(params: GroupParams) -> Automorphism:
    """The witness matrix as an automorphism with mu = 1 and beta = 0."""
    cert = build_witness_matrix(params)
    phi = make_automorphism(params, cert.M, 1, (0,) * params.r)
    report = validate_automorphism(params, phi)
    if not report.ok:
        raise AssertionError(f"witness automorphism failed validation: {report.failures}")
    return phi


@dataclass(frozen=True)
class DegreeAnalysis:
    """Per-class witness certificates for one degree, plus the verdict."""

    n: int
    c_max: int
    primes: tuple[tuple[int, int], ...]
    m: int
    scope: str  # "ok" or "single_prime"
    certificates: tuple[WitnessCertificate, ...]
    verdict: str

    def to_json(self) -> dict[str, Any]:
        return {
            "n": encode_int(self.n),
            "c_max": self.c_max,
            "primes": [[encode_int(p), e] for p, e in self.primes],
            "m": encode_int(self.m),
            "scope": self.scope,
            "certificates": [cert.to_json() for cert in self.certificates],
            "verdict": self.verdict,
        }


def analyze_degree(
    n: int,
    c_max: int = 1,
    *,
    cap: int = DEFAULT_MODULUS_CAP,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    count_classes: bool = True,
) -> DegreeAnalysis:
    """Witness certificates for classes 1..c_max at degree n.

    Each certificate carries an exact Reidemeister report for its witness
    automorphism when count_classes is set (and the orbit fits the cap).
    Single-prime degrees come back with scope "single_prime", no
    certificates, and an explanatory verdict instead of an error.
    """
    if n < 2:
        raise ValueError("degree n must be at least 2")
    if c_max < 1:
        raise ValueError("c_max must be at least 1")
    primes = tuple(factorize(n))
    if len(primes) == 1:
        p, e = primes[0]
        return DegreeAnalysis(
            n=n,
            c_max=c_max,
            primes=primes,
            m=p**e - 1,
            scope="single_prime",
            certificates=(),
            verdict=(
                "single prime power: the quotients are solvable "
                "Baumslag-Solitar groups, not covered by the witness family"
            ),
        )
    certs = []
    m_val = None
    for c in range(1, c_max + 1):
        params = make_params(n, c, cap=cap)
        m_val = params.m
        cert = build_witness_matrix(params)
        if count_classes:
            phi = witness_automorphism(params)
            report = reidemeister_exact(params, phi, cap=orbit_cap, validate_input=False)
            cert = replace(cert, reidemeister=report)
        certs.append(cert)
    assert m_val is not None
    all_finite = all(
        cert.reidemeister is None or cert.reidemeister.finite for cert in certs
    )
    flavor = (
        "free abelian (m = 1)"
        if m_val == 1
        else f"of torsion modulus m = {m_val}"
    )
    verdict = (
        f"every class up to {c_max} admits a witness automorphism with finitely "
        f"many twisted conjugacy classes; quotients are {flavor}"
        if all_finite
        else "a witness automorphism unexpectedly failed finiteness"
    )
    return DegreeAnalysis(
        n=n,
        c_max=c_max,
        primes=primes,
        m=m_val,
        scope="ok",
        certificates=tuple(certs),
        verdict=verdict,
    )


def render_analysis(analysis: DegreeAnalysis) -> str:
    """Human-readable table for a degree analysis."""
    lines = []
    primes_txt = " * ".join(
        f"{p}^{e}" if e > 1 else str(p) for p, e in analysis.primes
    )
    lines.append(f"degree n = {analysis.n} = {primes_txt}")
    if analysis.scope == "single_prime":
        lines.append(f"verdict: {analysis.verdict}")
        return "\n".join(lines) + "\n"
    lines.append(f"r = {len(analysis.primes)}, m = {analysis.m}")
    header = f"{'c':>3} {'q':>8} {'det(M-Id)':>12} {'classes':>9}  witness M"
    lines.append(header)
    lines.append("-" * len(header))
    for cert in analysis.certificates:
        count = (
            str(cert.reidemeister.count)
            if cert.reidemeister is not None and cert.reidemeister.count is not None
            else "-"
        )
        m_txt = str(cert.M.to_rows())
        lines.append(
            f"{cert.c:>3} {cert.q:>8} {cert.det_M_minus_I:>12} {count:>9}  {m_txt}"
        )
    lines.append(f"verdict: {analysis.verdict}")
    return "\n".join(lines) + "\n"
