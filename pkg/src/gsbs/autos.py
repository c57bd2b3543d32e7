"""Automorphisms of the quotient groups, in matrix-plus-torsion coordinates.

An automorphism is stored as (M, mu, beta): the i-th generator s_i maps to
S^{A_i} x^{beta_i} with A_i the i-th column of M, and x maps to x^mu. Such a
triple defines an automorphism exactly when M is unimodular, mu is a unit mod
m^c, every column satisfies the action congruence P(A_i) == p_i^{e_i} mod m^c,
and the generator images commute pairwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import RefusalError, SchemaError
from .groups import (
    GroupElement,
    GroupParams,
    action_exponent,
    element,
    identity,
    multiply,
    power,
)
from .intlin import IntMatrix, det, inverse_unimodular, matrix_from_json, matrix_to_json
from .jsonutil import decode_int, decode_int_list, encode_int


@dataclass(frozen=True)
class Automorphism:
    """Raw (M, mu, beta) data; use validate() to certify it is an automorphism."""

    M: IntMatrix
    mu: int
    beta: tuple[int, ...]


def make_automorphism(
    params: GroupParams,
    M: IntMatrix,
    mu: int = 1,
    beta: Sequence[int] | None = None,
) -> Automorphism:
    """Canonicalize mu and beta mod m^c; no validity check is performed here."""
    if M.rows != params.r or M.cols != params.r:
        raise ValueError(f"M must be {params.r} x {params.r}")
    if beta is None:
        beta = (0,) * params.r
    if len(beta) != params.r:
        raise ValueError(f"beta must have length r = {params.r}")
    mod = params.modulus
    return Automorphism(M, int(mu) % mod, tuple(int(b) % mod for b in beta))


def identity_automorphism(params: GroupParams) -> Automorphism:
    return make_automorphism(params, IntMatrix.identity(params.r))


def generator_image(params: GroupParams, phi: Automorphism, i: int) -> GroupElement:
    """The image of s_i: free part is column i of M, torsion part beta_i."""
    return element(params, phi.M.col(i), phi.beta[i])


def congruence_holds(params: GroupParams, M: IntMatrix, col: int) -> bool:
    """Column congruence: P(column col of M) == p_col^{e_col} mod m^c."""
    unit = [0] * params.r
    unit[col] = 1
    return action_exponent(params, M.col(col)) == action_exponent(params, unit)


def extendable(params: GroupParams, M: IntMatrix) -> bool:
    """Whether the abelianized matrix M lifts to an automorphism.

    True iff every column congruence holds. Matrices outside GL_r(Z) are
    refused rather than reported False.
    """
    if M.rows != params.r or M.cols != params.r:
        raise ValueError(f"M must be {params.r} x {params.r}")
    d = det(M)
    if d not in (1, -1):
        raise RefusalError(f"matrix is not in GL_{params.r}(Z) (det = {d})")
    return all(congruence_holds(params, M, i) for i in range(params.r))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking (M, mu, beta); failures list (label, witness) pairs."""

    ok: bool
    failures: tuple[tuple[str, Any], ...]


def validate(
    params: GroupParams, M: IntMatrix, mu: int, beta: Sequence[int]
) -> ValidationReport:
    """Check all four automorphism conditions and report every failure.

    Labels use 1-based generator indices: unimodular, torsion_unit,
    congruence(M,c,i), commutation(i,j).
    """
    failures: list[tuple[str, Any]] = []
    mod = params.modulus
    r = params.r
    if M.rows != r or M.cols != r:
        raise ValueError(f"M must be {r} x {r}")
    if len(beta) != r:
        raise ValueError(f"beta must have length r = {r}")
    d = det(M)
    if d not in (1, -1):
        failures.append(("unimodular", d))
    if math.gcd(mu % mod if mod > 1 else 0, mod) != 1:
        failures.append(("torsion_unit", mu))
    for i in range(r):
        if not congruence_holds(params, M, i):
            p, e = params.primes[i]
            failures.append(
                (
                    f"congruence(M,c,{i + 1})",
                    (action_exponent(params, M.col(i)), pow(p, e, mod) if mod > 1 else 0),
                )
            )
    # images of distinct generators must commute
    phi = make_automorphism(params, M, mu, beta)
    for i in range(r):
        gi = generator_image(params, phi, i)
        for j in range(i + 1, r):
            gj = generator_image(params, phi, j)
            lhs = multiply(params, gi, gj)
            rhs = multiply(params, gj, gi)
            if lhs != rhs:
                failures.append((f"commutation({i + 1},{j + 1})", (lhs.theta, rhs.theta)))
    return ValidationReport(ok=not failures, failures=tuple(failures))


def validate_automorphism(params: GroupParams, phi: Automorphism) -> ValidationReport:
    return validate(params, phi.M, phi.mu, phi.beta)


def require_valid(params: GroupParams, phi: Automorphism) -> None:
    report = validate_automorphism(params, phi)
    if not report.ok:
        labels = ", ".join(label for label, _ in report.failures)
        raise RefusalError(f"not an automorphism: {labels}")


def apply(params: GroupParams, phi: Automorphism, g: GroupElement) -> GroupElement:
    """Image of g = S^y x^theta: the product of generator-image powers."""
    acc = identity(params)
    for i, yi in enumerate(g.y):
        if yi:
            acc = multiply(params, acc, power(params, generator_image(params, phi, i), yi))
    if g.theta:
        acc = multiply(params, acc, element(params, (0,) * params.r, phi.mu * g.theta))
    return acc


def compose(params: GroupParams, phi: Automorphism, psi: Automorphism) -> Automorphism:
    """phi after psi: matrices multiply, torsion parts push through phi."""
    M = phi.M @ psi.M
    mod = params.modulus
    mu = (phi.mu * psi.mu) % mod
    beta = []
    for i in range(params.r):
        img = apply(params, phi, generator_image(params, psi, i))
        if img.y != M.col(i):
            raise AssertionError("composition free parts disagree with M product")
        beta.append(img.theta)
    return Automorphism(M, mu, tuple(beta))


def invert(params: GroupParams, phi: Automorphism) -> Automorphism:
    """Compositional inverse; verified by composing both ways afterwards.

    The free part inverts exactly (adjugate of a unimodular matrix); the
    torsion parts solve phi(S^{A'_i} x^{beta'_i}) = s_i for beta'_i.
    """
    mod = params.modulus
    Minv = inverse_unimodular(phi.M)
    mu_inv = pow(phi.mu, -1, mod) if mod > 1 else 0
    beta = []
    for i in range(params.r):
        carried = apply(params, phi, element(params, Minv.col(i), 0)).theta
        beta.append((-carried * mu_inv) % mod)
    inv = Automorphism(Minv, mu_inv, tuple(beta))
    ident = identity_automorphism(params)
    if compose(params, phi, inv) != ident or compose(params, inv, phi) != ident:
        raise AssertionError("automorphism inverse verification failed")
    return inv


def automorphism_to_json(phi: Automorphism) -> dict[str, Any]:
    return {
        "M": matrix_to_json(phi.M),
        "mu": encode_int(phi.mu),
        "beta": [encode_int(b) for b in phi.beta],
    }


def automorphism_from_json(params: GroupParams, doc: Any) -> Automorphism:
    """Decode (M, mu, beta); mu defaults to 1 and beta to zero when absent."""
    if not isinstance(doc, dict):
        raise SchemaError("automorphism: expected object")
    if "M" not in doc:
        raise SchemaError("automorphism: missing key 'M'")
    M = matrix_from_json(doc["M"], "automorphism.M")
    if M.rows != params.r or M.cols != params.r:
        raise SchemaError(f"automorphism.M must be {params.r} x {params.r}")
    mu = decode_int(doc["mu"], "automorphism.mu") if "mu" in doc else 1
    beta = (
        decode_int_list(doc["beta"], "automorphism.beta")
        if "beta" in doc
        else [0] * params.r
    )
    if len(beta) != params.r:
        raise SchemaError(f"automorphism.beta must have length r = {params.r}")
    return make_automorphism(params, M, mu, beta)
