"""Exact arithmetic in the nilpotency-class-c quotients attached to a degree n.

For n = p_1^{y_1} ... p_r^{y_r} with r >= 2 set m = gcd(p_i^{y_i} - 1).
The class-c quotient is the semidirect product Z_{m^c} x| Z^r in which the
i-th free generator s_i acts on the torsion generator x by
s_i x s_i^{-1} = x^{p_i^{y_i}}. Elements are kept in the normal form
S^y x^theta = s_1^{y_1} ... s_r^{y_r} x^theta with theta reduced mod m^c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import CapError, SchemaError
from .jsonutil import decode_int, decode_int_list, encode_int, require_key

DEFAULT_MODULUS_CAP = 10**7
TRIAL_DIVISION_LIMIT = 10**12

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3 * 10**24 with these bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, for n <= 10**12."""
    if n < 2:
        raise ValueError("factorize requires n >= 2")
    if n > TRIAL_DIVISION_LIMIT:
        raise ValueError(
            f"n = {n} exceeds the trial division limit {TRIAL_DIVISION_LIMIT}; "
            "pass an explicit factorization"
        )
    out = []
    rem = n
    p = 2
    while p * p <= rem:
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if rem > 1:
        out.append((rem, 1))
    return out


@dataclass(frozen=True)
class GroupParams:
    """Degree n, class c, factorization, and the derived torsion modulus m^c."""

    n: int
    c: int
    primes: tuple[tuple[int, int], ...]
    m: int
    modulus: int

    @property
    def r(self) -> int:
        return len(self.primes)

    @property
    def is_free_abelian(self) -> bool:
        # m = 1 collapses the torsion part; the quotient is Z^r.
        return self.m == 1


def make_params(
    n: int,
    c: int,
    *,
    factorization: Sequence[tuple[int, int]] | None = None,
    cap: int = DEFAULT_MODULUS_CAP,
) -> GroupParams:
    """Build GroupParams, factoring n when no factorization is supplied.

    Degrees beyond 10**12 require an explicit factorization, which is checked
    for primality, multiplicity, and product before use. Raises CapError when
    m^c exceeds the cap.
    """
    if n < 2:
        raise ValueError("degree n must be at least 2")
    if c < 1:
        raise ValueError("nilpotency class c must be at least 1")
    if factorization is None:
        primes = factorize(n)
    else:
        primes = [(int(p), int(e)) for p, e in factorization]
        if not primes:
            raise ValueError("empty factorization")
        if any(e < 1 for _, e in primes):
            raise ValueError("factorization exponents must be positive")
        if sorted(set(p for p, _ in primes)) != [p for p, _ in primes]:
            raise ValueError("factorization primes must be distinct and ascending")
        if any(not is_probable_prime(p) for p, _ in primes):
            raise ValueError("factorization contains a composite base")
        prod = 1
        for p, e in primes:
            prod *= p**e
        if prod != n:
            raise ValueError(f"factorization product {prod} != n = {n}")
    m = 0
    for p, e in primes:
        m = math.gcd(m, p**e - 1)
    modulus = 1
    for _ in range(c):
        modulus *= m
        if modulus > cap:
            raise CapError(
                f"torsion modulus m^c = {m}^{c} exceeds cap {cap}; "
                "raise the cap to proceed"
            )
    return GroupParams(n=n, c=c, primes=tuple(primes), m=m, modulus=modulus)


@dataclass(frozen=True)
class GroupElement:
    """Normal form S^y x^theta; theta is stored reduced mod the modulus."""

    y: tuple[int, ...]
    theta: int


def element(params: GroupParams, y: Sequence[int], theta: int) -> GroupElement:
    if len(y) != params.r:
        raise ValueError(f"y must have length r = {params.r}")
    return GroupElement(tuple(int(v) for v in y), int(theta) % params.modulus)


def identity(params: GroupParams) -> GroupElement:
    return GroupElement((0,) * params.r, 0)


def generator_s(params: GroupParams, i: int) -> GroupElement:
    y = [0] * params.r
    y[i] = 1
    return GroupElement(tuple(y), 0)


def generator_x(params: GroupParams) -> GroupElement:
    return element(params, (0,) * params.r, 1)


def action_exponent(params: GroupParams, y: Sequence[int]) -> int:
    """P(y) = prod p_i^{y_i * e_i} mod m^c, the action of S^y on torsion.

    Negative components go through the modular inverse; each p_i^{e_i} is a
    unit mod m^c since it is congruent to 1 mod m.
    """
    mod = params.modulus
    if mod == 1:
        return 0
    v = 1
    for (p, e), k in zip(params.primes, y):
        if k:
            v = v * pow(p**e, k, mod) % mod
    return v


def _action_inverse(params: GroupParams, y: Sequence[int]) -> int:
    return action_exponent(params, tuple(-k for k in y))


def multiply(params: GroupParams, g: GroupElement, h: GroupElement) -> GroupElement:
    """(S^y1 x^t1)(S^y2 x^t2) = S^{y1+y2} x^{t1 * P(y2)^{-1} + t2}."""
    y = tuple(a + b for a, b in zip(g.y, h.y))
    mod = params.modulus
    if mod == 1:
        return GroupElement(y, 0)
    theta = (g.theta * _action_inverse(params, h.y) + h.theta) % mod
    return GroupElement(y, theta)


def inverse(params: GroupParams, g: GroupElement) -> GroupElement:
    mod = params.modulus
    y = tuple(-k for k in g.y)
    if mod == 1:
        return GroupElement(y, 0)
    return GroupElement(y, (-g.theta * action_exponent(params, g.y)) % mod)


def power(params: GroupParams, g: GroupElement, t: int) -> GroupElement:
    """Binary powering; negative exponents invert first."""
    if t < 0:
        g = inverse(params, g)
        t = -t
    acc = identity(params)
    base = g
    while t:
        if t & 1:
            acc = multiply(params, acc, base)
        t >>= 1
        if t:
            base = multiply(params, base, base)
    return acc


def order_of(params: GroupParams, g: GroupElement) -> int | None:
    """Order of g; None when infinite (any nonzero free part)."""
    if any(g.y):
        return None
    if params.modulus == 1:
        return 1
    return params.modulus // math.gcd(g.theta, params.modulus)


@dataclass(frozen=True)
class TorsionInfo:
    """The torsion subgroup is cyclic, generated by x^generator_exponent."""

    generator_exponent: int
    order: int


def torsion_info(params: GroupParams) -> TorsionInfo:
    """Torsion subgroup data, cross-checked by explicit powering."""
    x = generator_x(params)
    order = order_of(params, x)
    assert order == params.modulus
    if power(params, x, order) != identity(params):
        raise AssertionError("torsion order verification failed")
    for p, _ in factorize(order) if order > 1 else []:
        if power(params, x, order // p) == identity(params):
            raise AssertionError(f"torsion order is not minimal at prime {p}")
    return TorsionInfo(generator_exponent=1, order=order)


def lcs_exponent(params: GroupParams, k: int) -> int:
    """Generator exponent of the k-th lower central series term, k >= 2.

    The k-th term is the cyclic subgroup generated by x^{m^{k-1}}; returns
    m^{k-1} reduced mod m^c (so 0 once the term is trivial, and 0 throughout
    in the free abelian case m = 1).
    """
    if k < 2:
        raise ValueError("lower central series terms are indexed from k = 2")
    if params.m == 1:
        return 0
    return pow(params.m, k - 1, params.modulus)


def lcs_exponent_bruteforce(params: GroupParams, k: int) -> int:
    """Same value as lcs_exponent, from the commutator recursion.

    The k-th term is generated by x^{e_k} with e_2 = gcd({p_i^{y_i} - 1}, m^c)
    and e_{j+1} = gcd({e_j * (p_i^{y_i} - 1)}, m^c), without assuming the
    closed form m^{k-1}.
    """
    if k < 2:
        raise ValueError("lower central series terms are indexed from k = 2")
    mod = params.modulus
    gens = [p**e - 1 for p, e in params.primes]
    e = mod
    for t in gens:
        e = math.gcd(e, t)
    for _ in range(k - 2):
        if e % mod == 0:
            break
        step = mod
        for t in gens:
            step = math.gcd(step, e * t)
        e = step
    return e % mod


def params_to_json(params: GroupParams) -> dict[str, Any]:
    return {
        "n": encode_int(params.n),
        "c": params.c,
        "primes": [[encode_int(p), e] for p, e in params.primes],
        "m": encode_int(params.m),
        "modulus": encode_int(params.modulus),
    }


def params_from_json(doc: Any, *, cap: int = DEFAULT_MODULUS_CAP) -> GroupParams:
    n = decode_int(require_key(doc, "n", "params"), "params.n")
    c = decode_int(require_key(doc, "c", "params"), "params.c")
    primes_doc = require_key(doc, "primes", "params")
    if not isinstance(primes_doc, list):
        raise SchemaError("params.primes: expected array")
    factorization = []
    for item in primes_doc:
        pair = decode_int_list(item, "params.primes entry")
        if len(pair) != 2:
            raise SchemaError("params.primes entries must be [prime, exponent]")
        factorization.append((pair[0], pair[1]))
    try:
        params = make_params(n, c, factorization=factorization, cap=cap)
    except ValueError as exc:
        raise SchemaError(f"params: {exc}") from None
    for key in ("m", "modulus"):
        if key in doc and decode_int(doc[key], f"params.{key}") != getattr(params, key):
            raise SchemaError(f"params.{key} disagrees with the derived value")
    return params


def element_to_json(g: GroupElement) -> dict[str, Any]:
    return {"y": [encode_int(v) for v in g.y], "theta": encode_int(g.theta)}


def element_from_json(params: GroupParams, doc: Any) -> GroupElement:
    y = decode_int_list(require_key(doc, "y", "element"), "element.y")
    theta = decode_int(require_key(doc, "theta", "element"), "element.theta")
    if len(y) != params.r:
        raise SchemaError(f"element.y must have length r = {params.r}")
    return element(params, y, theta)
