"""Automorphism data: congruences, validation, apply, compose, invert."""

from __future__ import annotations

import random

import pytest

import gsbs
from conftest import random_unimodular
from gsbs.autos import (
    automorphism_from_json,
    automorphism_to_json,
    generator_image,
    require_valid,
)
from gsbs.errors import RefusalError, SchemaError
from gsbs.intlin import IntMatrix, det


WITNESS_15_2 = IntMatrix.from_rows([[3, -8], [2, -5]])
SWAP = IntMatrix.from_rows([[0, 1], [1, 0]])


def test_congruence_examples():
    p = gsbs.make_params(15, 2)
    assert gsbs.congruence_holds(p, WITNESS_15_2, 0)  # 3^3 * 5^2 = 675 = 3 mod 4
    assert gsbs.congruence_holds(p, WITNESS_15_2, 1)
    assert not gsbs.congruence_holds(p, SWAP, 0)
    assert not gsbs.congruence_holds(p, SWAP, 1)
    assert gsbs.congruence_holds(p, IntMatrix.identity(2), 0)
    assert gsbs.congruence_holds(p, IntMatrix.identity(2), 1)


def test_congruence_trivial_at_c1():
    # mod m every unit power of the p_i^{y_i} collapses to 1
    rng = random.Random(31)
    for n in (15, 21, 35, 65, 6):
        p = gsbs.make_params(n, 1)
        for _ in range(30):
            m = random_unimodular(rng, p.r)
            assert gsbs.extendable(p, m)


def test_extendable():
    p = gsbs.make_params(15, 2)
    assert gsbs.extendable(p, WITNESS_15_2)
    assert gsbs.extendable(p, IntMatrix.from_rows([[1, -4], [1, -3]]))
    assert not gsbs.extendable(p, SWAP)
    with pytest.raises(RefusalError):
        gsbs.extendable(p, IntMatrix.from_rows([[2, 0], [0, 2]]))
    with pytest.raises(ValueError):
        gsbs.extendable(p, IntMatrix.identity(3))


def test_extendable_closed_under_product_and_inverse():
    p = gsbs.make_params(15, 2)
    mats = [WITNESS_15_2, IntMatrix.from_rows([[1, -4], [1, -3]]), IntMatrix.identity(2)]
    rng = random.Random(32)
    pool = list(mats)
    for _ in range(40):
        a = rng.choice(pool)
        b = rng.choice(pool)
        prod = a @ b
        assert gsbs.extendable(p, prod)
        inv = gsbs.inverse_unimodular(a)
        assert gsbs.extendable(p, inv)
        if max(abs(v) for v in prod.entries) < 10**6:
            pool.append(prod)


def test_validate_reports_failures():
    p = gsbs.make_params(15, 2)
    ok = gsbs.validate(p, WITNESS_15_2, 1, (0, 0))
    assert ok.ok and ok.failures == ()
    bad = gsbs.validate(p, SWAP, 1, (0, 0))
    assert not bad.ok
    labels = [f[0] for f in bad.failures]
    assert "congruence(M,c,1)" in labels and "congruence(M,c,2)" in labels
    nonunit = gsbs.validate(p, WITNESS_15_2, 2, (0, 0))
    assert ("torsion_unit", 2) in nonunit.failures
    nonuni = gsbs.validate(p, IntMatrix.from_rows([[2, 0], [0, 1]]), 1, (0, 0))
    assert any(label == "unimodular" for label, _ in nonuni.failures)
    with pytest.raises(RefusalError):
        require_valid(p, gsbs.make_automorphism(p, SWAP))


def test_validate_commutation_condition():
    # beta parts must be compatible across commuting generator images;
    # for the (15,2) witness the images commute iff beta_2 is even:
    # s-image thetas meet as b1 + b2 vs 3*b2 + b1 mod 4
    p = gsbs.make_params(15, 2)
    good = gsbs.validate(p, WITNESS_15_2, 1, (1, 2))
    bad = gsbs.validate(p, WITNESS_15_2, 1, (1, 3))
    assert good.ok
    assert not bad.ok
    assert [l for l, _ in bad.failures] == ["commutation(1,2)"]


def test_identity_automorphism_fixes_everything():
    rng = random.Random(33)
    for n, c in [(15, 2), (6, 2), (65, 1)]:
        p = gsbs.make_params(n, c)
        ident = gsbs.identity_automorphism(p)
        assert gsbs.validate_automorphism(p, ident).ok
        for _ in range(50):
            g = gsbs.element(
                p,
                tuple(rng.randint(-5, 5) for _ in range(p.r)),
                rng.randrange(max(p.modulus, 1)),
            )
            assert gsbs.apply(p, ident, g) == g


def test_apply_examples():
    p = gsbs.make_params(15, 2)
    phi = gsbs.make_automorphism(p, WITNESS_15_2)
    assert gsbs.apply(p, phi, gsbs.element(p, (1, 0), 0)) == gsbs.element(p, (3, 2), 0)
    assert gsbs.apply(p, phi, gsbs.element(p, (0, 1), 0)) == gsbs.element(p, (-8, -5), 0)
    x = gsbs.element(p, (0, 0), 1)
    assert gsbs.apply(p, phi, x) == x  # mu = 1
    psi = gsbs.make_automorphism(p, IntMatrix.identity(2), 3, (0, 0))
    assert gsbs.apply(p, psi, x) == gsbs.element(p, (0, 0), 3)


def test_apply_is_homomorphism_fuzz():
    rng = random.Random(34)
    cases = []
    p1 = gsbs.make_params(15, 2)
    cases.append((p1, gsbs.make_automorphism(p1, WITNESS_15_2)))
    cases.append((p1, gsbs.make_automorphism(p1, IntMatrix.from_rows([[1, -4], [1, -3]]), 3, (1, 2))))
    p2 = gsbs.make_params(65, 2)
    cases.append((p2, gsbs.witness_automorphism(p2)))
    p3 = gsbs.make_params(6, 2)
    cases.append((p3, gsbs.make_automorphism(p3, IntMatrix.from_rows([[0, -1], [1, 0]]))))
    for p, phi in cases:
        assert gsbs.validate_automorphism(p, phi).ok
        for _ in range(400):
            g = gsbs.element(
                p,
                tuple(rng.randint(-6, 6) for _ in range(p.r)),
                rng.randrange(max(p.modulus, 1)),
            )
            h = gsbs.element(
                p,
                tuple(rng.randint(-6, 6) for _ in range(p.r)),
                rng.randrange(max(p.modulus, 1)),
            )
            lhs = gsbs.apply(p, phi, gsbs.multiply(p, g, h))
            rhs = gsbs.multiply(p, gsbs.apply(p, phi, g), gsbs.apply(p, phi, h))
            assert lhs == rhs


def test_apply_preserves_torsion_and_order():
    p = gsbs.make_params(15, 2)
    phi = gsbs.make_automorphism(p, IntMatrix.from_rows([[1, -4], [1, -3]]), 3, (1, 2))
    assert gsbs.validate_automorphism(p, phi).ok
    for theta in range(4):
        g = gsbs.element(p, (0, 0), theta)
        img = gsbs.apply(p, phi, g)
        assert img.y == (0, 0)
        assert gsbs.order_of(p, img) == gsbs.order_of(p, g)


def test_compose_and_invert_examples():
    p = gsbs.make_params(15, 2)
    phi = gsbs.make_automorphism(p, WITNESS_15_2)
    sq = gsbs.compose(p, phi, phi)
    assert sq.M.to_rows() == [[-7, 16], [-4, 9]]
    assert gsbs.validate_automorphism(p, sq).ok
    inv = gsbs.invert(p, phi)
    assert inv.M.to_rows() == [[-5, 8], [-2, 3]]
    assert gsbs.validate_automorphism(p, inv).ok
    ident = gsbs.identity_automorphism(p)
    assert gsbs.compose(p, phi, inv) == ident
    assert gsbs.compose(p, inv, phi) == ident
    assert gsbs.invert(p, inv) == phi


def test_compose_matches_pointwise_application():
    rng = random.Random(35)
    p = gsbs.make_params(15, 2)
    phi = gsbs.make_automorphism(p, WITNESS_15_2)
    psi = gsbs.make_automorphism(p, IntMatrix.from_rows([[1, -4], [1, -3]]), 3, (0, 2))
    assert gsbs.validate_automorphism(p, psi).ok
    comp = gsbs.compose(p, phi, psi)
    for _ in range(300):
        g = gsbs.element(p, (rng.randint(-6, 6), rng.randint(-6, 6)), rng.randrange(4))
        assert gsbs.apply(p, comp, g) == gsbs.apply(p, phi, gsbs.apply(p, psi, g))


def test_invert_with_nontrivial_mu_beta():
    rng = random.Random(36)
    p = gsbs.make_params(15, 2)
    phi = gsbs.make_automorphism(p, IntMatrix.from_rows([[1, -4], [1, -3]]), 3, (1, 2))
    assert gsbs.validate_automorphism(p, phi).ok
    inv = gsbs.invert(p, phi)
    assert gsbs.validate_automorphism(p, inv).ok
    for _ in range(200):
        g = gsbs.element(p, (rng.randint(-6, 6), rng.randint(-6, 6)), rng.randrange(4))
        assert gsbs.apply(p, inv, gsbs.apply(p, phi, g)) == g


def test_free_abelian_automorphisms():
    p = gsbs.make_params(6, 3)  # modulus 1: any unimodular matrix works
    rng = random.Random(37)
    for _ in range(25):
        m = random_unimodular(rng, 2)
        phi = gsbs.make_automorphism(p, m)
        assert gsbs.validate_automorphism(p, phi).ok
        assert phi.mu == 0  # canonical residue mod 1
        inv = gsbs.invert(p, phi)
        assert gsbs.compose(p, phi, inv) == gsbs.identity_automorphism(p)


def test_generator_image_layout():
    p = gsbs.make_params(15, 2)
    phi = gsbs.make_automorphism(p, WITNESS_15_2, 1, (2, 3))
    assert generator_image(p, phi, 0) == gsbs.element(p, (3, 2), 2)
    assert generator_image(p, phi, 1) == gsbs.element(p, (-8, -5), 3)


def test_automorphism_json_roundtrip():
    p = gsbs.make_params(15, 2)
    phi = gsbs.make_automorphism(p, WITNESS_15_2, 3, (1, 2))
    doc = automorphism_to_json(phi)
    assert doc == {"M": [[3, -8], [2, -5]], "mu": 3, "beta": [1, 2]}
    assert automorphism_from_json(p, doc) == phi
    # mu and beta are optional on input
    assert automorphism_from_json(p, {"M": [[3, -8], [2, -5]]}) == gsbs.make_automorphism(
        p, WITNESS_15_2
    )
    with pytest.raises(SchemaError):
        automorphism_from_json(p, {"mu": 1})
    with pytest.raises(SchemaError):
        automorphism_from_json(p, {"M": [[1, 0], [0, 1]], "beta": [1]})
    with pytest.raises(SchemaError):
        automorphism_from_json(p, {"M": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
