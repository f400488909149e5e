import itertools

import pytest

from chernpatch import schubert as sc
from chernpatch.errors import PreconditionFailed


def test_pieri_square_of_hyperplane():
    s1 = sc.sigma(2, 2, (1,))
    sq = sc.ring_multiply(s1, s1)
    assert sq.coeffs == {(2,): 1, (1, 1): 1}


def test_pieri_truncation_gr24():
    # sigma_11 * sigma_2 = 0 in Gr(2, 4): the only candidate shape (3, 1)
    # does not fit in the 2x2 box
    a = sc.sigma(2, 2, (1, 1))
    b = sc.sigma(2, 2, (2,))
    assert sc.ring_multiply(a, b).coeffs == {}
    assert sc.lr_multiply(a, b).coeffs == {}


def test_giambelli_matches_lr_small_boxes():
    for k, m in [(2, 2), (2, 3), (3, 3)]:
        parts = sc.partitions_in_box(k, m)
        for lam, mu in itertools.product(parts, parts):
            g = sc.ring_multiply(sc.sigma(k, m, lam), sc.sigma(k, m, mu))
            t = sc.lr_multiply(sc.sigma(k, m, lam), sc.sigma(k, m, mu))
            assert g.coeffs == t.coeffs, (lam, mu)


def test_associativity_instance():
    a = sc.sigma(2, 3, (1,))
    b = sc.sigma(2, 3, (2, 1))
    c = sc.sigma(2, 3, (1, 1))
    left = sc.ring_multiply(sc.ring_multiply(a, b), c)
    right = sc.ring_multiply(a, sc.ring_multiply(b, c))
    assert left.coeffs == right.coeffs


def test_poincare_pairing():
    k, m = 2, 3
    for lam in sc.partitions_in_box(k, m):
        padded = (list(lam) + [0] * k)[:k]
        comp = tuple(p for p in sorted((m - p for p in padded), reverse=True)
                     if p)
        prod = sc.ring_multiply(sc.sigma(k, m, lam), sc.sigma(k, m, comp))
        assert sc.integrate_class(prod) == 1


def test_degree_of_gr24():
    s1 = sc.sigma(2, 2, (1,))
    p = sc.ring_multiply(sc.ring_multiply(s1, s1), sc.ring_multiply(s1, s1))
    assert sc.integrate_class(p) == 2


def test_parse_space():
    assert sc.parse_space("p:3") == (1, 3)
    assert sc.parse_space("gr:2,5") == (2, 3)
    assert sc.parse_space((2, 5)) == (2, 3)
    with pytest.raises(PreconditionFailed):
        sc.parse_space("gr:5,2")


def test_tangent_classes_projective():
    # c(T P^1) = 1 + 2 sigma_1, c(T P^2) = 1 + 3 sigma_1 + 3 sigma_2
    c = sc.tangent_chern("p:1")
    assert c.graded_piece(1).coeffs == {(1,): 2}
    c = sc.tangent_chern("p:2")
    assert c.graded_piece(1).coeffs == {(1,): 3}
    assert c.graded_piece(2).coeffs == {(2,): 3}


def test_tangent_first_class_gr24():
    c = sc.tangent_chern("gr:2,4")
    assert c.graded_piece(1).coeffs == {(1,): 4}


def test_chern_numbers():
    assert sc.chern_number("p:1", "tangent", {1: 1}) == 2
    assert sc.chern_number("p:2", "tangent", {1: 2}) == 9
    assert sc.chern_number("p:2", "tangent", {2: 1}) == 3
    assert sc.chern_number("gr:2,4", "tangent", {1: 4}) == 512
    assert sc.chern_number("gr:2,4", "tangent", {4: 1}) == 6


def test_chern_number_degree_mismatch_rejected():
    with pytest.raises(PreconditionFailed):
        sc.chern_number("p:2", "tangent", {1: 1})


def test_unknown_bundle_rejected():
    with pytest.raises(PreconditionFailed):
        sc.chern_number("p:1", "mystery", {1: 1})


def test_generation():
    for space in ("p:1", "p:2", "p:3", "gr:2,4"):
        rpt = sc.generation_check(space)
        assert rpt["generates"], rpt


def test_generation_negative_control():
    rpt = sc.generation_check("gr:2,4", generators=[sc.sigma(2, 2, (2,))])
    assert not rpt["generates"]
    assert rpt["span_rank"] < rpt["betti_total"]
