import json
import random
from fractions import Fraction

import pytest

from liederiv.exactfield import FIELD_Q, FIELD_QI, GaussianRational
from liederiv.liealg import (
    JacobiError,
    LieAlgebra,
    ad,
    bracket,
    center,
    check_jacobi,
    from_json,
    load,
    make_abelian,
    make_heisenberg,
    make_schrodinger,
    make_sl2,
    restrict,
    save,
    schrodinger_rank,
    to_json,
)
from conftest import rand_scalar


def rand_element(rng, L):
    return L.element([rand_scalar(rng, L.field) for _ in range(L.dim)])


def test_schrodinger_dimensions():
    for n in range(1, 7):
        L = make_schrodinger(n)
        assert L.dim == 2 * n + 4
        assert L.labels[:4] == ("e", "h", "f", "z")
    with pytest.raises(ValueError):
        make_schrodinger(0)


def test_schrodinger_bracket_examples():
    L = make_schrodinger(3)
    h, e = L.from_terms({"h": 1}), L.from_terms({"e": 1})
    assert bracket(h, e).coords == L.from_terms({"e": 2}).coords
    assert bracket(L.from_terms({"e": 1}), L.from_terms({"v_2": 1})).coords == L.from_terms(
        {"u_2": 1}
    ).coords
    # [u_k, v_j] = delta_kj z
    for k in (1, 2, 3):
        for j in (1, 2, 3):
            got = bracket(L.from_terms({f"u_{k}": 1}), L.from_terms({f"v_{j}": 1}))
            expect = L.from_terms({"z": 1}) if k == j else L.zero_element()
            assert got.coords == expect.coords
    # z is central
    z = L.from_terms({"z": 1})
    for i in range(L.dim):
        assert bracket(z, L.basis_element(i)).is_zero()


def test_bracket_antisymmetry_and_bilinearity_randomized():
    rng = random.Random(61)
    L = make_schrodinger(2)
    for _ in range(100):
        x, y = rand_element(rng, L), rand_element(rng, L)
        assert bracket(x, x).is_zero()
        assert bracket(x, y).coords == (-bracket(y, x)).coords
        a, b = rand_scalar(rng), rand_scalar(rng)
        lhs = bracket(x.scale(a) + y.scale(b), y)
        rhs = bracket(x, y).scale(a) + bracket(y, y).scale(b)
        assert lhs.coords == rhs.coords


def test_generator_rank_validation():
    with pytest.raises(ValueError):
        make_heisenberg(0)
    with pytest.raises(ValueError):
        make_abelian(0)


def test_heisenberg_structure():
    L = make_heisenberg(1)
    assert L.dim == 3
    assert bracket(L.from_terms({"u_1": 1}), L.from_terms({"v_1": 1})).coords == L.from_terms(
        {"z": 1}
    ).coords
    for n in (1, 2, 4):
        H = make_heisenberg(n)
        assert H.dim == 2 * n + 1
        z = H.from_terms({"z": 1})
        for i in range(H.dim):
            assert bracket(z, H.basis_element(i)).is_zero()


def test_heisenberg_is_two_step_nilpotent():
    rng = random.Random(67)
    H = make_heisenberg(2)
    for _ in range(40):
        x, y, w = (rand_element(rng, H) for _ in range(3))
        assert bracket(bracket(x, y), w).is_zero()


def test_sl2_structure():
    L = make_sl2()
    e, h, f = (L.from_terms({lab: 1}) for lab in ("e", "h", "f"))
    assert bracket(e, f).coords == h.coords
    assert bracket(h, e).coords == e.scale(2).coords
    assert bracket(h, f).coords == f.scale(-2).coords
    assert check_jacobi(L).ok
    assert center(L).dim == 0


def test_center_of_schrodinger_is_the_central_line():
    for n in (1, 2, 3):
        L = make_schrodinger(n)
        c = center(L)
        assert c.dim == 1
        assert c.contains(L.from_terms({"z": 1}).coords)
    H = make_heisenberg(1)
    assert center(H).dim == 1
    assert center(H).contains(H.from_terms({"z": 1}).coords)
    assert center(make_abelian(4)).dim == 4


def test_ad_examples():
    L = make_schrodinger(1)
    adh = ad(L.from_terms({"h": 1}))
    # diagonal (2, 0, -2, 0, 1, -1) on (e, h, f, z, u_1, v_1)
    expect = [2, 0, -2, 0, 1, -1]
    for i in range(6):
        for j in range(6):
            want = Fraction(expect[i]) if i == j else Fraction(0)
            assert adh.entries[i][j] == want
    assert ad(L.from_terms({"z": 1})).is_zero()


def test_ad_grading_eigenvalues():
    for n in (1, 2, 3):
        L = make_schrodinger(n)
        adh = ad(L.from_terms({"h": 1}))
        diag = [adh.entries[i][i] for i in range(L.dim)]
        assert diag == [2, 0, -2, 0] + [1] * n + [-1] * n
        for i in range(L.dim):
            for j in range(L.dim):
                if i != j:
                    assert not adh.entries[i][j]


def test_jacobi_check_passes_for_generators():
    assert check_jacobi(make_schrodinger(2)).ok
    assert check_jacobi(make_heisenberg(3)).ok
    assert check_jacobi(make_abelian(5)).ok


def test_jacobi_rejects_planted_defect():
    # sl2 with [e, f] = h but [h, e] = 2e replaced by -2e breaks Jacobi
    with pytest.raises(JacobiError) as err:
        LieAlgebra(
            "broken", FIELD_Q, ["e", "h", "f"],
            {(0, 1): {0: 2}, (0, 2): {1: 1}, (1, 2): {2: -2}},
        )
    assert err.value.triple is not None


def test_semidirect_decomposition_substructures():
    for n in (1, 2, 3):
        L = make_schrodinger(n)
        assert restrict(L, ["e", "h", "f"], "sl2") == make_sl2()
        tail = ["z"] + [f"u_{k}" for k in range(1, n + 1)] + [f"v_{k}" for k in range(1, n + 1)]
        assert restrict(L, tail, f"heisenberg_{n}") == make_heisenberg(n)


def test_schrodinger_rank_detection():
    assert schrodinger_rank(make_schrodinger(2)) == 2
    assert schrodinger_rank(make_heisenberg(2)) is None
    assert schrodinger_rank(make_abelian(8)) is None


def test_save_load_round_trip(tmp_path):
    for build in (
        lambda: make_schrodinger(2),
        lambda: make_schrodinger(6),
        lambda: make_heisenberg(4),
        lambda: make_sl2(),
        lambda: make_schrodinger(1, FIELD_QI),
    ):
        L = build()
        path = tmp_path / f"{L.name}_{L.field}.json"
        save(L, str(path))
        assert load(str(path)) == L


def test_load_accepts_single_orientation_and_implies_partner():
    text = to_json(make_sl2())
    doc = json.loads(text)
    # rewrite [e, h] = -2e as [h, e] = 2e; the loader must normalize
    for entry in doc["brackets"]:
        if entry["left"] == "e" and entry["right"] == "h":
            entry["left"], entry["right"] = "h", "e"
            entry["terms"][0]["coeff"] = "2/1"
    L = from_json(json.dumps(doc))
    assert L == make_sl2()


def test_load_rejects_malformed_documents():
    good = json.loads(to_json(make_sl2()))
    bad_unknown = dict(good, extra="x")
    with pytest.raises(ValueError):
        from_json(json.dumps(bad_unknown))
    bad_labels = dict(good, labels=["e", "e", "f"])
    with pytest.raises(ValueError):
        from_json(json.dumps(bad_labels))
    with pytest.raises(ValueError):
        from_json("{not json")
    bad_term = json.loads(to_json(make_sl2()))
    bad_term["brackets"][0]["terms"][0]["coeff"] = "1.5"
    with pytest.raises(ValueError):
        from_json(json.dumps(bad_term))
    bad_field = dict(good, field="R")
    with pytest.raises(ValueError):
        from_json(json.dumps(bad_field))


def test_load_rejects_jacobi_violation():
    doc = json.loads(to_json(make_sl2()))
    for entry in doc["brackets"]:
        if entry["left"] == "e" and entry["right"] == "h":
            entry["terms"][0]["coeff"] = "2/1"  # flips the sign of [e, h]
    with pytest.raises(JacobiError):
        from_json(json.dumps(doc))


def test_load_rejects_inconsistent_duplicate():
    doc = json.loads(to_json(make_sl2()))
    doc["brackets"].append(
        {"left": "h", "right": "e", "terms": [{"basis": "e", "coeff": "3/1"}]}
    )
    with pytest.raises(ValueError):
        from_json(json.dumps(doc))


def test_gaussian_field_algebra_accepts_imaginary_coefficients():
    L = make_schrodinger(2, FIELD_QI)
    x = L.from_terms({"u_1": 1, "u_2": GaussianRational(0, 1)})
    y = L.from_terms({"v_1": 1})
    assert bracket(x, y).coords == L.from_terms({"z": 1}).coords
