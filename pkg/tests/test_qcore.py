import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cnotpar.qcore import (
    SuperOperator,
    apply,
    check_density_matrix,
    choi_of,
    eigenstate,
    expectation,
    identity_superop,
    is_cp,
    is_density_matrix,
    is_tp,
    pauli2,
    pauli_matrix,
    product_state,
    random_cptp,
    random_density_matrix,
    superop_from_spec,
    tensor,
    unitary_superop,
    unvec,
    vec,
)

I2, X, Y, Z = (pauli_matrix(p) for p in "IXYZ")
BASES = ("X", "Y", "Z")
SIGNS = (+1, -1)


def test_pauli_conventions():
    assert np.array_equal(Z, np.diag([1, -1]))
    assert np.array_equal(I2, np.eye(2))
    # X @ Y by hand: [[0,1],[1,0]] @ [[0,-i],[i,0]] = [[i,0],[0,-i]]
    assert np.array_equal(X @ Y, np.array([[1j, 0], [0, -1j]]))
    assert np.array_equal(X @ Y, 1j * Z)
    assert np.allclose(Y @ np.array([1, 0]), [0, 1j])


@pytest.mark.parametrize("label", "IXYZ")
def test_pauli_is_hermitian_unitary_involution(label):
    p = pauli_matrix(label)
    assert np.allclose(p, p.conj().T)
    assert np.allclose(p @ p, np.eye(2))
    assert np.trace(p) == (2 if label == "I" else 0)


def test_unknown_pauli():
    with pytest.raises(ValueError):
        pauli_matrix("W")


def test_tensor():
    assert np.array_equal(tensor(I2, I2), np.eye(4))
    # Z (x) X = [[X, 0], [0, -X]]; its (0, 1) entry is X[0, 1]
    assert tensor(Z, X)[0, 1] == 1
    assert np.array_equal(tensor(Z, I2) @ tensor(I2, X), tensor(Z, X))


@pytest.mark.parametrize("basis,sign", list(itertools.product(BASES, SIGNS)))
def test_eigenstates(basis, sign):
    v = eigenstate(basis, sign)
    assert np.isclose(np.linalg.norm(v), 1)
    assert np.allclose(pauli_matrix(basis) @ v, sign * v, atol=1e-15)


def test_eigenstate_phases():
    assert np.array_equal(eigenstate("Z", +1), [1, 0])
    assert np.allclose(eigenstate("X", -1), np.array([1, -1]) / np.sqrt(2))
    assert np.allclose(eigenstate("Y", -1), np.array([1, -1j]) / np.sqrt(2))
    with pytest.raises(ValueError):
        eigenstate("I", 1)


def test_product_state_examples():
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert np.array_equal(product_state("Z", 1, "Z", 1), expected)
    # |+>|0> = (|00> + |10>)/sqrt2: entries 1/2 on indices {0, 2}
    rho = product_state("X", 1, "Z", 1)
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 2], [0, 2])] = 0.5
    assert np.allclose(rho, expected, atol=1e-15)


def test_all_36_product_states_are_pure():
    combos = list(itertools.product(BASES, SIGNS, BASES, SIGNS))
    assert len(combos) == 36
    for b1, s1, b2, s2 in combos:
        rho = product_state(b1, s1, b2, s2)
        assert abs(np.trace(rho) - 1) < 1e-12
        assert np.linalg.matrix_rank(rho, tol=1e-10) == 1
        check_density_matrix(rho)


def test_expectation():
    assert expectation(product_state("Z", 1, "Z", 1), pauli2("ZZ")) == 1
    for label in ("XI", "ZY", "YY", "IZ"):
        assert abs(expectation(np.eye(4) / 4, pauli2(label))) < 1e-15
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    bell = np.outer(phi, phi)
    # direct: <phi|XX|phi> with XX|00> = |11>
    assert np.isclose(expectation(bell, pauli2("XX")), 1)
    with pytest.raises(ValueError):
        expectation(bell, np.array([[0, 1, 0, 0], [0] * 4, [0] * 4, [0] * 4]))


def test_density_validation():
    assert not is_density_matrix(np.diag([1.0, 0.5, -0.5, 0]))
    assert not is_density_matrix(np.eye(4))
    assert not is_density_matrix(np.triu(np.ones((4, 4))) / 4)
    assert is_density_matrix(np.eye(4) / 4)


def test_vec_column_stacking():
    m = np.arange(16).reshape(4, 4)
    v = vec(m)
    for r, c in itertools.product(range(4), repeat=2):
        assert v[c * 4 + r] == m[r, c]
    assert np.array_equal(unvec(v), m)


def test_superop_from_spec_examples():
    assert np.array_equal(superop_from_spec([(1.0, [np.eye(4)])]).map, np.eye(16))
    out = apply(superop_from_spec([(1.0, [pauli2("XI")])]), product_state("Z", 1, "Z", 1))
    assert np.allclose(out, product_state("Z", -1, "Z", 1))
    ops = [pauli2("XY"), pauli2("ZZ")]
    zero = superop_from_spec([(1.0, ops), (-1.0, ops)])
    assert np.array_equal(zero.map, np.zeros((16, 16)))
    with pytest.raises(ValueError):
        superop_from_spec([(1.0, [np.eye(2)])])


def test_superop_is_immutable():
    s = identity_superop()
    with pytest.raises(ValueError):
        s.map[0, 0] = 2


def test_apply_identity_and_linearity(rng):
    r1, r2 = random_density_matrix(rng), random_density_matrix(rng)
    assert np.array_equal(apply(identity_superop(), r1), r1)
    s = random_cptp(rng)
    a, b = 0.3, -1.7
    assert np.allclose(apply(s, a * r1 + b * r2), a * apply(s, r1) + b * apply(s, r2), atol=1e-12)


def test_unitary_round_trip(rng):
    u = random_cptp(rng, env_dim=1)  # env 1 gives a unitary channel
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    s = unitary_superop(q)
    for _ in range(100):
        rho = random_density_matrix(rng)
        assert np.max(np.abs(apply(s, rho) - q @ rho @ q.conj().T)) < 1e-12
    assert is_cp(u) and is_tp(u)


def test_choi_examples():
    choi = choi_of(identity_superop())
    assert np.linalg.matrix_rank(choi, tol=1e-10) == 1
    assert is_cp(identity_superop()) and is_tp(identity_superop())
    half = 0.5 * identity_superop()
    assert is_cp(half) and not is_tp(half)
    transpose = SuperOperator(np.array([
        [1 if (i % 4, i // 4) == (j // 4, j % 4) else 0 for j in range(16)] for i in range(16)
    ]))
    assert is_tp(transpose) and not is_cp(transpose)


def test_choi_linearity(rng):
    s1, s2 = random_cptp(rng), random_cptp(rng)
    a, b = 0.7, -2.5
    assert np.max(np.abs(choi_of(a * s1 + b * s2) - (a * choi_of(s1) + b * choi_of(s2)))) < 1e-12


def test_random_channels_preserve_states(rng):
    for _ in range(200):
        s = random_cptp(rng)
        assert is_cp(s) and is_tp(s)
        out = apply(s, random_density_matrix(rng))
        check_density_matrix(out, tol=1e-9)


@given(st.floats(0, 1), st.integers(0, 2**32 - 1))
def test_convex_kraus_mix_is_cptp(w, seed):
    rng = np.random.default_rng(seed)
    a, b = random_cptp(rng), random_cptp(rng)
    mix = w * a + (1 - w) * b
    assert is_cp(mix) and is_tp(mix)
    check_density_matrix(apply(mix, random_density_matrix(rng)), tol=1e-9)
