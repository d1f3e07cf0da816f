import numpy as np
import pytest

from entroctx.pauli import (
    OBSERVABLE_SETS,
    TABLE1_OBSERVABLES,
    TABLE2_OBSERVABLES,
    PauliString,
    commutes,
    eigenprojectors,
    matrix,
    verify_cycle,
)

RNG = np.random.default_rng(20260825)


def random_string(n: int) -> PauliString:
    return PauliString("".join(RNG.choice(list("IXYZ"), size=n)))


def test_letters_validated():
    with pytest.raises(ValueError):
        PauliString("XQ")
    with pytest.raises(ValueError):
        PauliString("")


def test_text_form_round_trips():
    p = PauliString("YX")
    assert str(p) == "YX"
    assert p.n == 2
    assert list(p) == ["Y", "X"]


def test_commutes_examples():
    assert commutes(PauliString("ZZ"), PauliString("XX"))
    assert not commutes(PauliString("ZZ"), PauliString("XI"))
    assert commutes(PauliString("XX"), PauliString("XI"))


def test_commutes_length_mismatch():
    with pytest.raises(ValueError):
        commutes(PauliString("Z"), PauliString("ZZ"))


def test_matrix_examples():
    assert np.array_equal(matrix(PauliString("I")), np.eye(2))
    assert np.array_equal(matrix(PauliString("Z")), np.diag([1.0, -1.0]))
    assert np.array_equal(matrix(PauliString("ZZ")), np.diag([1.0, -1.0, -1.0, 1.0]))


def test_matrix_is_hermitian_involution():
    for _ in range(50):
        p = random_string(2)
        m = matrix(p)
        assert np.allclose(m, m.conj().T, atol=1e-12)
        assert np.allclose(m @ m, np.eye(4), atol=1e-12)


def test_commutes_agrees_with_matrix_commutator():
    strings = list(TABLE1_OBSERVABLES) + list(TABLE2_OBSERVABLES)
    pairs = [(p, q) for p in strings for q in strings]
    pairs += [(random_string(2), random_string(2)) for _ in range(1000)]
    for p, q in pairs:
        mp, mq = matrix(p), matrix(q)
        comm = np.max(np.abs(mp @ mq - mq @ mp))
        assert commutes(p, q) == (comm < 1e-12)


def test_eigenprojectors_z_and_zz():
    plus, minus = eigenprojectors(PauliString("Z"))
    assert np.allclose(plus, np.diag([1.0, 0.0]))
    assert np.allclose(minus, np.diag([0.0, 1.0]))
    plus_zz, _ = eigenprojectors(PauliString("ZZ"))
    assert np.allclose(plus_zz, np.diag([1.0, 0.0, 0.0, 1.0]))


def test_eigenprojectors_xx_trace_and_rank():
    plus, _ = eigenprojectors(PauliString("XX"))
    assert np.trace(plus) == pytest.approx(2.0, abs=1e-12)
    assert np.linalg.matrix_rank(plus) == 2


def test_eigenprojectors_algebra():
    for _ in range(50):
        p = random_string(2)
        if p.is_identity:
            continue
        plus, minus = eigenprojectors(p)
        eye = np.eye(2**p.n)
        assert np.allclose(plus + minus, eye, atol=1e-12)
        assert np.allclose(plus @ plus, plus, atol=1e-12)
        assert np.allclose(minus @ minus, minus, atol=1e-12)
        assert np.allclose(plus @ minus, 0.0 * eye, atol=1e-12)


def test_eigenprojectors_reject_identity():
    with pytest.raises(ValueError, match="degenerate observable"):
        eigenprojectors(PauliString("II"))


def test_both_presets_are_valid_cycles():
    for name in ("table1", "table2"):
        report = verify_cycle(OBSERVABLE_SETS[name])
        assert report.n_observables == 5
        assert report.adjacent_commuting == (True,) * 5
        assert report.is_valid_cycle


def test_preset_nonadjacent_structure_reported():
    report = verify_cycle(TABLE1_OBSERVABLES)
    reported = {(i, j) for i, j, _ in report.nonadjacent_commuting}
    assert reported == {(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)}


def test_broken_cycle_detected():
    report = verify_cycle([PauliString(s) for s in ("ZZ", "XI", "IZ")])
    assert report.adjacent_commuting[0] is False
    assert not report.is_valid_cycle


def test_verify_cycle_preconditions():
    with pytest.raises(ValueError):
        verify_cycle([PauliString("ZZ"), PauliString("XX")])
    with pytest.raises(ValueError):
        verify_cycle([PauliString("ZZ"), PauliString("X"), PauliString("IZ")])
