import numpy as np
import pytest

from rtxy.matching import conjugate_pairing_defect, greedy_match_distance


def test_identical_multisets():
    a = np.array([1.0 + 2j, 1.0 - 2j, 0.5])
    assert greedy_match_distance(a, a) == 0.0


def test_conjugate_ordering_noise():
    # real-part rounding noise on conjugate pairs defeats plain sorted
    # pairing; the greedy matcher must not
    a = np.array([0.0 + 2.45j, 0.0 - 2.45j, 1e-16 + 2.45j, -1e-16 - 2.45j])
    b = np.array([-1e-16 + 2.45j, 1e-16 - 2.45j, -2e-16 + 2.45j, 2e-16 - 2.45j])
    assert greedy_match_distance(a, b) < 1e-12


def test_reports_genuine_distance():
    a = np.zeros(4, dtype=complex)
    b = np.array([0.0, 0.0, 0.0, 0.5 + 0.0j])
    assert greedy_match_distance(a, b) == pytest.approx(0.5)


def test_size_mismatch_raises():
    with pytest.raises(ValueError):
        greedy_match_distance(np.ones(2), np.ones(3))


def test_pairing_defect_zero_for_real():
    assert conjugate_pairing_defect(np.array([1.0, -2.0, 3.0])) == 0.0


def test_pairing_defect_paired():
    spec = np.array([1 + 1j, 1 - 1j, 2.0])
    assert conjugate_pairing_defect(spec) == 0.0


def test_pairing_defect_unpaired():
    # nearest level to conj(1 + 1j) = 1 - 1j is 2.0, at distance sqrt(2)
    spec = np.array([1 + 1j, 2.0, 3.0])
    assert conjugate_pairing_defect(spec) == pytest.approx(np.sqrt(2.0))
