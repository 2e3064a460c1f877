"""Pragma version-constraint parsing and the 0.6.0 floor question."""

from solsentry.versions import VersionConstraint


def admits(text, version):
    return VersionConstraint.parse(text).admits(version)


def requires_06(text):
    return VersionConstraint.parse(text).requires_at_least(0, 6, 0)


def test_caret_zero_major_caps_at_next_minor():
    assert admits("^0.5.2", (0, 5, 9))
    assert not admits("^0.5.2", (0, 6, 0))
    assert not admits("^0.5.2", (0, 5, 1))


def test_caret_nonzero_major_caps_at_next_major():
    assert admits("^1.2.3", (1, 9, 0))
    assert not admits("^1.2.3", (2, 0, 0))


def test_tilde():
    assert admits("~0.4.24", (0, 4, 26))
    assert not admits("~0.4.24", (0, 5, 0))


def test_comparison_conjunction():
    text = ">=0.4.22 <0.6.0"
    assert admits(text, (0, 5, 16))
    assert not admits(text, (0, 6, 0))
    assert not admits(text, (0, 4, 0))


def test_plain_version_without_patch_means_minor_series():
    assert admits("0.5", (0, 5, 7))
    assert not admits("0.5", (0, 6, 0))


def test_exact_version():
    assert admits("0.8.19", (0, 8, 19))
    assert not admits("0.8.19", (0, 8, 20))


def test_alternatives():
    text = "^0.5.0 || ^0.8.0"
    assert admits(text, (0, 5, 3))
    assert admits(text, (0, 8, 1))
    assert not admits(text, (0, 7, 0))


def test_requires_at_least_gates_the_length_detector():
    # admits an old compiler -> the underflow is expressible
    assert not requires_06("^0.5.0")
    assert not requires_06(">=0.4.22 <0.6.0")
    assert not requires_06("^0.5.0 || ^0.8.0")
    # every admissible compiler is modern -> gated off
    assert requires_06("^0.8.0")
    assert requires_06(">=0.6.0")
    assert requires_06("0.7.6")


def test_empty_constraint_requires_nothing():
    assert not requires_06("")


def test_unsatisfiable_conjunct_is_ignored():
    # the first alternative admits nothing; the second decides
    assert requires_06(">=0.9.0 <0.9.0 || ^0.8.0")
