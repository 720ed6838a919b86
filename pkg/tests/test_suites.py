import pytest

from starpi.catalog import TheoremId
from starpi.decision import EvalMode, VerificationReport
from starpi.errors import ModeFieldMismatch
from starpi.field import get_field
from starpi.suites import _basis_class_checks, parallel_map, torus_classes, verify_theorem

F3, F5, Q = get_field("F3"), get_field("F5"), get_field("Q")
EX3, EX5, C0 = EvalMode.finite_exhaustive(F3), EvalMode.finite_exhaustive(F5), EvalMode.generic_char0()


@pytest.mark.parametrize("theorem,mode", [
    (TheoremId.EvenZLemma, EX5),
    (TheoremId.CommutationLemma, C0),
    (TheoremId.WrapIdentity, C0),
    (TheoremId.PowerPQLemma, EX3),
    (TheoremId.BasisStarInfinite, C0),
])
def test_quick_suites_pass(theorem, mode):
    report = verify_theorem(theorem, mode, 4)
    assert report.passed, [c for c in report.checks if c.status == "fail"]
    assert report.counts()["pass"] > 0


def test_identity_suites_at_low_degree():
    assert verify_theorem(TheoremId.IdStarInfinite, C0, 3).passed
    assert verify_theorem(TheoremId.IdSFinite, EX3, 3).passed
    assert verify_theorem(TheoremId.CentralS, EX3, 3).passed
    assert verify_theorem(TheoremId.CentralStarChar0, C0, 3).passed


def test_regime_mismatches_are_rejected():
    with pytest.raises(ModeFieldMismatch):
        verify_theorem(TheoremId.IdStarFinite, C0, 2)
    with pytest.raises(ModeFieldMismatch):
        verify_theorem(TheoremId.IdStarInfinite, EX3, 2)
    with pytest.raises(ModeFieldMismatch):
        verify_theorem(TheoremId.CentralStarInfCharP, C0, 2)


def test_torus_classes_partition_the_words():
    classes = torus_classes((1, -1), 4, 3)
    words = [w for ws in classes.values() for w in ws]
    assert len(words) == len(set(words)) == 1 + 2 + 4 + 8 + 16
    assert set(classes) == {(a, b) for a in (0, 1) for b in (0, 1)}


@pytest.mark.parametrize("mode", [EX3, EX5])
def test_finite_basis_on_degree_classes(mode):
    # the finite quotient basis counted on classes of the degree filtration
    report = VerificationReport("classes", mode.field.name, mode.name)
    _basis_class_checks(report, mode.field.q, mode, 4)
    assert report.passed, [c.to_dict() for c in report.checks if c.status == "fail"]
    assert report.counts()["pass"] == {3: 128, 5: 505}[mode.field.q]


def test_parallel_map_keeps_order(monkeypatch):
    monkeypatch.setenv("STARPI_THREADS", "2")
    assert parallel_map(abs, [-3, 1, -2]) == [3, 1, 2]


@pytest.mark.parametrize("mode", [EX3, EX5])
def test_degree_three_substitutions_saturate_the_finite_central_space(mode):
    from starpi.consequences import ConsequenceStrategy
    report = verify_theorem(TheoremId.CentralStarFinite, mode, 4, ConsequenceStrategy(3, 1, "all"))
    assert report.passed
    assert report.counts()["warn"] == 0
