import math

import pytest

from cqspace.classes import (
    Certificate,
    ContainmentReport,
    MembershipVerdict,
    containment_check,
    stable_membership,
    unstable_membership,
)
from cqspace.errors import InconsistentCriteria, InvalidParameter
from cqspace.qmetric import dc

from conftest import CORPUS_PAIRS, brute_dc


def test_sqrt_rejected_at_small_delta():
    v = stable_membership("n", "sqrt(n)", 2, 0.1)
    assert not v.member and v.certificate is Certificate.DISTANCE_EXCEEDS
    assert v.value == pytest.approx(0.113, abs=1e-3) and v.at_iterate == 0


def test_sqrt_accepted_at_larger_delta():
    v = stable_membership("n", "sqrt(n)", 2, 0.2)
    assert v.member and v.certificate is Certificate.DC_WITHIN_DELTA


def test_doubling_is_stable():
    v = stable_membership("n", "2*n", 2, 0.1)
    assert v.member and v.certificate is Certificate.DOMINANCE and v.value == 0.0


def test_exponential_vs_polynomial():
    v = stable_membership("2^n", "n^100", 2, 0.01)
    assert not v.member
    # n^100 only overtakes 2^n up to n = 996, but 2^-n weights make the
    # early terms dominate: the only contributions are n = 1 (1/2) and
    # n = 2 (tiny), so the distance is 1/4 rather than close to 1.
    assert v.value == pytest.approx(0.25, abs=1e-12)


def test_unstable_examples():
    assert unstable_membership("n^2", "n").member
    v = unstable_membership("n", "n+1")
    assert not v.member and v.certificate is Certificate.VIOLATION_AT_N and v.value == 1
    assert not unstable_membership("n^2", "2^n").member
    assert unstable_membership("n", "log(n+1)").member


def test_unstable_ignores_delta():
    assert unstable_membership("n", "log(n+1)").delta is None


def test_containment_where_it_holds():
    report = containment_check("n", ["sqrt(n)", "2*n"], 2, 0.2)
    assert report.holds
    assert [r.candidate for r in report.rows] == ["sqrt(n)", "2*n"]
    assert containment_check("n", [], 2, 0.2).rows == ()
    both = containment_check("n", ["n"], 2, 0.1).rows[0]
    assert both.stable.member and both.unstable.member


def test_fast_candidate_breaks_containment():
    # log(n+1) <= n pointwise, but the distance runs the other way:
    # dc(n, log(n+1)) = 0.417 > 0.2 (brute-force series).
    assert brute_dc(lambda n: n, lambda n: math.log(n + 1)) == pytest.approx(0.4174, abs=1e-4)
    with pytest.raises(InconsistentCriteria) as info:
        containment_check("n", ["sqrt(n)", "2*n", "log(n+1)"], 2, 0.2)
    rows = {r.candidate: r for r in info.value.report.rows}
    assert rows["log(n+1)"].unstable.member and not rows["log(n+1)"].stable.member
    assert rows["sqrt(n)"].unstable.member and rows["sqrt(n)"].stable.member


@pytest.mark.parametrize("f, g", CORPUS_PAIRS)
def test_unstable_members_are_conjugate_close(f, g):
    # what g <= f does guarantee: a zero distance from g to f
    if unstable_membership(f, g).member:
        assert dc(g, f).value == 0.0


@pytest.mark.parametrize("f, g", CORPUS_PAIRS)
def test_stable_scan_agrees_with_ball(f, g):
    for delta in (0.05, 0.3):
        assert stable_membership(f, g, 2, delta).member == (dc(f, g).value <= delta)


def test_stable_requires_expanding_alpha():
    with pytest.raises(InvalidParameter):
        stable_membership("n", "n^2", 0.5, 0.1)
    with pytest.raises(InvalidParameter):
        stable_membership("n", "n^2", 2, -0.1)


def test_verdict_rejects_contradiction():
    with pytest.raises(ValueError):
        MembershipVerdict(True, Certificate.DISTANCE_EXCEEDS, 0.5, 0.1, 80)


def test_report_serialises():
    d = containment_check("n", ["2*n"], 2, 0.1).to_dict()
    assert d["holds"] and d["rows"][0]["stable"]["certificate"] == "DOMINANCE"
    assert ContainmentReport(()).holds


@pytest.mark.parametrize("f, g", CORPUS_PAIRS[::4])
def test_stable_monotone_in_delta(f, g):
    verdicts = [stable_membership(f, g, 2, d).member for d in (0.05, 0.1, 0.2, 0.5)]
    assert verdicts == sorted(verdicts)
