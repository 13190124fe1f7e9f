"""Membership in delta-stable and unstable sets of the scaling map (alpha > 1).

The stable set of f is the dc-ball {g : dc(f, g) <= delta}; the unstable
set (for the conjugate quasi-metric) is {g : g <= f pointwise}, whatever
delta is.  Stable membership is decided by running the forward scan and
cross-checked against the ball criterion on every call.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .dynamics import normalise_alpha, iterate
from .errors import InconsistentCriteria, InvalidParameter
from .funcspace import as_function, dominates
from .qmetric import DEFAULT_N, dc

BOUNDARY_TOL = 1e-10
DEFAULT_STABLE_M = 10


class Certificate(enum.Enum):
    DC_WITHIN_DELTA = "DC_WITHIN_DELTA"
    DOMINANCE = "DOMINANCE"
    DISTANCE_EXCEEDS = "DISTANCE_EXCEEDS"
    VIOLATION_AT_N = "VIOLATION_AT_N"


MEMBER_CERTIFICATES = (Certificate.DC_WITHIN_DELTA, Certificate.DOMINANCE)


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    certificate: Certificate
    value: float | int | None
    delta: float | None
    horizon: int
    at_iterate: int | None = None

    def __post_init__(self):
        if self.member != (self.certificate in MEMBER_CERTIFICATES):
            raise ValueError(f"certificate {self.certificate} contradicts member={self.member}")

    def to_dict(self):
        return {
            "member": self.member,
            "certificate": self.certificate.value,
            "value": self.value,
            "delta": self.delta,
            "horizon": self.horizon,
        }


def stable_membership(f, g, alpha, delta: float, M: int = DEFAULT_STABLE_M,
                      N: int = DEFAULT_N) -> MembershipVerdict:
    """Is g in the delta-stable set of f under psi_alpha?

    Scans k = 0..M testing dc(alpha^k f, alpha^k g) <= delta, then compares
    with dc(f, g) <= delta.  A disagreement away from the delta boundary
    raises InconsistentCriteria.
    """
    alpha = normalise_alpha(alpha)
    if not alpha > 1:
        raise InvalidParameter(f"stable sets are characterised for alpha > 1, got {alpha}")
    if delta < 0:
        raise InvalidParameter("delta must be >= 0")
    if M < 0:
        raise InvalidParameter("M must be >= 0")
    f, g = as_function(f), as_function(g)

    base = dc(f, g, N)
    scan_member, failed_at, failed_value = True, None, None
    for k in range(M + 1):
        d = base.value if k == 0 else dc(iterate(f, alpha, k), iterate(g, alpha, k), N).value
        if d > delta:
            scan_member, failed_at, failed_value = False, k, d
            break

    ball_member = base.value <= delta
    if scan_member != ball_member and abs(base.value - delta) >= BOUNDARY_TOL:
        raise InconsistentCriteria(
            f"forward scan says member={scan_member}, dc(f, g)={base.value!r} vs delta={delta!r}"
        )

    if not scan_member:
        return MembershipVerdict(False, Certificate.DISTANCE_EXCEEDS, failed_value, delta, N, failed_at)
    if base.zero_by_dominance:
        return MembershipVerdict(True, Certificate.DOMINANCE, 0.0, delta, N)
    return MembershipVerdict(True, Certificate.DC_WITHIN_DELTA, base.value, delta, N)


def unstable_membership(f, g, horizon: int = DEFAULT_N) -> MembershipVerdict:
    """Is g in the unstable set of f, i.e. g(n) <= f(n) for n = 1..horizon?"""
    verdict = dominates(g, f, horizon)
    if verdict.dominates_over_horizon:
        return MembershipVerdict(True, Certificate.DOMINANCE, None, None, horizon)
    return MembershipVerdict(False, Certificate.VIOLATION_AT_N, verdict.first_violation, None, horizon)


@dataclass(frozen=True)
class ContainmentRow:
    candidate: str
    stable: MembershipVerdict
    unstable: MembershipVerdict


@dataclass(frozen=True)
class ContainmentReport:
    rows: tuple[ContainmentRow, ...]

    @property
    def holds(self) -> bool:
        return all(r.stable.member for r in self.rows if r.unstable.member)

    def to_dict(self):
        return {
            "holds": self.holds,
            "rows": [
                {"candidate": r.candidate, "stable": r.stable.to_dict(), "unstable": r.unstable.to_dict()}
                for r in self.rows
            ],
        }


def containment_check(f, candidates, alpha, delta: float, horizon: int = DEFAULT_N,
                      M: int = DEFAULT_STABLE_M) -> ContainmentReport:
    """Both verdicts for each candidate; every unstable member must be stable.

    A violation raises InconsistentCriteria with the report attached.  Note
    that g <= f pointwise makes dc(g, f) vanish, not dc(f, g), so any
    candidate much faster than f (log(n+1) against n, say) lies in the
    unstable set yet outside small stable balls.
    """
    f = as_function(f)
    rows = []
    for c in candidates:
        c = as_function(c)
        rows.append(ContainmentRow(
            c.source,
            stable_membership(f, c, alpha, delta, M, horizon),
            unstable_membership(f, c, horizon),
        ))
    report = ContainmentReport(tuple(rows))
    if not report.holds:
        bad = [r.candidate for r in rows if r.unstable.member and not r.stable.member]
        raise InconsistentCriteria(f"unstable members outside the stable set: {bad}", report)
    return report
