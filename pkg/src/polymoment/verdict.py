"""Decisions about vanishing of moments, each backed by an exact certificate or an
exactly nonzero witness moment.

The indecomposable case decides single moments completely: either Q factors through
P (all moments vanish) or some moment is nonzero, even if the scan does not reach
it. For general P the composition condition is sufficient for the double moments,
and its failure guarantees a nonzero m_ij with j <= d_a + d_b - 2.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .decompose import (CompositionCertificate, composition_condition, is_indecomposable, make_certificate,
                        multiplicities, outer_factor)
from .errors import NotIndecomposable
from .field import fe_embed
from .moments import (MomentReport, ProblemInstance, double_moment, iter_double_moments, iter_single_moments,
                      single_moment, single_moments)
from .monodromy import TrackOptions, branch_equalities, degree_formula_check, monodromy_group

EVIDENCE_ROWS = 8


class VerdictKind(str, enum.Enum):
    VANISHES_WITH_CERTIFICATE = "VanishesWithCertificate"
    VANISHES_BY_THEOREM1 = "VanishesByTheorem1"
    DOES_NOT_VANISH = "DoesNotVanish"
    THEOREM1_NON_VANISHING = "Theorem1NonVanishing"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    theorem: int
    scan_bound: int
    report: MomentReport
    witness: tuple | None = None
    certificate: CompositionCertificate | None = None
    multiplicities: tuple | None = None
    note: str = ""
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def definitive(self) -> bool:
        return self.kind is not VerdictKind.INCONCLUSIVE

    def to_json(self) -> dict:
        out = {
            "kind": self.kind.value,
            "theorem": self.theorem,
            "scan_bound": self.scan_bound,
            "witness": None if self.witness is None else dict(zip(("i", "j"), self.witness)),
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "moments": self.report.to_json(),
            "note": self.note,
        }
        if self.multiplicities is not None:
            out["multiplicities"] = {"d_a": self.multiplicities[0], "d_b": self.multiplicities[1]}
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out


def default_scan_bound(inst: ProblemInstance) -> int:
    return 4 * inst.P.degree * (max(inst.Q.degree, 0) + 1)


def _single_report(values) -> MomentReport:
    single = tuple(enumerate(values))
    return MomentReport(single, (), (len(values) - 1, None), all(v.is_zero() for v in values), True)


def _double_report(entries, max_i, max_j) -> MomentReport:
    return MomentReport((), tuple(entries), (max_i, max_j), True,
                        all(v.is_zero() for _, _, v in entries))


def theorem1_verdict(inst: ProblemInstance, scan_bound: int | None = None) -> Verdict:
    if not is_indecomposable(inst.P):
        raise NotIndecomposable("the indecomposable-case verdict needs an indecomposable P")
    N = default_scan_bound(inst) if scan_bound is None else scan_bound
    if outer_factor(inst.Q, inst.P) is not None:
        cert = make_certificate(inst.P, inst.Q, inst.P, inst.a, inst.b)
        rows = single_moments(inst, min(N, EVIDENCE_ROWS))
        return Verdict(VerdictKind.VANISHES_BY_THEOREM1, 1, N, _single_report(rows), certificate=cert,
                       note="Q factors through P, so every single moment vanishes")
    values = []
    for i, m in enumerate(iter_single_moments(inst, N)):
        values.append(m)
        if not m.is_zero():
            if single_moment(inst, i).is_zero():
                raise AssertionError(f"witness m_{i} failed independent recomputation")
            return Verdict(VerdictKind.DOES_NOT_VANISH, 1, N, _single_report(values), witness=(i,),
                           note=f"m_{i} is exactly nonzero")
    return Verdict(VerdictKind.THEOREM1_NON_VANISHING, 1, N, _single_report(values),
                   note=f"moments vanish for i <= {N}; P is indecomposable and Q does not factor "
                        f"through P, so some moment with i > {N} is nonzero")


def theorem2_verdict(inst: ProblemInstance, scan_bound: int | None = None) -> Verdict:
    N = default_scan_bound(inst) if scan_bound is None else scan_bound
    mult = multiplicities(inst.P, inst.a, inst.b)
    J = mult.d_a + mult.d_b - 2
    md = (mult.d_a, mult.d_b)
    cert = composition_condition(inst)
    if cert is not None:
        rows = [(i, j, v) for i, j, v in iter_double_moments(inst, min(N, EVIDENCE_ROWS), J)]
        return Verdict(VerdictKind.VANISHES_WITH_CERTIFICATE, 2, N, _double_report(rows, min(N, EVIDENCE_ROWS), J),
                       certificate=cert, multiplicities=md,
                       note="P and Q share the right factor W with W(a) = W(b), so every moment vanishes")
    entries = []
    for i, j, v in iter_double_moments(inst, N, J):
        entries.append((i, j, v))
        if not v.is_zero():
            if double_moment(inst, i, j).is_zero():
                raise AssertionError(f"witness m_{i},{j} failed independent recomputation")
            return Verdict(VerdictKind.DOES_NOT_VANISH, 2, N, _double_report(entries, i, J), witness=(i, j),
                           multiplicities=md, note=f"m_{i},{j} is exactly nonzero")
    return Verdict(VerdictKind.INCONCLUSIVE, 2, N, _double_report(entries, N, J), multiplicities=md,
                   note=f"no composition certificate, so some m_ij with j <= {J} is nonzero, "
                        f"but none was found for i <= {N}")


def auto_verdict(inst: ProblemInstance, scan_bound: int | None = None) -> Verdict:
    """Indecomposable-case verdict when P allows it, the general double-moment verdict otherwise."""
    if is_indecomposable(inst.P):
        return theorem1_verdict(inst, scan_bound)
    return theorem2_verdict(inst, scan_bound)


def cross_validate(inst: ProblemInstance, scan_bound: int | None = None,
                   options: TrackOptions = TrackOptions(), tol: float = 1e-8) -> dict:
    """Numerical branch count against the exact decomposition; flags any disagreement."""
    mono = monodromy_group(inst.P, complex(fe_embed(inst.t0)), options)
    part = branch_equalities(inst.P, inst.Q, mono, tol)
    deg = degree_formula_check(inst.P, inst.Q, part)
    flags = []
    if not deg.holds:
        flags.append(f"class count {deg.class_count} times deg W {deg.w_degree} differs from deg P {deg.n}")
    if not mono.consistent:
        flags.append("generator product disagrees with the loop at infinity")
    mult = multiplicities(inst.P, inst.a, inst.b)
    regular_check = None
    if mult.d_a == 1 and mult.d_b == 1:
        # with a certificate the moments vanish and there is nothing to contradict
        has_cert = composition_condition(inst) is not None
        vanish = None
        if not has_cert:
            N = default_scan_bound(inst) if scan_bound is None else scan_bound
            vanish = all(m.is_zero() for m in iter_single_moments(inst, N))
        regular_check = {"single_moments_vanish": vanish, "certificate": has_cert}
        if vanish and not has_cert:
            flags.append("regular endpoints with vanishing single moments but no certificate")
    return {
        "branch_classes": part.to_json(),
        "w_degree": deg.w_degree,
        "degree_formula": deg.holds,
        "regular_endpoints": regular_check,
        "monodromy": mono.summary(),
        "red_flags": flags,
    }
