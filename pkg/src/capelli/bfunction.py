"""Bernstein-Sato polynomials from first principles, plus certification.

compute_b applies Delta to f^(s+1) through the twisted module and reads
off the polynomial b with  Delta(f^(s+1)) = c * b(s) * f^s,  b monic and
c > 0.  The constant c depends on the normalization of Delta, so it is
reported separately and never folded into b.

verify_table compares the computed monic b against the published table
row; rows flagged as disputed in the catalog get a soft verdict when the
computation disagrees with the printing but confirms the corrected rule.

verify_annihilation checks that the operator f*Delta - b(theta-d) kills the
invariant polynomials f^m up to a chosen degree: (f Delta)(f^m) equals
c * b(m-1) * f^m, by direct differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .catalog import CaseInstance, case_spec, instantiate
from .poly import MultiPoly, UniPoly, as_fraction, format_rational, rational_roots
from .weyl import (NotProportional, f_power_element, twisted_apply,
                   twisted_scalar_profile, weyl_apply)

VERDICT_MATCH = "match"
VERDICT_DISPUTED = "mismatch-disputed-row"
VERDICT_MISMATCH = "mismatch"


# computed b-data per instance object; instances are interned by the catalog,
# so this avoids repeating the heavy twisted computation (the instance is kept
# alive in the value to pin its id)
_B_CACHE: dict = {}


def compute_b(inst: CaseInstance):
    """Return (monic b, c) with Delta(f^(s+1)) = c*b(s)*f^s, by twisted differentiation."""
    hit = _B_CACHE.get(id(inst))
    if hit is not None and hit[0] is inst:
        return hit[1], hit[2]
    b, c = _compute_b(inst)
    _B_CACHE[id(inst)] = (inst, b, c)
    return b, c


def _compute_b(inst: CaseInstance):
    e = f_power_element(1, inst.f)           # f^(s+1)
    result = twisted_apply(inst.delta, e, inst.f)
    if result.m != 0:
        raise NotProportional(
            f"case ({inst.case_id}) size {inst.size}: twisted result kept level {result.m}")
    profile = twisted_scalar_profile(result, inst.f, 0)
    if profile.is_zero():
        raise NotProportional(
            f"case ({inst.case_id}) size {inst.size}: Delta annihilates f^(s+1)")
    c, b = profile.monic()
    c = as_fraction(c)
    if c <= 0:
        raise NotProportional(
            f"case ({inst.case_id}) size {inst.size}: leading constant {c} is not positive")
    if b.degree() != inst.d:
        raise NotProportional(
            f"case ({inst.case_id}) size {inst.size}: deg b = {b.degree()} != deg f = {inst.d}")
    return b, c


@dataclass(frozen=True)
class BCertificate:
    case_id: int
    size: int
    b_monic: UniPoly
    c: Fraction
    expected: UniPoly          # the table row as printed
    roots: tuple               # rational roots of b_monic, with multiplicity
    verdict: str

    def to_json_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "size": self.size,
            "b_monic": [format_rational(c) for c in self.b_monic.coeffs],
            "c": format_rational(self.c),
            "b_expected": [format_rational(c) for c in self.expected.coeffs],
            "roots": [format_rational(r) for r in self.roots],
            "verdict": self.verdict,
        }


def factored(p: UniPoly) -> str:
    """Display form (s+1)(s+3/2)... when the rational roots account for all of p."""
    roots = rational_roots(p)
    if len(roots) != p.degree():
        return p.format()
    pieces = []
    for r in sorted(roots, reverse=True):
        off = -r
        if off == 0:
            pieces.append(f"{p.symbol}")
        elif off > 0:
            pieces.append(f"({p.symbol}+{off})")
        else:
            pieces.append(f"({p.symbol}{off})")
    return "".join(pieces)


def verify_table(case_id: int, size: int) -> BCertificate:
    """Compute b for the case and compare exactly against the printed table."""
    inst = instantiate(case_id, size)
    spec = case_spec(case_id)
    b, c = compute_b(inst)
    roots = rational_roots(b)
    if len(roots) != b.degree():
        raise NotProportional(
            f"case ({case_id}) size {size}: roots of b are not all rational")
    if b.evaluate(-1) != 0:
        raise NotProportional(f"case ({case_id}) size {size}: -1 is not a root of b")
    expected = inst.expected_b
    if b == expected:
        verdict = VERDICT_MATCH
    elif spec.disputed and b == spec.catalog_b(size):
        verdict = VERDICT_DISPUTED
    else:
        verdict = VERDICT_MISMATCH
    return BCertificate(case_id, size, b, c, expected, tuple(roots), verdict)


@dataclass(frozen=True)
class AnnihilationReport:
    case_id: int
    size: int
    m_max: int
    passed: bool
    first_failing: Optional[int]


def verify_annihilation(inst: CaseInstance, m_max: int = 6) -> AnnihilationReport:
    """Check (f Delta)(f^m) = c*b(m-1)*f^m for m = 0..m_max, exactly."""
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    b, c = compute_b(inst)
    fpow = MultiPoly.one(inst.f.arity)   # f^m, starting at m = 0
    for m in range(m_max + 1):
        lhs = inst.f * weyl_apply(inst.delta, fpow)
        rhs = fpow * (c * as_fraction(b.evaluate(m - 1)))
        if lhs != rhs:
            return AnnihilationReport(inst.case_id, inst.size, m_max, False, m)
        fpow = fpow * inst.f
    return AnnihilationReport(inst.case_id, inst.size, m_max, True, None)


def presentation_for(inst: CaseInstance):
    """Quotient-algebra presentation built from the oracle-computed b data."""
    from .algebra import APresentation

    b, c = compute_b(inst)
    return APresentation.from_b(inst.d, c, b)


def verify_all(pairs) -> list:
    """Certificates for a list of (case_id, size) pairs, in the given order."""
    return [verify_table(cid, n) for cid, n in pairs]
