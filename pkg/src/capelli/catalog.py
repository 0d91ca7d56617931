"""The eight Capelli-type representations with one-dimensional quotient.

Each case ships a constructor producing the relative invariant f, its
dual constant-coefficient operator Delta, the Euler operator theta, and
the monic b-polynomial printed in the published table.  Two table rows
are internally inconsistent (their printed b does not fit deg f); those
rows carry a ``disputed`` flag together with a corrected rule, and the
differential-operator oracle is the authority on which is right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Optional

from .poly import MultiPoly, UniPoly
from .weyl import WeylOp


@dataclass(frozen=True)
class CaseSpec:
    case_id: int
    name: str
    fixed_size: Optional[int]        # None for parametric cases
    min_size: int
    even_only: bool
    size_rule: str
    deg_f_rule: str
    deg_f: Callable[[int], int]
    b_rule: str                      # as printed in the table
    printed_b_offsets: Callable[[int], list]
    corrected_b_offsets: Optional[Callable[[int], list]]
    corrected_b_rule: Optional[str]
    disputed: bool
    isotropy_g: str                  # generic isotropy in G (display only)
    isotropy_derived: str            # generic isotropy in G' (display only)

    def valid_size(self, n: int) -> bool:
        if self.fixed_size is not None:
            return n == self.fixed_size
        if n < self.min_size:
            return False
        if self.even_only and n % 2 != 0:
            return False
        return True

    @property
    def minimal_size(self) -> int:
        return self.fixed_size if self.fixed_size is not None else self.min_size

    def expected_b(self, n: int) -> UniPoly:
        """Monic b-polynomial in s as printed in the table."""
        return UniPoly.from_offsets("s", self.printed_b_offsets(n))

    def catalog_b(self, n: int) -> UniPoly:
        """The catalog's working rule: corrected on disputed rows."""
        offs = (self.corrected_b_offsets or self.printed_b_offsets)(n)
        return UniPoly.from_offsets("s", offs)

    def to_json_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "name": self.name,
            "size_rule": self.size_rule,
            "deg_f_rule": self.deg_f_rule,
            "b_rule": self.b_rule,
            "corrected_b_rule": self.corrected_b_rule,
            "disputed": self.disputed,
            "isotropy_g": self.isotropy_g,
            "isotropy_derived": self.isotropy_derived,
        }


@dataclass(frozen=True)
class CaseInstance:
    case_id: int
    size: int
    variables: tuple
    f: MultiPoly
    delta: WeylOp
    theta: WeylOp
    d: int
    expected_b: UniPoly

    @property
    def spec(self) -> CaseSpec:
        return case_spec(self.case_id)

    @property
    def arity(self) -> int:
        return len(self.variables)


def _half(i: int) -> Fraction:
    return Fraction(i, 2)


CASES = [
    CaseSpec(
        case_id=1,
        name="(SO(n) x C*, C^n)",
        fixed_size=None, min_size=2, even_only=False, size_rule="n >= 2",
        deg_f_rule="2",
        deg_f=lambda n: 2,
        b_rule="(s+1)(s+n/2)",
        printed_b_offsets=lambda n: [Fraction(1), _half(n)],
        corrected_b_offsets=None, corrected_b_rule=None, disputed=False,
        isotropy_g="SO(1) x SO(n-1)", isotropy_derived="SO(1) x SO(n-1)",
    ),
    CaseSpec(
        case_id=2,
        name="(GL(n), Sym^2 C^n)",
        fixed_size=None, min_size=2, even_only=False, size_rule="n >= 2",
        deg_f_rule="n",
        deg_f=lambda n: n,
        b_rule="prod_{i=1..n} (s+(i+1)/2)",
        printed_b_offsets=lambda n: [_half(i + 1) for i in range(1, n + 1)],
        corrected_b_offsets=None, corrected_b_rule=None, disputed=False,
        isotropy_g="O(n)", isotropy_derived="SO(n)",
    ),
    CaseSpec(
        case_id=3,
        name="(GL(n), Alt^2 C^n), n even",
        fixed_size=None, min_size=4, even_only=True, size_rule="n even, n >= 4",
        deg_f_rule="n/2",
        deg_f=lambda n: n // 2,
        b_rule="prod_{i=1..n} (s+2i-1)",
        printed_b_offsets=lambda n: [Fraction(2 * i - 1) for i in range(1, n + 1)],
        corrected_b_offsets=lambda n: [Fraction(2 * i - 1) for i in range(1, n // 2 + 1)],
        corrected_b_rule="prod_{i=1..n/2} (s+2i-1)",
        disputed=True,
        isotropy_g="Sp(n/2)", isotropy_derived="Sp(n/2)",
    ),
    CaseSpec(
        case_id=4,
        name="(GL(n) x SL(n), M_n(C))",
        fixed_size=None, min_size=2, even_only=False, size_rule="n >= 2",
        deg_f_rule="n",
        deg_f=lambda n: n,
        b_rule="prod_{i=1..n} (s+i)",
        printed_b_offsets=lambda n: [Fraction(i) for i in range(1, n + 1)],
        corrected_b_offsets=None, corrected_b_rule=None, disputed=False,
        isotropy_g="Sp(1) x Sp(n-1)", isotropy_derived="Sp(1) x Sp(n-1)",
    ),
    CaseSpec(
        case_id=5,
        name="(Sp(n) x GL(2), (C^2n)^2)",
        fixed_size=None, min_size=2, even_only=False, size_rule="n >= 2",
        deg_f_rule="2",
        deg_f=lambda n: 2,
        b_rule="(s+1)(s+2n)",
        printed_b_offsets=lambda n: [Fraction(1), Fraction(2 * n)],
        corrected_b_offsets=None, corrected_b_rule=None, disputed=False,
        isotropy_g="SL(n)", isotropy_derived="SL(n)",
    ),
    CaseSpec(
        case_id=6,
        name="(SO(7) x C*, spin C^8)",
        fixed_size=8, min_size=8, even_only=False, size_rule="fixed, 8",
        deg_f_rule="2",
        deg_f=lambda n: 2,
        b_rule="(s+2)(s+4)",
        printed_b_offsets=lambda n: [Fraction(2), Fraction(4)],
        corrected_b_offsets=lambda n: [Fraction(1), Fraction(4)],
        corrected_b_rule="(s+1)(s+4)",
        disputed=True,
        isotropy_g="SO(1) x SO(6)", isotropy_derived="SO(1) x SO(6)",
    ),
    CaseSpec(
        case_id=7,
        name="(G_2 x C*, C^7)",
        fixed_size=7, min_size=7, even_only=False, size_rule="fixed, 7",
        deg_f_rule="2",
        deg_f=lambda n: 2,
        b_rule="(s+1)(s+7/2)",
        printed_b_offsets=lambda n: [Fraction(1), Fraction(7, 2)],
        corrected_b_offsets=None, corrected_b_rule=None, disputed=False,
        isotropy_g="", isotropy_derived="",
    ),
    CaseSpec(
        case_id=8,
        name="(GL(4) x Sp(2), M_4(C))",
        fixed_size=4, min_size=4, even_only=False, size_rule="fixed, 4",
        deg_f_rule="4",
        deg_f=lambda n: 4,
        b_rule="(s+1)(s+2)(s+3)(s+4)",
        printed_b_offsets=lambda n: [Fraction(i) for i in range(1, 5)],
        corrected_b_offsets=None, corrected_b_rule=None, disputed=False,
        isotropy_g="", isotropy_derived="",
    ),
]

# minimal legal size per case, used by `bs verify-all --sizes min`;
# case (4) is verified at n=3 as well so the degree-3 determinant row
# is exercised
MIN_VERIFY_SIZES = [(1, 2), (2, 2), (3, 4), (4, 2), (4, 3), (5, 2), (6, 8), (7, 7), (8, 4)]
DEFAULT_VERIFY_SIZES = MIN_VERIFY_SIZES + [(1, 4), (2, 3), (3, 6), (5, 3)]


def list_cases() -> list:
    """The eight catalog rows, in order."""
    return list(CASES)


def case_spec(case_id: int) -> CaseSpec:
    for spec in CASES:
        if spec.case_id == case_id:
            return spec
    raise ValueError(f"no such case: {case_id}")


# -- polynomial constructions ------------------------------------------


def _det(entry, n: int, arity: int) -> MultiPoly:
    """Determinant of the n x n matrix whose (i,j) entry is described by
    entry(i,j) -> (variable index, scalar factor)."""
    terms = {}
    for sigma in permutations(range(n)):
        sign = 1
        seen = list(sigma)
        # parity via inversion count (n <= 4 in practice)
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j])
        if inv % 2:
            sign = -1
        exps = [0] * arity
        coef = sign
        for i in range(n):
            idx, factor = entry(i, sigma[i])
            exps[idx] += 1
            coef = coef * factor
        key = tuple(exps)
        acc = terms.get(key, 0) + coef
        if acc == 0:
            terms.pop(key, None)
        else:
            terms[key] = acc
    return MultiPoly(arity, terms)


def _pfaffian(indices, var_of_pair, arity) -> MultiPoly:
    """Pfaffian over an even-sized sorted index tuple; expansion along the
    smallest index with alternating signs."""
    if not indices:
        return MultiPoly.one(arity)
    i0 = indices[0]
    rest = indices[1:]
    out = MultiPoly.zero(arity)
    for pos, j in enumerate(rest):
        sign = 1 if pos % 2 == 0 else -1
        sub = tuple(t for t in rest if t != j)
        term = MultiPoly.variable(arity, var_of_pair[(i0, j)]) * _pfaffian(sub, var_of_pair, arity)
        out = out + (term if sign == 1 else -term)
    return out


def _quadric_instance(case_id: int, dim: int, size: int, spec: CaseSpec) -> CaseInstance:
    names = tuple(f"x{i + 1}" for i in range(dim))
    f = MultiPoly.zero(dim)
    for i in range(dim):
        e = [0] * dim
        e[i] = 2
        f = f + MultiPoly.monomial(dim, e, 1)
    delta = WeylOp.const_coeff_from_poly(f)
    return CaseInstance(case_id, size, names, f, delta, WeylOp.euler(dim), 2,
                        spec.expected_b(size))


def _case1(n: int, spec: CaseSpec) -> CaseInstance:
    return _quadric_instance(1, n, n, spec)


def _case2(n: int, spec: CaseSpec) -> CaseInstance:
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    idx = {}
    for k, (i, j) in enumerate(pairs):
        idx[(i, j)] = k
        idx[(j, i)] = k
    names = tuple(f"x{i + 1}{j + 1}" for i, j in pairs)
    arity = len(pairs)
    f = _det(lambda i, j: (idx[(i, j)], 1), n, arity)
    # dual operator: half weight on off-diagonal entries
    g = _det(lambda i, j: (idx[(i, j)], 1 if i == j else Fraction(1, 2)), n, arity)
    delta = WeylOp.const_coeff_from_poly(g)
    return CaseInstance(2, n, names, f, delta, WeylOp.euler(arity), n, spec.expected_b(n))


def _case3(n: int, spec: CaseSpec) -> CaseInstance:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = {(i, j): k for k, (i, j) in enumerate(pairs)}
    names = tuple(f"x{i + 1}{j + 1}" for i, j in pairs)
    arity = len(pairs)
    f = _pfaffian(tuple(range(n)), idx, arity)
    delta = WeylOp.const_coeff_from_poly(f)
    return CaseInstance(3, n, names, f, delta, WeylOp.euler(arity), n // 2,
                        spec.expected_b(n))


def _matrix_instance(case_id: int, n: int, size: int, spec: CaseSpec) -> CaseInstance:
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    names = tuple(f"x{i + 1}{j + 1}" for i in range(n) for j in range(n))
    arity = n * n
    f = _det(lambda i, j: (idx[(i, j)], 1), n, arity)
    delta = WeylOp.const_coeff_from_poly(f)
    return CaseInstance(case_id, size, names, f, delta, WeylOp.euler(arity), n,
                        spec.expected_b(size))


def _case5(n: int, spec: CaseSpec) -> CaseInstance:
    # two vectors in C^2n; f is the symplectic pairing
    arity = 4 * n
    names = tuple(f"x{i + 1}" for i in range(2 * n)) + tuple(f"y{i + 1}" for i in range(2 * n))
    f = MultiPoly.zero(arity)
    for i in range(n):
        e1 = [0] * arity
        e1[i] = 1
        e1[2 * n + n + i] = 1           # x_i * y_{n+i}
        e2 = [0] * arity
        e2[n + i] = 1
        e2[2 * n + i] = 1               # x_{n+i} * y_i
        f = f + MultiPoly.monomial(arity, e1, 1) - MultiPoly.monomial(arity, e2, 1)
    delta = WeylOp.const_coeff_from_poly(f)
    return CaseInstance(5, n, names, f, delta, WeylOp.euler(arity), 2, spec.expected_b(n))


def instantiate(case_id: int, size: int) -> CaseInstance:
    """Build f, Delta, theta for a catalog case at the given size."""
    spec = case_spec(case_id)
    if not spec.valid_size(size):
        raise ValueError(
            f"invalid size {size} for case ({case_id}): size rule is {spec.size_rule}")
    return _instantiate_cached(case_id, size)


@lru_cache(maxsize=None)
def _instantiate_cached(case_id: int, size: int) -> CaseInstance:
    spec = case_spec(case_id)
    if case_id == 1:
        return _case1(size, spec)
    if case_id == 2:
        return _case2(size, spec)
    if case_id == 3:
        return _case3(size, spec)
    if case_id == 4:
        return _matrix_instance(4, size, size, spec)
    if case_id == 5:
        return _case5(size, spec)
    if case_id == 6:
        return _quadric_instance(6, 8, 8, spec)
    if case_id == 7:
        return _quadric_instance(7, 7, 7, spec)
    if case_id == 8:
        return _matrix_instance(8, 4, 4, spec)
    raise ValueError(f"no such case: {case_id}")


def catalog_json() -> list:
    return [spec.to_json_dict() for spec in CASES]
