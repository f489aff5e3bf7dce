"""Construction of the six-element quotient basis and its verification.

For order m the basis is (1, A1, s12 A1, A2, s12 A2, Delta^(2m+1)) where
A1, A2 are the degree 3m+1 and 3m+2 quasiinvariants assembled from the
null vectors of the coefficient systems and Delta is the Vandermonde
determinant.  build_basis returns a report carrying every element, the
raw null vectors, and the verification verdicts that were requested:

* "degrees": element degrees match (0, 3m+1, 3m+1, 3m+2, 3m+2, 6m+3).
* "quasi": plus quasiinvariance of every element and s23-invariance of
  A1 and A2.
* "full": plus linear independence modulo the ideal part (gated by
  ideal_budget since the graded solves grow quickly), and for m = 0 the
  coinvariant determinant certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linsys import build_system, det_exact, nullspace
from .poly import Polynomial, S12, S23, elementary, mono_sym, vandermonde_power
from .quasi import (
    coinvariant_nf,
    in_ideal_part,
    independent_modulo_ideal,
    is_quasiinvariant,
    quotient_degrees,
)

ELEMENT_NAMES = ("1", "A1", "s12(A1)", "A2", "s12(A2)", "Delta^(2m+1)")


class DegenerateSystemError(RuntimeError):
    """The coefficient system failed to determine a unique ansatz."""


def ansatz_coefficients(m: int, d: int):
    """Labels and normalized null vector of the degree-d system.

    Raises DegenerateSystemError unless the null space is exactly one
    dimensional with nonzero leading ([0, 0]) coordinate.
    """
    sys = build_system(m, d)
    vectors = nullspace(sys)
    if len(vectors) != 1:
        raise DegenerateSystemError(
            f"null space of system (m={m}, d={d}) has dimension "
            f"{len(vectors)}, expected 1"
        )
    vec = vectors[0]
    if vec[0] != 1:
        raise DegenerateSystemError(
            f"null vector of system (m={m}, d={d}) could not be normalized "
            "to leading coordinate 1"
        )
    return sys.cols, vec


def assemble_ansatz(d: int, labels, vec) -> Polynomial:
    """Sum of C_[i,j] x1^(d-i-j) m_[i,j](x2, x3)."""
    out = Polynomial.zero()
    for (i, j), coeff in zip(labels, vec):
        if not coeff:
            continue
        power = Polynomial.monomial((d - i - j, 0, 0), coeff)
        out = out + power * mono_sym(i, j)
    return out


def build_A1(m: int) -> Polynomial:
    """The degree 3m+1 quasiinvariant, normalized to leading coefficient 1."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    d = 3 * m + 1
    labels, vec = ansatz_coefficients(m, d)
    return assemble_ansatz(d, labels, vec)


def is_scalar_multiple(P: Polynomial, Q: Polynomial) -> bool:
    """True when P == c Q for some rational c (including c == 0)."""
    if P.is_zero():
        return True
    if Q.is_zero():
        return False
    if set(P.terms) != set(Q.terms):
        return False
    exp = next(iter(Q.terms))
    c = P.terms[exp] / Q.terms[exp]
    return all(P.terms[e] == c * Q.terms[e] for e in Q.terms)


def build_A2(m: int) -> Polynomial:
    """The degree 3m+2 quasiinvariant; checked against degenerating."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    d = 3 * m + 2
    labels, vec = ansatz_coefficients(m, d)
    A2 = assemble_ansatz(d, labels, vec)
    e1A1 = elementary(1) * build_A1(m)
    if is_scalar_multiple(A2, e1A1):
        raise DegenerateSystemError(
            f"A2 for m={m} is a scalar multiple of e1*A1"
        )
    return A2


@dataclass(frozen=True)
class BasisElement:
    name: str
    poly: Polynomial
    degree: int
    expected_degree: int
    quasi: object  # QuasiReport, or None when not requested
    s23_invariant: object  # bool, or None when not applicable/requested


@dataclass(frozen=True)
class BasisReport:
    m: int
    verify: str
    elements: tuple  # six BasisElement entries, ELEMENT_NAMES order
    null_vector_a1: tuple  # (labels, coefficients)
    null_vector_a2: tuple
    independence: dict  # check name -> bool, or None when skipped
    coinvariant_det: object  # Fraction for m == 0 full checks, else None

    @property
    def degrees_ok(self) -> bool:
        return all(e.degree == e.expected_degree for e in self.elements)

    @property
    def quasi_ok(self) -> bool:
        return all(
            e.quasi.is_quasiinvariant
            for e in self.elements
            if e.quasi is not None
        )

    @property
    def s23_ok(self) -> bool:
        return all(
            e.s23_invariant
            for e in self.elements
            if e.s23_invariant is not None
        )

    @property
    def passed(self) -> bool:
        independence_ok = all(
            v for v in self.independence.values() if v is not None
        )
        return self.degrees_ok and self.quasi_ok and self.s23_ok and independence_ok


VERIFY_LEVELS = ("degrees", "quasi", "full")


def build_basis(m: int, verify: str = "full", ideal_budget: int = 2) -> BasisReport:
    """Construct the six elements and verify them at the requested level.

    Independence checks run only for m <= ideal_budget; above that they
    are recorded as None (skipped), never silently passed.
    """
    if verify not in VERIFY_LEVELS:
        raise ValueError(f"verify must be one of {VERIFY_LEVELS}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    labels1, vec1 = ansatz_coefficients(m, 3 * m + 1)
    labels2, vec2 = ansatz_coefficients(m, 3 * m + 2)
    A1 = assemble_ansatz(3 * m + 1, labels1, vec1)
    A2 = assemble_ansatz(3 * m + 2, labels2, vec2)
    if is_scalar_multiple(A2, elementary(1) * A1):
        raise DegenerateSystemError(f"A2 for m={m} is a scalar multiple of e1*A1")
    delta_power = vandermonde_power(2 * m + 1)
    polys = (
        Polynomial.constant(1),
        A1,
        A1.apply_perm(S12),
        A2,
        A2.apply_perm(S12),
        delta_power,
    )
    expected = quotient_degrees(m)
    elements = []
    for name, P, want in zip(ELEMENT_NAMES, polys, expected):
        quasi = is_quasiinvariant(P, m) if verify in ("quasi", "full") else None
        s23 = None
        if verify in ("quasi", "full") and name in ("A1", "A2"):
            s23 = P.apply_perm(S23) == P
        deg = P.degree()
        elements.append(
            BasisElement(
                name=name,
                poly=P,
                degree=0 if deg is None else deg,
                expected_degree=want,
                quasi=quasi,
                s23_invariant=s23,
            )
        )

    independence = {
        "pair_degree_3m+1": None,
        "pair_degree_3m+2": None,
        "delta_power": None,
    }
    coinv_det = None
    if verify == "full" and m <= ideal_budget:
        independence["pair_degree_3m+1"] = independent_modulo_ideal(
            [polys[1], polys[2]], m
        )
        independence["pair_degree_3m+2"] = independent_modulo_ideal(
            [polys[3], polys[4]], m
        )
        independence["delta_power"] = not in_ideal_part(delta_power, m)
        if m == 0:
            rows = [coinvariant_nf(P) for P in polys]
            coinv_det = det_exact(rows)
            independence["coinvariant_det_nonzero"] = coinv_det != 0

    return BasisReport(
        m=m,
        verify=verify,
        elements=tuple(elements),
        null_vector_a1=(labels1, vec1),
        null_vector_a2=(labels2, vec2),
        independence=independence,
        coinvariant_det=coinv_det,
    )


# --- display ---------------------------------------------------------------


def _latex_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{%d \\over %d}" % (value.numerator, value.denominator)


def _latex_monomial(exp) -> str:
    parts = []
    for idx, e in enumerate(exp):
        if e == 1:
            parts.append(f"x_{idx + 1}")
        elif e > 1:
            parts.append(f"x_{idx + 1}^{e}" if e < 10 else f"x_{idx + 1}^{{{e}}}")
    return "".join(parts)


def _latex_coeff_prefix(coeff: Fraction, leading: bool) -> str:
    mag = abs(coeff)
    sign = "-" if coeff < 0 else ("" if leading else "+")
    body = "" if mag == 1 else _latex_rational(mag)
    return sign + (" " if sign and not leading else "") + body


def _sym_groups(P: Polynomial):
    """Split an s23-invariant polynomial into x1-power times m_[i,j] pieces.

    Returns a list of (x1 power, i, j, coefficient), ordered by descending
    x1 power then ascending (i, j); None when P is not s23-invariant.
    """
    if P.apply_perm(S23) != P:
        return None
    seen = set()
    groups = []
    for (a, b, c), coeff in P.sorted_terms():
        if (a, b, c) in seen:
            continue
        i, j = max(b, c), min(b, c)
        seen.add((a, b, c))
        seen.add((a, c, b))
        groups.append((a, i, j, coeff))
    groups.sort(key=lambda g: (-g[0], g[1], g[2]))
    return groups


def poly_to_latex(P: Polynomial) -> str:
    """LaTeX form: grouped ansatz style when s23-invariant, else monomials."""
    if P.is_zero():
        return "0"
    groups = _sym_groups(P)
    parts = []
    if groups is not None:
        for pos, (a, i, j, coeff) in enumerate(groups):
            prefix = _latex_coeff_prefix(coeff, pos == 0)
            x1 = _latex_monomial((a, 0, 0))
            if i == j == 0:
                body = x1 or "1"
            elif i == j == 1:
                body = f"{x1}(x_2x_3)"
            elif i == j:
                body = x1 + _latex_monomial((0, i, i))
            else:
                body = f"{x1}({_latex_monomial((0, i, j))} + {_latex_monomial((0, j, i))})"
            parts.append(prefix + body)
        return " ".join(parts)
    for pos, (exp, coeff) in enumerate(P.sorted_terms()):
        prefix = _latex_coeff_prefix(coeff, pos == 0)
        body = _latex_monomial(exp) or "1"
        parts.append(prefix + body)
    return " ".join(parts)
