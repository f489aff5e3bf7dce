"""The group algebra of S3 acting on polynomials.

Elements are formal rational combinations of the six permutations.  The
product is convolution, matching operator composition on polynomials:
(g * h)(P) = g(h(P)).  The four named elements are

    S3sym = (1/6) sum_sigma sigma
    S3alt = (1/6) sum_sigma sgn(sigma) sigma
    pi1   = (1/3) (1 + s23)(1 - s12)
    pi2   = (1/3) (1 + s12)(1 - s23)

and the identities they satisfy (idempotence, mutual annihilation, the
resolution of the identity, s23 pi1 = pi1, pi2 s12 pi1 = -s13 pi1) are
verified both at the element level and on sample polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import (
    ALL_PERMS,
    IDENTITY,
    S12,
    S13,
    S23,
    Polynomial,
    compose,
    sign,
)


class GroupAlgebraElement:
    """A rational combination of the six permutations of S3."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for perm, c in dict(coeffs).items():
                perm = tuple(perm)
                if sorted(perm) != [1, 2, 3]:
                    raise ValueError(f"not a permutation of (1,2,3): {perm!r}")
                c = Fraction(c)
                if c:
                    clean[perm] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GroupAlgebraElement is immutable")

    @classmethod
    def from_perm(cls, perm, coeff=1) -> "GroupAlgebraElement":
        return cls({tuple(perm): coeff})

    @classmethod
    def one(cls) -> "GroupAlgebraElement":
        return cls({IDENTITY: 1})

    @classmethod
    def zero(cls) -> "GroupAlgebraElement":
        return cls()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        out = dict(self.coeffs)
        for perm, c in other.coeffs.items():
            s = out.get(perm, Fraction(0)) + c
            if s:
                out[perm] = s
            else:
                out.pop(perm, None)
        return GroupAlgebraElement(out)

    def __neg__(self):
        return GroupAlgebraElement({p: -c for p, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupAlgebraElement(
                {p: c * other for p, c in self.coeffs.items()}
            )
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        out = {}
        for p1, c1 in self.coeffs.items():
            for p2, c2 in other.coeffs.items():
                key = compose(p1, p2)
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return GroupAlgebraElement(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "GroupAlgebraElement(0)"
        parts = [f"{c}*{p}" for p, c in sorted(self.coeffs.items())]
        return f"GroupAlgebraElement({' + '.join(parts)})"

    def apply(self, P: Polynomial) -> Polynomial:
        """Act on a polynomial: sum of coeff * (permuted P)."""
        out = Polynomial.zero()
        for perm, c in self.coeffs.items():
            out = out + P.apply_perm(perm) * c
        return out


def make_element(name: str) -> GroupAlgebraElement:
    """Build one of the four named elements: S3sym, S3alt, pi1, pi2."""
    one = GroupAlgebraElement.one()
    s12 = GroupAlgebraElement.from_perm(S12)
    s23 = GroupAlgebraElement.from_perm(S23)
    if name == "S3sym":
        return GroupAlgebraElement({p: Fraction(1, 6) for p in ALL_PERMS})
    if name == "S3alt":
        return GroupAlgebraElement(
            {p: Fraction(sign(p), 6) for p in ALL_PERMS}
        )
    if name == "pi1":
        return (one + s23) * (one - s12) * Fraction(1, 3)
    if name == "pi2":
        return (one + s12) * (one - s23) * Fraction(1, 3)
    raise ValueError(f"unknown element name: {name!r}")


ELEMENT_NAMES = ("S3sym", "S3alt", "pi1", "pi2")


def _identity_pairs():
    """The named identities as (label, lhs, rhs) element pairs."""
    sym = make_element("S3sym")
    alt = make_element("S3alt")
    pi1 = make_element("pi1")
    pi2 = make_element("pi2")
    one = GroupAlgebraElement.one()
    zero = GroupAlgebraElement.zero()
    s13 = GroupAlgebraElement.from_perm(S13)
    s23 = GroupAlgebraElement.from_perm(S23)
    s12 = GroupAlgebraElement.from_perm(S12)
    return (
        ("pi1 idempotent", pi1 * pi1, pi1),
        ("pi2 idempotent", pi2 * pi2, pi2),
        ("S3alt pi1 = 0", alt * pi1, zero),
        ("pi1 pi2 = 0", pi1 * pi2, zero),
        ("pi2 pi1 = 0", pi2 * pi1, zero),
        ("S3sym + pi1 + pi2 + S3alt = 1", sym + pi1 + pi2 + alt, one),
        ("s23 pi1 = pi1", s23 * pi1, pi1),
        ("pi2 s12 pi1 = -s13 pi1", pi2 * s12 * pi1, -(s13 * pi1)),
    )


IDENTITY_LABELS = tuple(label for label, _, _ in _identity_pairs())


@dataclass(frozen=True)
class IdentityReport:
    """Element-level verdicts plus per-sample polynomial verdicts."""

    element_level: dict  # label -> bool
    sample_level: tuple  # one dict per sample polynomial
    passed: bool


def verify_identities(samples) -> IdentityReport:
    """Check every named identity exactly, in the algebra and on samples."""
    pairs = _identity_pairs()
    element_level = {label: (lhs == rhs) for label, lhs, rhs in pairs}
    sample_level = []
    for P in samples:
        verdicts = {
            label: (lhs.apply(P) == rhs.apply(P)) for label, lhs, rhs in pairs
        }
        sample_level.append(verdicts)
    passed = all(element_level.values()) and all(
        all(v.values()) for v in sample_level
    )
    return IdentityReport(
        element_level=element_level,
        sample_level=tuple(sample_level),
        passed=passed,
    )
