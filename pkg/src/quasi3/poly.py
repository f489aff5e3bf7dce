"""Sparse exact polynomials in x1, x2, x3 and the S3 action on them.

A polynomial is a mapping from exponent triples (a, b, c) to nonzero
Fraction coefficients.  The canonical term order used for serialization
and normalization is graded lexicographic, highest first.

Permutations are image tuples (sigma(1), sigma(2), sigma(3)).  A
permutation acts on polynomials by substituting x_i -> x_{sigma(i)}, so
the operator product is composition: (compose(s, t))(P) = s(t(P)).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .arith import rational_from_str, rational_to_str

Exponent = tuple  # (a, b, c), nonnegative ints
Permutation = tuple  # (sigma(1), sigma(2), sigma(3))

IDENTITY: Permutation = (1, 2, 3)
S12: Permutation = (2, 1, 3)
S13: Permutation = (3, 2, 1)
S23: Permutation = (1, 3, 2)
ALL_PERMS: tuple = ((1, 2, 3), (2, 1, 3), (3, 2, 1), (1, 3, 2), (2, 3, 1), (3, 1, 2))
TRANSPOSITIONS = {(1, 2): S12, (1, 3): S13, (2, 3): S23}


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """Operator product: apply tau first, then sigma."""
    return tuple(sigma[tau[i] - 1] for i in range(3))


def sign(sigma: Permutation) -> int:
    inv = sum(
        1
        for a in range(3)
        for b in range(a + 1, 3)
        if sigma[a] > sigma[b]
    )
    return -1 if inv % 2 else 1


def term_key(exp: Exponent):
    """Sort key for graded lex order (ascending; reverse for canonical)."""
    return (sum(exp), exp)


def _check_exponent(exp) -> Exponent:
    exp = tuple(exp)
    if len(exp) != 3 or any((not isinstance(e, int)) or e < 0 for e in exp):
        raise ValueError(f"bad exponent triple: {exp!r}")
    return exp


class Polynomial:
    """Immutable sparse polynomial over the rationals in x1, x2, x3."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, coeff in dict(terms).items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[_check_exponent(exp)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({(0, 0, 0): Fraction(c)})

    @classmethod
    def variable(cls, i: int) -> "Polynomial":
        if i not in (1, 2, 3):
            raise ValueError("variable index must be 1, 2, or 3")
        exp = [0, 0, 0]
        exp[i - 1] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def monomial(cls, exp, coeff=1) -> "Polynomial":
        return cls({tuple(exp): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def var_degree(self, i: int) -> int:
        """Largest exponent of x_i appearing (0 for the zero polynomial)."""
        if i not in (1, 2, 3):
            raise ValueError("variable index must be 1, 2, or 3")
        return max((e[i - 1] for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self):
        """Terms in canonical order: graded lex, highest first."""
        return sorted(self.terms.items(), key=lambda t: term_key(t[0]), reverse=True)

    def apply_perm(self, sigma: Permutation) -> "Polynomial":
        """Substitute x_i -> x_{sigma(i)} in every monomial."""
        out = {}
        for exp, coeff in self.terms.items():
            moved = [0, 0, 0]
            for pos in range(3):
                moved[sigma[pos] - 1] = exp[pos]
            out[tuple(moved)] = coeff
        return Polynomial(out)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            s = out.get(exp, Fraction(0)) + coeff
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial()
            return Polynomial({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    def to_json_obj(self):
        """List of {"e": [a, b, c], "c": "num/den"} in canonical order."""
        return [
            {"e": list(exp), "c": rational_to_str(coeff)}
            for exp, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json_obj(cls, obj) -> "Polynomial":
        if not isinstance(obj, list):
            raise ValueError("polynomial JSON must be a list of terms")
        out = {}
        for item in obj:
            if not isinstance(item, dict) or set(item) != {"e", "c"}:
                raise ValueError(f"bad term object: {item!r}")
            exp = _check_exponent(item["e"])
            coeff = rational_from_str(item["c"])
            if exp in out:
                raise ValueError(f"duplicate exponent {exp} in polynomial JSON")
            out[exp] = coeff
        return cls(out)


def _coerce(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    return NotImplemented


def mono_sym(i: int, j: int) -> Polynomial:
    """m_[i,j]: x2^i x3^j + x2^j x3^i for i != j, the single term for i == j."""
    if i < 0 or j < 0:
        raise ValueError("exponents must be nonnegative")
    i, j = max(i, j), min(i, j)
    if i == j:
        return Polynomial.monomial((0, i, i))
    return Polynomial({(0, i, j): 1, (0, j, i): 1})


def elementary(k: int) -> Polynomial:
    """Elementary symmetric polynomial e_k in x1, x2, x3."""
    if k == 1:
        return Polynomial({(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    if k == 2:
        return Polynomial({(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    if k == 3:
        return Polynomial.monomial((1, 1, 1))
    raise ValueError("k must be 1, 2, or 3")


def vandermonde() -> Polynomial:
    """(x1 - x2)(x1 - x3)(x2 - x3)."""
    x1, x2, x3 = (Polynomial.variable(i) for i in (1, 2, 3))
    return (x1 - x2) * (x1 - x3) * (x2 - x3)


def vandermonde_power(p: int) -> Polynomial:
    return vandermonde() ** p


# --- plain-text format ----------------------------------------------------
#
# expr   := ['+'|'-'] term (('+'|'-') term)*
# term   := coeff | coeff '*'? factors | factors
# coeff  := int | int '/' int
# factor := 'x' ('1'|'2'|'3') ['^' int]
#
# Whitespace is ignored; '*' between factors is optional.

_TERM_RE = re.compile(
    r"(?P<coeff>\d+(?:/\d+)?)?(?P<factors>(?:\*?x[123](?:\^\d+)?)*)\Z"
)
_FACTOR_RE = re.compile(r"x([123])(?:\^(\d+))?")


def parse_poly(text: str) -> Polynomial:
    """Parse the plain-text polynomial grammar (see module docstring)."""
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty polynomial expression")
    chunks = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(chunks) != compact:
        raise ValueError(f"cannot tokenize polynomial: {text!r}")
    out = {}
    for chunk in chunks:
        sgn = 1
        body = chunk
        if body[0] in "+-":
            if body[0] == "-":
                sgn = -1
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or not body:
            raise ValueError(f"bad term {chunk!r} in polynomial: {text!r}")
        coeff_text = m.group("coeff")
        factors = m.group("factors") or ""
        if coeff_text is None and not factors:
            raise ValueError(f"bad term {chunk!r} in polynomial: {text!r}")
        coeff = rational_from_str(coeff_text) if coeff_text else Fraction(1)
        exp = [0, 0, 0]
        consumed = 0
        for fm in _FACTOR_RE.finditer(factors):
            exp[int(fm.group(1)) - 1] += int(fm.group(2) or 1)
            consumed += 1
        if consumed != factors.replace("*", "").count("x"):
            raise ValueError(f"bad factors in term {chunk!r}")
        key = tuple(exp)
        out[key] = out.get(key, Fraction(0)) + sgn * coeff
    return Polynomial(out)


def _format_term(exp: Exponent, coeff: Fraction) -> str:
    factors = []
    for idx, e in enumerate(exp):
        if e == 1:
            factors.append(f"x{idx + 1}")
        elif e > 1:
            factors.append(f"x{idx + 1}^{e}")
    mag = abs(coeff)
    if not factors:
        return rational_to_str(mag)
    body = "*".join(factors)
    if mag == 1:
        return body
    return f"{rational_to_str(mag)}*{body}"


def format_poly(P: Polynomial) -> str:
    """Canonical plain-text form; parse_poly(format_poly(P)) == P."""
    if P.is_zero():
        return "0"
    parts = []
    for pos, (exp, coeff) in enumerate(P.sorted_terms()):
        text = _format_term(exp, coeff)
        if pos == 0:
            parts.append(text if coeff > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
    return " ".join(parts)
