"""Exact algebra of polynomials in the noncommuting generators x_i, p_i, sigma_i, beta.

Every expression is held in a canonical normal form: a sorted sum of monomials

    coefficient * beta^b * x_x^i x_y^j x_z^k * p_x^l p_y^m p_z^n * sigma_s

where the coefficient is an exact complex rational times integer powers of the
scalar symbols (hbar, c, m, field components, mu_a, Phi).  Products are
rewritten with

    [x_i, p_j] = i hbar delta_ij        x's commute, p's commute
    sigma_i sigma_j = delta_ij + i eps_ijk sigma_k   (right handed)
    beta^2 = 1,  beta central

so equality of expressions is literal equality of canonical forms, with no
floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "SCALAR_SYMBOLS", "GENERATOR_TOKENS", "QC", "Scalar", "OperatorExpr",
    "UnknownSymbolError", "position", "momentum", "pauli", "symbol", "number",
    "dot", "cross", "normalize", "add", "mul", "scale", "commutator",
    "adjoint", "substitute", "coefficient_of", "is_hermitian",
    "ZERO", "ONE", "IMAG", "BETA", "X", "P", "SIG",
    "HBAR", "C", "M", "MU_A", "PHI", "A_FIELD", "G_FIELD",
]

SCALAR_SYMBOLS = ("hbar", "c", "m", "mu_a",
                  "a_x", "a_y", "a_z", "g_x", "g_y", "g_z", "Phi")

_AXIS_INDEX = {"x": 0, "y": 1, "z": 2, 0: 0, 1: 1, 2: 2}


class UnknownSymbolError(ValueError):
    """Raised when a token is neither a generator nor a known scalar symbol."""

    def __init__(self, token):
        self.token = token
        super().__init__(f"unknown symbol: {token!r}")


# ---------------------------------------------------------------------------
# exact complex rationals


@dataclass(frozen=True)
class QC:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "QC":
        if isinstance(value, QC):
            return value
        if isinstance(value, (int, Fraction)):
            return QC(Fraction(value), Fraction(0))
        raise TypeError(f"cannot coerce {type(value).__name__} to QC")

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "QC":
        return QC(-self.re, -self.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    def inverse(self) -> "QC":
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("inverse of zero")
        return QC(self.re / d, -self.im / d)

    def __pow__(self, n: int) -> "QC":
        if n < 0:
            return self.inverse() ** (-n)
        out = QC(Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


_QC_ONE = QC(Fraction(1))
_QC_I = QC(Fraction(0), Fraction(1))
_QC_MINUS_I = QC(Fraction(0), Fraction(-1))


# ---------------------------------------------------------------------------
# scalar coefficients: exact Laurent polynomials in the scalar symbols

SymPowers = tuple  # tuple[tuple[str, int], ...], sorted by symbol name


def _sympow(mapping: Mapping[str, int]) -> SymPowers:
    return tuple(sorted((s, e) for s, e in mapping.items() if e != 0))


@dataclass(frozen=True)
class Scalar:
    """Sum of terms, each an exact complex rational times symbol powers.

    A single term covers products like (3/4) hbar m^-1 c^-2; keeping a sum
    lets coefficients such as 1 + mu_a merge into one monomial coefficient.
    """

    terms: tuple = ()  # tuple[(SymPowers, QC)], sorted by SymPowers

    @staticmethod
    def _make(acc: dict) -> "Scalar":
        return Scalar(tuple(sorted((k, v) for k, v in acc.items()
                                   if not v.is_zero)))

    @staticmethod
    def of(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction, QC)):
            q = QC.of(value)
            return Scalar() if q.is_zero else Scalar((((), q),))
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    @staticmethod
    def sym(name: str, power: int = 1) -> "Scalar":
        if name not in SCALAR_SYMBOLS:
            raise UnknownSymbolError(name)
        if power == 0:
            return Scalar.of(1)
        return Scalar((((((name, power),)), _QC_ONE),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> "Scalar":
        other = Scalar.of(other)
        acc = dict(self.terms)
        for sp, q in other.terms:
            acc[sp] = acc.get(sp, QC()) + q
        return Scalar._make(acc)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(tuple((sp, -q) for sp, q in self.terms))

    def __sub__(self, other) -> "Scalar":
        return self + (-Scalar.of(other))

    def __mul__(self, other) -> "Scalar":
        other = Scalar.of(other)
        acc: dict = {}
        for sp1, q1 in self.terms:
            d1 = dict(sp1)
            for sp2, q2 in other.terms:
                d = dict(d1)
                for s, e in sp2:
                    d[s] = d.get(s, 0) + e
                key = _sympow(d)
                acc[key] = acc.get(key, QC()) + q1 * q2
        return Scalar._make(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar.of(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "Scalar":
        # scalar symbols are real, so only the rational part conjugates
        return Scalar(tuple(sorted((sp, q.conjugate()) for sp, q in self.terms)))

    def inverse(self) -> "Scalar":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        if len(self.terms) != 1:
            raise ValueError("only single-term scalars can be inverted")
        sp, q = self.terms[0]
        return Scalar(((tuple((s, -e) for s, e in sp), q.inverse()),))

    def as_fraction(self) -> Fraction:
        """The value as a plain rational; error if symbolic or complex."""
        if self.is_zero:
            return Fraction(0)
        if len(self.terms) != 1 or self.terms[0][0] != ():
            raise ValueError(f"scalar is not a pure rational: {self}")
        q = self.terms[0][1]
        if q.im != 0:
            raise ValueError(f"scalar is not real: {self}")
        return q.re

    def substitute(self, bindings: Mapping[str, object]) -> "Scalar":
        """Replace symbols by rationals or by (possibly negated) symbols."""
        acc: dict = {}
        for sp, q in self.terms:
            qq = q
            d: dict = {}
            for s, e in sp:
                if s not in bindings:
                    d[s] = d.get(s, 0) + e
                    continue
                val = bindings[s]
                if isinstance(val, str):
                    sign = 1
                    name = val
                    if name.startswith("-"):
                        sign = -1
                        name = name[1:]
                    if name not in SCALAR_SYMBOLS:
                        raise UnknownSymbolError(name)
                    if sign < 0 and e % 2:
                        qq = -qq
                    d[name] = d.get(name, 0) + e
                else:
                    f = Fraction(val)
                    if f == 0 and e < 0:
                        raise ZeroDivisionError(
                            f"binding {s} = 0 with negative exponent {e}")
                    qq = qq * QC.of(f ** e)
            key = _sympow(d)
            acc[key] = acc.get(key, QC()) + qq
        return Scalar._make(acc)

    def eval(self, bindings: Mapping[str, float]) -> complex:
        """Numeric value; raises listing any unbound symbols."""
        missing = sorted({s for sp, _ in self.terms for s, _ in sp
                          if s not in bindings})
        if missing:
            raise ValueError(f"unbound symbols: {', '.join(missing)}")
        total = 0j
        for sp, q in self.terms:
            v = q.to_complex()
            for s, e in sp:
                v *= float(bindings[s]) ** e
            total += v
        return total

    def __str__(self) -> str:
        from . import syntax
        return syntax.format_scalar(self)


# ---------------------------------------------------------------------------
# generator parts and their multiplication

# (beta, (nx, ny, nz) position powers, (nx, ny, nz) momentum powers, sigma)
GenPart = tuple
IDENTITY_PART: GenPart = (0, (0, 0, 0), (0, 0, 0), 0)

# sigma_a sigma_b = table[(a, b)] with a, b in 0..3, 0 the identity
_PAULI_MUL = {}
for _s in range(4):
    _PAULI_MUL[(0, _s)] = (_s, _QC_ONE)
    _PAULI_MUL[(_s, 0)] = (_s, _QC_ONE)
    if _s:
        _PAULI_MUL[(_s, _s)] = (0, _QC_ONE)
for _a, _b, _c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
    _PAULI_MUL[(_a, _b)] = (_c, _QC_I)
    _PAULI_MUL[(_b, _a)] = (_c, _QC_MINUS_I)


def _px_swap(n: int, m: int) -> Iterator[tuple[int, int]]:
    # p^n x^m = sum_k k! C(n,k) C(m,k) (-i hbar)^k x^(m-k) p^(n-k)
    for k in range(min(n, m) + 1):
        yield k, math.comb(n, k) * math.comb(m, k) * math.factorial(k)


def _genpart_mul(g1: GenPart, g2: GenPart) -> list:
    """Product of two canonical generator parts as [(GenPart, Scalar)]."""
    b = (g1[0] + g2[0]) % 2
    sig, phase = _PAULI_MUL[(g1[3], g2[3])]
    # per axis: x^a1 p^c1 x^a2 p^c2 needs p^c1 x^a2 reordered
    options = []
    for ax in range(3):
        a1, c1 = g1[1][ax], g1[2][ax]
        a2, c2 = g2[1][ax], g2[2][ax]
        options.append([(k, w, a1 + a2 - k, c1 + c2 - k)
                        for k, w in _px_swap(c1, a2)])
    out = []
    for ox in options[0]:
        for oy in options[1]:
            for oz in options[2]:
                k = ox[0] + oy[0] + oz[0]
                w = ox[1] * oy[1] * oz[1]
                coeff = QC.of(w) * phase * (_QC_MINUS_I ** k)
                s = Scalar((( (("hbar", k),) if k else (), coeff),))
                gp = (b, (ox[2], oy[2], oz[2]), (ox[3], oy[3], oz[3]), sig)
                out.append((gp, s))
    return out


# ---------------------------------------------------------------------------
# operator expressions


ScalarLike = Union[int, Fraction, QC, "Scalar"]


@dataclass(frozen=True)
class OperatorExpr:
    """Canonical sum of monomials, sorted by generator part.

    Invariants: no zero coefficients, no two monomials with the same
    generator part, beta power 0 or 1, generator exponents nonnegative.
    """

    terms: tuple = ()  # tuple[(GenPart, Scalar)], sorted by GenPart

    @staticmethod
    def _from_map(acc: Mapping) -> "OperatorExpr":
        return OperatorExpr(tuple(sorted(
            (gp, s) for gp, s in acc.items() if not s.is_zero)))

    @staticmethod
    def monomial(genpart: GenPart, coeff: ScalarLike = 1) -> "OperatorExpr":
        b, xe, pe, sig = genpart
        if b not in (0, 1) or sig not in (0, 1, 2, 3):
            raise ValueError(f"invalid generator part {genpart!r}")
        if any(e < 0 for e in xe) or any(e < 0 for e in pe):
            raise ValueError("negative generator exponents are not allowed")
        s = Scalar.of(coeff)
        if s.is_zero:
            return ZERO
        return OperatorExpr((((b, tuple(xe), tuple(pe), sig), s),))

    # -- algebra ------------------------------------------------------------

    def __add__(self, other) -> "OperatorExpr":
        other = _as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for gp, s in other.terms:
            acc[gp] = acc.get(gp, Scalar()) + s
        return OperatorExpr._from_map(acc)

    __radd__ = __add__

    def __neg__(self) -> "OperatorExpr":
        return OperatorExpr(tuple((gp, -s) for gp, s in self.terms))

    def __sub__(self, other) -> "OperatorExpr":
        other = _as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "OperatorExpr":
        return _as_expr(other) - self

    def __mul__(self, other) -> "OperatorExpr":
        other = _as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict = {}
        for gp1, s1 in self.terms:
            for gp2, s2 in other.terms:
                s12 = s1 * s2
                for gp, sw in _genpart_mul(gp1, gp2):
                    acc[gp] = acc.get(gp, Scalar()) + s12 * sw
        return OperatorExpr._from_map(acc)

    def __rmul__(self, other) -> "OperatorExpr":
        # scalar-likes commute with everything, so ordering is immaterial
        return self * other

    def __pow__(self, n: int) -> "OperatorExpr":
        if n < 0:
            raise ValueError("operator powers must be nonnegative")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> Iterator[tuple]:
        return iter(self.terms)

    def adjoint(self) -> "OperatorExpr":
        acc: dict = {}
        for (b, xe, pe, sig), s in self.terms:
            # (beta x^a p^c sigma)^+ = sigma p^c x^a beta; reorder via mul
            left = (b, (0, 0, 0), pe, sig)
            right = (0, xe, (0, 0, 0), 0)
            sc = s.conjugate()
            for gp, sw in _genpart_mul(left, right):
                acc[gp] = acc.get(gp, Scalar()) + sc * sw
        return OperatorExpr._from_map(acc)

    def substitute(self, bindings: Mapping[str, object]) -> "OperatorExpr":
        for key in bindings:
            if key in GENERATOR_TOKENS:
                raise ValueError(f"cannot bind generator {key!r}")
            if key not in SCALAR_SYMBOLS:
                raise UnknownSymbolError(key)
        acc: dict = {}
        for gp, s in self.terms:
            acc[gp] = acc.get(gp, Scalar()) + s.substitute(bindings)
        return OperatorExpr._from_map(acc)

    def coefficient_of(self, pattern) -> Scalar:
        """Merged coefficient of one canonical monomial (zero if absent)."""
        gp = _pattern_genpart(pattern)
        for g, s in self.terms:
            if g == gp:
                return s
        return Scalar()

    def __str__(self) -> str:
        from . import syntax
        return syntax.format_expr(self)


def _as_expr(value):
    if isinstance(value, OperatorExpr):
        return value
    if isinstance(value, (int, Fraction, QC, Scalar)):
        s = Scalar.of(value)
        return ZERO if s.is_zero else OperatorExpr(((IDENTITY_PART, s),))
    return NotImplemented


def _pattern_genpart(pattern) -> GenPart:
    if isinstance(pattern, OperatorExpr):
        if len(pattern.terms) != 1:
            raise ValueError("pattern must be a single monomial")
        gp, s = pattern.terms[0]
        if s != Scalar.of(1):
            raise ValueError("pattern monomial must have coefficient 1")
        return gp
    if (isinstance(pattern, tuple) and len(pattern) == 4):
        return pattern
    raise ValueError(f"not a monomial pattern: {pattern!r}")


# ---------------------------------------------------------------------------
# atoms

ZERO = OperatorExpr()
ONE = OperatorExpr(((IDENTITY_PART, Scalar.of(1)),))
IMAG = OperatorExpr(((IDENTITY_PART, Scalar.of(_QC_I)),))
BETA = OperatorExpr((((1, (0, 0, 0), (0, 0, 0), 0), Scalar.of(1)),))


def position(axis) -> OperatorExpr:
    i = _AXIS_INDEX[axis]
    xe = tuple(1 if j == i else 0 for j in range(3))
    return OperatorExpr.monomial((0, xe, (0, 0, 0), 0))


def momentum(axis) -> OperatorExpr:
    i = _AXIS_INDEX[axis]
    pe = tuple(1 if j == i else 0 for j in range(3))
    return OperatorExpr.monomial((0, (0, 0, 0), pe, 0))


def pauli(axis) -> OperatorExpr:
    return OperatorExpr.monomial((0, (0, 0, 0), (0, 0, 0), _AXIS_INDEX[axis] + 1))


def symbol(name: str, power: int = 1) -> OperatorExpr:
    return OperatorExpr(((IDENTITY_PART, Scalar.sym(name, power)),))


def number(value) -> OperatorExpr:
    return _as_expr(Fraction(value) if isinstance(value, str) else value)


X = (position(0), position(1), position(2))
P = (momentum(0), momentum(1), momentum(2))
SIG = (pauli(0), pauli(1), pauli(2))
HBAR = symbol("hbar")
C = symbol("c")
M = symbol("m")
MU_A = symbol("mu_a")
PHI = symbol("Phi")
A_FIELD = (symbol("a_x"), symbol("a_y"), symbol("a_z"))
G_FIELD = (symbol("g_x"), symbol("g_y"), symbol("g_z"))


def dot(u: Sequence[OperatorExpr], v: Sequence[OperatorExpr]) -> OperatorExpr:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Sequence[OperatorExpr], v: Sequence[OperatorExpr]) -> tuple:
    """Componentwise u x v, keeping u factors to the left of v factors."""
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


# ---------------------------------------------------------------------------
# operations on raw trees and free-function spelling of the methods

_GENERATOR_FACTORIES = {
    "x_x": lambda: position(0), "x_y": lambda: position(1), "x_z": lambda: position(2),
    "p_x": lambda: momentum(0), "p_y": lambda: momentum(1), "p_z": lambda: momentum(2),
    "s_x": lambda: pauli(0), "s_y": lambda: pauli(1), "s_z": lambda: pauli(2),
    "beta": lambda: BETA,
}
GENERATOR_TOKENS = tuple(_GENERATOR_FACTORIES)


def normalize(tree) -> OperatorExpr:
    """Evaluate an unordered sum/product tree into canonical form.

    Trees are nested tuples ('+', ...), ('*', ...), ('^', base, n),
    ('neg', t); leaves are OperatorExpr, numbers, or token strings.
    """
    if isinstance(tree, OperatorExpr):
        return tree
    if isinstance(tree, (int, Fraction)):
        return _as_expr(tree)
    if isinstance(tree, str):
        if tree in _GENERATOR_FACTORIES:
            return _GENERATOR_FACTORIES[tree]()
        if tree in SCALAR_SYMBOLS:
            return symbol(tree)
        if tree == "i":
            return IMAG
        raise UnknownSymbolError(tree)
    if isinstance(tree, tuple) and tree:
        tag = tree[0]
        if tag == "+":
            out = ZERO
            for child in tree[1:]:
                out = out + normalize(child)
            return out
        if tag == "*":
            out = ONE
            for child in tree[1:]:
                out = out * normalize(child)
            return out
        if tag == "^":
            base = normalize(tree[1])
            n = tree[2]
            if not isinstance(n, int):
                raise ValueError(f"exponent must be an integer, got {n!r}")
            if n < 0:
                if len(base.terms) == 1 and base.terms[0][0] == IDENTITY_PART:
                    return _as_expr(base.terms[0][1].inverse() ** (-n))
                raise ValueError("negative powers need a pure scalar base")
            return base ** n
        if tag == "neg":
            return -normalize(tree[1])
    raise ValueError(f"malformed expression tree: {tree!r}")


def add(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a + b


def mul(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a * b


def scale(s: ScalarLike, a: OperatorExpr) -> OperatorExpr:
    return a * Scalar.of(s)


def commutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a * b - b * a


def adjoint(a: OperatorExpr) -> OperatorExpr:
    return a.adjoint()


def substitute(a: OperatorExpr, bindings: Mapping[str, object]) -> OperatorExpr:
    return a.substitute(bindings)


def coefficient_of(a: OperatorExpr, pattern) -> Scalar:
    return a.coefficient_of(pattern)


def is_hermitian(a: OperatorExpr) -> bool:
    return a == a.adjoint()
