"""Sparse analytic polynomials on the polytorus T^d.

A :class:`Polynomial` is an immutable map from exponent vectors
(:class:`MultiIndex`) to complex coefficients.  The H^2 norm is the l^2 norm
of the coefficient sequence, since the monomials form an orthonormal basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

#: Coefficients with modulus below this are dropped after arithmetic.
ZERO_TOL = 1e-15


class DimensionError(ValueError):
    pass


class MultiIndex(tuple):
    """Exponent vector of a monomial z^k = z_1^k_1 ... z_d^k_d."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]) -> "MultiIndex":
        if isinstance(exponents, MultiIndex):
            return exponents
        exps = tuple(int(k) for k in exponents)
        if not exps:
            raise ValueError("multi-index must have at least one component")
        if any(k < 0 for k in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @property
    def degree(self) -> int:
        return sum(self)

    def __add__(self, other):
        if len(other) != len(self):
            raise DimensionError("multi-index length mismatch")
        return MultiIndex(a + b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"MultiIndex({tuple(self)})"


def graded_key(k: Sequence[int]) -> tuple:
    """Sort key: total degree first, then z_1 exponent descending.

    This is the order in which Hankel bases are listed, e.g. for degree <= 2
    in two variables: 1, z1, z2, z1^2, z1 z2, z2^2.
    """
    return (sum(k), tuple(-e for e in k))


def monomials_of_degree(m: int, d: int) -> list[MultiIndex]:
    """All exponent vectors of total degree m in d variables, lexicographic."""
    if d == 1:
        return [MultiIndex((m,))]
    out = []
    for first in range(m + 1):
        for rest in monomials_of_degree(m - first, d - 1):
            out.append(MultiIndex((first,) + tuple(rest)))
    return out


class Polynomial:
    """Immutable sparse polynomial in ``dimension`` complex variables.

    Terms are kept in canonical form: exact zeros (and anything with
    modulus below ``ZERO_TOL``) are removed and keys are sorted
    lexicographically.  Two polynomials compare equal iff their canonical
    term maps are equal.
    """

    __slots__ = ("_dimension", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], complex] | Iterable = (), dimension: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[MultiIndex, complex] = {}
        for k, c in items:
            k = MultiIndex(k)
            if dimension is None:
                dimension = len(k)
            elif len(k) != dimension:
                raise DimensionError(f"term {tuple(k)} does not have {dimension} variables")
            acc[k] = acc.get(k, 0j) + complex(c)
        if dimension is None:
            dimension = 2
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        clean = {k: acc[k] for k in sorted(acc) if abs(acc[k]) >= ZERO_TOL}
        object.__setattr__(self, "_dimension", int(dimension))
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: complex, dimension: int = 2) -> "Polynomial":
        return cls({(0,) * dimension: c}, dimension)

    @classmethod
    def monomial(cls, exponents: Sequence[int], c: complex = 1.0) -> "Polynomial":
        return cls({tuple(exponents): c})

    @classmethod
    def variable(cls, j: int, dimension: int = 2) -> "Polynomial":
        """The coordinate function z_{j+1} (``j`` is zero-based)."""
        k = [0] * dimension
        k[j] = 1
        return cls({tuple(k): 1.0}, dimension)

    @classmethod
    def zero(cls, dimension: int = 2) -> "Polynomial":
        return cls({}, dimension)

    # -- accessors --------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def terms(self) -> Mapping[MultiIndex, complex]:
        return MappingProxyType(self._terms)

    def coefficient(self, k: Sequence[int]) -> complex:
        return self._terms.get(tuple(k), 0j)

    def support(self) -> list[MultiIndex]:
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((k.degree for k in self._terms), default=-1)

    def max_exponent(self) -> int:
        """Largest exponent of any single variable."""
        return max((max(k) for k in self._terms), default=0)

    def homogeneous_degree(self) -> int | None:
        """m if every term has total degree m, else None (also for zero)."""
        degrees = {k.degree for k in self._terms}
        return degrees.pop() if len(degrees) == 1 else None

    def is_real(self) -> bool:
        return all(c.imag == 0.0 for c in self._terms.values())

    def __iter__(self) -> Iterator[tuple[MultiIndex, complex]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.dimension != self.dimension:
            raise DimensionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")

    def __add__(self, other):
        if isinstance(other, Number):
            other = Polynomial.constant(other, self.dimension)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0j) + c
        return Polynomial(out, self.dimension)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({k: -c for k, c in self._terms.items()}, self.dimension)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = Polynomial.constant(other, self.dimension)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return Polynomial({k: c * other for k, c in self._terms.items()}, self.dimension)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[tuple, complex] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0j) + c1 * c2
        return Polynomial(out, self.dimension)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return self * (1.0 / c)

    def conj_coefficients(self) -> "Polynomial":
        return Polynomial({k: c.conjugate() for k, c in self._terms.items()}, self.dimension)

    def permute_variables(self, perm: Sequence[int]) -> "Polynomial":
        """Polynomial q with q(z) = p(z_perm[0], ..., z_perm[d-1])."""
        out = {}
        for k, c in self._terms.items():
            new = [0] * self.dimension
            for i, j in enumerate(perm):
                new[j] = k[i]
            out[tuple(new)] = c
        return Polynomial(out, self.dimension)

    def __call__(self, *z) -> complex:
        if len(z) == 1 and isinstance(z[0], (list, tuple)):
            z = tuple(z[0])
        if len(z) != self.dimension:
            raise DimensionError(f"expected {self.dimension} arguments")
        total = 0j
        for k, c in self._terms.items():
            term = c
            for zj, kj in zip(z, k):
                term *= zj**kj
            total += term
        return total

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dimension == other.dimension and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.dimension, tuple(self._terms.items()))))
        return self._hash

    def allclose(self, other: "Polynomial", tol: float = 1e-12) -> bool:
        return max_coefficient_diff(self, other) <= tol

    def __repr__(self) -> str:
        if not self._terms:
            return f"Polynomial({{}}, dimension={self.dimension})"
        body = ", ".join(f"{tuple(k)}: {_fmt(c)}" for k, c in self._terms.items())
        return f"Polynomial({{{body}}})"

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        """One term per line, ``k1 ... kd re im``, lexicographic order."""
        lines = [" ".join(str(e) for e in k) + f" {c.real!r} {c.imag!r}" for k, c in self._terms.items()]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, dimension: int | None = None) -> "Polynomial":
        """Parse the line format written by :meth:`to_text`.

        Blank lines and ``#`` comments are ignored.  Without ``dimension``
        every row must carry both ``re`` and ``im``; with it, ``im`` may be
        omitted.  ``dimension`` is also needed to parse the zero polynomial.
        """
        terms = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            n_exp = dimension if dimension is not None else len(fields) - 2
            coef = fields[n_exp:] if n_exp >= 1 else []
            if n_exp < 1 or len(coef) not in (1, 2):
                raise ValueError(f"line {lineno}: cannot parse {raw!r}")
            try:
                k = tuple(int(e) for e in fields[:n_exp])
                c = complex(float(coef[0]), float(coef[1]) if len(coef) == 2 else 0.0)
            except ValueError as exc:
                raise ValueError(f"line {lineno}: cannot parse {raw!r}") from exc
            terms.append((k, c))
        return cls(terms, dimension)


def _fmt(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    return repr(c)


@dataclass(frozen=True)
class HomogeneousPart:
    degree: int
    poly: Polynomial

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        bad = [k for k in self.poly.support() if k.degree != self.degree]
        if bad:
            raise ValueError(f"terms {bad} are not of degree {self.degree}")

    @classmethod
    def of(cls, p: Polynomial) -> "HomogeneousPart":
        """Wrap a polynomial that is already homogeneous."""
        m = p.homogeneous_degree()
        if m is None:
            raise ValueError("polynomial is zero or not homogeneous")
        return cls(m, p)


# -- module-level operations ------------------------------------------------


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def negate(p: Polynomial) -> Polynomial:
    return -p


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def h2_norm(p: Polynomial) -> float:
    return math.sqrt(math.fsum(abs(c) ** 2 for c in p.terms.values()))


def homogeneous_part(p: Polynomial, m: int) -> HomogeneousPart:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return HomogeneousPart(m, Polynomial({k: c for k, c in p if k.degree == m}, p.dimension))


def homogeneous_parts(p: Polynomial) -> list[HomogeneousPart]:
    """Nonzero homogeneous components, by increasing degree."""
    degrees = sorted({k.degree for k in p.support()})
    return [homogeneous_part(p, m) for m in degrees]


def inner_product(p: Polynomial, q: Polynomial) -> complex:
    """<p, q> = sum of p_k * conj(q_k)."""
    if p.dimension != q.dimension:
        raise DimensionError(f"dimension mismatch: {p.dimension} vs {q.dimension}")
    small, large = (p, q) if len(p) <= len(q) else (q, p)
    re, im = [], []
    for k in small.terms:
        if k in large.terms:
            v = p.coefficient(k) * q.coefficient(k).conjugate()
            re.append(v.real)
            im.append(v.imag)
    return complex(math.fsum(re), math.fsum(im))


def max_coefficient_diff(p: Polynomial, q: Polynomial) -> float:
    if p.dimension != q.dimension:
        raise DimensionError(f"dimension mismatch: {p.dimension} vs {q.dimension}")
    keys = set(p.terms) | set(q.terms)
    return max((abs(p.coefficient(k) - q.coefficient(k)) for k in keys), default=0.0)


def phi_alpha(alpha: float) -> Polynomial:
    """The case-study family z1^2 + alpha z1 z2 + z2^2."""
    return Polynomial({(2, 0): 1.0, (1, 1): alpha, (0, 2): 1.0})


def family_alpha(p: Polynomial, tol: float = 1e-15) -> float | None:
    """Return alpha if ``p`` is exactly phi_alpha with alpha >= 0, else None."""
    if p.dimension != 2 or not set(p.support()) <= {(2, 0), (1, 1), (0, 2)}:
        return None
    b = p.coefficient((1, 1))
    if abs(p.coefficient((2, 0)) - 1) > tol or abs(p.coefficient((0, 2)) - 1) > tol:
        return None
    if abs(b.imag) > tol or b.real < 0:
        return None
    return b.real
