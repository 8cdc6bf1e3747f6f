"""Exact scalars and sparse multivariate polynomials.

Everything in this package computes over arbitrary-precision rationals
(`fractions.Fraction`), so identity checks are exact and a verdict never
depends on rounding or tolerances.

A polynomial in n variables is a sparse map from exponent vectors
(length-n tuples of nonnegative ints) to nonzero rational coefficients.
The zero polynomial has an empty term map.  Code indexes variables from 0;
rendered output writes them x1..xn.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]
Exponents = Tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class SchemaError(ValueError):
    """Malformed structured input; `pointer` is a JSON pointer to the bad field."""

    def __init__(self, pointer: str, reason: str) -> None:
        super().__init__(f"{pointer or '/'}: {reason}")
        self.pointer = pointer
        self.reason = reason


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Wire form of a rational: "p" when integral, else "p/q"."""
    return str(value)


def rat_from_json(value: object, pointer: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(pointer, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(pointer, f"not a rational: {value!r}") from None
    raise SchemaError(pointer, "expected a rational encoded as string or integer")


def _grlex_key(exps: Exponents) -> Tuple[int, Exponents]:
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponents, RationalLike]] = None) -> None:
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: Dict[Exponents, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exps, coeff in items:
                key = tuple(int(e) for e in exps)
                if len(key) != nvars:
                    raise ValueError(f"exponent vector {key} does not have length {nvars}")
                if any(e < 0 for e in key):
                    raise ValueError(f"negative exponent in {key}")
                value = clean.get(key, ZERO) + rat(coeff)
                if value:
                    clean[key] = value
                else:
                    clean.pop(key, None)
        self.nvars = nvars
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: RationalLike) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: rat(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: RationalLike = ONE) -> "Polynomial":
        return cls(nvars, {tuple(exps): rat(coeff)})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def terms(self) -> List[Tuple[Exponents, Fraction]]:
        """Terms sorted leading-first in graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), ZERO)

    def total_degree(self) -> int:
        """Degree of the zero polynomial is reported as -1."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            value = out.get(exps, ZERO) + coeff
            if value:
                out[exps] = value
            else:
                out.pop(exps, None)
        result = Polynomial.__new__(Polynomial)
        result.nvars = self.nvars
        result._terms = out
        return result

    def __neg__(self) -> "Polynomial":
        result = Polynomial.__new__(Polynomial)
        result.nvars = self.nvars
        result._terms = {exps: -coeff for exps, coeff in self._terms.items()}
        return result

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            scalar = rat(other)
            result = Polynomial.__new__(Polynomial)
            result.nvars = self.nvars
            result._terms = {e: c * scalar for e, c in self._terms.items()} if scalar else {}
            return result
        self._check_compatible(other)
        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                value = out.get(key, ZERO) + c1 * c2
                if value:
                    out[key] = value
                else:
                    out.pop(key, None)
        result = Polynomial.__new__(Polynomial)
        result.nvars = self.nvars
        result._terms = out
        return result

    def __rmul__(self, other: RationalLike) -> "Polynomial":
        return self.__mul__(other)

    def diff(self, index: int) -> "Polynomial":
        """Partial derivative with respect to variable `index`."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        out: Dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            e = exps[index]
            if e:
                key = exps[:index] + (e - 1,) + exps[index + 1:]
                out[key] = out.get(key, ZERO) + coeff * e
        return Polynomial(self.nvars, out)

    def eval(self, point: Sequence[RationalLike]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        values = [rat(v) for v in point]
        total = ZERO
        for exps, coeff in self._terms.items():
            term = coeff
            for value, e in zip(values, exps):
                if e:
                    term *= value ** e
            total += term
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by images[i]; all images share a variable count."""
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} substitution images, got {len(images)}")
        if self.nvars == 0:
            return Polynomial(0, dict(self._terms))
        nout = images[0].nvars
        if any(img.nvars != nout for img in images):
            raise ValueError("substitution images disagree on variable count")
        total = Polynomial.zero(nout)
        for exps, coeff in self._terms.items():
            term = Polynomial.constant(nout, coeff)
            for img, e in zip(images, exps):
                for _ in range(e):
                    term = term * img
            total = total + term
        return total

    # -- rendering and JSON --------------------------------------------------

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        pieces: List[str] = []
        for exps, coeff in self.terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            mag = abs(coeff)
            if not body:
                text = rat_str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{rat_str(mag)}*{body}"
            if not pieces:
                pieces.append(text if coeff > 0 else f"-{text}")
            else:
                pieces.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self.render()})"

    def to_json(self) -> List[dict]:
        return [
            {"coeff": rat_str(coeff), "exps": list(exps)}
            for exps, coeff in sorted(self._terms.items())
        ]

    @classmethod
    def from_json(cls, data: object, nvars: int, pointer: str = "") -> "Polynomial":
        if not isinstance(data, list):
            raise SchemaError(pointer, "expected a list of terms")
        terms: Dict[Exponents, Fraction] = {}
        for idx, item in enumerate(data):
            here = f"{pointer}/{idx}"
            if not isinstance(item, dict):
                raise SchemaError(here, "expected a term object")
            exps = item.get("exps")
            if not isinstance(exps, list) or len(exps) != nvars or not all(
                isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps
            ):
                raise SchemaError(f"{here}/exps", f"expected {nvars} nonnegative integer exponents")
            coeff = rat_from_json(item.get("coeff"), f"{here}/coeff")
            key = tuple(exps)
            terms[key] = terms.get(key, ZERO) + coeff
        return cls(nvars, terms)

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable-count mismatch: {self.nvars} vs {other.nvars}"
            )


# -- spec-surface operations -------------------------------------------------

def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact product; raises on a variable-count mismatch."""
    return p * q


def poly_divisible(p: Polynomial, q: Polynomial) -> Tuple[bool, Optional[Polynomial]]:
    """Decide whether q divides p exactly, returning the quotient when it does.

    Multivariate division by the single divisor q under graded-lex term
    order: a single generator reduces membership in the principal ideal (q)
    to a zero remainder, so the answer is exact.
    """
    if q.is_zero():
        raise ValueError("division by the zero polynomial")
    p._check_compatible(q)
    lt_q = max(q._terms, key=_grlex_key)
    c_q = q._terms[lt_q]
    remainder = dict(p._terms)
    quotient: Dict[Exponents, Fraction] = {}
    while remainder:
        lt = max(remainder, key=_grlex_key)
        shift = tuple(a - b for a, b in zip(lt, lt_q))
        if any(s < 0 for s in shift):
            return False, None
        factor = remainder[lt] / c_q
        quotient[shift] = quotient.get(shift, ZERO) + factor
        for exps, coeff in q._terms.items():
            key = tuple(s + e for s, e in zip(shift, exps))
            value = remainder.get(key, ZERO) - factor * coeff
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return True, Polynomial(p.nvars, quotient)


def poly_eval(p: Polynomial, point: Sequence[RationalLike]) -> Fraction:
    """Exact value of p at a rational point."""
    return p.eval(point)


# -- exact linear algebra helpers ---------------------------------------------

def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int) -> Optional[List[Fraction]]:
    """One solution of rows*x = rhs over the rationals, or None if inconsistent.

    Free coordinates, if any, are set to zero.
    """
    work = [list(row) + [value] for row, value in zip(rows, rhs)]
    pivot_cols: List[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        scale = work[rank][col]
        work[rank] = [x / scale for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                factor = work[i][col]
                row_r = work[rank]
                work[i] = [x - factor * y for x, y in zip(work[i], row_r)]
        pivot_cols.append(col)
        rank += 1
        if rank == len(work):
            break
    for i in range(rank, len(work)):
        if work[i][ncols]:
            return None
    solution = [ZERO] * ncols
    for idx, col in enumerate(pivot_cols):
        solution[col] = work[idx][ncols]
    return solution


def matrix_inverse(matrix: Sequence[Sequence[Fraction]]) -> Optional[List[List[Fraction]]]:
    """Exact inverse of a square rational matrix, or None when singular."""
    n = len(matrix)
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col]), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        scale = work[col][col]
        work[col] = [x / scale for x in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                factor = work[i][col]
                row_c = work[col]
                work[i] = [x - factor * y for x, y in zip(work[i], row_c)]
    return [row[n:] for row in work]
