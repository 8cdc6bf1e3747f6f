"""Finite-dimensional associative algebras given by structure constants.

An algebra of dimension n is the table m[i][j][k] with
e_i * e_j = sum_k m[i][j][k] e_k (0-based indices in code, 1-based in
rendered math).  On top of it live the tensor square and cube with their
componentwise products, symmetrizers, and dense operators on tensor
coefficients together with the slot lifts P12, P13, P23.

Everything is immutable and exact; dense representations keep the index
logic auditable (intended scale is dim <= 8).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exact import Fraction, ONE, ZERO, SchemaError, rat, rat_from_json, rat_str, solve_linear
from .reporting import CheckReport, report, timer, vector_witness

Vector = Tuple[Fraction, ...]


class UnitRequiredError(ValueError):
    """Raised by operations that only make sense on a unital algebra."""


def _freeze_vector(values: Iterable[object]) -> Vector:
    return tuple(rat(v) for v in values)


def _zero_rows(n: int) -> List[List[Fraction]]:
    return [[ZERO] * n for _ in range(n)]


@dataclass(frozen=True)
class AlgebraSpec:
    """Structure constants of a bilinear multiplication on K^n."""

    name: str
    dim: int
    m: Tuple[Tuple[Vector, ...], ...]

    @classmethod
    def build(cls, name: str, dim: int, m: Sequence[Sequence[Sequence[object]]]) -> "AlgebraSpec":
        if dim < 1:
            raise ValueError("dimension must be positive")
        if len(m) != dim or any(len(row) != dim or any(len(cell) != dim for cell in row) for row in m):
            raise ValueError(f"structure constants must form a {dim}x{dim}x{dim} array")
        table = tuple(tuple(_freeze_vector(cell) for cell in row) for row in m)
        return cls(name=name, dim=dim, m=table)

    @classmethod
    def from_entries(cls, name: str, dim: int, entries: Dict[Tuple[int, int, int], object]) -> "AlgebraSpec":
        m = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), value in entries.items():
            m[i][j][k] = rat(value)
        return cls.build(name, dim, m)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "m": [[[rat_str(v) for v in cell] for cell in row] for row in self.m],
        }

    @classmethod
    def from_json(cls, data: object, pointer: str = "") -> "AlgebraSpec":
        if not isinstance(data, dict):
            raise SchemaError(pointer, "expected an algebra object")
        name = data.get("name", "algebra")
        if not isinstance(name, str):
            raise SchemaError(f"{pointer}/name", "expected a string")
        dim = data.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise SchemaError(f"{pointer}/dim", "expected a positive integer")
        m = data.get("m")
        if not isinstance(m, list) or len(m) != dim:
            raise SchemaError(f"{pointer}/m", f"expected {dim} rows")
        table = []
        for i, row in enumerate(m):
            if not isinstance(row, list) or len(row) != dim:
                raise SchemaError(f"{pointer}/m/{i}", f"expected {dim} cells")
            cells = []
            for j, cell in enumerate(row):
                if not isinstance(cell, list) or len(cell) != dim:
                    raise SchemaError(f"{pointer}/m/{i}/{j}", f"expected {dim} coefficients")
                cells.append(tuple(
                    rat_from_json(value, f"{pointer}/m/{i}/{j}/{k}") for k, value in enumerate(cell)
                ))
            table.append(tuple(cells))
        return cls(name=name, dim=dim, m=tuple(table))


def check_associative(spec: AlgebraSpec) -> CheckReport:
    """Verify (e_i e_j) e_k = e_i (e_j e_k) for all triples; first violation wins."""
    n = spec.dim
    m = spec.m
    witnesses = []
    with timer() as t:
        for i in range(n):
            for j in range(n):
                mij = m[i][j]
                for k in range(n):
                    lhs = [ZERO] * n
                    for p in range(n):
                        v = mij[p]
                        if v:
                            row = m[p][k]
                            for q in range(n):
                                if row[q]:
                                    lhs[q] += v * row[q]
                    rhs = [ZERO] * n
                    mjk = m[j][k]
                    for p in range(n):
                        v = mjk[p]
                        if v:
                            row = m[i][p]
                            for q in range(n):
                                if row[q]:
                                    rhs[q] += v * row[q]
                    if lhs != rhs:
                        diff = [a - b for a, b in zip(lhs, rhs)]
                        witnesses.append(vector_witness((i, j, k), diff))
                        return report("associative", witnesses, t.elapsed)
    return report("associative", witnesses, t.elapsed)


@lru_cache(maxsize=None)
def find_unit(spec: AlgebraSpec) -> Optional[Vector]:
    """Coefficients of the two-sided unit, or None.

    Solves the full linear system u e_j = e_j = e_j u for all j; the unit
    need not be a basis vector.  Uniqueness is automatic when the system is
    consistent.
    """
    n = spec.dim
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for j in range(n):
        for k in range(n):
            rows.append([spec.m[i][j][k] for i in range(n)])
            rhs.append(ONE if j == k else ZERO)
            rows.append([spec.m[j][i][k] for i in range(n)])
            rhs.append(ONE if j == k else ZERO)
    solution = solve_linear(rows, rhs, n)
    return tuple(solution) if solution is not None else None


def multiply(spec: AlgebraSpec, a: Sequence[object], b: Sequence[object]) -> Vector:
    """Product of two coefficient vectors."""
    n = spec.dim
    if len(a) != n or len(b) != n:
        raise ValueError(f"vectors must have length {n}")
    av = [rat(x) for x in a]
    bv = [rat(x) for x in b]
    out = [ZERO] * n
    for i, ai in enumerate(av):
        if not ai:
            continue
        for j, bj in enumerate(bv):
            if not bj:
                continue
            coeff = ai * bj
            row = spec.m[i][j]
            for k in range(n):
                if row[k]:
                    out[k] += coeff * row[k]
    return tuple(out)


def commutator(spec: AlgebraSpec, a: Sequence[object], b: Sequence[object]) -> Vector:
    ab = multiply(spec, a, b)
    ba = multiply(spec, b, a)
    return tuple(x - y for x, y in zip(ab, ba))


def commutator_constants(spec: AlgebraSpec) -> Tuple[Tuple[Vector, ...], ...]:
    """Structure constants of the adjacent Lie bracket [a,b] = ab - ba."""
    n = spec.dim
    return tuple(
        tuple(
            tuple(spec.m[i][j][k] - spec.m[j][i][k] for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


# -- tensors -------------------------------------------------------------------


@dataclass(frozen=True)
class Tensor2:
    """Coefficients t[i][j] of an element sum t^{ij} e_i (x) e_j."""

    n: int
    rows: Tuple[Vector, ...]

    @classmethod
    def zero(cls, n: int) -> "Tensor2":
        return cls(n, tuple((ZERO,) * n for _ in range(n)))

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[Sequence[object]]) -> "Tensor2":
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} array")
        return cls(n, tuple(_freeze_vector(r) for r in rows))

    @classmethod
    def from_entries(cls, n: int, entries: Dict[Tuple[int, int], object]) -> "Tensor2":
        rows = _zero_rows(n)
        for (i, j), value in entries.items():
            rows[i][j] += rat(value)
        return cls(n, tuple(tuple(r) for r in rows))

    @classmethod
    def basis(cls, n: int, i: int, j: int) -> "Tensor2":
        return cls.from_entries(n, {(i, j): ONE})

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def nonzero(self) -> Iterator[Tuple[int, int, Fraction]]:
        for i, row in enumerate(self.rows):
            for j, value in enumerate(row):
                if value:
                    yield i, j, value

    def is_zero(self) -> bool:
        return all(not v for row in self.rows for v in row)

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i] for i in range(self.n) for j in range(i + 1, self.n))

    def is_antisymmetric(self) -> bool:
        return all(self.rows[i][j] == -self.rows[j][i] for i in range(self.n) for j in range(i, self.n))

    def __add__(self, other: "Tensor2") -> "Tensor2":
        self._check(other)
        return Tensor2(self.n, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        ))

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        self._check(other)
        return Tensor2(self.n, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        ))

    def __neg__(self) -> "Tensor2":
        return Tensor2(self.n, tuple(tuple(-v for v in row) for row in self.rows))

    def scale(self, factor: object) -> "Tensor2":
        f = rat(factor)
        return Tensor2(self.n, tuple(tuple(f * v for v in row) for row in self.rows))

    def _check(self, other: "Tensor2") -> None:
        if self.n != other.n:
            raise ValueError("tensor dimension mismatch")


@dataclass(frozen=True)
class Tensor3:
    """Coefficients t[i][j][k] of an element of the triple tensor power."""

    n: int
    cube: Tuple[Tuple[Vector, ...], ...]

    @classmethod
    def zero(cls, n: int) -> "Tensor3":
        return cls(n, tuple(tuple((ZERO,) * n for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_entries(cls, n: int, entries: Dict[Tuple[int, int, int], object]) -> "Tensor3":
        cube = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), value in entries.items():
            cube[i][j][k] += rat(value)
        return cls(n, tuple(tuple(tuple(r) for r in plane) for plane in cube))

    def entry(self, i: int, j: int, k: int) -> Fraction:
        return self.cube[i][j][k]

    def nonzero(self) -> Iterator[Tuple[int, int, int, Fraction]]:
        for i, plane in enumerate(self.cube):
            for j, row in enumerate(plane):
                for k, value in enumerate(row):
                    if value:
                        yield i, j, k, value

    def is_zero(self) -> bool:
        return all(not v for plane in self.cube for row in plane for v in row)

    def is_fully_symmetric(self) -> bool:
        n = self.n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    value = self.cube[i][j][k]
                    for p in permutations((i, j, k)):
                        if self.cube[p[0]][p[1]][p[2]] != value:
                            return False
        return True

    def __add__(self, other: "Tensor3") -> "Tensor3":
        self._check(other)
        return Tensor3(self.n, tuple(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(p1, p2))
            for p1, p2 in zip(self.cube, other.cube)
        ))

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        self._check(other)
        return Tensor3(self.n, tuple(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(p1, p2))
            for p1, p2 in zip(self.cube, other.cube)
        ))

    def scale(self, factor: object) -> "Tensor3":
        f = rat(factor)
        return Tensor3(self.n, tuple(
            tuple(tuple(f * v for v in row) for row in plane) for plane in self.cube
        ))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": [[[rat_str(v) for v in row] for row in plane] for plane in self.cube],
        }

    def _check(self, other: "Tensor3") -> None:
        if self.n != other.n:
            raise ValueError("tensor dimension mismatch")


def tensor2_mul(spec: AlgebraSpec, s: Tensor2, t: Tensor2) -> Tensor2:
    """Componentwise product: (a (x) b)(c (x) d) = ac (x) bd, bilinearly."""
    n = spec.dim
    if s.n != n or t.n != n:
        raise ValueError("tensor shape does not match the algebra dimension")
    out = _zero_rows(n)
    for i, j, vs in s.nonzero():
        for k, l, vt in t.nonzero():
            coeff = vs * vt
            row_ik = spec.m[i][k]
            row_jl = spec.m[j][l]
            for p in range(n):
                vp = row_ik[p]
                if not vp:
                    continue
                cp = coeff * vp
                for q in range(n):
                    if row_jl[q]:
                        out[p][q] += cp * row_jl[q]
    return Tensor2(n, tuple(tuple(r) for r in out))


def tensor2_commutator(spec: AlgebraSpec, s: Tensor2, t: Tensor2) -> Tensor2:
    return tensor2_mul(spec, s, t) - tensor2_mul(spec, t, s)


def tensor3_mul(spec: AlgebraSpec, s: Tensor3, t: Tensor3) -> Tensor3:
    """Componentwise product on the triple tensor power."""
    n = spec.dim
    if s.n != n or t.n != n:
        raise ValueError("tensor shape does not match the algebra dimension")
    acc: Dict[Tuple[int, int, int], Fraction] = {}
    for i, j, k, vs in s.nonzero():
        for p, q, r, vt in t.nonzero():
            coeff = vs * vt
            row1 = spec.m[i][p]
            row2 = spec.m[j][q]
            row3 = spec.m[k][r]
            for a in range(n):
                va = row1[a]
                if not va:
                    continue
                ca = coeff * va
                for b in range(n):
                    vb = row2[b]
                    if not vb:
                        continue
                    cb = ca * vb
                    for c in range(n):
                        vc = row3[c]
                        if vc:
                            key = (a, b, c)
                            acc[key] = acc.get(key, ZERO) + cb * vc
    return Tensor3.from_entries(n, acc)


def tensor3_commutator(spec: AlgebraSpec, s: Tensor3, t: Tensor3) -> Tensor3:
    return tensor3_mul(spec, s, t) - tensor3_mul(spec, t, s)


def symmetrize2(t: Tensor2) -> Tensor2:
    n = t.n
    return Tensor2(n, tuple(
        tuple((t.rows[i][j] + t.rows[j][i]) / 2 for j in range(n)) for i in range(n)
    ))


def antisymmetrize2(t: Tensor2) -> Tensor2:
    n = t.n
    return Tensor2(n, tuple(
        tuple((t.rows[i][j] - t.rows[j][i]) / 2 for j in range(n)) for i in range(n)
    ))


def symmetric_basis3_indices(n: int) -> List[Tuple[int, int, int]]:
    return [(i, j, k) for i in range(n) for j in range(i, n) for k in range(j, n)]


def symmetric_basis3(n: int) -> List[Tensor3]:
    """Unnormalized symmetric basis: sum over all six slot permutations.

    The element for (i,i,i) is 6 e_i (x) e_i (x) e_i; scaling is immaterial
    for the linear criteria checked against this basis.
    """
    basis = []
    for i, j, k in symmetric_basis3_indices(n):
        entries: Dict[Tuple[int, int, int], Fraction] = {}
        for p in permutations((i, j, k)):
            entries[p] = entries.get(p, ZERO) + ONE
        basis.append(Tensor3.from_entries(n, entries))
    return basis


# -- operators -----------------------------------------------------------------


def _mat_zero(size: int) -> List[List[Fraction]]:
    return [[ZERO] * size for _ in range(size)]


def _mat_identity(size: int) -> List[List[Fraction]]:
    out = _mat_zero(size)
    for i in range(size):
        out[i][i] = ONE
    return out


def _mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]], size: int) -> List[List[Fraction]]:
    out = _mat_zero(size)
    for i in range(size):
        row_a = a[i]
        row_o = out[i]
        for k in range(size):
            av = row_a[k]
            if not av:
                continue
            row_b = b[k]
            for j in range(size):
                bv = row_b[j]
                if bv:
                    row_o[j] += av * bv
    return out


def _mat_addsub(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]], sign: int) -> List[List[Fraction]]:
    if sign > 0:
        return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


@dataclass(frozen=True)
class Operator2:
    """Dense matrix acting on Tensor2 coefficient vectors (basis e_i (x) e_j)."""

    n: int
    mat: Tuple[Vector, ...]

    @classmethod
    def from_matrix(cls, n: int, mat: Sequence[Sequence[object]]) -> "Operator2":
        size = n * n
        if len(mat) != size or any(len(r) != size for r in mat):
            raise ValueError(f"expected a {size}x{size} matrix")
        return cls(n, tuple(_freeze_vector(r) for r in mat))

    @classmethod
    def identity(cls, n: int) -> "Operator2":
        return cls(n, tuple(tuple(r) for r in _mat_identity(n * n)))

    @property
    def size(self) -> int:
        return self.n * self.n

    def apply(self, t: Tensor2) -> Tensor2:
        n = self.n
        if t.n != n:
            raise ValueError("tensor dimension mismatch")
        vec = [t.rows[i][j] for i in range(n) for j in range(n)]
        out = []
        for row in self.mat:
            total = ZERO
            for value, x in zip(row, vec):
                if value and x:
                    total += value * x
            out.append(total)
        return Tensor2(n, tuple(tuple(out[i * n + j] for j in range(n)) for i in range(n)))

    def compose(self, other: "Operator2") -> "Operator2":
        self._check(other)
        return Operator2(self.n, tuple(tuple(r) for r in _mat_mul(self.mat, other.mat, self.size)))

    def __add__(self, other: "Operator2") -> "Operator2":
        self._check(other)
        return Operator2(self.n, tuple(tuple(r) for r in _mat_addsub(self.mat, other.mat, +1)))

    def __sub__(self, other: "Operator2") -> "Operator2":
        self._check(other)
        return Operator2(self.n, tuple(tuple(r) for r in _mat_addsub(self.mat, other.mat, -1)))

    def commutator(self, other: "Operator2") -> "Operator2":
        ab = _mat_mul(self.mat, other.mat, self.size)
        ba = _mat_mul(other.mat, self.mat, self.size)
        return Operator2(self.n, tuple(tuple(r) for r in _mat_addsub(ab, ba, -1)))

    def _check(self, other: "Operator2") -> None:
        if self.n != other.n:
            raise ValueError("operator dimension mismatch")


@dataclass(frozen=True)
class Operator3:
    """Dense matrix acting on Tensor3 coefficient vectors."""

    n: int
    mat: Tuple[Vector, ...]

    @classmethod
    def identity(cls, n: int) -> "Operator3":
        return cls(n, tuple(tuple(r) for r in _mat_identity(n ** 3)))

    @property
    def size(self) -> int:
        return self.n ** 3

    def apply(self, t: Tensor3) -> Tensor3:
        n = self.n
        if t.n != n:
            raise ValueError("tensor dimension mismatch")
        vec = [t.cube[i][j][k] for i in range(n) for j in range(n) for k in range(n)]
        out = []
        for row in self.mat:
            total = ZERO
            for value, x in zip(row, vec):
                if value and x:
                    total += value * x
            out.append(total)
        cube = tuple(
            tuple(tuple(out[(i * n + j) * n + k] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return Tensor3(n, cube)

    def compose(self, other: "Operator3") -> "Operator3":
        self._check(other)
        return Operator3(self.n, tuple(tuple(r) for r in _mat_mul(self.mat, other.mat, self.size)))

    def __add__(self, other: "Operator3") -> "Operator3":
        self._check(other)
        return Operator3(self.n, tuple(tuple(r) for r in _mat_addsub(self.mat, other.mat, +1)))

    def __sub__(self, other: "Operator3") -> "Operator3":
        self._check(other)
        return Operator3(self.n, tuple(tuple(r) for r in _mat_addsub(self.mat, other.mat, -1)))

    def commutator(self, other: "Operator3") -> "Operator3":
        ab = _mat_mul(self.mat, other.mat, self.size)
        ba = _mat_mul(other.mat, self.mat, self.size)
        return Operator3(self.n, tuple(tuple(r) for r in _mat_addsub(ab, ba, -1)))

    def _check(self, other: "Operator3") -> None:
        if self.n != other.n:
            raise ValueError("operator dimension mismatch")


def lift_operator(p: Operator2, slots: object) -> Operator3:
    """Lift a pair operator to the triple power, acting as identity elsewhere.

    `slots` picks the pair of tensor slots acted on: 12, 13 or 23.
    """
    tag = str(slots)
    if tag not in ("12", "13", "23"):
        raise ValueError(f"invalid slot tag: {slots!r} (expected 12, 13 or 23)")
    n = p.n
    size2 = n * n
    mat = _mat_zero(n ** 3)
    for row2 in range(size2):
        p_row = p.mat[row2]
        i, j = divmod(row2, n)
        for col2 in range(size2):
            value = p_row[col2]
            if not value:
                continue
            a, b = divmod(col2, n)
            if tag == "12":
                for c in range(n):
                    mat[(i * n + j) * n + c][(a * n + b) * n + c] = value
            elif tag == "13":
                for mid in range(n):
                    mat[(i * n + mid) * n + j][(a * n + mid) * n + b] = value
            else:
                for lead in range(n):
                    mat[(lead * n + i) * n + j][(lead * n + a) * n + b] = value
    return Operator3(n, tuple(tuple(r) for r in mat))


def sym_projector2(n: int) -> Operator2:
    """Projector onto symmetric tensors: t -> (t + t^T)/2."""
    half = Fraction(1, 2)
    mat = _mat_zero(n * n)
    for k in range(n):
        for l in range(n):
            col = k * n + l
            mat[k * n + l][col] += half
            mat[l * n + k][col] += half
    return Operator2(n, tuple(tuple(r) for r in mat))


def antisym_projector2(n: int) -> Operator2:
    """Projector onto antisymmetric tensors: t -> (t - t^T)/2."""
    half = Fraction(1, 2)
    mat = _mat_zero(n * n)
    for k in range(n):
        for l in range(n):
            col = k * n + l
            mat[k * n + l][col] += half
            mat[l * n + k][col] -= half
    return Operator2(n, tuple(tuple(r) for r in mat))
