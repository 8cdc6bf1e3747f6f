"""Coboundary brackets delta(x) = [r, x] for an antisymmetric r.

The element Schouten bracket [[r, r]] is computed directly by three
structure-constant contractions: each slot pattern collapses its formal
unit into a commutator, so the whole computation closes inside the triple
tensor power and no enveloping algebra is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .algebra import (
    AlgebraSpec,
    Tensor2,
    Tensor3,
    UnitRequiredError,
    commutator_constants,
    find_unit,
    symmetric_basis3,
    symmetric_basis3_indices,
    tensor2_commutator,
    tensor3_commutator,
)
from .bracket import DeltaMap, PolyBracket, delta_to_bracket
from .exact import Fraction, ONE, ZERO, SchemaError, rat, rat_from_json, rat_str
from .reporting import CheckReport, report, tensor_witness, timer

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class RMatrix:
    """Antisymmetric coefficients of r = sum r[i][j] e_i (x) e_j."""

    n: int
    r: Tuple[Vector, ...]

    @classmethod
    def build(cls, n: int, rows) -> "RMatrix":
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"expected a {n}x{n} array")
        table = tuple(tuple(rat(v) for v in row) for row in rows)
        for i in range(n):
            for j in range(i, n):
                if table[i][j] != -table[j][i]:
                    raise ValueError(f"not antisymmetric at ({i},{j})")
        return cls(n, table)

    @classmethod
    def from_entries(cls, n: int, entries: Dict[Tuple[int, int], object]) -> "RMatrix":
        """Entries given for i < j; the opposite triangle is filled by antisymmetry."""
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), value in entries.items():
            v = rat(value)
            rows[i][j] += v
            rows[j][i] -= v
        return cls.build(n, rows)

    def tensor(self) -> Tensor2:
        return Tensor2(self.n, self.r)

    def to_json(self) -> dict:
        return {"n": self.n, "r": [[rat_str(v) for v in row] for row in self.r]}

    @classmethod
    def from_json(cls, data: object, pointer: str = "") -> "RMatrix":
        if not isinstance(data, dict):
            raise SchemaError(pointer, "expected an r-matrix object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SchemaError(f"{pointer}/n", "expected a positive integer")
        raw = data.get("r")
        if not isinstance(raw, list) or len(raw) != n:
            raise SchemaError(f"{pointer}/r", f"expected {n} rows")
        rows = []
        for i, row in enumerate(raw):
            if not isinstance(row, list) or len(row) != n:
                raise SchemaError(f"{pointer}/r/{i}", f"expected {n} entries")
            rows.append([rat_from_json(v, f"{pointer}/r/{i}/{j}") for j, v in enumerate(row)])
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != -rows[j][i]:
                    raise SchemaError(f"{pointer}/r/{i}/{j}", f"r must be antisymmetric; violated at ({i},{j})")
        return cls(n, tuple(tuple(row) for row in rows))


def element_schouten(spec: AlgebraSpec, rm: RMatrix) -> Tensor3:
    """[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23] in the triple power.

    Expanded over the nonzero entries of r:
      [r12, r13] = sum r^{ij} r^{kl} [e_i, e_k] (x) e_j (x) e_l
      [r12, r23] = sum r^{ij} r^{kl} e_i (x) [e_j, e_k] (x) e_l
      [r13, r23] = sum r^{ij} r^{kl} e_i (x) e_k (x) [e_j, e_l]
    """
    n = spec.dim
    if rm.n != n:
        raise ValueError("r-matrix dimension does not match the algebra")
    comm = commutator_constants(spec)
    acc: Dict[Tuple[int, int, int], Fraction] = {}

    def bump(key: Tuple[int, int, int], value: Fraction) -> None:
        total = acc.get(key, ZERO) + value
        if total:
            acc[key] = total
        else:
            acc.pop(key, None)

    entries = [(i, j, v) for i, row in enumerate(rm.r) for j, v in enumerate(row) if v]
    for i, j, vij in entries:
        for k, l, vkl in entries:
            coeff = vij * vkl
            row = comm[i][k]
            for a in range(n):
                if row[a]:
                    bump((a, j, l), coeff * row[a])
            row = comm[j][k]
            for a in range(n):
                if row[a]:
                    bump((i, a, l), coeff * row[a])
            row = comm[j][l]
            for a in range(n):
                if row[a]:
                    bump((i, k, a), coeff * row[a])
    return Tensor3.from_entries(n, acc)


def cybe_check(spec: AlgebraSpec, rm: RMatrix) -> CheckReport:
    """Classical Yang-Baxter equation: [[r, r]] = 0 exactly."""
    with timer() as t:
        tensor = element_schouten(spec, rm)
        witnesses = []
        if not tensor.is_zero():
            witnesses.append(
                tensor_witness((), "tensor3", ((pos, v) for *pos, v in tensor.nonzero()))
            )
    return report("cybe", witnesses, t.elapsed)


def mybe_check(spec: AlgebraSpec, rm: RMatrix) -> CheckReport:
    """[[r, r]] commutes with every fully symmetric 3-tensor.

    Checked on the symmetric basis, which suffices by bilinearity.  This is
    the exact criterion for the derived bracket to satisfy Jacobi.
    """
    with timer() as t:
        tensor = element_schouten(spec, rm)
        witnesses = []
        for label, x in zip(symmetric_basis3_indices(spec.dim), symmetric_basis3(spec.dim)):
            residual = tensor3_commutator(spec, tensor, x)
            if not residual.is_zero():
                witnesses.append(
                    tensor_witness(label, "tensor3", ((pos, v) for *pos, v in residual.nonzero()))
                )
    return report("mybe", witnesses, t.elapsed)


def ad_invariance_check(spec: AlgebraSpec, rm: RMatrix) -> CheckReport:
    """Unital shortcut: [[r, r]] commutes with x(x)1(x)1 + 1(x)x(x)1 + 1(x)1(x)x.

    Equivalent to the full commutant condition when the algebra has a unit;
    raises UnitRequiredError otherwise.
    """
    unit = find_unit(spec)
    if unit is None:
        raise UnitRequiredError("ad-invariance check requires a unital algebra")
    n = spec.dim
    with timer() as t:
        tensor = element_schouten(spec, rm)
        witnesses = []
        for basis_index in range(n):
            entries: Dict[Tuple[int, int, int], Fraction] = {}
            for s in range(n):
                if not unit[s]:
                    continue
                for w in range(n):
                    if not unit[w]:
                        continue
                    value = unit[s] * unit[w]
                    for key in (
                        (basis_index, s, w),
                        (s, basis_index, w),
                        (s, w, basis_index),
                    ):
                        entries[key] = entries.get(key, ZERO) + value
            probe = Tensor3.from_entries(n, entries)
            residual = tensor3_commutator(spec, tensor, probe)
            if not residual.is_zero():
                witnesses.append(
                    tensor_witness((basis_index,), "tensor3", ((pos, v) for *pos, v in residual.nonzero()))
                )
    return report("ad_invariance", witnesses, t.elapsed)


def derive_bracket_from_r(spec: AlgebraSpec, rm: RMatrix) -> PolyBracket:
    """Quadratic bracket whose dual map is the inner derivation [r, .].

    Builds the images delta(e_k (.) e_l) = [r, e_k (x) e_l + e_l (x) e_k]
    in the componentwise tensor-square algebra and converts them back to
    bracket coefficients.  The result is automatically compatible with the
    multiplication.
    """
    n = spec.dim
    if rm.n != n:
        raise ValueError("r-matrix dimension does not match the algebra")
    r_tensor = rm.tensor()
    images = {}
    for k in range(n):
        for l in range(k, n):
            s = Tensor2.from_entries(n, {(k, l): ONE}) + Tensor2.from_entries(n, {(l, k): ONE})
            images[(k, l)] = tensor2_commutator(spec, r_tensor, s)
    return delta_to_bracket(DeltaMap(n, images))
