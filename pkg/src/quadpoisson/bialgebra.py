"""Lie bialgebra data extracted from a compatible quadratic bracket.

On a unital algebra the cocommutator is D(x) = delta(x (x) u + u (x) x).
The package verifies the coalgebra half by running the Jacobi checker on
the dual linear bracket, and the cocycle half as

    D([x, y]) = (ad_x (x) id + id (x) ad_x) D(y)
              - (ad_y (x) id + id (x) ad_y) D(x)

with ad taken in the adjacent Lie algebra.  The translation oracle ties
this data to an independent computation path: translating the quadratic
bracket by t times the unit must add exactly t times the dual linear
bracket, with no constant part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    AlgebraSpec,
    Tensor2,
    UnitRequiredError,
    commutator_constants,
    find_unit,
)
from .bracket import (
    PolyBracket,
    bracket_to_delta,
    from_pair_polys,
    jacobiator,
    translate,
)
from .exact import Fraction, ONE, ZERO, Polynomial, SchemaError, rat, rat_from_json, rat_str
from .reporting import (
    CheckReport,
    coefficient_witness,
    labelled_witness,
    polynomial_witness,
    report,
    tensor_witness,
    timer,
)

Vector = Tuple[Fraction, ...]


class CasimirViolationError(ValueError):
    """Affine restriction requires the dropped coordinate to be Casimir."""

    def __init__(self, index: int, residual: Polynomial) -> None:
        super().__init__(
            f"coordinate is not Casimir: bracket with x{index + 1} is {residual.render()}"
        )
        self.index = index
        self.residual = residual


@dataclass(frozen=True)
class Cocommutator:
    """Coefficients d[i][j][m]: the image of e_m is sum d[i][j][m] e_i (x) e_j."""

    n: int
    d: Tuple[Tuple[Vector, ...], ...]

    @classmethod
    def build(cls, n: int, d: Sequence[Sequence[Sequence[object]]]) -> "Cocommutator":
        if len(d) != n or any(len(plane) != n or any(len(row) != n for row in plane) for plane in d):
            raise ValueError(f"expected a {n}x{n}x{n} array")
        table = tuple(tuple(tuple(rat(v) for v in row) for row in plane) for plane in d)
        for i in range(n):
            for j in range(i, n):
                for m in range(n):
                    if table[i][j][m] != -table[j][i][m]:
                        raise ValueError(f"not antisymmetric in (i,j) at ({i},{j},{m})")
        return cls(n, table)

    def image_of_basis(self, m: int) -> Tensor2:
        n = self.n
        return Tensor2(n, tuple(tuple(self.d[i][j][m] for j in range(n)) for i in range(n)))

    def image_of_vector(self, v: Sequence[Fraction]) -> Tensor2:
        out = Tensor2.zero(self.n)
        for m, value in enumerate(v):
            if value:
                out = out + self.image_of_basis(m).scale(value)
        return out

    def is_zero(self) -> bool:
        return all(not v for plane in self.d for row in plane for v in row)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": [[[rat_str(v) for v in row] for row in plane] for plane in self.d],
        }

    @classmethod
    def from_json(cls, data: object, pointer: str = "") -> "Cocommutator":
        if not isinstance(data, dict):
            raise SchemaError(pointer, "expected a cocommutator object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SchemaError(f"{pointer}/n", "expected a positive integer")
        raw = data.get("d")
        if not isinstance(raw, list) or len(raw) != n:
            raise SchemaError(f"{pointer}/d", f"expected {n} planes")
        d = []
        for i, plane in enumerate(raw):
            if not isinstance(plane, list) or len(plane) != n:
                raise SchemaError(f"{pointer}/d/{i}", f"expected {n} rows")
            rows = []
            for j, row in enumerate(plane):
                if not isinstance(row, list) or len(row) != n:
                    raise SchemaError(f"{pointer}/d/{i}/{j}", f"expected {n} entries")
                rows.append([rat_from_json(v, f"{pointer}/d/{i}/{j}/{m}") for m, v in enumerate(row)])
            d.append(rows)
        try:
            return cls.build(n, d)
        except ValueError as exc:
            raise SchemaError(f"{pointer}/d", str(exc)) from None


def cocommutator_from_bracket(spec: AlgebraSpec, bracket: PolyBracket) -> Cocommutator:
    """D(e_m) = delta(e_m (x) u + u (x) e_m), via the dual map of the bracket."""
    if bracket.n != spec.dim:
        raise ValueError("bracket dimension does not match the algebra")
    unit = find_unit(spec)
    if unit is None:
        raise UnitRequiredError("cocommutator extraction requires a unital algebra")
    n = spec.dim
    delta = bracket_to_delta(bracket)
    d = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for m in range(n):
        image = Tensor2.zero(n)
        for s in range(n):
            if unit[s]:
                image = image + delta.image(m, s).scale(unit[s])
        for i in range(n):
            for j in range(n):
                d[i][j][m] = image.rows[i][j]
    return Cocommutator.build(n, d)


def cocommutator_to_linear_bracket(cocomm: Cocommutator) -> PolyBracket:
    """Dual linear bracket {x^i, x^j} = sum d[i][j][m] x^m."""
    return PolyBracket.build(cocomm.n, b=cocomm.d)


def bialgebra_axioms_check(spec: AlgebraSpec, cocomm: Cocommutator) -> CheckReport:
    """Co-Jacobi plus the 1-cocycle condition on the adjacent Lie algebra."""
    n = spec.dim
    if cocomm.n != n:
        raise ValueError("cocommutator dimension does not match the algebra")
    comm = commutator_constants(spec)
    witnesses: List[dict] = []
    with timer() as t:
        co_jacobi = jacobiator(cocommutator_to_linear_bracket(cocomm))
        if not co_jacobi.ok:
            witnesses.append(labelled_witness("co_jacobi", [dict(w) for w in co_jacobi.witnesses]))

        def ad_action(x: int, tensor: Tensor2) -> Tensor2:
            out = Tensor2.zero(n)
            entries: Dict[Tuple[int, int], Fraction] = {}
            for i, j, value in tensor.nonzero():
                row = comm[x][i]
                for p in range(n):
                    if row[p]:
                        entries[(p, j)] = entries.get((p, j), ZERO) + value * row[p]
                row = comm[x][j]
                for q in range(n):
                    if row[q]:
                        entries[(i, q)] = entries.get((i, q), ZERO) + value * row[q]
            return out + Tensor2.from_entries(n, entries)

        for x in range(n):
            dx = cocomm.image_of_basis(x)
            for y in range(x + 1, n):
                dy = cocomm.image_of_basis(y)
                lhs = cocomm.image_of_vector(comm[x][y])
                rhs = ad_action(x, dy) - ad_action(y, dx)
                residual = lhs - rhs
                if not residual.is_zero():
                    witnesses.append(
                        tensor_witness((x, y), "tensor2", ((pos, v) for *pos, v in residual.nonzero()))
                    )
    return report("bialgebra_axioms", witnesses, t.elapsed)


def pencil_check(
    spec: AlgebraSpec,
    quad: PolyBracket,
    lin: PolyBracket,
    ts: Sequence[object],
    certify: bool = True,
) -> CheckReport:
    """Jacobi for the pencil quad + t * lin at the given parameter values.

    The Jacobi residual of the pencil depends on t with degree at most two,
    so passing at three distinct values, together with the two pure
    endpoints, certifies every linear combination.
    """
    n = spec.dim
    if quad.n != n or lin.n != n:
        raise ValueError("bracket dimension does not match the algebra")
    if not quad.is_quadratic():
        raise ValueError("first bracket of the pencil must be purely quadratic")
    if not lin.is_linear():
        raise ValueError("second bracket of the pencil must be purely linear")
    values = [rat(t) for t in ts]
    if certify and len(set(values)) < 3:
        raise ValueError("certification requires at least three distinct t values")
    witnesses: List[dict] = []
    with timer() as timer_ctx:
        endpoint_runs = [
            ("endpoint_quadratic", jacobiator(quad)),
            ("endpoint_linear", jacobiator(lin)),
        ]
        for label, sub in endpoint_runs:
            if not sub.ok:
                witnesses.append(labelled_witness(label, [dict(w) for w in sub.witnesses]))
        for t in values:
            sub = jacobiator(quad + lin.scale(t))
            if not sub.ok:
                witnesses.append(labelled_witness(f"t={rat_str(t)}", [dict(w) for w in sub.witnesses]))
    return report("pencil", witnesses, timer_ctx.elapsed)


def translation_oracle(
    spec: AlgebraSpec,
    quad: PolyBracket,
    ts: Sequence[object] = (1, 2),
) -> CheckReport:
    """Translating by t times the unit must equal adding t times the dual linear bracket.

    The left side substitutes coordinates; the right side goes through the
    cocommutator.  Exact coefficient equality is required, including a zero
    constant part.
    """
    if quad.n != spec.dim:
        raise ValueError("bracket dimension does not match the algebra")
    unit = find_unit(spec)
    if unit is None:
        raise UnitRequiredError("translation oracle requires a unital algebra")
    if not quad.is_quadratic():
        raise ValueError("translation oracle applies to purely quadratic brackets")
    n = spec.dim
    lin = cocommutator_to_linear_bracket(cocommutator_from_bracket(spec, quad))
    witnesses: List[dict] = []
    with timer() as t_ctx:
        for t in ts:
            tv = rat(t)
            got = translate(quad, unit, tv)
            want = quad + lin.scale(tv)
            if got != want:
                diffs: List[dict] = []
                for i in range(n):
                    for j in range(n):
                        for k in range(n):
                            for l in range(n):
                                if got.c[i][j][k][l] != want.c[i][j][k][l]:
                                    diffs.append(coefficient_witness("c", (i, j, k, l), got.c[i][j][k][l], want.c[i][j][k][l]))
                        for k in range(n):
                            if got.b[i][j][k] != want.b[i][j][k]:
                                diffs.append(coefficient_witness("b", (i, j, k), got.b[i][j][k], want.b[i][j][k]))
                        if got.a[i][j] != want.a[i][j]:
                            diffs.append(coefficient_witness("a", (i, j), got.a[i][j], want.a[i][j]))
                witnesses.append(labelled_witness(f"t={rat_str(tv)}", diffs))
    return report("translation_oracle", witnesses, t_ctx.elapsed)


def affine_restriction(
    spec: AlgebraSpec,
    bracket: PolyBracket,
    unit_index: Optional[int] = None,
) -> PolyBracket:
    """Restrict to the affine slice x(unit coordinate) = 1.

    The dropped coordinate must be Casimir (its bracket with every
    coordinate vanishes identically); the result is a bracket on the
    remaining n - 1 coordinates, generally with quadratic and linear parts.
    When `unit_index` is omitted it is taken from the algebra's unit, which
    must then be a basis vector.
    """
    n = bracket.n
    if spec.dim != n:
        raise ValueError("bracket dimension does not match the algebra")
    if unit_index is None:
        unit = find_unit(spec)
        if unit is None:
            raise UnitRequiredError("affine restriction needs a unit coordinate")
        hot = [i for i, v in enumerate(unit) if v]
        if len(hot) != 1 or unit[hot[0]] != ONE:
            raise ValueError("the unit is not a basis vector; pass unit_index explicitly")
        unit_index = hot[0]
    if not 0 <= unit_index < n:
        raise ValueError("unit coordinate index out of range")
    for j in range(n):
        if j == unit_index:
            continue
        residual = bracket.pair_poly(unit_index, j)
        if not residual.is_zero():
            raise CasimirViolationError(j, residual)
    kept = [i for i in range(n) if i != unit_index]
    new_index = {old: new for new, old in enumerate(kept)}
    target = n - 1
    images = []
    for old in range(n):
        if old == unit_index:
            images.append(Polynomial.constant(target, ONE))
        else:
            images.append(Polynomial.variable(target, new_index[old]))
    pairs = {}
    for i in kept:
        for j in kept:
            if i < j:
                pairs[(new_index[i], new_index[j])] = bracket.pair_poly(i, j).substitute(images)
    return from_pair_polys(target, pairs)


def restriction_manifest(n: int, unit_index: int) -> dict:
    """Coordinate bookkeeping emitted alongside a restricted bracket."""
    kept = [i for i in range(n) if i != unit_index]
    return {
        "dropped_index": unit_index,
        "mapping": [{"old": old, "new": new} for new, old in enumerate(kept)],
    }
