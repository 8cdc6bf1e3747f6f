"""Poisson brackets of degree <= 2 on coordinate functions.

A bracket is stored by its coefficient parts

    {x^i, x^j} = sum c[i][j][k][l] x^k x^l + sum b[i][j][k] x^k + a[i][j]

with c, b, a antisymmetric in the (i, j) pair and c normalized symmetric
in (k, l).  The module provides evaluation on polynomials, two Jacobi
checkers (direct polynomial and operator form), two compatibility
checkers (diagonal identity and derivation duality), the duality with the
map delta on symmetric 2-tensors, and the exact translation change of
coordinates.

Duality normalization, fixed once for the whole package:

    delta(e_k (x) e_l + e_l (x) e_k) = sum_{i,j} 2 c[i][j][k][l] e_i (x) e_j

The cross-checker equivalence suites in the test suite pin this choice:
an inconsistent convention breaks them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    AlgebraSpec,
    Operator2,
    Operator3,
    Tensor2,
    lift_operator,
    symmetric_basis3,
    symmetric_basis3_indices,
    tensor2_mul,
    tensor3_mul,
)
from .exact import Fraction, ONE, ZERO, Polynomial, SchemaError, rat, rat_from_json, rat_str
from .reporting import CheckReport, polynomial_witness, report, tensor_witness, timer

Vector = Tuple[Fraction, ...]
CTensor = Tuple[Tuple[Tuple[Vector, ...], ...], ...]
BTensor = Tuple[Tuple[Vector, ...], ...]
ATensor = Tuple[Vector, ...]


def _zero_c(n: int) -> List[List[List[List[Fraction]]]]:
    return [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]


def _zero_b(n: int) -> List[List[List[Fraction]]]:
    return [[[ZERO] * n for _ in range(n)] for _ in range(n)]


def _zero_a(n: int) -> List[List[Fraction]]:
    return [[ZERO] * n for _ in range(n)]


@dataclass(frozen=True)
class PolyBracket:
    """Coefficient data of a degree <= 2 bracket on n coordinates."""

    n: int
    c: CTensor
    b: BTensor
    a: ATensor

    @classmethod
    def build(
        cls,
        n: int,
        c: Optional[Sequence] = None,
        b: Optional[Sequence] = None,
        a: Optional[Sequence] = None,
    ) -> "PolyBracket":
        """Normalize (symmetrize the lower pair of c) and validate antisymmetry."""
        cq = _zero_c(n)
        if c is not None:
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        for l in range(n):
                            cq[i][j][k][l] = (rat(c[i][j][k][l]) + rat(c[i][j][l][k])) / 2
        bq = _zero_b(n)
        if b is not None:
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        bq[i][j][k] = rat(b[i][j][k])
        aq = _zero_a(n)
        if a is not None:
            for i in range(n):
                for j in range(n):
                    aq[i][j] = rat(a[i][j])
        for i in range(n):
            for j in range(i, n):
                if any(cq[i][j][k][l] != -cq[j][i][k][l] for k in range(n) for l in range(n)):
                    raise ValueError(f"quadratic part not antisymmetric in the upper pair at ({i},{j})")
                if any(bq[i][j][k] != -bq[j][i][k] for k in range(n)):
                    raise ValueError(f"linear part not antisymmetric at ({i},{j})")
                if aq[i][j] != -aq[j][i]:
                    raise ValueError(f"constant part not antisymmetric at ({i},{j})")
        return cls(
            n=n,
            c=tuple(tuple(tuple(tuple(r) for r in plane) for plane in block) for block in cq),
            b=tuple(tuple(tuple(r) for r in plane) for plane in bq),
            a=tuple(tuple(r) for r in aq),
        )

    @classmethod
    def zero(cls, n: int) -> "PolyBracket":
        return cls.build(n)

    # -- structure ---------------------------------------------------------

    def is_quadratic(self) -> bool:
        """Purely quadratic: linear and constant parts vanish."""
        return all(not v for plane in self.b for row in plane for v in row) and all(
            not v for row in self.a for v in row
        )

    def is_linear(self) -> bool:
        """Purely linear: quadratic and constant parts vanish."""
        return all(
            not v for block in self.c for plane in block for row in plane for v in row
        ) and all(not v for row in self.a for v in row)

    def is_zero(self) -> bool:
        return self.is_quadratic() and all(
            not v for block in self.c for plane in block for row in plane for v in row
        )

    def pair_poly(self, i: int, j: int) -> Polynomial:
        """The polynomial {x^i, x^j}."""
        n = self.n
        terms: Dict[Tuple[int, ...], Fraction] = {}

        def bump(exps: Tuple[int, ...], value: Fraction) -> None:
            total = terms.get(exps, ZERO) + value
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)

        for k in range(n):
            for l in range(n):
                value = self.c[i][j][k][l]
                if value:
                    exps = [0] * n
                    exps[k] += 1
                    exps[l] += 1
                    bump(tuple(exps), value)
        for k in range(n):
            value = self.b[i][j][k]
            if value:
                exps = [0] * n
                exps[k] = 1
                bump(tuple(exps), value)
        if self.a[i][j]:
            bump((0,) * n, self.a[i][j])
        return Polynomial(n, terms)

    def table(self) -> Dict[Tuple[int, int], Polynomial]:
        return {(i, j): self.pair_poly(i, j) for i in range(self.n) for j in range(i + 1, self.n)}

    def __add__(self, other: "PolyBracket") -> "PolyBracket":
        if self.n != other.n:
            raise ValueError("bracket dimension mismatch")
        n = self.n
        return PolyBracket(
            n=n,
            c=tuple(
                tuple(
                    tuple(
                        tuple(self.c[i][j][k][l] + other.c[i][j][k][l] for l in range(n))
                        for k in range(n)
                    )
                    for j in range(n)
                )
                for i in range(n)
            ),
            b=tuple(
                tuple(
                    tuple(self.b[i][j][k] + other.b[i][j][k] for k in range(n))
                    for j in range(n)
                )
                for i in range(n)
            ),
            a=tuple(tuple(self.a[i][j] + other.a[i][j] for j in range(n)) for i in range(n)),
        )

    def scale(self, factor: object) -> "PolyBracket":
        f = rat(factor)
        n = self.n
        return PolyBracket(
            n=n,
            c=tuple(
                tuple(
                    tuple(tuple(f * v for v in row) for row in plane) for plane in block
                )
                for block in self.c
            ),
            b=tuple(tuple(tuple(f * v for v in row) for row in plane) for plane in self.b),
            a=tuple(tuple(f * v for v in row) for row in self.a),
        )

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        n = self.n
        return {
            "n": n,
            "c": [[[[rat_str(v) for v in row] for row in plane] for plane in block] for block in self.c],
            "b": [[[rat_str(v) for v in row] for row in plane] for plane in self.b],
            "a": [[rat_str(v) for v in row] for row in self.a],
        }

    @classmethod
    def from_json(cls, data: object, pointer: str = "") -> "PolyBracket":
        if not isinstance(data, dict):
            raise SchemaError(pointer, "expected a bracket object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SchemaError(f"{pointer}/n", "expected a positive integer")

        def load(name: str, rank: int) -> Optional[list]:
            raw = data.get(name)
            if raw is None:
                return None

            def walk(node: object, depth: int, ptr: str) -> object:
                if depth == 0:
                    return rat_from_json(node, ptr)
                if not isinstance(node, list) or len(node) != n:
                    raise SchemaError(ptr, f"expected {n} entries")
                return [walk(child, depth - 1, f"{ptr}/{idx}") for idx, child in enumerate(node)]

            return walk(raw, rank, f"{pointer}/{name}")

        try:
            return cls.build(n, c=load("c", 4), b=load("b", 3), a=load("a", 2))
        except ValueError as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(pointer, str(exc)) from None


def from_pair_polys(n: int, pairs: Mapping[Tuple[int, int], Polynomial]) -> PolyBracket:
    """Build a bracket from the polynomials {x^i, x^j} given for i < j."""
    c = _zero_c(n)
    b = _zero_b(n)
    a = _zero_a(n)
    for (i, j), poly in pairs.items():
        if not 0 <= i < j < n:
            raise ValueError(f"pair indices must satisfy 0 <= i < j < n, got ({i},{j})")
        if poly.nvars != n:
            raise ValueError("pair polynomial has the wrong variable count")
        for exps, coeff in poly.terms():
            degree = sum(exps)
            if degree > 2:
                raise ValueError(f"pair ({i},{j}) has a term of degree {degree} > 2")
            support = [k for k, e in enumerate(exps) if e]
            if degree == 2:
                if len(support) == 1:
                    k = support[0]
                    c[i][j][k][k] += coeff
                    c[j][i][k][k] -= coeff
                else:
                    k, l = support
                    half = coeff / 2
                    c[i][j][k][l] += half
                    c[i][j][l][k] += half
                    c[j][i][k][l] -= half
                    c[j][i][l][k] -= half
            elif degree == 1:
                k = support[0]
                b[i][j][k] += coeff
                b[j][i][k] -= coeff
            else:
                a[i][j] += coeff
                a[j][i] -= coeff
    return PolyBracket.build(n, c=c, b=b, a=a)


# -- evaluation on polynomials -------------------------------------------------


def bracket_poly(bracket: PolyBracket, f: Polynomial, g: Polynomial) -> Polynomial:
    """Extend the coordinate bracket to polynomials.

    The extension is the biderivation sum_{i,j} df/dx_i dg/dx_j {x^i, x^j},
    which is the unique extension obeying the Leibnitz identity in both
    arguments.
    """
    n = bracket.n
    if f.nvars != n or g.nvars != n:
        raise ValueError("variable-count mismatch between bracket and arguments")
    out = Polynomial.zero(n)
    dfs = [f.diff(i) for i in range(n)]
    dgs = [g.diff(j) for j in range(n)]
    for i in range(n):
        if dfs[i].is_zero():
            continue
        for j in range(n):
            if i == j or dgs[j].is_zero():
                continue
            pij = bracket.pair_poly(i, j)
            if pij.is_zero():
                continue
            out = out + dfs[i] * dgs[j] * pij
    return out


def jacobiator(bracket: PolyBracket) -> CheckReport:
    """Cyclic Jacobi sum on every coordinate triple, as exact polynomials."""
    n = bracket.n
    xs = [Polynomial.variable(n, i) for i in range(n)]
    witnesses = []
    with timer() as t:
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    residual = (
                        bracket_poly(bracket, xs[i], bracket_poly(bracket, xs[j], xs[k]))
                        + bracket_poly(bracket, xs[j], bracket_poly(bracket, xs[k], xs[i]))
                        + bracket_poly(bracket, xs[k], bracket_poly(bracket, xs[i], xs[j]))
                    )
                    if not residual.is_zero():
                        witnesses.append(polynomial_witness((i, j, k), residual))
    return report("jacobi", witnesses, t.elapsed)


def compat_direct(spec: AlgebraSpec, bracket: PolyBracket) -> CheckReport:
    """Diagonal compatibility with the multiplication, checked literally.

    Working in 2n variables (y for the left factor, z for the right), the
    pullback of coordinates along the product is
    D(x^i) = sum m[k][l][i] y^k z^l, and the identity checked for every
    pair i < j is D({x^i, x^j}) = {D(x^i), D(x^j)} under the product
    bracket (the y-copy plus the z-copy of the given bracket).
    """
    n = spec.dim
    if bracket.n != n:
        raise ValueError("bracket dimension does not match the algebra")
    if not bracket.is_quadratic():
        raise ValueError("compatibility is defined for purely quadratic brackets")
    big = 2 * n
    diag: List[Polynomial] = []
    for i in range(n):
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for k in range(n):
            for l in range(n):
                value = spec.m[k][l][i]
                if value:
                    exps = [0] * big
                    exps[k] += 1
                    exps[n + l] += 1
                    key = tuple(exps)
                    terms[key] = terms.get(key, ZERO) + value
        diag.append(Polynomial(big, terms))

    c2 = _zero_c(big)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    value = bracket.c[i][j][k][l]
                    if value:
                        c2[i][j][k][l] = value
                        c2[n + i][n + j][n + k][n + l] = value
    product_bracket = PolyBracket.build(big, c=c2)

    witnesses = []
    with timer() as t:
        for i in range(n):
            for j in range(i + 1, n):
                lhs = Polynomial.zero(big)
                for k in range(n):
                    for l in range(n):
                        value = bracket.c[i][j][k][l]
                        if value:
                            lhs = lhs + diag[k] * diag[l] * value
                rhs = bracket_poly(product_bracket, diag[i], diag[j])
                residual = lhs - rhs
                if not residual.is_zero():
                    witnesses.append(polynomial_witness((i, j), residual))
    return report("compat_direct", witnesses, t.elapsed)


# -- duality with delta ----------------------------------------------------------


class DeltaMap:
    """Images delta(e_k (x) e_l + e_l (x) e_k) in the antisymmetric square."""

    def __init__(self, n: int, images: Mapping[Tuple[int, int], Tensor2]) -> None:
        self.n = n
        store: Dict[Tuple[int, int], Tensor2] = {}
        for k in range(n):
            for l in range(k, n):
                image = images.get((k, l), Tensor2.zero(n))
                if image.n != n:
                    raise ValueError("image dimension mismatch")
                if not image.is_antisymmetric():
                    raise ValueError(f"image of pair ({k},{l}) is not antisymmetric")
                store[(k, l)] = image
        extra = set(images) - set(store)
        if extra:
            raise ValueError(f"unexpected image keys (need k <= l): {sorted(extra)}")
        self._images = store

    def image(self, k: int, l: int) -> Tensor2:
        return self._images[(min(k, l), max(k, l))]

    def apply_symmetric(self, t: Tensor2) -> Tensor2:
        """Linear extension to an arbitrary symmetric tensor."""
        if not t.is_symmetric():
            raise ValueError("delta applies to symmetric tensors only")
        out = Tensor2.zero(self.n)
        half = Fraction(1, 2)
        for i, j, value in t.nonzero():
            out = out + self.image(i, j).scale(value * half)
        return out

    def items(self):
        return sorted(self._images.items())


def bracket_to_delta(bracket: PolyBracket) -> DeltaMap:
    """Dual map of a quadratic bracket under the fixed normalization."""
    if not bracket.is_quadratic():
        raise ValueError("duality is defined for purely quadratic brackets")
    n = bracket.n
    images = {}
    for k in range(n):
        for l in range(k, n):
            images[(k, l)] = Tensor2.from_rows(
                n, [[2 * bracket.c[i][j][k][l] for j in range(n)] for i in range(n)]
            )
    return DeltaMap(n, images)


def delta_to_bracket(delta: DeltaMap) -> PolyBracket:
    """Inverse of bracket_to_delta."""
    n = delta.n
    c = _zero_c(n)
    half = Fraction(1, 2)
    for (k, l), image in delta.items():
        for i in range(n):
            for j in range(n):
                value = image.rows[i][j] * half
                c[i][j][k][l] = value
                c[i][j][l][k] = value
    return PolyBracket.build(n, c=c)


def derivation_check(spec: AlgebraSpec, delta: DeltaMap) -> CheckReport:
    """Derivation identity for delta on the symmetric-square subalgebra.

    For basis elements p = e_i (.) e_j and q = e_k (.) e_l of the symmetric
    square, checks delta(pq) = p delta(q) + delta(p) q with products taken
    componentwise and delta extended linearly to the symmetric product pq.
    """
    n = spec.dim
    if delta.n != n:
        raise ValueError("delta dimension does not match the algebra")
    sym_pairs = [(i, j) for i in range(n) for j in range(i, n)]
    basis = {
        (i, j): Tensor2.from_entries(n, {(i, j): ONE}) + Tensor2.from_entries(n, {(j, i): ONE})
        for (i, j) in sym_pairs
    }
    witnesses = []
    with timer() as t:
        for (i, j) in sym_pairs:
            p = basis[(i, j)]
            dp = delta.image(i, j)
            for (k, l) in sym_pairs:
                q = basis[(k, l)]
                dq = delta.image(k, l)
                pq = tensor2_mul(spec, p, q)
                if not pq.is_symmetric():
                    raise ValueError("product of symmetric tensors is not symmetric; corrupted input")
                lhs = delta.apply_symmetric(pq)
                rhs = tensor2_mul(spec, p, dq) + tensor2_mul(spec, dp, q)
                residual = lhs - rhs
                if not residual.is_zero():
                    witnesses.append(
                        tensor_witness((i, j, k, l), "tensor2", ((pos[:2], v) for *pos, v in residual.nonzero()))
                    )
    return report("derivation", witnesses, t.elapsed)


# -- operator Schouten criterion --------------------------------------------------


def delta_operator(bracket: PolyBracket) -> Operator2:
    """Canonical extension of delta to all of the tensor square.

    Acts as delta compose the symmetrizer, so it kills antisymmetric
    tensors; matrix entry [(i,j),(k,l)] equals c[i][j][k][l].
    """
    if not bracket.is_quadratic():
        raise ValueError("the operator form is defined for purely quadratic brackets")
    n = bracket.n
    mat = [[ZERO] * (n * n) for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            row = i * n + j
            for k in range(n):
                for l in range(n):
                    value = bracket.c[i][j][k][l]
                    if value:
                        mat[row][k * n + l] = value
    return Operator2.from_matrix(n, mat)


def schouten_operator(p: Operator2) -> Operator3:
    """[P12, P13] + [P12, P23] + [P13, P23] on the triple tensor power."""
    p12 = lift_operator(p, 12)
    p13 = lift_operator(p, 13)
    p23 = lift_operator(p, 23)
    return p12.commutator(p13) + p12.commutator(p23) + p13.commutator(p23)


def schouten_operator_check(bracket: PolyBracket) -> CheckReport:
    """Jacobi criterion in operator form.

    Passes exactly when the Schouten expression of the canonical extension
    annihilates every fully symmetric 3-tensor; checked on the symmetric
    basis, which is complete by linearity.
    """
    n = bracket.n
    with timer() as t:
        expression = schouten_operator(delta_operator(bracket))
        witnesses = []
        for label, x in zip(symmetric_basis3_indices(n), symmetric_basis3(n)):
            image = expression.apply(x)
            if not image.is_zero():
                witnesses.append(
                    tensor_witness(label, "tensor3", ((pos, v) for *pos, v in image.nonzero()))
                )
    return report("schouten_operator", witnesses, t.elapsed)


def extension_independence(bracket: PolyBracket, extension: Operator2) -> CheckReport:
    """The Schouten expression on symmetric tensors ignores the extension.

    `extension` must vanish on symmetric tensors (columns antisymmetric
    under swapping the pair); the check compares the Schouten expression of
    the canonical extension against the canonical extension plus the given
    one, on the full symmetric basis.
    """
    n = bracket.n
    if extension.n != n:
        raise ValueError("extension dimension mismatch")
    for k in range(n):
        for l in range(k, n):
            col_kl = k * n + l
            col_lk = l * n + k
            for row in range(n * n):
                if extension.mat[row][col_kl] + extension.mat[row][col_lk] != 0:
                    raise ValueError("extension does not vanish on symmetric tensors")
    with timer() as t:
        base = delta_operator(bracket)
        s0 = schouten_operator(base)
        s1 = schouten_operator(base + extension)
        witnesses = []
        for label, x in zip(symmetric_basis3_indices(n), symmetric_basis3(n)):
            diff = s1.apply(x) - s0.apply(x)
            if not diff.is_zero():
                witnesses.append(
                    tensor_witness(label, "tensor3", ((pos, v) for *pos, v in diff.nonzero()))
                )
    return report("extension_independence", witnesses, t.elapsed)


# -- translation ------------------------------------------------------------------


def translate(bracket: PolyBracket, u: Sequence[object], t: object) -> PolyBracket:
    """Exact change of coordinates x -> x + t*u applied to the bracket.

    Implemented by substituting into the pair polynomials and re-reading
    the coefficient parts, so it is independent of any duality formula.
    """
    n = bracket.n
    if len(u) != n:
        raise ValueError(f"translation vector must have length {n}")
    shift = rat(t)
    uv = [rat(x) for x in u]
    subs = [
        Polynomial.variable(n, k) + Polynomial.constant(n, shift * uv[k]) for k in range(n)
    ]
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            pairs[(i, j)] = bracket.pair_poly(i, j).substitute(subs)
    return from_pair_polys(n, pairs)
