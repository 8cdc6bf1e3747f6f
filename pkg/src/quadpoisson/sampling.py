"""Seeded random instances for the cross-checker equivalence suites.

Random associative algebras are produced by transporting known associative
tables through random unimodular changes of basis, which preserves
associativity exactly while scrambling the constants.  Random brackets mix
raw antisymmetric coefficient noise (almost never Jacobi), coboundary
brackets derived from random r (always compatible), and zero brackets, so
both verdicts occur on every suite.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraSpec
from .bracket import PolyBracket
from .catalog import first_column_spec, heisenberg_spec, solvable2_spec, two_step_nilpotent_spec
from .coboundary import RMatrix
from .exact import ONE, ZERO, matrix_inverse


def random_unimodular(rng: Random, n: int, steps: int = 6) -> List[List[Fraction]]:
    """Product of elementary integer row operations; exactly invertible."""
    g = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    if n == 1:
        return g
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        factor = Fraction(rng.choice([-2, -1, 1, 2]))
        for k in range(n):
            g[i][k] += factor * g[j][k]
    if rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        g[i], g[j] = g[j], g[i]
    return g


def transform_spec(spec: AlgebraSpec, g: Sequence[Sequence[Fraction]], name: Optional[str] = None) -> AlgebraSpec:
    """Structure constants in the basis e'_i = sum g[i][a] e_a."""
    n = spec.dim
    h = matrix_inverse(g)
    if h is None:
        raise ValueError("change of basis must be invertible")
    m = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = [ZERO] * n
            for a in range(n):
                ga = g[i][a]
                if not ga:
                    continue
                for b in range(n):
                    gb = g[j][b]
                    if not gb:
                        continue
                    coeff = ga * gb
                    row = spec.m[a][b]
                    for c in range(n):
                        if row[c]:
                            acc[c] += coeff * row[c]
            for k in range(n):
                total = ZERO
                for c in range(n):
                    if acc[c] and h[c][k]:
                        total += acc[c] * h[c][k]
                m[i][j][k] = total
    return AlgebraSpec.build(name or f"{spec.name}_tw", n, m)


def _truncated_polynomial_spec(n: int, unital: bool) -> AlgebraSpec:
    """K[t]/(t^n) with basis 1..t^(n-1), or its nilpotent ideal t..t^n."""
    entries: Dict[Tuple[int, int, int], int] = {}
    if unital:
        for i in range(n):
            for j in range(n):
                if i + j < n:
                    entries[(i, j, i + j)] = 1
        return AlgebraSpec.from_entries(f"trunc{n}", n, entries)
    for i in range(n):
        for j in range(n):
            if i + j + 1 < n:
                entries[(i, j, i + j + 1)] = 1
    return AlgebraSpec.from_entries(f"nil{n}", n, entries)


def _diagonal_spec(n: int) -> AlgebraSpec:
    """Direct sum of n copies of the ground field."""
    return AlgebraSpec.from_entries(f"diag{n}", n, {(i, i, i): 1 for i in range(n)})


def _padded(spec: AlgebraSpec, n: int) -> AlgebraSpec:
    """Pad with a zero-multiplication complement up to dimension n."""
    entries = {}
    for i in range(spec.dim):
        for j in range(spec.dim):
            for k in range(spec.dim):
                if spec.m[i][j][k]:
                    entries[(i, j, k)] = spec.m[i][j][k]
    return AlgebraSpec.from_entries(f"{spec.name}_pad{n}", n, entries)


def random_associative_spec(rng: Random, n: int) -> AlgebraSpec:
    """Random associative algebra of dimension n (not necessarily unital)."""
    pool = [
        AlgebraSpec.from_entries(f"zero{n}", n, {}),
        _truncated_polynomial_spec(n, unital=False),
        _diagonal_spec(n),
        first_column_spec(n),
    ]
    if n >= 2:
        pool.append(_padded(solvable2_spec(), n))
        pool.append(_truncated_polynomial_spec(n, unital=True))
    if n == 3:
        pool.append(heisenberg_spec())
    base = rng.choice(pool)
    return transform_spec(base, random_unimodular(rng, n))


def random_unital_spec(rng: Random, n: int) -> AlgebraSpec:
    """Random associative algebra of dimension n with a two-sided unit."""
    pool = [_diagonal_spec(n), _truncated_polynomial_spec(n, unital=True)]
    if n >= 3:
        # unit plus a square-zero complement
        mixed = AlgebraSpec.from_entries(
            f"fieldnil{n}", n, {**{(0, j, j): 1 for j in range(n)}, **{(j, 0, j): 1 for j in range(1, n)}}
        )
        pool.append(mixed)
    base = rng.choice(pool)
    return transform_spec(base, random_unimodular(rng, n))


def random_quadratic_bracket(rng: Random, n: int, entries: int = 3) -> PolyBracket:
    """Sparse random quadratic bracket; almost never satisfies Jacobi."""
    c = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for _ in range(entries):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        k = rng.randrange(n)
        l = rng.randrange(n)
        value = Fraction(rng.choice([-2, -1, 1, 2]))
        c[i][j][k][l] += value
        c[j][i][k][l] -= value
    return PolyBracket.build(n, c=c)


def random_rmatrix(rng: Random, n: int, density: float = 0.7) -> RMatrix:
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                entries[(i, j)] = Fraction(rng.choice([-2, -1, 1, 2]))
    return RMatrix.from_entries(n, entries)


def random_two_step_nilpotent(rng: Random, generators: int, center: int) -> AlgebraSpec:
    """Two-step nilpotent Lie algebra: [V, V] inside the center Z, [Z, .] = 0."""
    n = generators + center
    f = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(generators):
        for j in range(i + 1, generators):
            for z in range(center):
                value = Fraction(rng.randint(-2, 2))
                if value:
                    f[i][j][generators + z] += value
                    f[j][i][generators + z] -= value
    return two_step_nilpotent_spec(f"two_step_{generators}_{center}", f)


def random_symm_vanishing_operator(rng: Random, n: int) -> List[List[Fraction]]:
    """Random operator matrix that kills every symmetric tensor.

    Columns are antisymmetrized over the swap of the source pair, so the
    operator vanishes after the symmetrizer.
    """
    size = n * n
    raw = [[Fraction(rng.randint(-2, 2)) for _ in range(size)] for _ in range(size)]
    mat = [[ZERO] * size for _ in range(size)]
    for k in range(n):
        for l in range(n):
            col = k * n + l
            swapped = l * n + k
            for row in range(size):
                mat[row][col] = raw[row][col] - raw[row][swapped]
    return mat
