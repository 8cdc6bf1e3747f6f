"""Builders for the worked examples and the quaternion conformance report.

The printed quaternion bracket table is stored as literal coefficient
data and never regenerated from r, so comparing it against the r-derived
bracket genuinely cross-validates two independent sources.  Conformance
fits one global scalar (the only legitimate normalization freedom of the
duality convention) and reports per-entry agreement; any mismatch is a
finding, not an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraSpec, find_unit, check_associative
from .bracket import (
    PolyBracket,
    bracket_poly,
    compat_direct,
    from_pair_polys,
    jacobiator,
)
from .coboundary import RMatrix, derive_bracket_from_r, mybe_check
from .exact import ONE, ZERO, Polynomial, rat, rat_str, poly_divisible, poly_eval


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    spec: AlgebraSpec
    brackets: Dict[str, object] = field(default_factory=dict)
    provenance: str = ""


def _entry(key: str, spec: AlgebraSpec, brackets: Optional[Dict[str, object]] = None, provenance: str = "") -> CatalogEntry:
    rep = check_associative(spec)
    if not rep.ok:
        raise ValueError(f"catalog entry {key} is not associative")
    return CatalogEntry(key=key, spec=spec, brackets=brackets or {}, provenance=provenance)


# -- individual algebras ---------------------------------------------------------


def quaternions_spec() -> AlgebraSpec:
    """Basis 1, i, j, k with i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j."""
    entries: Dict[Tuple[int, int, int], object] = {}
    for j in range(4):
        entries[(0, j, j)] = 1
        if j:
            entries[(j, 0, j)] = 1
    for j in (1, 2, 3):
        entries[(j, j, 0)] = -1
    entries[(1, 2, 3)] = 1
    entries[(2, 1, 3)] = -1
    entries[(2, 3, 1)] = 1
    entries[(3, 2, 1)] = -1
    entries[(3, 1, 2)] = 1
    entries[(1, 3, 2)] = -1
    return AlgebraSpec.from_entries("quaternions", 4, entries)


def quaternion_r(a: object, b: object, c: object) -> RMatrix:
    """r = a i^j + b i^k + c j^k in the wedge convention x^y = x(x)y - y(x)x."""
    return RMatrix.from_entries(4, {(1, 2): rat(a), (1, 3): rat(b), (2, 3): rat(c)})


def quaternion_table(a: object, b: object, c: object) -> PolyBracket:
    """Literal three-parameter bracket table on quaternion coordinates.

    Stored exactly as printed in the source table; the conformance report
    compares it entry by entry against the r-derived bracket.
    """
    av, bv, cv = rat(a), rat(b), rat(c)
    x = [Polynomial.variable(4, i) for i in range(4)]
    pairs = {
        # {x1,x2} = x2(b x3 - a x4) + c(x3^2 + x4^2)
        (0, 1): x[1] * (x[2] * bv - x[3] * av) + (x[2] * x[2] + x[3] * x[3]) * cv,
        # {x1,x3} = -x3(c x2 + a x4) - b(x2^2 + x4^2)
        (0, 2): -(x[2] * (x[1] * cv + x[3] * av)) - (x[1] * x[1] + x[3] * x[3]) * bv,
        # {x1,x4} = x4(-c x2 + b x3) + a(x2^2 + x3^2)
        (0, 3): x[3] * (x[2] * bv - x[1] * cv) + (x[1] * x[1] + x[2] * x[2]) * av,
        # {x2,x3} = x1(-b x2 + c x3)
        (1, 2): x[0] * (x[2] * cv - x[1] * bv),
        # {x2,x4} = -x1(a x2 + c x4)
        (1, 3): -(x[0] * (x[1] * av + x[3] * cv)),
        # {x3,x4} = x1(a x3 - b x4)
        (2, 3): x[0] * (x[2] * av - x[3] * bv),
    }
    return from_pair_polys(4, pairs)


def first_column_spec(n: int) -> AlgebraSpec:
    """Matrices supported on the first column: f_i f_j = [j = 1] f_i (1-based)."""
    if n < 1:
        raise ValueError("dimension must be positive")
    entries = {(i, 0, i): 1 for i in range(n)}
    return AlgebraSpec.from_entries(f"first_column_{n}", n, entries)


def first_column_bracket(n: int) -> PolyBracket:
    """{x^i, x^j} = x^i x^j for i < j."""
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            pairs[(i, j)] = Polynomial.variable(n, i) * Polynomial.variable(n, j)
    return from_pair_polys(n, pairs)


def solvable2_spec() -> AlgebraSpec:
    """Span of E11 and E12 inside 2x2 matrices; [a, b] = b."""
    entries = {(0, 0, 0): 1, (0, 1, 1): 1}
    return AlgebraSpec.from_entries("solvable2", 2, entries)


def solvable2_r() -> RMatrix:
    """r = a (x) b - b (x) a."""
    return RMatrix.from_entries(2, {(0, 1): 1})


def heisenberg_spec() -> AlgebraSpec:
    """Generators p, q, z with [p, q] = z, carrying the product a*b = [a, b]/2."""
    half = Fraction(1, 2)
    entries = {(0, 1, 2): half, (1, 0, 2): -half}
    return AlgebraSpec.from_entries("heisenberg", 3, entries)


def heisenberg_r() -> RMatrix:
    """r = p (x) q - q (x) p."""
    return RMatrix.from_entries(3, {(0, 1): 1})


def unitalize_spec(spec: AlgebraSpec) -> AlgebraSpec:
    """Adjoin a unit as the new coordinate 0."""
    n = spec.dim + 1
    entries: Dict[Tuple[int, int, int], object] = {(0, 0, 0): 1}
    for j in range(1, n):
        entries[(0, j, j)] = 1
        entries[(j, 0, j)] = 1
    for i in range(spec.dim):
        for j in range(spec.dim):
            for k in range(spec.dim):
                value = spec.m[i][j][k]
                if value:
                    entries[(i + 1, j + 1, k + 1)] = value
    return AlgebraSpec.from_entries(f"{spec.name}_unital", n, entries)


def pad_rmatrix(rm: RMatrix) -> RMatrix:
    """Reindex an r-matrix on the non-unit block of a unitalized algebra."""
    n = rm.n + 1
    entries = {}
    for i in range(rm.n):
        for j in range(i + 1, rm.n):
            if rm.r[i][j]:
                entries[(i + 1, j + 1)] = rm.r[i][j]
    return RMatrix.from_entries(n, entries)


def heisenberg_unital_spec() -> AlgebraSpec:
    return unitalize_spec(heisenberg_spec())


def heisenberg_unital_r() -> RMatrix:
    return pad_rmatrix(heisenberg_r())


def two_step_nilpotent_spec(name: str, f: Sequence[Sequence[Sequence[object]]]) -> AlgebraSpec:
    """Associative product a*b = [a, b]/2 from two-step nilpotent Lie constants.

    Validates antisymmetry, the Jacobi identity and the two-step identity
    [[x, y], z] = 0 before building the product.
    """
    n = len(f)
    table = [[[rat(f[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if table[i][j][k] != -table[j][i][k]:
                    raise ValueError(f"Lie constants not antisymmetric at ({i},{j},{k})")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    double = sum((table[i][j][m] * table[m][k][l] for m in range(n)), ZERO)
                    if double:
                        raise ValueError(f"two-step identity fails at ({i},{j},{k},{l})")
                    jac = sum(
                        (
                            table[i][j][m] * table[m][k][l]
                            + table[j][k][m] * table[m][i][l]
                            + table[k][i][m] * table[m][j][l]
                            for m in range(n)
                        ),
                        ZERO,
                    )
                    if jac:
                        raise ValueError(f"Jacobi identity fails at ({i},{j},{k},{l})")
    half = Fraction(1, 2)
    m = [[[table[i][j][k] * half for k in range(n)] for j in range(n)] for i in range(n)]
    return AlgebraSpec.build(name, n, m)


def mat_spec(k: int) -> AlgebraSpec:
    """Full matrix algebra on k x k matrices, dimension k^2 (basis E_ab)."""
    if k < 1:
        raise ValueError("matrix size must be positive")
    n = k * k
    entries = {}
    for a in range(k):
        for b in range(k):
            for d in range(k):
                entries[(a * k + b, b * k + d, a * k + d)] = 1
    return AlgebraSpec.from_entries(f"mat{k}", n, entries)


# -- registry ---------------------------------------------------------------------


def build(key: str, params: Sequence[object] = ()) -> CatalogEntry:
    """Catalog entry for a key; parameters are exact rationals."""
    if key == "quaternions":
        return _entry(key, quaternions_spec(), provenance="quaternion algebra over the rationals")
    if key == "quaternion_r":
        a, b, c = (rat(p) for p in params)
        return _entry(
            key,
            quaternions_spec(),
            {"r": quaternion_r(a, b, c)},
            provenance="three-parameter antisymmetric r on the imaginary units",
        )
    if key == "quaternion_table":
        a, b, c = (rat(p) for p in params)
        return _entry(
            key,
            quaternions_spec(),
            {"table": quaternion_table(a, b, c)},
            provenance="literal printed bracket table for the quaternion family",
        )
    if key == "first_column":
        (n,) = params
        n = int(n)
        return _entry(
            key,
            first_column_spec(n),
            {"bracket": first_column_bracket(n)},
            provenance="first-column matrix algebra with the staircase bracket",
        )
    if key == "solvable2":
        return _entry(
            key,
            solvable2_spec(),
            {"r": solvable2_r()},
            provenance="two-dimensional solvable algebra, [a,b] = b",
        )
    if key == "heisenberg":
        return _entry(
            key,
            heisenberg_spec(),
            {"r": heisenberg_r()},
            provenance="Heisenberg Lie algebra with the half-commutator product",
        )
    if key == "heisenberg_unital":
        return _entry(
            key,
            heisenberg_unital_spec(),
            {"r": heisenberg_unital_r()},
            provenance="Heisenberg half-commutator algebra with a unit adjoined",
        )
    if key == "mat":
        (k,) = params
        return _entry(key, mat_spec(int(k)), provenance="full matrix algebra")
    if key == "two_step_nilpotent":
        (f,) = params
        return _entry(
            key,
            two_step_nilpotent_spec("two_step_nilpotent", f),
            provenance="half-commutator product of a two-step nilpotent Lie algebra",
        )
    raise ValueError(f"unknown catalog key: {key}")


def unitalize(entry: CatalogEntry) -> CatalogEntry:
    """Unitalized variant of an entry; r-matrices are reindexed, brackets dropped."""
    brackets = {}
    for name, obj in entry.brackets.items():
        if isinstance(obj, RMatrix):
            brackets[name] = pad_rmatrix(obj)
    return _entry(
        f"{entry.key}_unital",
        unitalize_spec(entry.spec),
        brackets,
        provenance=f"{entry.provenance} (unit adjoined)",
    )


_CATALOG_KEYS: List[Tuple[str, str, str]] = [
    # (reference name, kind, parameter signature)
    ("quaternions", "algebra", ""),
    ("quaternion_r", "rmatrix", "a,b,c"),
    ("quaternion_table", "bracket", "a,b,c"),
    ("first_column", "algebra", "n"),
    ("first_column_bracket", "bracket", "n"),
    ("solvable2", "algebra", ""),
    ("solvable2_r", "rmatrix", ""),
    ("heisenberg", "algebra", ""),
    ("heisenberg_r", "rmatrix", ""),
    ("heisenberg_unital", "algebra", ""),
    ("heisenberg_unital_r", "rmatrix", ""),
    ("mat", "algebra", "k"),
]


def catalog_keys() -> List[dict]:
    return [
        {"key": key, "kind": kind, "params": sig}
        for key, kind, sig in _CATALOG_KEYS
    ]


_REF_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\((.*)\))?$")


def resolve(reference: str) -> object:
    """Resolve a catalog reference like quaternion_r(1,0,0) to a typed object."""
    match = _REF_RE.match(reference.strip())
    if not match:
        raise ValueError(f"malformed catalog reference: {reference!r}")
    name, raw_params = match.group(1), match.group(2)
    params: Tuple[object, ...] = ()
    if raw_params:
        params = tuple(rat(p.strip()) for p in raw_params.split(","))
    if name == "quaternions":
        return build("quaternions").spec
    if name == "quaternion_r":
        return build("quaternion_r", params).brackets["r"]
    if name == "quaternion_table":
        return build("quaternion_table", params).brackets["table"]
    if name == "first_column":
        return build("first_column", params).spec
    if name == "first_column_bracket":
        (n,) = params
        return first_column_bracket(int(n))
    if name == "solvable2":
        return build("solvable2").spec
    if name == "solvable2_r":
        return solvable2_r()
    if name == "heisenberg":
        return build("heisenberg").spec
    if name == "heisenberg_r":
        return heisenberg_r()
    if name == "heisenberg_unital":
        return build("heisenberg_unital").spec
    if name == "heisenberg_unital_r":
        return heisenberg_unital_r()
    if name == "mat":
        return build("mat", params).spec
    raise ValueError(f"unknown catalog key: {name}")


def emit(reference: str) -> dict:
    obj = resolve(reference)
    if isinstance(obj, AlgebraSpec):
        return obj.to_json()
    if isinstance(obj, (PolyBracket, RMatrix)):
        return obj.to_json()
    raise ValueError(f"cannot emit {reference!r}")


def compatible_unital_brackets() -> List[Tuple[str, AlgebraSpec, PolyBracket]]:
    """Compatible quadratic brackets on unital catalog algebras.

    Covers the quaternion r grid over {-1, 0, 1}^3, the point (1, 2, 3),
    and the unitalized Heisenberg algebra with r = p^q.
    """
    out: List[Tuple[str, AlgebraSpec, PolyBracket]] = []
    quat = quaternions_spec()
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            for c in (-1, 0, 1):
                rm = quaternion_r(a, b, c)
                out.append((f"quaternion_r({a},{b},{c})", quat, derive_bracket_from_r(quat, rm)))
    rm = quaternion_r(1, 2, 3)
    out.append(("quaternion_r(1,2,3)", quat, derive_bracket_from_r(quat, rm)))
    hu = heisenberg_unital_spec()
    out.append(("heisenberg_unital_r", hu, derive_bracket_from_r(hu, heisenberg_unital_r())))
    return out


# -- conformance ---------------------------------------------------------------


def _pair_label(i: int, j: int) -> str:
    return f"{{x^{i + 1},x^{j + 1}}}"


def _fit_global_scalar(
    table: Dict[Tuple[int, int], Polynomial],
    derived: Dict[Tuple[int, int], Polynomial],
) -> Tuple[Optional[Fraction], str]:
    """One scalar lambda maximizing the number of entries with table = lambda * derived."""
    candidates = set()
    for pair, dpoly in derived.items():
        tpoly = table[pair]
        for exps, dcoeff in dpoly.terms():
            tcoeff = tpoly.coefficient(exps)
            if dcoeff and tcoeff:
                candidates.add(tcoeff / dcoeff)
    if not candidates:
        if all(p.is_zero() for p in derived.values()) and all(p.is_zero() for p in table.values()):
            return ONE, "both brackets are zero; any scalar fits"
        return None, "no overlapping nonzero coefficients; no scalar fits"

    def agreement(lam: Fraction) -> int:
        return sum(1 for pair in derived if derived[pair] * lam == table[pair])

    best = max(sorted(candidates), key=agreement)
    return best, f"fitted on {agreement(best)} of {len(derived)} entries"


def quaternion_conformance(a: object, b: object, c: object) -> dict:
    """Compare the printed quaternion table with the r-derived bracket.

    Runs the Jacobi and compatibility checkers on both brackets, the
    commutant criterion on r, and the sphere evidence on both brackets.
    Exit verdicts are about the derived bracket only; table agreement is
    reported, never asserted.
    """
    av, bv, cv = rat(a), rat(b), rat(c)
    spec = quaternions_spec()
    rm = quaternion_r(av, bv, cv)
    derived = derive_bracket_from_r(spec, rm)
    table = quaternion_table(av, bv, cv)

    table_pairs = table.table()
    derived_pairs = derived.table()
    lam, note = _fit_global_scalar(table_pairs, derived_pairs)

    entries = []
    matching = 0
    for (i, j) in sorted(table_pairs):
        tpoly = table_pairs[(i, j)]
        dpoly = derived_pairs[(i, j)]
        scaled = dpoly * lam if lam is not None else dpoly
        match = scaled == tpoly
        matching += int(match)
        entries.append(
            {
                "pair": [i, j],
                "label": _pair_label(i, j),
                "table": tpoly.to_json(),
                "derived": dpoly.to_json(),
                "derived_scaled": scaled.to_json(),
                "match": match,
            }
        )

    checks = {
        "derived_jacobi": jacobiator(derived).to_json(),
        "derived_compat": compat_direct(spec, derived).to_json(),
        "derived_mybe": mybe_check(spec, rm).to_json(),
        "table_jacobi": jacobiator(table).to_json(),
        "table_compat": compat_direct(spec, table).to_json(),
    }

    return {
        "check": "quaternion_conformance",
        "params": {"a": rat_str(av), "b": rat_str(bv), "c": rat_str(cv)},
        "lambda": rat_str(lam) if lam is not None else None,
        "lambda_note": note,
        "entries": entries,
        "agreement": {"matching_entries": matching, "total_entries": len(entries)},
        "checks": checks,
        "sphere": {
            "table": sphere_poisson_check(table),
            "derived": sphere_poisson_check(derived),
        },
    }


def sphere_poisson_check(bracket: PolyBracket) -> dict:
    """Evidence that the unit sphere is a Poisson submanifold for a bracket on 4 coordinates.

    For N = sum (x^i)^2 computes p_i = {N, x^i} and reports, per i, whether
    p_i vanishes identically, whether N - 1 divides p_i, and the exact
    values of p_i at rational points of the sphere.  The verdict is a pass
    only when every p_i is zero or divisible.
    """
    if bracket.n != 4:
        raise ValueError("sphere check applies to brackets on 4 coordinates")
    n = 4
    norm = Polynomial(n, {tuple(2 if k == i else 0 for k in range(n)): ONE for i in range(n)})
    sphere = norm - Polynomial.constant(n, ONE)
    points = [
        (1, 0, 0, 0),
        (Fraction(3, 5), Fraction(4, 5), 0, 0),
        (Fraction(3, 5), 0, Fraction(4, 5), 0),
        (0, Fraction(3, 5), 0, Fraction(4, 5)),
    ]
    components = []
    all_good = True
    for i in range(n):
        p_i = bracket_poly(bracket, norm, Polynomial.variable(n, i))
        zero = p_i.is_zero()
        divisible, quotient = poly_divisible(p_i, sphere)
        good = zero or divisible
        all_good = all_good and good
        components.append(
            {
                "i": i,
                "p": p_i.to_json(),
                "identically_zero": zero,
                "divisible_by_sphere": divisible,
                "quotient": quotient.to_json() if divisible and quotient is not None else None,
                "values": [
                    {
                        "point": [rat_str(rat(v)) for v in point],
                        "value": rat_str(poly_eval(p_i, point)),
                    }
                    for point in points
                ],
            }
        )
    return {
        "check": "sphere_poisson",
        "verdict": "pass" if all_good else "fail",
        "note": "Poisson submanifold evidence: pass means every {N, x^i} is zero or divisible by N - 1",
        "components": components,
    }
