"""Check reports: verdict plus exact witnesses for every failure.

A failing check always carries at least one witness with a nonzero
residual.  `elapsed` is measured for interactive use but deliberately
excluded from the JSON form so that identical inputs produce
byte-identical reports.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .exact import Fraction, Polynomial, rat_str


@dataclass(frozen=True)
class CheckReport:
    check: str
    ok: bool
    witnesses: Tuple[dict, ...] = ()
    elapsed: float = field(default=0.0, compare=False)

    @property
    def verdict(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "witnesses": [dict(w) for w in self.witnesses],
        }


class _Timer:
    def __enter__(self) -> "_Timer":
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc: object) -> None:
        self.elapsed = time.perf_counter() - self._start


def timer() -> _Timer:
    return _Timer()


def report(check: str, witnesses: Iterable[dict], elapsed: float = 0.0) -> CheckReport:
    ws = tuple(witnesses)
    return CheckReport(check=check, ok=not ws, witnesses=ws, elapsed=elapsed)


def polynomial_witness(index: Sequence[int], residual: Polynomial) -> dict:
    return {
        "index": list(index),
        "residual": {"kind": "polynomial", "terms": residual.to_json()},
    }


def vector_witness(index: Sequence[int], residual: Sequence[Fraction]) -> dict:
    return {
        "index": list(index),
        "residual": {"kind": "vector", "entries": [rat_str(v) for v in residual]},
    }


def tensor_witness(index: Sequence[int], kind: str, entries: Iterable[Tuple[Sequence[int], Fraction]]) -> dict:
    listed = sorted(((tuple(pos), value) for pos, value in entries))
    return {
        "index": list(index),
        "residual": {
            "kind": kind,
            "entries": [{"index": list(pos), "value": rat_str(value)} for pos, value in listed],
        },
    }


def coefficient_witness(part: str, index: Sequence[int], lhs: Fraction, rhs: Fraction) -> dict:
    return {
        "index": list(index),
        "residual": {"kind": "coefficient", "part": part, "lhs": rat_str(lhs), "rhs": rat_str(rhs)},
    }


def labelled_witness(label: str, inner: List[dict]) -> dict:
    return {"index": [], "residual": {"kind": "subcheck", "label": label, "witnesses": inner}}
