"""Equivalence reports shared by the verification harnesses.

Each harness produces rows (function, grid size, sample point, lhs, rhs);
the report aggregates them into an equivalence window

    C(n) = max(lhs/rhs) / min(lhs/rhs)

over the rows at grid size n, and a refinement stability figure, the
relative change of the window between the two largest grid sizes.
Serialization is deterministic: repeated runs give byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import json
import math
import os


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass
class Row:
    case: str
    function_id: str
    n: int
    u: float | None
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float:
        if self.rhs == 0.0:
            return math.inf
        return self.lhs / self.rhs


@dataclass
class EquivalenceReport:
    case: str
    rows: list = field(default_factory=list)
    excluded: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, function_id, n, u, lhs, rhs):
        self.rows.append(Row(self.case, function_id, n, u, lhs, rhs))

    def exclude(self, function_id, reason):
        self.excluded.append((function_id, reason))

    def sizes(self) -> list:
        return sorted({r.n for r in self.rows})

    def ratios(self, n=None) -> list:
        out = [r.ratio for r in self.rows if (n is None or r.n == n)]
        return [x for x in out if math.isfinite(x) and x > 0]

    def window(self, n=None) -> float:
        ratios = self.ratios(n)
        if not ratios:
            return math.inf
        return max(ratios) / min(ratios)

    def stability(self) -> float:
        """Relative change of the window between the two largest n."""
        ns = self.sizes()
        if len(ns) < 2:
            return 0.0
        c0, c1 = self.window(ns[-2]), self.window(ns[-1])
        if not (math.isfinite(c0) and c0 > 0):
            return math.inf
        return abs(c1 - c0) / c0

    # -- serialization -------------------------------------------------

    def to_csv(self, path: str) -> None:
        lines = ["case,function_id,n,u,lhs,rhs,ratio"]
        for r in self.rows:
            lines.append(",".join([
                r.case, r.function_id, str(r.n), _fmt(r.u),
                _fmt(r.lhs), _fmt(r.rhs), _fmt(r.ratio)]))
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")

    def aggregate(self) -> dict:
        ns = self.sizes()
        return {
            "case": self.case,
            "sizes": ns,
            "windows": {str(n): self.window(n) for n in ns},
            "window": self.window(ns[-1]) if ns else math.inf,
            "stability": self.stability(),
            "rows": len(self.rows),
            "excluded": [list(e) for e in self.excluded],
            "notes": list(self.notes),
        }

    def to_json(self, path: str) -> None:
        with open(path, "w", newline="\n") as fh:
            json.dump(self.aggregate(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def write(self, outdir: str, stem: str | None = None) -> tuple[str, str]:
        os.makedirs(outdir, exist_ok=True)
        stem = stem or self.case
        csv_path = os.path.join(outdir, stem + ".csv")
        json_path = os.path.join(outdir, stem + ".json")
        self.to_csv(csv_path)
        self.to_json(json_path)
        return csv_path, json_path
