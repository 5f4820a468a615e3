"""Extension thresholds and the Coxeter-number / threshold tables.

Every inequality is evaluated in integers: for odd p the condition is
p^n >= 4a(p-1) + 1 and for p = 2 it is 2^(n-2) >= a + 1.  Dagger marks are
computed from the centre of the Chevalley Lie algebra over F_p.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from overres import liealgebra as la
from overres import reference_tables as ref
from overres.primefield import check_prime, is_prime, primes_from
from overres.rootdata import build_root_system, coxeter_number, parse_label, two_rho_coefficients

SCHEMA_VERSION = 1
N_COLUMNS = (2, 3, 4, 5)
P_COLUMNS = (2, 3, 5)
CSV_FIELDS = ["type", "rank", "a", "two_h_minus_2", "p0_n2", "p0_n3", "p0_n4", "p0_n5",
              "n_p2", "n_p3", "n_p5", "dagger_flags", "discrepancies"]


def _label(kind, rank=None) -> str:
    if rank is None:
        kind, rank = parse_label(kind)
    return f"{kind.upper()}{int(rank)}"


def coefficient_a(kind, rank=None) -> int:
    return two_rho_coefficients(build_root_system(_label(kind, rank)))[1]


def extension_holds(p: int, n: int, a: int) -> bool:
    if p == 2:
        return n >= 2 and 2 ** (n - 2) >= a + 1
    return p ** n >= 4 * a * (p - 1) + 1


def min_prime_for_n(kind, rank=None, n: int = 2) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    a = coefficient_a(kind, rank)
    return next(p for p in primes_from(2) if extension_holds(p, n, a))


def min_n_for_p(kind, rank=None, p: int = 2) -> int:
    p = check_prime(p)
    a = coefficient_a(kind, rank)
    n = 0
    while not extension_holds(p, n, a):
        n += 1
    return n


def prime_witness(a: int, n: int, p: int) -> dict:
    """The returned prime passes; the previous prime (if any) fails."""
    prev = next((q for q in range(p - 1, 1, -1) if is_prime(q)), None)
    return {"prime": p, "passes": extension_holds(p, n, a),
            "previous": prev, "previous_fails": prev is None or not extension_holds(prev, n, a)}


def integrability_threshold(xi: int, p: int) -> int:
    """Least n >= 0 with p^n >= 2 xi - 1 (odd p) or 2^n >= 2 xi (p = 2)."""
    p = check_prime(p)
    target = 2 * xi if p == 2 else 2 * xi - 1
    n = 0
    while p ** n < target:
        n += 1
    return n


def rep_integrability_threshold(rep) -> int:
    from overres.repmod import height
    return integrability_threshold(height(rep), rep.p)


@dataclass(frozen=True)
class XiBound:
    bound: int
    computed: int | None

    @property
    def holds(self) -> bool:
        return self.computed is None or self.computed <= self.bound


def xi_u0_bound(g: la.RestrictedLieAlgebra, compute: bool = True) -> XiBound:
    """2(p-1)a + 1 and, when the PBW basis fits, the height of U_0(g)."""
    from overres.repmod import height, regular_rep_u0
    from overres.u0algebra import SCALE_CAP, U0Algebra

    a = two_rho_coefficients(g.root_system)[1]
    bound = 2 * (g.p - 1) * a + 1
    computed = None
    if compute and g.p ** g.dim <= SCALE_CAP:
        computed = height(regular_rep_u0(U0Algebra(g), matrices=False))
        if computed > bound:
            raise ArithmeticError(f"height {computed} exceeds the bound {bound}")
    return XiBound(bound, computed)


# -- Table 1 -------------------------------------------------------------------

@dataclass(frozen=True)
class Table1Row:
    label: str
    two_h_minus_2: int
    a: int
    reference: tuple

    @property
    def matches(self) -> bool:
        return (self.two_h_minus_2, self.a) == tuple(self.reference)


def table1() -> list[Table1Row]:
    rows = []
    for label in ref.TABLE1_ROWS:
        rs = build_root_system(label)
        rows.append(Table1Row(label, 2 * coxeter_number(rs) - 2, two_rho_coefficients(rs)[1],
                              ref.table1_entry(label)))
    return rows


# -- Table 2 -------------------------------------------------------------------

@dataclass
class Table2Row:
    label: str
    a: int
    two_h_minus_2: int
    p0: dict                 # n -> smallest prime
    n_for_p: dict            # p -> smallest n
    centre_dims: dict = field(default_factory=dict)   # column key -> dim Z(g) at that prime
    reference: tuple | None = None
    discrepancies: list = field(default_factory=list)

    @property
    def kind(self) -> str:
        return self.label[0]

    @property
    def rank(self) -> int:
        return int(self.label[1:])

    def dagger(self, key: str) -> bool:
        return self.centre_dims[key] > 0

    def columns(self) -> list[tuple[str, int]]:
        return [(f"n{n}", self.p0[n]) for n in N_COLUMNS] + [(f"p{p}", self.n_for_p[p]) for p in P_COLUMNS]

    def reference_columns(self) -> list[str]:
        if self.reference is None:
            return []
        keys = [k for k, _ in self.columns()]
        return keys[: len(self.reference)]


def _prime_of_column(row: Table2Row, key: str) -> int:
    return row.p0[int(key[1:])] if key[0] == "n" else int(key[1:])


def table2_row(label: str) -> Table2Row:
    kind, rank = parse_label(label)
    rs = build_root_system(kind, rank)
    a = two_rho_coefficients(rs)[1]
    row = Table2Row(
        label, a, 2 * coxeter_number(rs) - 2,
        {n: min_prime_for_n(kind, rank, n) for n in N_COLUMNS},
        {p: min_n_for_p(kind, rank, p) for p in P_COLUMNS},
        reference=ref.TABLE2.get(label),
    )
    for key, _ in row.columns():
        row.centre_dims[key] = la.centre_dimension(kind, rank, _prime_of_column(row, key))
    if row.reference is not None:
        for (key, value), (pv, pd) in zip(row.columns(), row.reference):
            if value != pv:
                row.discrepancies.append({"row": label, "column": key, "kind": "value",
                                          "reference": pv, "computed": value})
            if row.dagger(key) != pd:
                row.discrepancies.append({"row": label, "column": key, "kind": "dagger",
                                          "reference": pd, "computed": row.dagger(key),
                                          "family_d": kind == "D"})
    return row


def table2(labels=None) -> list[Table2Row]:
    return [table2_row(lab) for lab in (labels or ref.TABLE2_ROWS)]


def discrepancies(rows: list[Table2Row]) -> list[dict]:
    return [d for r in rows for d in r.discrepancies]


# -- rendering -----------------------------------------------------------------

DAGGER = "†"


def _cell(row: Table2Row, key: str, value: int) -> str:
    text = f"G({value})" if key[0] == "p" else str(value)
    if row.dagger(key):
        text = DAGGER + text
    flagged = any(d["column"] == key for d in row.discrepancies)
    if flagged:
        text += "*"
    if key not in row.reference_columns():
        text = f"[{text}]"
    return text


FAMILY_FORMS = (
    ("A_{2l+1}", "4l+2", "(l+1)^2"), ("A_{2l}", "4l", "l(l+1)"), ("B_n", "4n-2", "n^2"),
    ("C_n", "4n-2", "(n-1)(n+2)"), ("D_n", "4n-6", "(n+1)(n-2)"), ("E_6", "22", "42"),
    ("E_7", "34", "96"), ("E_8", "58", "270"), ("F_4", "22", "42"), ("G_2", "10", "10"),
)


def render_table1(rows: list[Table1Row], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"version": SCHEMA_VERSION, "table": 1,
                           "rows": [{"label": r.label, "two_h_minus_2": r.two_h_minus_2, "a": r.a,
                                     "reference": list(r.reference), "matches": r.matches}
                                    for r in rows]}, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["type", "rank", "two_h_minus_2", "a", "matches"])
        for r in rows:
            w.writerow([r.label[0], r.label[1:], r.two_h_minus_2, r.a, int(r.matches)])
        return buf.getvalue()
    widths = [max(len(x) for x in col) + 2 for col in FAMILY_FORMS]
    lines = [f"{name:6}" + "".join(f"{col[i]:>{w}}" for col, w in zip(FAMILY_FORMS, widths))
             for i, name in enumerate(("", "2h-2", "a"))]
    lines += ["", f"{'':6}" + "".join(f"{r.label:>6}" for r in rows),
             f"{'2h-2':6}" + "".join(f"{r.two_h_minus_2:>6}" for r in rows),
             f"{'a':6}" + "".join(f"{r.a:>6}" for r in rows)]
    bad = [r.label for r in rows if not r.matches]
    lines.append("mismatches: " + (", ".join(bad) if bad else "none"))
    return "\n".join(lines) + "\n"


def _dagger_flags(row: Table2Row) -> str:
    return ";".join(k for k, _ in row.columns() if row.dagger(k))


def _disc_text(row: Table2Row) -> str:
    return ";".join(f"{d['column']}:{d['kind']}:{d['reference']}->{d['computed']}" for d in row.discrepancies)


def render_table2(rows: list[Table2Row], fmt: str = "text") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({
                "type": r.kind, "rank": r.rank, "a": r.a, "two_h_minus_2": r.two_h_minus_2,
                **{f"p0_n{n}": r.p0[n] for n in N_COLUMNS},
                **{f"n_p{p}": r.n_for_p[p] for p in P_COLUMNS},
                "dagger_flags": _dagger_flags(r), "discrepancies": _disc_text(r),
            })
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(table2_document(rows), indent=2, sort_keys=True) + "\n"
    cols = ["G(2)", "G(3)", "G(4)", "G(5)", "p=2", "p=3", "p=5"]
    lines = [f"{'':5}" + "".join(f"{c:>10}" for c in cols)]
    for r in rows:
        cells = [_cell(r, k, v) for k, v in r.columns()]
        lines.append(f"{r.label:5}" + "".join(f"{c:>10}" for c in cells))
    lines.append("")
    lines.append(f"{DAGGER} = nonzero centre; * = differs from the reference table; "
                 "[..] = no reference entry")
    disc = discrepancies(rows)
    lines.append(f"discrepancies ({len(disc)}):")
    for d in disc:
        extra = " (type D)" if d.get("family_d") else ""
        lines.append(f"  {d['row']} {d['column']} {d['kind']}: reference {d['reference']}, "
                     f"computed {d['computed']}{extra}")
    return "\n".join(lines) + "\n"


def table2_document(rows: list[Table2Row]) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "table": 2,
        "rows": [{
            "type": r.kind, "rank": r.rank, "a": r.a, "two_h_minus_2": r.two_h_minus_2,
            "p0": {str(n): r.p0[n] for n in N_COLUMNS},
            "n_for_p": {str(p): r.n_for_p[p] for p in P_COLUMNS},
            "centre_dims": dict(r.centre_dims),
            "dagger_flags": [k for k, _ in r.columns() if r.dagger(k)],
            "reference_columns": r.reference_columns(),
            "witnesses": {str(n): prime_witness(r.a, n, r.p0[n]) for n in N_COLUMNS},
            "discrepancies": r.discrepancies,
        } for r in rows],
        "discrepancies": discrepancies(rows),
    }


def threshold_report(label: str) -> dict:
    row = table2_row(label)
    return {
        "version": SCHEMA_VERSION,
        "label": label,
        "a": row.a,
        "two_h_minus_2": row.two_h_minus_2,
        "p0": {str(n): row.p0[n] for n in N_COLUMNS},
        "n_for_p": {str(p): row.n_for_p[p] for p in P_COLUMNS},
        "centre_dims": dict(row.centre_dims),
    }

