"""Regenerate the two signature tables and diff them against the golden fixtures.

Fixture records are ``coefficient | signature | abelianization | derived``;
signatures may be written in any period order and compare canonically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .signature import (
    FiniteAbelianGroup,
    Signature,
    abelianization,
    derived_subgroup_signature,
    enumerate_signatures,
    measure,
    parse_signature,
)

TABLE2_MEASURE = Fraction(1, 9)
TABLE3_MEASURE = Fraction(8, 33)


@dataclass(frozen=True)
class TableRow:
    coefficient: Fraction
    signature: Signature
    abelianization: FiniteAbelianGroup
    derived: Signature
    display: str | None = None  # signature as written in the fixture

    def render(self) -> str:
        return f"{self.coefficient} | {self.display or self.signature} | {self.abelianization} | {self.derived}"


@dataclass
class GeneratedTable:
    rows: list[TableRow]
    perfect: list[Signature] = field(default_factory=list)


def _row(sig: Signature) -> TableRow:
    derived, ab = derived_subgroup_signature(sig)
    return TableRow(2 / measure(sig), sig, ab, derived)


def generate_table2() -> GeneratedTable:
    rows, perfect = [], []
    for sig in enumerate_signatures(TABLE2_MEASURE):
        if abelianization(sig).is_trivial:
            perfect.append(sig)
        else:
            rows.append(_row(sig))
    return GeneratedTable(rows, perfect)


def generate_table3() -> GeneratedTable:
    sigs = enumerate_signatures(TABLE3_MEASURE, all_periods_odd=True, orbit_genus_max=0)
    return GeneratedTable([_row(s) for s in sigs])


def parse_fixture(text: str) -> GeneratedTable:
    rows, perfect = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if fields[0] == "perfect":
            perfect.append(parse_signature(fields[1]))
            continue
        if len(fields) != 4:
            raise ValueError(f"fixture line needs 4 fields: {line!r}")
        coef, sig, ab, derived = fields
        rows.append(
            TableRow(
                Fraction(coef),
                parse_signature(sig),
                FiniteAbelianGroup.parse(ab),
                parse_signature(derived),
                display=sig.replace(" ", ""),
            )
        )
    return GeneratedTable(rows, perfect)


def load_fixture(name: str) -> GeneratedTable:
    text = resources.files("autbound").joinpath(f"data/{name}.txt").read_text(encoding="utf-8")
    return parse_fixture(text)


@dataclass
class TableReport:
    name: str
    matched: list[str]
    mismatched: list[str]
    missing: list[str]
    unexpected: list[str]

    @property
    def ok(self) -> bool:
        return not (self.mismatched or self.missing or self.unexpected)

    @property
    def total(self) -> int:
        return len(self.matched) + len(self.mismatched) + len(self.missing)

    def summary(self) -> str:
        return f"{self.name}: {len(self.matched)}/{self.total} rows match"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "matched": self.matched,
            "mismatched": self.mismatched,
            "missing": self.missing,
            "unexpected": self.unexpected,
            "summary": self.summary(),
        }


def compare(name: str, generated: GeneratedTable, golden: GeneratedTable) -> TableReport:
    by_sig = {r.signature: r for r in generated.rows}
    matched, mismatched, missing = [], [], []
    for want in golden.rows:
        got = by_sig.pop(want.signature, None)
        if got is None:
            missing.append(want.render())
        elif (got.coefficient, got.abelianization, got.derived) == (
            want.coefficient,
            want.abelianization,
            want.derived,
        ):
            matched.append(want.render())
        else:
            mismatched.append(f"expected {want.render()} got {got.render()}")
    unexpected = [r.render() for r in by_sig.values()]
    want_perfect, got_perfect = set(golden.perfect), set(generated.perfect)
    if want_perfect != got_perfect:
        missing += [f"perfect {s}" for s in sorted(want_perfect - got_perfect)]
        unexpected += [f"perfect {s}" for s in sorted(got_perfect - want_perfect)]
    elif want_perfect:
        matched_perfect = ", ".join(str(s) for s in sorted(want_perfect))
        matched.append(f"perfect: {matched_perfect}")
    return TableReport(name, matched, mismatched, missing, unexpected)


def verify_tables() -> list[TableReport]:
    return [
        compare("table2", generate_table2(), load_fixture("table2")),
        compare("table3", generate_table3(), load_fixture("table3")),
    ]
