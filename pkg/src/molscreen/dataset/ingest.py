"""GI50 ingestion: pGI50 derivation, replicate merging, activity labels."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from typing import Iterable

from ..chem import ChemError, canonical_smiles, parse_smiles


class MissingColumn(ValueError):
    pass


class ActivityLabel(enum.Enum):
    ACTIVE = "Active"
    INACTIVE = "Inactive"


ACTIVITY_THRESHOLD = 5.0  # pGI50 >= 5 (10 uM) counts as active


@dataclass(frozen=True)
class RawRecord:
    canonical_smiles: str
    cell_line: str
    pgi50: float


@dataclass(frozen=True)
class ActivityRecord:
    canonical_smiles: str
    cell_line: str
    pgi50: float
    n_merged: int


@dataclass(frozen=True)
class ClassifiedCompound:
    canonical_smiles: str
    mean_pgi50: float
    label: ActivityLabel


@dataclass(frozen=True)
class Rejection:
    row: int
    reason: str
    detail: str


@dataclass(frozen=True)
class ColumnMap:
    smiles: str = "smiles"
    cell_line: str = "cell_line"
    value: str = "value"
    value_kind: str = "gi50_molar"  # or "neg_log_gi50"


def ingest_gi50(
    source, column_map: ColumnMap = ColumnMap()
) -> tuple[list[RawRecord], list[Rejection]]:
    """Read a GI50 CSV; bad rows are collected, not fatal.

    value_kind "gi50_molar" converts molar concentrations to
    pGI50 = -log10(value); "neg_log_gi50" takes the value as-is.
    """
    if isinstance(source, (str, bytes)):
        fh = open(source, newline="", encoding="utf-8")
        close = True
    else:
        fh = source
        close = False
    try:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for required in (column_map.smiles, column_map.cell_line, column_map.value):
            if required not in header:
                raise MissingColumn(f"column {required!r} not in header {header}")
        records: list[RawRecord] = []
        rejections: list[Rejection] = []
        for row_no, row in enumerate(reader, start=2):
            smiles = (row[column_map.smiles] or "").strip()
            cell = (row[column_map.cell_line] or "").strip()
            raw_value = (row[column_map.value] or "").strip()
            try:
                value = float(raw_value)
            except ValueError:
                rejections.append(Rejection(row_no, "BadValue", raw_value))
                continue
            if column_map.value_kind == "gi50_molar":
                if value <= 0:
                    rejections.append(
                        Rejection(row_no, "NonPositiveConcentration", raw_value)
                    )
                    continue
                pgi50 = -math.log10(value)
            else:
                pgi50 = value
            if not math.isfinite(pgi50):
                rejections.append(Rejection(row_no, "NonFiniteValue", raw_value))
                continue
            try:
                canon = canonical_smiles(parse_smiles(smiles))
            except ChemError as exc:
                rejections.append(Rejection(row_no, "BadSmiles", f"{smiles}: {exc}"))
                continue
            records.append(RawRecord(canon, cell, pgi50))
        return records, rejections
    finally:
        if close:
            fh.close()


def aggregate_replicates(records: Iterable[RawRecord]) -> list[ActivityRecord]:
    """Arithmetic mean per (canonical_smiles, cell_line); n_merged recorded."""
    grouped: dict[tuple[str, str], list[float]] = {}
    for rec in records:
        grouped.setdefault((rec.canonical_smiles, rec.cell_line), []).append(rec.pgi50)
    out = []
    for (smiles, cell) in sorted(grouped):
        values = grouped[(smiles, cell)]
        out.append(
            ActivityRecord(smiles, cell, sum(values) / len(values), len(values))
        )
    return out


def label_activity(mean_pgi50: float) -> ActivityLabel:
    """Active iff mean pGI50 >= 5 (boundary inclusive)."""
    if not math.isfinite(mean_pgi50):
        raise ValueError(f"non-finite pGI50 {mean_pgi50}")
    return (
        ActivityLabel.ACTIVE
        if mean_pgi50 >= ACTIVITY_THRESHOLD
        else ActivityLabel.INACTIVE
    )


def classify_compounds(records: Iterable[ActivityRecord]) -> list[ClassifiedCompound]:
    """Average pGI50 across cell lines per compound, then threshold."""
    grouped: dict[str, list[float]] = {}
    for rec in records:
        grouped.setdefault(rec.canonical_smiles, []).append(rec.pgi50)
    out = []
    for smiles in sorted(grouped):
        mean = sum(grouped[smiles]) / len(grouped[smiles])
        out.append(ClassifiedCompound(smiles, mean, label_activity(mean)))
    return out


def filter_cell_lines(
    records: Iterable[ActivityRecord], min_compounds: int = 600
) -> tuple[list[ActivityRecord], dict[str, int]]:
    """Drop cell lines with fewer than min_compounds distinct compounds.

    Returns the surviving records and a report of removed lines with their
    compound counts.
    """
    per_line: dict[str, set[str]] = {}
    records = list(records)
    for rec in records:
        per_line.setdefault(rec.cell_line, set()).add(rec.canonical_smiles)
    dropped = {
        line: len(compounds)
        for line, compounds in sorted(per_line.items())
        if len(compounds) < min_compounds
    }
    kept = [rec for rec in records if rec.cell_line not in dropped]
    return kept, dropped


def write_rejections(path, rejections: list[Rejection]):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", "reason", "detail"])
        for rej in rejections:
            writer.writerow([rej.row, rej.reason, rej.detail])
