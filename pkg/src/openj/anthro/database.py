"""ANSUR II ingestion and empirical percentile queries."""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field

import numpy as np


class AnthroError(ValueError):
    """Raised on anthropometric data/contract violations."""


@dataclass(frozen=True)
class AnsurColumns:
    """Column-name mapping for a survey CSV.

    Defaults match the bundled synthetic population. For the 2012 ANSUR II
    public release use :meth:`public_release` (its `weightkg` column stores
    hectograms, hence the 0.1 scale).
    """

    sex: str = "sex"
    stature: str = "stature"
    weight: str = "weightkg"
    sitting_height: str = "sittingheight"
    male_value: str = "Male"
    female_value: str = "Female"
    weight_scale: float = 1.0
    measurements: tuple[str, ...] = (
        "acromialheight",
        "acromionradialelength",
        "radialestylionlength",
        "handlength",
        "footlength",
        "trochanterionheight",
        "lateralfemoralepicondyleheight",
        "lateralmalleolusheight",
        "iliocristaleheight",
        "biacromialbreadth",
        "hipbreadth",
    )

    @classmethod
    def public_release(cls) -> "AnsurColumns":
        return cls(sex="Gender", weight_scale=0.1)


@dataclass
class AnthroDatabase:
    """Loaded survey rows, split by normalized sex ('male'/'female').

    stature/sitting height and measurements in mm, weight in kg.
    """

    sex: np.ndarray
    stature: np.ndarray
    weight: np.ndarray
    sitting_height: np.ndarray
    measurements: dict[str, np.ndarray]
    source_hash: str
    dropped_rows: int = 0
    columns: AnsurColumns = field(default_factory=AnsurColumns)

    def row_count(self, sex: str | None = None) -> int:
        if sex is None:
            return len(self.stature)
        return int((self.sex == sex).sum())

    @property
    def is_full_population(self) -> bool:
        """Sanity marker for a full-survey-sized load (>1000 rows per sex)."""
        return self.row_count("male") > 1000 and self.row_count("female") > 1000

    def sex_mask(self, sex: str) -> np.ndarray:
        mask = self.sex == sex
        if not mask.any():
            raise AnthroError(f"sex {sex!r} absent from database")
        return mask

    def column(self, name: str) -> np.ndarray:
        if name == "stature":
            return self.stature
        if name == "weightkg":
            return self.weight
        if name == "sittingheight":
            return self.sitting_height
        try:
            return self.measurements[name]
        except KeyError:
            raise AnthroError(f"unknown measurement column {name!r}") from None

    def column_names(self) -> list[str]:
        return ["stature", "weightkg", "sittingheight", *self.measurements]


def load_ansur(csv_doc: str, columns: AnsurColumns | None = None) -> AnthroDatabase:
    """Parse a survey CSV. Rows missing any required field are dropped and counted."""
    cols = columns or AnsurColumns()
    if not csv_doc.strip():
        raise AnthroError("survey file is empty")
    reader = csv.DictReader(io.StringIO(csv_doc))
    header = reader.fieldnames or []
    required = [cols.sex, cols.stature, cols.weight, cols.sitting_height, *cols.measurements]
    missing = [c for c in required if c not in header]
    if missing:
        raise AnthroError(f"survey file is missing required columns: {missing}")

    sex_map = {cols.male_value: "male", cols.female_value: "female"}
    rows = {name: [] for name in ("sex", "stature", "weight", "sitting_height")}
    meas: dict[str, list] = {name: [] for name in cols.measurements}
    dropped = 0
    for raw in reader:
        try:
            sex = sex_map[raw[cols.sex].strip()]
            stature = float(raw[cols.stature])
            weight = float(raw[cols.weight]) * cols.weight_scale
            sitting = float(raw[cols.sitting_height])
            values = {name: float(raw[name]) for name in cols.measurements}
        except (KeyError, ValueError, TypeError):
            dropped += 1
            continue
        if stature <= 0 or weight <= 0:
            dropped += 1
            continue
        rows["sex"].append(sex)
        rows["stature"].append(stature)
        rows["weight"].append(weight)
        rows["sitting_height"].append(sitting)
        for name, v in values.items():
            meas[name].append(v)

    if not rows["sex"]:
        raise AnthroError("survey file contains no usable rows")
    return AnthroDatabase(
        sex=np.array(rows["sex"], dtype=object),
        stature=np.array(rows["stature"]),
        weight=np.array(rows["weight"]),
        sitting_height=np.array(rows["sitting_height"]),
        measurements={k: np.array(v) for k, v in meas.items()},
        source_hash=hashlib.sha256(csv_doc.encode("utf-8")).hexdigest(),
        dropped_rows=dropped,
        columns=cols,
    )


def load_default_database() -> AnthroDatabase:
    """The bundled synthetic population (see openj.data.synth)."""
    from openj.data.synth import generate_population_csv

    return load_ansur(generate_population_csv())


def percentile_dimensions(db: AnthroDatabase, sex: str, percentile: float) -> dict[str, float]:
    """Empirical percentile (linear interpolation between order statistics)
    of every column for one sex."""
    if not (0.5 <= percentile <= 99.5):
        raise AnthroError(f"percentile must be within [0.5, 99.5], got {percentile}")
    mask = db.sex_mask(sex)
    return {
        name: float(np.percentile(db.column(name)[mask], percentile, method="linear"))
        for name in db.column_names()
    }
