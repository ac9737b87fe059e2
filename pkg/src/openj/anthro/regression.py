"""Tier-2 multivariate regressions: OLS on (stature, weight, sitting height)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from openj.anthro.database import AnthroDatabase, AnthroError
from openj.data import load_table

TIER2_R2_FLOOR = 0.7
MIN_SAMPLES = 100

# auxiliary model key: predicts sitting height from (stature, weight) for
# profiles that do not supply one
SITTING_HEIGHT_DIM = "__sitting_height__"


@dataclass(frozen=True)
class DerivedDimension:
    """Target column definition: scale * (column_a - column_b)."""

    segment: str
    column_a: str
    column_b: str | None
    scale: float
    note: str

    def values(self, db: AnthroDatabase, mask: np.ndarray) -> np.ndarray:
        vals = db.column(self.column_a)[mask].astype(float)
        if self.column_b:
            vals = vals - db.column(self.column_b)[mask]
        return self.scale * vals


def load_derived_dimensions() -> dict[str, DerivedDimension]:
    out = {}
    for row in load_table("derived_dims.csv"):
        out[row["segment"]] = DerivedDimension(
            segment=row["segment"],
            column_a=row["column_a"],
            column_b=row["column_b"] or None,
            scale=float(row["scale"]),
            note=row["note"],
        )
    return out


@dataclass(frozen=True)
class RegressionModel:
    dimension: str
    sex: str
    coefficients: tuple[float, float, float]  # stature mm, weight kg, sitting height mm
    intercept: float
    r_squared: float
    n_samples: int

    @property
    def tier2_eligible(self) -> bool:
        return self.r_squared > TIER2_R2_FLOOR

    def predict(self, stature: float, weight: float, sitting_height: float) -> float:
        c = self.coefficients
        return self.intercept + c[0] * stature + c[1] * weight + c[2] * sitting_height


class RegressionSet:
    """Per-(sex, dimension) fitted models, immutable after fit."""

    def __init__(self, models: dict[tuple[str, str], RegressionModel]):
        self._models = dict(models)

    def get(self, sex: str, dimension: str) -> RegressionModel:
        try:
            return self._models[(sex, dimension)]
        except KeyError:
            raise AnthroError(f"no regression fitted for {dimension!r} ({sex})") from None

    def items(self):
        return self._models.items()


def _ols(X: np.ndarray, y: np.ndarray, dimension: str) -> tuple[np.ndarray, float]:
    design = np.column_stack([np.ones(len(y)), X])
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < design.shape[1]:
        raise AnthroError(f"rank-deficient design matrix while fitting {dimension!r}")
    resid = y - design @ coef
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return coef, r2


def fit_tier2_regressions(
    db: AnthroDatabase,
    dimensions: list[str] | None = None,
    sexes: tuple[str, ...] = ("male", "female"),
) -> RegressionSet:
    """Fit OLS per dimension and sex; r_squared recorded for tier gating.

    Dimensions default to the shipped derived-dimension table. A dimension
    name may also be any raw survey column.
    """
    derived = load_derived_dimensions()
    if dimensions is None:
        dimensions = list(derived)

    models = {}
    for sex in sexes:
        mask = db.sex_mask(sex)
        if mask.sum() < MIN_SAMPLES:
            raise AnthroError(
                f"need >= {MIN_SAMPLES} samples per fitted dimension, "
                f"have {int(mask.sum())} for {sex}"
            )
        X = np.column_stack(
            [db.stature[mask], db.weight[mask], db.sitting_height[mask]]
        )
        for dim in dimensions:
            if dim in derived:
                y = derived[dim].values(db, mask)
            else:
                y = db.column(dim)[mask].astype(float)
            coef, r2 = _ols(X, y, dim)
            models[(sex, dim)] = RegressionModel(
                dimension=dim,
                sex=sex,
                coefficients=(float(coef[1]), float(coef[2]), float(coef[3])),
                intercept=float(coef[0]),
                r_squared=r2,
                n_samples=int(mask.sum()),
            )
        # auxiliary sitting-height imputation model (stature, weight only)
        Xsw = X[:, :2]
        y = db.sitting_height[mask].astype(float)
        coef, r2 = _ols(Xsw, y, SITTING_HEIGHT_DIM)
        models[(sex, SITTING_HEIGHT_DIM)] = RegressionModel(
            dimension=SITTING_HEIGHT_DIM,
            sex=sex,
            coefficients=(float(coef[1]), float(coef[2]), 0.0),
            intercept=float(coef[0]),
            r_squared=r2,
            n_samples=int(mask.sum()),
        )
    return RegressionSet(models)
