import numpy as np
import pytest

from openj.anthro import (
    TargetProfile,
    build_scaled_model,
    fit_tier2_regressions,
    load_default_database,
)
from openj.model import load_reference_model


@pytest.fixture(scope="session")
def model():
    """Reference mannequin with de Leva BSP for an 81.5 kg male."""
    return load_reference_model()


@pytest.fixture(scope="session")
def db():
    return load_default_database()


@pytest.fixture(scope="session")
def regressions(db):
    return fit_tier2_regressions(db)


@pytest.fixture(scope="session")
def scaled_p50_male(db, regressions):
    profile = TargetProfile.from_percentile(db, "male", 50)
    return build_scaled_model(profile, db, regressions)


def random_in_limit_postures(model, n, seed, margin=0.0):
    """Uniform joint vectors within (optionally shrunk) limits."""
    rng = np.random.default_rng(seed)
    lo = model.q_min
    hi = model.q_max
    if margin:
        span = hi - lo
        lo = lo + margin * span
        hi = hi - margin * span
    return rng.uniform(lo, hi, size=(n, model.dof))
