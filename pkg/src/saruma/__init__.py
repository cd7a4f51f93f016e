"""Unit-root autoregressive filters parameterised by partial autocorrelations."""

__version__ = "0.1.0"

from saruma._backend import BACKEND
from saruma.errors import (
    AllStartsFailed,
    IllDefinedRCs,
    InvalidSpec,
    NonFinite,
    NonInvertibleMA,
    NotAFactor,
    NotUnitAt,
    PinnedMA,
    SarumaError,
    SeriesTooShort,
    UnitPacfEncountered,
)
from saruma.fit import Fixed, FitOptions, FitReport, FitTemplate, Free, Pinned, css_objective, fit
from saruma.model import ExpandedModel, SarumaSpec, build_from_pacf, expand, validate
from saruma.pacf import (
    PacfSeq,
    UnitRootFactorization,
    coeffs_to_pacf,
    factor_pacf,
    pacf_to_coeffs,
    split_after_unit,
)
from saruma.poly import (
    FilterPoly,
    divide_exact,
    embed_season,
    evaluate,
    mul,
    roots,
    unit_multiplicity,
)
from saruma.rootloc import RootLocationReport, Stability, count_inside, is_stable, stability
from saruma.series import (
    ResidualSet,
    TimeSeries,
    read_csv,
    residuals,
    simulate,
    simulate_with_innovations,
    write_csv,
)
