"""Conformal predictive belief functions and maximum-entropy predictive distributions."""

import json

from ._mfgf import (
    AssumptionViolated,
    InvalidInput,
    TiePathology,
    TruncationRequired,
    belief_plausibility,
    binomial_gf_sample,
    candidate_rank,
    cdf_exceedance_bound,
    exact_type1_rate,
    focal_exceedance_probability,
    focal_regions,
    lomax_probability,
    med_json,
    med_probability,
    prediction_set,
    run_experiment_json,
    sample,
    transducer,
)


def med(data, measure="identity", bounds=None):
    """Maximum-entropy distribution as {"atoms", "pieces", "support"}."""
    return json.loads(med_json(data, measure, bounds))


def run_experiment(kind, **kwargs):
    """Runs one experiment and returns its report (or figure arrays) as a dict."""
    return json.loads(run_experiment_json(kind, **kwargs))


__all__ = [name for name in dir() if not name.startswith("_")]
