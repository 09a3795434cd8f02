"""Evidential influence maximization."""

from ._core import (
    AlreadySeed,
    Bba,
    DegenerateScale,
    Digraph,
    EvimError,
    GainMode,
    InfeasibleSpec,
    InfluenceField,
    KTooLarge,
    Level,
    MissingFile,
    NegativeMass,
    NotNormalized,
    ParseError,
    Saturation,
    SeedResult,
    SocialGraph,
    SyntheticData,
    TooLargeToEnumerate,
    TotalConflict,
    UnknownNode,
    accuracy,
    cd_select,
    cd_spread,
    celf_select,
    combine_dempster,
    conflict,
    estimate_influence,
    exhaustive_opt,
    generate_synthetic,
    hit_ratio,
    influence_of_set,
    load_graph,
    mc_greedy_select,
    mc_spread,
    naive_greedy,
    pignistic,
    sigma_bel,
)

__all__ = [name for name in dir() if not name.startswith("_")]
