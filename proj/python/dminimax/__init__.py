"""Decentralized adaptive min-max optimization toolkit.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from dminimax._core import (  # noqa: F401
    BatchSchedule,
    BilinearGame,
    ComplexityRow,
    ComplexitySetting,
    ConfigError,
    ConstantInputs,
    HadamardReport,
    HyperParams,
    HypothesisError,
    JointPoint,
    MetricsRecord,
    MetricsSeries,
    MintyReport,
    MixingMatrix,
    OracleConstants,
    QuadraticSaddle,
    ResolvedConfig,
    RngStream,
    RunConfig,
    SaddleProblem,
    StochasticScaledGame,
    TheoremConstants,
    __version__,
    build_run,
    centralized_mixing,
    compare,
    complexity_setting,
    compute_constants,
    constant_inputs_from,
    contraction_profile,
    custom_mixing,
    hadamard_property_suite,
    join,
    metrics_to_csv,
    minibatch_gradient,
    minty_check,
    parse_config,
    required_gossip_steps,
    ring_mixing,
    run,
    serialize_config,
    split,
    theorem_bound,
)
