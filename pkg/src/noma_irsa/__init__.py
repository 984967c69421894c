"""Multi-satellite NOMA-IRSA random access: Monte Carlo simulator and
density-evolution analysis over an on-off fading channel."""

__version__ = "0.1.0"

from .backend import backend_name
from .de import (
    DEResult,
    density_evolution,
    plr_bound,
    slot_edge_pmf,
    slot_unresolved_closed,
    slot_update_series,
)
from .dist import (
    DegreeDistribution,
    DistributionError,
    format_distribution,
    parse_distribution,
    sample_degrees,
)
from .frames import (
    FrameRealization,
    ScenarioConfig,
    ScenarioError,
    UserTx,
    frame_seed,
    generate_frame,
    splitmix64,
)
from .harness import (
    ANALYZE,
    SIMULATE,
    MetricsRecord,
    PointResult,
    ScenarioBase,
    SweepError,
    SweepSpec,
    analyze_point,
    run_point,
    run_point_detailed,
    run_sweep,
    run_sweep_detailed,
)
from .config import ConfigError, load_config, parse_config
from .metrics import (
    DecodeOutcome,
    aggregate,
    avg_energy,
    bootstrap_plr_ci,
    energy_efficiency,
    plr_estimate,
    throughput,
    wilson_interval,
)
from .power import (
    NomaPowerConfig,
    Power,
    PowerConfigError,
    build_power_config,
    derive_alpha,
    verify_capture,
)
from .reporting import (
    CSV_COLUMNS,
    ReportError,
    RunManifest,
    emit_csv,
    read_csv,
    render_csv,
)
from .sic import SatelliteView, build_view, sic_decode, sic_decode_reference, slot_resolvable

__all__ = [
    "__version__",
    "backend_name",
    "DEResult",
    "density_evolution",
    "plr_bound",
    "slot_edge_pmf",
    "slot_unresolved_closed",
    "slot_update_series",
    "DegreeDistribution",
    "DistributionError",
    "format_distribution",
    "parse_distribution",
    "sample_degrees",
    "FrameRealization",
    "ScenarioConfig",
    "ScenarioError",
    "UserTx",
    "frame_seed",
    "generate_frame",
    "splitmix64",
    "ANALYZE",
    "SIMULATE",
    "MetricsRecord",
    "PointResult",
    "ScenarioBase",
    "SweepError",
    "SweepSpec",
    "analyze_point",
    "run_point",
    "run_point_detailed",
    "run_sweep",
    "run_sweep_detailed",
    "ConfigError",
    "load_config",
    "parse_config",
    "DecodeOutcome",
    "aggregate",
    "avg_energy",
    "bootstrap_plr_ci",
    "energy_efficiency",
    "plr_estimate",
    "throughput",
    "wilson_interval",
    "NomaPowerConfig",
    "Power",
    "PowerConfigError",
    "build_power_config",
    "derive_alpha",
    "verify_capture",
    "CSV_COLUMNS",
    "ReportError",
    "RunManifest",
    "emit_csv",
    "read_csv",
    "render_csv",
    "SatelliteView",
    "build_view",
    "sic_decode",
    "sic_decode_reference",
    "slot_resolvable",
]
