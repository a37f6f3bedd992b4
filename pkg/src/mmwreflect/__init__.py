"""Desk-scale planner for 60 GHz corridor coverage via a passive corner reflector.

The package splits along the workflow: :mod:`~mmwreflect.geometry` places
and orients the panel, :mod:`~mmwreflect.raytrace` finds the specular
paths, :mod:`~mmwreflect.propagation` and :mod:`~mmwreflect.channel` turn
them into swept frequency responses and path-loss numbers,
:mod:`~mmwreflect.calibration` models the measurement rig, and
:mod:`~mmwreflect.campaign` runs the with/without-panel comparison that
the CLI and HTTP API expose.
"""

from .calibration import (
    DeembedError,
    RigSignature,
    SweepFormatError,
    compose_back_to_back,
    compose_measured,
    deembed_channel,
    read_sweep,
    write_sweep,
)
from .campaign import (
    CampaignResult,
    ImprovementCurve,
    PositionResult,
    ScenarioConfig,
    angles_to_dict,
    campaign_to_csv,
    campaign_to_dict,
    campaign_to_json,
    improvement_curve,
    load_config,
    run_campaign,
    save_config,
    simulate_position,
    tx_positions,
)
from .channel import (
    ComplexTrace,
    GridMismatchError,
    PowerDelayProfile,
    SweepGrid,
    path_loss_db,
    power_delay_profile,
    synthesize_frequency_response,
)
from .geometry import (
    AmbiguousRootError,
    AngleSolution,
    CorridorLayout,
    GeometryError,
    NoRootError,
    Point2,
    ReflectorPanel,
    WallSegment,
    load_layout,
    mirror_point,
    orientation_residual,
    panel_from_alpha,
    segment_intersection,
    solve_reflector_orientation,
)
from .propagation import (
    AntennaPattern,
    Material,
    UnknownMaterialError,
    antenna_gain_dbi,
    default_materials,
    fspl_db,
    path_amplitude,
    reflection_amplitude,
)
from .raytrace import (
    Environment,
    OutsideCorridorError,
    RayPath,
    SPEED_OF_LIGHT,
    enumerate_paths,
    grazing_angle,
    los_blocked,
    panel_path,
)

__version__ = "0.1.0"
