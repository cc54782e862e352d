from ._core import (
    BoundingEnv,
    ConfigError,
    ContactParams,
    DataError,
    Error,
    Mlp,
    NumericalError,
    RobotModel,
    RunConfig,
    SimState,
    Terrain,
    collect,
    evaluate,
    foot_positions,
    gait_signal,
    gait_wave,
    mechanical_energy,
    metrics,
    prefit,
    reset,
    step,
    train,
)

__all__ = [name for name in dir() if not name.startswith("_")]
