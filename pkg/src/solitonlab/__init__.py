"""soliton-lab: numerical laboratory for time-symmetric oscillating solitons.

Subpackages cover Minkowski worldline kinematics, the closed-form quintic
soliton profile and its variational stability, the radial profile ODE,
pilot-wave (de Broglie-Bohm) guidance, retarded/advanced/time-symmetric field
synthesis, entangled many-body guidance, energy accounting, and a
scenario-driven CLI.
"""

from .geometry import (
    ExternalPotential,
    FourVector,
    SolitonParams,
    minkowski_dot,
)
from .worldline import (
    HyperbolicWorldline,
    RestWorldline,
    Trajectory,
    TrajectoryWorldline,
    UniformWorldline,
    kinematics_at,
    resample_proper_time,
)

__version__ = "0.1.0"
