"""Word growth in nilpotent groups: Hall bases and BCH, Lie progressions,
exact ball enumeration and the Heisenberg box families."""
from ._budget import BudgetExceeded
from .balls import GrowthSeries, ball_growth, growth_exponent_fit
from .groups import GeneratingSet, IntegerHeisenberg, LieProgression, OrderedProgression
from .lie_algebra import LieAlgebra, homogeneous_dimension

__all__ = [
    "BudgetExceeded", "GrowthSeries", "ball_growth", "growth_exponent_fit", "GeneratingSet",
    "IntegerHeisenberg", "LieProgression", "OrderedProgression", "LieAlgebra", "homogeneous_dimension",
]
__version__ = "0.1.0"
