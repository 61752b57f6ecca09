"""Random chords of the unit circle and where they cross.

Angles are in turns throughout: ``t`` stands for the point ``exp(2 pi i t)``.
"""

__version__ = "0.1.0"

from .exact import BudgetError, DomainError, EvalReport, prob_closed_form_r1, prob_enumerate
from .geometry import f_value, i_r_arc
from .measure import Measure, MeasureError, antipodal_pair, discrete, regular_polygon, uniform

__all__ = [
    "BudgetError",
    "DomainError",
    "EvalReport",
    "Measure",
    "MeasureError",
    "__version__",
    "antipodal_pair",
    "discrete",
    "f_value",
    "i_r_arc",
    "prob_closed_form_r1",
    "prob_enumerate",
    "regular_polygon",
    "uniform",
]
