from .system import BlockSystem,TargetCoefficients,Violation
from .system import as_form,as_targets,validate,closed_loop,frobenius_from_coeffs
from .ode import HigherOrderOde,companion_from_ode,ode_to_state_space
from ..Config.define import FORM
