from .reduction import ReductionResult,build_P,build_N_sequence,hessenberg_to_frobenius
from .reduction import frobenius_coefficients,frobenius_residual,admissible_p
from .reduction import gamma_from_perturbation,gamma_from_shift_trace,solve_T_hat
