from functools import partial
from ..Config.define import ARITH,METHOD,FORM,UnsolvableError
from ..System import as_targets
from .result import AssignmentResult,SolvabilityReport
from .theta import build_theta,stack_theta,build_theta_hat,build_omega,build_xi
from .theta import transformed_system,amca_solvable,align,require_valid
from .solver import min_norm_solve
from .general import solve_gain,solve_gain_hessenberg,lift_result
from .scalar import solve_gain_scalar_h,solve_gain_scalar_fg,check_scalar_all,solve_gain_scalar_all
from .scalar import scalar_poly_gain
from .verify import verify_similarity,verify_char_poly,char_poly
from .common import log_assign as log
from ..Algebra import is_scalar_blocks,resolve_tolerance

def _to_arith(sys,targets,arith):
    if(arith==ARITH.Exact):
        return sys.to_exact(),targets.to_exact()
    if(arith==ARITH.Float):
        return sys.to_float(),targets.to_float()
    return sys,targets

def _scalar(mat,tol):
    return is_scalar_blocks(mat,resolve_tolerance(tol,mat))

def _auto_candidates(sys,tol,rank_tol):
    ret=[]
    if(_scalar(sys.F,tol) and _scalar(sys.G,tol) and _scalar(sys.H,tol)):
        if(check_scalar_all(sys,tol,rank_tol).independent):
            ret.append(("scalar_all",solve_gain_scalar_all))
    if(_scalar(sys.H,tol)):
        ret.append(("scalar_h",solve_gain_scalar_h))
    if(_scalar(sys.F,tol) and _scalar(sys.G,tol)):
        ret.append(("scalar_fg",solve_gain_scalar_fg))
    ret.append(("general",solve_gain))
    return ret

def assign(sys,targets,method=METHOD.Auto,tol=None,rank_tol=None,arith=None):
    '''synthesize a gain realizing the target coefficients

    hessenberg input is transformed to frobenius form first and the similarity ℛ = S·S̃ is
    composed at the end. METHOD.Auto tries the first structurally applicable of scalar_all,
    scalar_h, scalar_fg and general, an UnsolvableError of a specialized path falls through to
    the general path.

    Parameters
    ----------
    arg1 : BlockSystem
        frobenius or hessenberg form
    arg2 : TargetCoefficients or list of s x s array_like
        Γ_1..Γ_n
    arg3 : Config.METHOD
        synthesis path
    arg4 : float or None
        residual tolerance
    arg5 : float or None
        singular value threshold of the rank tests
    arg6 : Config.ARITH or None
        converts the inputs to the given backend, None keeps them as they are

    Returns
    -------
    AssignmentResult
    '''
    targets=as_targets(targets)
    sys,targets=_to_arith(sys,targets,arith)
    sys,targets=align(sys,targets)
    require_valid(sys,tol)
    tsys,red=transformed_system(sys,tol)
    if(method==METHOD.Auto):
        candidates=_auto_candidates(tsys,tol,rank_tol)
    elif(method==METHOD.General):
        candidates=[("general",solve_gain)]
    elif(method==METHOD.Scalar_h):
        candidates=[("scalar_h",solve_gain_scalar_h)]
    elif(method==METHOD.Scalar_fg):
        candidates=[("scalar_fg",solve_gain_scalar_fg)]
    elif(method==METHOD.Scalar_all):
        candidates=[("scalar_all",solve_gain_scalar_all)]
    else:
        raise NotImplementedError(f"unknown synthesis method: {method}")
    result=None
    for idx,(name,solver) in enumerate(candidates):
        log(f"Using {name} path!")
        try:
            result=solver(tsys,targets,tol,rank_tol)
            break
        except UnsolvableError as err:
            if(idx==len(candidates)-1):
                raise
            log(f"{name} path failed ({err}), falling through")
    if(red is not None):
        result=lift_result(sys,red,result,tol)
    return result

def get_assign(config):
    '''get the synthesis function bound to the configured method, tolerances and arithmetic

    Parameters
    ----------
    arg1 : config object
        the config object return by Config.get_config() function

    Returns
    -------
    function
        assign(sys, targets) -> AssignmentResult
    '''
    solve=config.solve
    log(f"Assignment configured: method {solve.method.name}, arith {solve.arith.name}")
    return partial(assign,method=solve.method,tol=solve.tol,rank_tol=solve.rank_tol,arith=solve.arith)
