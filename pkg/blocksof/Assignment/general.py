import numpy as np

from ..Config.define import FORM,DimensionError,NumericError,PreconditionError
from ..Algebra import BlockMatrix,vecc,vecc_inverse,unroll_inverse,UNROLL
from ..System import closed_loop,frobenius_from_coeffs
from ..Reduction import hessenberg_to_frobenius,solve_T_hat
from .theta import align,require_valid,transformed_system,build_theta
from .solver import min_norm_solve
from .verify import verify_similarity,verify_char_poly
from .result import AssignmentResult
from .common import log_assign as log
from .common import warn_assign as warn

#conditioning above this is reported in the diagnostics
ILL_CONDITIONED=1e8

def target_T_hat(sys,targets):
    '''T_1..T_n of T̂ = P⁻¹(Â - Γ̂) for the frobenius system'''
    if(targets.n!=sys.n or targets.s!=sys.s):
        raise DimensionError(f"{targets.n} targets of size {targets.s} for a system with n={sys.n}, s={sys.s}")
    return solve_T_hat(sys.coefficients(),targets)

def certify(sys,Q,targets,rank,required,residual_solve,method,tol=None,diagnostics=None):
    '''reduce F + GQH to frobenius form and check it realizes the targets'''
    M=closed_loop(sys,Q)
    try:
        red=hessenberg_to_frobenius(M,tol=tol)
    except PreconditionError as err:
        raise NumericError(f"closed loop matrix cannot be reduced: {err}") from err
    Phi=frobenius_from_coeffs(targets)
    check=verify_similarity(red.S,M,Phi,tol)
    if(not check.ok):
        raise NumericError(f"similarity verification failed, residual {float(check.residual):.3e}")
    diagnostics=[] if diagnostics is None else list(diagnostics)
    poly=verify_char_poly(M,Phi)
    if(not poly.ok):
        if(M.exact):
            raise NumericError(f"characteristic polynomial of F+GQH differs from the target, residual {poly.residual}")
        warn(f"characteristic polynomial residual {float(poly.residual):.3e}")
        diagnostics.append(f"characteristic polynomial residual {float(poly.residual):.3e}")
    for i,cond in enumerate(red.conditions):
        if(cond>ILL_CONDITIONED):
            diagnostics.append(f"closed loop superdiagonal block ({i+1},{i+2}) condition number {cond:.3e}")
    return AssignmentResult(Q,red.S,Phi,targets,rank,required,residual_solve,check.residual,method,diagnostics,
                            residual_charpoly=poly.residual)

def lift_result(sys,red,result,tol=None):
    '''turn a result on the transformed system into one on the hessenberg system, ℛ = S·S̃'''
    R=result.S@red.S
    check=verify_similarity(R,closed_loop(sys,result.Q),result.Phi,tol)
    if(not check.ok):
        raise NumericError(f"similarity verification of ℛ failed, residual {float(check.residual):.3e}")
    result.S=R
    result.residual_similarity=max(check.residual,result.residual_similarity)
    result.diagnostics.append(f"hessenberg input reduced to frobenius form, reduction residual {float(red.residual):.3e}")
    for i,cond in enumerate(red.conditions):
        if(cond>ILL_CONDITIONED):
            result.diagnostics.append(f"F̃ superdiagonal block ({i+1},{i+2}) condition number {cond:.3e}")
    return result

def solve_gain(sys,targets,tol=None,rank_tol=None):
    '''gain Q of a frobenius system realizing Ψ(λ) = Iλ^n + Γ_1λ^(n-1) + ... + Γ_n

    w = col(vecc T_1, ..., vecc T_n), Θv = w solved for the minimum norm v,
    Q = VecCR_s⁻¹(vecc⁻¹ v), and S from the reduction of F + GQH.

    Parameters
    ----------
    arg1 : BlockSystem
        frobenius form
    arg2 : TargetCoefficients
        Γ_1..Γ_n
    arg3 : float or None
        residual tolerance
    arg4 : float or None
        singular value threshold of the rank test

    Returns
    -------
    AssignmentResult
    '''
    sys,targets=align(sys,targets)
    require_valid(sys,tol,forms=(FORM.Frobenius,))
    n,s,m,k=sys.n,sys.s,sys.m,sys.k
    diagnostics=[]
    if(m*k<n):
        warn(f"mk={m*k} < n={n}, the rank test cannot pass")
        diagnostics.append(f"mk={m*k} < n={n}")
    T=target_T_hat(sys,targets)
    w=np.vstack([vecc(t).data for t in T])
    theta=build_theta(sys)
    v,residual,rank=min_norm_solve(theta.data,w,tol,rank_tol)
    required=n*s*s
    if(rank<required):
        diagnostics.append(f"rank Θ {rank} < {required}, consistent right hand side accepted")
    Q=unroll_inverse(vecc_inverse(v,s,k*m*s,s=s),UNROLL.CR,m,k)
    log(f"Using general path: rank Θ {rank}/{required}, solve residual {float(residual):.3e}")
    return certify(sys,Q,targets,rank,required,residual,"general",tol,diagnostics)

def solve_gain_hessenberg(sys,targets,tol=None,rank_tol=None):
    '''gain Q of a hessenberg system, solved on the similar frobenius system and lifted back'''
    if(sys.form==FORM.Frobenius):
        return solve_gain(sys,targets,tol,rank_tol)
    sys,targets=align(sys,targets)
    require_valid(sys,tol,forms=(FORM.Hessenberg,))
    tsys,red=transformed_system(sys,tol)
    result=solve_gain(tsys,targets,tol,rank_tol)
    return lift_result(sys,red,result,tol)
