import numpy as np

from ..Config.define import FORM,PreconditionError
from ..Algebra import BlockMatrix,star,unroll,block_transpose,block_lower_inverse,rank_with_tolerance
from ..Algebra import is_scalar_blocks,resolve_tolerance,UNROLL
from ..System import validate,as_targets
from ..Reduction import hessenberg_to_frobenius
from .result import SolvabilityReport
from .common import log_assign as log

def align(sys,targets):
    '''bring the system and the targets to one scalar backend, float wins'''
    targets=as_targets(targets)
    if(sys.exact and not targets.exact):
        sys=sys.to_float()
    elif(targets.exact and not sys.exact):
        targets=targets.to_float()
    return sys,targets

def require_valid(sys,tol=None,forms=(FORM.Frobenius,FORM.Hessenberg)):
    if(sys.form not in forms):
        raise PreconditionError(f"{sys.form.name.lower()} form is not supported here, expected "
                                +" or ".join(form.name.lower() for form in forms))
    violations=validate(sys,tol)
    if(violations):
        raise PreconditionError(f"{len(violations)} structural violation(s) of the {sys.form.name.lower()} form, "
                                f"first: {violations[0]}")

def require_scalar(mat,name,tol=None):
    tol=resolve_tolerance(tol,mat)
    if(not is_scalar_blocks(mat,tol)):
        raise PreconditionError(f"every block of {name} must be a scalar multiple of the identity")

def transformed_system(sys,tol=None):
    '''frobenius system similar to a hessenberg one

    F = Φ of the reduction of F̃, G = S̃G̃, H = H̃S̃⁻¹. frobenius input is returned unchanged
    with no reduction.

    Returns
    -------
    tuple
        (BlockSystem in frobenius form, ReductionResult or None)
    '''
    if(sys.form==FORM.Frobenius):
        return sys,None
    if(sys.form!=FORM.Hessenberg):
        raise PreconditionError(f"{sys.form.name.lower()} form cannot be transformed to frobenius form")
    red=hessenberg_to_frobenius(sys.F,tol=tol)
    G=red.S@sys.G
    H=sys.H@block_lower_inverse(red.S)
    log(f"Transformed hessenberg system, reduction residual {float(red.residual):.3e}")
    return sys.with_matrices(red.Phi,G,H,form=FORM.Frobenius),red

def _powers_times_G(F,G,n):
    ret=[G]
    for _ in range(1,n):
        ret.append(F@ret[-1])
    return ret

def stack_theta(F,G,H,scalar_f=False):
    '''row block i of Θ is VecRR_{s²}((H^𝒯)^T ⋆ F^{i-1}G), i = 1..n

    with scalar_f the row blocks are VecRR_{s²}(((H^𝒯)^T F^{i-1}) ⋆ G), the same matrix when
    F = F_0⊗I.
    '''
    n=F.q
    Ht=block_transpose(H).T
    rows=[]
    if(scalar_f):
        HF=Ht
        for _ in range(n):
            rows.append(unroll(star(HF,G),UNROLL.RR).data)
            HF=HF@F
    else:
        for FG in _powers_times_G(F,G,n):
            rows.append(unroll(star(Ht,FG),UNROLL.RR).data)
    return BlockMatrix(np.vstack(rows),F.s*F.s,exact=F.exact)

def build_theta(sys,scalar_f=False):
    '''Θ ∈ M_{ns², kms²} of a frobenius system'''
    if(sys.form!=FORM.Frobenius):
        raise PreconditionError("Θ is defined for frobenius systems, transform hessenberg input first")
    return stack_theta(sys.F,sys.G,sys.H,scalar_f)

def build_theta_hat(sys):
    '''Θ̂, the stacking of build_theta applied to the matrices as given'''
    return stack_theta(sys.F,sys.G,sys.H)

def stack_omega(F,G,H):
    n=F.q
    Ht=block_transpose(H).T
    rows=[unroll(Ht@FG,UNROLL.RR).data for FG in _powers_times_G(F,G,n)]
    return BlockMatrix(np.vstack(rows),F.s,exact=F.exact)

def build_omega(sys):
    '''Ω ∈ M_{ns, kms}, row block i = VecRR_s((H^𝒯)^T F^{i-1}G)'''
    if(sys.form!=FORM.Frobenius):
        raise PreconditionError("Ω is defined for frobenius systems, transform hessenberg input first")
    return stack_omega(sys.F,sys.G,sys.H)

def build_xi(sys):
    '''Ξ ∈ M_{kms, ns} = [VecRC_s(HG), VecRC_s(HFG), ..., VecRC_s(HF^{n-1}G)]'''
    if(sys.form!=FORM.Frobenius):
        raise PreconditionError("Ξ is defined for frobenius systems, transform hessenberg input first")
    cols=[unroll(sys.H@FG,UNROLL.RC).data for FG in _powers_times_G(sys.F,sys.G,sys.n)]
    return BlockMatrix(np.hstack(cols),sys.s,exact=sys.exact)

def amca_solvable(sys,tol=None,rank_tol=None):
    '''rank test for the assignment of arbitrary matrix coefficients

    Parameters
    ----------
    arg1 : BlockSystem
        frobenius or hessenberg form
    arg2 : float or None
        tolerance of the structural checks
    arg3 : float or None
        singular value threshold of the rank test

    Returns
    -------
    SolvabilityReport
    '''
    require_valid(sys,tol)
    rank_hat=None
    if(sys.form==FORM.Hessenberg):
        rank_hat=rank_with_tolerance(build_theta_hat(sys).data,rank_tol)
    tsys,_=transformed_system(sys,tol)
    theta=build_theta(tsys)
    rank=rank_with_tolerance(theta.data,rank_tol)
    required=sys.n*sys.s*sys.s
    precheck=(sys.m*sys.k>=sys.n)
    solvable=precheck and rank==required
    log(f"Solvability test: rank Θ {rank}/{required}, mk>=n {precheck}"
        +("" if rank_hat is None else f", rank Θ̂ {rank_hat}"))
    return SolvabilityReport(solvable,rank,required,precheck,rank_hat)
