from fractions import Fraction

import numpy as np
from easydict import EasyDict as edict

from ..Config.define import FORM,DimensionError,UnsolvableError
from ..Algebra import BlockMatrix,scalar_part,vecr,rank_with_tolerance,unroll_inverse,UNROLL
from ..Algebra import to_fraction_array,to_fraction
from .theta import align,require_valid,require_scalar,build_omega,build_xi
from .general import target_T_hat,certify
from .solver import min_norm_solve
from .common import log_assign as log

def solve_gain_scalar_h(sys,targets,tol=None,rank_tol=None):
    '''gain of a frobenius system whose H has scalar blocks

    Ω V = W with V = VecCC_s Q and W = col(T_1, ..., T_n), the minimum norm V.
    '''
    sys,targets=align(sys,targets)
    require_valid(sys,tol,forms=(FORM.Frobenius,))
    require_scalar(sys.H,"H",tol)
    T=target_T_hat(sys,targets)
    W=np.vstack(T)
    omega=build_omega(sys)
    V,residual,rank=min_norm_solve(omega.data,W,tol,rank_tol)
    Q=unroll_inverse(BlockMatrix(V,sys.s,exact=sys.exact),UNROLL.CC,sys.m,sys.k)
    required=sys.n*sys.s
    log(f"Using scalar H path: rank Ω {rank}/{required}, solve residual {float(residual):.3e}")
    return certify(sys,Q,targets,rank,required,residual,"scalar_h",tol)

def solve_gain_scalar_fg(sys,targets,tol=None,rank_tol=None):
    '''gain of a frobenius system whose F and G have scalar blocks

    X Ξ = Y with X = VecCR_s Q and Y = [T_1 ... T_n], solved as Ξᵀ Xᵀ = Yᵀ for the minimum norm X.
    '''
    sys,targets=align(sys,targets)
    require_valid(sys,tol,forms=(FORM.Frobenius,))
    require_scalar(sys.F,"F",tol)
    require_scalar(sys.G,"G",tol)
    T=target_T_hat(sys,targets)
    Y=np.hstack(T)
    xi=build_xi(sys)
    Xt,residual,rank=min_norm_solve(xi.data.T,Y.T,tol,rank_tol)
    Q=unroll_inverse(BlockMatrix(Xt.T,sys.s,exact=sys.exact),UNROLL.CR,sys.m,sys.k)
    required=sys.n*sys.s
    log(f"Using scalar F,G path: rank Ξ {rank}/{required}, solve residual {float(residual):.3e}")
    return certify(sys,Q,targets,rank,required,residual,"scalar_fg",tol)

def check_scalar_all(sys,tol=None,rank_tol=None):
    '''linear independence of H_0G_0, H_0F_0G_0, ..., H_0F_0^(n-1)G_0

    Returns
    -------
    edict
        independent, rank, F0, G0, H0, omega0 (rows vecr(H_0F_0^(i-1)G_0))
    '''
    require_scalar(sys.F,"F",tol)
    require_scalar(sys.G,"G",tol)
    require_scalar(sys.H,"H",tol)
    F0,G0,H0=scalar_part(sys.F),scalar_part(sys.G),scalar_part(sys.H)
    rows=[]
    FG=G0
    for _ in range(sys.n):
        rows.append(vecr(H0@FG).data)
        FG=F0@FG
    omega0=np.vstack(rows)
    rank=rank_with_tolerance(omega0,rank_tol)
    independent=(rank==sys.n)
    log(f"Scalar system check: rank {rank}/{sys.n}, independent {independent}")
    return edict(independent=independent,rank=rank,F0=F0,G0=G0,H0=H0,omega0=omega0)

def solve_gain_scalar_all(sys,targets,tol=None,rank_tol=None):
    '''gain of a frobenius system with F = F_0⊗I, G = G_0⊗I, H = H_0⊗I, through the scalar H equations'''
    sys,targets=align(sys,targets)
    require_valid(sys,tol,forms=(FORM.Frobenius,))
    check=check_scalar_all(sys,tol,rank_tol)
    if(not check.independent):
        raise UnsolvableError(f"H_0F_0^(i-1)G_0, i=1..{sys.n} are linearly dependent (rank {check.rank})",
                              rank=check.rank,required=sys.n)
    result=solve_gain_scalar_h(sys,targets,tol,rank_tol)
    result.method="scalar_all"
    return result

def scalar_poly_gain(deltas):
    '''2 x 4 gain realizing λ⁴ + δ_1λ³ + δ_2λ² + δ_3λ + δ_4 for the system with n=2, s=2, m=1, k=2

    the system is F = [[0, I], [0, 0]], G = col(0, I), H = [[I, 0], [0, diag(1, 0)]]. the
    closed loop has the requested scalar characteristic polynomial while its block coefficients
    cannot be chosen freely.
    '''
    deltas=list(deltas)
    if(len(deltas)!=4):
        raise DimensionError(f"four coefficients δ_1..δ_4 are required, got {len(deltas)}")
    exact=all(isinstance(d,(int,np.integer,Fraction,str)) for d in deltas)
    if(exact):
        d1,d2,d3,d4=(to_fraction(d) for d in deltas)
        rows=[[-d2,1,-d1,0],[-d4,0,-d3,0]]
        return BlockMatrix(to_fraction_array(np.array(rows,dtype=object)),2,exact=True)
    d1,d2,d3,d4=(float(d) for d in deltas)
    return BlockMatrix(np.array([[-d2,1.0,-d1,0.0],[-d4,0.0,-d3,0.0]]),2)
