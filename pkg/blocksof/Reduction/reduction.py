import numpy as np

from ..Config.define import DimensionError,NumericError,PreconditionError
from ..Algebra import BlockMatrix,as_block_matrix,from_blocks,identity,zeros,eye_block,zero_block
from ..Algebra import kron,block_trace,shift_matrix,block_lower_solve,block_lower_inverse
from ..Algebra import is_singular_block,condition_estimate,resolve_tolerance,to_fraction_array
from ..System.system import TargetCoefficients,as_targets,frobenius_from_coeffs
from .common import log_reduce as log

class ReductionResult:
    '''S Z S⁻¹ = Phi with S lower block triangular

    Parameters
    ----------
    S : BlockMatrix
        the product S_{n-1} ... S_1
    Phi : BlockMatrix
        lower block Frobenius matrix, forced entries exact, last block row read off S Z S⁻¹
    residual : number
        largest deviation of S Z S⁻¹ from the frobenius pattern on the forced entries
    factors : list of BlockMatrix
        S_1..S_{n-1}
    conditions : list of float
        condition numbers of the superdiagonal blocks Z_{i,i+1}
    '''
    def __init__(self,S,Phi,residual,factors,conditions):
        self.S=S
        self.Phi=Phi
        self.residual=residual
        self.factors=factors
        self.conditions=conditions

    def gammas(self):
        n=self.Phi.q
        return TargetCoefficients([-self.Phi.block(n-1,n-i) for i in range(1,n+1)],exact=self.Phi.exact)

def _coefficient_list(A):
    A=[np.asarray(a) for a in A]
    if(len(A)==0):
        raise DimensionError("at least one coefficient block is required")
    exact=any(a.dtype==object for a in A)
    if(exact):
        A=[to_fraction_array(a) for a in A]
    return A,exact

def build_P(A):
    '''unit lower block triangular Toeplitz matrix with A_0=I, A_1, ..., A_{n-1} on its block diagonals'''
    A,exact=_coefficient_list(A)
    n=len(A)
    s=A[0].shape[0]
    seq=[eye_block(s,exact)]+A
    rows=[[seq[i-j] if i>=j else zero_block(s,exact=exact) for j in range(n)] for i in range(n)]
    return from_blocks(rows,s=s,exact=exact)

def frobenius_coefficients(F):
    '''A_1..A_n of a frobenius matrix, A_i = -F_{n,n-i+1}'''
    F=as_block_matrix(F)
    n=F.q
    return [-F.block(n-1,n-i) for i in range(1,n+1)]

def frobenius_residual(Z):
    '''largest deviation of the first n-1 block rows of Z from [0 I 0 ... 0] shifted'''
    Z=as_block_matrix(Z)
    n,s=Z.q,Z.s
    if(n<=1):
        return 0
    pattern=shift_matrix(n,s,exact=Z.exact)
    diff=(Z-pattern).data[:(n-1)*s,:]
    return max(abs(x) for x in diff.flat)

def build_N_sequence(F,A=None):
    '''N_0 = I, N_ν = N_{ν-1} F + I⊗A_ν for ν = 1..n-1'''
    F=as_block_matrix(F)
    n,s=F.q,F.s
    if(A is None):
        A=frobenius_coefficients(F)
    A,_=_coefficient_list(A)
    if(len(A)!=n):
        raise DimensionError(f"{len(A)} coefficients for a matrix with {n} block rows")
    N=[identity(n,s,exact=F.exact)]
    eye_n=identity(n,1,exact=F.exact)
    for nu in range(1,n):
        N.append(N[-1]@F+kron(eye_n,BlockMatrix(A[nu-1],s,exact=F.exact)))
    return N

def _check_lower_hessenberg(Z,tol):
    n=Z.q
    for i in range(n):
        for j in range(i+2,n):
            if(any(abs(x)>tol for x in Z.block(i,j).flat)):
                raise PreconditionError(f"block ({i+1},{j+1}) above the block superdiagonal is nonzero, "
                                        "the matrix is not lower block Hessenberg")
    for i in range(n-1):
        if(is_singular_block(Z.block(i,i+1))):
            raise PreconditionError(f"superdiagonal block ({i+1},{i+2}) is singular")

def hessenberg_to_frobenius(Z,s=None,tol=None):
    '''reduce an unreduced lower block Hessenberg matrix to lower block Frobenius form

    S_1 stacks e_1^T⊗I over Z without its last block row, S_l places S_{l-1} without its last
    block row and column below-right of an identity block, and S = S_{n-1} ... S_1.

    Parameters
    ----------
    arg1 : BlockMatrix
        Z, lower block Hessenberg with nonsingular superdiagonal blocks
    arg2 : int or None
        block size, defaults to the block size of Z
    arg3 : float or None
        residual tolerance, see Algebra.resolve_tolerance

    Returns
    -------
    ReductionResult
    '''
    Z=as_block_matrix(Z)
    if(s is not None):
        Z=Z.with_block_size(s)
    n,s,exact=Z.q,Z.s,Z.exact
    if(Z.q!=Z.r):
        raise DimensionError(f"reduction needs a block square matrix, got {Z.q}x{Z.r} blocks")
    atol=resolve_tolerance(tol,Z)
    _check_lower_hessenberg(Z,atol)
    if(n==1):
        return ReductionResult(identity(1,s,exact=exact),Z,0,[],[])
    conditions=[condition_estimate(Z.block(i,i+1)) for i in range(n-1)]
    # S_1
    first=zeros(1,n,s,exact=exact).data.copy()
    first[:,:s]=eye_block(s,exact)
    S1=BlockMatrix(np.vstack([first,Z.data[:(n-1)*s,:]]),s,exact=exact)
    factors=[S1]
    for _ in range(2,n):
        prev=factors[-1]
        cur=identity(n,s,exact=exact).data.copy()
        cur[s:,s:]=prev.data[:(n-1)*s,:(n-1)*s]
        factors.append(BlockMatrix(cur,s,exact=exact))
    S=identity(n,s,exact=exact)
    for factor in factors:
        S=factor@S
    S_inv=block_lower_inverse(S)
    raw=S@Z@S_inv
    residual=frobenius_residual(raw)
    log(f"Hessenberg reduction n={n} s={s}: residual {float(residual):.3e}")
    if(residual>atol):
        raise NumericError(f"reduction residual {float(residual):.3e} exceeds tolerance {float(atol):.3e}")
    last=[-raw.block(n-1,n-i) for i in range(1,n+1)]
    Phi=frobenius_from_coeffs(TargetCoefficients(last,exact=exact))
    return ReductionResult(S,Phi,residual,factors,conditions)

def admissible_p(D,p=None,tol=None):
    '''the p for which D has zero first p-1 block rows and zero last n-p block columns

    with p given it is checked, otherwise the largest admissible value is returned. float entries
    up to resolve_tolerance(tol, D) count as zero.
    '''
    D=as_block_matrix(D)
    n=D.q
    atol=resolve_tolerance(tol,D)
    def _fits(p):
        rows=D.data[:(p-1)*D.s,:]
        cols=D.data[:,p*D.s:]
        return all(abs(x)<=atol for x in rows.flat) and all(abs(x)<=atol for x in cols.flat)
    if(p is not None):
        if(not (1<=p<=n) or not _fits(p)):
            raise PreconditionError(f"perturbation does not have zero first {p-1} block rows and zero last {n-p} block columns")
        return p
    for cand in range(n,0,-1):
        if(_fits(cand)):
            return cand
    raise PreconditionError("perturbation has no admissible p: nonzero blocks above the diagonal pattern")

def _check_perturbation(F,D):
    if(F.shape!=D.shape or F.s!=D.s):
        raise DimensionError(f"F has shape {F.shape}, perturbation has shape {D.shape}")
    if(frobenius_residual(F)>resolve_tolerance(None,F)):
        raise PreconditionError("F is not in lower block Frobenius form")

def gamma_from_perturbation(F,D,p=None,tol=None):
    '''Γ_i = A_i - SP_s(N_{i-1} D), the coefficients of the frobenius form similar to F + D'''
    F=as_block_matrix(F)
    D=as_block_matrix(D,F.s).with_block_size(F.s)
    F,D=F._coerce(D)
    _check_perturbation(F,D)
    admissible_p(D,p,tol)
    A=frobenius_coefficients(F)
    N=build_N_sequence(F,A)
    gammas=[A[i]-block_trace(N[i]@D) for i in range(F.q)]
    return TargetCoefficients(gammas,exact=F.exact)

def gamma_from_shift_trace(F,D,p=None,tol=None):
    '''Γ_i = A_i - SP_s(𝒥^{i-1} P D), same coefficients as gamma_from_perturbation'''
    F=as_block_matrix(F)
    D=as_block_matrix(D,F.s).with_block_size(F.s)
    F,D=F._coerce(D)
    _check_perturbation(F,D)
    admissible_p(D,p,tol)
    A=frobenius_coefficients(F)
    PD=build_P(A)@D
    J=shift_matrix(F.q,F.s,exact=F.exact)
    gammas=[]
    for i in range(F.q):
        gammas.append(A[i]-block_trace(PD))
        PD=J@PD
    return TargetCoefficients(gammas,exact=F.exact)

def solve_T_hat(A,gammas):
    '''T̂ = P⁻¹(Â - Γ̂) by block forward substitution, returned as the list T_1..T_n'''
    A,exact=_coefficient_list(A)
    gammas=as_targets(gammas)
    if(gammas.n!=len(A) or gammas.s!=A[0].shape[0]):
        raise DimensionError(f"{gammas.n} targets of size {gammas.s} for {len(A)} coefficients of size {A[0].shape[0]}")
    exact=exact and gammas.exact
    s=gammas.s
    A_hat=from_blocks([[a] for a in A],s=s,exact=exact)
    rhs=A_hat-gammas.stacked()
    T_hat=block_lower_solve(build_P(A),rhs)
    return [T_hat.block(i,0) for i in range(len(A))]
