import numpy as np
import scipy.linalg
from easydict import EasyDict as edict

from ..Config.define import ARITH,METHOD,DimensionError,NumericError,SolventSetError
from ..Algebra import BlockMatrix,from_blocks,block_transpose,eye_block,dense_solve,rank_with_tolerance
from ..Algebra import condition_estimate,resolve_tolerance,to_fraction_array
from ..System import as_targets,TargetCoefficients
from .common import log_solvent as log

def _as_solvent_list(ls):
    ls=[np.asarray(L) for L in ls]
    if(len(ls)==0):
        raise SolventSetError("at least one solvent is required")
    exact=any(L.dtype==object for L in ls)
    ls=[to_fraction_array(L) if exact else L.astype(np.float64) for L in ls]
    s=ls[0].shape[0] if ls[0].ndim==2 else 0
    for j,L in enumerate(ls):
        if(L.ndim!=2 or L.shape!=(s,s)):
            raise SolventSetError(f"solvent {j+1} has shape {L.shape}, expected ({s},{s})")
    return ls,exact

def block_vandermonde(ls):
    '''V(X_1, ..., X_n), block (i,j) = X_j^(i-1)'''
    ls,exact=_as_solvent_list(ls)
    n,s=len(ls),ls[0].shape[0]
    cols=[]
    for L in ls:
        col=[eye_block(s,exact)]
        for _ in range(1,n):
            col.append(col[-1].dot(L))
        cols.append(col)
    rows=[[cols[j][i] for j in range(n)] for i in range(n)]
    return from_blocks(rows,s=s,exact=exact)

def vandermonde_ranks(V,rank_tol=None):
    '''ranks of V and of its block transpose V^𝒯, the matrix solved for the coefficients'''
    return rank_with_tolerance(V.data,rank_tol),rank_with_tolerance(block_transpose(V).data,rank_tol)

def is_vandermonde_singular(ls,rank_tol=None):
    V=block_vandermonde(ls)
    return min(vandermonde_ranks(V,rank_tol))<V.shape[0]

def _triangular_diagonal(L):
    s=L.shape[0]
    upper=all(L[i,j]==0 for i in range(s) for j in range(i))
    lower=all(L[i,j]==0 for i in range(s) for j in range(i+1,s))
    if(upper or lower):
        return [L[i,i] for i in range(s)]
    return None

class SolventSet:
    '''a complete set of left solvents L_1..L_n with nonsingular block Vandermonde matrix

    Parameters
    ----------
    arg1 : list of s x s array_like
        the solvents
    arg2 : float or None
        singular value threshold of the nonsingularity test
    '''
    def __init__(self,solvents,rank_tol=None):
        self.solvents,self.exact=_as_solvent_list(solvents)
        self.n=len(self.solvents)
        self.s=self.solvents[0].shape[0]
        self.V=block_vandermonde(self.solvents)
        rank,rank_t=vandermonde_ranks(self.V,rank_tol)
        size=self.V.shape[0]
        if(rank<size):
            raise SolventSetError(f"singular block Vandermonde: rank {rank} < {size}")
        if(rank_t<size):
            raise SolventSetError(f"singular block Vandermonde: rank of the block transpose {rank_t} < {size}")
        self.condition=condition_estimate(self.V.data)
        log(f"Solvent set n={self.n} s={self.s}, Vandermonde condition {self.condition:.3e}")

    @property
    def spectrum(self):
        '''eigenvalues of every solvent, None when exact solvents are not triangular'''
        ret=[]
        for L in self.solvents:
            if(self.exact):
                diag=_triangular_diagonal(L)
                if(diag is None):
                    return None
                ret+=diag
            else:
                ret+=list(scipy.linalg.eigvals(L))
        return ret

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.solvents)

    def __repr__(self):
        return f"SolventSet(n={self.n}, s={self.s}, {'exact' if self.exact else 'float'})"

def as_solvent_set(ss):
    if isinstance(ss,SolventSet):
        return ss
    return SolventSet(ss)

def gammas_from_solvents(ss):
    '''Γ_1..Γ_n of the polynomial having L_1..L_n as left solvents

    solves V^𝒯 col(Γ_n, ..., Γ_1) = -col(L_1^n, ..., L_n^n).
    '''
    ss=as_solvent_set(ss)
    n,s=ss.n,ss.s
    rhs=np.vstack([-_power(L,n,ss.exact) for L in ss.solvents])
    try:
        col=dense_solve(block_transpose(ss.V).data,rhs)
    except NumericError as err:
        raise SolventSetError(f"singular block Vandermonde: {err}") from err
    col=np.asarray(col)
    # col holds Γ_n first
    gammas=[col[(n-i)*s:(n-i+1)*s,:] for i in range(1,n+1)]
    return TargetCoefficients(gammas,exact=ss.exact)

def _power(L,k,exact):
    ret=eye_block(L.shape[0],exact)
    for _ in range(k):
        ret=ret.dot(L)
    return ret

def verify_solvent(L,gammas,tol=None):
    '''residual = max |L^n + L^(n-1)Γ_1 + ... + LΓ_(n-1) + Γ_n|

    Returns
    -------
    edict
        ok, residual
    '''
    gammas=as_targets(gammas)
    L=np.asarray(L)
    exact=gammas.exact and not np.issubdtype(L.dtype,np.floating)
    L=to_fraction_array(L) if exact else L.astype(np.float64)
    if(L.shape!=(gammas.s,gammas.s)):
        raise DimensionError(f"solvent of shape {L.shape} for coefficients of size {gammas.s}")
    G=[to_fraction_array(g) if exact else np.asarray(g,dtype=np.float64) for g in gammas]
    acc=G[-1]
    Lpow=eye_block(gammas.s,exact)
    for i in range(gammas.n-1,0,-1):
        Lpow=Lpow.dot(L)
        acc=acc+Lpow.dot(G[i-1])
    acc=acc+Lpow.dot(L)
    residual=max(abs(x) for x in acc.flat)
    atol=resolve_tolerance(tol,BlockMatrix(L,exact=exact),*(BlockMatrix(g,exact=exact) for g in G))
    return edict(ok=bool(residual<=atol),residual=residual)

def assign_solvents(sys,ss,method=METHOD.Auto,tol=None,rank_tol=None,arith=None):
    '''synthesize a gain whose closed loop polynomial has the given left solvents

    Returns
    -------
    AssignmentResult
        with solvent_residuals, one per solvent, checked against the realized Φ
    '''
    from ..Assignment import assign
    ss=as_solvent_set(ss)
    if(arith==ARITH.Exact and not ss.exact):
        ss=SolventSet([to_fraction_array(L) for L in ss.solvents],rank_tol)
    if(ss.n!=sys.n or ss.s!=sys.s):
        raise DimensionError(f"{ss.n} solvents of size {ss.s} for a system with n={sys.n}, s={sys.s}")
    gammas=gammas_from_solvents(ss)
    result=assign(sys,gammas,method=method,tol=tol,rank_tol=rank_tol,arith=arith)
    realized=result.Phi
    n=realized.q
    realized_gammas=TargetCoefficients([-realized.block(n-1,n-i) for i in range(1,n+1)],exact=realized.exact)
    residuals=[]
    for j,L in enumerate(ss.solvents):
        check=verify_solvent(L if realized.exact else np.asarray(L,dtype=np.float64),realized_gammas,tol)
        if(not check.ok):
            raise NumericError(f"solvent {j+1} does not satisfy the realized polynomial, residual {float(check.residual):.3e}")
        residuals.append(check.residual)
    log(f"Solvents verified, largest residual {float(max(residuals)):.3e}")
    result.solvent_residuals=residuals
    return result
