import numpy as np
import scipy.linalg
from easydict import EasyDict as edict

from ..Config.define import DimensionError,NumericError
from ..Algebra import BlockMatrix,as_block_matrix,inverse,block_lower_inverse,is_lower_block_triangular
from ..Algebra import max_abs_diff,resolve_tolerance,to_fraction_array
from .common import log_assign as log

def verify_similarity(S,M,Phi,tol=None):
    '''residual = max |S M S⁻¹ - Phi|, ok when it is within tolerance

    Returns
    -------
    edict
        ok, residual
    '''
    S=as_block_matrix(S)
    M=as_block_matrix(M,S.s)
    Phi=as_block_matrix(Phi,S.s)
    if(S.shape[0]!=S.shape[1] or S.shape!=M.shape or M.shape!=Phi.shape):
        raise DimensionError(f"similarity of shapes {S.shape}, {M.shape}, {Phi.shape}")
    try:
        S_inv=block_lower_inverse(S) if is_lower_block_triangular(S) else inverse(S)
    except NumericError as err:
        raise NumericError(f"similarity transform is singular: {err}") from err
    residual=max_abs_diff(S@M@S_inv,Phi)
    atol=resolve_tolerance(tol,S,M,Phi)
    ok=bool(residual<=atol)
    log(f"Similarity residual {float(residual):.3e}, tolerance {float(atol):.3e}")
    return edict(ok=ok,residual=residual)

def _faddeev_leverrier(a):
    r=a.shape[0]
    eye=to_fraction_array(np.eye(r,dtype=int))
    Mk=to_fraction_array(np.zeros((r,r),dtype=int))
    c=to_fraction_array(np.ones(1,dtype=int))[0]
    deltas=[]
    for k in range(1,r+1):
        Mk=a.dot(Mk)+eye*c
        c=-np.trace(a.dot(Mk))/k
        deltas.append(c)
    return deltas

def _hessenberg_recurrence(a):
    r=a.shape[0]
    try:
        h=scipy.linalg.hessenberg(a)
    except (np.linalg.LinAlgError,ValueError) as err:
        raise NumericError(f"hessenberg reduction failed: {err}") from err
    # p[j] holds det(λI - h[:j,:j]), lowest degree first
    p=[np.ones(1)]
    for kk in range(r):
        cur=np.convolve(np.array([-h[kk,kk],1.0]),p[kk])
        prod=1.0
        for i in range(kk-1,-1,-1):
            prod*=h[i+1,i]
            term=h[i,kk]*prod*p[i]
            cur[:term.size]-=term
        p.append(cur)
    return [float(p[r][r-j]) for j in range(1,r+1)]

def char_poly(M):
    '''δ_1..δ_r of det(λI - M) = λ^r + δ_1λ^(r-1) + ... + δ_r

    exact input by Faddeev-LeVerrier, float input by hessenberg reduction and the determinant
    recurrence of the hessenberg matrix.
    '''
    a=M.data if isinstance(M,BlockMatrix) else np.asarray(M)
    if(a.ndim!=2 or a.shape[0]!=a.shape[1]):
        raise DimensionError(f"characteristic polynomial needs a square matrix, got shape {a.shape}")
    if(a.shape[0]==0):
        return []
    if(a.dtype==object):
        return _faddeev_leverrier(to_fraction_array(a))
    return _hessenberg_recurrence(a.astype(np.float64))

def verify_char_poly(M,Phi,tol=None):
    '''residual = max |δ_i(M) - δ_i(Phi)| over the characteristic polynomial coefficients

    exact operands are compared exactly, float operands against tol (default 1e-6) relative
    to the largest coefficient of Phi, with floor 1.

    Returns
    -------
    edict
        ok, residual, deltas (of Phi)
    '''
    a=char_poly(M)
    b=char_poly(Phi)
    if(len(a)!=len(b)):
        raise DimensionError(f"characteristic polynomials of degree {len(a)} and {len(b)}")
    residual=max((abs(x-y) for x,y in zip(a,b)),default=0)
    exact=all(isinstance(x,BlockMatrix) and x.exact for x in (M,Phi))
    if(exact):
        atol=0 if tol is None else tol
    else:
        atol=(1e-6 if tol is None else tol)*max([1.0]+[abs(float(x)) for x in b])
    return edict(ok=bool(residual<=atol),residual=residual,deltas=b)
