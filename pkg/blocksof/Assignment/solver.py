import numpy as np
import scipy.linalg

from ..Config.define import DimensionError,NumericError,UnsolvableError
from ..Algebra import rank_with_tolerance,resolve_tolerance,BlockMatrix
from ..Algebra import to_fraction_array,fraction_solve
from .common import log_assign as log

def _lstsq(a,b):
    try:
        x,_,_,_=scipy.linalg.lstsq(a,b)
    except (np.linalg.LinAlgError,ValueError) as err:
        raise NumericError(f"least squares solve failed: {err}") from err
    return x

def _residual(a,x,b):
    diff=a.dot(x)-b
    if(diff.size==0):
        return 0
    return max(abs(value) for value in diff.flat)

def _inconclusive(a,b,rank):
    residual=_residual(a.astype(np.float64),_lstsq(a.astype(np.float64),b.astype(np.float64)),b.astype(np.float64))
    return UnsolvableError(f"rank {rank} < {a.shape[0]} and the right hand side is inconsistent "
                           f"(least squares residual {residual:.3e}), test inconclusive",
                           residual=residual,rank=rank,required=a.shape[0])

def min_norm_solve(a,b,tol=None,rank_tol=None):
    '''minimum Euclidean norm solution of a x = b

    full row rank a uses x = aᵀ(a aᵀ)⁻¹b. rank deficient a falls back to least squares,
    accepted only when the residual stays within tolerance. exact input solves the normal
    equations a aᵀ y = b by rational elimination (free variables zero) and returns x = aᵀy, which
    lies in the row space of a and so has minimum norm.

    Parameters
    ----------
    arg1 : array_like (rows, cols)
    arg2 : array_like (rows,) or (rows, n_rhs)
    arg3 : float or None
        residual tolerance, see Algebra.resolve_tolerance
    arg4 : float or None
        singular value threshold of the rank test

    Returns
    -------
    tuple
        (x, residual, rank)
    '''
    a=a.data if isinstance(a,BlockMatrix) else np.asarray(a)
    b=b.data if isinstance(b,BlockMatrix) else np.asarray(b)
    vector_rhs=(b.ndim==1)
    if(vector_rhs):
        b=b.reshape(-1,1)
    if(a.ndim!=2 or a.shape[0]!=b.shape[0]):
        raise DimensionError(f"system of shape {a.shape} with right hand side of shape {b.shape}")
    rows=a.shape[0]
    exact=(a.dtype==object and b.dtype==object)
    if(exact):
        a=to_fraction_array(a)
        b=to_fraction_array(b)
        rank=rank_with_tolerance(a)
        try:
            y=fraction_solve(a.dot(a.T),b)
        except UnsolvableError:
            raise _inconclusive(a,b,rank)
        x=a.T.dot(y)
        residual=_residual(a,x,b)
        atol=0 if tol is None else tol
    else:
        a=a.astype(np.float64)
        b=b.astype(np.float64)
        rank=rank_with_tolerance(a,rank_tol)
        if(rank==rows):
            try:
                x=a.T.dot(scipy.linalg.solve(a.dot(a.T),b,assume_a="sym"))
            except (np.linalg.LinAlgError,ValueError):
                x=_lstsq(a,b)
        else:
            log(f"Rank deficient system: rank {rank} < {rows}, using least squares")
            x=_lstsq(a,b)
        residual=_residual(a,x,b)
        atol=resolve_tolerance(tol,BlockMatrix(a),BlockMatrix(b))
    log(f"Minimum norm solve: rank {rank}/{rows}, residual {float(residual):.3e}")
    if(residual>atol):
        if(exact):
            raise _inconclusive(a,b,rank)
        raise UnsolvableError(f"least squares residual {residual:.3e} exceeds tolerance {atol:.3e} "
                              f"with rank {rank} of {rows}, test inconclusive",residual=residual,rank=rank,required=rows)
    if(vector_rhs):
        x=x.reshape(-1)
    return x,residual,rank
