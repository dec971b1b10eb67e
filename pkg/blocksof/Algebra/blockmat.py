"""Block matrices with s×s blocks and the calculus built on them.

Block indices are 0-based in code. Documentation quoting formulas uses 1-based indices,
so block (1,2) in a docstring is ``A.block(0, 1)``.
"""
from fractions import Fraction

import numpy as np
import scipy.linalg

from ..Config.define import DimensionError,NumericError,PreconditionError,UNROLL
from .exact import fraction_identity,fraction_inverse,fraction_rank,fraction_solve,fraction_zeros,to_fraction_array
from .common import debug_algebra as debug

class BlockMatrix:
    '''dense real matrix of shape (q*s, r*s) viewed as q x r blocks of size s x s

    values are immutable: every operation returns a new BlockMatrix. the scalar backend is
    float64 by default, exact mode stores fractions.Fraction in a numpy object array.

    Parameters
    ----------
    arg1 : array_like or BlockMatrix
        the physical matrix, row-major nested lists are accepted
    arg2 : int
        block size s
    arg3 : bool or None
        True converts entries to fractions.Fraction, False to float64,
        None keeps the backend of arg1 (object arrays are exact)
    '''
    __array_ufunc__=None

    def __init__(self,data,s=1,exact=None):
        if isinstance(data,BlockMatrix):
            data=data.data
        arr=np.asarray(data)
        if(exact is None):
            exact=(arr.dtype==object)
        if(arr.ndim==0):
            arr=arr.reshape(1,1)
        elif(arr.ndim==1):
            arr=arr.reshape(-1,1)
        if(arr.ndim!=2):
            raise DimensionError(f"block matrix data must be two dimensional, got shape {arr.shape}")
        if(exact):
            arr=to_fraction_array(arr)
        else:
            arr=arr.astype(np.float64)
        s=int(s)
        if(s<1):
            raise DimensionError(f"block size must be positive, got {s}")
        if(arr.shape[0]%s!=0 or arr.shape[1]%s!=0):
            raise DimensionError(f"shape {arr.shape} is not a multiple of block size {s}")
        arr.flags.writeable=False
        self._data=arr
        self._s=s

    @classmethod
    def _wrap(cls,arr,s):
        # trusted constructor for arrays already in the right backend
        obj=cls.__new__(cls)
        arr=np.array(arr,dtype=arr.dtype)
        if(arr.shape[0]%s!=0 or arr.shape[1]%s!=0):
            raise DimensionError(f"shape {arr.shape} is not a multiple of block size {s}")
        arr.flags.writeable=False
        obj._data=arr
        obj._s=s
        return obj

    @property
    def data(self):
        return self._data

    @property
    def s(self):
        return self._s

    @property
    def q(self):
        return self._data.shape[0]//self._s

    @property
    def r(self):
        return self._data.shape[1]//self._s

    @property
    def shape(self):
        return self._data.shape

    @property
    def exact(self):
        return self._data.dtype==object

    def block(self,i,j):
        '''s x s block at 0-based block position (i, j)'''
        if(not (0<=i<self.q and 0<=j<self.r)):
            raise DimensionError(f"block ({i+1},{j+1}) outside a {self.q}x{self.r} block matrix")
        s=self._s
        return self._data[i*s:(i+1)*s,j*s:(j+1)*s]

    def block_row(self,i):
        s=self._s
        return BlockMatrix._wrap(self._data[i*s:(i+1)*s,:],s)

    def block_rows(self,start,stop):
        s=self._s
        return BlockMatrix._wrap(self._data[start*s:stop*s,:],s)

    def block_cols(self,start,stop):
        s=self._s
        return BlockMatrix._wrap(self._data[:,start*s:stop*s],s)

    def blocks(self):
        return [[self.block(i,j) for j in range(self.r)] for i in range(self.q)]

    def with_block_size(self,s):
        return BlockMatrix._wrap(self._data,s)

    def to_exact(self):
        if(self.exact):
            return self
        return BlockMatrix(self._data,self._s,exact=True)

    def to_float(self):
        if(not self.exact):
            return self
        return BlockMatrix(self._data,self._s,exact=False)

    def max_abs(self):
        if(self._data.size==0):
            return 0
        return max(abs(x) for x in self._data.flat)

    def tolist(self):
        return self._data.tolist()

    @property
    def T(self):
        return BlockMatrix._wrap(self._data.T,self._s)

    def _coerce(self,other):
        if isinstance(other,BlockMatrix):
            a,b=self,other
        else:
            b=BlockMatrix(other,1,exact=self.exact)
            a=self
        if(a.exact and not b.exact):
            a=a.to_float()
        elif(b.exact and not a.exact):
            b=b.to_float()
        return a,b

    def __add__(self,other):
        a,b=self._coerce(other)
        if(a.shape!=b.shape):
            raise DimensionError(f"cannot add shapes {a.shape} and {b.shape}")
        return BlockMatrix._wrap(a.data+b.data,self._s)

    def __sub__(self,other):
        a,b=self._coerce(other)
        if(a.shape!=b.shape):
            raise DimensionError(f"cannot subtract shapes {a.shape} and {b.shape}")
        return BlockMatrix._wrap(a.data-b.data,self._s)

    def __neg__(self):
        return BlockMatrix._wrap(-self._data,self._s)

    def __matmul__(self,other):
        a,b=self._coerce(other)
        if(a.shape[1]!=b.shape[0]):
            raise DimensionError(f"cannot multiply shapes {a.shape} and {b.shape}")
        prod=a.data@b.data
        if(a.exact and prod.size!=0 and a.shape[1]==0):
            prod=fraction_zeros(prod.shape)
        return BlockMatrix._wrap(prod,self._s)

    def __mul__(self,scalar):
        if isinstance(scalar,BlockMatrix):
            raise TypeError("use @ for matrix products")
        if(self.exact and not isinstance(scalar,(float,np.floating))):
            scalar=Fraction(scalar)
        elif(self.exact):
            return self.to_float()*scalar
        return BlockMatrix._wrap(self._data*scalar,self._s)

    __rmul__=__mul__

    def __rmatmul__(self,other):
        return BlockMatrix(other,1,exact=self.exact)@self

    def __eq__(self,other):
        if not isinstance(other,BlockMatrix):
            return NotImplemented
        return self.s==other.s and self.shape==other.shape and bool(np.all(self._data==other._data))

    __hash__=None

    def __repr__(self):
        mode="exact" if self.exact else "float"
        return f"BlockMatrix(q={self.q}, r={self.r}, s={self.s}, {mode})\n{self._data}"

#constructors
def zeros(q,r,s=1,exact=False):
    if(exact):
        return BlockMatrix._wrap(fraction_zeros((q*s,r*s)),s)
    return BlockMatrix._wrap(np.zeros((q*s,r*s)),s)

def identity(n,s=1,exact=False):
    if(exact):
        return BlockMatrix._wrap(fraction_identity(n*s),s)
    return BlockMatrix._wrap(np.eye(n*s),s)

def eye_block(s,exact=False):
    return fraction_identity(s) if exact else np.eye(s)

def zero_block(s,t=None,exact=False):
    t=s if t is None else t
    return fraction_zeros((s,t)) if exact else np.zeros((s,t))

def from_blocks(rows,s=None,exact=None):
    '''assemble a BlockMatrix from a nested list of s x s arrays (row-major)'''
    rows=[[np.asarray(blk) for blk in row] for row in rows]
    if(s is None):
        s=rows[0][0].shape[0]
    if(exact is None):
        exact=any(blk.dtype==object for row in rows for blk in row)
    if(exact):
        rows=[[to_fraction_array(blk) for blk in row] for row in rows]
    for i,row in enumerate(rows):
        for j,blk in enumerate(row):
            if(blk.shape!=(s,s)):
                raise DimensionError(f"block ({i+1},{j+1}) has shape {blk.shape}, expected ({s},{s})")
    return BlockMatrix(np.block(rows),s,exact=exact)

def as_block_matrix(x,s=1):
    if isinstance(x,BlockMatrix):
        return x
    return BlockMatrix(x,s)

#calculus
def kron(A,B,s=None):
    '''right Kronecker product A⊗B, block size defaults to the block size of B'''
    A=as_block_matrix(A)
    B=as_block_matrix(B)
    A,B=A._coerce(B)
    s=B.s if s is None else s
    return BlockMatrix._wrap(np.kron(A.data,B.data),s)

def star(X,Y):
    '''block multiplication Z = X ⋆ Y, Z_{iν} = Σ_j X_{ij} ⊗ Y_{jν}

    X has q x r blocks and Y has r x t blocks, both of size s. the result has q x t blocks of
    size s².
    '''
    X,Y=as_block_matrix(X)._coerce(as_block_matrix(Y))
    if(X.s!=Y.s):
        raise DimensionError(f"block sizes differ: {X.s} and {Y.s}")
    if(X.r!=Y.q):
        raise DimensionError(f"star product needs matching block counts, got {X.r} block columns and {Y.q} block rows")
    s=X.s
    s2=s*s
    out=zeros(X.q,Y.r,s2,exact=X.exact).data.copy()
    for i in range(X.q):
        for nu in range(Y.r):
            acc=out[i*s2:(i+1)*s2,nu*s2:(nu+1)*s2]
            for j in range(X.r):
                acc+=np.kron(X.block(i,j),Y.block(j,nu))
    return BlockMatrix._wrap(out,s2)

def block_trace(A):
    '''SP_s A, the sum of the diagonal s x s blocks'''
    A=as_block_matrix(A)
    if(A.q!=A.r):
        raise DimensionError(f"block trace needs a block square matrix, got {A.q}x{A.r} blocks")
    acc=zero_block(A.s,exact=A.exact)
    for i in range(A.q):
        acc=acc+A.block(i,i)
    return acc

def block_transpose(A):
    '''A^𝒯: block (j,i) of the result is block (i,j) of A, block interiors untouched'''
    A=as_block_matrix(A)
    q,r,s=A.q,A.r,A.s
    data=A.data.reshape(q,s,r,s).transpose(2,1,0,3).reshape(r*s,q*s)
    return BlockMatrix._wrap(data,s)

def _unroll_order(q,r,mode):
    if(mode in (UNROLL.CR,UNROLL.CC)):
        return [(i,j) for j in range(r) for i in range(q)]
    return [(i,j) for i in range(q) for j in range(r)]

def _as_mode(mode):
    if isinstance(mode,UNROLL):
        return mode
    return UNROLL[str(mode).upper()]

def unroll(A,mode):
    '''Vec unrolling of a block matrix

    CR and RR give the block row s x (q*r*s), RC and CC the block column (q*r*s) x s.
    CR and CC walk the blocks column by column (X11, X21, ..., Xq1, X12, ...), RR and RC row by
    row (X11, X12, ..., X1r, X21, ...).
    '''
    A=as_block_matrix(A)
    mode=_as_mode(mode)
    order=_unroll_order(A.q,A.r,mode)
    pieces=[A.block(i,j) for i,j in order]
    if(mode in (UNROLL.CR,UNROLL.RR)):
        data=np.hstack(pieces) if pieces else zeros(1,0,A.s,A.exact).data
    else:
        data=np.vstack(pieces) if pieces else zeros(0,1,A.s,A.exact).data
    return BlockMatrix._wrap(data,A.s)

def unroll_inverse(M,mode,q,r):
    '''the unique X with q x r blocks such that unroll(X, mode) equals M'''
    M=as_block_matrix(M)
    mode=_as_mode(mode)
    s=M.s
    if(mode in (UNROLL.CR,UNROLL.RR)):
        expected=(s,q*r*s)
    else:
        expected=(q*r*s,s)
    if(M.shape!=expected):
        raise DimensionError(f"{mode.name} unrolling of {q}x{r} blocks of size {s} has shape {expected}, got {M.shape}")
    out=zeros(q,r,s,exact=M.exact).data.copy()
    for idx,(i,j) in enumerate(_unroll_order(q,r,mode)):
        if(mode in (UNROLL.CR,UNROLL.RR)):
            piece=M.data[:,idx*s:(idx+1)*s]
        else:
            piece=M.data[idx*s:(idx+1)*s,:]
        out[i*s:(i+1)*s,j*s:(j+1)*s]=piece
    return BlockMatrix._wrap(out,s)

def _raw(A):
    if isinstance(A,BlockMatrix):
        return A.data
    arr=np.asarray(A)
    if(arr.ndim==1):
        arr=arr.reshape(-1,1)
    return arr

def vecc(A):
    '''column-by-column column vector'''
    data=_raw(A)
    return BlockMatrix._wrap(data.reshape(-1,order="F").reshape(-1,1),1)

def vecr(A):
    '''row-by-row row vector'''
    data=_raw(A)
    return BlockMatrix._wrap(data.reshape(1,-1),1)

def vecc_inverse(v,rows,cols,s=1):
    data=_raw(v).reshape(-1)
    if(data.size!=rows*cols):
        raise DimensionError(f"vector of length {data.size} cannot fill a {rows}x{cols} matrix")
    return BlockMatrix._wrap(data.reshape(cols,rows).T,s)

def shift_matrix(n,s=1,exact=False):
    '''𝒥 = J⊗I, J the n x n matrix with ones on the superdiagonal'''
    if(n<1 or s<1):
        raise DimensionError(f"shift matrix needs n>=1 and s>=1, got n={n}, s={s}")
    J=np.eye(n,k=1)
    if(exact):
        J=to_fraction_array(J.astype(int))
    return kron(BlockMatrix._wrap(J,1),identity(1,s,exact=exact),s=s)

def matrix_power(A,k):
    A=as_block_matrix(A)
    if(A.shape[0]!=A.shape[1]):
        raise DimensionError(f"matrix power needs a square matrix, got {A.shape}")
    out=identity(A.shape[0]//A.s,A.s,exact=A.exact)
    for _ in range(k):
        out=out@A
    return out

def rank_with_tolerance(A,tol=None):
    '''numerical rank, the number of singular values above tol

    the default tol is max(rows,cols)*eps*sigma_max. exact matrices are ranked by
    fraction-free elimination and tol is ignored.
    '''
    data=_raw(A)
    if(data.size==0):
        return 0
    if(data.dtype==object):
        return fraction_rank(data)
    if(not np.all(np.isfinite(data))):
        raise NumericError("rank of a matrix with non-finite entries")
    try:
        sv=scipy.linalg.svdvals(data)
    except (np.linalg.LinAlgError,ValueError) as err:
        raise NumericError(f"singular value decomposition failed: {err}") from err
    if(sv.size==0 or sv[0]==0):
        return 0
    if(tol is None):
        tol=max(data.shape)*np.finfo(np.float64).eps*sv[0]
    rank=int(np.sum(sv>tol))
    debug(f"numerical rank {rank} of a {data.shape[0]}x{data.shape[1]} matrix, threshold {tol:.3e}")
    return rank

def resolve_tolerance(tol,*mats):
    '''absolute tolerance for residual checks

    exact operands use tol as given (default 0). float operands scale the relative tol
    (default 1e-9) by the largest entry magnitude of the operands, with floor 1.
    '''
    exact=all(isinstance(m,BlockMatrix) and m.exact for m in mats) if mats else False
    if(exact):
        return 0 if tol is None else tol
    tol=1e-9 if tol is None else tol
    scale=1.0
    for m in mats:
        scale=max(scale,float(as_block_matrix(m).max_abs()))
    return tol*scale

def max_abs_diff(A,B):
    a,b=as_block_matrix(A)._coerce(as_block_matrix(B))
    if(a.shape!=b.shape):
        raise DimensionError(f"cannot compare shapes {a.shape} and {b.shape}")
    if(a.data.size==0):
        return 0
    return max(abs(x) for x in (a.data-b.data).flat)

def is_scalar_blocks(A,tol=0):
    '''True when every block of A is a scalar multiple of I'''
    A=as_block_matrix(A)
    s=A.s
    mask=~np.eye(s,dtype=bool)
    for i in range(A.q):
        for j in range(A.r):
            blk=A.block(i,j)
            if(any(abs(x)>tol for x in blk[mask])):
                return False
            diag=np.diagonal(blk)
            if(any(abs(x-diag[0])>tol for x in diag)):
                return False
    return True

def scalar_part(A):
    '''A_0 with A = A_0⊗I, read off the (1,1) entries of the blocks'''
    A=as_block_matrix(A)
    s=A.s
    return BlockMatrix._wrap(A.data[::s,::s],1)

#solves
def dense_solve(a,b):
    '''solve the square system a x = b, singular a raises NumericError'''
    a=_raw(a)
    b=_raw(b)
    if(a.shape[0]!=a.shape[1]):
        raise DimensionError(f"square system expected, got {a.shape}")
    if(a.dtype==object or b.dtype==object):
        a=to_fraction_array(a)
        if(fraction_rank(a)<a.shape[0]):
            raise NumericError("singular matrix in linear solve")
        return fraction_solve(a,b)
    try:
        return scipy.linalg.solve(a,b)
    except (np.linalg.LinAlgError,ValueError) as err:
        raise NumericError(f"linear solve failed: {err}") from err

def inverse(A):
    A=as_block_matrix(A)
    if(A.exact):
        try:
            return BlockMatrix._wrap(fraction_inverse(A.data),A.s)
        except NumericError:
            raise NumericError("singular matrix has no inverse")
    try:
        return BlockMatrix._wrap(scipy.linalg.inv(A.data),A.s)
    except (np.linalg.LinAlgError,ValueError) as err:
        raise NumericError(f"matrix inversion failed: {err}") from err

def is_lower_block_triangular(L):
    L=as_block_matrix(L)
    for i in range(L.q):
        for j in range(i+1,L.r):
            if(any(x!=0 for x in L.block(i,j).flat)):
                return False
    return True

def block_lower_solve(L,B):
    '''block forward substitution for L X = B, L lower block triangular

    diagonal blocks of L must be invertible, B may have any number of columns.
    '''
    L=as_block_matrix(L)
    B=as_block_matrix(B,L.s)
    L,B=L._coerce(B)
    s=L.s
    n=L.q
    if(L.q!=L.r or B.shape[0]!=L.shape[0]):
        raise DimensionError(f"block forward substitution of shapes {L.shape} and {B.shape}")
    if(not is_lower_block_triangular(L)):
        raise PreconditionError("block forward substitution needs a lower block triangular matrix")
    rows=[]
    for i in range(n):
        rhs=B.data[i*s:(i+1)*s,:].copy()
        for j in range(i):
            rhs=rhs-L.block(i,j)@rows[j]
        try:
            rows.append(dense_solve(L.block(i,i),rhs))
        except NumericError:
            raise NumericError(f"diagonal block ({i+1},{i+1}) is singular")
    data=np.vstack(rows) if rows else B.data
    return BlockMatrix._wrap(np.asarray(data,dtype=B.data.dtype),B.s if B.shape[1]%B.s==0 else 1)

def block_lower_inverse(L):
    L=as_block_matrix(L)
    return block_lower_solve(L,identity(L.q,L.s,exact=L.exact))

def is_singular_block(blk,tol=None):
    '''True when the square block is singular

    exact blocks are tested by rank, float blocks by |det| <= tol with the default
    tol = s*eps*max(1,max|blk|)**s.
    '''
    blk=_raw(blk)
    s=blk.shape[0]
    if(blk.dtype==object):
        return fraction_rank(blk)<s
    if(tol is None):
        scale=max(1.0,float(np.max(np.abs(blk)))) if blk.size else 1.0
        tol=s*np.finfo(np.float64).eps*scale**s
    return abs(np.linalg.det(blk))<=tol

def condition_estimate(blk):
    '''2-norm condition number of a block, computed in double precision'''
    blk=_raw(blk).astype(np.float64)
    try:
        return float(np.linalg.cond(blk))
    except np.linalg.LinAlgError:
        return float("inf")
