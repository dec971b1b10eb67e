import numpy as np

from ..Config.define import FORM,DimensionError
from ..Algebra import BlockMatrix,as_block_matrix,from_blocks,eye_block,zero_block,to_fraction_array
from ..Algebra import resolve_tolerance,is_singular_block,max_abs_diff
from .common import log_system as log

def as_form(form):
    if isinstance(form,FORM):
        return form
    return FORM[str(form).strip().capitalize()]

def _as_block(blk,exact):
    blk=np.asarray(blk)
    if(blk.ndim==0):
        blk=blk.reshape(1,1)
    if(exact):
        return to_fraction_array(blk)
    return blk.astype(np.float64)

class TargetCoefficients:
    '''ordered coefficients Γ_1..Γ_n of Ψ(λ) = Iλ^n + Γ_1λ^(n-1) + ... + Γ_n

    Parameters
    ----------
    arg1 : list of s x s array_like
        Γ_1 first
    arg2 : bool or None
        exact rational storage, None keeps object arrays exact and everything else float
    '''
    def __init__(self,gammas,exact=None):
        gammas=[np.asarray(g) for g in gammas]
        if(len(gammas)==0):
            raise DimensionError("at least one target coefficient is required")
        if(exact is None):
            exact=any(g.dtype==object for g in gammas)
        gammas=[_as_block(g,exact) for g in gammas]
        s=gammas[0].shape[0]
        for i,g in enumerate(gammas):
            if(g.shape!=(s,s)):
                raise DimensionError(f"Γ_{i+1} has shape {g.shape}, expected ({s},{s})")
        for g in gammas:
            g.flags.writeable=False
        self.gammas=gammas
        self.s=s
        self.exact=exact

    @property
    def n(self):
        return len(self.gammas)

    def __len__(self):
        return len(self.gammas)

    def __getitem__(self,idx):
        return self.gammas[idx]

    def __iter__(self):
        return iter(self.gammas)

    def stacked(self):
        '''Γ̂ = col(Γ_1, ..., Γ_n), ns x s with block size s'''
        return from_blocks([[g] for g in self.gammas],s=self.s,exact=self.exact)

    @classmethod
    def from_stacked(cls,M):
        M=as_block_matrix(M)
        return cls([M.block(i,0) for i in range(M.q)],exact=M.exact)

    def to_exact(self):
        return TargetCoefficients(self.gammas,exact=True)

    def to_float(self):
        return TargetCoefficients(self.gammas,exact=False)

    def equals(self,other,tol=0):
        if(len(other)!=self.n):
            return False
        return all(max_abs_diff(a,b)<=tol for a,b in zip(self.gammas,other))

    def __repr__(self):
        return f"TargetCoefficients(n={self.n}, s={self.s})"

def as_targets(gammas):
    if isinstance(gammas,TargetCoefficients):
        return gammas
    return TargetCoefficients(gammas)

class BlockSystem:
    '''ẋ = F x + G u, y = H x with F n x n, G n x m and H k x n blocks of size s

    the structural form is declared by the caller and checked by validate(), never inferred.

    Parameters
    ----------
    arg1 : BlockMatrix or array_like
        F, ns x ns
    arg2 : BlockMatrix or array_like
        G, ns x ms
    arg3 : BlockMatrix or array_like
        H, ks x ns
    arg4 : int
        p, 1-based index of the last block column of H allowed to be nonzero
    arg5 : Config.FORM or str
        frobenius, hessenberg or general
    arg6 : int or None
        block size s, taken from F when F is a BlockMatrix
    '''
    def __init__(self,F,G,H,p,form=FORM.Frobenius,s=None,exact=None):
        if(s is None):
            s=F.s if isinstance(F,BlockMatrix) else 1
        mats=[]
        for name,mat in (("F",F),("G",G),("H",H)):
            try:
                mats.append(BlockMatrix(mat,s,exact=exact))
            except DimensionError as err:
                raise DimensionError(f"{name}: {err}") from err
        if(exact is None and len({m.exact for m in mats})>1):
            mats=[m.to_float() for m in mats]
        F,G,H=mats
        if(F.q!=F.r):
            raise DimensionError(f"F must be block square, got {F.q}x{F.r} blocks of size {s}")
        if(G.q!=F.q):
            raise DimensionError(f"G has {G.q} block rows, F has {F.q}")
        if(H.r!=F.q):
            raise DimensionError(f"H has {H.r} block columns, F has {F.q}")
        n=F.q
        if(not (1<=int(p)<=n)):
            raise DimensionError(f"p must lie in 1..{n}, got {p}")
        self.F,self.G,self.H=F,G,H
        self.p=int(p)
        self.form=as_form(form)

    @property
    def n(self):
        return self.F.q

    @property
    def s(self):
        return self.F.s

    @property
    def m(self):
        return self.G.r

    @property
    def k(self):
        return self.H.q

    @property
    def exact(self):
        return self.F.exact

    def coefficients(self):
        '''A_1..A_n read off the last block row (-A_n, ..., -A_1) of F'''
        n=self.n
        return [-self.F.block(n-1,n-i) for i in range(1,n+1)]

    def with_matrices(self,F,G,H,form=None):
        return BlockSystem(F,G,H,self.p,self.form if form is None else form,s=self.s)

    def to_exact(self):
        return BlockSystem(self.F.to_exact(),self.G.to_exact(),self.H.to_exact(),self.p,self.form)

    def to_float(self):
        return BlockSystem(self.F.to_float(),self.G.to_float(),self.H.to_float(),self.p,self.form)

    def __repr__(self):
        return (f"BlockSystem(n={self.n}, s={self.s}, m={self.m}, k={self.k}, p={self.p}, "
                f"form={self.form.name}, {'exact' if self.exact else 'float'})")

class Violation:
    '''one failed structural condition, block indices are 1-based'''
    def __init__(self,matrix,block,condition):
        self.matrix=matrix
        self.block=block
        self.condition=condition

    def __str__(self):
        return f"{self.matrix} block ({self.block[0]},{self.block[1]}): {self.condition}"

    __repr__=__str__

def _exceeds(blk,target,tol):
    return any(abs(x)>tol for x in (np.asarray(blk)-np.asarray(target)).flat)

def _zero_pattern_violations(sys,tol):
    ret=[]
    for i in range(sys.p-1):
        for j in range(sys.m):
            if(_exceeds(sys.G.block(i,j),0,tol)):
                ret.append(Violation("G",(i+1,j+1),f"expected zero block in the first p-1={sys.p-1} block rows"))
    for i in range(sys.k):
        for j in range(sys.p,sys.n):
            if(_exceeds(sys.H.block(i,j),0,tol)):
                ret.append(Violation("H",(i+1,j+1),f"expected zero block in the last n-p={sys.n-sys.p} block columns"))
    return ret

def validate(sys,tol=None):
    '''structural violations of the declared form

    frobenius: identity superdiagonal blocks and zero blocks elsewhere in the first n-1 block
    rows of F. hessenberg: zero blocks above the block superdiagonal of F and nonsingular
    superdiagonal blocks. both forms need zero first p-1 block rows of G and zero last n-p block
    columns of H. the general form has no pattern.

    Parameters
    ----------
    arg1 : BlockSystem
    arg2 : float or None
        tolerance, see Algebra.resolve_tolerance

    Returns
    -------
    list of Violation, empty when the pattern holds
    '''
    F=sys.F
    n,s=sys.n,sys.s
    tol=resolve_tolerance(tol,F,sys.G,sys.H)
    ret=[]
    if(sys.form==FORM.Frobenius):
        eye=eye_block(s,sys.exact)
        for i in range(n-1):
            for j in range(n):
                if(j==i+1):
                    if(_exceeds(F.block(i,j),eye,tol)):
                        ret.append(Violation("F",(i+1,j+1),"expected identity block on the block superdiagonal"))
                elif(_exceeds(F.block(i,j),0,tol)):
                    ret.append(Violation("F",(i+1,j+1),"expected zero block in the first n-1 block rows"))
        ret+=_zero_pattern_violations(sys,tol)
    elif(sys.form==FORM.Hessenberg):
        for i in range(n):
            for j in range(i+2,n):
                if(_exceeds(F.block(i,j),0,tol)):
                    ret.append(Violation("F",(i+1,j+1),"expected zero block above the block superdiagonal"))
        for i in range(n-1):
            if(is_singular_block(F.block(i,i+1))):
                ret.append(Violation("F",(i+1,i+2),"singular block on the block superdiagonal"))
        ret+=_zero_pattern_violations(sys,tol)
    for violation in ret:
        log(f"Violation: {violation}")
    return ret

def closed_loop(sys,Q):
    '''F + G Q H'''
    Q=as_block_matrix(Q,sys.s)
    if(Q.shape!=(sys.m*sys.s,sys.k*sys.s)):
        raise DimensionError(f"gain must be {sys.m*sys.s}x{sys.k*sys.s}, got {Q.shape[0]}x{Q.shape[1]}")
    Q=Q.with_block_size(sys.s)
    return sys.F+sys.G@Q@sys.H

def frobenius_from_coeffs(gammas):
    '''lower block Frobenius matrix with identity superdiagonal and last block row (-Γ_n, ..., -Γ_1)'''
    gammas=as_targets(gammas)
    n,s,exact=gammas.n,gammas.s,gammas.exact
    rows=[]
    for i in range(n-1):
        rows.append([eye_block(s,exact) if j==i+1 else zero_block(s,exact=exact) for j in range(n)])
    rows.append([-gammas[n-1-j] for j in range(n)])
    return from_blocks(rows,s=s,exact=exact)
