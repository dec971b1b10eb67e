import numpy as np

from ..Config.define import FORM,DimensionError
from ..Algebra import from_blocks,zero_block,block_transpose,block_lower_solve,to_fraction_array
from .system import BlockSystem,TargetCoefficients,frobenius_from_coeffs
from .common import log_system as log

class HigherOrderOde:
    '''x^(n) + A_1 x^(n-1) + ... + A_n x = Σ_{l=p..n} Σ_α B_{lα} u_α^(n-l),  y_β = Σ_{ν=1..p} C_{νβ} x^(ν-1)

    Parameters
    ----------
    arg1 : list of s x s array_like
        A_1..A_n
    arg2 : dict
        (l, α) -> B_{lα}, 1-based, l in p..n, α in 1..m; missing entries are zero blocks
    arg3 : dict
        (ν, β) -> C_{νβ}, 1-based, ν in 1..p, β in 1..k; missing entries are zero blocks
    arg4 : int
        p
    arg5 : int
        m, the number of input blocks
    arg6 : int
        k, the number of output blocks
    '''
    def __init__(self,A,B,C,p,m,k,exact=None):
        A=[np.asarray(a) for a in A]
        if(len(A)==0):
            raise DimensionError("the equation needs at least one coefficient A_1")
        if(exact is None):
            exact=any(a.dtype==object for a in A)
        self.exact=exact
        self.A=[self._convert(a) for a in A]
        self.s=self.A[0].shape[0]
        self.n=len(A)
        self.p=int(p)
        self.m=int(m)
        self.k=int(k)
        if(not (1<=self.p<=self.n)):
            raise DimensionError(f"p must lie in 1..{self.n}, got {p}")
        for i,a in enumerate(self.A):
            if(a.shape!=(self.s,self.s)):
                raise DimensionError(f"A_{i+1} has shape {a.shape}, expected ({self.s},{self.s})")
        self.B={}
        for (l,alpha),blk in dict(B).items():
            if(not (self.p<=l<=self.n and 1<=alpha<=self.m)):
                raise DimensionError(f"B_({l},{alpha}) outside l in {self.p}..{self.n}, alpha in 1..{self.m}")
            self.B[(l,alpha)]=self._checked(blk,f"B_({l},{alpha})")
        self.C={}
        for (nu,beta),blk in dict(C).items():
            if(not (1<=nu<=self.p and 1<=beta<=self.k)):
                raise DimensionError(f"C_({nu},{beta}) outside nu in 1..{self.p}, beta in 1..{self.k}")
            self.C[(nu,beta)]=self._checked(blk,f"C_({nu},{beta})")

    def _convert(self,blk):
        blk=np.asarray(blk)
        return to_fraction_array(blk) if self.exact else blk.astype(np.float64)

    def _checked(self,blk,name):
        blk=self._convert(blk)
        if(blk.shape!=(self.s,self.s)):
            raise DimensionError(f"{name} has shape {blk.shape}, expected ({self.s},{self.s})")
        return blk

    def B_block(self,l,alpha):
        return self.B.get((l,alpha),zero_block(self.s,exact=self.exact))

    def C_block(self,nu,beta):
        return self.C.get((nu,beta),zero_block(self.s,exact=self.exact))

def companion_from_ode(ode):
    '''the block companion realization (𝒜, ℬ, 𝒞) of the equation and the matrix P of its coefficients'''
    from ..Reduction import build_P
    n,s,exact=ode.n,ode.s,ode.exact
    cal_A=frobenius_from_coeffs(TargetCoefficients(ode.A,exact=exact))
    cal_B=from_blocks([[ode.B_block(l,alpha) if l>=ode.p else zero_block(s,exact=exact)
                        for alpha in range(1,ode.m+1)] for l in range(1,n+1)],s=s,exact=exact)
    cal_C=from_blocks([[ode.C_block(nu,beta) if nu<=ode.p else zero_block(s,exact=exact)
                        for beta in range(1,ode.k+1)] for nu in range(1,n+1)],s=s,exact=exact)
    P=build_P(ode.A)
    return cal_A,cal_B,cal_C,P

def ode_to_state_space(ode):
    '''equivalent block state space system (𝒜, P⁻¹ℬ, 𝒞^𝒯) in frobenius form'''
    cal_A,cal_B,cal_C,P=companion_from_ode(ode)
    G=block_lower_solve(P,cal_B)
    H=block_transpose(cal_C)
    log(f"Converted order {ode.n} equation with s={ode.s}, m={ode.m}, k={ode.k}, p={ode.p}")
    return BlockSystem(cal_A,G,H,ode.p,FORM.Frobenius,s=ode.s)
