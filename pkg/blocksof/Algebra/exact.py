"""Rational arithmetic on numpy object arrays of fractions.Fraction."""
import math
from fractions import Fraction

import numpy as np

from ..Config.define import DimensionError,NumericError,UnsolvableError

def to_fraction(x):
    '''exact value of x

    floats become the shortest fraction with denominator up to 10¹² that maps back to the same
    float, or the exact binary value when there is none, so 0.1 gives 1/10 and 1e-13 stays nonzero.
    '''
    if isinstance(x,Fraction):
        return x
    if isinstance(x,str):
        return Fraction(x.strip())
    if isinstance(x,(float,np.floating)):
        if(not np.isfinite(x)):
            raise NumericError(f"non-finite entry {x} cannot be represented exactly")
        value=Fraction(float(x))
        short=value.limit_denominator(10**12)
        return short if float(short)==float(x) else value
    return Fraction(int(x))

def to_fraction_array(data):
    data=np.asarray(data,dtype=object)
    if(data.ndim==0):
        return np.array(to_fraction(data.item()),dtype=object)
    out=np.empty(data.shape,dtype=object)
    for idx,x in np.ndenumerate(data):
        out[idx]=to_fraction(x)
    return out

def fraction_identity(n):
    return np.array([[Fraction(int(i==j)) for j in range(n)] for i in range(n)],dtype=object).reshape(n,n)

def fraction_zeros(shape):
    out=np.empty(shape,dtype=object)
    out.fill(Fraction(0))
    return out

def fraction_rank(a):
    '''rank by fraction-free (Bareiss) elimination

    each row is first scaled by the least common multiple of its denominators, which keeps the
    rank and makes every entry an integer. no tolerance is involved.
    '''
    a=np.asarray(a,dtype=object)
    if(a.size==0):
        return 0
    mat=[]
    for row in a:
        row=[to_fraction(x) for x in row]
        den=1
        for x in row:
            den=den*x.denominator//math.gcd(den,x.denominator)
        mat.append([int(x*den) for x in row])
    n_rows,n_cols=len(mat),len(mat[0])
    rank=0
    prev=1
    for col in range(n_cols):
        pivot=None
        for i in range(rank,n_rows):
            if(mat[i][col]!=0):
                pivot=i
                break
        if(pivot is None):
            continue
        mat[rank],mat[pivot]=mat[pivot],mat[rank]
        head=mat[rank]
        for i in range(rank+1,n_rows):
            row=mat[i]
            lead=row[col]
            for j in range(col+1,n_cols):
                row[j]=(head[col]*row[j]-lead*head[j])//prev
            row[col]=0
        prev=head[col]
        rank+=1
        if(rank==n_rows):
            break
    return rank

def fraction_solve(a,b):
    '''solve a x = b exactly by Gauss-Jordan elimination

    singular but consistent systems are accepted, free variables are set to zero.
    an inconsistent system raises UnsolvableError.

    Parameters
    ----------
    arg1 : object array (n_rows, n_cols)
    arg2 : object array (n_rows,) or (n_rows, n_rhs)

    Returns
    -------
    object array (n_cols,) or (n_cols, n_rhs)
    '''
    a=to_fraction_array(a)
    b=to_fraction_array(b)
    vector_rhs=(b.ndim==1)
    if(vector_rhs):
        b=b.reshape(-1,1)
    n_rows,n_cols=a.shape
    if(b.shape[0]!=n_rows):
        raise DimensionError(f"right hand side has {b.shape[0]} rows, expected {n_rows}")
    x=a.copy()
    y=b.copy()
    pivots=[]
    row=0
    for col in range(n_cols):
        if(row==n_rows):
            break
        pivot=None
        for i in range(row,n_rows):
            if(x[i,col]!=0):
                pivot=i
                break
        if(pivot is None):
            continue
        if(pivot!=row):
            x[[row,pivot]]=x[[pivot,row]]
            y[[row,pivot]]=y[[pivot,row]]
        y[row,:]/=x[row,col]
        x[row,:]/=x[row,col]
        for i in range(n_rows):
            if(i!=row and x[i,col]!=0):
                factor=x[i,col]
                y[i,:]-=factor*y[row,:]
                x[i,:]-=factor*x[row,:]
        pivots.append(col)
        row+=1
    for i in range(row,n_rows):
        if(any(value!=0 for value in y[i,:])):
            raise UnsolvableError(f"inconsistent linear system: rank {row} of {n_rows} equations",rank=row,required=n_rows)
    sol=fraction_zeros((n_cols,y.shape[1]))
    for i,col in enumerate(pivots):
        sol[col,:]=y[i,:]
    if(vector_rhs):
        sol=sol.reshape(-1)
    return sol

def fraction_inverse(a):
    a=to_fraction_array(a)
    n=a.shape[0]
    if(a.shape!=(n,n)):
        raise DimensionError(f"matrix of shape {a.shape} is not square")
    if(fraction_rank(a)<n):
        raise NumericError("matrix is not invertible")
    return fraction_solve(a,fraction_identity(n))
