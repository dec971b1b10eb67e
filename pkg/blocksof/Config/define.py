from enum import Enum

class ARITH(Enum):
    Float=0
    Exact=1

class METHOD(Enum):
    Auto=0
    General=1
    Scalar_h=2
    Scalar_fg=3
    Scalar_all=4

class FORM(Enum):
    Frobenius=0
    Hessenberg=1
    General=2

class UNROLL(Enum):
    CR=0
    RR=1
    RC=2
    CC=3

#errors
class BlocksofError(Exception):
    '''base class of every error raised by blocksof'''
    exit_code=1

class DimensionError(BlocksofError):
    exit_code=3

class SchemaError(BlocksofError):
    exit_code=3

class PreconditionError(BlocksofError):
    exit_code=3

class SolventSetError(BlocksofError):
    exit_code=3

class UnsolvableError(BlocksofError):
    '''the linear system for the gain has no solution

    carries the least squares residual, and the rank facts when known, so that callers can
    report "test inconclusive" rather than a proof of unsolvability.
    '''
    exit_code=2
    def __init__(self,msg,residual=None,rank=None,required=None):
        super().__init__(msg)
        self.residual=residual
        self.rank=rank
        self.required=required

class NumericError(BlocksofError):
    exit_code=4
