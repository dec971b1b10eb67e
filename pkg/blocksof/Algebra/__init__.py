from .blockmat import BlockMatrix
from .blockmat import zeros,identity,eye_block,zero_block,from_blocks,as_block_matrix
from .blockmat import kron,star,block_trace,block_transpose,unroll,unroll_inverse
from .blockmat import vecc,vecr,vecc_inverse,shift_matrix,matrix_power,rank_with_tolerance
from .blockmat import resolve_tolerance,max_abs_diff,is_scalar_blocks,scalar_part
from .blockmat import dense_solve,inverse,is_lower_block_triangular,block_lower_solve,block_lower_inverse
from .blockmat import is_singular_block,condition_estimate
from .exact import to_fraction,to_fraction_array,fraction_rank,fraction_solve,fraction_inverse
from ..Config.define import UNROLL
