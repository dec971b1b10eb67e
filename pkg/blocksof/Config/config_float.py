from .define import ARITH,METHOD
from easydict import EasyDict as edict

#solve configuration
solve=edict()
solve.arith=ARITH.Float
solve.method=METHOD.Auto
# relative tolerance, scaled by the largest entry magnitude of the operands (floor 1)
solve.tol=1e-9
# None stands for max(rows,cols)*eps*sigma_max
solve.rank_tol=None

#log configuration
log=edict()
log.level="WARNING"
log.log_path=None
