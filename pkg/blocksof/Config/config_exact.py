from .define import ARITH,METHOD
from easydict import EasyDict as edict

#solve configuration
solve=edict()
solve.arith=ARITH.Exact
solve.method=METHOD.Auto
# rational arithmetic is checked for exact zero residuals
solve.tol=0
# rank by fraction-free elimination, no tolerance
solve.rank_tol=None

#log configuration
log=edict()
log.level="WARNING"
log.log_path=None
