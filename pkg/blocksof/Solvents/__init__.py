from functools import partial
from .solvents import SolventSet,as_solvent_set,block_vandermonde,vandermonde_ranks,is_vandermonde_singular
from .solvents import gammas_from_solvents,verify_solvent,assign_solvents
from .common import log_solvent as log

def get_assign_solvents(config):
    '''get the solvent pipeline bound to the configured method, tolerances and arithmetic

    Parameters
    ----------
    arg1 : config object
        the config object return by Config.get_config() function

    Returns
    -------
    function
        assign_solvents(sys, ss) -> AssignmentResult
    '''
    solve=config.solve
    log(f"Solvent assignment configured: method {solve.method.name}, arith {solve.arith.name}")
    return partial(assign_solvents,method=solve.method,tol=solve.tol,rank_tol=solve.rank_tol,arith=solve.arith)
