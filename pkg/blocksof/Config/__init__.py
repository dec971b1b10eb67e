import os
import logging
from copy import deepcopy
from easydict import EasyDict as edict
from .define import *
update_solve,update_log=edict(),edict()

#default solve config
update_solve.arith=ARITH.Float
update_solve.method=METHOD.Auto

#loggers configured by get_config, one per subpackage
logger_names=["INFO","ALGEBRA","REDUCE","SYSTEM","ASSIGN","SOLVENT"]

#get configure api
def get_config():
    '''get the config object with all the configuration information

    get the config object based on the previous setting functions,
    the config object will be passed to the factory functions of the Assignment and Solvents
    modules to construct the synthesis pipeline.

    only the setting functions called before this get_config function is valid, thus
    use this function after all configuration done.

    Parameters
    ----------
    None

    Returns
    -------
    config object
        an edict object contains all the configuration information.

    '''
    # import basic configurations
    if(update_solve.arith==ARITH.Exact):
        from .config_exact import solve,log
    else:
        from .config_float import solve,log
    # merge settings with basic configurations
    solve=deepcopy(solve)
    log=deepcopy(log)
    solve.update(update_solve)
    log.update(update_log)
    # assemble configure
    config=edict()
    config.solve=solve
    config.log=log

    # logging configure
    level=getattr(logging,str(config.log.level).upper(),logging.WARNING)
    if(config.log.log_path is not None):
        log_dir=os.path.dirname(config.log.log_path)
        if(log_dir!=""):
            os.makedirs(log_dir,exist_ok=True)
    for name in logger_names:
        logger=logging.getLogger(name=name)
        logger.setLevel(level)
        logger.propagate=False
        # stream handler, stderr only, stdout carries the result documents
        if(not any(getattr(handler,"_blocksof_stream",False) for handler in logger.handlers)):
            cHandler=logging.StreamHandler()
            cHandler.setFormatter(logging.Formatter("[%(name)s] %(levelname)s: %(message)s"))
            cHandler._blocksof_stream=True
            logger.addHandler(cHandler)
        # file handler
        if(config.log.log_path is not None):
            path=os.path.abspath(config.log.log_path)
            if(not any(getattr(handler,"baseFilename",None)==path for handler in logger.handlers)):
                fHandler=logging.FileHandler(path,mode="a")
                fHandler.setFormatter(logging.Formatter("%(asctime)s [%(name)s] %(levelname)s: %(message)s"))
                logger.addHandler(fHandler)

    info(f"Configuration initialized! arith:{config.solve.arith.name} method:{config.solve.method.name}")
    return config

#set configure api
#solve configure api
def set_arith(arith):
    '''set the scalar backend of every computation

    Parameters
    ----------
    arg1 : Config.ARITH
        a enum value of enum class Config.ARITH, available options:
|           Config.ARITH.Float (double precision, default)
|           Config.ARITH.Exact (rational arithmetic with fractions.Fraction)

    Returns
    -------
    None
    '''
    update_solve.arith=arith
    info(f"Arithmetic set to {arith.name}!")

def set_exact(exact_flag):
    '''shortcut of set_arith, True selects Config.ARITH.Exact'''
    set_arith(ARITH.Exact if exact_flag else ARITH.Float)

def set_method(method):
    '''set gain synthesis method

    Parameters
    ----------
    arg1 : Config.METHOD
        a enum value of enum class Config.METHOD, available options:
|           Config.METHOD.Auto (first applicable of Scalar_all, Scalar_h, Scalar_fg, General)
|           Config.METHOD.General
|           Config.METHOD.Scalar_h
|           Config.METHOD.Scalar_fg
|           Config.METHOD.Scalar_all

    Returns
    -------
    None
    '''
    update_solve.method=method
    info(f"Synthesis method set to {method.name}!")

def set_tolerance(tol):
    '''set residual tolerance

    float mode tolerances are relative to the largest entry magnitude of the operands,
    exact mode uses 0 unless overridden.

    Parameters
    ----------
    arg1 : float or None
        tolerance, None stands for the default of the chosen arithmetic

    Returns
    -------
    None
    '''
    if(tol is None):
        if("tol" in update_solve):
            update_solve.pop("tol")
    else:
        update_solve.tol=tol

def set_rank_tolerance(rank_tol):
    '''set the singular value threshold used by numerical rank tests

    Parameters
    ----------
    arg1 : float or None
        threshold, None stands for max(rows,cols)*eps*sigma_max

    Returns
    -------
    None
    '''
    if(rank_tol is None):
        if("rank_tol" in update_solve):
            update_solve.pop("rank_tol")
    else:
        update_solve.rank_tol=rank_tol

#log configure api
def set_log_level(level):
    '''set level of every blocksof logger

    Parameters
    ----------
    arg1 : str
        logging level name, e.g. "INFO", "DEBUG", "WARNING"

    Returns
    -------
    None
    '''
    update_log.level=level

def set_log_path(log_path):
    '''set the file additionally receiving the log records

    Parameters
    ----------
    arg1 : str or None
        log file path, None disables file logging

    Returns
    -------
    None
    '''
    update_log.log_path=log_path

def info(msg):
    info_logger=logging.getLogger("INFO")
    info_logger.info(msg)
