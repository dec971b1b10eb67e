import logging

def log_solvent(msg):
    logger=logging.getLogger("SOLVENT")
    logger.info(msg)
