import logging

def log_assign(msg):
    logger=logging.getLogger("ASSIGN")
    logger.info(msg)

def warn_assign(msg):
    logger=logging.getLogger("ASSIGN")
    logger.warning(msg)
