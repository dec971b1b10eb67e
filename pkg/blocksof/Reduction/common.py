import logging

def log_reduce(msg):
    logger=logging.getLogger("REDUCE")
    logger.info(msg)
