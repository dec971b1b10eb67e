import logging

def debug_algebra(msg):
    logger=logging.getLogger("ALGEBRA")
    logger.debug(msg)
