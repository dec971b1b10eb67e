import logging

def log_system(msg):
    logger=logging.getLogger("SYSTEM")
    logger.info(msg)
