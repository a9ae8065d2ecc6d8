# -*- coding: utf-8 -*-
import logging
from pathlib import Path
from typing import Optional, Union

LOGGER_NAME = 'ekrbound'


def init_logger(verbose: bool = False, quiet: bool = False,
                log_file: Optional[Union[str, Path]] = None) -> logging.Logger:
    """配置包日志：控制台 + 可选文件，时间精确到秒

    重复调用会先移除旧的 handler，避免同一条日志输出多次。
    """
    logger = logging.getLogger(LOGGER_NAME)
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logger.setLevel(level)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(
        fmt='%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_file = Path(log_file)
        try:
            log_file.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
            logger.debug("日志文件: %s", log_file)
        except OSError as e:
            logger.error("无法创建日志文件: %s", e)
    return logger
