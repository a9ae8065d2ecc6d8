# ekrbound/utils/__init__.py
"""
ekrbound 命令行辅助模块
"""
from .log_utils import init_logger
from .rich_help import CustomHelpFormatter, add_rich_epilog

__all__ = ['init_logger', 'CustomHelpFormatter', 'add_rich_epilog']
