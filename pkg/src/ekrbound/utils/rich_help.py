# -*- coding: utf-8 -*-
import argparse
from typing import Dict, Sequence, Tuple

from rich.console import Console
from rich_argparse import RichHelpFormatter

# 顶层帮助里子命令的分组顺序；未列出的命令归入最后一组
COMMAND_GROUPS: Dict[str, Tuple[str, ...]] = {
    '精确界': ('bound', 'spectrum', 'lp', 'equality', 'sweep'),
    '验证': ('oracle', 'verify'),
}


class CustomHelpFormatter(RichHelpFormatter, argparse.RawDescriptionHelpFormatter):
    """子命令按 COMMAND_GROUPS 分组显示名称和 description；description/epilog 保留换行"""

    def _format_action(self, action):
        if not isinstance(action, argparse._SubParsersAction):
            return super()._format_action(action)
        width = max((len(name) for name in action.choices), default=0) + 2
        grouped = {title: [] for title in COMMAND_GROUPS}
        for name, subparser in action.choices.items():
            title = next((t for t, names in COMMAND_GROUPS.items() if name in names), '其他')
            grouped.setdefault(title, []).append((name, subparser.description or ""))
        c = Console(force_terminal=True)
        with c.capture() as capture:
            for title, entries in grouped.items():
                if not entries:
                    continue
                c.print(f"  [dim]{title}[/dim]")
                for name, text in entries:
                    c.print(f"    [bold cyan]{name:<{width}}[/bold cyan]{text}")
        return capture.get()

    def _fill_text(self, text, width, indent):
        return text


def format_examples(examples: Sequence[Tuple[str, str]], notes: str = '') -> str:
    """(命令行, 注释) 列表 -> Rich 标记文本，注释按最长命令对齐"""
    width = max((len(cmd) for cmd, _ in examples), default=0) + 2
    lines = []
    if notes:
        lines += ["[bold]说明:[/bold]", *(f"  {line}" for line in notes.strip().splitlines()), ""]
    lines.append("[bold]示例:[/bold]")
    for cmd, comment in examples:
        lines.append(f"  {cmd:<{width}}[dim]# {comment}[/dim]" if comment else f"  {cmd}")
    return "\n".join(lines) + "\n"


def add_rich_epilog(parser: argparse.ArgumentParser, examples: Sequence[Tuple[str, str]], notes: str = '') -> None:
    """在 parser 的 help 之后追加示例段落"""
    epilog = format_examples(examples, notes)
    _orig_print_help = parser.print_help

    def _print_help_with_epilog(file=None):
        _orig_print_help(file=file)
        try:
            Console(force_terminal=True).print(epilog)
        except Exception:
            print(epilog)

    parser.print_help = _print_help_with_epilog
