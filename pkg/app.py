import argparse

from modules import modules


def create_parser() -> argparse.ArgumentParser:
    """创建命令行解析器并注册全部命令组"""
    parser = argparse.ArgumentParser(
        prog="causal-teams",
        description="因果团队与广义因果团队上的反事实逻辑工具",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="<command>")
    subparsers.required = True
    # 注册各命令组
    for register in modules:
        register(subparsers)
    return parser
