#!/usr/bin/env python3
"""
branchforge - 双覆盖不变量的精确计算平台

主程序入口文件

    python main.py command=kummer out_dir=reports golden_dir=golden
    python main.py command=invariants config=configs/covers/example2.json
"""

import logging
import sys

import hydra
from omegaconf import DictConfig

from branchforge.cli import run, setup_logging


@hydra.main(version_base=None, config_path="configs", config_name="branchforge")
def main(cfg: DictConfig):
    """主函数"""
    setup_logging(cfg.get("log_level", "INFO"))

    logging.info("启动 branchforge")
    logging.debug(f"配置: {cfg}")

    try:
        exit_code = run(cfg)
    except KeyboardInterrupt:
        logging.info("用户中断程序")
        exit_code = 130
    except Exception as e:
        logging.error(f"程序运行出错: {e}")
        raise
    if exit_code:
        sys.exit(exit_code)


if __name__ == "__main__":
    main()
