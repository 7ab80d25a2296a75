import os
from typing import Optional

import psutil
from dotenv import load_dotenv

# 加载 .env 文件
load_dotenv()


class EnvConfig:
    """环境变量配置类"""

    @staticmethod
    def get_worker_count(cpu_count: Optional[int] = None) -> int:
        """
        获取枚举工作进程数配置

        Args:
            cpu_count: CPU核心数，为空时由 psutil 获取

        Returns:
            int: 配置的进程数或自动计算的进程数
        """
        env_jobs = os.getenv("CAUSAL_TEAMS_JOBS")
        if env_jobs and env_jobs.isdigit() and int(env_jobs) > 0:
            return min(int(env_jobs), 32)  # 限制最大32个进程
        if cpu_count is None:
            cpu_count = psutil.cpu_count(logical=False) or 1
        return max(1, min(cpu_count, 32))
