import os
from pathlib import Path
from dotenv import load_dotenv


def load_env_files():
    """加载环境配置文件"""

    # 加载基础配置
    load_dotenv(".env")


load_env_files()


class Config:
    """应用配置类"""

    # 基础路径配置
    BASE_DIR = Path(__file__).parent.parent  # 指向项目根目录
    LOG_DIR = BASE_DIR / "logs"
    DATA_DIR = BASE_DIR / "data"  # 随仓库发布的工作区与推导文件
    OUTPUT_DIR = Path(os.getenv("OUTPUT_DIR", str(BASE_DIR / "output")))  # 反例输出目录

    # 日志配置
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_FILE = LOG_DIR / "causal_teams.log"
    LOG_MAX_BYTES = 10 * 1024 * 1024  # 10MB
    LOG_BACKUP_COUNT = 5

    # 枚举预算配置
    MAX_SEM_SIZE = int(os.getenv("MAX_SEM_SIZE", "18"))  # 精确枚举的 |Sem| 上限
    SAMPLE_COUNT = int(os.getenv("SAMPLE_COUNT", "2000"))  # 超出预算时的采样数
    RNG_SEED = int(os.getenv("RNG_SEED", "0"))
    MAX_FC_COUNT = int(os.getenv("MAX_FC_COUNT", "200000"))  # 允许物化的函数组件数上限

    # 求值配置
    RESOLUTION_CAP = int(os.getenv("RESOLUTION_CAP", "4096"))
    NODE_COUNT_WARNING = int(os.getenv("NODE_COUNT_WARNING", "1000000"))

    # 进度条（命令行 --progress 打开）
    SHOW_PROGRESS = os.getenv("SHOW_PROGRESS", "false").lower() == "true"

    @classmethod
    def create_directories(cls):
        """创建必要的目录"""
        directories = [cls.LOG_DIR, cls.OUTPUT_DIR]
        for directory in directories:
            directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def validate_budget(cls, max_sem_size: int, sample_count: int) -> bool:
        """验证枚举预算参数"""
        return max_sem_size >= 1 and sample_count >= 1

    @classmethod
    def default_budget(cls):
        """按当前配置构造默认枚举预算"""
        from common.models.budget import UniverseBudget

        return UniverseBudget(
            max_sem_size=cls.MAX_SEM_SIZE,
            sample_count=cls.SAMPLE_COUNT,
            rng_seed=cls.RNG_SEED,
        )

    @classmethod
    def get_output_path(cls, filename: str) -> Path:
        """获取反例文件保存路径"""
        cls.OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
        return cls.OUTPUT_DIR / filename
