from typing import Any, Dict, Optional
import os
from pathlib import Path

import yaml

from .logger import Logger

PROJECT_ROOT = Path(__file__).resolve().parents[2]


class ConfigManager:
    """配置管理器

    职责:
    1. 系统配置管理 (data/config/system_config.yml)
    2. 环境变量 CONDLIN_CONFIG 指定的替代配置文件
    3. 按段读取配置值并提供默认值
    """

    _instances: Dict[Path, "ConfigManager"] = {}

    def __new__(cls, config_file: Optional[Path] = None):
        path = cls._resolve_path(config_file)
        if path not in cls._instances:
            instance = super(ConfigManager, cls).__new__(cls)
            instance._init_config(path)
            cls._instances[path] = instance
        return cls._instances[path]

    @staticmethod
    def _resolve_path(config_file: Optional[Path]) -> Path:
        if config_file is not None:
            return Path(config_file).resolve()
        override = os.environ.get("CONDLIN_CONFIG")
        if override:
            return Path(override).resolve()
        return PROJECT_ROOT / "data" / "config" / "system_config.yml"

    def _init_config(self, path: Path) -> None:
        """初始化配置管理器"""
        self.logger = Logger("config")
        self.system_config_file = path
        self.system_config = self._load_system_config()

    def _load_system_config(self) -> Dict:
        """加载系统配置"""
        try:
            if not self.system_config_file.exists():
                self.logger.warning(
                    f"系统配置文件不存在, 使用默认值: {self.system_config_file}"
                )
                return {}

            with open(self.system_config_file, 'r', encoding='utf-8') as f:
                config = yaml.safe_load(f)
                if not config:
                    self.logger.warning("系统配置为空")
                    return {}
                return config

        except Exception as e:
            self.logger.error(f"加载系统配置失败: {str(e)}")
            return {}

    def get(self, section: str, key: str, default: Any = None) -> Optional[Any]:
        """获取系统配置值

        Args:
            section: 配置段
            key: 配置键
            default: 默认值

        Returns:
            Any: 配置值

        Raises:
            ValueError: 如果必要的配置不存在且未提供默认值
        """
        value = (self.system_config.get(section) or {}).get(key)
        if value is None and default is None:
            raise ValueError(f"必要的配置项不存在: {section}.{key}")
        return value if value is not None else default

    def section(self, section: str) -> Dict[str, Any]:
        """获取整个配置段"""
        return dict(self.system_config.get(section) or {})

    def resolve_path(self, section: str, key: str, default: str) -> Path:
        """把配置中的相对路径解析到项目根目录"""
        path = Path(self.get(section, key, default))
        return path if path.is_absolute() else PROJECT_ROOT / path
