from typing import Dict, List, Optional, Tuple
import re

from pydantic import BaseModel, Field, field_validator

from .config_manager import ConfigManager

IDENTIFIER = re.compile(r'^[A-Za-z][A-Za-z0-9]*$')
RESERVED_NAMES = {"x", "y"}


def parse_parameter_list(raw: Optional[str]) -> Tuple[str, ...]:
    """解析 --params 逗号分隔列表"""
    if not raw:
        return ()
    return tuple(name.strip() for name in raw.split(",") if name.strip())


def validate_parameter_names(names) -> Tuple[str, ...]:
    """参数名必须是标识符, 不能与 x, y 重名, 不能重复"""
    seen = []
    for name in names:
        if not IDENTIFIER.match(name):
            raise ValueError(f"无效的参数名: {name!r}")
        if name in RESERVED_NAMES:
            raise ValueError(f"参数名不能是基本变量: {name}")
        if name in seen:
            raise ValueError(f"参数名重复: {name}")
        seen.append(name)
    return tuple(seen)


class ExtractionSettings(BaseModel):
    """根系数提取的搜索范围"""

    laurent_bound: int = Field(default=3, ge=0, le=8)
    power_bound: int = Field(default=3, ge=0, le=8)

    @classmethod
    def from_config(cls) -> "ExtractionSettings":
        return cls(**ConfigManager().section("extraction"))


class GeometrySettings(BaseModel):
    """规范搜索与度规积分参数"""

    gauge_bound: int = Field(default=2, ge=0, le=3)
    tolerance: float = Field(default=1e-8, gt=0)
    steps_per_unit: int = Field(default=1024, ge=1)

    @classmethod
    def from_config(cls) -> "GeometrySettings":
        return cls(**ConfigManager().section("geometry"))


class CliConfig(BaseModel):
    """命令行配置"""

    command: str
    input: Optional[str] = None
    parameters: Tuple[str, ...] = ()
    output_format: str = "text"
    gauge: Optional[Dict[str, str]] = None
    gauge_bound: int = 2
    tolerance: float = 1e-8
    steps: int = 1024

    @field_validator('parameters', mode='before')
    @classmethod
    def validate_parameters(cls, v) -> Tuple[str, ...]:
        if isinstance(v, str):
            v = parse_parameter_list(v)
        return validate_parameter_names(v or ())

    @field_validator('output_format')
    @classmethod
    def validate_format(cls, v: str) -> str:
        if v.lower() not in {"text", "json"}:
            raise ValueError("输出格式必须是 text 或 json")
        return v.lower()

    @field_validator('gauge_bound')
    @classmethod
    def validate_bound(cls, v: int) -> int:
        if not 0 <= v <= 3:
            raise ValueError("规范搜索幂次上界必须在 0 到 3 之间")
        return v

    @field_validator('tolerance')
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("容差必须为正数")
        return v

    @field_validator('steps')
    @classmethod
    def validate_steps(cls, v: int) -> int:
        if v < 1:
            raise ValueError("步数必须为正整数")
        return v

    @field_validator('gauge', mode='before')
    @classmethod
    def validate_gauge(cls, v):
        if v is None or isinstance(v, dict):
            return v
        return parse_gauge_override(v)


def parse_gauge_override(raw: str) -> Dict[str, str]:
    """解析 "b=...,e=..." 形式的规范覆盖"""
    result: Dict[str, str] = {}
    for part in _split_top_level(raw):
        if "=" not in part:
            raise ValueError(f"规范覆盖格式错误: {part!r}")
        key, value = part.split("=", 1)
        key = key.strip()
        if key not in {"b", "e"}:
            raise ValueError(f"规范只能指定 b 或 e: {key}")
        result[key] = value.strip()
    return result


def _split_top_level(raw: str) -> List[str]:
    parts, depth, current = [], 0, []
    for ch in raw:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        parts.append("".join(current))
    return [p for p in parts if p.strip()]
