"""
YAML configuration loading
"""
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from loguru import logger

DEFAULT_CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"


def load_config(name: str, config_dir: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Load one YAML configuration file

    Args:
        name: File name, with or without the .yaml suffix
        config_dir: Directory to read from (defaults to the packaged config/)

    Returns:
        Parsed mapping, or {} when the file is missing or malformed
    """
    filename = name if name.endswith((".yaml", ".yml")) else f"{name}.yaml"
    config_path = Path(config_dir or DEFAULT_CONFIG_DIR) / filename
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except Exception as e:
        logger.error(f"Failed to load config {filename}: {e}")
        return {}
    if data is None:
        return {}
    if not isinstance(data, dict):
        logger.error(f"Config {filename} must contain a mapping, got {type(data).__name__}")
        return {}
    return data
