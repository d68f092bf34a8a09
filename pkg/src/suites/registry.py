"""Suite registry: name -> suite instance"""

from typing import Dict, List, Type

from ..core.base_suite import BaseSuite
from ..core.errors import ConfigError

_REGISTRY: Dict[str, BaseSuite] = {}


def register(cls: Type[BaseSuite]) -> Type[BaseSuite]:
    """Class decorator adding a suite under its name"""
    if not cls.name:
        raise ValueError(f"{cls.__name__} has no suite name")
    if cls.name in _REGISTRY:
        raise ValueError(f"Suite {cls.name!r} registered twice")
    _REGISTRY[cls.name] = cls()
    return cls


def get_suite(name: str) -> BaseSuite:
    """Raises ConfigError for an unknown suite name"""
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ConfigError(f"Unknown suite {name!r}; choose from {', '.join(suite_names())}")


def suite_names() -> List[str]:
    return list(_REGISTRY)


def list_suites() -> List[BaseSuite]:
    return list(_REGISTRY.values())
