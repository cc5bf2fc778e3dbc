"""
Run configuration ingestion for the qRAM workbench

A run is described by defaults, an optional `key = value` config file with
[run], [grid], [circuit], [verify] and [output] sections, and command-line
flags, later sources winning. The merged mapping is validated with a
schema.Schema and frozen into a RunConfig.
"""

import configparser
import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

from schema import And, Or, Schema, SchemaError, Use

from core.errors import ConfigError
from utils.defaults import (
    PRESETS, RESOURCE_PRESETS, YIELD_PRESETS, create_command_defaults, create_default_settings
)

logger = logging.getLogger(__name__)

COMMANDS = ('yield', 'resource', 'improvement', 'circuit-demo', 'verify', 'defects')

CONFIG_SECTIONS = {
    'run': ('command', 'preset', 'chips_per_rep', 'reps', 'master_seed', 'spares_fallible'),
    'grid': ('distances', 'logical_counts', 'spare_counts', 'error_rates', 'rr_spares',
             'method'),
    'circuit': ('address_bits', 'spare_count', 'faults', 'spare_faults', 'data', 'query',
                'mode', 'dq', 'fat_file'),
    'verify': ('verify_scope', 'oracle_points', 'oracle_chips'),
    'output': ('output', 'svg', 'excel', 'literal_mem'),
}


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one workbench run"""
    command: str
    preset: Optional[str]
    chips_per_rep: int
    reps: int
    master_seed: int
    spares_fallible: bool
    distances: Tuple[int, ...]
    logical_counts: Tuple[int, ...]
    spare_counts: Tuple[int, ...]
    error_rates: Tuple[float, ...]
    rr_spares: int
    method: str
    address_bits: int
    spare_count: int
    faults: Tuple[str, ...]
    spare_faults: Tuple[int, ...]
    data: Optional[str]
    query: str
    mode: str
    dq: int
    fat_file: Optional[str]
    verify_scope: Tuple[Tuple[int, int], ...]
    oracle_points: int
    oracle_chips: int
    output: Optional[str]
    svg: Optional[str]
    excel: Optional[str]
    literal_mem: bool


def _items(value: Any) -> Tuple[str, ...]:
    if isinstance(value, str):
        return tuple(part.strip() for part in value.split(',') if part.strip())
    return tuple(str(v).strip() for v in value)


def _int_tuple(value: Any) -> Tuple[int, ...]:
    return tuple(int(v) for v in _items(value))


def _float_tuple(value: Any) -> Tuple[float, ...]:
    return tuple(float(v) for v in _items(value))


def _str_tuple(value: Any) -> Tuple[str, ...]:
    return _items(value)


def _scope_tuple(value: Any) -> Tuple[Tuple[int, int], ...]:
    if isinstance(value, str):
        pairs = []
        for item in _items(value):
            n, _, x = item.partition(':')
            pairs.append((int(n), int(x)))
        return tuple(pairs)
    return tuple((int(n), int(x)) for n, x in value)


def _bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ('1', 'true', 'yes', 'on'):
        return True
    if text in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f"Not a boolean: {value!r}")


def _optional_str(value: Any) -> Optional[str]:
    if value is None:
        return None
    text = str(value).strip()
    return text or None


def _is_bitstring(text: Optional[str]) -> bool:
    return text is None or (bool(text) and not set(text) - {'0', '1'})


def _config_schema() -> Schema:
    return Schema({
        'command': And(str, lambda c: c in COMMANDS,
                       error=f"command must be one of {', '.join(COMMANDS)}"),
        'preset': And(Use(_optional_str), Or(None, lambda p: p in PRESETS),
                      error=f"preset must be one of {', '.join(PRESETS)}"),
        'chips_per_rep': And(Use(int), lambda v: v >= 1, error="chips_per_rep must be >= 1"),
        'reps': And(Use(int), lambda v: v >= 1, error="reps must be >= 1"),
        'master_seed': And(Use(int), lambda v: v >= 0, error="master_seed must be >= 0"),
        'spares_fallible': Use(_bool, error="spares_fallible must be a boolean"),
        'distances': And(Use(_int_tuple), len, lambda v: all(d >= 3 and d % 2 for d in v),
                         error="distances must be odd integers >= 3"),
        'logical_counts': And(Use(_int_tuple), len, lambda v: all(n >= 1 for n in v),
                              error="logical_counts must be positive integers"),
        'spare_counts': And(Use(_int_tuple), len, lambda v: all(x >= 0 for x in v),
                            error="spare_counts must be non-negative integers"),
        'error_rates': And(Use(_float_tuple), len, lambda v: all(0.0 <= p <= 1.0 for p in v),
                           error="error_rates must lie in [0, 1]"),
        'rr_spares': And(Use(int), lambda v: v >= 0, error="rr_spares must be >= 0"),
        'method': And(str, lambda m: m in ('analytic', 'monte_carlo'),
                      error="method must be 'analytic' or 'monte_carlo'"),
        'address_bits': And(Use(int), lambda v: 1 <= v <= 3, error="address_bits must be 1..3"),
        'spare_count': And(Use(int), lambda v: v >= 0, error="spare_count must be >= 0"),
        'faults': And(Use(_str_tuple), lambda v: all(_is_bitstring(f) for f in v),
                      error="faults must be binary addresses"),
        'spare_faults': And(Use(_int_tuple), lambda v: all(s >= 0 for s in v),
                            error="spare_faults must be non-negative spare indices"),
        'data': And(Use(_optional_str), _is_bitstring, error="data must be a bitstring"),
        'query': And(Use(str), lambda q: q == 'uniform' or _is_bitstring(q),
                     error="query must be a binary address or 'uniform'"),
        'mode': And(str, lambda m: m in ('read', 'write'), error="mode must be 'read' or 'write'"),
        'dq': And(Use(int), lambda v: v in (0, 1), error="dq must be 0 or 1"),
        'fat_file': Use(_optional_str),
        'verify_scope': Use(_scope_tuple, error="verify_scope must look like '1:0, 2:2'"),
        'oracle_points': And(Use(int), lambda v: v >= 0, error="oracle_points must be >= 0"),
        'oracle_chips': And(Use(int), lambda v: v >= 1, error="oracle_chips must be >= 1"),
        'output': Use(_optional_str),
        'svg': Use(_optional_str),
        'excel': Use(_optional_str),
        'literal_mem': Use(_bool, error="literal_mem must be a boolean"),
    })


def read_config_file(file_path: str) -> Dict[str, str]:
    """
    Read a config file into a flat key -> raw string mapping

    Args:
        file_path: Path to the config file

    Returns:
        Dict of the keys present in the file
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(file_path, 'r', encoding='utf-8') as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"Cannot parse config file {file_path}: {exc}") from exc

    values = {}
    for section in parser.sections():
        if section not in CONFIG_SECTIONS:
            raise ConfigError(f"Unknown config section [{section}] in {file_path}")
        for key, raw in parser.items(section):
            if key not in CONFIG_SECTIONS[section]:
                raise ConfigError(f"Unknown key '{key}' in section [{section}] of {file_path}")
            values[key] = raw
    return values


def _check_command(config: RunConfig) -> None:
    if config.preset is None:
        return
    if config.command == 'resource' and config.preset not in RESOURCE_PRESETS:
        raise ConfigError(f"Preset '{config.preset}' is not a resource preset")
    if config.command == 'yield' and config.preset not in YIELD_PRESETS:
        raise ConfigError(f"Preset '{config.preset}' is not a yield preset")


def build_config(command: str, overrides: Optional[Mapping[str, Any]] = None,
                 config_path: Optional[str] = None) -> RunConfig:
    """
    Merge defaults, config file and flags into a validated RunConfig

    Args:
        command: Subcommand being run
        overrides: Flag values; None means "not given"
        config_path: Optional config file

    Returns:
        RunConfig

    Raises:
        ConfigError: invalid values or unknown keys
    """
    values: Dict[str, Any] = create_default_settings()
    values.update(create_command_defaults(command))
    if config_path:
        logger.info("Reading config from %s...", config_path)
        values.update(read_config_file(config_path))
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    values['command'] = command

    try:
        validated = _config_schema().validate(values)
    except SchemaError as exc:
        raise ConfigError(str(exc)) from exc

    config = RunConfig(**validated)
    _check_command(config)
    return config


def config_to_sections(config: RunConfig) -> Dict[str, Dict[str, str]]:
    """Render a RunConfig as config-file sections; None values are left out"""
    values = asdict(config)
    sections: Dict[str, Dict[str, str]] = {}
    for section, keys in CONFIG_SECTIONS.items():
        rendered = {}
        for key in keys:
            value = values[key]
            if value is None:
                continue
            if key == 'verify_scope':
                rendered[key] = ', '.join(f"{n}:{x}" for n, x in value)
            elif isinstance(value, tuple):
                rendered[key] = ', '.join(repr(v) if isinstance(v, float) else str(v)
                                          for v in value)
            elif isinstance(value, float):
                rendered[key] = repr(value)
            else:
                rendered[key] = str(value)
        sections[section] = rendered
    return sections


def write_config(config: RunConfig, file_path: str) -> str:
    """
    Write a RunConfig in the format read_config_file accepts

    Args:
        config: Configuration to echo
        file_path: Destination path

    Returns:
        The path written
    """
    parser = configparser.ConfigParser(interpolation=None)
    for section, items in config_to_sections(config).items():
        parser[section] = items
    with open(file_path, 'w', encoding='utf-8', newline='\n') as fh:
        parser.write(fh)
    logger.info("Saved config echo to %s", file_path)
    return file_path
