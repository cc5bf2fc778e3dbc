"""
Default values and experiment presets for the qRAM workbench
"""

from typing import Any, Dict, List, Tuple

from core.resource_model import (
    TABLE1_DISTANCES, TABLE1_LOGICAL_COUNTS, TABLE1_SPARE_COUNTS
)
from core.yield_engine import (
    DEFAULT_CHIPS_PER_REP, DEFAULT_MASTER_SEED, DEFAULT_REPS, SweepGrid
)

DEFAULT_LOGICAL_COUNTS = (16, 32, 64, 128, 256, 512, 1024)
DEFAULT_ERROR_RATES = (0.005, 0.006, 0.007, 0.008, 0.009, 0.010)
HEADLINE_ERROR_RATE = 0.005
IMPROVEMENT_DISTANCES = (3, 5, 7, 9)
IMPROVEMENT_RR_SPARES = 8

ORACLE_DISTANCES = (3, 5, 7, 9)
ORACLE_SPARE_COUNTS = (0, 1, 2, 4, 8)

FIG7_SPARES = {
    'fig7a': 0,
    'fig7b': 1,
    'fig7c': 2,
    'fig7d': 4,
    'fig7e': 8,
}

YIELD_PRESETS = ('fig3b', 'fig6') + tuple(FIG7_SPARES)
RESOURCE_PRESETS = ('table1',)
PRESETS = YIELD_PRESETS + RESOURCE_PRESETS

DEFAULT_VERIFY_SCOPE = ((1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2))
DEFAULT_ORACLE_POINTS = 20
DEFAULT_ORACLE_CHIPS = 10000


def create_default_settings() -> Dict[str, Any]:
    """
    Create the default run settings

    Returns:
        Dict keyed by RunConfig field names
    """
    return {
        'preset': None,
        'chips_per_rep': DEFAULT_CHIPS_PER_REP,
        'reps': DEFAULT_REPS,
        'master_seed': DEFAULT_MASTER_SEED,
        'spares_fallible': True,
        'distances': (3,),
        'logical_counts': DEFAULT_LOGICAL_COUNTS,
        'spare_counts': (0,),
        'error_rates': DEFAULT_ERROR_RATES,
        'rr_spares': IMPROVEMENT_RR_SPARES,
        'method': 'analytic',
        'address_bits': 2,
        'spare_count': 2,
        'faults': (),
        'spare_faults': (),
        'data': None,
        'query': 'uniform',
        'mode': 'read',
        'dq': 0,
        'fat_file': None,
        'verify_scope': DEFAULT_VERIFY_SCOPE,
        'oracle_points': DEFAULT_ORACLE_POINTS,
        'oracle_chips': DEFAULT_ORACLE_CHIPS,
        'output': None,
        'svg': None,
        'excel': None,
        'literal_mem': False,
    }


def create_preset_grids(name: str, chips_per_rep: int = DEFAULT_CHIPS_PER_REP,
                        reps: int = DEFAULT_REPS, master_seed: int = DEFAULT_MASTER_SEED,
                        spares_fallible: bool = True) -> List[SweepGrid]:
    """
    Create the sweep grids of a yield preset

    fig3b: d=3 without repair at p=0.5%. fig6: d=3,5,7,9 without repair plus
    d=3 with eight spares at p=0.5%. fig7a..fig7e: d=3 with 0/1/2/4/8 spares
    over every error rate.

    Args:
        name: Preset name
        chips_per_rep, reps, master_seed, spares_fallible: Run sizes

    Returns:
        List of SweepGrid objects, run in order
    """
    run = dict(chips_per_rep=chips_per_rep, reps=reps, master_seed=master_seed,
               spares_fallible=spares_fallible)

    if name == 'fig3b':
        return [SweepGrid((3,), DEFAULT_LOGICAL_COUNTS, (0,), (HEADLINE_ERROR_RATE,), **run)]
    if name == 'fig6':
        return [
            SweepGrid(IMPROVEMENT_DISTANCES, DEFAULT_LOGICAL_COUNTS, (0,),
                      (HEADLINE_ERROR_RATE,), **run),
            SweepGrid((3,), DEFAULT_LOGICAL_COUNTS, (IMPROVEMENT_RR_SPARES,),
                      (HEADLINE_ERROR_RATE,), **run),
        ]
    if name in FIG7_SPARES:
        return [SweepGrid((3,), DEFAULT_LOGICAL_COUNTS, (FIG7_SPARES[name],),
                          DEFAULT_ERROR_RATES, **run)]
    raise ValueError(f"'{name}' is not a yield preset")


def create_resource_axes(name: str) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    """Distances, logical counts and spare counts of a resource preset"""
    if name == 'table1':
        return TABLE1_DISTANCES, TABLE1_LOGICAL_COUNTS, TABLE1_SPARE_COUNTS
    raise ValueError(f"'{name}' is not a resource preset")


def create_default_memory(num_logical: int) -> str:
    """Alternating 1010... data pattern for circuit demos, cell 0 first"""
    return ''.join('1' if i % 2 == 0 else '0' for i in range(num_logical))


def create_command_defaults(command: str) -> Dict[str, Any]:
    """Settings that differ from create_default_settings for one command"""
    if command == 'improvement':
        return {
            'distances': IMPROVEMENT_DISTANCES,
            'error_rates': (HEADLINE_ERROR_RATE,),
        }
    if command == 'verify':
        return {
            'distances': ORACLE_DISTANCES,
            'spare_counts': ORACLE_SPARE_COUNTS,
        }
    return {}
