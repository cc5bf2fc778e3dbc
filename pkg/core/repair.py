"""
Fault address table construction and classical address translation

The tester hands over which original cells and spares are broken; the table
pairs every broken original with a healthy spare. Translation is the
classical counterpart of the repair oracle and serves as the reference the
quantum circuit is checked against.
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from core.errors import InvalidFat, Unrepairable

logger = logging.getLogger(__name__)

_FAT_LINE = re.compile(r'^\s*([01]+)\s*->\s*S(\d+)\s*$')


@dataclass(frozen=True)
class SpareId:
    """Index of a spare cell; never equal to an original address"""
    index: int

    def __str__(self) -> str:
        return f"S{self.index}"


MemoryLocation = Union[int, SpareId]


@dataclass(frozen=True)
class DefectMap:
    """Broken original addresses and broken spare indices reported by the tester"""
    address_bits: int
    defective_original_addresses: Tuple[int, ...] = ()
    defective_spare_indices: Tuple[int, ...] = ()

    def __post_init__(self):
        originals = tuple(sorted(set(int(a) for a in self.defective_original_addresses)))
        spares = tuple(sorted(set(int(s) for s in self.defective_spare_indices)))
        limit = 1 << self.address_bits
        if any(a < 0 or a >= limit for a in originals):
            raise ValueError(f"Defective address outside the {self.address_bits}-bit space")
        if any(s < 0 for s in spares):
            raise ValueError("Spare indices must be non-negative")
        object.__setattr__(self, 'defective_original_addresses', originals)
        object.__setattr__(self, 'defective_spare_indices', spares)


@dataclass(frozen=True)
class FaultAddressTable:
    """Ordered (faulty address, spare) pairs"""
    address_bits: int
    entries: Tuple[Tuple[int, SpareId], ...] = ()

    def __post_init__(self):
        faulty = [fa for fa, _ in self.entries]
        spares = [sa for _, sa in self.entries]
        if len(set(faulty)) != len(faulty):
            raise InvalidFat("Faulty addresses in a table must be distinct")
        if len(set(spares)) != len(spares):
            raise InvalidFat("Spare assignments in a table must be distinct")
        limit = 1 << self.address_bits
        if any(fa < 0 or fa >= limit for fa in faulty):
            raise InvalidFat(f"Faulty address outside the {self.address_bits}-bit space")

    @property
    def faulty_addresses(self) -> Tuple[int, ...]:
        return tuple(fa for fa, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def build_fat(defect_map: DefectMap, X: int) -> FaultAddressTable:
    """
    Pair broken originals with healthy spares

    Broken originals in ascending address order take healthy spares in
    ascending index order.

    Args:
        defect_map: Tester report
        X: Number of spares on the chip

    Returns:
        FaultAddressTable

    Raises:
        Unrepairable: more broken originals than healthy spares
    """
    if any(s >= X for s in defect_map.defective_spare_indices):
        raise ValueError(f"Defective spare index outside 0..{X - 1}")
    healthy = [s for s in range(X) if s not in set(defect_map.defective_spare_indices)]
    faulty = defect_map.defective_original_addresses
    if len(faulty) > len(healthy):
        raise Unrepairable(len(faulty), len(healthy))

    entries = tuple((fa, SpareId(sa)) for fa, sa in zip(faulty, healthy))
    logger.debug("Built fault address table with %d entr%s", len(entries),
                 'y' if len(entries) == 1 else 'ies')
    return FaultAddressTable(defect_map.address_bits, entries)


def translate_address(fat: FaultAddressTable, a: int) -> Tuple[MemoryLocation, bool]:
    """
    Route one address through the table

    Args:
        fat: Fault address table
        a: Input address

    Returns:
        (location, repair_flag): the assigned spare and True when a is faulty,
        otherwise a itself and False
    """
    if isinstance(a, SpareId):
        return a, False
    if a < 0 or a >= (1 << fat.address_bits):
        raise ValueError(f"Address {a} outside the {fat.address_bits}-bit space")
    for fa, sa in fat.entries:
        if a == fa:
            return sa, True
    return a, False


def translate_batch(fat: FaultAddressTable,
                    addresses: Iterable[MemoryLocation]) -> List[MemoryLocation]:
    """Element-wise translate_address; spare ids pass through unchanged"""
    return [translate_address(fat, a)[0] for a in addresses]


def defect_map_from_outcome(outcome, address_bits: int) -> DefectMap:
    """
    Tester report for a simulated chip

    Args:
        outcome: ChipOutcome produced with keep_defects=True
        address_bits: Width of the original address space

    Returns:
        DefectMap
    """
    if outcome.defective_original_indices is None:
        raise ValueError("Chip outcome was simulated without defect positions")
    return DefectMap(address_bits,
                     outcome.defective_original_indices,
                     outcome.defective_spare_indices or ())


def fat_to_text(fat: FaultAddressTable) -> str:
    """One `FA(binary) -> S<index>` line per entry"""
    lines = [f"{fa:0{fat.address_bits}b} -> {sa}" for fa, sa in fat.entries]
    return '\n'.join(lines) + ('\n' if lines else '')


def fat_from_text(text: str, address_bits: int) -> FaultAddressTable:
    """
    Parse the line format written by fat_to_text

    Blank lines and lines starting with '#' are skipped.
    """
    entries = []
    for number, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        match = _FAT_LINE.match(line)
        if not match:
            raise InvalidFat(f"Line {number}: expected 'FA -> S<index>', got {line!r}")
        bits, index = match.groups()
        if len(bits) != address_bits:
            raise InvalidFat(f"Line {number}: address '{bits}' is not {address_bits} bits wide")
        entries.append((int(bits, 2), SpareId(int(index))))
    return FaultAddressTable(address_bits, tuple(entries))


def parse_addresses(tokens: Sequence[str], address_bits: int) -> Tuple[int, ...]:
    """Binary address strings such as '10' to integers"""
    addresses = []
    for token in tokens:
        token = token.strip()
        if not token:
            continue
        if not re.fullmatch(r'[01]+', token) or len(token) != address_bits:
            raise ValueError(f"Address '{token}' is not a {address_bits}-bit binary string")
        addresses.append(int(token, 2))
    return tuple(addresses)
