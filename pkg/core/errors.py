"""
Exception hierarchy for the qRAM workbench

Library code raises these; only the command-line layer turns them into
exit codes.
"""

from typing import Any, Optional


class WorkbenchError(Exception):
    """Base class for every workbench error"""


class InvalidDistance(WorkbenchError, ValueError):
    """Code distance is even or smaller than 3"""

    def __init__(self, distance: Any):
        self.distance = distance
        super().__init__(f"Code distance must be an odd integer >= 3, got {distance!r}")


class NotPowerOfTwo(WorkbenchError, ValueError):
    """Logical qubit count is not a power of two"""

    def __init__(self, value: Any, minimum: int = 1):
        self.value = value
        super().__init__(f"Expected a power of two >= {minimum}, got {value!r}")


class Unrepairable(WorkbenchError):
    """More defective originals than healthy spares"""

    def __init__(self, defective_originals: int, healthy_spares: int):
        self.defective_originals = defective_originals
        self.healthy_spares = healthy_spares
        super().__init__(
            f"Unrepairable chip: {defective_originals} defective original cell(s) "
            f"but only {healthy_spares} healthy spare(s)"
        )


class TooManyQubits(WorkbenchError, ValueError):
    """Register wider than the dense simulator supports"""


class IndexOutOfRange(WorkbenchError, IndexError):
    """Gate or assignment refers to a qubit outside the register"""


class InvalidGate(WorkbenchError, ValueError):
    """Gate arguments are malformed"""


class InvalidState(WorkbenchError, ValueError):
    """Amplitude vector is not normalised"""


class CapacityExceeded(WorkbenchError, ValueError):
    """qRAM layout does not fit in the simulator"""


class InvalidFat(WorkbenchError, ValueError):
    """Fault address table does not fit the layout"""


class ConfigError(WorkbenchError, ValueError):
    """Run configuration is invalid"""


class VerificationFailed(WorkbenchError):
    """Circuit semantics disagree with the classical repair oracle"""

    def __init__(self, message: str, counterexample: Optional[dict] = None):
        self.counterexample = counterexample or {}
        super().__init__(message)
