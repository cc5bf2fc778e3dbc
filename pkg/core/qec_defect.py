"""
Surface-code patch model for fabrication defects

A logical qubit is a rotated surface-code patch of 2d^2-1 physical qubits
(d^2 data, d^2-1 ancilla). Each physical qubit is independently broken at
fabrication with probability p; the patch is defective when more than
t = (d-1)/2 of its qubits are broken. The lattice geometry is only used for
reporting; the defect decision is purely count based.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb, gammaln

from core.errors import InvalidDistance

logger = logging.getLogger(__name__)

# Above this patch size the binomial terms are built from log-gamma values
LOG_SPACE_THRESHOLD = 100


def _check_distance(d) -> int:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise InvalidDistance(d)
    if d < 3 or d % 2 == 0:
        raise InvalidDistance(d)
    return int(d)


def physical_per_logical(d: int) -> int:
    """
    Number of physical qubits in one distance-d patch

    Args:
        d: Odd code distance >= 3

    Returns:
        2d^2 - 1
    """
    d = _check_distance(d)
    return 2 * d * d - 1


@dataclass(frozen=True)
class QecParams:
    """Code distance with its derived patch size and correctable budget"""
    distance: int
    physical_per_logical: int = field(init=False)
    correctable: int = field(init=False)

    def __post_init__(self):
        d = _check_distance(self.distance)
        object.__setattr__(self, 'distance', d)
        object.__setattr__(self, 'physical_per_logical', physical_per_logical(d))
        object.__setattr__(self, 'correctable', (d - 1) // 2)


@dataclass(frozen=True)
class FabricationModel:
    """Per-physical-qubit fabrication defect probability"""
    error_rate: float

    def __post_init__(self):
        rate = float(self.error_rate)
        if not 0.0 <= rate <= 1.0:
            raise ValueError(f"Fabrication error rate must lie in [0, 1], got {self.error_rate!r}")
        object.__setattr__(self, 'error_rate', rate)


@dataclass(frozen=True)
class PatchDefectSample:
    """Outcome of fabricating one patch"""
    defect_count: int
    defective: bool
    defect_sites: Tuple[int, ...] = ()


def sample_patch(params: QecParams, model: FabricationModel,
                 rng: np.random.Generator) -> PatchDefectSample:
    """
    Fabricate one patch with independent Bernoulli defects per physical qubit

    Draw i decides the fate of site i (data sites first, then ancillas), so
    the sample can be rendered on the lattice afterwards.

    Args:
        params: Code parameters
        model: Fabrication model
        rng: Caller-owned random stream

    Returns:
        PatchDefectSample with the count, the defect flag and the broken sites
    """
    draws = rng.random(params.physical_per_logical) < model.error_rate
    sites = np.flatnonzero(draws)
    count = int(sites.size)
    return PatchDefectSample(
        defect_count=count,
        defective=count > params.correctable,
        defect_sites=tuple(int(s) for s in sites),
    )


def sample_patch_counts(params: QecParams, model: FabricationModel,
                        rng: np.random.Generator, num_patches: int) -> np.ndarray:
    """
    Fabricate a block of patches and return their defect counts

    Same Bernoulli rule as sample_patch, drawn as one (num_patches, 2d^2-1)
    block from the stream.
    """
    if num_patches <= 0:
        return np.zeros(0, dtype=np.int64)
    draws = rng.random((num_patches, params.physical_per_logical)) < model.error_rate
    return draws.sum(axis=1)


def logical_defect_prob(params: QecParams, model: FabricationModel) -> float:
    """
    Exact probability that a patch is defective

    q = sum_{k=t+1}^{n} C(n,k) p^k (1-p)^(n-k), n = 2d^2-1

    Args:
        params: Code parameters
        model: Fabrication model

    Returns:
        Probability in [0, 1]
    """
    n = params.physical_per_logical
    t = params.correctable
    p = model.error_rate

    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0

    k = np.arange(t + 1, n + 1)
    if n >= LOG_SPACE_THRESHOLD:
        log_terms = (gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
                     + k * np.log(p) + (n - k) * np.log1p(-p))
        q = float(np.exp(log_terms).sum())
    else:
        q = float((comb(n, k) * p ** k * (1.0 - p) ** (n - k)).sum())

    return min(max(q, 0.0), 1.0)


# ---------------------------------------------------------------------------
# Lattice reporting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Stabilizer:
    """One plaquette of the rotated lattice and the ancilla that measures it"""
    kind: str
    row: int
    col: int
    ancilla_site: int
    support: Tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.kind}[{self.row},{self.col}]"


@dataclass(frozen=True)
class SurfaceCodeLayout:
    """Rotated surface-code patch with a fabrication defect mask"""
    distance: int
    data_sites: Tuple[int, ...]
    ancilla_sites: Tuple[int, ...]
    stabilizers: Tuple[Stabilizer, ...]
    defect_mask: Tuple[bool, ...]

    @property
    def num_sites(self) -> int:
        return len(self.data_sites) + len(self.ancilla_sites)

    @property
    def disabled_stabilizers(self) -> FrozenSet[str]:
        return frozenset(c for c in disabled_components(self) if not c.startswith('site:'))


def site_label(site: int) -> str:
    return f"site:{site}"


def _rotated_stabilizers(d: int) -> List[Stabilizer]:
    """
    Plaquettes sit on the (d+1)x(d+1) corner grid; corner (i, j) touches
    data qubits (i-1..i, j-1..j). Bulk corners give weight-4 checks, X-type
    weight-2 checks close the top/bottom edges and Z-type the left/right.
    """
    stabilizers = []
    next_ancilla = d * d
    for i in range(d + 1):
        for j in range(d + 1):
            kind = 'X' if (i + j) % 2 == 0 else 'Z'
            on_row_edge = i in (0, d)
            on_col_edge = j in (0, d)
            if on_row_edge and on_col_edge:
                continue
            if on_row_edge and kind != 'X':
                continue
            if on_col_edge and kind != 'Z':
                continue
            support = tuple(
                r * d + c
                for r in (i - 1, i) for c in (j - 1, j)
                if 0 <= r < d and 0 <= c < d
            )
            stabilizers.append(Stabilizer(kind, i, j, next_ancilla, support))
            next_ancilla += 1
    return stabilizers


def build_surface_layout(params: QecParams,
                         defect_mask: Optional[Sequence[bool]] = None) -> SurfaceCodeLayout:
    """
    Build the rotated lattice of one patch

    Args:
        params: Code parameters
        defect_mask: Optional per-site broken flags, length 2d^2-1

    Returns:
        SurfaceCodeLayout
    """
    d = params.distance
    stabilizers = _rotated_stabilizers(d)
    data_sites = tuple(range(d * d))
    ancilla_sites = tuple(s.ancilla_site for s in stabilizers)

    n = params.physical_per_logical
    if defect_mask is None:
        mask = (False,) * n
    else:
        mask = tuple(bool(m) for m in defect_mask)
        if len(mask) != n:
            raise ValueError(f"Defect mask needs {n} entries, got {len(mask)}")

    return SurfaceCodeLayout(d, data_sites, ancilla_sites, tuple(stabilizers), mask)


def layout_from_sample(params: QecParams, sample: PatchDefectSample) -> SurfaceCodeLayout:
    """Place the broken sites of a sample onto the lattice"""
    mask = [False] * params.physical_per_logical
    for site in sample.defect_sites:
        mask[site] = True
    return build_surface_layout(params, mask)


def disabled_components(layout: SurfaceCodeLayout) -> FrozenSet[str]:
    """
    Components lost to fabrication defects

    Every broken site plus every stabilizer that touches one, either through
    its data support or its own ancilla.

    Args:
        layout: Patch layout with defect mask

    Returns:
        Set of labels: "site:<id>" for sites, "X[i,j]"/"Z[i,j]" for stabilizers
    """
    broken = {site for site, bad in enumerate(layout.defect_mask) if bad}
    disabled = {site_label(site) for site in broken}
    for stabilizer in layout.stabilizers:
        if stabilizer.ancilla_site in broken or broken.intersection(stabilizer.support):
            disabled.add(stabilizer.label)
    return frozenset(disabled)


def render_layout(layout: SurfaceCodeLayout) -> str:
    """
    Text picture of the patch

    Data qubits print as 'o' (healthy) or 'x' (broken); plaquettes print as
    their kind letter, lower-case when disabled and '#' when their own
    ancilla is broken. Empty corners print as '.'.
    """
    d = layout.distance
    size = 2 * d + 1
    grid = [[' '] * size for _ in range(size)]
    for i in range(d + 1):
        for j in range(d + 1):
            grid[2 * i][2 * j] = '.'

    for site in layout.data_sites:
        r, c = divmod(site, d)
        grid[2 * r + 1][2 * c + 1] = 'x' if layout.defect_mask[site] else 'o'

    disabled = disabled_components(layout)
    for stabilizer in layout.stabilizers:
        if layout.defect_mask[stabilizer.ancilla_site]:
            mark = '#'
        elif stabilizer.label in disabled:
            mark = stabilizer.kind.lower()
        else:
            mark = stabilizer.kind
        grid[2 * stabilizer.row][2 * stabilizer.col] = mark

    return '\n'.join(''.join(row).rstrip() for row in grid)


def summarize_layout(layout: SurfaceCodeLayout) -> Dict[str, int]:
    """Counts used by the defect report"""
    disabled = disabled_components(layout)
    return {
        'sites': layout.num_sites,
        'broken_sites': sum(layout.defect_mask),
        'stabilizers': len(layout.stabilizers),
        'disabled_stabilizers': sum(1 for c in disabled if not c.startswith('site:')),
    }
