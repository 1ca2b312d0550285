"""Nodal set extraction, nodal domain counting and topology checks."""

from .contour import CriticalParameterWarning, NodalSet, count_components, extract_nodal_set
from .domains import DegenerateGridError, count_nodal_domains, domain_labels
from .grid import DEFAULT_GRID, MIN_RESOLUTION, SignGrid, sample_sign_grid
from .checks import (
    InclusionResult,
    SeparationResult,
    TopologyReport,
    analyze,
    antipodal_partners,
    certify_vertices,
    check_separation,
    checkerboard_signs,
    checkerboard_vertex_distances,
    hemisphere_sides,
    expected_crossings,
    separation_profile,
    verify_inclusion,
)
