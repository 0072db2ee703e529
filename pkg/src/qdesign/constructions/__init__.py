"""Named designs: MUBs, SIC, Platonic constellations, simplex and product designs."""

from .groups import binary_polyhedral_group, closure
from .mub import (GroupWord, MubSet, fiducial_state, iso_mub, iso_mub_local_unitaries,
                  iso_mub_words, local_generator_factors, local_generators,
                  local_symmetry_group, parse_word, standard_mub_d4, symmetry_generators,
                  transform, transformed_standard_mub)
from .platonic import (PLATONIC_MIXING, SOLIDS, platonic_design, platonic_pure_states,
                       solid_vertices)
from .product import product_design
from .sic import sic_d3
from .simplex import (HILBERT_SCHMIDT, LEBESGUE, SimplexDesign, SimplexReport, decohere,
                      exact_moment, interval_catalog, interval_design, restrict_to_chamber,
                      spectra, verify_simplicial)

__all__ = [
    "GroupWord", "MubSet", "fiducial_state", "iso_mub", "iso_mub_local_unitaries",
    "iso_mub_words", "local_generator_factors", "local_generators", "local_symmetry_group",
    "parse_word", "standard_mub_d4", "symmetry_generators", "transform",
    "transformed_standard_mub", "binary_polyhedral_group", "closure",
    "PLATONIC_MIXING", "SOLIDS", "platonic_design", "platonic_pure_states", "solid_vertices",
    "product_design", "sic_d3", "HILBERT_SCHMIDT", "LEBESGUE", "SimplexDesign",
    "SimplexReport", "decohere", "exact_moment", "interval_catalog", "interval_design",
    "restrict_to_chamber", "spectra", "verify_simplicial",
]
