"""Gentle algebras: string combinatorics, projective resolutions and complex cohomology.

Every combinatorial answer can be cross-checked against exact rational
linear algebra on the path-basis realization of the same object.
"""
from .applications import (
    ExtWitness,
    HlCertificate,
    NakayamaFailure,
    ReductionError,
    band_big_hl,
    band_hl,
    ext_dim,
    nakayama_witness,
    no_gaps_census,
    reduce_band_hl,
    reduce_hl,
)
from .complexes import (
    CohomologyReport,
    ComplexError,
    MatrixComplex,
    ProjectiveComplex,
    assemble,
    check_complex,
    cohomology_oracle,
    cohomology_truncation,
    compare_reports,
    hl,
    to_matrix_complex,
)
from .homotopy import (
    HomotopyBand,
    HomotopyError,
    HomotopyString,
    Jordan,
    enumerate_homotopy_bands,
    enumerate_homotopy_strings,
    format_homotopy,
    make_homotopy_string,
    parse_homotopy,
)
from .modules import (
    Representation,
    band_to_module,
    dim_vector,
    projective_cover,
    projective_module,
    string_to_module,
)
from .quiver import GentleQuiver, Path, QuiverError, make_quiver, parse_quiver
from .resolution import Rotation, band_resolution, projective_dimension, resolve_to_complex, rotate
from .strings import (
    BandWord,
    StringError,
    StringWord,
    enumerate_bands,
    enumerate_strings,
    parse_band,
    parse_string,
    projective_string,
    supplemental_union,
    truncate,
)

__version__ = "0.1.0"
