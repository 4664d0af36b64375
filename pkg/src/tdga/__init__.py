"""Filtered knot contact homology of braid closures, computed exactly.

From a braid word this package builds the doubly filtered differential
graded algebra of the closure over Z[l_j^{+-1}, m_j^{+-1}][U, V], verifies
its structural identities symbolically, produces the hat / double-hat /
unfiltered / infinity specializations, and counts augmentations over finite
fields.
"""

from .augment import (AugmentationProblem, count_augmentations,
                      count_augmentations_all_units,
                      count_augmentations_streamed,
                      naive_count_augmentations)
from .braid import (BraidWord, ComponentData, link_components, parse_braid,
                    self_linking)
from .coeff import ABSENT, LAURENT, POLYNOMIAL, CoeffPoly, RingDescriptor
from .algebra import GenId, GenSubstitution, NcMatrix, NcPoly
from .action import phi_braid, phi_generator, phi_matrices
from .dga import (FilteredDGA, VerifyReport, apply_tame_substitution,
                  build_filtered_dga, build_unfiltered_dga, destabilize,
                  infinity_dga, specialize, verify_dga)
from .errors import (BraidParseError, DgaError, InternalVerificationError,
                     TdgaError)
from .serialize import dga_from_doc, dga_to_doc, emit_json, parse_json

__version__ = "0.1.0"

__all__ = [
    "ABSENT", "AugmentationProblem", "BraidParseError", "BraidWord",
    "CoeffPoly", "ComponentData", "DgaError", "FilteredDGA", "GenId",
    "GenSubstitution", "InternalVerificationError", "LAURENT", "NcMatrix",
    "NcPoly", "POLYNOMIAL", "RingDescriptor", "TdgaError", "VerifyReport",
    "apply_tame_substitution", "build_filtered_dga", "build_unfiltered_dga",
    "count_augmentations", "count_augmentations_all_units",
    "count_augmentations_streamed", "destabilize", "dga_from_doc",
    "dga_to_doc", "emit_json", "infinity_dga", "link_components",
    "naive_count_augmentations", "parse_braid", "parse_json", "phi_braid",
    "phi_generator", "phi_matrices", "self_linking", "specialize",
    "verify_dga",
]
