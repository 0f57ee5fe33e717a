"""Graph-regularity of homogeneous linear systems under edge colorings:
exact certificates, coloring families, witness searches, the pair-matrix
reduction, and the constructive grid pipeline."""

from .certs import (CCCertificate, GCCCertificate, VerificationReport,
                    search_cc, search_gcc, unrestriction_time, verify_cc,
                    verify_gcc)
from .colorings import (Color, ColoringSpec, edge_color, hyper_color,
                        parse_coloring, psi)
from .grid import (GridSpec, find_mono_grid, grid_points, is_proper, locate,
                   make_grid_spec, pipeline_witness, required_b,
                   solve_in_grid)
from .ratmath import (IntMatrix, Rational, in_nullspace, integerize,
                      nullspace_basis)
from .reduction import (build_c, build_c_sigma, transfer_certificate,
                        wgcc_via_reduction)
from .screens import (ScreenReport, classify, column_sum_zero,
                      zero_sum_partition)
from .search import (Witness, enumerate_solutions, exhaustive_threshold,
                     find_mono_hyper, find_mono_solution, verify_avoidance,
                     verify_witness)

__version__ = "0.1.0"
