"""Free-fermion entanglement on Hadamard graphs.

Exact association-scheme data over Q(sqrt(n)), Terwilliger-algebra dual
matrices, the block-tridiagonal operator commuting with the chopped
correlation matrix, and numerically computed correlation spectra and
von Neumann entropies.
"""

from .eig import (EigenSolveError, InvalidSpectrumError, NonSymmetricError,
                  Spectrum, cluster_spectrum, jacobi_eig, symmetric_eig)
from .entangle import (ClosedFormComparison, CorrelationReport, EntropySweepRow,
                       HeunOperator, ProjectorPair, UncoveredSpectrumError,
                       binary_entropy, chopped_correlation, closed_form_spectrum,
                       compare_with_claims, correlation_report, dual_correlation,
                       entanglement_hamiltonian, entropy, entropy_sweep,
                       ground_state_correlation, hadamard_entropy_numeric,
                       heun_expansion_energy, heun_expansion_neighbourhood,
                       heun_operator, projector_pair, spectrum_numeric)
from .exactmat import (DimensionMismatchError, ExactMatrix, anticommutator,
                       commutator)
from .graphs import (DisconnectedGraphError, HadamardGraph, SchemeGraph,
                     build_hadamard_graph, build_hypercube, distance_matrices,
                     explicit_hadamard_distance_matrices)
from .hadamard import (CoreBlocks, HadamardMatrix, NotHadamardError,
                       core_blocks, normalize, paley, sylvester, verify)
from .qroot import QRootN, RadicandMismatchError, sqrt_of
from .scheme import (SchemeError, SchemeTables, build_scheme, eigenmatrices,
                     hadamard_pq_matrix, intersection_array,
                     intersection_numbers, krein_parameters,
                     lagrange_idempotents, polynomial_checks)
from .terwilliger import (TerwilligerBasis, TripleVanishingReport,
                          block_tridiagonal_decompose, cubic_relation_residual,
                          dual_distance, dual_idempotents, terwilliger_basis,
                          triple_vanishing_check, verify_dual_products)

__version__ = "0.1.0"
