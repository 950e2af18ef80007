"""Exact barcodes and cohomology interleaving distances over BS^1 models."""

from .barcode import (Bar, Barcode, bottleneck_bruteforce, bottleneck_distance,
                      interval_distance, is_interleaved)
from .cdga import FreeCdga, basis, builtin, differential_matrix, to_dgku
from .dgku import (DgKuModule, FiberSignature, FilteredKtModule, KuCohomology,
                   Tail, cohomology_ku, cup_bounds, cup_k, d_cohI, d_cohI_k,
                   distance_to_ground, distance_to_ku_mod_u2,
                   e2_collapse_distance, ground_module, ku_mod_u2_module,
                   loop_shape_distance, loop_shape_module, regrade,
                   split_barcode, split_even_odd, totalize)
from .dgmodule import (DgMap, FormalityWitness, PersistenceDgModule,
                       as_zero_differential, d_cohI_persistence,
                       formality_witness, homology, homology_barcodes)
from .exact import (INF, ExtRational, FieldError, Matrix, PrimeField, QQ,
                    Rational, RationalField, Quotient, is_inf, kernel_basis,
                    normalize, rank, rref, solve)
from .persistence import (NatTransformation, PersistenceModule, decompose,
                          rank_invariant, realize, shift, verify_interleaving)

__version__ = "0.1.0"
