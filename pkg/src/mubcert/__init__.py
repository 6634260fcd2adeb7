"""Real mutually unbiased bases from Kerdock bent sets, with certificates of
strong unextendibility over C."""

from .bentset import BentSet, kerdock_construct, normalize, paper_bent_set_h2, verify_bent_set
from .boolfun import BooleanFunction, WalshSpectrum, add, derivative_sum, dot, from_anf, is_bent, walsh_spectrum
from .gf2field import FieldSpec, find_irreducible
from .modrank import rank_mod_p, rank_rational
from .mub import MubSet, fixture_c4_5mubs, from_bent_set, product, verify_mub_set
from .unextend import (
    ConstraintMatrix,
    RankCertificate,
    blocks,
    build_constraint_matrix,
    certify_strongly_unextendible,
    search_unbiased_vector,
    structural_certificate,
)

__version__ = "0.1.0"
