"""Exact computations in the algebraic model for rational torus-equivariant spectra.

Everything is over Q with ``fractions.Fraction``; no floating point.

Submodules
----------
qlinalg   matrices, graded spaces and windowed complexes over Q
rings     polynomial rings, linear forms, subgroups of the torus, Euler classes
kcmod     torsion k[c]-modules as sums of cyclic atoms
polymod   finitely generated and Artinian graded modules over k[x,y]
gmod      module atoms, windowed realizations, Γ-torsion and Matlis duality
towers    inverse towers, lim and lim¹
homalg    Ext over the Tate ring, stable Koszul local cohomology, Gorenstein checks
atcat     objects and morphisms of the abelian model, adjoints, evaluation
resolve   injective resolutions and Ext tables
adams     catalogue of standard spectra and Adams E2 pages
parse     text grammar and printer
cli       the ``cousinet`` command
"""

from .adams import adams_e2, catalogue, catalogue_names
from .atcat import AtMorphism, AtObject, Rank2Object, b_object, eval_via_colim, hom_at, mk_a, mk_f
from .gmod import (
    CyclicTorsion,
    Free,
    GradedDual,
    KoszulQuot,
    LocCohTop,
    Sum,
    Suspension,
    Tate,
    TruncatedFamily,
    realize,
)
from .homalg import ext_tate, gorenstein_embed, koszul_self_duality, stable_koszul_lcoh
from .kcmod import Cyc, Dual, KcMap, KcModule
from .parse import ParseError, parse_atom, parse_object, print_object
from .polymod import ArtinianModule, FGModule, free_resolution
from .qlinalg import Mat
from .resolve import ext_at, id_lower_witness, inj_res_general, inj_res_sf_rank1
from .rings import G1, G2, TRIVIAL1, TRIVIAL2, LinearForm, PolyRing, circle, sample_circles
from .towers import completion, rlim_tower, tower_lim_lim1

__version__ = "0.1.0"

__all__ = [
    "adams_e2",
    "catalogue",
    "catalogue_names",
    "AtMorphism",
    "AtObject",
    "Rank2Object",
    "b_object",
    "eval_via_colim",
    "hom_at",
    "mk_a",
    "mk_f",
    "CyclicTorsion",
    "Free",
    "GradedDual",
    "KoszulQuot",
    "LocCohTop",
    "Sum",
    "Suspension",
    "Tate",
    "TruncatedFamily",
    "realize",
    "ext_tate",
    "gorenstein_embed",
    "koszul_self_duality",
    "stable_koszul_lcoh",
    "Cyc",
    "Dual",
    "KcMap",
    "KcModule",
    "ParseError",
    "parse_atom",
    "parse_object",
    "print_object",
    "ArtinianModule",
    "FGModule",
    "free_resolution",
    "Mat",
    "ext_at",
    "id_lower_witness",
    "inj_res_general",
    "inj_res_sf_rank1",
    "G1",
    "G2",
    "TRIVIAL1",
    "TRIVIAL2",
    "LinearForm",
    "PolyRing",
    "circle",
    "sample_circles",
    "completion",
    "rlim_tower",
    "tower_lim_lim1",
]
