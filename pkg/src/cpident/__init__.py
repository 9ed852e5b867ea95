"""Exact and certified verification of an orthogonality theorem for
omega-binomial sums at roots of unity, and of the lemmas it rests on."""

__version__ = "0.1.0"

from .cyclotomic import CycField, CycNum, complex_embed, conjugate, cyc_field, zeta_power
from .cycpoly import CycPoly
from .qseries import check_product_identity, pochhammer, q_binomial
from .compositions import count_cm, enumerate_compositions, prefix_data
from .polyform import DrinfeldData, K_brute, K_via_g, G_poly, drinfeld, gen_g, m_Q
from .roots import RootSet, certify_roots, isolate_and_refine
from .identities import (
    check_corollary,
    check_lemma1,
    check_lemma2,
    gram_matrix,
    theta,
    verify_theorem,
)

__all__ = [
    "CycField", "CycNum", "CycPoly", "DrinfeldData", "RootSet",
    "cyc_field", "zeta_power", "conjugate", "complex_embed",
    "q_binomial", "pochhammer", "check_product_identity",
    "count_cm", "enumerate_compositions", "prefix_data",
    "m_Q", "drinfeld", "K_brute", "K_via_g", "gen_g", "G_poly",
    "certify_roots", "isolate_and_refine",
    "check_lemma1", "check_lemma2", "theta", "gram_matrix", "verify_theorem", "check_corollary",
]
