"""Finite quantaloid-enriched categories, closure spaces and law checking."""

from .algebra import (Arrow, CapExceeded, ConstructionError, DEFAULT_CAP,
                      FiniteLattice, LatticeError, Quantale, Quantaloid,
                      Report, boolean, bound, build_dq, build_opposite,
                      builtin_names, builtin_quantale, dq_implication_closed,
                      drastic, godel, is_divisible, lukasiewicz,
                      validate_quantaloid)
from .category import (QCategory, QFunctor, QRelation, TypedSet,
                       check_adjunction, check_functor, discrete_category,
                       graph_cograph, is_distributor, qrel_view, rel_compose,
                       rel_identity, rel_join, rel_limpl, rel_meet, rel_rimpl,
                       typed_over_quantale, underlying_preorder,
                       validate_category)
from .presheaf import (Presheaf, completeness_tools, copresheaf_category,
                       dist_to_functor, enumerate_copresheaves,
                       enumerate_presheaves, functor_to_dist, image_functors,
                       kan_adjoints, presheaf_category, psh_leq, yoneda,
                       co_yoneda, yoneda_pair)

__all__ = [n for n in dir() if not n.startswith("_")]
