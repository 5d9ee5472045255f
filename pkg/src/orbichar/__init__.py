"""Universal and generalized orbifold Euler characteristics of finite G-sets."""

from .catalog import catalog_group, catalog_names, small_groups_catalog
from .errors import (BudgetExceeded, CapExceeded, DomainError, IntegralityError, Limits,
                     NoSolutionError, OrbicharError, UnsupportedError, set_limits)
from .euler import (chi_A_direct, chi_A_on_ring, chi_A_recursive, chi_higher_order, chi_orb,
                    euler_satake)
from .groups import FiniteGroup, Homomorphism, Subgroup, direct_product, quotient
from .gset import GSet, coset_space, induce, point, regular
from .harness import (reconstruct, universal_from_chi, verify_reduction_lemma,
                      verify_vanishing_theorem)
from .homs import (Finite, FreeAbelian, Omega, Presentation, ProductWithFree, enumerate_homs,
                   enumerate_monos, frep_count, rep_count)
from .iso import are_isomorphic, canonical_key, isomorphism, krull_schmidt_factors
from .ring import RingElement, universal_euler

__version__ = "0.1.0"
