"""Carries, coset representatives and the additive combinatorics around them."""

from .approx_hom import (ApproxHomReport, InvariantViolation, SplitReport, bclr_repair,
                         epsilon_of, split_detector, tau)
from .carries import (CarryTable, balanced_reps, carry, carry_count, carry_score, carry_table,
                      digit_system, integer_carry_count, sign_count_lower_bound, standard_reps)
from .fournier import c_score_set, fournier_extract, sym_product_check, sym_set
from .groups import (CosetSystem, FiniteGroup, GroupError, RepSet, coset_system, make_cyclic,
                     make_from_table, make_product)

__version__ = "0.1.0"
