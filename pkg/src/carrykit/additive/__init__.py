"""Additive combinatorics: sumsets, Pollard counts, Freiman structure, Fourier
rectification and the two-carry characterisation."""

from .fourier import (ArcResult, FourierProfile, arc_concentration, best_arc, fourier,
                      fourier_profile, large_fourier_bound_check, max_nonzero_fourier)
from .freiman import AP, FreimanResult, freiman_24_check, freiman_3k3_check, freiman_iso_check
from .pollard import (PollardVerdict, cauchy_davenport_check, interval_max_rep, max_rep_check,
                      pollard_check, pollard_S, solution_count)
from .rectify import HypothesisNotMet, RectifyResult, concentration_bound, rectify
from .sets import (IntSet, ModSet, centered_interval, has_unit_differences, in_quarter_window,
                   rep_count, rep_counts, signed_residue, sumset)
from .twocarry import TwoCarryResult, affine_images, endpoint_witness_carries, two_carry_classify
