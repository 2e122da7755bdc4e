"""Allocation of MDS-coded symbols across storage nodes read in r-subsets."""

__version__ = "0.1.0"

from ._accel import BACKEND
from .errors import (DoesNotFit, InfeasibleProfile, InstanceTooLarge, InvalidChunk, InvalidParameter,
                     SearchSpaceTooLarge, StorallocError)
from .exact import (BruteForceReport, ExactResult, best_symmetric_exact, brute_force_optimal,
                    count_failing_subsets, ordered_failure_probability)
from .model import (Allocation, AlphaProfile, Problem, alpha_of_allocation, make_allocation, make_problem,
                    symmetric_allocation)
from .phi import (SandwichReport, phi_enumerate, phi_from_profile, phi_from_profile_float, sandwich_check,
                  tv_bound, tv_exact)
from .randomgraph import (GraphTrialConfig, PoissonRegime, gnp_recovery_rate, optimize_symmetric_poisson,
                          poisson_failure)
from .sampler import McEstimate, SampleMode, mc_failure
from .symmetric import (Method, ScanMode, SweepRow, SymmetricPlan, candidate_js, hypergeo_success,
                        make_plan, optimize_symmetric, phi_symmetric, sweep_budget)
