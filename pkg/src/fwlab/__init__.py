"""fwlab: a pseudo-spectral laboratory for the Fornberg-Whitham equation.

Periodic spectral substrate, Littlewood-Paley/Besov-norm engine, FW/CH time
integration, and the measurement harness that turns the equation's
well-posedness and non-uniform-dependence estimates into pass/fail numbers.
"""

from .besov import (BesovIndex, BumpProfile, besov_norm, block_decompose, build_bump,
                    build_partition, dyadic_block, inequality_ratio, low_pass)
from .dynamics import (ModelKind, SolverConfig, Trajectory, energy_functional,
                       nonlocal_term, peakon_exact, rhs, solve, v0)
from .errors import (BlowUpError, ConfigError, DegenerateInputError, DomainError,
                     GridMismatchError, ResolvabilityError, UnsupportedParameterError)
from .experiments import (ExperimentReport, SequencePair, SlopeFit, fit_loglog_slope,
                          make_fn, make_gn, make_phi_profile, make_sequence_pair,
                          max_resolvable_n, random_band_limited, run_ch_contrast,
                          run_conservation, run_continuity, run_lemma41_scalings,
                          run_lipschitz_linf, run_nonuniform, run_peakon, run_taylor)
from .spectral import (Field, FourierMultiplier, GridSpec, dealiased_product, lp_norm,
                       multiplier_apply, oversampled_sup, to_samples, to_spectrum)

__version__ = "0.1.0"
