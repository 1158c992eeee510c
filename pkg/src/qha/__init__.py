"""Quantum harmonic analysis on the finite phase space Z_N x Z_N.

A numerical model of time-frequency analysis in which functions on phase
space and N x N matrices convolve with each other, the Fourier-Wigner
transform diagonalizes those convolutions, and the classical identities
(Moyal, spectrogram, trace and total-energy formulas, Hausdorff-Young with
constant one) hold exactly.  Uniqueness theorems become algorithms: mask
deconvolution, domain reconstruction and spectrogram phase retrieval.
"""

from .context import PhasePoint, QhaContext, halfphase, symmetric_rep
from .errors import (AllZero, ComplexKernel, ContextMismatch, InvalidExponents,
                     NonBinaryMask, NonHermitianKernel, NotAPartition, NotHermitian,
                     NotMixedState, NotNormalized, NotRankOne, QhaError, ZeroAmbiguity,
                     ZeroSpreading)
from .phase_space import (Domain, PhaseFn, check_fn, constant_fn, delta_fn,
                          empty_domain, fn_convolve, fn_norm, full_domain, indicator,
                          measure, phase_fn, symplectic_form, symplectic_fourier,
                          total_mass, translate, translate_domain)
from .operators import (MixedState, OperatorMatrix, Signal, Spectrum, adjoint,
                        apply_shift, basis_vector, conjugate_shift, hermitian_eig,
                        identity, inner, is_hermitian, is_positive, operator,
                        operator_norm, parity_check, parity_matrix, parity_signal,
                        rank_one, schatten_norm, signal, signal_norm, tf_shift,
                        trace, zero_operator)
from .convolutions import YoungReport, conv_fn_op, conv_op_op, young_norm_report
from .fourier_wigner import (deconvolve_mask, fourier_wigner, inverse_fourier_wigner,
                             weyl_symbol, weyl_symbol_of_filter, weyl_transform,
                             zero_set)
from .tf_transforms import (ambiguity, flat_window, gaussian_window, impulse_window,
                            spectrogram, stft, wigner, window_preset)
from .cohen import (CohenClassification, CohenConcentration, CohenKernel,
                    born_jordan_kernel, classify, cohen_distribution,
                    cohen_uncertainty, kernel_function, klm_check, phase_retrieval,
                    spectrogram_decomposition, spectrogram_kernel,
                    total_energy_check, wigner_kernel)
from .localization import (LocalizationReport, PovmReport, UncertaintyReport,
                           cell_partition, concentration, filter_from_operator,
                           localization_eigenproblem, mixed_state_loc,
                           multiwindow_filter, povm_verify, prob_measure,
                           quadrant_partition, reconstruct_domain,
                           spreading_uncertainty)

__version__ = "0.1.0"
