"""Harmonic shears of generalized Koebe functions: construction, coefficients, norms and univalence."""

from .analytic_maps import koebe, koebe_generalized, ka_prime_series, ka_series, lens_map
from .bounds import BoundsInterval, area_bounds, area_empirical, derivative_envelope, growth_bounds
from .coeffs import CoeffTable, coeff_closed_forms, defining_relations
from .differential import NormReport, norm_estimate, pre_schwarzian_closed, schwarzian_closed
from .errors import *  # noqa: F401,F403
from .hyp2f1 import closed_form_hg, hyp_E, hyp_general
from .numkit import QuadSpec, Series, series_binpow, series_combine
from .render import MeshSpec, render_disk_image
from .shear import (HarmonicValue, Params, TaylorPair, eval_f, eval_f_path, f_lambda_explicit,
                    harmonic_koebe_eval, hg_series)
from .univalence import chd_check, find_self_intersection, injectivity_scan, univalence_verdict, witness_pair
from .verify import run_verify

__version__ = "0.1.0"
