"""orbitkit: exact verification toolkit for minimal nilpotent orbit models.

The package checks, by exact rational arithmetic wherever possible and by
tolerance-controlled floating point elsewhere, a family of desk-scale claims
about the minimal nilpotent orbit closures of sl(n) and so(2n+2): symplectic
identities on the big orbit cell, a graded torus reduction of the so-model,
its stratification and slice models, and the fiber geometry of the induced
quotient maps.

Layers, bottom up:

* ``linalg``, ``jets``: fraction-free exact linear algebra, float ranks
  with tolerances, dual-number jets for exact first derivatives;
* ``models``: the block matrix model, its charts, flips, and bases;
* ``certificates``: Jacobian-rank dimension certificates for equation
  systems and parametrizations;
* ``sampling``: seeded, hash-split deterministic random inputs;
* ``symplectic``: big-cell lifts and the one-form and rank identities;
* ``reduction``: scaling action, shell, strata, closed orbits, slices;
* ``vgit``: semistability, quotient fibers, boundary, cotangent descent;
* ``serialize``, ``harness``, ``cli``: replayable reports and the
  ``orbitkit`` command line.
"""

from . import (certificates, harness, jets, linalg, models, reduction,
               sampling, serialize, symplectic, vgit)
from .certificates import (DimensionCertificate, EquationSystem,
                           Parametrization, certify_equations,
                           certify_parametrization)
from .harness import CheckResult, RunConfig, VerificationReport, run
from .jets import Jet
from .models import (BlockElement, adjoint_exp, bracket, embed_gl,
                     embed_uplus, flip_minus_blocks, flip_odd_blocks,
                     from_coordinates, is_minimal_member, pair_to_nilpotent,
                     so_basis, to_coordinates, torus_generator)
from .reduction import (closed_orbit_sweep, cstar_act, is_shell_member,
                        isotropy_label, orbit_equivalent, orbit_status,
                        shell_equation_system, slice_model_cstar,
                        slice_model_z2, stratum_label)
from .symplectic import (LiftedPoint, assemble_lift, curve_derivative_residual,
                         eta_df_beta_residual, hamiltonian_pairing_residual,
                         kks_gram_rank, recover_lift)
from .vgit import (alpha_pushforward, boundary_report,
                   central_component_parametrization, exceptional_fiber,
                   is_semistable, minus_fiber_report, minus_graph_dimension,
                   quotient_image)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # modules
    "certificates", "harness", "jets", "linalg", "models", "reduction",
    "sampling", "serialize", "symplectic", "vgit",
    # certificates
    "DimensionCertificate", "EquationSystem", "Parametrization",
    "certify_equations", "certify_parametrization",
    # harness
    "CheckResult", "RunConfig", "VerificationReport", "run",
    # jets and models
    "Jet", "BlockElement", "adjoint_exp", "bracket", "embed_gl",
    "embed_uplus", "flip_minus_blocks", "flip_odd_blocks",
    "from_coordinates", "is_minimal_member", "pair_to_nilpotent",
    "so_basis", "to_coordinates", "torus_generator",
    # reduction
    "closed_orbit_sweep", "cstar_act", "is_shell_member", "isotropy_label",
    "orbit_equivalent", "orbit_status", "shell_equation_system",
    "slice_model_cstar", "slice_model_z2", "stratum_label",
    # symplectic
    "LiftedPoint", "assemble_lift", "curve_derivative_residual",
    "eta_df_beta_residual", "hamiltonian_pairing_residual", "kks_gram_rank",
    "recover_lift",
    # vgit
    "alpha_pushforward", "boundary_report",
    "central_component_parametrization", "exceptional_fiber",
    "is_semistable", "minus_fiber_report", "minus_graph_dimension",
    "quotient_image",
]
