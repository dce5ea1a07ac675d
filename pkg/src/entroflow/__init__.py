"""Exact preradicals, flows and algebraic entropy over Z and Z/n."""

from .entropy import (
    EntropyOptions,
    RingMap,
    entropy_at,
    entropy_lattice_side,
    entropy_of_endo,
    entropy_of_flow_preradical,
    entropy_of_module,
    entropy_of_preradical,
    fekete_limit,
    phi_t_eval,
    restrict_scalars,
    ring_change_report,
    trajectory,
    trajectory_profile,
)
from .errors import *  # noqa: F401,F403
from .flows import (
    E,
    Flow,
    SubFlow,
    U,
    alpha_flow,
    canonical_subflow,
    induce_flow_preradical,
    is_flow_mono,
    is_flow_morphism,
    omega_flow,
    project_flow_preradical,
)
from .invariants import LOG, RANK, InvariantTag, invariant
from .lattice import enumerate_submodules, lattice_morphism, normed_semilattice, semilattice_map
from .modules import (
    ZZ,
    Element,
    ModuleObject,
    Morphism,
    RingSpec,
    Submodule,
    bernoulli_shift,
    cardinality,
    compose,
    finite_module,
    flow_hom_generators,
    hom_generators,
    identity_morphism,
    image_of,
    intersect_submodules,
    kernel,
    matrix_morphism,
    present_module,
    preimage_of,
    quotient,
    shift_module,
    shift_morphism,
    smith_normal_form,
    submodule,
    sum_submodules,
    whole,
    zero_morphism,
    zero_submodule,
)
from .normvalue import NormValue, format_norm, parse_norm
from .parser import format_preradical, parse_preradical
from .preradicals import (
    Alpha,
    Coproduct,
    Identity,
    Join,
    Meet,
    Omega,
    Product,
    PTorsion,
    Torsion,
    Zero,
    check_naturality,
    compare_preradicals,
    eval_preradical,
)

__version__ = "0.1.0"
