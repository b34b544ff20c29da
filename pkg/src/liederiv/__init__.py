"""Exact-arithmetic toolkit for derivations and local derivations of
structure-constant Lie algebras."""

from .exactfield import (
    FIELD_Q,
    FIELD_QI,
    FieldMismatchError,
    GaussianRational,
    Rational,
    embed_rational,
    format_scalar,
    inv,
    parse_scalar,
)
from .linalg import Matrix, Subspace, member, nullspace, rref, subspace_intersect, subspace_sum
from .liealg import (
    AlgebraElement,
    JacobiError,
    LieAlgebra,
    ad,
    bracket,
    center,
    check_jacobi,
    load,
    make_abelian,
    make_heisenberg,
    make_schrodinger,
    make_sl2,
    save,
)
from .dersolve import (
    DerDecomposition,
    DerivationSpace,
    decompose,
    derivation_space,
    flatten_map,
    inner_space,
    is_derivation,
    leibniz_system,
    sigma,
    tau,
    unflatten_map,
)
from .locder import (
    CandidateSpace,
    CertificationError,
    LocalityCertificate,
    Probe,
    Witness,
    asos_shape_check,
    basis_probe_space,
    certify_local_symbolic,
    constrain,
    orbit_subspace,
    schrodinger_probe_schedule,
    random_probe_closure,
    replay_proof,
    witness,
)

__version__ = "0.1.0"
