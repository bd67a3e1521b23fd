"""Left-symmetric algebras, the S-equation and their phase spaces.

Objects (Algebra, SymmetricTensor, PhaseSpace) come straight from the C++ core.
Reports are returned as plain dicts with the same layout as the CLI's JSON.
"""

import json as _json

from . import _lsa
from ._lsa import (
    Algebra,
    LieAlgebra,
    LsaError,
    PhaseSpace,
    SymmetricTensor,
    DEFAULT_TOLERANCE,
    build_phase_space,
    dual_product,
    family_algebra,
    instantiate_algebra,
    instantiate_family,
    list_entries,
    phase_space_isomorphism,
    semidirect_phase_space,
    sub_adjacent,
    family_membership,
)


def _report(fn):
    def wrapper(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


left_symmetry_residual = _report(_lsa.left_symmetry_residual)
s_residual = _report(_lsa.s_residual)
s_residual_operator = _report(_lsa.s_residual_operator)
check_bialgebra = _report(_lsa.check_bialgebra)
check_parakahler = _report(_lsa.check_parakahler)
verify_symplectomorphism = _report(_lsa.verify_symplectomorphism)
solve = _report(_lsa.solve)
catalog_export = _report(_lsa.catalog_export)
regression_sweep = _report(_lsa.regression_sweep)


def theorem39(algebra, r, tol=DEFAULT_TOLERANCE):
    """Compare the phase space of r with the semidirect one via x -> x, a* -> a* - r(a*)."""
    target = build_phase_space(algebra, r, tol)
    source = semidirect_phase_space(algebra, tol)
    return verify_symplectomorphism(source, target, phase_space_isomorphism(algebra, r), tol)


__all__ = [name for name in dir() if not name.startswith("_")]
