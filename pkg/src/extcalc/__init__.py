"""Sparse exterior calculus in the coefficient representation.

k-tensors and alternating k-forms are stored as sparse maps from
1-based multi-indices to coefficients; the package provides the
multilinear algebra (tensor product, Alt, wedge, contraction,
pullback), numeric exterior derivatives, and quadrature verification of
the classical integral identities on hypercubes.
"""

__version__ = "0.1.0"

from .sparse import ArityError, DimensionError, SparseMap, DEFAULT_TOL
from .tensors import (
    KTensor,
    alt,
    evaluate_tensor,
    ktensor_from_rows,
    perm_sign,
    tensor_product,
)
from .forms import (
    KForm,
    alternating_tensor_to_form,
    contract,
    contract_matrix,
    elementary,
    evaluate_form,
    form_to_tensor,
    kform_from_rows,
    kform_general,
    pullback,
    rform,
    symbolic,
    wedge,
    wedge_definitional,
)
from .derivatives import (
    FieldForm,
    ScalarField,
    dd_check,
    demo_two_form,
    exterior_d,
    f1,
    f2,
    f3,
    fd_gradient,
    fd_hessian,
    grad,
    hat,
    omega_gradient,
)
from .stokes import (
    CubeDomain,
    QuadratureRule,
    closed_form_value,
    dphi_example,
    integrate_boundary,
    integrate_volume,
    phi_example,
    verify_det_proportionality,
    verify_stokes,
)
from .textio import ParseError, parse_form_text, parse_matrix_text

__all__ = [
    "ArityError",
    "DimensionError",
    "SparseMap",
    "DEFAULT_TOL",
    "KTensor",
    "alt",
    "evaluate_tensor",
    "ktensor_from_rows",
    "perm_sign",
    "tensor_product",
    "KForm",
    "alternating_tensor_to_form",
    "contract",
    "contract_matrix",
    "elementary",
    "evaluate_form",
    "form_to_tensor",
    "kform_from_rows",
    "kform_general",
    "pullback",
    "rform",
    "symbolic",
    "wedge",
    "wedge_definitional",
    "FieldForm",
    "ScalarField",
    "dd_check",
    "demo_two_form",
    "exterior_d",
    "f1",
    "f2",
    "f3",
    "fd_gradient",
    "fd_hessian",
    "grad",
    "hat",
    "omega_gradient",
    "CubeDomain",
    "QuadratureRule",
    "closed_form_value",
    "dphi_example",
    "integrate_boundary",
    "integrate_volume",
    "phi_example",
    "verify_det_proportionality",
    "verify_stokes",
    "ParseError",
    "parse_form_text",
    "parse_matrix_text",
]
