"""hermikit: exact computations around Hermitian modular and Jacobi forms
over imaginary quadratic fields."""

from .arith import CycNum, FieldDisc, FieldElem, FourierIndex, HermMatrix, Mat

__version__ = "0.1.0"

__all__ = [
    "CycNum",
    "FieldDisc",
    "FieldElem",
    "FourierIndex",
    "HermMatrix",
    "Mat",
    "__version__",
]
