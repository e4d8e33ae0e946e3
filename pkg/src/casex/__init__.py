"""Case-X spectra of paramagnetic polar molecules in crossed E and B fields."""

__version__ = "0.1.0"

from casex.angular import HalfInt, half, wigner_3j, wigner_small_d  # noqa: E402
from casex.errors import (  # noqa: E402
    CaseXError,
    DegenerateAxisError,
    NumericError,
    ValidationError,
)
from casex.fields import FieldConfig, combined_field, theta_c, tilt_angle  # noqa: E402
from casex.molecule import ElectronicState, load_molecule  # noqa: E402
