"""Construction and verification of (n, k, r, t) information-symbol LRCs
given by standard-form parity-check matrices ``H = [P | I]``."""

__version__ = "0.1.0"

from .finite_field import FieldSpec, make_field  # noqa: E402
from .gf_matrix import GfMatrix  # noqa: E402
from .lrc_core import StandardParityCheck, check_islrc  # noqa: E402
from .constructions import Fill, construct1, construct2  # noqa: E402

__all__ = [
    "FieldSpec",
    "Fill",
    "GfMatrix",
    "StandardParityCheck",
    "check_islrc",
    "construct1",
    "construct2",
    "make_field",
]
