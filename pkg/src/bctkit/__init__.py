"""DDT/BCT toolkit for functions over GF(2^n)."""

__version__ = "0.1.0"

from .gf2n import Field, field_new
from .vecfun import FuncSpec, power_map, from_table, to_lut, is_permutation
from .difftab import ddt, differential_uniformity, is_apn, is_locally_apn
from .boomtab import bct, boomerang_uniformity

__all__ = [
    "Field", "field_new", "FuncSpec", "power_map", "from_table", "to_lut", "is_permutation",
    "ddt", "differential_uniformity", "is_apn", "is_locally_apn", "bct", "boomerang_uniformity",
]
