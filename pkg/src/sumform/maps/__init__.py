"""
Function models on the unit interval: additive maps, multiplicative maps
and the declared function forms consumed by every equation.
"""

from sumform.maps.additive import AdditiveMap, make_additive, eval_additive
from sumform.maps.multiplicative import (
    MultiplicativeKind, MultiplicativeMap, make_multiplicative, eval_multiplicative,
    check_unit_interval,
)
from sumform.maps.functions import (
    IntervalFunction, AffineAdditive, MultCombo, Transformed, Lifted, Table,
    MemoizedFunction, unwrap, identity_function, constant_function, power_function,
    eval_interval_function, function_from_dict, functions_from_list, functions_to_list,
)

__all__ = [
    "AdditiveMap",
    "make_additive",
    "eval_additive",
    "MultiplicativeKind",
    "MultiplicativeMap",
    "make_multiplicative",
    "eval_multiplicative",
    "check_unit_interval",
    "IntervalFunction",
    "AffineAdditive",
    "MultCombo",
    "Transformed",
    "Lifted",
    "Table",
    "MemoizedFunction",
    "unwrap",
    "identity_function",
    "constant_function",
    "power_function",
    "eval_interval_function",
    "function_from_dict",
    "functions_from_list",
    "functions_to_list",
]
