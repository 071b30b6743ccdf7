"""
JSON inputs of the command-line tool: function specs and bundle files.
"""

import json
from pathlib import Path
from typing import Any, List, Union

from sumform.errors import SpecError
from sumform.families import SolutionBundle
from sumform.maps.functions import IntervalFunction, function_from_dict, functions_from_list


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(
            "schema-violation", f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})"
        )


def _read(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError("unreadable-file", f"cannot read {path}: {e.strerror or e}")


def parse_function_spec(text: str) -> IntervalFunction:
    """
    Parse one function spec from JSON text.

    Raises:
        SpecError: ``schema-violation`` (with JSON pointer) or ``unknown-form``.

    Example::

        F = parse_function_spec('{"form":"transformed","lambda":"-1/2",'
                                '"inner":{"form":"mult_combo","scale":"1","alpha":2,'
                                '"B":["0","0","0","0"],"const":"0"}}')
        F.evaluate(Scalar.rational(1, 2))    # Scalar(1/2)
    """
    return function_from_dict(_load_json(text))


def load_function_specs(path: Union[str, Path], count: int) -> List[IntervalFunction]:
    """
    Read ``count`` functions from a file holding one spec or a list of them.

    A single spec is repeated ``count`` times.
    """
    data = _load_json(_read(path))
    if isinstance(data, list):
        return functions_from_list(data, "", count)
    return [function_from_dict(data)] * count


def load_bundle(path: Union[str, Path]) -> SolutionBundle:
    """Read a bundle written by ``sumform construct``."""
    return SolutionBundle.from_dict(_load_json(_read(path)))
