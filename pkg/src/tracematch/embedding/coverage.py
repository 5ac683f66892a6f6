from __future__ import annotations

from typing import Dict

from ..lang.ast import Location
from ..lang.trace import Trace
from ..lang.values import LibRecord
from .types import MappingFunction


def check_observed_coverage(pi: MappingFunction, impl_trace: Trace) -> bool:
    """Full-matching side conditions on one implementation trace.

    Between two successive iteration markers of the same loop some entry
    must sit at an image location, and every library-call entry must sit
    at an image location.
    """
    images = set()
    for image in pi.values():
        images.update(image)
    observed = 0
    last_marker: Dict[Location, int] = {}
    for e in impl_trace:
        if e.is_marker:
            prev = last_marker.get(e.loc)
            if prev is not None and prev == observed:
                return False
            last_marker[e.loc] = observed
            continue
        if e.loc in images:
            observed += 1
        elif type(e.value) is LibRecord:
            return False
    return True
