"""Lookup of registered simulation cases by id and variant."""

from typing import List, Optional

from src.errors import RegistryError
from src.simulation.cases import CASE_VARIANTS, CASES, EXTENSION_CASES, DgpSpec

__all__ = ["CASES", "CASE_VARIANTS", "EXTENSION_CASES", "DgpSpec", "get_case", "parse_case_ids"]


def get_case(case_id: int, variant: Optional[str] = None) -> DgpSpec:
    """Look up a case by id, optionally in an alternative reading."""
    if variant:
        try:
            return CASE_VARIANTS[(case_id, variant)]
        except KeyError:
            raise RegistryError(f"Case {case_id} has no variant {variant!r}")
    if case_id in CASES:
        return CASES[case_id]
    if case_id in EXTENSION_CASES:
        return EXTENSION_CASES[case_id]
    raise RegistryError(f"Unknown case id {case_id}; registered cases are 1-19")


def parse_case_ids(text: str) -> List[int]:
    """Parse "1,2,5-7" into [1, 2, 5, 6, 7], validating each id."""
    ids = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        try:
            if "-" in part:
                low, high = (int(v) for v in part.split("-", 1))
                ids.extend(range(low, high + 1))
            else:
                ids.append(int(part))
        except ValueError:
            raise RegistryError(f"Cannot parse case list {text!r}")
    for case_id in ids:
        get_case(case_id)
    if not ids:
        raise RegistryError("No case ids given")
    return ids
