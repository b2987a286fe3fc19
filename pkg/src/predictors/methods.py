from __future__ import annotations
from enum import Enum
from typing import List

from ..errors import UsageError


class Method(str, Enum):
    ALG1 = "ALG1"
    ALG2 = "ALG2"
    DADA = "DADA"
    DCNE = "DCNE"
    DHDI = "DHDI"
    DHPI = "DHPI"
    DJID = "DJID"
    DLHN = "DLHN"
    DPAT = "DPAT"
    DSAI = "DSAI"
    DSOI = "DSOI"

    @property
    def is_path_based(self) -> bool:
        return self in (Method.ALG1, Method.ALG2)

    @property
    def is_baseline(self) -> bool:
        return not self.is_path_based

    @property
    def requires_full_stream(self) -> bool:
        # Preferential attachment is nonzero for almost every pair
        return self is Method.DPAT


BASELINES = tuple(m for m in Method if m.is_baseline)


def parse_methods(text: str) -> List[Method]:
    """
    Parse a comma-separated method list (case-insensitive). ``all`` expands to
    every method in declaration order. Duplicates are dropped, order kept.
    """
    out: List[Method] = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if token.lower() == "all":
            candidates = list(Method)
        else:
            try:
                candidates = [Method(token.upper())]
            except ValueError:
                known = ", ".join(m.value for m in Method)
                raise UsageError(f"Unknown method '{token}' (known: {known})") from None
        for method in candidates:
            if method not in out:
                out.append(method)
    if not out:
        raise UsageError("At least one method is required")
    return out
