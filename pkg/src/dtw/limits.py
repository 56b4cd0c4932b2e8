"""Resource budgets for the brute-force parts of the package.

Every budget can be overridden globally through the ``DTW_BUDGET``
environment variable (a single integer applied to all kinds), or per call
via the explicit argument that each budgeted operation accepts.
"""

import os

DEFAULT_BUDGETS = {
    # node budget for subcoalition expansion
    "expand-nodes": 10**6,
    # (initial state, complete profile) pairs enumerated by the validator
    "seriality-checks": 10**7,
    # candidate models enumerated by exhaustive searches
    "exhaustive-models": 10**6,
    # subcoalition checks performed by the direct minimality checkers
    "minimality-iterations": 10**6,
}


def budget(kind: str, explicit=None) -> int:
    """Resolve the budget for ``kind``: explicit arg > env var > default."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get("DTW_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"DTW_BUDGET must be an integer, got {env!r}") from exc
    return DEFAULT_BUDGETS[kind]
