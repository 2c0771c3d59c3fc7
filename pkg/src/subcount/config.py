"""Default guard thresholds. All of them can be overridden per call."""

from __future__ import annotations

import os

# candidate states any single enumeration may visit before refusing
DEFAULT_BUDGET = 10**9

# brute-force isomorphism / automorphism search on patterns
ISO_GUARD = 10

# exhaustive walks over L(k)
MINIMAL_GUARD = 5
MONOTONE_GUARD = 4

# label keys are packed into int64, so C(k,2) must stay below 63
MAX_KEY_ORDER = 11


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SUBCOUNT_THREADS", "1")))
    except ValueError:
        return 1
