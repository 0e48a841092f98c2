"""Size caps.

Everything in this package materializes powersets, so every entry point is
guarded by a cap.  CONVLAB_CAP_N overrides the poset-enumeration cap.
"""

import os

# Largest carrier for which 2^n subset enumeration is allowed.
REALIZE_CAP = 16

# Largest n accepted by enumerate_posets unless overridden.
ENUM_CAP = 6

# Largest |I| * prod |J(i)| for a fully materialized iterated-limit index.
ITERATED_CAP = 10**6


def enum_cap() -> int:
    """Poset-enumeration cap, honoring the CONVLAB_CAP_N override."""
    raw = os.environ.get("CONVLAB_CAP_N")
    if raw is None:
        return ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        return ENUM_CAP
