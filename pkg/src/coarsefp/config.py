"""Global defaults.

DEFAULT_TOL is the comparison tolerance used across the toolkit unless an
operation documents a different one.
"""

DEFAULT_TOL = 1e-9

# hard caps that turn into ResourceLimitError
MAX_GROUP_ORDER = 10_000
CENTRE_MAX_ITERS = 100_000
COMPOSITION_CAP = 1000
