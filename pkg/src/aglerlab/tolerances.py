"""Default numerical tolerances.

The hierarchy is: construction residuals are tightest, operator identity
residuals one step looser, comparisons against independent oracles loosest.
Every function consuming one of these accepts a per-call override.
"""

CONSTRUCTION_TOL = 1e-12
"""Unitarity residual allowed for freshly constructed colligations."""

IDENTITY_TOL = 1e-10
"""Residual allowed when checking exact operator identities."""

ORACLE_TOL = 1e-6
"""Relative deviation allowed between realization formulas and oracles."""

SLACK_TOL = 1e-9
"""Inequality slack below -SLACK_TOL counts as a violation."""

ADMISSIBILITY_MARGIN = 1e-12
"""Points must satisfy ||Z(z)|| < 1 - ADMISSIBILITY_MARGIN."""

CONDITION_LIMIT = 1e14
"""Resolvent condition number beyond which a context is flagged."""

BOUNDARY_FLAG_DISTANCE = 1e-6
"""Reports with 1 - ||z|| below this are flagged, not asserted."""
