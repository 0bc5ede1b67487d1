DEFAULT_ABS_TOL = 1e-9
"""
Absolute residual bound for closed-form algebra.
"""

DEFAULT_RANK_REL = 1e-8
"""
Relative singular-value cutoff for rank-revealing orthonormalization.
"""

DEFAULT_FD_STEP = 1e-5
"""
Central-difference step for first derivatives (model scale 1).
"""

DEFAULT_FD_STEP2 = 1e-4
"""
Step for second derivatives and for derivatives of finite-difference data.
"""

FD_TOL_FIRST = 1e-5
"""
Accuracy tier of first derivatives computed by central differences.
"""

FD_TOL_SECOND = 1e-4
"""
Accuracy tier of second derivatives computed by central differences.
"""

DEFAULT_STEPS_PER_UNIT = 512
"""
Fixed RK4 steps per unit arc length for transport and Frenet integration.
"""

DEFAULT_MAX_STEP = 1e-2
"""
Largest allowed gap between consecutive samples of a sample-only curve, times the model scale.
"""

DEFAULT_ODE_TOL = 1e-7
"""
Accuracy tier of ODE-integrated quantities (per unit length).
"""

FAIL_FACTOR = 10.0
"""
A check fails outright when its residual exceeds this multiple of the tolerance.
"""

DEFAULT_SNAP_TOL = 1e-6
"""
Allowed overshoot of loop parameters outside the envelope domain.
"""

SHRINK_LIMIT = 8
"""
Maximum number of epsilon halvings when building an envelope.
"""

FRAME_JUMP = 0.5
"""
Subspace residual between consecutive frames that counts as a discontinuity.
"""

SCHEMA_VERSION = 1
"""
Version of the machine-readable run report.
"""
