import math

HALF_PI = 0.5 * math.pi

# Largest admissible tau for f(u) = e^{-u}; keeps cos(tau) > 0.
MINUS_TAU_MAX = HALF_PI - 1e-12

# tau * tanh(tau) - 1 changes sign on this bracket.
TAU1_BRACKET = (1.0, 1.5)
TAU1_TOL = 1e-12

# |tau - tau1| below this maps to the exact mu = 0 eigenpair.
FOLD_WINDOW = 1e-10

# Beyond this sqrt(-mu) the hyperbolic eigenfunction is evaluated in factored form.
HYPERBOLIC_FACTOR_THRESHOLD = 350.0

ROOT_ABS_TOL = 1e-13
ROOT_MAX_BISECTIONS = 200
BRACKET_EPSILON = 1e-9

QUAD_TOL = 1e-10
QUAD_MAX_DEPTH = 40

ORACLE_MIN_N = 32
ORACLE_MAX_K = 32
ORACLE_BISECTION_TOL = 1e-10
ZERO_PIVOT_SCALE = 1e-300

# Grid used to estimate sup|phi| for sup-one normalization.
SUP_GRID_SIZE = 8193

CSV_DIGITS = 17
