from __future__ import print_function, division

# Default master seed, used when the caller gives none.
SEED = 42

# Cubic splines only.
DEGREE = 3
ORDER = DEGREE + 1

# Smallest admissible number of interior knots.
K_MIN = 2

# Upper limit for the number of interior knots at initialisation.
K_INIT_MAX = 10

# Gauss-Legendre nodes per knot span for moment integrals.
QUADRATURE_NODES = 8

# Fraction of the data range added on each side when bounds are derived
# from the data.
BOUNDS_PAD = 0.05

# Floor applied to the reference density inside the KL divergence.
KLD_FLOOR = 1e-12

# Relative tolerance for cached log-density drift.
CACHE_TOLERANCE = 1e-8

# Sweeps between cache drift checks.
CACHE_CHECK_EVERY = 1000

# Robbins-Monro step size exponent for burn-in adaptation.
ADAPT_EXPONENT = 0.6

# Lower and upper limits of adapted proposal scales.  tau1 is relative to
# the support width; the log-scale moves are absolute.
ADAPT_SCALE_LIMITS = {
    'tau1': (1e-6, 1.0),
    'tau2': (1e-4, 10.0),
    'tau3': (1e-3, 5.0),
    'tau4': (1e-3, 5.0),
    'tau5': (1e-3, 5.0),
    'tau_w': (1e-3, 5.0),
}
