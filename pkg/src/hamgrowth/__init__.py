"""Neighborhood growth on the Hamming plane: spanning sets, large-deviation rates,
Euclidean limits and Monte Carlo checks."""
from .errors import BudgetExceededError, InternalError, InvalidInputError
from .young import YoungDiagram, parse_diagram, rectangle, triangle, lshape
from .growth import PointSet, evolve, point_set, spans, spans_enhanced, step, tmax_bound
from .extremal import gamma, gamma_bar_thin, gamma_bounds, gamma_thin
from .rate import (RateQuery, RateResult, query, rate_bootstrap_diag, rate_bounds,
                   rate_rect_closed, rate_rect_recursion, rate_search, rho, support_region)

__version__ = "0.1.0"
