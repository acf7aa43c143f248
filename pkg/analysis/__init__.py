from .error_terms import CONVEXITY, LINDELOF, ErrorModel, alpha_exponent
from .residuals import ResidualRow, residual_profile
