from .counting import CountReport, count, count_by_discriminant
from .oracles import cyclic_field_count, oracle_cyclic, oracle_pure_cubic, pure_cubic_conductor
from .sieve import CoefficientStream, coefficients, constituent_streams
from .spec import EulerFactor, SeriesSpec, build_spec
