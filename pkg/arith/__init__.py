from .class_numbers import class_number, class_number_a_first, reduced_forms, units_count
from .conditions import PrimeCondition
from .discriminants import Discriminant, fundamental_discriminants, is_fundamental, prime_divisors
from .kronecker import PrimeSplitting, character_table, kronecker
from .lvalues import l_value_at_1, l_value_routes
from .primes import PrimeTable, prime_iterator, prime_table, primes_up_to
