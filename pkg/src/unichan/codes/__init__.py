from .additive import AdditiveWrap, additive_hamming_wrap
from .base import CodeInstance, DecodeFailure, RateBoundViolation, assert_rate_bound, rate_bound
from .concat import (ConcatMemoryless, ConcatPiecewise, ConcatSpec, concat_code_memoryless,
                     concat_code_piecewise)
from .descriptors import code_from_descriptor
from .hashcode import HammingHashCode, hamming_hash_code
from .reedsolomon import RSCode, rs_outer_code
from .syndrome import SyndromeCode, guv_code, random_linear_code, syndrome_code
from .toy import RandomToyCode, random_code_no_shared
