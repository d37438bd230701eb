"""Length-hiding padding for 5G SUCI identifiers.

Quantify how much an unpadded SUCI leaks through its length, evaluate padding
schemes against that leak, and run the fix end to end with an ECIES
Profile A codec.
"""

from .errors import (
    FrequencyTableError,
    LengthPreconditionError,
    MacMismatchError,
    PaddingError,
    SchemeError,
    SuciError,
    SuciPadError,
    SweepError,
)
from .freqdist import FrequencyTable, entropy, from_csv, from_names, min_class, read_csv
from .metrics import EvalRecord, JointDistribution, alpha1, alpha2, beta, delta, evaluate, joint
from .padding import OutputLengthDistribution, SchemeInstance, pad_bytes, padded_length, parse, unpad_bytes
from .report import emit, report_from_json
from .suci import Nai, SuciMessage, conceal, generate_keypair, observed_length, reveal
from .sweep import (
    SweepConfig,
    SweepReport,
    best_by_delta,
    best_by_threshold,
    default_config,
    evaluate_all,
    expand_grid,
    load_config,
)

__version__ = "0.1.0"
