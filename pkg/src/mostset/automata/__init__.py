from .dfa import (
    Dfa,
    complement,
    dfa_accepts,
    difference,
    equivalent,
    from_regex,
    from_words,
    intersection_language,
    is_empty,
    is_subset,
    majority_product,
    minimize,
    product,
    regex_to_dfa,
    witness,
    words_up_to,
)
from .languages import (
    DensityVerdict,
    LanguageFamily,
    NerodeEvidence,
    cumulative_0n1n,
    density_language_membership,
    nerode_evidence,
)
from .regex import parse as regex_parse
