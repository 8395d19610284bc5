"""Braid-group key exchange on the decomposition problem, with cryptanalysis tools."""

from .braid import (
    BraidError,
    BraidWord,
    GeneratorRangeError,
    StrandMismatchError,
    WordSyntaxError,
    artin_generators,
    delta,
    format_word,
    invert_word,
    is_pure,
    multiply,
    parse_word,
    permutation_of,
)
from .garside import (
    CanonicalForm,
    canonical_invert,
    canonical_length,
    canonical_multiply,
    canonical_product,
    canonical_to_word,
    commutes,
    equals,
    finishing_set,
    is_left_weighted,
    starting_set,
    to_canonical,
)
from .permutation import Permutation, cycle_type
from .keygen import (
    CommutingPair,
    SamplerConfig,
    generate_commuting_pair,
    random_word,
    sample_subgroup_element,
)
from .protocol import (
    Handshake,
    PartyState,
    ProtocolParams,
    Role,
    compute_shared_key,
    derive_session_key,
    execute_handshake,
    make_params,
    publish_subgroup,
    receive_subgroup,
    run_handshake,
    send_transmission,
)
from .wire import (
    HandshakeMessage,
    MessageKind,
    WireError,
    decode_braid,
    decode_message,
    encode_braid,
    encode_message,
    read_transcript,
    write_transcript,
)
from .cryptanalysis import (
    DecompositionInstance,
    DistinguisherVerdict,
    RecoveredPair,
    brute_force_decompose,
    check_equivalent_pair,
    distinguisher,
    distinguisher_experiment,
    length_attack,
    rho_of,
)

__version__ = "0.1.0"
