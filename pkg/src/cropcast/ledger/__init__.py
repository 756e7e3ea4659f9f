from .chain import (
    Block,
    Chain,
    ChainConfig,
    Transaction,
    TxReceipt,
    VerificationResult,
    CONTRACT_ADDRESS,
    gas_cost,
    genesis,
    get_prediction,
    prediction_count,
    submit_prediction,
    verify_chain,
)
from .codec import (
    ADD_PREDICTION_SELECTOR,
    ADD_PREDICTION_SIGNATURE,
    FIXED_POINT_SCALE,
    PredictionRecord,
    decode_add_prediction,
    encode_add_prediction,
    to_fixed_point,
)
from .keccak import keccak256
from .store import ChainStore, open_chain, persist_chain

__all__ = [
    "Block",
    "Chain",
    "ChainConfig",
    "ChainStore",
    "Transaction",
    "TxReceipt",
    "VerificationResult",
    "CONTRACT_ADDRESS",
    "ADD_PREDICTION_SELECTOR",
    "ADD_PREDICTION_SIGNATURE",
    "FIXED_POINT_SCALE",
    "PredictionRecord",
    "keccak256",
    "encode_add_prediction",
    "decode_add_prediction",
    "to_fixed_point",
    "gas_cost",
    "genesis",
    "get_prediction",
    "prediction_count",
    "submit_prediction",
    "verify_chain",
    "persist_chain",
    "open_chain",
]
