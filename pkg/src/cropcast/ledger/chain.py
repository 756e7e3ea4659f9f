"""Single-writer hash-linked chain executing the prediction contract.

Every submission mines exactly one block holding exactly one transaction
("instamine"). Hashing is Keccak-256 over fixed canonical binary layouts:

    transaction: nonce(8) gas_price(8) gas_limit(8) to(20) value(8)
                 data_len(4) data           -- all big-endian
    header:      number(8) timestamp(8) parent_hash(32) tx_root(32)
                 gas_used(8) gas_limit(8)
    tx_root:     Keccak-256 of the concatenated transaction hashes,
                 or 32 zero bytes for an empty block

Gas is a simplified cost model: 21000 base + 16 per call data byte +
20000 storage surcharge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import (
    DecodeError,
    OutOfGasError,
    PredictionIndexError,
    TimestampOrderError,
)
from .codec import PredictionRecord, decode_add_prediction, encode_add_prediction
from .keccak import keccak256

ZERO_HASH = bytes(32)

GAS_BASE = 21_000
GAS_PER_DATA_BYTE = 16
GAS_STORAGE_SURCHARGE = 20_000

DEFAULT_BLOCK_GAS_LIMIT = 6_721_975
DEFAULT_GAS_PRICE = 20_000_000_000
DEFAULT_GENESIS_TIMESTAMP = 1_710_970_112

# Contract address fixed at genesis: last 20 bytes of Keccak-256 of the
# contract name. No deployment transaction exists.
CONTRACT_ADDRESS = keccak256(b"CropPrediction")[-20:]
DEFAULT_SENDER = keccak256(b"cropcast.default-sender")[-20:]


def gas_cost(data: bytes) -> int:
    return GAS_BASE + GAS_PER_DATA_BYTE * len(data) + GAS_STORAGE_SURCHARGE


def to_hex(raw: bytes) -> str:
    return "0x" + raw.hex()


@dataclass(frozen=True)
class ChainConfig:
    block_gas_limit: int = DEFAULT_BLOCK_GAS_LIMIT
    gas_price: int = DEFAULT_GAS_PRICE
    genesis_timestamp: int = DEFAULT_GENESIS_TIMESTAMP
    contract_address: bytes = CONTRACT_ADDRESS
    default_sender: bytes = DEFAULT_SENDER


@dataclass(frozen=True)
class Transaction:
    nonce: int
    gas_price: int
    gas_limit: int
    to: bytes
    value: int
    data: bytes
    sender: bytes
    hash: bytes = b""

    def canonical_bytes(self) -> bytes:
        return b"".join(
            (
                self.nonce.to_bytes(8, "big"),
                self.gas_price.to_bytes(8, "big"),
                self.gas_limit.to_bytes(8, "big"),
                self.to,
                self.value.to_bytes(8, "big"),
                len(self.data).to_bytes(4, "big"),
                self.data,
            )
        )

    def compute_hash(self) -> bytes:
        return keccak256(self.canonical_bytes())

    def sealed(self) -> "Transaction":
        return Transaction(
            nonce=self.nonce,
            gas_price=self.gas_price,
            gas_limit=self.gas_limit,
            to=self.to,
            value=self.value,
            data=self.data,
            sender=self.sender,
            hash=self.compute_hash(),
        )


def compute_tx_root(transactions: tuple[Transaction, ...]) -> bytes:
    if not transactions:
        return ZERO_HASH
    return keccak256(b"".join(tx.hash for tx in transactions))


@dataclass(frozen=True)
class Block:
    number: int
    timestamp: int
    parent_hash: bytes
    tx_root: bytes
    gas_used: int
    gas_limit: int
    transactions: tuple[Transaction, ...]
    hash: bytes = b""

    def header_bytes(self) -> bytes:
        return b"".join(
            (
                self.number.to_bytes(8, "big"),
                self.timestamp.to_bytes(8, "big"),
                self.parent_hash,
                self.tx_root,
                self.gas_used.to_bytes(8, "big"),
                self.gas_limit.to_bytes(8, "big"),
            )
        )

    def compute_hash(self) -> bytes:
        return keccak256(self.header_bytes())

    def sealed(self) -> "Block":
        return Block(
            number=self.number,
            timestamp=self.timestamp,
            parent_hash=self.parent_hash,
            tx_root=self.tx_root,
            gas_used=self.gas_used,
            gas_limit=self.gas_limit,
            transactions=self.transactions,
            hash=self.compute_hash(),
        )


@dataclass(frozen=True)
class TxReceipt:
    tx_hash: bytes
    block_number: int
    gas_used: int
    prediction_index: int


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    block_number: int | None = None
    reason: str | None = None

    @staticmethod
    def passed() -> "VerificationResult":
        return VerificationResult(ok=True)

    @staticmethod
    def violation(block_number: int, reason: str) -> "VerificationResult":
        return VerificationResult(ok=False, block_number=block_number, reason=reason)


@dataclass
class Chain:
    """Blocks plus the contract's derived state. Mutated only by submissions."""

    config: ChainConfig
    blocks: list[Block] = field(default_factory=list)
    contract_state: list[PredictionRecord] = field(default_factory=list)
    accounts: dict[bytes, int] = field(default_factory=dict)

    @property
    def tip(self) -> Block:
        return self.blocks[-1]

    def height(self) -> int:
        return len(self.blocks) - 1


def genesis(config: ChainConfig | None = None) -> Chain:
    config = config or ChainConfig()
    block = Block(
        number=0,
        timestamp=config.genesis_timestamp,
        parent_hash=ZERO_HASH,
        tx_root=ZERO_HASH,
        gas_used=0,
        gas_limit=config.block_gas_limit,
        transactions=(),
    ).sealed()
    return Chain(config=config, blocks=[block])


def submit_prediction(
    chain: Chain,
    rec: PredictionRecord,
    timestamp: int,
    sender: bytes | None = None,
) -> TxReceipt:
    """Execute the append on the contract and mine one block for it.

    On failure nothing is mutated: gas and timestamp are checked before any
    state change.
    """
    sender = sender if sender is not None else chain.config.default_sender
    data = encode_add_prediction(rec)
    used = gas_cost(data)
    if used > chain.config.block_gas_limit:
        raise OutOfGasError(f"needs {used} gas, block limit {chain.config.block_gas_limit}")
    if timestamp < chain.tip.timestamp:
        raise TimestampOrderError(
            f"timestamp {timestamp} earlier than chain tip {chain.tip.timestamp}"
        )

    tx = Transaction(
        nonce=chain.accounts.get(sender, 0),
        gas_price=chain.config.gas_price,
        gas_limit=chain.config.block_gas_limit,
        to=chain.config.contract_address,
        value=0,
        data=data,
        sender=sender,
    ).sealed()

    stored = decode_add_prediction(data)  # the contract re-reads its own call data
    prediction_index = len(chain.contract_state)

    block = Block(
        number=len(chain.blocks),
        timestamp=timestamp,
        parent_hash=chain.tip.hash,
        tx_root=compute_tx_root((tx,)),
        gas_used=used,
        gas_limit=chain.config.block_gas_limit,
        transactions=(tx,),
    ).sealed()

    chain.blocks.append(block)
    chain.contract_state.append(stored)
    chain.accounts[sender] = tx.nonce + 1
    return TxReceipt(
        tx_hash=tx.hash,
        block_number=block.number,
        gas_used=used,
        prediction_index=prediction_index,
    )


def get_prediction(chain: Chain, index: int) -> PredictionRecord:
    if not 0 <= index < len(chain.contract_state):
        raise PredictionIndexError(
            f"prediction index {index} out of bounds (count {len(chain.contract_state)})"
        )
    return chain.contract_state[index]


def prediction_count(chain: Chain) -> int:
    return len(chain.contract_state)


def verify_chain(chain: Chain) -> VerificationResult:
    """Recompute every hash and replay every transaction.

    Returns ok or the first violation (block number + reason); never raises
    on bad content.
    """
    if not chain.blocks:
        return VerificationResult.violation(0, "chain has no genesis block")

    config = chain.config
    nonces: dict[bytes, int] = {}
    replayed: list[PredictionRecord] = []
    prev: Block | None = None

    for i, block in enumerate(chain.blocks):
        if block.number != i:
            return VerificationResult.violation(i, f"block number {block.number}, expected {i}")
        if block.gas_limit != config.block_gas_limit:
            return VerificationResult.violation(i, "block gas limit differs from configured limit")
        if i == 0:
            if block.parent_hash != ZERO_HASH:
                return VerificationResult.violation(0, "genesis parent hash not zero")
            if block.transactions:
                return VerificationResult.violation(0, "genesis block carries transactions")
            if block.gas_used != 0:
                return VerificationResult.violation(0, "genesis gas_used not zero")
            if block.timestamp != config.genesis_timestamp:
                return VerificationResult.violation(0, "genesis timestamp differs from configured")
        else:
            if block.parent_hash != prev.hash:
                return VerificationResult.violation(i, "parent hash does not match previous block")
            if block.timestamp < prev.timestamp:
                return VerificationResult.violation(i, "timestamp decreases")
            if len(block.transactions) != 1:
                return VerificationResult.violation(
                    i, f"block carries {len(block.transactions)} transactions, expected 1"
                )
            tx = block.transactions[0]
            if tx.compute_hash() != tx.hash:
                return VerificationResult.violation(i, "transaction hash mismatch")
            if tx.to != config.contract_address:
                return VerificationResult.violation(i, "transaction recipient is not the contract")
            if tx.value != 0:
                return VerificationResult.violation(i, "contract call value is not zero")
            if tx.gas_price != config.gas_price:
                return VerificationResult.violation(i, "gas price differs from configured")
            if tx.gas_limit != config.block_gas_limit:
                return VerificationResult.violation(i, "transaction gas limit differs from configured")
            expected_nonce = nonces.get(tx.sender, 0)
            if tx.nonce != expected_nonce:
                return VerificationResult.violation(
                    i, f"sender nonce {tx.nonce}, expected {expected_nonce}"
                )
            nonces[tx.sender] = expected_nonce + 1
            if block.gas_used != gas_cost(tx.data):
                return VerificationResult.violation(i, "gas_used does not match the cost model")
            if block.gas_used > block.gas_limit:
                return VerificationResult.violation(i, "gas_used exceeds gas limit")
            try:
                replayed.append(decode_add_prediction(tx.data))
            except DecodeError as exc:
                return VerificationResult.violation(i, f"call data does not decode: {exc}")
        if block.tx_root != compute_tx_root(block.transactions):
            return VerificationResult.violation(i, "transaction root mismatch")
        if block.compute_hash() != block.hash:
            return VerificationResult.violation(i, "block hash mismatch")
        prev = block

    if len(replayed) != len(chain.contract_state):
        return VerificationResult.violation(
            chain.height(), "contract state length differs from replay"
        )
    for idx, (a, b) in enumerate(zip(replayed, chain.contract_state)):
        if a != b:
            return VerificationResult.violation(
                chain.height(), f"contract state entry {idx} differs from replay"
            )
    return VerificationResult.passed()
