"""Append-only chain persistence: one JSON object per line.

Line 0 is the chain header (format, version, config); each further line is
one block, embedding its transaction and the contract-state entry that
transaction appended. Byte fields are 0x-prefixed lowercase hex. Hashes
are always computed over the canonical binary forms, never over this text
encoding.

Opening a file re-verifies the whole chain; mutations surface either as a
load error (unparseable line, with its byte offset) or as a tamper alert
(verification violation).
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from ..errors import ChainLoadError, ChainTamperError
from .chain import (
    Block,
    Chain,
    ChainConfig,
    Transaction,
    VerificationResult,
    genesis,
    verify_chain,
)
from .codec import PredictionRecord

CHAIN_FORMAT = "cropcast-chain"
CHAIN_VERSION = 1


def _hex(raw: bytes) -> str:
    return "0x" + raw.hex()


_HEX_DIGITS = set("0123456789abcdef")


def _strict_hex(text: str, what: str) -> bytes:
    """Canonical form only: 0x prefix, lowercase digits (fromhex would also
    accept uppercase, which must not load)."""
    if not isinstance(text, str) or not text.startswith("0x"):
        raise ValueError(f"{what}: expected 0x-prefixed hex")
    body = text[2:]
    if not set(body) <= _HEX_DIGITS:
        raise ValueError(f"{what}: non-canonical hex")
    return bytes.fromhex(body)


def _unhex(text: str, length: int, what: str) -> bytes:
    raw = _strict_hex(text, what)
    if len(raw) != length:
        raise ValueError(f"{what}: expected {length} bytes, got {len(raw)}")
    return raw


def _header_line(config: ChainConfig) -> dict:
    return {
        "type": "chain",
        "format": CHAIN_FORMAT,
        "version": CHAIN_VERSION,
        "config": {
            "block_gas_limit": config.block_gas_limit,
            "gas_price": config.gas_price,
            "genesis_timestamp": config.genesis_timestamp,
            "contract_address": _hex(config.contract_address),
            "default_sender": _hex(config.default_sender),
        },
    }


def _tx_payload(tx: Transaction) -> dict:
    return {
        "nonce": tx.nonce,
        "gas_price": tx.gas_price,
        "gas_limit": tx.gas_limit,
        "to": _hex(tx.to),
        "value": tx.value,
        "data": _hex(tx.data),
        "sender": _hex(tx.sender),
        "hash": _hex(tx.hash),
    }


def _record_payload(rec: PredictionRecord) -> dict:
    return {
        "cropName": rec.crop_name,
        "n": rec.n,
        "p": rec.p,
        "k": rec.k,
        "ph": rec.ph,
        "rain": rec.rain,
        "temp": rec.temp,
        "hum": rec.hum,
    }


def block_line(block: Block, state_entry: PredictionRecord | None) -> dict:
    payload = {
        "type": "block",
        "number": block.number,
        "timestamp": block.timestamp,
        "parent_hash": _hex(block.parent_hash),
        "tx_root": _hex(block.tx_root),
        "gas_used": block.gas_used,
        "gas_limit": block.gas_limit,
        "hash": _hex(block.hash),
        "txs": [_tx_payload(tx) for tx in block.transactions],
    }
    if state_entry is not None:
        payload["state_append"] = _record_payload(state_entry)
    return payload


def _dump_line(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def persist_chain(chain: Chain, sink) -> None:
    """Write the whole chain. For incremental writes use ChainStore."""
    lines = [_dump_line(_header_line(chain.config))]
    state = chain.contract_state
    for block in chain.blocks:
        entry = state[block.number - 1] if block.number >= 1 else None
        lines.append(_dump_line(block_line(block, entry)))
    text = "".join(lines)
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="utf-8")
    else:
        sink.write(text)


def _parse_config(obj: dict) -> ChainConfig:
    cfg = obj["config"]
    return ChainConfig(
        block_gas_limit=int(cfg["block_gas_limit"]),
        gas_price=int(cfg["gas_price"]),
        genesis_timestamp=int(cfg["genesis_timestamp"]),
        contract_address=_unhex(cfg["contract_address"], 20, "contract_address"),
        default_sender=_unhex(cfg["default_sender"], 20, "default_sender"),
    )


def _parse_tx(obj: dict) -> Transaction:
    return Transaction(
        nonce=int(obj["nonce"]),
        gas_price=int(obj["gas_price"]),
        gas_limit=int(obj["gas_limit"]),
        to=_unhex(obj["to"], 20, "tx to"),
        value=int(obj["value"]),
        data=_strict_hex(obj["data"], "tx data"),
        sender=_unhex(obj["sender"], 20, "tx sender"),
        hash=_unhex(obj["hash"], 32, "tx hash"),
    )


def _parse_block(obj: dict) -> Block:
    return Block(
        number=int(obj["number"]),
        timestamp=int(obj["timestamp"]),
        parent_hash=_unhex(obj["parent_hash"], 32, "parent_hash"),
        tx_root=_unhex(obj["tx_root"], 32, "tx_root"),
        gas_used=int(obj["gas_used"]),
        gas_limit=int(obj["gas_limit"]),
        transactions=tuple(_parse_tx(t) for t in obj["txs"]),
        hash=_unhex(obj["hash"], 32, "block hash"),
    )


def _parse_record(obj: dict) -> PredictionRecord:
    return PredictionRecord(
        crop_name=obj["cropName"],
        n=int(obj["n"]),
        p=int(obj["p"]),
        k=int(obj["k"]),
        ph=int(obj["ph"]),
        rain=int(obj["rain"]),
        temp=int(obj["temp"]),
        hum=int(obj["hum"]),
    )


def load_chain(source) -> Chain:
    """Parse a persisted chain without verifying it."""
    if isinstance(source, (str, Path)):
        raw = Path(source).read_bytes()
    else:
        raw = source.read()
        if isinstance(raw, str):
            raw = raw.encode("utf-8")

    chain: Chain | None = None
    offset = 0
    for line in raw.split(b"\n"):
        # strict framing: exactly one optional trailing \r, nothing else
        record = line[:-1] if line.endswith(b"\r") else line
        if record == b"":
            offset += len(line) + 1
            continue
        try:
            obj = json.loads(record.decode("utf-8"))
            if not isinstance(obj, dict):
                raise ValueError("line is not an object")
            kind = obj.get("type")
            if kind == "chain":
                if obj.get("format") != CHAIN_FORMAT:
                    raise ValueError("missing chain format marker")
                if obj.get("version") != CHAIN_VERSION:
                    raise ValueError(
                        f"chain file version {obj.get('version')}, supported {CHAIN_VERSION}"
                    )
                chain = Chain(config=_parse_config(obj))
            elif kind == "block":
                if chain is None:
                    raise ValueError("block line before chain header")
                block = _parse_block(obj)
                chain.blocks.append(block)
                if "state_append" in obj:
                    chain.contract_state.append(_parse_record(obj["state_append"]))
                for tx in block.transactions:
                    chain.accounts[tx.sender] = chain.accounts.get(tx.sender, 0) + 1
            else:
                raise ValueError(f"unknown line type {kind!r}")
        except (ValueError, KeyError, TypeError, UnicodeDecodeError) as exc:
            raise ChainLoadError(offset, str(exc)) from None
        offset += len(line) + 1

    if chain is None or not chain.blocks:
        raise ChainLoadError(0, "file contains no chain")
    return chain


def open_chain(source) -> Chain:
    """Load and verify; a verification violation is a tamper alert."""
    chain = load_chain(source)
    result = verify_chain(chain)
    if not result.ok:
        raise ChainTamperError(f"block {result.block_number}: {result.reason}")
    return chain


class ChainStore:
    """Append-only file binding for a live chain.

    Creates the file with a header and genesis when absent; otherwise opens
    and verifies the existing chain. `append_tip` writes the newest block
    without rewriting history.
    """

    def __init__(self, path, config: ChainConfig | None = None):
        self.path = Path(path)
        if self.path.exists() and self.path.stat().st_size > 0:
            self.chain = open_chain(self.path)
        else:
            self.chain = genesis(config)
            persist_chain(self.chain, self.path)

    def append_tip(self) -> None:
        block = self.chain.tip
        entry = self.chain.contract_state[block.number - 1] if block.number >= 1 else None
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(_dump_line(block_line(block, entry)))
            fh.flush()
            os.fsync(fh.fileno())

    def verify(self) -> VerificationResult:
        return verify_chain(self.chain)
