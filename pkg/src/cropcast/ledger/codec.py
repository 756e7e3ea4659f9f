"""Contract call data codec and the stored prediction record.

The contract's single mutating function appends one prediction. Its call
data layout is:

    4-byte selector
    2-byte big-endian crop name length L
    L bytes UTF-8 crop name
    seven 8-byte big-endian unsigned fields, parameter order
        n, p, k, ph, rain, temp, hum

Numeric fields are fixed-point: real value times 100, rounded half-up.
The selector is the first 4 bytes of Keccak-256 of the function signature
string.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..dataset import SensorReading
from ..errors import (
    CallDataEncodingError,
    EncodeError,
    MalformedCallDataError,
    UnknownFunctionError,
)
from .keccak import keccak256

ADD_PREDICTION_SIGNATURE = (
    "addPrediction(string,uint256,uint256,uint256,uint256,uint256,uint256,uint256)"
)
ADD_PREDICTION_SELECTOR = keccak256(ADD_PREDICTION_SIGNATURE.encode("ascii"))[:4]

FIXED_POINT_SCALE = 100
_U64_MAX = 2 ** 64 - 1
_MAX_NAME_BYTES = 65535

# call data numeric field order (differs from the canonical feature order)
_FIELD_ORDER = ("n", "p", "k", "ph", "rain", "temp", "hum")


def to_fixed_point(value: float) -> int:
    """Scale by 100 and round half-up. Values must be finite and non-negative."""
    if not math.isfinite(value) or value < 0:
        raise EncodeError(f"fixed-point value must be finite and >= 0, got {value!r}")
    return int(math.floor(value * FIXED_POINT_SCALE + 0.5))


@dataclass(frozen=True)
class PredictionRecord:
    """The eight attributes the contract stores per forecast."""

    crop_name: str
    n: int
    p: int
    k: int
    ph: int
    rain: int
    temp: int
    hum: int

    def __post_init__(self):
        name_bytes = self.crop_name.encode("utf-8")
        if not 1 <= len(name_bytes) <= _MAX_NAME_BYTES:
            raise EncodeError(f"crop name byte length {len(name_bytes)} outside [1, {_MAX_NAME_BYTES}]")
        for field in _FIELD_ORDER:
            v = getattr(self, field)
            if not isinstance(v, int) or not 0 <= v <= _U64_MAX:
                raise EncodeError(f"{field} must be an unsigned 64-bit integer, got {v!r}")

    @classmethod
    def from_reading(cls, crop_name: str, r: SensorReading) -> "PredictionRecord":
        return cls(
            crop_name=crop_name,
            n=to_fixed_point(r.n),
            p=to_fixed_point(r.p),
            k=to_fixed_point(r.k),
            ph=to_fixed_point(r.ph),
            rain=to_fixed_point(r.rainfall),
            temp=to_fixed_point(r.temperature),
            hum=to_fixed_point(r.humidity),
        )

    def field_values(self) -> tuple[int, ...]:
        return tuple(getattr(self, f) for f in _FIELD_ORDER)

    def as_reals(self) -> dict[str, float]:
        """Fixed-point fields back to reals (divide by 100)."""
        return {f: getattr(self, f) / FIXED_POINT_SCALE for f in _FIELD_ORDER}


def encode_add_prediction(rec: PredictionRecord) -> bytes:
    name_bytes = rec.crop_name.encode("utf-8")
    parts = [ADD_PREDICTION_SELECTOR, len(name_bytes).to_bytes(2, "big"), name_bytes]
    parts += [v.to_bytes(8, "big") for v in rec.field_values()]
    return b"".join(parts)


def decode_add_prediction(data: bytes) -> PredictionRecord:
    """Exact inverse of encode; rejects everything outside its image."""
    if len(data) < 4:
        raise MalformedCallDataError(f"call data too short: {len(data)} bytes")
    if data[:4] != ADD_PREDICTION_SELECTOR:
        raise UnknownFunctionError(f"unknown function selector 0x{data[:4].hex()}")
    if len(data) < 6:
        raise MalformedCallDataError("call data truncated before name length")
    name_len = int.from_bytes(data[4:6], "big")
    expected = 6 + name_len + 56
    if len(data) != expected:
        raise MalformedCallDataError(f"call data length {len(data)}, expected {expected}")
    if name_len == 0:
        raise MalformedCallDataError("crop name is empty")
    name_bytes = data[6:6 + name_len]
    try:
        crop_name = name_bytes.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CallDataEncodingError(f"crop name is not valid UTF-8: {exc}") from None
    if crop_name.encode("utf-8") != name_bytes:
        raise CallDataEncodingError("crop name is not canonical UTF-8")
    values = {}
    offset = 6 + name_len
    for field in _FIELD_ORDER:
        values[field] = int.from_bytes(data[offset:offset + 8], "big")
        offset += 8
    return PredictionRecord(crop_name=crop_name, **values)
