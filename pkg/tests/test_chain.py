import dataclasses

import pytest

from cropcast.errors import OutOfGasError, PredictionIndexError, TimestampOrderError
from cropcast.ledger import (
    Chain,
    ChainConfig,
    CONTRACT_ADDRESS,
    PredictionRecord,
    encode_add_prediction,
    gas_cost,
    genesis,
    get_prediction,
    prediction_count,
    submit_prediction,
    verify_chain,
)
from cropcast.ledger.chain import ZERO_HASH
from cropcast.rng import SplitMix64

T0 = 1_710_970_112


def record(name="rice", salt=0) -> PredictionRecord:
    return PredictionRecord(
        crop_name=name, n=9000 + salt, p=4200, k=4300, ph=650, rain=20294, temp=2088, hum=8200
    )


def chain_with(n_submissions: int) -> Chain:
    c = genesis()
    for i in range(n_submissions):
        submit_prediction(c, record(salt=i), T0 + i)
    return c


class TestGenesis:
    def test_single_empty_block(self):
        c = genesis()
        assert len(c.blocks) == 1
        block = c.blocks[0]
        assert block.number == 0
        assert block.transactions == ()
        assert block.gas_used == 0
        assert block.parent_hash == ZERO_HASH
        assert prediction_count(c) == 0

    def test_deterministic(self):
        assert genesis().blocks[0].hash == genesis().blocks[0].hash

    def test_contract_address_constant(self):
        assert CONTRACT_ADDRESS.hex() == "6a3bdfbde368418bfcefd36adf33b508fd6588f8"


class TestSubmit:
    def test_first_submission_counters(self):
        c = genesis()
        receipt = submit_prediction(c, record(), T0)
        assert receipt.block_number == 1
        assert receipt.prediction_index == 0
        assert c.blocks[1].transactions[0].nonce == 0

    def test_rice_gas_cost(self):
        data = encode_add_prediction(record("rice"))
        assert len(data) == 66
        assert gas_cost(data) == 42056  # 21000 + 16*66 + 20000
        c = genesis()
        receipt = submit_prediction(c, record("rice"), T0)
        assert receipt.gas_used == 42056

    def test_seven_submissions_chain_shape(self):
        c = chain_with(7)
        assert c.tip.number == 7
        assert all(len(b.transactions) == 1 for b in c.blocks[1:])

    def test_nonce_sequence(self):
        c = chain_with(3)
        assert [b.transactions[0].nonce for b in c.blocks[1:]] == [0, 1, 2]

    def test_two_senders_independent_nonces(self):
        c = genesis()
        alice = b"\x01" * 20
        bob = b"\x02" * 20
        submit_prediction(c, record(), T0, sender=alice)
        submit_prediction(c, record(), T0, sender=bob)
        submit_prediction(c, record(), T0, sender=alice)
        assert [b.transactions[0].nonce for b in c.blocks[1:]] == [0, 0, 1]

    def test_out_of_gas_leaves_state_unchanged(self):
        config = ChainConfig(block_gas_limit=42_055)  # one short of the rice cost
        c = genesis(config)
        before_blocks = list(c.blocks)
        with pytest.raises(OutOfGasError):
            submit_prediction(c, record("rice"), T0)
        assert c.blocks == before_blocks
        assert prediction_count(c) == 0

    def test_timestamp_must_not_decrease(self):
        c = genesis()
        submit_prediction(c, record(), T0 + 100)
        with pytest.raises(TimestampOrderError):
            submit_prediction(c, record(), T0 + 99)
        assert c.tip.number == 1

    def test_parent_links(self):
        c = chain_with(3)
        for i in range(1, 4):
            assert c.blocks[i].parent_hash == c.blocks[i - 1].hash


class TestGetPrediction:
    def test_roundtrip(self):
        c = genesis()
        r0, r1 = record("rice"), record("maize", salt=5)
        i0 = submit_prediction(c, r0, T0).prediction_index
        submit_prediction(c, r1, T0 + 1)
        assert get_prediction(c, i0) == r0
        assert get_prediction(c, 1) == r1

    def test_empty_out_of_bounds(self):
        with pytest.raises(PredictionIndexError):
            get_prediction(genesis(), 0)

    def test_count_tracks_submissions(self):
        c = genesis()
        assert prediction_count(c) == 0
        for i in range(5):
            submit_prediction(c, record(salt=i), T0 + i)
        assert prediction_count(c) == 5


class TestVerify:
    def test_intact_chain_ok(self):
        assert verify_chain(chain_with(10)).ok

    def test_genesis_only_ok(self):
        assert verify_chain(genesis()).ok

    def test_tampered_tx_data_detected(self):
        c = chain_with(4)
        victim = c.blocks[2]
        tx = victim.transactions[0]
        flipped = bytearray(tx.data)
        flipped[10] ^= 0x01
        bad_tx = dataclasses.replace(tx, data=bytes(flipped))
        c.blocks[2] = dataclasses.replace(victim, transactions=(bad_tx,))
        result = verify_chain(c)
        assert not result.ok
        assert result.block_number == 2

    def test_tampered_contract_state_detected(self):
        c = chain_with(3)
        c.contract_state[0] = dataclasses.replace(c.contract_state[0], crop_name="weeds")
        result = verify_chain(c)
        assert not result.ok
        assert "replay" in result.reason or "state" in result.reason

    def test_reordered_blocks_detected(self):
        c = chain_with(3)
        c.blocks[1], c.blocks[2] = c.blocks[2], c.blocks[1]
        assert not verify_chain(c).ok

    def test_forged_nonce_detected(self):
        c = chain_with(3)
        victim = c.blocks[3]
        tx = dataclasses.replace(victim.transactions[0], nonce=7)
        tx = dataclasses.replace(tx, hash=tx.compute_hash())  # re-seal to dodge the hash check
        from cropcast.ledger.chain import compute_tx_root

        forged = dataclasses.replace(
            victim, transactions=(tx,), tx_root=compute_tx_root((tx,))
        )
        forged = dataclasses.replace(forged, hash=forged.compute_hash())
        c.blocks[3] = forged
        result = verify_chain(c)
        assert not result.ok
        assert "nonce" in result.reason

    def test_append_only_prefix_stability(self):
        rng = SplitMix64(4)
        c = genesis()
        snapshots = []
        for i in range(12):
            submit_prediction(c, record(salt=rng.randrange(1000)), T0 + i)
            snapshots.append(list(c.blocks))
        for m, snap in enumerate(snapshots, start=1):
            assert c.blocks[: m + 1] == snap
