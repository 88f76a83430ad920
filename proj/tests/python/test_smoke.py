import hashlib
import os

import pytest

import hases


def test_hash_matches_hashlib():
    assert hases.hash(0, b"") == hashlib.sha256(b"\x00").digest()
    assert hases.hash(2, b"abc") == hashlib.sha256(b"\x02abc").digest()
    with pytest.raises(ValueError):
        hases.hash(3, b"")


def test_indices_vector():
    assert hases.message_to_indices(b"abc")[:4] == [386, 502, 909, 722]
    assert hases.message_to_indices(b"abc", t=8, k=4) == [3, 0, 1, 1]


@pytest.mark.parametrize("scheme,batch_len", [("pq", 1), ("la", 4), ("hy", 4)])
def test_sign_verify(scheme, batch_len):
    cer = hases.keygen(scheme, ["s1", "s2"], J=16, J1=4, L=4)
    oracle = hases.Oracle()
    oracle.provision(cer.bundle)
    assert oracle.stats()["signers"] == 2

    signer = cer.signers[0]
    pub = signer.public_bytes()
    batch = [os.urandom(20) for _ in range(batch_len)]
    sig = signer.sign(batch)
    assert signer.epoch == 2
    com = oracle.commitment(scheme, "s1", 1, batch_len)
    assert hases.verify(pub, com, batch, sig) == "accept"

    bad = bytearray(sig)
    bad[-1] ^= 1
    assert hases.verify(pub, com, batch, bytes(bad)) != "accept"
    other = [b"x" + batch[0]] + batch[1:]
    assert hases.verify(pub, com, other, sig) != "accept"


def test_signer_round_trip_and_exhaustion():
    cer = hases.keygen("pq", ["a"], J=2)
    s = cer.signers[0]
    again = hases.Signer.from_bytes(s.to_bytes())
    assert again.to_bytes() == s.to_bytes()
    s.sign([b"1"])
    s.sign([b"2"])
    with pytest.raises(hases.EpochExhausted):
        s.sign([b"3"])


def test_oracle_errors():
    oracle = hases.Oracle()
    cer = hases.keygen("pq", ["a"], J=8)
    oracle.provision(cer.bundle)
    with pytest.raises(hases.DuplicateId):
        oracle.provision(cer.bundle)
    with pytest.raises(hases.UnknownId):
        oracle.commitment("pq", "nobody", 1)
    with pytest.raises(hases.EpochRange):
        oracle.commitment("pq", "a", 9)
    assert oracle.handle_request(b"\x7f") == b"\xff\x03"
    assert len(oracle.batch_export("pq", "a", 2, 5)) == 4


def test_policy_invariance():
    cer = hases.keygen("pq", ["a"], J=16)
    oracle = hases.Oracle()
    oracle.provision(cer.bundle)
    before = oracle.batch_export("pq", "a", 1, 16)
    oracle.set_storage_policy(4)
    assert oracle.stats()["anchor_bytes"] == 3 * 32
    assert oracle.batch_export("pq", "a", 1, 16) == before


def test_tcp_server():
    oracle = hases.Oracle()
    cer = hases.keygen("la", ["n"], J=4, L=2, backend="tiny")
    oracle.provision(cer.bundle)
    server = hases.Server(oracle)
    server.start()
    try:
        remote = hases.fetch_commitment("127.0.0.1", server.port, "la", "n", 3, 2)
        assert remote == oracle.commitment("la", "n", 3, 2)
    finally:
        server.stop()


def test_bench_counts():
    rows = hases.bench("pq", J2=32, iterations=3)
    assert rows["sign"]["hashes"] == 18
    assert rows["sign"]["bytes"] == 512
