"""Python bindings for the HASES signature library."""

from ._hases import (
    Ceremony,
    DuplicateId,
    EpochExhausted,
    EpochRange,
    Error,
    FormatError,
    InvalidParams,
    Oracle,
    Server,
    Signer,
    UnknownId,
    bench,
    fetch_commitment,
    hash,
    hash_counters,
    keygen,
    message_to_indices,
    reset_hash_counters,
    verify,
)

__all__ = [
    "Ceremony",
    "DuplicateId",
    "EpochExhausted",
    "EpochRange",
    "Error",
    "FormatError",
    "InvalidParams",
    "Oracle",
    "Server",
    "Signer",
    "UnknownId",
    "bench",
    "fetch_commitment",
    "hash",
    "hash_counters",
    "keygen",
    "message_to_indices",
    "reset_hash_counters",
    "verify",
]
