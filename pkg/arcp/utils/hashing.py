import hashlib
from dataclasses import dataclass


@dataclass(frozen=True)
class HashAlgorithm:
    alg_id: str
    hashlib_name: str
    digest_size: int

    def new(self):
        return hashlib.new(self.hashlib_name)


class HashRegistry:
    """Maps ni algorithm identifiers to hashlib constructors.

    Registering an algorithm here is all that is needed for minting,
    verification and digest-length checks to accept it.
    """

    def __init__(self):
        self._algorithms = {}

    def register(self, alg_id, hashlib_name, digest_size):
        algorithm = HashAlgorithm(alg_id.lower(), hashlib_name, digest_size)
        self._algorithms[algorithm.alg_id] = algorithm
        return algorithm

    def get(self, alg_id):
        return self._algorithms.get((alg_id or '').lower())

    def is_registered(self, alg_id):
        return self.get(alg_id) is not None

    def digest_size(self, alg_id):
        algorithm = self.get(alg_id)
        return algorithm.digest_size if algorithm else None


def digest_stream(hasher, stream, chunk_size):
    """Feed a binary stream through hasher in chunks; returns bytes read"""
    total = 0
    while True:
        chunk = stream.read(chunk_size)
        if not chunk:
            break
        hasher.update(chunk)
        total += len(chunk)
    return total
