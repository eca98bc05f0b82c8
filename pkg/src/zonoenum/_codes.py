# Packed byte encodings of canonical sign vectors, used for vectorized dedup.
from __future__ import annotations

import numpy as np

from .core import TAU_ZERO, SignVector


def nondegenerate(proj: np.ndarray) -> np.ndarray:
    """Row mask of projections ``A^T x`` with every component away from zero."""
    return np.all(np.abs(proj) > TAU_ZERO, axis=1)


def canonical_codes(proj: np.ndarray) -> np.ndarray:
    """Pack the canonical sign pattern of each row of ``proj`` into bytes.

    Returns a 1-d array of numpy void scalars, one per row, so that
    ``np.unique`` and ``bytes(code)`` both work.
    """
    bits = (proj > 0) ^ (proj[:, :1] < 0)
    packed = np.ascontiguousarray(np.packbits(bits, axis=1))
    return packed.view(np.dtype((np.void, packed.shape[1]))).ravel()


def encode(key: SignVector) -> bytes:
    bits = np.array(key.signs) > 0
    return np.packbits(bits).tobytes()


def decode(code: bytes, m: int) -> SignVector:
    bits = np.unpackbits(np.frombuffer(bytes(code), dtype=np.uint8))[:m]
    return SignVector._trusted(tuple(int(b) * 2 - 1 for b in bits))
