"""Sparse maps keyed by vertex pairs.

Keys are packed into one int64, ``(u << 32) | v``, and stored sorted
alongside a float64 value array, which keeps millions of entries cheap.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

_SHIFT = np.int64(32)
_MASK = np.int64(0xFFFFFFFF)


def pack(u: int, v: int) -> int:
    return (u << 32) | v


def canonical_key(u: int, v: int) -> int:
    if u == v:
        raise KeyError("pairs of identical vertices are not stored")
    return pack(u, v) if u < v else pack(v, u)


def unpack(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    keys = np.asarray(keys, dtype=np.int64)
    return keys >> _SHIFT, keys & _MASK


def _coalesce(keys: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if keys.size == 0:
        return np.empty(0, np.int64), np.empty(0, np.float64)
    uniq, inv = np.unique(keys, return_inverse=True)
    return uniq, np.bincount(inv, weights=values, minlength=uniq.size)


class PairMap:
    """Read-only pair -> float map.

    With ``symmetric=True`` the pair is unordered and stored once with
    ``u < v``; otherwise ``(u, v)`` and ``(v, u)`` are distinct keys.
    Missing pairs read as 0.
    """

    def __init__(self, keys=None, values=None, symmetric: bool = True):
        self.symmetric = symmetric
        self._keys = np.empty(0, np.int64) if keys is None else np.asarray(keys, np.int64)
        self._values = np.empty(0, np.float64) if values is None else np.asarray(values, np.float64)

    def _key(self, u: int, v: int) -> int:
        return canonical_key(u, v) if self.symmetric else pack(u, v)

    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self._keys, self._values

    @property
    def keys_array(self) -> np.ndarray:
        return self._arrays()[0]

    @property
    def values_array(self) -> np.ndarray:
        return self._arrays()[1]

    def get(self, u: int, v: int, default: float = 0.0) -> float:
        if u == v:
            return default
        keys, values = self._arrays()
        k = self._key(u, v)
        i = int(np.searchsorted(keys, k))
        if i < keys.size and keys[i] == k:
            return float(values[i])
        return default

    def __getitem__(self, pair: tuple[int, int]) -> float:
        return self.get(*pair)

    def __len__(self) -> int:
        return int(self._arrays()[0].size)

    def items(self) -> Iterator[tuple[int, int, float]]:
        keys, values = self._arrays()
        us, vs = unpack(keys)
        yield from zip(us.tolist(), vs.tolist(), values.tolist())

    def nonzero(self, threshold: float = 0.0) -> Iterator[tuple[int, int, float]]:
        return ((u, v, x) for u, v, x in self.items() if x > threshold)

    def argmax(self) -> tuple[int, int, float]:
        keys, values = self._arrays()
        if keys.size == 0:
            raise ValueError("empty pair map")
        i = int(np.argmax(values))
        u, v = unpack(keys[i:i + 1])
        return int(u[0]), int(v[0]), float(values[i])

    def row_sums(self, n: int) -> np.ndarray:
        """Sum of ``|value|`` over pairs containing each vertex."""
        keys, values = self._arrays()
        us, vs = unpack(keys)
        out = np.bincount(us, weights=np.abs(values), minlength=n)
        out += np.bincount(vs, weights=np.abs(values), minlength=n)
        return out

    def to_dense(self, n: int) -> np.ndarray:
        keys, values = self._arrays()
        us, vs = unpack(keys)
        mat = np.zeros((n, n))
        mat[us, vs] = values
        if self.symmetric:
            mat[vs, us] = values
        return mat

    def map_values(self, values: np.ndarray, symmetric: bool | None = None) -> "PairMap":
        keys, _ = self._arrays()
        return PairMap(keys.copy(), values, self.symmetric if symmetric is None else symmetric)

    @classmethod
    def from_dense(cls, mat: np.ndarray, symmetric: bool = True) -> "PairMap":
        """Collect nonzero entries; a symmetric map reads the upper triangle."""
        mat = np.asarray(mat, dtype=np.float64)
        if symmetric:
            us, vs = np.nonzero(np.triu(mat, 1))
        else:
            off = mat.copy()
            np.fill_diagonal(off, 0.0)
            us, vs = np.nonzero(off)
        keys = (us.astype(np.int64) << _SHIFT) | vs.astype(np.int64)
        return cls(keys, mat[us, vs], symmetric)

    def __repr__(self) -> str:
        kind = "symmetric" if self.symmetric else "directed"
        return f"{type(self).__name__}({len(self)} {kind} entries)"


class PairAccumulator(PairMap):
    """Symmetric, mergeable accumulator of non-negative pair contributions.

    ``add`` buffers into a dict; reads and merges fold the buffer into the
    sorted arrays.
    """

    def __init__(self, keys=None, values=None):
        super().__init__(keys, values, symmetric=True)
        self._pending: dict[int, float] = {}

    def add(self, u: int, v: int, x: float) -> None:
        k = canonical_key(u, v)
        self._pending[k] = self._pending.get(k, 0.0) + x

    def add_packed(self, pending: dict[int, float]) -> None:
        """Fold a ``{canonical_key: value}`` dict in one step."""
        for k, x in pending.items():
            self._pending[k] = self._pending.get(k, 0.0) + x

    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._pending:
            pk = np.fromiter(self._pending.keys(), np.int64, len(self._pending))
            pv = np.fromiter(self._pending.values(), np.float64, len(self._pending))
            self._pending = {}
            self._keys, self._values = _coalesce(
                np.concatenate([self._keys, pk]), np.concatenate([self._values, pv])
            )
        return self._keys, self._values

    def merge(self, other: "PairAccumulator") -> "PairAccumulator":
        k1, v1 = self._arrays()
        k2, v2 = other._arrays()
        return PairAccumulator(*_coalesce(np.concatenate([k1, k2]), np.concatenate([v1, v2])))

    __add__ = merge

    def scaled(self, factor: float) -> "PairAccumulator":
        keys, values = self._arrays()
        return PairAccumulator(keys.copy(), values * factor)

    @classmethod
    def from_dense(cls, mat: np.ndarray, symmetric: bool = True) -> "PairAccumulator":
        pm = PairMap.from_dense(mat, symmetric=True)
        return cls(pm._keys, pm._values)
