"""Bounded enumeration of packing curvatures and the reports built on it."""

from __future__ import annotations

import random
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numba
import numpy as np

from apollo.classify import ObstructionFamily, ObstructionReport, PackingType, admissible_residues
from apollo.packing import Quadruple, reduce_to_root, validate

MAX_BOUND = 1 << 40
MAGIC = b"APBM"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sB4qQ")


class BitmapFormatError(ValueError):
    pass


@dataclass
class CurvatureBitmap:
    """One bit per curvature in [1, N]: bit m lives at byte (m-1)//8, bit (m-1)%8."""

    root: Quadruple
    N: int
    bits: np.ndarray
    nodes: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.bits.dtype != np.uint8 or self.bits.shape != ((self.N + 7) // 8,):
            raise ValueError(f"bitmap for N={self.N} needs {(self.N + 7) // 8} uint8 bytes")

    def __contains__(self, m: int) -> bool:
        if not 1 <= m <= self.N:
            return False
        return bool(self.bits[(m - 1) >> 3] >> ((m - 1) & 7) & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvatureBitmap):
            return NotImplemented
        return self.root == other.root and self.N == other.N and np.array_equal(self.bits, other.bits)

    def present(self) -> np.ndarray:
        """Boolean array whose index m-1 says whether m occurs."""
        return np.unpackbits(self.bits, bitorder="little", count=self.N).astype(bool)

    def values(self) -> np.ndarray:
        return np.flatnonzero(self.present()) + 1

    def count(self) -> int:
        return int(np.unpackbits(self.bits, bitorder="little", count=self.N).sum())

    def set(self, m: int) -> None:
        if not 1 <= m <= self.N:
            raise ValueError(f"{m} outside [1, {self.N}]")
        self.bits[(m - 1) >> 3] |= np.uint8(1 << ((m - 1) & 7))

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION, *self.root, self.N))
            fh.write(self.bits.tobytes())

    @classmethod
    def load(cls, path) -> CurvatureBitmap:
        data = Path(path).read_bytes()
        if len(data) < _HEADER.size:
            raise BitmapFormatError(f"{path}: truncated header")
        magic, version, a, b, c, d, N = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise BitmapFormatError(f"{path}: bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise BitmapFormatError(f"{path}: unsupported format version {version}")
        body = data[_HEADER.size:]
        if len(body) != (N + 7) // 8:
            raise BitmapFormatError(f"{path}: expected {(N + 7) // 8} payload bytes, found {len(body)}")
        bits = np.frombuffer(body, dtype=np.uint8).copy()
        return cls(validate(a, b, c, d), N, bits)


@numba.njit(nogil=True, cache=True)
def _dfs(starts, N, bits):
    """Depth-first search below each start row (a, b, c, d, last_move).

    A child replaces entry j by 2(s - q_j) - q_j, skipping the move that made the
    node. Below the root every such child is strictly larger than what it
    replaces and new curvatures only grow, so a child above N ends its branch.
    """
    cap = 1024
    stack = np.empty((cap, 5), np.int64)
    q = np.empty(4, np.int64)
    nodes = 0
    for t in range(starts.shape[0]):
        for j in range(4):
            v = starts[t, j]
            if 1 <= v <= N:
                bits[(v - 1) >> 3] |= np.uint8(1 << ((v - 1) & 7))
            stack[0, j] = v
        stack[0, 4] = starts[t, 4]
        sp = 1
        while sp > 0:
            sp -= 1
            for j in range(4):
                q[j] = stack[sp, j]
            last = stack[sp, 4]
            nodes += 1
            s = q[0] + q[1] + q[2] + q[3]
            for j in range(4):
                if j == last:
                    continue
                old = q[j]
                new = 2 * (s - old) - old
                # at the root, non-increasing moves return the root itself
                if new <= old or new > N:
                    continue
                bits[(new - 1) >> 3] |= np.uint8(1 << ((new - 1) & 7))
                if sp == cap:
                    grown = np.empty((2 * cap, 5), np.int64)
                    grown[:cap] = stack
                    stack = grown
                    cap *= 2
                for k in range(4):
                    stack[sp, k] = q[k]
                stack[sp, j] = new
                stack[sp, 4] = j
                sp += 1
    return nodes


def _children(node: tuple[int, ...], N: int) -> list[tuple[int, ...]]:
    *q, last = node
    s = sum(q)
    out = []
    for j in range(4):
        new = 2 * (s - q[j]) - q[j]
        if j != last and q[j] < new <= N:
            child = list(q)
            child[j] = new
            out.append((*child, j))
    return out


def enumerate_curvatures(root: Quadruple, N: int, threads: int = 1) -> CurvatureBitmap:
    """Record every curvature <= N of the packing generated by ``root``.

    With threads > 1 the tree is split into subtrees below the root (one more level
    at a time until there are at least ``threads`` of them), dealt round-robin to
    workers with private bitmaps, and merged with bitwise OR. The result does not
    depend on the split.
    """
    if not 1 <= N <= MAX_BOUND:
        raise ValueError(f"bound N={N} outside [1, 2**40]")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    root = reduce_to_root(validate(root))
    if max(abs(x) for x in root) > MAX_BOUND:
        raise OverflowError(f"root {root} too large for 64-bit enumeration")

    frontier = [(*root, -1)]
    expanded = []
    while threads > 1 and len(frontier) < threads:
        nxt = [child for node in frontier for child in _children(node, N)]
        if not nxt:
            break
        expanded += frontier
        frontier = nxt

    nbytes = (N + 7) // 8
    bits = np.zeros(nbytes, dtype=np.uint8)
    nodes = len(expanded)
    for node in expanded:
        for v in node[:4]:
            if 1 <= v <= N:
                bits[(v - 1) >> 3] |= np.uint8(1 << ((v - 1) & 7))

    if threads == 1:
        nodes += _dfs(np.array(frontier, dtype=np.int64), N, bits)
    else:
        parts = [np.array(frontier[w::threads], dtype=np.int64).reshape(-1, 5) for w in range(threads)]
        private = [np.zeros(nbytes, dtype=np.uint8) for _ in parts]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(_dfs, parts, [N] * threads, private))
        nodes += sum(counts)
        for p in private:
            np.bitwise_or(bits, p, out=bits)
    return CurvatureBitmap(root, N, bits, nodes)


def sample_quadruples(root: Quadruple, N: int, count: int, seed: int = 0) -> list[Quadruple]:
    """Random descents from the root; every returned quadruple has entries <= N."""
    rng = random.Random(seed)
    root = reduce_to_root(validate(root))
    out = [root]
    if not _children((*root, -1), N):
        return out
    while len(out) < count:
        node = (*root, -1)
        while True:
            kids = _children(node, N)
            if not kids:
                break
            node = rng.choice(kids)
            out.append(Quadruple(*node[:4]))
            if len(out) >= count:
                break
    return out


@dataclass(frozen=True)
class MissingReport:
    root: Quadruple
    N: int
    type: PackingType
    classes: dict[int, tuple[int, ...]]

    def all_values(self) -> list[int]:
        return sorted(m for vals in self.classes.values() for m in vals)


@dataclass(frozen=True)
class SporadicReport:
    root: Quadruple
    N: int
    type: PackingType
    families: tuple[ObstructionFamily, ...]
    classes: dict[int, tuple[int, ...]]

    def all_values(self) -> list[int]:
        return sorted(m for vals in self.classes.values() for m in vals)

    @property
    def count(self) -> int:
        return sum(len(v) for v in self.classes.values())

    @property
    def max(self) -> int | None:
        vals = [v[-1] for v in self.classes.values() if v]
        return max(vals) if vals else None


def missing_curvatures(bm: CurvatureBitmap, t: PackingType) -> MissingReport:
    """Curvatures m <= N in an admissible class mod 24 that never occur."""
    present = bm.present()
    classes = {}
    for r in sorted(admissible_residues(t.size, t.k)):
        candidates = np.arange(r or 24, bm.N + 1, 24)
        classes[r] = tuple(int(m) for m in candidates[~present[candidates - 1]])
    return MissingReport(bm.root, bm.N, t, classes)


def obstruction_members(fam: ObstructionFamily, N: int, adm) -> list[int]:
    """Elements u w^d <= N (w >= 1) of the family that are admissible mod 24."""
    out = []
    w = 1
    while (m := fam.u * w**fam.d) <= N:
        if m % 24 in adm:
            out.append(m)
        w += 1
    return out


def sporadic_set(mr: MissingReport, report: ObstructionReport) -> SporadicReport:
    """Missing curvatures outside every predicted obstruction family."""
    if mr.type != report.type:
        raise ValueError(f"missing report is for type {mr.type}, obstruction report for {report.type}")
    fams = report.families
    classes = {r: tuple(m for m in vals if not any(m in f for f in fams)) for r, vals in mr.classes.items()}
    return SporadicReport(mr.root, mr.N, mr.type, fams, classes)


@dataclass(frozen=True)
class CooccurrenceVerdict:
    square24: tuple[int, ...]  # m with 24 m^2 present
    square8: tuple[int, ...]  # n, 3 not dividing n, with 8 n^2 present

    @property
    def passed(self) -> bool:
        return not self.square24 or not self.square8


def cooccurrence_check(bm: CurvatureBitmap) -> CooccurrenceVerdict:
    """Curvatures 24m^2 and 8n^2 (3 not dividing n) never share a packing."""
    s24 = []
    m = 1
    while 24 * m * m <= bm.N:
        if 24 * m * m in bm:
            s24.append(m)
        m += 1
    s8 = []
    n = 1
    while 8 * n * n <= bm.N:
        if n % 3 and 8 * n * n in bm:
            s8.append(n)
        n += 1
    return CooccurrenceVerdict(tuple(s24), tuple(s8))


def successive_differences(values) -> list[int]:
    values = list(values)
    diffs = [b - a for a, b in zip(values, values[1:])]
    if any(d <= 0 for d in diffs):
        raise ValueError("values must be strictly increasing")
    return diffs
