"""The explicit constructions: a circulant tournament on seven vertices and
nine adjacency matrices, each an orientation with complete competition graph.

The matrices are kept as literal 0/1 blocks and checked on every load.
"""

from __future__ import annotations

import enum
import hashlib
from functools import lru_cache

from .core import Digraph, MultipartiteTournament, PartiteStructure, first_noncompeting_pair


class WitnessId(str, enum.Enum):
    QR7 = "QR7"
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    A7 = "A7"
    A8 = "A8"
    A9 = "A9"

    @property
    def sizes(self) -> tuple[int, ...]:
        return WITNESS_SIZES[self]


WITNESS_SIZES = {
    WitnessId.QR7: (1, 1, 1, 1, 1, 1, 1),
    WitnessId.A1: (5, 1, 1, 1, 1, 1),
    WitnessId.A2: (3, 2, 1, 1, 1, 1),
    WitnessId.A3: (2, 2, 2, 1, 1, 1),
    WitnessId.A4: (5, 4, 4),
    WitnessId.A5: (4, 3, 3, 1),
    WitnessId.A6: (4, 2, 2, 2),
    WitnessId.A7: (3, 3, 3, 2),
    WitnessId.A8: (3, 3, 2, 1, 1),
    WitnessId.A9: (2, 2, 2, 2, 1),
}

# Circulant rule for QR7: i -> i+s (mod 7) for s in the nonzero squares mod 7.
QR7_STEPS = (1, 2, 4)

_MATRICES: dict[str, str] = {}

_MATRICES["A1"] = """
0000001011
0000001101
0000010110
0000010101
0000011010
1100001100
0011000110
1000100011
0101010001
0010111000
"""

_MATRICES["A2"] = """
000101010
000011101
000011011
011000011
100001001
000100101
101110000
010011100
100000110
"""

_MATRICES["A3"] = """
000000111
001011010
100010111
110010001
100000111
101100100
010100010
000101001
010001100
"""

_MATRICES["A4"] = """
0000001010110
0000001101001
0000010011001
0000010100101
0000010101010
1100000001100
0011100001100
1010000000011
0101100000011
1001000110000
0110100110000
0111011000000
1000111000000
"""

_MATRICES["A5"] = """
00001001001
00000100101
00001010110
00000111010
01010001100
10100001100
11000000011
01100010001
10010010001
11001100000
00111100010
"""

_MATRICES["A6"] = """
0000101010
0000010110
0000100101
0000011001
0101001100
1010001100
0110000011
1001000011
0011110000
1100110000
"""

_MATRICES["A7"] = """
00010000111
00001001011
00010110101
01000001110
10100001001
11000010010
11011000000
10100100010
01001100001
00101010100
00010111000
"""

_MATRICES["A8"] = """
0001000111
0000110101
0001011010
0100000011
1010000110
1000001001
1101100000
0011010001
0100011100
0010101010
"""

_MATRICES["A9"] = """
001010001
000101001
010000101
100000011
011100010
101100100
110110000
111001000
000011110
"""


class WitnessDataError(RuntimeError):
    """Embedded construction failed its self-check (a data defect, not a user error)."""


def matrix_block(wid: WitnessId | str) -> str:
    """The embedded 0/1 block, one row per line, no surrounding whitespace."""
    wid = WitnessId(wid)
    if wid is WitnessId.QR7:
        raise KeyError("QR7 is stored by its circulant rule, not as a matrix")
    return _MATRICES[wid.value].strip()


def block_checksum(wid: WitnessId | str) -> str:
    return hashlib.sha256(matrix_block(wid).encode()).hexdigest()


def _circulant(n: int, steps: tuple[int, ...]) -> Digraph:
    return Digraph.from_arcs(n, [(i, (i + s) % n) for i in range(n) for s in steps])


def _build(wid: WitnessId) -> MultipartiteTournament:
    parts = PartiteStructure(wid.sizes)
    if wid is WitnessId.QR7:
        d = _circulant(7, QR7_STEPS)
    else:
        rows = matrix_block(wid).splitlines()
        if len(rows) != parts.n or any(len(r) != parts.n for r in rows):
            raise WitnessDataError(f"{wid.value}: matrix is not {parts.n}x{parts.n}")
        d = Digraph.from_matrix([[int(c) for c in r] for r in rows])
    return MultipartiteTournament(d, parts)


@lru_cache(maxsize=None)
def load_witness(wid: WitnessId | str) -> MultipartiteTournament:
    """Return the construction ``wid``, validated and with complete competition graph."""
    wid = WitnessId(wid)
    t = _build(wid)
    try:
        t.require_valid()
    except ValueError as exc:
        raise WitnessDataError(f"{wid.value}: {exc}") from None
    pair = first_noncompeting_pair(t.d)
    if pair is not None:
        raise WitnessDataError(f"{wid.value}: vertices {pair} have no common out-neighbour")
    return t


def all_witnesses() -> dict[WitnessId, MultipartiteTournament]:
    return {wid: load_witness(wid) for wid in WitnessId}
