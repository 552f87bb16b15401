"""Canonical vertex addresses on the gasket graph hierarchy.

A vertex is F_word(q_corner) for a word over {0,1,2}.  Junction points have
two minimal representations, F_{w i}(q_j) = F_{w j}(q_i) for i != j, and any
representation can be padded with trailing letters equal to its corner since
F_c fixes q_c.  The canonical form strips such trailing letters and then picks
the lexicographically smaller of the two twins, so equal points compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import Rat

#: Planar corner coordinates as (x, r) with y = r*sqrt(3), all rational.
CORNER_XY = ((Rat(1, 2), Rat(1, 2)), (Rat(0), Rat(0)), (Rat(1), Rat(0)))


@dataclass(frozen=True, order=True)
class VertexAddress:
    word: tuple[int, ...]
    corner: int

    @staticmethod
    def make(word, corner: int) -> "VertexAddress":
        """Canonicalize (word, corner) so equal points get equal addresses."""
        word = tuple(word)
        if corner not in (0, 1, 2) or any(c not in (0, 1, 2) for c in word):
            raise ValueError("letters and corner must be 0, 1 or 2")
        while word and word[-1] == corner:
            word = word[:-1]
        if word and word[-1] > corner:
            word, corner = word[:-1] + (corner,), word[-1]
        return VertexAddress(word, corner)

    @property
    def level(self) -> int:
        return len(self.word)

    def is_boundary(self) -> bool:
        return not self.word

    def spine_depth(self) -> int | None:
        """Depth n if this vertex is F_0^n(q_1) or F_0^n(q_2), else None."""
        if self.corner in (1, 2) and all(c == 0 for c in self.word):
            return len(self.word)
        return None

    def reflect(self) -> "VertexAddress":
        """Image under the reflection fixing q0 (swaps letters/corners 1 and 2)."""
        swap = {0: 0, 1: 2, 2: 1}
        return VertexAddress.make(tuple(swap[c] for c in self.word),
                                  swap[self.corner])

    def point(self) -> tuple:
        """Exact planar position as (x, r) with y = r*sqrt(3)."""
        x, r = CORNER_XY[self.corner]
        for letter in reversed(self.word):
            cx, cr = CORNER_XY[letter]
            x, r = (x + cx) / 2, (r + cr) / 2
        return x, r

    def __str__(self) -> str:
        return ("".join(map(str, self.word)) or "e") + "." + str(self.corner)


def spine_address(depth: int, target: int) -> VertexAddress:
    """Address of F_0^depth(q_target) for target in {1, 2}."""
    if target not in (1, 2):
        raise ValueError("spine target must be corner 1 or 2")
    return VertexAddress.make((0,) * depth, target)


def mapped(word, addr: VertexAddress) -> VertexAddress:
    """Address of F_word(point of addr)."""
    return VertexAddress.make(tuple(word) + addr.word, addr.corner)
