"""Level-m graph approximations of the gasket and exact fields on them.

The level-m graph has the 3(3^m+1)/2 canonical vertices of all m-cells, two
vertices being adjacent exactly when they share an m-cell.  Fields store one
exact rational per vertex; decimal output is a rendering choice only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .addresses import VertexAddress
from .rationals import ZERO, Rat, rat_decimal

_SQRT3 = Rat(1732050807568877293527446341505872366943, 10**39)  # sqrt(3) to 39 digits


def cell_words(m: int):
    """All length-m cell words in lexicographic order."""
    return product((0, 1, 2), repeat=m)


def cell_vertices(word) -> tuple[VertexAddress, VertexAddress, VertexAddress]:
    return tuple(VertexAddress.make(word, c) for c in (0, 1, 2))


@dataclass
class LevelGrid:
    """Vertices, adjacency and exact planar coordinates of a level-m graph."""

    m: int
    vertices: list[VertexAddress]
    index: dict[VertexAddress, int]
    adjacency: list[list[int]]

    def coords(self, i: int) -> tuple:
        return self.vertices[i].point()

    def boundary_indices(self) -> list[int]:
        return [self.index[VertexAddress.make((), c)] for c in (0, 1, 2)]


_grid_cache: dict[int, LevelGrid] = {}


def build_grid(m: int) -> LevelGrid:
    """Canonical level-m grid; vertices sorted lexicographically (cached)."""
    if m < 0:
        raise ValueError("level must be >= 0")
    if m in _grid_cache:
        return _grid_cache[m]
    seen: set[VertexAddress] = set()
    edges: set[tuple[VertexAddress, VertexAddress]] = set()
    for word in cell_words(m):
        vs = cell_vertices(word)
        seen.update(vs)
        for a in range(3):
            for b in range(a + 1, 3):
                e = (vs[a], vs[b]) if vs[a] < vs[b] else (vs[b], vs[a])
                edges.add(e)
    vertices = sorted(seen)
    index = {v: i for i, v in enumerate(vertices)}
    adjacency: list[list[int]] = [[] for _ in vertices]
    for a, b in sorted(edges):
        adjacency[index[a]].append(index[b])
        adjacency[index[b]].append(index[a])
    for lst in adjacency:
        lst.sort()
    grid = LevelGrid(m=m, vertices=vertices, index=index, adjacency=adjacency)
    _grid_cache[m] = grid
    return grid


@dataclass
class FieldOnGrid:
    """Exact rational values attached to every vertex of a level grid.

    Values solve the stated discrete problem exactly (the arithmetic is
    rational throughout); any approximation error is purely the discretization
    of the continuous operator, never roundoff.
    """

    grid: LevelGrid
    values: list

    def __post_init__(self):
        if len(self.values) != len(self.grid.vertices):
            raise ValueError("value array length must match the grid")

    def value_at(self, addr: VertexAddress):
        return self.values[self.grid.index[addr]]

    def restrict(self, m: int) -> "FieldOnGrid":
        """Restriction to the coarser level-m grid (m <= own level)."""
        if m > self.grid.m:
            raise ValueError("can only restrict to a coarser level")
        coarse = build_grid(m)
        return FieldOnGrid(coarse, [self.value_at(v) for v in coarse.vertices])

    def max_abs(self):
        return max((abs(v) for v in self.values), default=ZERO)

    def csv_rows(self, digits: int = 12):
        """Rows (address, x, y, value) with deterministic decimal rendering."""
        for i, v in enumerate(self.grid.vertices):
            x, r = v.point()
            yield (str(v), rat_decimal(x, digits), rat_decimal(r * _SQRT3, digits),
                   rat_decimal(self.values[i], digits))


def harmonic_extend(boundary, m: int) -> FieldOnGrid:
    """Exact harmonic extension of three corner values to the level-m grid.

    Within every cell the midpoint of two corners takes (2a+2b+c)/5 of the
    corner values (a, b adjacent, c opposite); applied recursively this is the
    unique energy-minimizing extension.
    """
    grid = build_grid(m)
    values: list = [None] * len(grid.vertices)
    b = tuple(Rat(v) for v in boundary)

    def fill(word, corners):
        if len(word) == m:
            for c in range(3):
                values[grid.index[VertexAddress.make(word, c)]] = corners[c]
            return
        a0, a1, a2 = corners
        m01 = (2 * a0 + 2 * a1 + a2) / 5
        m02 = (2 * a0 + 2 * a2 + a1) / 5
        m12 = (2 * a1 + 2 * a2 + a0) / 5
        fill(word + (0,), (a0, m01, m02))
        fill(word + (1,), (m01, a1, m12))
        fill(word + (2,), (m02, m12, a2))

    fill((), b)
    return FieldOnGrid(grid, values)


EDGE_LETTERS = {"bottom": (1, 2), "left": (0, 1), "right": (0, 2)}


def restrict_edge(field: FieldOnGrid, edge: str):
    """Values along one boundary edge, ordered by position.

    Returns [(t, value)] where t is the exact dyadic parameter from the first
    edge corner to the second; a level-m field yields 2^m + 1 points.
    """
    letters = EDGE_LETTERS.get(edge)
    if letters is None:
        raise ValueError(f"edge must be one of {sorted(EDGE_LETTERS)}, got {edge!r}")
    i, j = letters
    allowed = {i, j}
    rows = []
    for idx, v in enumerate(field.grid.vertices):
        if v.corner in allowed and all(c in allowed for c in v.word):
            t = Rat(0)
            scale = Rat(1)
            for letter in v.word:
                if letter == j:
                    t += scale / 2
                scale /= 2
            if v.corner == j:
                t += scale
            rows.append((t, field.values[idx]))
    rows.sort(key=lambda r: r[0])
    return rows


def count_sign_changes(values, zero_threshold=Rat(1, 10**30)):
    """Sign changes along a sequence, skipping values below the zero threshold.

    Returns (changes, zeros): strict sign alternations between consecutive
    surviving entries, and the count of entries treated as exact zeros.
    High-multiplicity zeros are outside this count's contract; near-zero
    plateaus show up in `zeros` instead.
    """
    signs = []
    zeros = 0
    for v in values:
        if abs(v) <= zero_threshold:
            zeros += 1
        else:
            signs.append(1 if v > 0 else -1)
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return changes, zeros
