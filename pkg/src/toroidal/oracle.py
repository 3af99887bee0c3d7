"""Brute-force verification oracles for the torus quotient pipelines.

Two independent ground truths live here.  The rational oracle recomputes the
free ranks as fixed-subspace dimensions of exterior powers of the acting
matrix.  The topological oracle builds honest equivariant triangulations of
tori (products of polygonal circles with reflection or coordinate-rotation
actions, plus the rank-2 triangular-lattice torus with its order-3
rotation), passes to the orbit complex once the action is regular enough for
the quotient to be simplicial, and runs exact cohomology on the result.

Product models are assembled through face posets of regular cell complexes:
the order complex of the poset triangulates the space, and any cellwise
action becomes a simplicial action on it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .cohomology import betti_over_field, quotient_cohomology
from .errors import ConsistencyError
from .lattice import LatticeType
from .snf import (
    AbelianGroupStructure,
    IntMatrix,
    rank_over_q,
    sparse_cochain_quotient,
    sparse_rank_mod_p,
    sparse_rank_over_q,
)

DEFAULT_SIMPLEX_GATE = 20000


class ComplexTooLarge(ValueError):
    """Integral mode was asked for a complex past the size gate."""


# ---------------------------------------------------------------------------
# simplicial complexes


class SimplicialComplex:
    """A finite abstract simplicial complex given by its maximal faces.

    Vertices are 0..vertex_count-1 and every vertex must occur in some
    facet.  The full face lattice is generated on demand and cached.
    """

    def __init__(self, vertex_count: int, facets) -> None:
        cleaned = {tuple(sorted(set(f))) for f in facets}
        if not cleaned:
            raise ValueError("a complex needs at least one facet")
        # drop non-maximal faces; only strictly larger sets can contain a
        # given one, so a pure complex skips the scan entirely
        by_size: dict[int, list[frozenset]] = {}
        for f in cleaned:
            by_size.setdefault(len(f), []).append(frozenset(f))
        maximal = []
        larger: list[frozenset] = []
        for size in sorted(by_size, reverse=True):
            maximal.extend(
                f for f in by_size[size] if not any(f < big for big in larger)
            )
            larger.extend(by_size[size])
        facets = tuple(sorted(tuple(sorted(f)) for f in maximal))
        used = {v for f in facets for v in f}
        if used != set(range(vertex_count)):
            raise ValueError(
                "every vertex in 0..vertex_count-1 must appear in a facet"
            )
        self.vertex_count = vertex_count
        self.facets = facets
        self._faces: dict[int, tuple[tuple[int, ...], ...]] | None = None
        self._coboundary_rows: dict[int, list[dict[int, int]]] = {}

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def faces(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        """All faces keyed by dimension, each dimension sorted."""
        if self._faces is None:
            by_dim: dict[int, set] = {}
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    bucket = by_dim.setdefault(k - 1, set())
                    bucket.update(itertools.combinations(f, k))
            self._faces = {
                d: tuple(sorted(by_dim[d])) for d in sorted(by_dim)
            }
        return self._faces

    def face_count(self) -> int:
        return sum(len(fs) for fs in self.faces().values())

    def euler_characteristic(self) -> int:
        return sum(
            (-1) ** d * len(fs) for d, fs in self.faces().items()
        )

    def coboundary_rows(self, k: int) -> list[dict[int, int]]:
        """Sparse coboundary from k-cochains: one dict per (k+1)-face."""
        if k in self._coboundary_rows:
            return self._coboundary_rows[k]
        faces = self.faces()
        lower = faces.get(k, ())
        upper = faces.get(k + 1, ())
        index = {f: i for i, f in enumerate(lower)}
        rows = []
        for tau in upper:
            rows.append(
                {
                    index[tau[:drop] + tau[drop + 1 :]]: (-1 if drop % 2 else 1)
                    for drop in range(len(tau))
                }
            )
        self._coboundary_rows[k] = rows
        return rows

    def coboundary(self, k: int) -> IntMatrix:
        """The map from k-cochains to (k+1)-cochains, rows = (k+1)-faces."""
        faces = self.faces()
        lower = faces.get(k, ())
        upper = faces.get(k + 1, ())
        rows = self.coboundary_rows(k)
        entries = [0] * (len(upper) * len(lower))
        for i, row in enumerate(rows):
            base = i * len(lower)
            for j, v in row.items():
                entries[base + j] = v
        return IntMatrix(len(upper), len(lower), entries)

    def integral_cohomology(
        self, max_simplices: int = DEFAULT_SIMPLEX_GATE
    ) -> list[AbelianGroupStructure]:
        """H^k with integer coefficients for k = 0..dim."""
        total = self.face_count()
        if total > max_simplices:
            raise ComplexTooLarge(
                f"complex has {total} simplices, past the integral-mode gate "
                f"of {max_simplices}; use field mode or raise the gate"
            )
        out = []
        faces = self.faces()
        d_in: list[dict[int, int]] = [{} for _ in faces[0]]
        for k in range(self.dim + 1):
            d_out = self.coboundary_rows(k)
            out.append(sparse_cochain_quotient(len(faces[k]), d_in, d_out))
            d_in = d_out
        return out

    def betti_numbers(self, characteristic: int = 0) -> list[int]:
        """dim H^k over Q (characteristic 0) or F_p, for k = 0..dim."""
        faces = self.faces()
        ranks = []
        for k in range(self.dim + 1):
            rows = self.coboundary_rows(k)
            ranks.append(
                sparse_rank_over_q(rows)
                if characteristic == 0
                else sparse_rank_mod_p(rows, characteristic)
            )
        out = []
        for k in range(self.dim + 1):
            below = ranks[k - 1] if k else 0
            out.append(len(faces.get(k, ())) - ranks[k] - below)
        return out

    def components(self) -> list["SimplicialComplex"]:
        """Connected components, each reindexed over its own vertices."""
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in self.facets:
            for v in f[1:]:
                ra, rb = find(f[0]), find(v)
                if ra != rb:
                    parent[rb] = ra
        groups: dict[int, list[tuple[int, ...]]] = {}
        for f in self.facets:
            groups.setdefault(find(f[0]), []).append(f)
        out = []
        for root in sorted(groups):
            verts = sorted({v for f in groups[root] for v in f})
            relabel = {v: i for i, v in enumerate(verts)}
            out.append(
                SimplicialComplex(
                    len(verts),
                    [tuple(relabel[v] for v in f) for f in groups[root]],
                )
            )
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count and self.facets == other.facets
        )

    def __repr__(self) -> str:
        return (
            f"SimplicialComplex({self.vertex_count} vertices, "
            f"{len(self.facets)} facets, dim {self.dim})"
        )

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"dim {self.dim} vertices {self.vertex_count}"]
        lines.extend(" ".join(str(v) for v in f) for f in self.facets)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SimplicialComplex":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty complex text")
        header = lines[0].split()
        if len(header) != 4 or header[0] != "dim" or header[2] != "vertices":
            raise ValueError(f"bad header {lines[0]!r}")
        vertex_count = int(header[3])
        facets = [tuple(int(v) for v in ln.split()) for ln in lines[1:]]
        return cls(vertex_count, facets)


@dataclass(frozen=True)
class SimplicialAction:
    """A simplicial Z/p-action given by the generator's vertex permutation."""

    order: int
    vertex_map: tuple[int, ...]

    def __post_init__(self) -> None:
        vm = tuple(int(v) for v in self.vertex_map)
        if sorted(vm) != list(range(len(vm))):
            raise ValueError("generator map must be a permutation of the vertices")
        object.__setattr__(self, "vertex_map", vm)

    def power(self, k: int) -> tuple[int, ...]:
        out = tuple(range(len(self.vertex_map)))
        for _ in range(k):
            out = tuple(self.vertex_map[v] for v in out)
        return out

    def validate_on(self, K: SimplicialComplex) -> None:
        if len(self.vertex_map) != K.vertex_count:
            raise ValueError("permutation length disagrees with the vertex count")
        if self.power(self.order) != tuple(range(K.vertex_count)):
            raise ValueError(f"generator does not have order dividing {self.order}")
        facet_set = set(K.facets)
        for f in K.facets:
            if tuple(sorted(self.vertex_map[v] for v in f)) not in facet_set:
                raise ValueError(f"action is not simplicial: facet {f} maps off the complex")

    def orbit_labels(self) -> tuple[list[int], int]:
        """(orbit id per vertex, orbit count); orbits are the generator's cycles."""
        n = len(self.vertex_map)
        label = [-1] * n
        count = 0
        for v in range(n):
            if label[v] == -1:
                w = v
                while label[w] == -1:
                    label[w] = count
                    w = self.vertex_map[w]
                count += 1
        return label, count

    def to_text(self) -> str:
        return f"action {self.order} " + " ".join(str(v) for v in self.vertex_map) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SimplicialAction":
        parts = text.split()
        if len(parts) < 2 or parts[0] != "action":
            raise ValueError(f"bad action line {text!r}")
        return cls(int(parts[1]), tuple(int(v) for v in parts[2:]))


# ---------------------------------------------------------------------------
# regularity, quotients, subdivision


def is_regular(K: SimplicialComplex, action: SimplicialAction) -> bool:
    """Whether the orbit complex is an honest model of the quotient space.

    Checks, over all faces: no face carries two vertices of one orbit (in
    particular a face fixed setwise is fixed vertexwise), and distinct face
    orbits have distinct vertex-orbit label sets.  Together these make the
    orbit complex a simplicial complex whose realization is the quotient;
    either failure is repaired by barycentric subdivision.
    """
    action.validate_on(K)
    label, _ = action.orbit_labels()
    powers = [action.power(k) for k in range(1, action.order)]
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for faces in K.faces().values():
        for f in faces:
            labels = tuple(sorted({label[v] for v in f}))
            if len(labels) != len(f):
                return False
            canonical = min(
                [f] + [tuple(sorted(g[v] for v in f)) for g in powers]
            )
            known = seen.get(labels)
            if known is None:
                seen[labels] = canonical
            elif known != canonical:
                return False
    return True


def quotient_complex(
    K: SimplicialComplex, action: SimplicialAction
) -> SimplicialComplex:
    """The orbit complex: vertices are vertex orbits, facets facet orbits.

    Only valid for regular actions; callers should subdivide first when
    is_regular fails.
    """
    if not is_regular(K, action):
        raise ValueError("action is not regular; barycentric subdivision needed")
    label, count = action.orbit_labels()
    facets = {tuple(sorted({label[v] for v in f})) for f in K.facets}
    return SimplicialComplex(count, facets)


def barycentric_subdivide(
    K: SimplicialComplex, action: SimplicialAction | None = None
):
    """The barycentric subdivision, with the induced action if one is given.

    New vertices are the faces of K; new facets are the full flags inside
    each facet.  Face counts grow by the factorial of the facet size.
    """
    faces = K.faces()
    flat = [f for d in sorted(faces) for f in faces[d]]
    index = {f: i for i, f in enumerate(flat)}
    new_facets = []
    for facet in K.facets:
        for perm in itertools.permutations(facet):
            new_facets.append(
                tuple(index[tuple(sorted(perm[: i + 1]))] for i in range(len(perm)))
            )
    subdivided = SimplicialComplex(len(flat), new_facets)
    if action is None:
        return subdivided
    vm = action.vertex_map
    new_map = tuple(
        index[tuple(sorted(vm[v] for v in f))] for f in flat
    )
    return subdivided, SimplicialAction(action.order, new_map)


def regularize(
    K: SimplicialComplex, action: SimplicialAction, max_subdivisions: int = 2
) -> tuple[SimplicialComplex, SimplicialAction, int]:
    """Subdivide until the action is regular; two rounds always suffice."""
    count = 0
    while not is_regular(K, action):
        if count >= max_subdivisions:
            raise ConsistencyError(
                f"action still irregular after {count} barycentric subdivisions"
            )
        K, action = barycentric_subdivide(K, action)
        count += 1
    return K, action, count


def fixed_subcomplex(
    K: SimplicialComplex, action: SimplicialAction
) -> SimplicialComplex | None:
    """The subcomplex of faces fixed vertexwise, reindexed; None if empty."""
    vm = action.vertex_map
    fixed = [v for v in range(K.vertex_count) if vm[v] == v]
    if not fixed:
        return None
    fixed_set = set(fixed)
    relabel = {v: i for i, v in enumerate(fixed)}
    candidates = [
        f
        for faces in K.faces().values()
        for f in faces
        if fixed_set.issuperset(f)
    ]
    as_sets = [frozenset(f) for f in candidates]
    facets = [
        tuple(relabel[v] for v in f)
        for f, fs in zip(candidates, as_sets)
        if not any(fs < other for other in as_sets)
    ]
    return SimplicialComplex(len(fixed), facets)


# ---------------------------------------------------------------------------
# face posets of regular cell complexes


class CellPoset:
    """Cells of a regular cell complex with their full face relations.

    dims[c] is the dimension of cell c and faces[c] the set of ALL proper
    faces of c (transitively closed).  The order complex of such a poset
    triangulates the underlying space, and every cellwise automorphism acts
    simplicially on it.
    """

    def __init__(self, dims: list[int], faces: list[frozenset[int]]) -> None:
        self.dims = list(dims)
        self.faces = [frozenset(f) for f in faces]
        if len(self.dims) != len(self.faces):
            raise ValueError("dims and faces disagree in length")

    def __len__(self) -> int:
        return len(self.dims)

    @classmethod
    def cycle(cls, m: int) -> "CellPoset":
        """A circle with m vertices (cells 0..m-1) and m edges (m..2m-1)."""
        if m < 2:
            raise ValueError("a polygonal circle needs at least 2 vertices")
        dims = [0] * m + [1] * m
        faces: list[frozenset[int]] = [frozenset() for _ in range(m)]
        for i in range(m):
            faces.append(frozenset({i, (i + 1) % m}))
        return cls(dims, faces)

    @classmethod
    def from_complex(cls, K: SimplicialComplex) -> tuple["CellPoset", dict]:
        """The face poset of a simplicial complex, plus the face -> cell map."""
        flat = [f for d in sorted(K.faces()) for f in K.faces()[d]]
        index = {f: i for i, f in enumerate(flat)}
        dims = [len(f) - 1 for f in flat]
        faces = []
        for f in flat:
            proper = set()
            for k in range(1, len(f)):
                proper.update(index[s] for s in itertools.combinations(f, k))
            faces.append(frozenset(proper))
        return cls(dims, faces), index

    def order_complex(self) -> SimplicialComplex:
        """Vertices are cells; facets are the maximal chains of the poset."""
        n = len(self)
        has_coface = [False] * n
        for fs in self.faces:
            for f in fs:
                has_coface[f] = True
        covers = [
            [f for f in self.faces[c] if self.dims[f] == self.dims[c] - 1]
            for c in range(n)
        ]
        facets: list[tuple[int, ...]] = []

        def descend(chain: list[int]) -> None:
            c = chain[-1]
            if self.dims[c] == 0:
                facets.append(tuple(chain))
                return
            for f in covers[c]:
                chain.append(f)
                descend(chain)
                chain.pop()

        for c in range(n):
            if not has_coface[c]:
                descend([c])
        return SimplicialComplex(n, facets)


def product_poset(
    factors: list[CellPoset],
) -> tuple[CellPoset, list[tuple[int, ...]], dict]:
    """The product of cell posets; cells are tuples of factor cells.

    Returns the poset, the cell tokens in id order, and the token -> id map.
    """
    tokens = list(itertools.product(*[range(len(p)) for p in factors]))
    index = {tok: i for i, tok in enumerate(tokens)}
    closed = [
        [fs | {c} for c, fs in enumerate(p.faces)] for p in factors
    ]
    dims = []
    faces = []
    for tok in tokens:
        dims.append(sum(p.dims[c] for p, c in zip(factors, tok)))
        cell_faces = {
            index[sub]
            for sub in itertools.product(
                *[closed[f][c] for f, c in enumerate(tok)]
            )
        }
        cell_faces.discard(index[tok])
        faces.append(frozenset(cell_faces))
    return CellPoset(dims, faces), tokens, index


def product_cell_map(
    tokens: list[tuple[int, ...]],
    index: dict,
    factor_maps: list[list[int]],
    coordinate_permutation: list[int] | None = None,
) -> tuple[int, ...]:
    """The cell permutation acting factor-wise, then permuting coordinates.

    Coordinate f of the image holds the mapped content of the factor sent to
    position f; with no coordinate permutation the factors stay in place.
    """
    k = len(factor_maps)
    cperm = list(range(k)) if coordinate_permutation is None else coordinate_permutation
    out = []
    for tok in tokens:
        img = [0] * k
        for f, c in enumerate(tok):
            img[cperm[f]] = factor_maps[f][c]
        out.append(index[tuple(img)])
    return tuple(out)


def _cycle_identity_map(m: int) -> list[int]:
    return list(range(2 * m))


def _cycle_reflection_map(m: int) -> list[int]:
    # v_i -> v_(-i), so edge e_i = {v_i, v_(i+1)} -> e_(-i-1)
    out = [(-i) % m for i in range(m)]
    out.extend(m + ((-i - 1) % m) for i in range(m))
    return out


# ---------------------------------------------------------------------------
# equivariant torus models


@dataclass(frozen=True)
class EquivariantModel:
    """A triangulated torus with a simplicial Z/p-action of known type."""

    complex: SimplicialComplex
    action: SimplicialAction
    lattice_type: LatticeType
    description: str


def hexagonal_torus_complex(grid: int = 3) -> tuple[SimplicialComplex, tuple[int, ...]]:
    """The rank-2 torus from the triangular lattice with its order-3 rotation.

    Vertices are the grid x grid points of the quotient of the triangular
    lattice; each cell splits into an up and a down triangle, and the
    rotation (i, j) -> (-i-j, i) permutes the triangles.  The grid must be a
    positive multiple of 3 so the rotation's three fixed points are vertices.
    """
    if grid < 3 or grid % 3:
        raise ValueError("grid must be a positive multiple of 3")
    N = grid

    def vid(i: int, j: int) -> int:
        return (i % N) * N + (j % N)

    facets = []
    for i in range(N):
        for j in range(N):
            facets.append((vid(i, j), vid(i + 1, j), vid(i, j + 1)))
            facets.append((vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)))
    vertex_map = tuple(
        vid(-i - j, i) for i in range(N) for j in range(N)
    )
    return SimplicialComplex(N * N, facets), vertex_map


def build_equivariant_torus(
    case: str,
    *,
    p: int | None = None,
    r: int = 1,
    n: int = 1,
    t: int = 0,
    m: int | None = None,
) -> EquivariantModel:
    """Construct one of the supported equivariant torus families.

    "sign": p = 2 acting by negation on r circle factors, plus t circles
    with trivial action; lattice type (r, 0, t).  m is the number of
    vertices per acted circle (default 4; the default is the smallest size
    whose product actions stay regular without subdivision).

    "cyclic": Z/p cyclically permuting p blocks of n circle factors (n
    copies of the regular representation), plus t trivial circles; type
    (0, n, t).  m defaults to 3 vertices per circle.

    "hexagonal": the order-3 rotation of the triangular-lattice torus, plus
    t trivial circles; p = 3, type (1, 0, t).  m is the grid size
    (default 3).

    "mixed": p = 2 with r sign factors and n swap pairs together (plus t
    trivial circles), type (r, n, t).  The reflection's fixed vertices sit
    under both edges of an edge orbit, so this family always needs one
    barycentric subdivision; sizes are kept minimal and the quotient usually
    exceeds the integral gate, so use field mode.
    """
    if t < 0:
        raise ValueError("trivial factor count must be nonnegative")
    if case == "sign":
        if p not in (None, 2):
            raise ValueError("the sign case forces p = 2")
        if r < 1:
            raise ValueError("need at least one sign factor")
        size = 4 if m is None else m
        factors = [CellPoset.cycle(size)] * r + [CellPoset.cycle(2)] * t
        maps = [_cycle_reflection_map(size)] * r + [_cycle_identity_map(2)] * t
        poset, tokens, index = product_poset(factors)
        perm = product_cell_map(tokens, index, maps)
        return EquivariantModel(
            poset.order_complex(),
            SimplicialAction(2, perm),
            LatticeType(2, r, 0, t),
            f"sign action on {r} circle factor(s)"
            + (f" x trivial {t}-torus" if t else ""),
        )
    if case == "cyclic":
        if p is None:
            raise ValueError("the cyclic case needs p")
        if n < 1:
            raise ValueError("need at least one regular-representation block")
        size = 3 if m is None else m
        count = p * n
        factors = [CellPoset.cycle(size)] * count + [CellPoset.cycle(2)] * t
        maps = [_cycle_identity_map(size)] * count + [_cycle_identity_map(2)] * t
        # block b, slot j lives at coordinate b*n + j and moves to block b+1
        cperm = [((f // n + 1) % p) * n + (f % n) for f in range(count)]
        cperm.extend(range(count, count + t))
        poset, tokens, index = product_poset(factors)
        perm = product_cell_map(tokens, index, maps, cperm)
        return EquivariantModel(
            poset.order_complex(),
            SimplicialAction(p, perm),
            LatticeType(p, 0, n, t),
            f"coordinate {p}-cycle on ({n}-torus)^{p}"
            + (f" x trivial {t}-torus" if t else ""),
        )
    if case == "mixed":
        if p not in (None, 2):
            raise ValueError("the mixed case forces p = 2")
        if r < 1 or n < 1:
            raise ValueError(
                "the mixed case needs both sign factors and swap pairs; "
                "use the pure cases otherwise"
            )
        size = 3 if m is None else m
        factors = (
            [CellPoset.cycle(size)] * r
            + [CellPoset.cycle(2)] * (2 * n)
            + [CellPoset.cycle(2)] * t
        )
        maps = (
            [_cycle_reflection_map(size)] * r
            + [_cycle_identity_map(2)] * (2 * n)
            + [_cycle_identity_map(2)] * t
        )
        cperm = list(range(r))
        for b in range(n):
            cperm += [r + 2 * b + 1, r + 2 * b]
        cperm += list(range(r + 2 * n, r + 2 * n + t))
        poset, tokens, index = product_poset(factors)
        perm = product_cell_map(tokens, index, maps, cperm)
        return EquivariantModel(
            poset.order_complex(),
            SimplicialAction(2, perm),
            LatticeType(2, r, n, t),
            f"sign action on {r} circle factor(s) x swap of {n} pair(s)"
            + (f" x trivial {t}-torus" if t else ""),
        )
    if case == "hexagonal":
        if p not in (None, 3):
            raise ValueError("the hexagonal case forces p = 3")
        grid = 3 if m is None else m
        K, vertex_map = hexagonal_torus_complex(grid)
        if t == 0:
            return EquivariantModel(
                K,
                SimplicialAction(3, vertex_map),
                LatticeType(3, 1, 0, 0),
                "order-3 rotation of the triangular torus",
            )
        hex_poset, face_index = CellPoset.from_complex(K)
        flat = sorted(face_index, key=face_index.get)
        hex_map = [
            face_index[tuple(sorted(vertex_map[v] for v in f))] for f in flat
        ]
        factors = [hex_poset] + [CellPoset.cycle(2)] * t
        maps = [hex_map] + [_cycle_identity_map(2)] * t
        poset, tokens, index = product_poset(factors)
        perm = product_cell_map(tokens, index, maps)
        return EquivariantModel(
            poset.order_complex(),
            SimplicialAction(3, perm),
            LatticeType(3, 1, 0, t),
            f"order-3 rotation of the triangular torus x trivial {t}-torus",
        )
    raise ValueError(
        f"unsupported case {case!r}; expected sign, cyclic, hexagonal or mixed"
    )


# ---------------------------------------------------------------------------
# rational oracle


def _determinant(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def exterior_power_matrix(M: IntMatrix, k: int) -> IntMatrix:
    """The induced matrix on the k-th exterior power, minors over k-subsets."""
    if not M.is_square():
        raise ValueError("exterior powers need a square matrix")
    n = M.rows
    if not 0 <= k <= n:
        raise ValueError(f"exterior power degree must lie in 0..{n}")
    subsets = list(itertools.combinations(range(n), k))
    rows_of = M.to_rows()
    entries = []
    for S in subsets:
        for T in subsets:
            entries.append(_determinant([[rows_of[i][j] for j in T] for i in S]))
    return IntMatrix(len(subsets), len(subsets), entries)


def rational_alpha_oracle(A: IntMatrix, k: int) -> int:
    """Free rank of degree-k quotient cohomology, recomputed independently.

    The dimension over Q of the fixed subspace of the k-th exterior power of
    the transpose, i.e. the corank of (wedge^k A^T) - I.  The caller is
    responsible for A having prime order.
    """
    W = exterior_power_matrix(A.transpose(), k)
    return W.rows - rank_over_q(W - IntMatrix.identity(W.rows))


# ---------------------------------------------------------------------------
# end-to-end comparison


@dataclass(frozen=True)
class DegreeComparison:
    label: str
    expected: str
    actual: str
    ok: bool


@dataclass(frozen=True)
class OracleReport:
    description: str
    lattice_type: LatticeType
    mode: str
    subdivisions: int
    total_simplices: int
    quotient_simplices: int
    rows: tuple[DegreeComparison, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)


def run_oracle_case(
    model: EquivariantModel,
    mode: str = "integral",
    max_simplices: int = DEFAULT_SIMPLEX_GATE,
) -> OracleReport:
    """Quotient the model and compare against the formula pipeline.

    Integral mode compares the full group structure per degree; field mode
    compares Betti numbers over Q and over F_p (the latter against the
    universal-coefficient combination of free and torsion ranks).
    """
    if mode not in ("integral", "field"):
        raise ValueError(f"unknown mode {mode!r}")
    L = model.lattice_type
    K, act, subdivisions = regularize(model.complex, model.action)
    quotient = quotient_complex(K, act)
    n = L.rank
    table = quotient_cohomology(L, n)
    rows = []
    if mode == "integral":
        groups = quotient.integral_cohomology(max_simplices)
        groups += [AbelianGroupStructure(0)] * (n + 1 - len(groups))
        for k in range(n + 1):
            a, b = table[k]
            ok = groups[k].free_rank == a and groups[k].torsion == (L.p,) * b
            rows.append(
                DegreeComparison(
                    f"H^{k}", table.group_string(k), str(groups[k]), ok
                )
            )
    else:
        rational = quotient.betti_numbers(0)
        modular = quotient.betti_numbers(L.p)
        rational += [0] * (n + 1 - len(rational))
        modular += [0] * (n + 1 - len(modular))
        expected_q = table.free_ranks()
        expected_p = betti_over_field(L, L.p, n)
        for k in range(n + 1):
            rows.append(
                DegreeComparison(
                    f"dim_Q H^{k}",
                    str(expected_q[k]),
                    str(rational[k]),
                    rational[k] == expected_q[k],
                )
            )
        for k in range(n + 1):
            rows.append(
                DegreeComparison(
                    f"dim_F{L.p} H^{k}",
                    str(expected_p[k]),
                    str(modular[k]),
                    modular[k] == expected_p[k],
                )
            )
    return OracleReport(
        model.description,
        L,
        mode,
        subdivisions,
        K.face_count(),
        quotient.face_count(),
        tuple(rows),
    )


def verify_fixed_point_structure(model: EquivariantModel) -> bool:
    """Check the fixed set is p^r tori of dimension s+t, rationally."""
    L = model.lattice_type
    K, act, _ = regularize(model.complex, model.action)
    fixed = fixed_subcomplex(K, act)
    expected_components = L.p**L.r
    if fixed is None:
        return expected_components == 0
    pieces = fixed.components()
    if len(pieces) != expected_components:
        return False
    d = L.s + L.t
    expected = [comb(d, k) for k in range(d + 1)]
    for piece in pieces:
        betti = piece.betti_numbers(0)
        betti += [0] * (d + 1 - len(betti))
        if betti != expected:
            return False
    return True
