"""Representations of gentle algebras over the rationals.

Right modules: ``mats[a]`` has shape ``dims[source a] x dims[target a]``
and a row vector at ``source a`` is sent to ``x @ mats[a]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .homotopy import Jordan
from .linalg import Matrix, format_rational, identity, is_zero, jordan_block, matmul, parse_rational, rank, zeros
from .quiver import GentleQuiver
from .strings import BandWord, Letter, StringWord, canonical, follow_path, projective_string, soc_positions, top_positions


@dataclass
class Representation:
    dims: dict[str, int]
    mats: dict[str, Matrix] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def to_json(self) -> dict:
        return {
            "dims": dict(self.dims),
            "mats": {a: [[format_rational(x) for x in row] for row in m] for a, m in self.mats.items()},
        }


def representation_from_json(q: GentleQuiver, data: dict) -> Representation:
    dims = {v: int(data["dims"].get(v, 0)) for v in q.vertices}
    mats = {}
    for a in q.arrows:
        raw = data.get("mats", {}).get(a.name)
        if raw is None:
            mats[a.name] = zeros(dims[a.source], dims[a.target])
        else:
            mats[a.name] = [[parse_rational(x) for x in row] for row in raw]
    rep = Representation(dims, mats)
    check_representation(q, rep)
    return rep


def check_representation(q: GentleQuiver, m: Representation) -> None:
    for a in q.arrows:
        mat = m.mats[a.name]
        rows, cols = m.dims[a.source], m.dims[a.target]
        if len(mat) != rows or any(len(r) != cols for r in mat):
            raise ValueError(f"matrix of {a.name} has the wrong shape")
    for a, b in q.relations:
        if not is_zero(matmul(m.mats[a], m.mats[b])):
            raise ValueError(f"relation {a}{b} does not act as zero")


def dim_vector(m: Representation) -> dict[str, int]:
    return dict(m.dims)


def _empty(q: GentleQuiver, dims: dict[str, int]) -> Representation:
    dims = {v: dims.get(v, 0) for v in q.vertices}
    return Representation(dims, {a.name: zeros(dims[a.source], dims[a.target]) for a in q.arrows})


def string_to_module(q: GentleQuiver, w: StringWord) -> Representation:
    """One basis vector per position; letters act as unit maps."""
    local: list[int] = []
    counts: dict[str, int] = {}
    for v in w.vertices:
        local.append(counts.get(v, 0))
        counts[v] = counts.get(v, 0) + 1
    rep = _empty(q, counts)
    for i, x in enumerate(w.letters):
        if x.inverse:
            rep.mats[x.arrow][local[i + 1]][local[i]] = Fraction(1)
        else:
            rep.mats[x.arrow][local[i]][local[i + 1]] = Fraction(1)
    return rep


def jordan_letter(b: BandWord) -> int:
    """Letter of a band that carries the Jordan block: the first inverse one."""
    return next(i for i, x in enumerate(b.letters) if x.inverse)


def band_to_module(q: GentleQuiver, b: BandWord, j: Jordan) -> Representation:
    """``n`` copies of each cyclic position; one letter carries ``J_n(lam)``."""
    n = j.n
    counts: dict[str, int] = {}
    offset: list[int] = []
    for v in b.vertices:
        offset.append(counts.get(v, 0))
        counts[v] = counts.get(v, 0) + n
    rep = _empty(q, counts)
    k = len(b.letters)
    special = jordan_letter(b)
    block = jordan_block(n, j.lam)
    for i, x in enumerate(b.letters):
        src, dst = offset[i], offset[(i + 1) % k]
        if x.inverse:
            src, dst = dst, src
        blk = block if i == special else identity(n)
        mat = rep.mats[x.arrow]
        for r in range(n):
            for c in range(n):
                if blk[r][c]:
                    mat[src + r][dst + c] += blk[r][c]
    return rep


def projective_module(q: GentleQuiver, v: str) -> Representation:
    return string_to_module(q, projective_string(q, v))


def direct_sum(q: GentleQuiver, reps: list[Representation]) -> Representation:
    dims = {v: sum(r.dims.get(v, 0) for r in reps) for v in q.vertices}
    out = _empty(q, dims)
    for a in q.arrows:
        r0 = c0 = 0
        for r in reps:
            m = r.mats[a.name]
            for i, row in enumerate(m):
                for jj, x in enumerate(row):
                    if x:
                        out.mats[a.name][r0 + i][c0 + jj] = x
            r0 += r.dims.get(a.source, 0)
            c0 += r.dims.get(a.target, 0)
    return out


def top_dims(q: GentleQuiver, m: Representation) -> dict[str, int]:
    """Dimension vector of ``M / rad M`` from the ranks of the incoming arrow maps."""
    out = {}
    for v in q.vertices:
        rows = []
        for a in q.in_arrows(v):
            rows.extend(m.mats[a])
        out[v] = m.dims[v] - (rank(rows) if rows else 0)
    return out


def soc_dims(q: GentleQuiver, m: Representation) -> dict[str, int]:
    """Dimension vector of the socle: vectors killed by every outgoing arrow."""
    out = {}
    for v in q.vertices:
        combined: list[list[Fraction]] = [[] for _ in range(m.dims[v])]
        for a in q.out_arrows(v):
            for i, row in enumerate(m.mats[a]):
                combined[i].extend(row)
        out[v] = m.dims[v] - rank(combined)
    return out


# projective covers -------------------------------------------------------------


def _omega(q: GentleQuiver, arrow: str | None) -> StringWord | None:
    """String of the uniserial module ``aA`` (paths starting with ``a``)."""
    if arrow is None:
        return None
    p = q.maximal_path_starting(arrow)
    letters = tuple(Letter(a) for a in p.arrows[1:])
    verts = [q.target(arrow)] + [q.target(a) for a in p.arrows[1:]]
    return canonical(q, StringWord(tuple(verts), letters))


def end_kernel_arrows(q: GentleQuiver, w: StringWord) -> tuple[str | None, str | None]:
    """First arrow of the kernel piece beyond each end of a string.

    At an end that is a top, the piece is generated by the other arrow
    leaving the end vertex.  At an end reached by a run from a top, the
    piece is generated by the arrow continuing that run without a relation.
    """
    if w.is_trivial:
        outs = q.out_arrows(w.vertices[0])
        return (outs[0] if outs else None), (outs[1] if len(outs) > 1 else None)
    return _end_arrow(q, w), _end_arrow(q, w.inverse())


def _end_arrow(q: GentleQuiver, w: StringWord) -> str | None:
    first = w.letters[0]
    v = w.vertices[0]
    if not first.inverse:
        return q.other_out(v, first.arrow)
    # run of inverse letters: the path from the peak ends with first.arrow
    return q.successor(first.arrow, False)


def projective_cover(q: GentleQuiver, w: StringWord) -> tuple[list[str], list[StringWord]]:
    """Vertices of the projective cover and the strings of its kernel.

    The kernel is the projective at every interior socle position plus
    the uniserial pieces hanging off the two ends.
    """
    cover = [w.vertices[i] for i in top_positions(w)]
    m = len(w.letters)
    kernel = [projective_string(q, w.vertices[i]) for i in soc_positions(w) if 0 < i < m]
    for a in end_kernel_arrows(q, w):
        s = _omega(q, a)
        if s is not None:
            kernel.append(s)
    return cover, kernel


def cover_map(q: GentleQuiver, w: StringWord) -> dict[str, Matrix]:
    """Vertex blocks of the map from the projective cover onto ``M(w)``.

    Rows are the path bases of the cover summands (grouped by end
    vertex), columns the string basis at that vertex.
    """
    local: list[int] = []
    counts: dict[str, int] = {}
    for v in w.vertices:
        local.append(counts.get(v, 0))
        counts[v] = counts.get(v, 0) + 1
    rows: dict[str, list[list[Fraction]]] = {v: [] for v in q.vertices}
    for t in top_positions(w):
        for p in q.paths_from(w.vertices[t]):
            row = [Fraction(0)] * counts.get(p.target, 0)
            pos = follow_path(w, t, p.arrows)
            if pos is not None:
                row[local[pos]] = Fraction(1)
            rows[p.target].append(row)
    return rows


def hom_dim(q: GentleQuiver, m: Representation, n: Representation) -> int:
    """``dim Hom_A(M, N)`` by solving the commutation equations exactly."""
    # unknowns f_v: dims_m[v] x dims_n[v], flattened
    offsets = {}
    total = 0
    for v in q.vertices:
        offsets[v] = total
        total += m.dims[v] * n.dims[v]
    if total == 0:
        return 0
    eqs: list[list[Fraction]] = []
    for a in q.arrows:
        s, t = a.source, a.target
        ma, na = m.mats[a.name], n.mats[a.name]
        # (ma @ f_t - f_s @ na)[i][j] = 0 for i < dims_m[s], j < dims_n[t]
        for i in range(m.dims[s]):
            for jj in range(n.dims[t]):
                row = [Fraction(0)] * total
                for k in range(m.dims[t]):
                    if ma[i][k]:
                        row[offsets[t] + k * n.dims[t] + jj] += ma[i][k]
                for k in range(n.dims[s]):
                    if na[k][jj]:
                        row[offsets[s] + i * n.dims[s] + k] -= na[k][jj]
                if any(row):
                    eqs.append(row)
    return total - rank(eqs)


def kernel_dims(blocks: dict[str, Matrix], target_dims: dict[str, int]) -> dict[str, int]:
    """Vertex-wise kernel dimensions of a block map given row-wise."""
    out = {}
    for v, rows in blocks.items():
        if not rows:
            out[v] = 0
        elif target_dims.get(v, 0) == 0:
            out[v] = len(rows)
        else:
            out[v] = len(rows) - rank(rows)
    return out

