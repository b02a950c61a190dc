"""Projective resolutions of string and band modules as homotopy strings.

The tops of a string go to degree 0, its interior valleys to degree -1,
and each end grows a tail: the kernel beyond an end is a uniserial
module ``bA``, covered by ``P(target b)``, whose kernel is ``cA`` for
the arrow ``c`` with ``bc`` a relation, and so on.  A repeated arrow
makes the tail periodic.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import ProjectiveComplex, assemble
from .homotopy import HLetter, HomotopyBand, HomotopyString, Jordan, make_homotopy_band, make_homotopy_string
from .modules import end_kernel_arrows, jordan_letter
from .quiver import GentleQuiver, Path
from .strings import BandWord, Letter, StringWord, canonical, soc_positions, top_positions


@dataclass(frozen=True)
class PeriodicTail:
    """An end of a resolution that never stops.

    Tail arrows ``b_1, b_2, ...`` with ``b_k b_{k+1}`` in I eventually
    cycle: ``b_{k + period} == b_k`` for every ``k > preperiod``.
    ``cycle`` lists one period of arrows.
    """

    side: str
    preperiod: int
    period: int
    cycle: tuple[str, ...]


@dataclass(frozen=True)
class Tail:
    side: str
    head: Path | None  # path from the end top to the first tail vertex
    arrows: tuple[str, ...]  # b_1, b_2, ... up to the stop or the first repeat
    periodic: PeriodicTail | None = None

    def arrow_at(self, k: int) -> str:
        """Arrow ``b_k`` (1-based), following the cycle if periodic."""
        if k <= len(self.arrows):
            return self.arrows[k - 1]
        p = self.periodic
        return p.cycle[(k - 1 - p.preperiod) % p.period]

    def length(self) -> int | None:
        """Number of tail vertices, ``None`` when infinite."""
        if self.head is None:
            return 0
        return None if self.periodic else len(self.arrows)


@dataclass(frozen=True)
class Rotation:
    """The resolution of a string module as a (possibly windowed) homotopy string."""

    source: StringWord
    string: HomotopyString
    left: Tail
    right: Tail
    window: int | None

    @property
    def tails(self) -> tuple[PeriodicTail | None, PeriodicTail | None]:
        return self.left.periodic, self.right.periodic

    @property
    def finite(self) -> bool:
        return self.left.periodic is None and self.right.periodic is None


def syzygy_strings(q: GentleQuiver, rot: Rotation, side: str, steps: int) -> list[StringWord]:
    """Uniserial kernels ``b_k A`` along one tail, for ``k = 1..steps``."""
    tail = rot.left if side == "left" else rot.right
    n = tail.length()
    return [uniserial_string(q, tail.arrow_at(k)) for k in range(1, steps + 1) if n is None or k <= n]


def uniserial_string(q: GentleQuiver, a: str) -> StringWord:
    """String of ``aA``: the maximal path from ``a`` with ``a`` itself removed."""
    p = q.maximal_path_starting(a)
    letters = tuple(Letter(x) for x in p.arrows[1:])
    verts = (q.target(a),) + tuple(q.target(x) for x in p.arrows[1:])
    return canonical(q, StringWord(verts, letters))


def _tail(q: GentleQuiver, side: str, top_path: Path, b1: str | None) -> Tail:
    if b1 is None:
        return Tail(side, None, ())
    head = Path(top_path.source, q.target(b1), top_path.arrows + (b1,))
    arrows = [b1]
    seen = {b1: 0}
    while True:
        nxt = q.successor(arrows[-1], True)
        if nxt is None:
            return Tail(side, head, tuple(arrows))
        if nxt in seen:
            start = seen[nxt]
            cycle = tuple(arrows[start:])
            return Tail(side, head, tuple(arrows), PeriodicTail(side, start, len(cycle), cycle))
        seen[nxt] = len(arrows)
        arrows.append(nxt)


def _run_path(q: GentleQuiver, w: StringWord, a: int, b: int) -> Path:
    """Path of the run between top ``a`` and valley ``b`` (either order)."""
    if a < b:
        arrows = tuple(x.arrow for x in w.letters[a:b])
    else:
        arrows = tuple(x.arrow for x in reversed(w.letters[b:a]))
    return q.path(arrows)


def _end_tail(q: GentleQuiver, w: StringWord, side: str, b1: str | None) -> Tail:
    """Tail growing from the start of ``w``."""
    tops = top_positions(w)
    t = tops[0]
    top_path = q.trivial(w.vertices[0]) if t == 0 else _run_path(q, w, t, 0)
    return _tail(q, side, top_path, b1)


def rotate(q: GentleQuiver, c: StringWord, window: int | None = None) -> Rotation:
    """Homotopy string of the projective resolution of ``M(c)``.

    Tops sit in degree 0.  Finite resolutions are returned whole; an
    infinite tail is cut below degree ``-window`` (default: preperiod
    plus three periods of the longest tail).
    """
    b_left, b_right = end_kernel_arrows(q, c)
    left = _end_tail(q, c, "left", b_left)
    right = _end_tail(q, c.inverse(), "right", b_right)
    if window is None:
        window = 0
        for tail in (left, right):
            if tail.periodic:
                window = max(window, tail.periodic.preperiod + 3 * tail.periodic.period + 1)
            elif tail.head is not None:
                window = max(window, len(tail.arrows))
        window = max(window, 1)

    def tail_len(tail: Tail) -> int:
        n = tail.length()
        return min(window, n) if n is not None else window

    n_left, n_right = tail_len(left), tail_len(right)
    letters: list[HLetter] = []
    # left tail, walked towards the top
    for k in range(n_left, 1, -1):
        letters.append(HLetter(q.path((left.arrow_at(k),)), True))
    if n_left >= 1:
        letters.append(HLetter(left.head, True))
    # middle: alternate top -> valley -> top
    tops = top_positions(c)
    socs = [s for s in soc_positions(c) if 0 < s < len(c.letters)]
    for a, s in enumerate(socs):
        letters.append(HLetter(_run_path(q, c, tops[a], s), False))
        letters.append(HLetter(_run_path(q, c, tops[a + 1], s), True))
    if n_right >= 1:
        letters.append(HLetter(right.head, False))
    for k in range(2, n_right + 1):
        letters.append(HLetter(q.path((right.arrow_at(k),)), False))
    start = c.vertices[tops[0]] if not letters else None
    h = make_homotopy_string(q, letters, start, -n_left)
    if h.degrees and max(h.degrees) != 0:
        raise AssertionError("resolution tops must sit in degree 0")
    return Rotation(c, h, left, right, None if (left.periodic is None and right.periodic is None) else window)


def resolve_to_complex(q: GentleQuiver, c: StringWord, window: int) -> ProjectiveComplex:
    """Deleted projective resolution of ``M(c)`` in degrees ``-window..0``."""
    rot = rotate(q, c, window=max(window, 1))
    h = rot.string
    keep = [i for i, d in enumerate(h.degrees) if d >= -window]
    lo, hi = min(keep), max(keep)
    return assemble(q, h.sub(lo, hi))


def projective_dimension(q: GentleQuiver, c: StringWord) -> int | None:
    """Length of the minimal resolution, ``None`` when infinite."""
    rot = rotate(q, c)
    if not rot.finite:
        return None
    return -min(rot.string.degrees)


def band_resolution(q: GentleQuiver, b: BandWord, j: Jordan | None = None) -> HomotopyBand:
    """Two-term homotopy band resolving ``B(n, lam)``; tops in degree 0, valleys in -1.

    The Jordan block sits on the run containing the band's Jordan letter.
    """
    k = len(b.letters)
    tops = [i for i in range(k) if b.letters[i - 1].inverse and not b.letters[i].inverse]
    start = tops[0]
    w = b.rotate(start)
    special = (jordan_letter(b) - start) % k
    letters: list[HLetter] = []
    jordan = 0
    i = 0
    while i < k:
        # direct run from a top to a valley
        a = i
        while i < k and not w.letters[i].inverse:
            i += 1
        letters.append(HLetter(q.path(tuple(x.arrow for x in w.letters[a:i])), False))
        if a <= special < i:
            jordan = len(letters) - 1
        a = i
        while i < k and w.letters[i].inverse:
            i += 1
        letters.append(HLetter(q.path(tuple(x.arrow for x in reversed(w.letters[a:i]))), True))
        if a <= special < i:
            jordan = len(letters) - 1
    return make_homotopy_band(q, letters, jordan)
