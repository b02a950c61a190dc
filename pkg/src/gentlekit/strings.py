"""Strings, bands, projective strings, truncations and their gluing.

A string is a reduced walk whose letters are arrows taken forwards
(direct) or backwards (inverse).  A direct letter ``a`` walks from
``source(a)`` to ``target(a)``; its inverse walks back.  Positions along
a string are 0-based indices into ``vertices``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, NamedTuple, Sequence

from .quiver import GentleQuiver, Path

if TYPE_CHECKING:
    from .homotopy import HomotopyString


class StringError(ValueError):
    pass


class Letter(NamedTuple):
    arrow: str
    inverse: bool = False

    def flipped(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    def __str__(self) -> str:
        return ("~" if self.inverse else "") + self.arrow


def letter_start(q: GentleQuiver, x: Letter) -> str:
    return q.target(x.arrow) if x.inverse else q.source(x.arrow)


def letter_end(q: GentleQuiver, x: Letter) -> str:
    return q.source(x.arrow) if x.inverse else q.target(x.arrow)


def _letter_key(q: GentleQuiver, x: Letter) -> tuple[int, int]:
    return q.arrow_index[x.arrow], int(x.inverse)


@dataclass(frozen=True)
class StringWord:
    vertices: tuple[str, ...]
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def inverse(self) -> "StringWord":
        return StringWord(self.vertices[::-1], tuple(x.flipped() for x in reversed(self.letters)))

    def dim_vector(self) -> dict[str, int]:
        dims: dict[str, int] = {}
        for v in self.vertices:
            dims[v] = dims.get(v, 0) + 1
        return dims

    def __str__(self) -> str:
        if not self.letters:
            return f"e({self.vertices[0]})"
        return ".".join(str(x) for x in self.letters)


def _check_pair(q: GentleQuiver, x: Letter, y: Letter) -> str | None:
    if letter_end(q, x) != letter_start(q, y):
        return f"letters {x} and {y} are not composable"
    if x.arrow == y.arrow and x.inverse != y.inverse:
        return f"walk is not reduced at {x}{y}"
    if not x.inverse and not y.inverse and q.is_relation(x.arrow, y.arrow):
        return f"direct run meets the relation {x.arrow}{y.arrow}"
    if x.inverse and y.inverse and q.is_relation(y.arrow, x.arrow):
        return f"inverse run meets the relation {y.arrow}{x.arrow}"
    return None


def canonical(q: GentleQuiver, w: StringWord) -> StringWord:
    """The representative of ``{w, w^-1}`` with the smaller letter keys."""
    if w.is_trivial:
        return w
    inv = w.inverse()
    a = [_letter_key(q, x) for x in w.letters]
    b = [_letter_key(q, x) for x in inv.letters]
    return w if a <= b else inv


def validate_string(q: GentleQuiver, letters: Sequence[Letter], start: str | None = None, canonicalize: bool = True) -> StringWord:
    """Check the gentle string conditions and return the (canonical) string."""
    letters = tuple(Letter(x.arrow, bool(x.inverse)) for x in letters)
    if not letters:
        if start is None or start not in q.vertex_index:
            raise StringError("trivial string needs a known base vertex")
        return StringWord((start,), ())
    for x in letters:
        if x.arrow not in q.arrow:
            raise StringError(f"unknown arrow {x.arrow!r}")
    if start is not None and start != letter_start(q, letters[0]):
        raise StringError(f"walk does not start at {start}")
    for x, y in zip(letters, letters[1:]):
        err = _check_pair(q, x, y)
        if err:
            raise StringError(err)
    verts = [letter_start(q, letters[0])] + [letter_end(q, x) for x in letters]
    w = StringWord(tuple(verts), letters)
    return canonical(q, w) if canonicalize else w


def trivial_string(q: GentleQuiver, v: str) -> StringWord:
    return validate_string(q, (), v)


def string_from_path(q: GentleQuiver, p: Path) -> StringWord:
    return validate_string(q, [Letter(a) for a in p.arrows], p.source, canonicalize=False)


def concat(a: StringWord, b: StringWord) -> StringWord:
    """Join two walks that share the end vertex of ``a`` and start of ``b``."""
    if a.vertices[-1] != b.vertices[0]:
        raise StringError("walks do not meet")
    return StringWord(a.vertices + b.vertices[1:], a.letters + b.letters)


def substring(w: StringWord, lo: int, hi: int) -> StringWord:
    """Positions ``lo..hi`` inclusive, reversed when ``lo > hi``."""
    if lo <= hi:
        return StringWord(w.vertices[lo:hi + 1], w.letters[lo:hi])
    return substring(w, hi, lo).inverse()


# bands -----------------------------------------------------------------------


@dataclass(frozen=True)
class BandWord:
    """A primitive cyclic string; ``vertices[i]`` is where letter ``i`` starts."""

    vertices: tuple[str, ...]
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "BandWord":
        letters = tuple(x.flipped() for x in reversed(self.letters))
        n = len(self.letters)
        verts = tuple(self.vertices[(n - i) % n] for i in range(n))
        return BandWord(verts, letters)

    def rotate(self, k: int) -> "BandWord":
        return BandWord(self.vertices[k:] + self.vertices[:k], self.letters[k:] + self.letters[:k])

    def dim_vector(self) -> dict[str, int]:
        dims: dict[str, int] = {}
        for v in self.vertices:
            dims[v] = dims.get(v, 0) + 1
        return dims

    def __str__(self) -> str:
        return "band[" + ".".join(str(x) for x in self.letters) + "]"


def _is_primitive(letters: tuple[Letter, ...]) -> bool:
    n = len(letters)
    return all(letters != letters[k:] + letters[:k] for k in range(1, n) if n % k == 0)


def canonical_band(q: GentleQuiver, b: BandWord) -> BandWord:
    best = None
    for w in (b, b.inverse()):
        for k in range(len(w.letters)):
            r = w.rotate(k)
            key = [_letter_key(q, x) for x in r.letters]
            if best is None or key < best[0]:
                best = (key, r)
    return best[1]


def validate_band(q: GentleQuiver, letters: Sequence[Letter]) -> BandWord:
    letters = tuple(Letter(x.arrow, bool(x.inverse)) for x in letters)
    if not letters:
        raise StringError("a band needs at least one letter")
    for x in letters:
        if x.arrow not in q.arrow:
            raise StringError(f"unknown arrow {x.arrow!r}")
    n = len(letters)
    for i in range(n):
        err = _check_pair(q, letters[i], letters[(i + 1) % n])
        if err:
            raise StringError(err)
    if all(x.inverse for x in letters) or not any(x.inverse for x in letters):
        raise StringError("a band needs both direct and inverse letters")
    if not _is_primitive(letters):
        raise StringError("band word is a proper power")
    verts = tuple(letter_start(q, x) for x in letters)
    return canonical_band(q, BandWord(verts, letters))


# projective strings and top/socle ------------------------------------------------


def projective_string(q: GentleQuiver, v: str) -> StringWord:
    """String of ``P(v)``: the first maximal path inverted, then the second."""
    left = q.maximal_path_from(v, 0)
    right = q.maximal_path_from(v, 1)
    w = concat(string_from_path(q, left).inverse(), string_from_path(q, right))
    return canonical(q, w)


def projective_top(p: StringWord) -> int:
    """Index of the unique top position of a projective string."""
    (t,) = top_positions(p)
    return t


def top_positions(w: StringWord) -> list[int]:
    """Positions whose incident letters both point away from them."""
    out = []
    m = len(w.letters)
    for i in range(m + 1):
        left_ok = i == 0 or w.letters[i - 1].inverse
        right_ok = i == m or not w.letters[i].inverse
        if left_ok and right_ok:
            out.append(i)
    return out


def soc_positions(w: StringWord) -> list[int]:
    """Positions whose incident letters both point towards them."""
    out = []
    m = len(w.letters)
    for i in range(m + 1):
        left_ok = i == 0 or not w.letters[i - 1].inverse
        right_ok = i == m or w.letters[i].inverse
        if left_ok and right_ok:
            out.append(i)
    return out


def follow_path(w: StringWord, start: int, arrows: Sequence[str]) -> int | None:
    """Position reached from ``start`` by acting with a path, or ``None``.

    Moving along arrow ``a`` from position ``i`` means stepping to a
    neighbour joined to ``i`` by ``a`` pointing away from ``i``.
    """
    pos = start
    step = 0
    for a in arrows:
        nxt = None
        if step >= 0 and pos < len(w.letters) and w.letters[pos] == Letter(a, False):
            nxt = (pos + 1, 1)
        elif step <= 0 and pos > 0 and w.letters[pos - 1] == Letter(a, True):
            nxt = (pos - 1, -1)
        if nxt is None:
            return None
        pos, step = nxt
    return pos


def branch_position(w: StringWord, top: int, arrows: Sequence[str]) -> int:
    """Position of the path ``arrows`` inside a projective string with top ``top``."""
    pos = follow_path(w, top, arrows)
    if pos is None:
        raise StringError(f"path {'.'.join(arrows)} does not lie in the projective string {w}")
    return pos


# truncations -------------------------------------------------------------------


@dataclass(frozen=True)
class Truncation:
    """Cut ``tru_r^s`` of a base string.

    Vertex ``k`` of the base (1-based) is the arc with index ``k``; index
    ``0`` and ``m + 1`` stand for the two ends.  The cut keeps arcs
    ``max(r, 1) .. min(s, m)`` and is trivial when nothing is kept.
    ``site`` records the walk index the cut belongs to, if any.
    """

    base: StringWord
    r: int
    s: int
    site: int | None = None

    @property
    def m(self) -> int:
        return len(self.base.vertices)

    @property
    def span(self) -> tuple[int, int] | None:
        """Kept 0-based positions, inclusive, or ``None``."""
        lo, hi = max(self.r, 1), min(self.s, self.m)
        if self.r > self.s or lo > hi:
            return None
        return lo - 1, hi - 1

    @property
    def is_trivial(self) -> bool:
        return self.span is None

    def __str__(self) -> str:
        return f"tru_{self.r}^{self.s}({self.base})"


def truncate(p: StringWord, r: int, s: int, site: int | None = None) -> Truncation:
    m = len(p.vertices)
    if not (0 <= r <= m + 1 and 0 <= s <= m + 1):
        raise StringError(f"cut indices ({r}, {s}) out of range 0..{m + 1}")
    return Truncation(p, r, s, site)


def truncation_of_span(p: StringWord, lo: int, hi: int, site: int | None = None) -> Truncation:
    """Truncation keeping positions ``lo..hi``; ends that reach the base end use ``0``/``m+1``."""
    m = len(p.vertices)
    if lo > hi:
        return Truncation(p, lo + 1, lo, site)
    r = 0 if lo == 0 else lo + 1
    s = m + 1 if hi == m - 1 else hi + 1
    return Truncation(p, r, s, site)


def completion(q: GentleQuiver, t: Truncation) -> StringWord:
    span = t.span
    if span is None:
        raise StringError("a trivial truncation has no completion")
    return canonical(q, substring(t.base, *span))


def supplemental_union(q: GentleQuiver, parts: Sequence[Truncation], glue: "HomotopyString") -> list[StringWord]:
    """Glue the cuts of one degree along a homotopy string.

    Two cuts at walk sites ``i`` and ``i + 2`` are adjacent when the vertex
    between them sits one degree lower; both letters at that vertex then
    reach a common glue vertex.  The glue vertex belongs to the later cut;
    the earlier one is joined to it by the connecting segment.  Each
    maximal glued run is completed to a single string.
    """
    parts = sorted(parts, key=lambda t: -1 if t.site is None else t.site)
    out: list[StringWord] = []
    current: StringWord | None = None
    fresh = False  # current is exactly prev's piece, read lo..hi
    prev: Truncation | None = None
    for t in parts:
        if prev is not None and _adjacent(prev, t, glue):
            piece = _from_glue(t, glue)
            if piece is None:
                raise StringError(f"cut {t} lost its glue point")
            if current is None:
                current = piece
            else:
                g = _glue_position(prev, glue, prev.site + 1)
                lo, hi = prev.span
                if fresh and g < lo:
                    current = current.inverse()
                near = hi if g > hi else lo
                current = concat(concat(current, substring(prev.base, near, g)), piece)
        else:
            if current is not None:
                out.append(canonical(q, current))
            current = None if t.is_trivial else substring(t.base, *t.span)
        fresh = prev is None or not _adjacent(prev, t, glue)
        prev = t
    if current is not None:
        out.append(canonical(q, current))
    return out


def _adjacent(a: Truncation, b: Truncation, h: "HomotopyString") -> bool:
    if a.site is None or b.site is None or b.site != a.site + 2:
        return False
    j = a.site + 1
    return h.degrees[j] == h.degrees[a.site] - 1 == h.degrees[b.site] - 1


def _glue_position(t: Truncation, h: "HomotopyString", towards: int) -> int:
    """Position in ``t.base`` of the path from site ``t.site`` to site ``towards``."""
    path = h.path_between(t.site, towards)
    return branch_position(t.base, projective_top(t.base), path.arrows)


def _from_glue(t: Truncation, h: "HomotopyString") -> StringWord | None:
    """Kept piece of a later cut, read from its glue point outwards."""
    span = t.span
    if span is None:
        return None
    g = _glue_position(t, h, t.site - 1)
    lo, hi = span
    if g == lo:
        return substring(t.base, lo, hi)
    if g == hi:
        return substring(t.base, hi, lo)
    raise StringError(f"glue point of {t} is not an end of its cut")


# enumeration --------------------------------------------------------------------


def _extensions(q: GentleQuiver, w_end: str, last: Letter | None) -> Iterable[Letter]:
    for a in q.out_arrows(w_end):
        x = Letter(a, False)
        if last is None or _check_pair(q, last, x) is None:
            yield x
    for a in q.in_arrows(w_end):
        x = Letter(a, True)
        if last is None or _check_pair(q, last, x) is None:
            yield x


def enumerate_strings(q: GentleQuiver, max_len: int) -> list[StringWord]:
    """All canonical strings with at most ``max_len`` letters."""
    seen: set[StringWord] = set()
    out: list[StringWord] = []

    def grow(verts: list[str], letters: list[Letter]) -> None:
        w = StringWord(tuple(verts), tuple(letters))
        c = canonical(q, w)
        if c not in seen:
            seen.add(c)
            out.append(c)
        if len(letters) == max_len:
            return
        for x in _extensions(q, verts[-1], letters[-1] if letters else None):
            verts.append(letter_end(q, x))
            letters.append(x)
            grow(verts, letters)
            verts.pop()
            letters.pop()

    for v in q.vertices:
        grow([v], [])
    return out


def enumerate_bands(q: GentleQuiver, max_len: int) -> list[BandWord]:
    """All bands with at most ``max_len`` letters, up to rotation and inversion."""
    seen: set[BandWord] = set()
    out: list[BandWord] = []

    def grow(start: str, verts: list[str], letters: list[Letter]) -> None:
        if letters and verts[-1] == start:
            try:
                b = validate_band(q, letters)
            except StringError:
                b = None
            if b is not None and b not in seen:
                seen.add(b)
                out.append(b)
        if len(letters) == max_len:
            return
        for x in _extensions(q, verts[-1], letters[-1] if letters else None):
            verts.append(letter_end(q, x))
            letters.append(x)
            grow(start, verts, letters)
            verts.pop()
            letters.pop()

    for v in q.vertices:
        grow(v, [v], [])
    return out


# text notation -----------------------------------------------------------------

_TRIVIAL_RE = re.compile(r"^e\(([^()\s]+)\)$")
_BAND_RE = re.compile(r"^band\[(.*)\]$")


def parse_letters(text: str) -> list[Letter]:
    out = []
    for tok in text.split("."):
        tok = tok.strip()
        if not tok:
            raise StringError(f"empty letter in {text!r}")
        out.append(Letter(tok[1:], True) if tok.startswith("~") else Letter(tok, False))
    return out


def parse_string(q: GentleQuiver, text: str) -> StringWord:
    """Read ``~a1.a9`` style notation, or ``e(v)`` for a trivial string."""
    text = text.strip()
    if m := _TRIVIAL_RE.match(text):
        return validate_string(q, (), m.group(1))
    return validate_string(q, parse_letters(text))


def parse_band(q: GentleQuiver, text: str) -> BandWord:
    text = text.strip()
    m = _BAND_RE.match(text)
    return validate_band(q, parse_letters(m.group(1) if m else text))
