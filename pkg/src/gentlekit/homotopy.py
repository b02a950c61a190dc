"""Homotopy strings and bands: walks of nonzero paths with degrees.

A direct letter is a path ``p`` walked from ``source(p)`` to
``target(p)``; it stands for the map ``P(target p) -> P(source p)``
given by left multiplication with ``p``.  The source of that map sits
one degree lower, so walking a direct letter lowers the degree by one
and walking an inverse letter raises it by one.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import format_rational, parse_rational
from .quiver import GentleQuiver, Path


class HomotopyError(ValueError):
    pass


@dataclass(frozen=True)
class HLetter:
    path: Path
    inverse: bool = False

    @property
    def start(self) -> str:
        return self.path.target if self.inverse else self.path.source

    @property
    def end(self) -> str:
        return self.path.source if self.inverse else self.path.target

    @property
    def step(self) -> int:
        """Degree change when the letter is walked."""
        return 1 if self.inverse else -1

    def flipped(self) -> "HLetter":
        return HLetter(self.path, not self.inverse)

    def __str__(self) -> str:
        return ("~" if self.inverse else "") + ".".join(self.path.arrows)


def _pair_error(q: GentleQuiver, x: HLetter, y: HLetter) -> str | None:
    if x.end != y.start:
        return f"letters {x} and {y} are not composable"
    if not x.inverse and not y.inverse:
        if not q.is_relation(x.path.last, y.path.first):
            return f"direct letters {x} and {y} compose to a nonzero path"
    elif x.inverse and y.inverse:
        if not q.is_relation(y.path.last, x.path.first):
            return f"inverse letters {x} and {y} compose to a nonzero path"
    elif not x.inverse:
        if x.path.last == y.path.last:
            return f"letters {x} and {y} end with the same arrow"
    else:
        if x.path.first == y.path.first:
            return f"letters {x} and {y} start with the same arrow"
    return None


def _key(q: GentleQuiver, letters: Sequence[HLetter]) -> list:
    return [(tuple(q.arrow_index[a] for a in x.path.arrows), int(x.inverse)) for x in letters]


@dataclass(frozen=True)
class HomotopyString:
    vertices: tuple[str, ...]
    letters: tuple[HLetter, ...]
    degrees: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def n(self) -> int:
        """Number of walk vertices (summands of the complex)."""
        return len(self.vertices)

    def inverse(self) -> "HomotopyString":
        return HomotopyString(self.vertices[::-1], tuple(x.flipped() for x in reversed(self.letters)), self.degrees[::-1])

    def shift(self, k: int) -> "HomotopyString":
        return HomotopyString(self.vertices, self.letters, tuple(d + k for d in self.degrees))

    def normalized(self) -> "HomotopyString":
        """Shift so the top degree is 0."""
        return self.shift(-max(self.degrees))

    def path_between(self, i: int, j: int) -> Path:
        """The path of the letter joining adjacent sites ``i`` and ``j``, read from ``i``."""
        x = self.letters[min(i, j)]
        return x.path

    def sub(self, i: int, j: int) -> "HomotopyString":
        """Sites ``i..j`` inclusive."""
        return HomotopyString(self.vertices[i:j + 1], self.letters[i:j], self.degrees[i:j + 1])

    def __str__(self) -> str:
        return format_homotopy(self)


def make_homotopy_string(q: GentleQuiver, letters: Sequence[HLetter], start: str | None = None, degree: int = 0) -> HomotopyString:
    """Validate a walk and attach degrees starting from ``degree``."""
    letters = tuple(letters)
    if not letters:
        if start is None or start not in q.vertex_index:
            raise HomotopyError("single-vertex homotopy string needs a known vertex")
        return HomotopyString((start,), (), (degree,))
    for x in letters:
        if not x.path.arrows:
            raise HomotopyError("homotopy letters are nontrivial paths")
        try:
            q.path(x.path.arrows)
        except ValueError as exc:
            raise HomotopyError(str(exc)) from None
    if start is not None and start != letters[0].start:
        raise HomotopyError(f"walk does not start at {start}")
    for x, y in zip(letters, letters[1:]):
        err = _pair_error(q, x, y)
        if err:
            raise HomotopyError(err)
    verts = [letters[0].start] + [x.end for x in letters]
    degs = [degree]
    for x in letters:
        degs.append(degs[-1] + x.step)
    return HomotopyString(tuple(verts), letters, tuple(degs))


def canonical_homotopy(q: GentleQuiver, h: HomotopyString) -> HomotopyString:
    """Representative of ``{h, h^-1}``, with the top degree normalized to 0."""
    h = h.normalized()
    if not h.letters:
        return h
    inv = h.inverse()
    return h if _key(q, h.letters) <= _key(q, inv.letters) else inv


def letter(q: GentleQuiver, arrows: Sequence[str], inverse: bool = False) -> HLetter:
    return HLetter(q.path(arrows), inverse)


# bands ----------------------------------------------------------------------


@dataclass(frozen=True)
class HomotopyBand:
    """Cyclic homotopy walk; ``vertices[i]`` is where letter ``i`` starts.

    ``jordan`` is the index of the letter whose differential carries the
    Jordan block; the block itself comes with the complex.
    """

    vertices: tuple[str, ...]
    letters: tuple[HLetter, ...]
    degrees: tuple[int, ...]
    jordan: int = 0

    def __len__(self) -> int:
        return len(self.letters)

    def unroll(self, turns: int, offset: int = 0) -> HomotopyString:
        """String walking ``turns`` times around the band from vertex ``offset``."""
        n = len(self.letters)
        count = turns * n
        verts = [self.vertices[(offset + k) % n] for k in range(count)]
        letters = tuple(self.letters[(offset + k) % n] for k in range(count - 1))
        degs = tuple(self.degrees[(offset + k) % n] for k in range(count))
        return HomotopyString(tuple(verts), letters, degs)

    def __str__(self) -> str:
        parts = []
        for v, x, d in zip(self.vertices, self.letters, self.degrees):
            parts.append(f"[{d}] {x}")
        return "band[" + " ".join(parts) + "]"


def make_homotopy_band(q: GentleQuiver, letters: Sequence[HLetter], jordan: int = 0, degree: int = 0) -> HomotopyBand:
    letters = tuple(letters)
    if not letters:
        raise HomotopyError("a homotopy band needs letters")
    n = len(letters)
    for i in range(n):
        err = _pair_error(q, letters[i], letters[(i + 1) % n])
        if err:
            raise HomotopyError(err)
    if sum(x.step for x in letters) != 0:
        raise HomotopyError("degrees do not close up around the band")
    if any(letters == letters[k:] + letters[:k] for k in range(1, n) if n % k == 0):
        raise HomotopyError("homotopy band is a proper power")
    degs = [degree]
    for x in letters[:-1]:
        degs.append(degs[-1] + x.step)
    top = max(degs)
    return HomotopyBand(tuple(x.start for x in letters), letters, tuple(d - top for d in degs), jordan % n)


# text format --------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\[\s*(-?\d+)\s*\]|(\S+)")


def parse_homotopy(q: GentleQuiver, text: str) -> HomotopyString:
    """Read ``[0] ~a2 [1] a3 [0]``; ``[d] e(v)`` is a single vertex.

    A letter with several arrows joins them with ``.``.  Every vertex
    carries its degree, and the degrees must follow the letter steps.
    """
    text = text.strip()
    if text.startswith("{"):
        return homotopy_from_json(q, json.loads(text))
    tokens = [(m.group(1), m.group(2)) for m in _TOKEN_RE.finditer(text)]
    degrees: list[int] = []
    words: list[str] = []
    for deg, word in tokens:
        if deg is not None:
            if len(degrees) != len(words):
                raise HomotopyError("two degree marks in a row")
            degrees.append(int(deg))
        else:
            if len(words) != len(degrees) - 1:
                raise HomotopyError(f"letter {word!r} is not preceded by a degree")
            words.append(word)
    if not degrees:
        raise HomotopyError("missing degree annotation")
    m = re.fullmatch(r"e\(([^()\s]+)\)", words[0]) if len(words) == 1 and len(degrees) == 1 else None
    if m:
        return make_homotopy_string(q, (), m.group(1), degrees[0])
    if len(degrees) != len(words) + 1:
        raise HomotopyError("each letter needs a degree on both sides")
    letters = []
    for w in words:
        inv = w.startswith("~")
        arrows = [a for a in w.lstrip("~").split(".")]
        try:
            letters.append(HLetter(q.path(arrows), inv))
        except ValueError as exc:
            raise HomotopyError(str(exc)) from None
    h = make_homotopy_string(q, letters, None, degrees[0])
    if list(h.degrees) != degrees:
        raise HomotopyError(f"degrees {degrees} do not follow the letters (expected {list(h.degrees)})")
    return h


def format_homotopy(h: HomotopyString) -> str:
    if not h.letters:
        return f"[{h.degrees[0]}] e({h.vertices[0]})"
    parts = [f"[{h.degrees[0]}]"]
    for x, d in zip(h.letters, h.degrees[1:]):
        parts.append(str(x))
        parts.append(f"[{d}]")
    return " ".join(parts)


def homotopy_to_json(h: HomotopyString) -> dict:
    return {
        "vertices": list(h.vertices),
        "letters": [{"path": list(x.path.arrows), "inverse": x.inverse} for x in h.letters],
        "degrees": list(h.degrees),
    }


def homotopy_from_json(q: GentleQuiver, data: dict) -> HomotopyString:
    try:
        letters = [HLetter(q.path(x["path"]), bool(x.get("inverse", False))) for x in data["letters"]]
        degrees = [int(d) for d in data["degrees"]]
        start = data["vertices"][0] if data.get("vertices") else None
    except (KeyError, TypeError, ValueError) as exc:
        raise HomotopyError(f"malformed homotopy string JSON: {exc}") from None
    h = make_homotopy_string(q, letters, start, degrees[0])
    if list(h.degrees) != degrees:
        raise HomotopyError("degrees do not follow the letters")
    return h


@dataclass(frozen=True)
class Jordan:
    """Jordan block size ``n`` and nonzero eigenvalue ``lam``."""

    n: int = 1
    lam: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "lam", parse_rational(self.lam))
        if self.n < 1:
            raise ValueError("Jordan block size must be at least 1")
        if self.lam == 0:
            raise ValueError("band eigenvalue must be nonzero")

    def to_json(self) -> dict:
        return {"n": self.n, "lambda": format_rational(self.lam)}


# enumeration ------------------------------------------------------------------


def homotopy_letters_from(q: GentleQuiver, v: str) -> list[HLetter]:
    """Every letter that can be walked from ``v``."""
    out = [HLetter(p, False) for p in q.paths_from(v) if p.arrows]
    out += [HLetter(p, True) for p in q.paths_to(v) if p.arrows]
    return out


def extend_homotopy(q: GentleQuiver, h: HomotopyString) -> list[HomotopyString]:
    """All one-letter extensions of ``h`` at its right end."""
    last = h.letters[-1] if h.letters else None
    out = []
    for x in homotopy_letters_from(q, h.vertices[-1]):
        if last is not None and _pair_error(q, last, x):
            continue
        out.append(HomotopyString(h.vertices + (x.end,), h.letters + (x,), h.degrees + (h.degrees[-1] + x.step,)))
    return out


def enumerate_homotopy_strings(q: GentleQuiver, max_len: int) -> list[HomotopyString]:
    """Canonical homotopy strings with at most ``max_len`` letters."""
    seen: set[HomotopyString] = set()
    out: list[HomotopyString] = []
    frontier = [HomotopyString((v,), (), (0,)) for v in q.vertices]
    for length in range(max_len + 1):
        nxt = []
        for h in frontier:
            c = canonical_homotopy(q, h)
            if c not in seen:
                seen.add(c)
                out.append(c)
            if length < max_len:
                nxt.extend(extend_homotopy(q, h))
        frontier = nxt
    return out


def canonical_band_letters(q: GentleQuiver, letters: Sequence[HLetter]) -> tuple[HLetter, ...]:
    best = None
    n = len(letters)
    for w in (tuple(letters), tuple(x.flipped() for x in reversed(letters))):
        for k in range(n):
            r = w[k:] + w[:k]
            key = _key(q, r)
            if best is None or key < best[0]:
                best = (key, r)
    return best[1]


def enumerate_homotopy_bands(q: GentleQuiver, max_len: int) -> list[HomotopyBand]:
    """Homotopy bands with at most ``max_len`` letters, up to rotation and inversion."""
    seen: set[tuple[HLetter, ...]] = set()
    out: list[HomotopyBand] = []

    def grow(start: str, h: HomotopyString) -> None:
        if h.letters and h.vertices[-1] == start and h.degrees[-1] == h.degrees[0]:
            try:
                b = make_homotopy_band(q, canonical_band_letters(q, h.letters))
            except HomotopyError:
                b = None
            if b is not None and b.letters not in seen:
                seen.add(b.letters)
                out.append(b)
        if len(h.letters) == max_len:
            return
        for g in extend_homotopy(q, h):
            grow(start, g)

    for v in q.vertices:
        grow(v, HomotopyString((v,), (), (0,)))
    return out
