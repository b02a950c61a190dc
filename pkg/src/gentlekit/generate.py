"""Seeded random gentle quivers and homotopy strings for property testing."""
from __future__ import annotations

import random

from .homotopy import HomotopyString, canonical_homotopy, extend_homotopy
from .quiver import GentleQuiver, QuiverError, make_quiver


def random_gentle_quiver(seed: int, max_vertices: int = 8, max_arrows: int = 10, loops: bool = True) -> GentleQuiver:
    """A random finite-dimensional gentle quiver; retries until one is valid.

    Arrows are added while valency allows.  At each vertex the relations are
    then forced where gentleness demands them and chosen at random elsewhere.
    """
    rng = random.Random(seed)
    while True:
        q = _attempt(rng, max_vertices, max_arrows, loops)
        if q is not None:
            return q


def _attempt(rng: random.Random, max_vertices: int, max_arrows: int, loops: bool) -> GentleQuiver | None:
    n = rng.randint(1, max_vertices)
    vertices = [str(k) for k in range(1, n + 1)]
    outs = {v: [] for v in vertices}
    ins = {v: [] for v in vertices}
    arrows = []
    for _ in range(rng.randint(min(n - 1, max_arrows), max_arrows)):
        sources = [v for v in vertices if len(outs[v]) < 2]
        targets = [v for v in vertices if len(ins[v]) < 2]
        if not sources or not targets:
            break
        s, t = rng.choice(sources), rng.choice(targets)
        if s == t and not loops:
            continue
        name = f"a{len(arrows) + 1}"
        arrows.append((name, s, t))
        outs[s].append(name)
        ins[t].append(name)
    relations = []
    for v in vertices:
        a, b = ins[v], outs[v]
        if len(a) == 2 and len(b) == 2:
            if rng.random() < 0.5:
                relations += [(a[0], b[0]), (a[1], b[1])]
            else:
                relations += [(a[0], b[1]), (a[1], b[0])]
        elif len(a) == 2 and len(b) == 1:
            relations.append((rng.choice(a), b[0]))
        elif len(a) == 1 and len(b) == 2:
            relations.append((a[0], rng.choice(b)))
        elif len(a) == 1 and len(b) == 1 and rng.random() < 0.5:
            relations.append((a[0], b[0]))
    try:
        return make_quiver(vertices, arrows, relations)
    except QuiverError:
        return None


def random_homotopy_string(q: GentleQuiver, rng: random.Random, length: int) -> HomotopyString | None:
    """A random walk of up to ``length`` letters, canonicalized; ``None`` without arrows."""
    starts = [v for v in q.vertices if q.out_arrows(v) or q.in_arrows(v)]
    if not starts:
        return None
    h = HomotopyString((rng.choice(starts),), (), (0,))
    for _ in range(length):
        options = extend_homotopy(q, h)
        if not options:
            break
        h = rng.choice(options)
    return canonical_homotopy(q, h)


def algebra_pool(seed: int, count: int, **kwargs) -> list[GentleQuiver]:
    """``count`` random gentle quivers drawn from one master seed."""
    rng = random.Random(seed)
    return [random_gentle_quiver(rng.getrandbits(64), **kwargs) for _ in range(count)]
