"""Permutations in one-line notation, 0-based: ``p[j]`` is the image of ``j``.

Cycle notation in text is 1-based, e.g. ``(1 2)(3 5 4)``.
"""
from __future__ import annotations

import re
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """``p . q``: apply ``q`` first, then ``p``."""
    return tuple(p[q[j]] for j in range(len(q)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for j, pj in enumerate(p):
        out[pj] = j
    return tuple(out)


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Perm:
    """Build from 1-based cycles."""
    p = list(range(n))
    for cyc in cycles:
        for k, x in enumerate(cyc):
            p[x - 1] = cyc[(k + 1) % len(cyc)] - 1
    if not is_perm(p):
        raise ValueError(f"cycles {list(cycles)} do not define a permutation of {n}")
    return tuple(p)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles (0-based), each starting at its smallest element, ordered by it."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> list[int]:
    return sorted((len(c) for c in cycles(p)), reverse=True)


def to_cycle_str(p: Perm) -> str:
    """1-based cycle notation; fixed points omitted, ``()`` for the identity."""
    parts = ["(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"


_CYCLE = re.compile(r"\(([\d\s,]*)\)")


def parse_cycles(text: str, n: int) -> Perm:
    text = text.strip()
    if not _CYCLE.fullmatch(text) and not re.fullmatch(r"(\([\d\s,]*\))+", text):
        raise ValueError(f"bad cycle notation {text!r}")
    cyc = []
    for body in _CYCLE.findall(text):
        nums = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
        if nums:
            cyc.append(nums)
    return from_cycles(cyc, n)


def adjacent_transpositions(p: Perm) -> list[int]:
    """Positions k of adjacent swaps (k, k+1) realizing ``p`` by insertion sort.

    Applying the swaps in order moves the strand starting at ``j`` to ``p[j]``.
    """
    labels = list(p)
    steps = []
    for i in range(1, len(labels)):
        k = i
        while k > 0 and labels[k - 1] > labels[k]:
            labels[k - 1], labels[k] = labels[k], labels[k - 1]
            steps.append(k - 1)
            k -= 1
    return steps
