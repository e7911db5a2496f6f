"""Seeded random instance generation.

Instances are (lattice, relation) pairs: random chains, random sublattices
of Boolean lattices (hence distributive), and vertical gluings of the two,
carrying relations sampled from the order and closed under the join or meet
shift law. Everything is driven by one integer seed; equal seeds give equal
instances, bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import relcalc as rc
from .lattice import Lattice, _make, chain


@dataclass
class RunConfig:
    max_blocks: int = 4
    max_block_size: int = 3
    lattice_size_cap: int = 32
    fuzz_seed: int = 0
    fuzz_count: int = 200
    suites: tuple = ()
    output_format: str = "text"
    output_path: str | None = None
    properties: tuple = (
        "comm",
        "one",
        "simple",
        "dim<=4",
        "blockdim<=2",
        "G(one)",
        "dG(one)",
        "R(simple)",
    )


def bool_sublattice(rng, atoms, keep, name="sublat"):
    """Random {0,1}-sublattice of a Boolean lattice: a random generator set
    closed under bitwise meets and joins."""
    full = (1 << atoms) - 1
    gens = {0, full}
    keep = min(keep, full + 1)
    while len(gens) < keep:
        gens.add(rng.randrange(full + 1))
    closed = set(gens)
    while True:
        new = set()
        for x in closed:
            for y in closed:
                new.add(x | y)
                new.add(x & y)
        if new <= closed:
            break
        closed |= new
    members = sorted(closed)
    pos = {m: i for i, m in enumerate(members)}
    n = len(members)
    leq = np.zeros((n, n), dtype=bool)
    join = np.zeros((n, n), dtype=np.intp)
    meet = np.zeros((n, n), dtype=np.intp)
    for i, x in enumerate(members):
        for j, y in enumerate(members):
            leq[i, j] = (x & y) == x
            join[i, j] = pos[x | y]
            meet[i, j] = pos[x & y]
    return _make(leq, name=name, tables=(join, meet))


def glue(lower: Lattice, upper: Lattice, name="glued"):
    """Vertical sum: the top of the lower lattice becomes the bottom of the
    upper one. Indices: lower block first, then the strictly-upper elements."""
    n = lower.n + upper.n - 1
    leq = np.zeros((n, n), dtype=bool)
    leq[: lower.n, : lower.n] = lower.leq
    strictly_upper = [i for i in range(upper.n) if i != upper.bottom]
    new_index = {upper.bottom: lower.top}
    for pos, i in enumerate(strictly_upper):
        new_index[i] = lower.n + pos
    for i in range(upper.n):
        for j in range(upper.n):
            if upper.leq[i, j]:
                leq[new_index[i], new_index[j]] = True
    leq[: lower.n, lower.n :] = True
    return _make(leq, name=name)


def random_lattice(rng, cap, name="fuzz"):
    kind = rng.randrange(3)
    if kind == 1:
        atoms = rng.randint(2, 5)
        keep = rng.randint(3, 12)
        lat = bool_sublattice(rng, atoms, keep, name=f"{name}-sub")
        if lat.n <= cap:
            return lat
    elif kind == 2:
        lower = bool_sublattice(rng, rng.randint(2, 4), rng.randint(3, 8), name="lo")
        upper = bool_sublattice(rng, rng.randint(2, 3), rng.randint(3, 6), name="hi")
        lat = glue(lower, upper, name=f"{name}-glue")
        if lat.n <= cap:
            return lat
    return chain(rng.randint(2, min(8, cap)), name=f"{name}-chain")


def random_relation(rng, lat, close="h"):
    """Seed pairs sampled from the order, then shift-closed. Retries a few
    times when the closure degenerates to the full order, to keep negative
    space in the fuzz population."""
    for _ in range(3):
        rel = np.eye(lat.n, dtype=bool)
        target = rng.randint(1, max(2, lat.n // 2))
        for _ in range(target):
            a = rng.randrange(lat.n)
            ups = np.flatnonzero(lat.leq[a])
            b = int(ups[rng.randrange(len(ups))])
            rel[a, b] = True
        seed_rel = rc.Relation(lat, rel)
        closed = rc.h_closure(seed_rel) if close == "h" else rc.dual_h_closure(seed_rel)
        if closed.density() < 1.0:
            return closed
    return closed


def fuzz_instances(config: RunConfig):
    """Deterministic stream of (lattice, relation) pairs."""
    rng = random.Random(config.fuzz_seed)
    for k in range(config.fuzz_count):
        lat = random_lattice(rng, config.lattice_size_cap, name=f"fuzz{k}")
        close = "h" if k % 2 == 0 else "dual"
        yield lat, random_relation(rng, lat, close=close)


def fuzz_distributive_lattices(seed, count, cap=64):
    """Random sublattices of Boolean lattices (distributive by construction)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        atoms = rng.randint(2, 6)
        keep = rng.randint(3, 7)
        lat = bool_sublattice(rng, atoms, keep, name=f"dist{len(out)}")
        if lat.n <= cap:
            out.append(lat)
    return out
