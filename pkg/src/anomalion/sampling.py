"""Seeded random generators for representable circuits and operators.

Used by the pairing identity suite, the pointwise lattice crossed-square
checks and the CLI property commands.  Layers are kept valid by
construction: a layer is either all-diagonal (any overlaps commute) or a
set of X gates on distinct sites.  Gate diameters stay <= 1 so circuits
have small range and the pairing stabilizes on modest windows.
"""

from __future__ import annotations

import random

from .circuits import GateRule, ProceduralCircuit
from .lattice import Region, Window
from .symop import SymOp


def _region_sites(window: Window, region: Region) -> list:
    return sorted(s for s in window.sites() if region.contains(s))


def _neighbors(site, sites_set):
    x, y = site
    out = []
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if (dx, dy) != (0, 0) and (x + dx, y + dy) in sites_set:
                out.append((x + dx, y + dy))
    return out


def random_diagonal_gate(rng: random.Random, sites: list, sites_set: set) -> SymOp:
    s = sites[rng.randrange(len(sites))]
    kind = rng.randrange(3)
    if kind == 0:
        return SymOp.z(s)
    nbrs = _neighbors(s, sites_set)
    if not nbrs:
        return SymOp.z(s)
    t = nbrs[rng.randrange(len(nbrs))]
    if kind == 1:
        return SymOp.cz(s, t)
    third = [u for u in _neighbors(s, sites_set) if u != t and max(abs(u[0] - t[0]), abs(u[1] - t[1])) <= 1]
    if not third:
        return SymOp.cz(s, t)
    u = third[rng.randrange(len(third))]
    return SymOp.ccz(s, t, u)


def random_circuit(
    rng: random.Random,
    window: Window,
    region: Region,
    max_layers: int = 2,
    max_gates: int = 4,
) -> ProceduralCircuit:
    """Random representable circuit localized in the region."""
    sites = _region_sites(window, region)
    sites_set = set(sites)
    layers = []
    for _ in range(rng.randrange(1, max_layers + 1)):
        if rng.random() < 0.5:
            gates = []
            used = set()
            for _ in range(rng.randrange(1, max_gates + 1)):
                s = sites[rng.randrange(len(sites))]
                if s not in used:
                    used.add(s)
                    gates.append(SymOp.x(s))
        else:
            gates = [random_diagonal_gate(rng, sites, sites_set) for _ in range(rng.randrange(1, max_gates + 1))]
            seen = set()
            dedup = []
            for g in gates:
                key = frozenset(g.poly)
                if key not in seen:
                    seen.add(key)
                    dedup.append(g)
            gates = dedup
        layers.append(GateRule("explicit", gates=tuple(gates)))
    return ProceduralCircuit(tuple(layers), window)


def random_inner(rng: random.Random, window: Window, region: Region, max_terms: int = 3) -> SymOp:
    """Random SymOp supported in the region (diagonal terms plus flips)."""
    sites = _region_sites(window, region)
    sites_set = set(sites)
    poly = set()
    for _ in range(rng.randrange(max_terms + 1)):
        g = random_diagonal_gate(rng, sites, sites_set)
        poly ^= g.poly
    if rng.random() < 0.3:
        poly ^= {frozenset()}
    flips = frozenset(s for s in sites if rng.random() < 0.1)
    return SymOp(frozenset(poly), flips)


def random_local_observable(rng: random.Random, radius: int = 2):
    x = rng.randrange(-radius, radius + 1)
    y = 0
    s = (x, y)
    return SymOp.z(s) if rng.random() < 0.5 else SymOp.x(s)
