"""Rule-generated layered circuits on lattice windows.

A circuit is an ordered list of gate rules; instantiating it on a window
materializes each rule into a layer of SymOp gates.  Layers are applied to
states first-listed-first, so the circuit unitary is W_N ... W_2 W_1 and
conjugating an observable applies layers in list order.  Within a layer,
gates must pairwise commute or have disjoint supports, which keeps the
layer product and the conjugation action unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import FiniteGroup, klein_bits, klein_four
from .lattice import Region, Site, Window
from .symop import (
    SymOp,
    op_conj,
    op_inv,
    op_mul,
    op_product,
    ops_commute,
    support,
)


class InstantiationError(ValueError):
    pass


class MarginError(ValueError):
    pass


class CollapseError(ValueError):
    pass


PATTERNS = ("x_sites", "ccz_triangles", "cz_horizontal_edges", "cz_chain_edges", "explicit")


@dataclass(frozen=True)
class GateRule:
    """One layer: a placement pattern over a region, or an explicit gate list."""

    pattern: str
    region: Region = Region.full()
    gates: tuple[SymOp, ...] = ()

    def __post_init__(self):
        if self.pattern not in PATTERNS:
            raise InstantiationError(f"unknown pattern {self.pattern!r}")

    def range_bound(self) -> int:
        if self.pattern == "x_sites":
            return 0
        if self.pattern == "explicit":
            return max((_diameter(support(g)) for g in self.gates), default=0)
        return 1

    def generate(self, window: Window) -> list[SymOp]:
        r = self.region
        if self.pattern == "explicit":
            gates = list(self.gates)
        elif self.pattern == "x_sites":
            gates = [SymOp.x(s) for s in window.sites() if r.contains(s)]
        elif self.pattern == "cz_horizontal_edges":
            gates = []
            for s in window.sites():
                t = (s[0] + 1, s[1])
                if window.contains(t) and r.contains(s) and r.contains(t):
                    gates.append(SymOp.cz(s, t))
        elif self.pattern == "cz_chain_edges":
            gates = []
            for s in window.sites():
                if s[1] != 0:
                    continue
                t = (s[0] + 1, 0)
                if window.contains(t) and r.contains(s) and r.contains(t):
                    gates.append(SymOp.cz(s, t))
        elif self.pattern == "ccz_triangles":
            gates = []
            for s in window.sites():
                x, y = s
                corners = {
                    "bl": (x, y),
                    "br": (x + 1, y),
                    "tl": (x, y + 1),
                    "tr": (x + 1, y + 1),
                }
                if not all(window.contains(c) for c in corners.values()):
                    continue
                if not all(r.contains(c) for c in corners.values()):
                    continue
                gates.append(SymOp.ccz(corners["bl"], corners["tl"], corners["tr"]))
                gates.append(SymOp.ccz(corners["bl"], corners["br"], corners["tr"]))
        else:
            raise AssertionError
        for g in gates:
            for s in support(g):
                if not window.contains(s):
                    raise InstantiationError(f"gate leaves window at {s}")
        _check_layer(gates)
        return gates


def _diameter(sites) -> int:
    sites = list(sites)
    if not sites:
        return 0
    xs = [s[0] for s in sites]
    ys = [s[1] for s in sites]
    return max(max(xs) - min(xs), max(ys) - min(ys))


def _check_layer(gates: list[SymOp]):
    """Overlapping gates within a layer must commute."""
    by_site: dict[Site, list[int]] = {}
    for i, g in enumerate(gates):
        for s in support(g):
            by_site.setdefault(s, []).append(i)
    checked = set()
    for idxs in by_site.values():
        for i in idxs:
            for j in idxs:
                if i < j and (i, j) not in checked:
                    checked.add((i, j))
                    if not ops_commute(gates[i], gates[j]):
                        raise InstantiationError(
                            f"layer gates {gates[i]} and {gates[j]} overlap and do not commute"
                        )


@dataclass(frozen=True)
class ProceduralCircuit:
    layers: tuple[GateRule, ...]
    window: Window

    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def instantiate(self) -> list[list[SymOp]]:
        if "layers" not in self._cache:
            self._cache["layers"] = [rule.generate(self.window) for rule in self.layers]
        return self._cache["layers"]

    def total_range(self) -> int:
        return sum(rule.range_bound() for rule in self.layers)

    def unitary(self) -> SymOp:
        """W_N ... W_1 (first layer rightmost, i.e. applied first)."""
        if "unitary" not in self._cache:
            acc = SymOp.identity()
            for layer in self.instantiate():
                acc = op_mul(_layer_product(layer), acc)
            self._cache["unitary"] = acc
        return self._cache["unitary"]

    def inverse(self) -> "ProceduralCircuit":
        rev = tuple(
            GateRule("explicit", gates=tuple(op_inv(g) for g in layer))
            for layer in reversed(self.instantiate())
        )
        return ProceduralCircuit(rev, self.window)

    def is_identity(self) -> bool:
        return all(not layer for layer in self.instantiate())

    @staticmethod
    def empty(window: Window) -> "ProceduralCircuit":
        return ProceduralCircuit((), window)


def _layer_product(gates: list[SymOp]) -> SymOp:
    return op_product(sorted(gates, key=_gate_key))


def _gate_key(g: SymOp):
    return (sorted(support(g)), len(g.poly), len(g.flips))


def instantiate(c: ProceduralCircuit) -> list[list[SymOp]]:
    return c.instantiate()


def concat(first_applied: ProceduralCircuit, then_applied: ProceduralCircuit) -> ProceduralCircuit:
    """Circuit acting as first_applied then then_applied (on states)."""
    if first_applied.window != then_applied.window:
        raise ValueError("window mismatch")
    return ProceduralCircuit(first_applied.layers + then_applied.layers, first_applied.window)


def truncate(c: ProceduralCircuit, region: Region) -> ProceduralCircuit:
    """Keep exactly the gates whose entire support lies in the region."""
    layers = tuple(
        GateRule("explicit", gates=tuple(
            g for g in layer if region.contains_all(support(g))
        ))
        for layer in c.instantiate()
    )
    return ProceduralCircuit(layers, c.window)


def truncate_rest(c: ProceduralCircuit, region: Region) -> ProceduralCircuit:
    """The gates truncate() drops, as a circuit (straddlers included)."""
    layers = tuple(
        GateRule("explicit", gates=tuple(
            g for g in layer if not region.contains_all(support(g))
        ))
        for layer in c.instantiate()
    )
    return ProceduralCircuit(layers, c.window)


def conj_by_circuit(a: SymOp, c: ProceduralCircuit, check_margin: bool = True) -> SymOp:
    """phi(c)(a) = W a W^-1, applying layers in list order.

    Only gates meeting the running support act, so rules over infinite
    regions are fine inside the window.
    """
    if check_margin and not a.is_identity():
        reach = c.total_range()
        for s in support(a):
            if c.window.edge_distance(s) < reach:
                raise MarginError(
                    f"support site {s} is within circuit range {reach} of the window edge"
                )
    for layer in c.instantiate():
        supp = support(a)
        acting = [g for g in layer if support(g) & supp]
        for g in sorted(acting, key=_gate_key):
            a = op_conj(a, g)
    return a


def apply_inverse_circuit(a: SymOp, c: ProceduralCircuit) -> SymOp:
    """phi(c)^{-1}(a)."""
    return conj_by_circuit(a, c.inverse(), check_margin=False)


@dataclass(frozen=True)
class CollapseResult:
    op: SymOp
    cropped: tuple[str, ...]


def crop_window_debris(a: SymOp, window: Window) -> CollapseResult:
    """Drop monomials and flips living entirely in the window's margin strip."""
    cropped = []
    poly = set()
    for m in a.poly:
        if m and all(window.in_edge_strip(s) for s in m):
            cropped.append(f"dropped diagonal monomial on {sorted(m)}")
        else:
            poly.add(m)
    flips = set()
    for s in a.flips:
        if window.in_edge_strip(s):
            cropped.append(f"dropped flip at {s}")
        else:
            flips.add(s)
    return CollapseResult(SymOp(frozenset(poly), frozenset(flips)), tuple(cropped))


def product_collapse(
    circuits: list[ProceduralCircuit],
    signs: list[int],
    expect_region: Region | None = None,
) -> CollapseResult:
    """Multiply circuit unitaries (with +-1 exponents) into one SymOp.

    The raw product must be supported inside expect_region (thickened) up to
    debris in the window margin strip; the debris is cropped and logged.
    """
    if len(circuits) != len(signs):
        raise ValueError("need one sign per circuit")
    window = circuits[0].window
    acc = SymOp.identity()
    for c, s in zip(circuits, signs):
        w = c.unitary()
        if s == -1:
            w = op_inv(w)
        elif s != 1:
            raise ValueError("signs must be +-1")
        acc = op_mul(acc, w)
    if expect_region is not None:
        bad = [
            s
            for s in support(acc)
            if not expect_region.contains(s) and not window.in_edge_strip(s)
        ]
        if bad:
            raise CollapseError(
                f"product does not collapse: support reaches {sorted(bad)[:8]} "
                f"outside the expected region"
            )
        result = crop_window_debris(acc, window)
        leftover = [s for s in support(result.op) if not expect_region.contains(s)]
        if leftover:
            raise CollapseError(f"cropped product still reaches {sorted(leftover)[:8]}")
        return result
    return crop_window_debris(acc, window)


# -- group actions by circuits -------------------------------------------


@dataclass(frozen=True)
class CircuitAction:
    group: FiniteGroup
    assign: tuple[ProceduralCircuit, ...]  # indexed by group element
    window: Window
    name: str = "action"

    def circuit(self, g: int) -> ProceduralCircuit:
        return self.assign[g]

    def total_range(self) -> int:
        return max((c.total_range() for c in self.assign), default=0)

    def apply(self, g: int, a: SymOp) -> SymOp:
        return conj_by_circuit(a, self.assign[g])


def validate_action(action: CircuitAction, rng, n_obs: int = 4) -> list[str]:
    """Sampled homomorphism-as-automorphisms check; returns violations."""
    window = action.window
    violations = []
    idc = action.assign[action.group.id]
    if not idc.is_identity():
        violations.append("identity element has a nonempty circuit")
    reach = action.total_range()
    interior = [
        s for s in window.sites() if window.edge_distance(s) >= window.margin + 2 * reach
    ]
    if not interior:
        raise MarginError("window too small to validate the action")
    for g in action.group.elements():
        for h in action.group.elements():
            gh = action.group.mul(g, h)
            for _ in range(n_obs):
                site = interior[rng.randrange(len(interior))]
                for obs in (SymOp.z(site), SymOp.x(site)):
                    lhs = action.apply(g, action.apply(h, obs))
                    rhs = action.apply(gh, obs)
                    if lhs != rhs:
                        violations.append(
                            f"rho({g})rho({h}) != rho({gh}) on {obs} at {site}"
                        )
    return violations


BUILTIN_ACTIONS = ("ccz_x_2d", "levin_gu_1d", "onsite_x_2d")


def builtin_action(name: str, window: Window) -> CircuitAction:
    """The built-in symmetry actions.

    ccz_x_2d   Z2xZ2 on the plane: g=(g1,g2) acts by U1^g1 U2^g2 with U1 the
               CCZ product over all lattice triangles and U2 the X product
               over all sites.
    onsite_x_2d  Z2 acting by X on every site.
    levin_gu_1d  Z2 on the chain: an X layer followed by a CZ layer on the
               chain edges.
    """
    full = Region.full()
    if name == "ccz_x_2d":
        group = klein_four()
        circuits = []
        for e in group.elements():
            g1, g2 = klein_bits(e)
            layers: list[GateRule] = []
            # unitary U1^g1 U2^g2: the X layer is applied first to states
            if g2:
                layers.append(GateRule("x_sites", full))
            if g1:
                layers.append(GateRule("ccz_triangles", full))
            circuits.append(ProceduralCircuit(tuple(layers), window))
        return CircuitAction(group, tuple(circuits), window, name)
    if name == "onsite_x_2d":
        group = FiniteGroup.cyclic(2)
        circuits = [
            ProceduralCircuit((), window),
            ProceduralCircuit((GateRule("x_sites", full),), window),
        ]
        return CircuitAction(group, tuple(circuits), window, name)
    if name == "levin_gu_1d":
        if not window.is_chain:
            raise ValueError("levin_gu_1d needs a chain window")
        group = FiniteGroup.cyclic(2)
        circuits = [
            ProceduralCircuit((), window),
            ProceduralCircuit(
                (GateRule("x_sites", full), GateRule("cz_chain_edges", full)), window
            ),
        ]
        return CircuitAction(group, tuple(circuits), window, name)
    raise ValueError(f"unknown builtin action {name!r}")


def onsite_x_action_1d(window: Window) -> CircuitAction:
    """Z2 acting by X on every chain site (fixture for the 1d pipelines)."""
    if not window.is_chain:
        raise ValueError("needs a chain window")
    group = FiniteGroup.cyclic(2)
    circuits = [
        ProceduralCircuit((), window),
        ProceduralCircuit((GateRule("x_sites", Region.full()),), window),
    ]
    return CircuitAction(group, tuple(circuits), window, "onsite_x_1d")


def onsite_xx_action_1d(window: Window) -> CircuitAction:
    """Z2xZ2 on the chain: X on even sites / X on odd sites (SPT fixture)."""
    if not window.is_chain:
        raise ValueError("needs a chain window")
    group = klein_four()
    even = [s for s in window.sites() if s[0] % 2 == 0]
    odd = [s for s in window.sites() if s[0] % 2 != 0]
    circuits = []
    for e in group.elements():
        g1, g2 = klein_bits(e)
        gates: list[SymOp] = []
        if g1:
            gates += [SymOp.x(s) for s in even]
        if g2:
            gates += [SymOp.x(s) for s in odd]
        layers = (GateRule("explicit", gates=tuple(gates)),) if gates else ()
        circuits.append(ProceduralCircuit(layers, window))
    return CircuitAction(group, tuple(circuits), window, "onsite_xx_1d")


def cluster_entangler_1d(window: Window) -> ProceduralCircuit:
    """CZ on every chain edge (dressing circuit for the cluster fixture)."""
    return ProceduralCircuit((GateRule("cz_chain_edges", Region.full()),), window)


def action_from_config(obj: dict, window: Window) -> CircuitAction:
    """Build an action from the CLI config schema."""
    group = FiniteGroup.from_json(obj["group"])
    by_element = {g: ProceduralCircuit((), window) for g in group.elements()}
    names = {n: i for i, n in enumerate(group.names)}
    for gen in obj["generators"]:
        e = gen["element"]
        e = names[e] if isinstance(e, str) else int(e)
        layers = []
        for layer in gen["layers"]:
            pattern = _PATTERN_ALIASES.get(layer["pattern"], layer["pattern"])
            region = Region.from_json(layer.get("region", {"kind": "full"}))
            layers.append(GateRule(pattern, region))
        by_element[e] = ProceduralCircuit(tuple(layers), window)
    return CircuitAction(group, tuple(by_element[g] for g in group.elements()), window, obj.get("name", "custom"))


_PATTERN_ALIASES = {
    "ccz_triangles": "ccz_triangles",
    "x_on_sites": "x_sites",
    "cz_edges": "cz_horizontal_edges",
}
