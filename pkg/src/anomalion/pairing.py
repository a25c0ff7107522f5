"""The commutator pairing eta for automorphisms localized left/right of the origin.

For alpha localized on the left and beta on the right, [alpha, beta] is
inner, and eta(alpha, beta) is the canonical unitary with
Ad_eta = [alpha, beta].  Single layers are handled by truncating the layer
near the origin (the product stabilizes once the truncation radius passes
the ranges involved; we certify stabilization by comparing radii r and
r+2), and multi-layer circuits by the one-layer-at-a-time recursions

    eta(A, B.B') = eta(A, B) * phi(B)(eta(A, B'))
    eta(A.A', B) = phi(A)(eta(A', B)) * eta(A, B)

where the primed circuit is the part applied first to states.  Inner
arguments use the closed forms eta(Ad_u, beta) = u beta(u^-1) and
eta(alpha, Ad_u) = alpha(u) u^-1.  Every route available for a given pair
is computed and must agree bit-exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .circuits import GateRule, ProceduralCircuit, concat, conj_by_circuit
from .lattice import Region, Window
from .symop import SymOp, commutator, format_op, op_inv, op_mul, op_product, support


class StabilizationError(ValueError):
    pass


class RouteDisagreement(AssertionError):
    pass


@dataclass(frozen=True)
class LocalizedAutomorphism:
    """An automorphism given by a circuit or an inner unitary, with a home region."""

    declared_region: Region
    circuit: ProceduralCircuit | None = None
    inner: SymOp | None = None

    def __post_init__(self):
        if (self.circuit is None) == (self.inner is None):
            raise ValueError("exactly one of circuit/inner must be given")
        if self.inner is not None:
            bad = [s for s in support(self.inner) if not self.declared_region.contains(s)]
            if bad:
                raise ValueError(f"inner unitary leaves its declared region at {bad[:4]}")
        else:
            for layer in self.circuit.instantiate():
                for g in layer:
                    bad = [s for s in support(g) if not self.declared_region.contains(s)]
                    if bad:
                        raise ValueError(f"circuit gate leaves declared region at {bad[:4]}")

    @property
    def is_inner(self) -> bool:
        return self.inner is not None

    def window(self) -> Window | None:
        return self.circuit.window if self.circuit is not None else None

    def range_bound(self) -> int:
        if self.is_inner:
            return _op_radius(self.inner)
        return self.circuit.total_range()

    def apply(self, a: SymOp) -> SymOp:
        # margin faithfulness is certified by stabilization + route agreement
        if self.is_inner:
            return op_mul(op_mul(self.inner, a), op_inv(self.inner))
        return conj_by_circuit(a, self.circuit, check_margin=False)

    def apply_inverse(self, a: SymOp) -> SymOp:
        if self.is_inner:
            return op_mul(op_mul(op_inv(self.inner), a), self.inner)
        return conj_by_circuit(a, self.circuit.inverse(), check_margin=False)


def left_automorphism(circuit: ProceduralCircuit, thickening: int = 1) -> LocalizedAutomorphism:
    return LocalizedAutomorphism(Region.half_line_L(thickening), circuit=circuit)


def right_automorphism(circuit: ProceduralCircuit, thickening: int = 1) -> LocalizedAutomorphism:
    return LocalizedAutomorphism(Region.half_line_R(thickening), circuit=circuit)


def inner_automorphism(u: SymOp, region: Region) -> LocalizedAutomorphism:
    return LocalizedAutomorphism(region, inner=u)


def _op_radius(a: SymOp) -> int:
    return max((max(abs(s[0]), abs(s[1])) for s in support(a)), default=0)


def _truncate_layer_to_disk(layer: list[SymOp], r: int) -> SymOp:
    kept = [g for g in layer if all(max(abs(s[0]), abs(s[1])) <= r for s in support(g))]
    return op_product(sorted(kept, key=lambda g: sorted(support(g))))


def _stabilization_radii(layer: list[SymOp], window: Window) -> tuple[int, int]:
    """Largest window-feasible pair of truncation radii (r, r+2).

    Constancy between the two radii is the actual stabilization
    certificate; this only guards against degenerate windows.
    """
    r2 = window.edge_distance((0, 0))
    r = r2 - 2
    if r < 2:
        raise StabilizationError("window too small to stabilize the pairing")
    return r, r2


def _eta_single_layer_R(alpha: LocalizedAutomorphism, layer: list[SymOp], window: Window) -> SymOp:
    """eta for a single right layer: alpha(B_r) B_r^-1, stabilized in r."""
    vals = []
    for radius in _stabilization_radii(layer, window):
        b = _truncate_layer_to_disk(layer, radius)
        vals.append(op_mul(alpha.apply(b), op_inv(b)))
    if vals[0] != vals[1]:
        raise StabilizationError("eta did not stabilize between radii; margin too small")
    return vals[0]


def _eta_single_layer_L(layer: list[SymOp], beta: LocalizedAutomorphism, window: Window) -> SymOp:
    vals = []
    for radius in _stabilization_radii(layer, window):
        a = _truncate_layer_to_disk(layer, radius)
        vals.append(op_mul(a, beta.apply(op_inv(a))))
    if vals[0] != vals[1]:
        raise StabilizationError("eta did not stabilize between radii; margin too small")
    return vals[0]


def _gate_diameter(g: SymOp) -> int:
    sites = list(support(g))
    if not sites:
        return 0
    xs = [s[0] for s in sites]
    ys = [s[1] for s in sites]
    return max(max(xs) - min(xs), max(ys) - min(ys))


def _suffix_circuit(c: ProceduralCircuit, start: int) -> ProceduralCircuit:
    return ProceduralCircuit(c.layers[start:], c.window)


def eta_R(alpha: LocalizedAutomorphism, b_circuit: ProceduralCircuit) -> SymOp:
    """Recursion over the layers of the right circuit.

    eta(A, F(k..)) = eta(A, F(k+1..)) * phi(F(k+1..))(eta(A, layer_k)),
    layer 0 being the one applied first to states.
    """
    layers = b_circuit.instantiate()
    window = b_circuit.window
    acc = None
    for k in range(len(layers) - 1, -1, -1):
        piece = _eta_single_layer_R(alpha, layers[k], window)
        if acc is None:
            acc = piece
        else:
            rest = _suffix_circuit(b_circuit, k + 1)
            acc = op_mul(acc, conj_by_circuit(piece, rest, check_margin=False))
    return SymOp.identity() if acc is None else acc


def eta_L(a_circuit: ProceduralCircuit, beta: LocalizedAutomorphism) -> SymOp:
    """Mirror recursion: eta(F(k..), B) = phi(F(k+1..))(eta(layer_k, B)) * eta(F(k+1..), B)."""
    layers = a_circuit.instantiate()
    window = a_circuit.window
    acc = None
    for k in range(len(layers) - 1, -1, -1):
        piece = _eta_single_layer_L(layers[k], beta, window)
        if acc is None:
            acc = piece
        else:
            rest = _suffix_circuit(a_circuit, k + 1)
            acc = op_mul(conj_by_circuit(piece, rest, check_margin=False), acc)
    return SymOp.identity() if acc is None else acc


def eta(alpha: LocalizedAutomorphism, beta: LocalizedAutomorphism) -> SymOp:
    """Common value of all available routes; raises if any two disagree.

    Routes: group commutator (both inner), closed forms (one inner), and
    the truncation recursions eta_R / eta_L (circuits).
    """
    routes: dict[str, SymOp] = {}
    if alpha.is_inner and beta.is_inner:
        routes["commutator"] = commutator(alpha.inner, beta.inner)
    if alpha.is_inner:
        u = alpha.inner
        routes["closed_form_left_inner"] = op_mul(u, beta.apply(op_inv(u)))
    if beta.is_inner:
        u = beta.inner
        routes["closed_form_right_inner"] = op_mul(alpha.apply(u), op_inv(u))
    if not beta.is_inner:
        routes["eta_R"] = eta_R(alpha, beta.circuit)
    if not alpha.is_inner:
        routes["eta_L"] = eta_L(alpha.circuit, beta)
    vals = list(routes.values())
    for v in vals[1:]:
        if v != vals[0]:
            raise RouteDisagreement(f"eta routes disagree: {routes}")
    result = vals[0]
    reach = 2 * (alpha.range_bound() + beta.range_bound()
                 + alpha.declared_region.thickening + beta.declared_region.thickening) + 2
    disk = Region.origin_disk(reach)
    bad = [s for s in support(result) if not disk.contains(s)]
    if bad:
        raise RouteDisagreement(f"eta output leaves the origin disk at {bad[:4]}")
    return result


# -- identity property suite -------------------------------------------------


@dataclass
class EtaSuiteReport:
    pairs: int
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, passed: bool, detail: str = ""):
        self.checks[name] = self.checks.get(name, 0) + 1
        if not passed:
            self.failures.append({"identity": name, "detail": detail})

    def to_json(self) -> dict:
        return {
            "pairs": self.pairs,
            "checks": dict(self.checks),
            "failures": list(self.failures),
            "ok": self.ok,
        }


def _conjugated_circuit(c: ProceduralCircuit, by: ProceduralCircuit) -> ProceduralCircuit:
    """The circuit whose gates are phi(by)(gate); realizes by o phi(c) o by^-1."""
    layers = tuple(
        GateRule("explicit", gates=tuple(conj_by_circuit(g, by, check_margin=False) for g in layer))
        for layer in c.instantiate()
    )
    return ProceduralCircuit(layers, c.window)


def _single_layer_circuit(u: SymOp, window: Window) -> ProceduralCircuit:
    return ProceduralCircuit((GateRule("explicit", gates=(u,)),), window)


def run_identity_suite(
    window: Window,
    n_pairs: int = 100,
    seed: int = 0,
    obs_per_pair: int = 10,
) -> EtaSuiteReport:
    """Check the pairing identities on seeded random representable pairs.

    Per pair: Ad_eta = [alpha, beta] on sampled local observables, the two
    one-layer-at-a-time multiplicativity identities, the two inner closed
    forms (with the inner automorphism also realized as a circuit, so the
    truncation route is genuinely exercised), conjugation equivariance,
    and bit-exact agreement of the left and right recursions (asserted
    inside eta on every call).
    """
    from .sampling import random_circuit, random_inner

    rng = random.Random(seed)
    rep = EtaSuiteReport(pairs=n_pairs)
    inner_reach = window.edge_distance((0, 0)) - window.margin
    box = Region.origin_disk(max(2, inner_reach))
    l_region = Region.intersection_of(Region.half_line_L(1), box)
    r_region = Region.intersection_of(Region.half_line_R(1), box)
    disk = Region.origin_disk(2)

    for _ in range(n_pairs):
        ca = random_circuit(rng, window, l_region)
        cb = random_circuit(rng, window, r_region)
        alpha = LocalizedAutomorphism(Region.half_line_L(3), circuit=ca)
        beta = LocalizedAutomorphism(Region.half_line_R(3), circuit=cb)
        e = eta(alpha, beta)

        # Ad_eta = [alpha, beta] on sampled local observables
        ok = True
        for _ in range(obs_per_pair):
            s = (rng.randrange(-2, 3), 0)
            obs = SymOp.z(s) if rng.random() < 0.5 else SymOp.x(s)
            lhs = op_mul(op_mul(e, obs), op_inv(e))
            rhs = alpha.apply(beta.apply(alpha.apply_inverse(beta.apply_inverse(obs))))
            if lhs != rhs:
                ok = False
                break
        rep.record("ad_eta_equals_commutator", ok, format_op(e))

        # right multiplicativity: eta(a, b b') = eta(a,b) * b(eta(a,b'))
        cb2 = random_circuit(rng, window, r_region)
        beta2 = LocalizedAutomorphism(Region.half_line_R(3), circuit=cb2)
        both = LocalizedAutomorphism(Region.half_line_R(3), circuit=concat(cb2, cb))
        lhs = eta(alpha, both)
        rhs = op_mul(e, conj_by_circuit(eta(alpha, beta2), cb, check_margin=False))
        rep.record("right_multiplicativity", lhs == rhs)

        # left multiplicativity: eta(a a', b) = a(eta(a',b)) * eta(a,b)
        ca2 = random_circuit(rng, window, l_region)
        alpha2 = LocalizedAutomorphism(Region.half_line_L(3), circuit=ca2)
        both_a = LocalizedAutomorphism(Region.half_line_L(3), circuit=concat(ca2, ca))
        lhs = eta(both_a, beta)
        rhs = op_mul(conj_by_circuit(eta(alpha2, beta), ca, check_margin=False), e)
        rep.record("left_multiplicativity", lhs == rhs)

        # inner closed forms, with the inner side realized as a circuit too
        u = random_inner(rng, window, disk)
        adu_left = LocalizedAutomorphism(Region.half_line_L(3), circuit=_single_layer_circuit(u, window))
        lhs = eta(adu_left, beta)
        rhs = op_mul(u, beta.apply(op_inv(u)))
        rep.record("inner_left_closed_form", lhs == rhs, format_op(u))

        adu_right = LocalizedAutomorphism(Region.half_line_R(3), circuit=_single_layer_circuit(u, window))
        lhs = eta(alpha, adu_right)
        rhs = op_mul(alpha.apply(u), op_inv(u))
        rep.record("inner_right_closed_form", lhs == rhs, format_op(u))

        # conjugation equivariance by a representable gamma
        cg = random_circuit(rng, window, box)
        alpha_c = LocalizedAutomorphism(Region.half_line_L(5), circuit=_conjugated_circuit(ca, cg))
        beta_c = LocalizedAutomorphism(Region.half_line_R(5), circuit=_conjugated_circuit(cb, cg))
        lhs = eta(alpha_c, beta_c)
        rhs = conj_by_circuit(e, cg, check_margin=False)
        rep.record("conjugation_equivariance", lhs == rhs)
    return rep
