"""Command-line front end.

Subcommands: anomaly2d, anomaly1d, eta-check, crossed, spt, reproduce-ccz.
Reports go to stdout as a human summary and, with --report, to a JSON file
under schema "anomalion/1".  All randomness flows from --seed, so identical
configurations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys

from .anomaly import (
    AnomalyReport,
    anomaly_2d,
    build_truncation_1d,
    build_truncation_2d,
    nayak_else_1d,
    regauge_beta,
    regauge_rho,
    spt_relative_1d,
    spt_trivialize_2d,
    tau_cochain,
)
from .circuits import (
    CircuitAction,
    GateRule,
    ProceduralCircuit,
    action_from_config,
    builtin_action,
    cluster_entangler_1d,
    onsite_x_action_1d,
    onsite_xx_action_1d,
)
from .crossed import (
    ActionTable,
    CrossedModule,
    CrossedSquare,
    TwoCrossedModule,
    all_sections,
    homotopy_groups,
    postnikov3,
    to_two_crossed_module,
    validate_crossed_module,
    validate_crossed_square,
    validate_two_crossed_module,
    verify_lattice_square,
)
from .groups import FiniteGroup, GroupHom
from .lattice import Region, Window
from .pairing import run_identity_suite
from .symop import ALL_PLUS, ALL_ZEROS, SymOp, format_op
from .sampling import random_inner

SCHEMA = "anomalion/1"

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_CONFIG = 2


class ConfigError(ValueError):
    pass


def _parse_window(text: str, margin: int, chain: bool) -> Window:
    if chain:
        return Window.chain(int(text.split("x")[0]), margin)
    if "x" in text:
        w, h = text.split("x")
        return Window.centered(int(w), int(h), margin)
    n = int(text)
    return Window.centered(n, n, margin)


def _load_action(name_or_path: str, window: Window) -> CircuitAction:
    builtin = {
        "ccz_x_2d": lambda: builtin_action("ccz_x_2d", window),
        "levin_gu_1d": lambda: builtin_action("levin_gu_1d", window),
        "onsite_x_2d": lambda: builtin_action("onsite_x_2d", window),
        "onsite_x_1d": lambda: onsite_x_action_1d(window),
        "onsite_xx_1d": lambda: onsite_xx_action_1d(window),
    }
    if name_or_path in builtin:
        return builtin[name_or_path]()
    try:
        with open(name_or_path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read action config: {exc}") from exc
    import random

    from .circuits import validate_action

    try:
        action = action_from_config(obj, window)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad action config: {exc}") from exc
    violations = validate_action(action, random.Random(0), n_obs=2)
    if violations:
        raise ConfigError(f"config does not define a group action: {violations[:3]}")
    return action


def _anomaly_json(rep: AnomalyReport, extra: dict) -> dict:
    return {
        "schema": SCHEMA,
        "cochain": rep.cochain.to_json(),
        "is_cocycle": rep.is_cocycle,
        "trivial": rep.trivial,
        "matched_class": rep.matched_class,
        "assertions": list(rep.assertions),
        "cropped_debris": list(rep.cropped),
        "notes": dict(rep.notes),
        **extra,
    }


def _emit(report: dict, path: str | None):
    if path:
        with open(path, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)


def _gauge_checks(data, tau0, count: int, seed: int) -> dict:
    """Random beta and rho~ regaugings; the tau table must not move."""
    import random

    rng = random.Random(seed)
    window = data.window
    G = data.group
    inner_ok = 0
    for _ in range(count):
        v = {
            (g, h): random_inner(rng, window, Region.origin_disk(2))
            for g in G.elements()
            for h in G.elements()
        }
        if tau_cochain(regauge_beta(data, v)) == tau0:
            inner_ok += 1
    rho_ok = 0
    interior = [s for s in window.sites() if s[1] == 0 and window.edge_distance(s) >= window.margin]
    xs = sorted(s[0] for s in interior)
    for _ in range(count):
        gamma = {}
        for g in G.elements():
            if g == G.id or rng.random() < 0.4:
                continue
            diag, flips = [], []
            for x in xs[:-1]:
                r = rng.random()
                if r < 0.3:
                    diag.append(SymOp.cz((x, 0), (x + 1, 0)))
                elif r < 0.45:
                    diag.append(SymOp.z((x, 0)))
                elif r < 0.55 and x != 0:
                    # X on the cut column would obstruct the exact L/R split
                    flips.append(SymOp.x((x, 0)))
            layers = tuple(
                GateRule("explicit", gates=tuple(gs)) for gs in (diag, flips) if gs
            )
            if layers:
                gamma[g] = ProceduralCircuit(layers, window)
        if tau_cochain(regauge_rho(data, gamma)) == tau0:
            rho_ok += 1
    return {
        "beta_regauge_pass": inner_ok,
        "rho_regauge_pass": rho_ok,
        "count": count,
        "ok": inner_ok == count and rho_ok == count,
    }


def cmd_anomaly2d(args) -> int:
    window = _parse_window(args.window, args.margin, chain=False)
    action = _load_action(args.action, window)
    _check_margin(window, action)
    data = build_truncation_2d(action)
    rep = anomaly_2d(action, data)
    extra = {"command": "anomaly2d", "action": args.action, "seed": args.seed,
             "window": [window.x_min, window.x_max, window.y_min, window.y_max],
             "margin": window.margin}
    ok = rep.is_cocycle
    if args.check_gauge:
        gauge = _gauge_checks(data, rep.cochain, args.check_gauge, args.seed)
        extra["gauge_checks"] = gauge
        ok = ok and gauge["ok"]
    if args.check_window:
        grown = Window.centered(
            window.x_max - window.x_min + 1 + 4,
            window.y_max - window.y_min + 1 + 4,
            window.margin + 2,
        )
        rep2 = anomaly_2d(_load_action(args.action, grown))
        stable = rep2.cochain == rep.cochain
        extra["window_stability"] = {"stable": stable, "margin_grown_to": window.margin + 2}
        ok = ok and stable
    print(f"anomaly2d {args.action}: cocycle={rep.is_cocycle} trivial={rep.trivial} class={rep.matched_class}")
    _emit(_anomaly_json(rep, extra), args.report)
    return EXIT_OK if ok else EXIT_ASSERTION


def _check_margin(window: Window, action: CircuitAction):
    if window.margin < 3 * action.total_range():
        raise ConfigError("margin must be at least three times the action range")


def cmd_anomaly1d(args) -> int:
    window = _parse_window(args.window, args.margin, chain=True)
    action = _load_action(args.action, window)
    _check_margin(window, action)
    data = build_truncation_1d(action)
    rep = nayak_else_1d(action, data)
    extra = {"command": "anomaly1d", "action": args.action, "seed": args.seed,
             "window": [window.x_min, window.x_max], "margin": window.margin}
    ok = rep.is_cocycle
    if args.check_window:
        grown = Window.chain(window.x_max - window.x_min + 1 + 4, window.margin + 2)
        rep2 = nayak_else_1d(_load_action(args.action, grown))
        stable = rep2.cochain == rep.cochain
        extra["window_stability"] = {"stable": stable}
        ok = ok and stable
    print(f"anomaly1d {args.action}: cocycle={rep.is_cocycle} trivial={rep.trivial} class={rep.matched_class}")
    _emit(_anomaly_json(rep, extra), args.report)
    return EXIT_OK if ok else EXIT_ASSERTION


def cmd_eta_check(args) -> int:
    window = _parse_window(args.window, args.margin, chain=False)
    rep = run_identity_suite(window, n_pairs=args.pairs, seed=args.seed)
    print(f"eta-check: {len(rep.checks)} identity suites on {rep.pairs} pairs; "
          f"{'all passed' if rep.ok else f'{len(rep.failures)} failures'}")
    _emit({"schema": SCHEMA, "command": "eta-check", "seed": args.seed, **rep.to_json()}, args.report)
    return EXIT_OK if rep.ok else EXIT_ASSERTION


def _group_from_json(obj) -> FiniteGroup:
    return FiniteGroup.from_json(obj)


def _cm_from_json(obj) -> CrossedModule:
    M = _group_from_json(obj["M"])
    N = _group_from_json(obj["N"])
    return CrossedModule(
        M, N,
        GroupHom(M, N, tuple(obj["bd"])),
        ActionTable(N, M, tuple(tuple(r) for r in obj["act"])),
    )


def _square_from_json(obj) -> CrossedSquare:
    L, M, N, P = (_group_from_json(obj[k]) for k in "LMNP")
    return CrossedSquare(
        L, M, N, P,
        f=GroupHom(L, M, tuple(obj["f"])),
        g=GroupHom(L, N, tuple(obj["g"])),
        v=GroupHom(M, P, tuple(obj["v"])),
        u=GroupHom(N, P, tuple(obj["u"])),
        act_L=ActionTable(P, L, tuple(tuple(r) for r in obj["act_L"])),
        act_M=ActionTable(P, M, tuple(tuple(r) for r in obj["act_M"])),
        act_N=ActionTable(P, N, tuple(tuple(r) for r in obj["act_N"])),
        eta=tuple(tuple(r) for r in obj["eta"]),
    )


def _t2cm_from_json(obj) -> TwoCrossedModule:
    L = _group_from_json(obj["L"])
    K = _group_from_json(obj["K"])
    P = _group_from_json(obj["P"])
    return TwoCrossedModule(
        L, K, P,
        delta=GroupHom(L, K, tuple(obj["delta"])),
        bd=GroupHom(K, P, tuple(obj["bd"])),
        act_L=ActionTable(P, L, tuple(tuple(r) for r in obj["act_L"])),
        act_K=ActionTable(P, K, tuple(tuple(r) for r in obj["act_K"])),
        braid=tuple(tuple(r) for r in obj["braid"]),
    )


def _t2cm_to_json(t: TwoCrossedModule) -> dict:
    return {
        "L": t.L.to_json(), "K": t.K.to_json(), "P": t.P.to_json(),
        "delta": list(t.delta.map), "bd": list(t.bd.map),
        "act_L": [list(r) for r in t.act_L.table],
        "act_K": [list(r) for r in t.act_K.table],
        "braid": [list(r) for r in t.braid],
    }


def cmd_crossed(args) -> int:
    if args.subcommand == "lattice":
        window = _parse_window(args.window, args.margin, chain=False)
        rep = verify_lattice_square(window, samples=args.samples, seed=args.seed)
        print(f"lattice square: ok={rep.ok} counts={rep.counts}")
        _emit({"schema": SCHEMA, "command": "crossed lattice", **rep.to_json()}, args.report)
        return EXIT_OK if rep.ok else EXIT_ASSERTION
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError(str(exc)) from exc
    if args.subcommand == "validate":
        kind = obj.get("kind", "crossed_module")
        if kind == "crossed_module":
            rep = validate_crossed_module(_cm_from_json(obj))
        elif kind == "crossed_square":
            rep = validate_crossed_square(_square_from_json(obj))
        elif kind == "two_crossed_module":
            rep = validate_two_crossed_module(_t2cm_from_json(obj))
        else:
            raise ConfigError(f"unknown structure kind {kind!r}")
        print(f"validate {kind}: ok={rep.ok}; {len(rep.violations)} violations")
        _emit({"schema": SCHEMA, "command": "crossed validate", "kind": kind,
               "ok": rep.ok, "violations": list(rep.violations)}, args.report)
        return EXIT_OK if rep.ok else EXIT_ASSERTION
    if args.subcommand == "convert":
        t = to_two_crossed_module(_square_from_json(obj))
        rep = validate_two_crossed_module(t)
        print(f"convert: two-crossed module of order ({t.L.order},{t.K.order},{t.P.order}); valid={rep.ok}")
        _emit({"schema": SCHEMA, "command": "crossed convert", "valid": rep.ok,
               "two_crossed_module": _t2cm_to_json(t)}, args.report)
        return EXIT_OK if rep.ok else EXIT_ASSERTION
    if args.subcommand == "postnikov":
        cm = _cm_from_json(obj)
        sections = list(all_sections(cm)) if args.all_sections else [tuple(obj["section"])]
        classes = [postnikov3(cm, s) for s in sections]
        from .groups import cohomologous as coh

        agree = all(coh(classes[0], c) for c in classes[1:])
        print(f"postnikov: {len(classes)} section(s); classes agree={agree}")
        _emit({"schema": SCHEMA, "command": "crossed postnikov",
               "cochain": classes[0].to_json(), "sections": len(classes),
               "classes_agree": agree}, args.report)
        return EXIT_OK if agree else EXIT_ASSERTION
    if args.subcommand == "homotopy":
        t = _t2cm_from_json(obj)
        hg = homotopy_groups(t)
        print(f"homotopy groups: |pi1|={hg.pi1.order} |pi2|={hg.pi2.order} |pi3|={hg.pi3.order}")
        _emit({"schema": SCHEMA, "command": "crossed homotopy",
               "pi1": hg.pi1.to_json(), "pi2": hg.pi2.to_json(), "pi3": hg.pi3.to_json()}, args.report)
        return EXIT_OK
    raise ConfigError(f"unknown crossed subcommand {args.subcommand!r}")


def cmd_spt(args) -> int:
    if args.mode == "relative1d":
        window = _parse_window(args.window, args.margin, chain=True)
        action = _load_action(args.action, window)
        state = ALL_PLUS if args.basis == "x" else ALL_ZEROS
        dress = {"cluster": cluster_entangler_1d(window), "none": None}
        rep = spt_relative_1d(action, dress[args.dress1], dress[args.dress2], state=state)
        print(f"spt relative1d: cocycle={rep.is_cocycle} trivial={rep.trivial}")
        _emit({"schema": SCHEMA, "command": "spt relative1d",
               "cochain": rep.cochain.to_json(), "is_cocycle": rep.is_cocycle,
               "trivial": rep.trivial}, args.report)
        return EXIT_OK if rep.is_cocycle else EXIT_ASSERTION
    window = _parse_window(args.window, args.margin, chain=False)
    action = _load_action(args.action, window)
    state = ALL_PLUS if args.basis == "x" else ALL_ZEROS
    data = build_truncation_2d(action)
    rep = spt_trivialize_2d(data, None, state=state)
    print(f"spt trivialize2d: status={rep.status} delta_c_equals_tau={rep.delta_equals_tau}")
    _emit({"schema": SCHEMA, "command": "spt trivialize2d", "status": rep.status,
           "cochain": rep.cochain.to_json() if rep.cochain else None,
           "delta_equals_tau": rep.delta_equals_tau}, args.report)
    return EXIT_OK


def cmd_reproduce_ccz(args) -> int:
    window = _parse_window(args.window, args.margin, chain=False)
    action = builtin_action("ccz_x_2d", window)
    _check_margin(window, action)
    data = build_truncation_2d(action)
    rep = anomaly_2d(action, data)
    mu_example = data.mu[0b01, 0b10]
    u_example = data.u[0b01, 0b01, 0b10]
    print("reproduce-ccz on", f"{window.x_max - window.x_min + 1}x{window.y_max - window.y_min + 1}",
          "margin", window.margin)
    print("  mu((0,1),(1,0)) =", format_op(mu_example))
    print("  u((0,1),(0,1),(1,0)) =", format_op(u_example))
    print("  tau cocycle:", rep.is_cocycle, "| trivial:", rep.trivial, "| class:", rep.matched_class)
    extra = {"command": "reproduce-ccz", "seed": args.seed,
             "mu_example": format_op(mu_example), "u_example": format_op(u_example)}
    if args.check_gauge:
        gauge = _gauge_checks(data, rep.cochain, args.check_gauge, args.seed)
        extra["gauge_checks"] = gauge
    _emit(_anomaly_json(rep, extra), args.report)
    expected = rep.is_cocycle and not rep.trivial and rep.matched_class == "b^3 . a"
    return EXIT_OK if expected else EXIT_ASSERTION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anomalion", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window_default="12x12"):
        sp.add_argument("--window", default=window_default)
        sp.add_argument("--margin", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--report", default=None)

    sp = sub.add_parser("anomaly2d", help="degree-4 anomaly of a 2d circuit action")
    common(sp)
    sp.add_argument("--action", default="ccz_x_2d")
    sp.add_argument("--check-gauge", type=int, default=0, metavar="N")
    sp.add_argument("--check-window", action="store_true")
    sp.set_defaults(fn=cmd_anomaly2d)

    sp = sub.add_parser("anomaly1d", help="degree-3 anomaly of a 1d circuit action")
    common(sp, window_default="12")
    sp.add_argument("--action", default="levin_gu_1d")
    sp.add_argument("--check-window", action="store_true")
    sp.set_defaults(fn=cmd_anomaly1d)

    sp = sub.add_parser("eta-check", help="commutator pairing identity suite")
    common(sp)
    sp.add_argument("--pairs", type=int, default=100)
    sp.set_defaults(fn=cmd_eta_check)

    sp = sub.add_parser("crossed", help="crossed-structure tools")
    sp.add_argument("subcommand", choices=["validate", "convert", "postnikov", "homotopy", "lattice"])
    sp.add_argument("--input", default=None)
    sp.add_argument("--all-sections", action="store_true")
    sp.add_argument("--samples", type=int, default=50)
    common(sp)
    sp.set_defaults(fn=cmd_crossed)

    sp = sub.add_parser("spt", help="SPT cochains of invariant dressed states")
    sp.add_argument("--mode", choices=["relative1d", "trivialize2d"], default="relative1d")
    sp.add_argument("--action", default="onsite_xx_1d")
    sp.add_argument("--basis", choices=["z", "x"], default="x")
    sp.add_argument("--dress1", choices=["cluster", "none"], default="cluster")
    sp.add_argument("--dress2", choices=["cluster", "none"], default="none")
    common(sp)
    sp.set_defaults(fn=cmd_spt)

    sp = sub.add_parser("reproduce-ccz", help="run the builtin 2d worked example end to end")
    common(sp)
    sp.add_argument("--check-gauge", type=int, default=0, metavar="N")
    sp.set_defaults(fn=cmd_reproduce_ccz)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AssertionError, ValueError) as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return EXIT_ASSERTION


if __name__ == "__main__":
    sys.exit(main())
