"""Command line front end.

    python -m hbjacobi z "mu . (id[.] (x) S) . Delta"
    python -m hbjacobi check hopf --format json
    python -m hbjacobi zcube src/hbjacobi/data/psi.slices

Exit codes: 0 pass, 1 check failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import atkont, catab, corpus, hair, hphi, kdassoc, weights, zb
from .catab import (antipode, casimir, compose, compose_all, convolve, convolve_maps, delta, epsilon,
                    eta, identity, mu, symmetry, tensor, tensor_all)
from .diagcore import (DiagLin, RelationWindow, eq_mod_relations, homotopy_class,
                       parse_tensor_word, stu_resolve, to_json_obj, to_text)
from .fgroup import format_word

SUITES = ("hopf", "casimir", "quasihopf", "associator", "stu", "anomaly", "transmute", "weights",
          "cube", "tables", "zb", "hair")


@dataclass
class Config:
    N: int = 2
    window: Optional[int] = None
    associator: Optional[str] = None
    fmt: str = "text"
    seed: int = 0
    lie: Optional[str] = None

    def __post_init__(self) -> None:
        if self.N < 0:
            raise ValueError("degree must be >= 0")
        if self.window is not None and self.window < 4:
            raise ValueError("window must be >= 4")
        if self.fmt not in ("text", "json"):
            raise ValueError("format must be text or json")

    @property
    def win(self) -> RelationWindow:
        return RelationWindow(max_len=self.window)

    def phi(self) -> Optional[kdassoc.AssociatorSpec]:
        if self.associator is None:
            return None
        return kdassoc.load_associator(self.associator, self.N)

    def structure(self) -> hphi.HphiStructure:
        return hphi.build_hphi(self.phi(), self.N) if self.associator else zb.structure(self.N)


# --------------------------------------------------------------------------
# rendering


def _rows(v: DiagLin) -> List[Tuple[str, object]]:
    return sorted(((to_text(t), t) for t in v.terms), key=lambda r: (r[1].degree, r[0]))


def render_text(v: DiagLin) -> str:
    lines = [f"m={v.m} n={v.n} N={v.N}"]
    for text, t in _rows(v):
        lines.append(f"{v.terms[t]} [{text}]")
    return "\n".join(lines)


def parse_rendered(text: str) -> DiagLin:
    """Inverse of :func:`render_text` (extra lines after the terms are ignored)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = dict(p.split("=") for p in lines[0].split())
    m, n, N = int(head["m"]), int(head["n"]), int(head["N"])
    terms = {}
    for ln in lines[1:]:
        if "[" not in ln:
            break
        coeff, _, rest = ln.partition(" ")
        if not (rest.startswith("[") and rest.endswith("]")):
            break
        t = parse_tensor_word(rest[1:-1])
        terms[t] = terms.get(t, 0) + Fraction(coeff)
    return DiagLin(m, n, N, terms)


def render_json(v: DiagLin) -> dict:
    return {"m": v.m, "n": v.n, "N": v.N,
            "terms": [{"coeff": str(v.terms[t]), "word": to_json_obj(t), "text": text} for text, t in _rows(v)]}


def _homotopy(v: DiagLin) -> Optional[List[str]]:
    deg0 = [t for t in v.terms if t.degree == 0]
    if len(deg0) != 1:
        return None
    h = homotopy_class(deg0[0])
    return [f"x{i} -> {format_word(w)}" for i, w in enumerate(h.images, 1)]


def describe(v: DiagLin, cfg: Config) -> str:
    hom = _homotopy(v)
    grp = zb.check_grouplike(v, cfg.win)
    if cfg.fmt == "json":
        obj = render_json(v)
        obj["homotopy"] = hom
        obj["grouplike"] = grp
        return json.dumps(obj, indent=1, sort_keys=True)
    lines = [render_text(v)]
    lines.append("homotopy: " + ("; ".join(hom) if hom is not None else "undefined"))
    lines.append(f"grouplike: {'true' if grp else 'false'}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# check suites


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _eq(name: str, a: DiagLin, b: DiagLin, cfg: Config) -> Check:
    v = eq_mod_relations(a, b, cfg.win)
    return Check(name, v.equal, str(v))


def _flag(name: str, ok: bool, detail: str = "") -> Check:
    return Check(name, bool(ok), detail or ("pass" if ok else "fail"))


def suite_hopf(cfg: Config) -> List[Check]:
    N = cfg.N
    I, D, S, e, E, M = identity(1, N), delta(N), antipode(N), eta(N), epsilon(N), mu(N)
    P = symmetry(1, 1, N)
    c = casimir(N)
    out = [
        _eq("mu_associative", compose(M, tensor(M, I)), compose(M, tensor(I, M)), cfg),
        _eq("mu_unit_left", compose(M, tensor(e, I)), I, cfg),
        _eq("mu_unit_right", compose(M, tensor(I, e)), I, cfg),
        _eq("delta_coassociative", compose(tensor(D, I), D), compose(tensor(I, D), D), cfg),
        _eq("delta_counit_left", compose(tensor(E, I), D), I, cfg),
        _eq("delta_counit_right", compose(tensor(I, E), D), I, cfg),
        _eq("counit_unit", compose(E, e), identity(0, N), cfg),
        _eq("counit_mu", compose(E, M), tensor(E, E), cfg),
        _eq("delta_unit", compose(D, e), tensor(e, e), cfg),
        _eq("delta_mu", compose(D, M),
            compose_all(tensor(M, M), tensor_all(I, P, I), tensor(D, D)), cfg),
        _eq("antipode_right", compose_all(M, tensor(I, S), D), compose(e, E), cfg),
        _eq("antipode_left", compose_all(M, tensor(S, I), D), compose(e, E), cfg),
        _eq("cocommutative", compose(P, D), D, cfg),
        _eq("casimir_additive_left", compose(tensor(D, I), c),
            catab.chord(3, 1, 3, N) + catab.chord(3, 2, 3, N), cfg),
        _eq("casimir_symmetric", compose(P, c), c, cfg),
        _eq("casimir_invariant", convolve_maps(D, compose(c, E)), convolve_maps(compose(c, E), D), cfg),
        _eq("casimir_additive_right", compose(tensor(I, D), c),
            catab.chord(3, 1, 2, N) + catab.chord(3, 1, 3, N), cfg),
        _eq("casimir_counit_left", compose(tensor(E, I), c), DiagLin.zero(0, 1, N), cfg),
        _eq("casimir_counit_right", compose(tensor(I, E), c), DiagLin.zero(0, 1, N), cfg),
        _eq("casimir_antipode_left", compose(tensor(S, I), c), -c, cfg),
        _eq("casimir_antipode_right", compose(tensor(I, S), c), -c, cfg),
    ]
    c12, c13, c23 = (catab.chord(3, i, j, N) for i, j in ((1, 2), (1, 3), (2, 3)))
    out.append(_eq("four_term_convolution", convolve(c12 + c13, c23), convolve(c23, c12 + c13), cfg))
    return out


def suite_casimir(cfg: Config) -> List[Check]:
    N = cfg.N
    c = casimir(N)
    r = catab.element_from_casimir(c)
    out = [
        _eq("casimir_round_trip", catab.casimir_from_element(catab.element_from_casimir(c)), c, cfg),
        _eq("element_round_trip", catab.element_from_casimir(catab.casimir_from_element(r)), r, cfg),
        _eq("element_is_half_mu_c", r, compose(mu(N), c).scale(Fraction(1, 2)), cfg),
    ]
    h = cfg.structure()
    if N >= 2:
        nu = h.nu
        wheel = zb.diagram(0, [[("u", "p"), ("u", "q")]], wheels=[("p", "q")], N=N)
        out.append(_flag("nu_degree1_vanishes", not nu.degree_part(1).terms))
        out.append(_eq("nu_degree2_is_wheel", nu.degree_part(2), wheel.scale(Fraction(1, 48)), cfg))
    return out


def suite_quasihopf(cfg: Config) -> List[Check]:
    rep = hphi.check_quasihopf(cfg.structure(), cfg.win)
    return [Check(k, v.equal, str(v)) for k, v in rep.results.items()]


def suite_associator(cfg: Config) -> List[Check]:
    N = cfg.N
    spec = cfg.phi() or kdassoc.default_associator(min(N, 2))
    rep = kdassoc.check_associator(spec, N)
    out = [_flag(k, v) for k, v in rep.results.items()]
    if N >= 2:
        triv = kdassoc.check_associator(kdassoc.trivial_series(N), N)
        fails = not (triv.results["hexagon1"] and triv.results["hexagon2"])
        out.append(_flag("trivial_series_fails_hexagon", fails))
    return out


def _combo_value(combo, N: int) -> DiagLin:
    total = None
    for c, g in combo:
        v = stu_resolve(g, N).scale(c)
        total = v if total is None else total + v
    return total


def suite_stu(cfg: Config, count: int = 50, orders: int = 20) -> List[Check]:
    rng = random.Random(cfg.seed)
    N = max(cfg.N, 3)
    out = []
    for i in range(count):
        combo = corpus.random_as(rng, rng.randint(1, 3)) if i % 2 == 0 else corpus.random_ihx(rng, rng.randint(1, 3))
        v = _combo_value(combo, N)
        tag = "as" if i % 2 == 0 else "ihx"
        out.append(_eq(f"{tag}[{i}]", v, DiagLin.zero(0, v.n, N), cfg))
    for i in range(orders):
        g = corpus.random_graph(rng, rng.randint(1, 3))
        first = stu_resolve(g, N)
        last = stu_resolve(g, N, choose=lambda legs: len(legs) - 1)
        out.append(_eq(f"order_independent[{i}]", first, last, cfg))
    return out


ANOMALY_CASES = (("(++)", ("+", "(++)")), ("(++)", ("(++)", "+")), ("(++)", ("(+-)", "+")),
                 ("(++)", ("-", "(-+)")), ("(+-)", ("(++)", "+")))


def suite_anomaly(cfg: Config) -> List[Check]:
    h = cfg.structure()
    N = cfg.N
    a = atkont.anomaly("(++)", N, h)
    out = [_eq("a_pp_is_phi_sandwich", atkont.to_xn(a), hphi.anomaly_formula(h), cfg)]
    for w in ("+", "-"):
        v = atkont.eq_at(atkont.anomaly(w, N, h), atkont.at_identity(w, N), cfg.win)
        out.append(Check(f"a_{w}_trivial", v.equal, str(v)))
    for w, f in ANOMALY_CASES:
        lhs, rhs = atkont.anomaly_recursion_sides(w, f, N, h)
        v = atkont.eq_at(lhs, rhs, cfg.win)
        out.append(Check(f"recursion[{w};{','.join(f)}]", v.equal, str(v)))
    return out


def suite_transmute(cfg: Config) -> List[Check]:
    h = cfg.structure()
    return [
        _eq("transmuted_mu", hphi.transmute_mu(h), zb.z_gen("mu", h=h), cfg),
        _eq("transmuted_delta", hphi.transmute_delta(h), zb.z_gen("Delta", h=h), cfg),
    ]


def suite_cube(cfg: Config) -> List[Check]:
    h = cfg.structure()
    out = []
    for name in atkont.SHIPPED:
        cp = atkont.shipped(name)
        got = cp.evaluate(cfg.N, h)
        if name == "id1":
            want = identity(1, cfg.N)
        elif name.startswith("assoc"):
            want = zb.z_eval(zb.parse_expr(name + "(.;.;.)"), h=h)
        else:
            want = zb.z_gen(name, h=h)
        out.append(_eq(f"cube[{name}]", got, want, cfg))
    return out


def suite_tables(cfg: Config) -> List[Check]:
    h = cfg.structure()
    out = [_eq(f"table[{name}]", zb.z_gen(name, h=h), zb.table_value(name, cfg.N), cfg)
           for name in zb.TABLE_NAMES]
    for u, v, w in ((1, 1, 1), (2, 1, 1), (1, 1, 2)):
        for sign in (1, -1):
            e = zb.Assoc.of(*(_chain(k) for k in (u, v, w)), sign)
            out.append(_eq(f"table[assoc{u}{v}{w}{'+' if sign > 0 else '-'}]", zb.z_gen(e, h=h),
                           zb.assoc_table(u, v, w, sign, cfg.N), cfg))
    return out


def _chain(k: int) -> zb.MagWord:
    out = zb.EMPTY
    for _ in range(k):
        out = out * zb.DOT
    return out


def suite_zb(cfg: Config, count: int = 20) -> List[Check]:
    rng = random.Random(cfg.seed)
    h = cfg.structure()
    out = []
    for i in range(count):
        e = corpus.random_expr(rng)
        v = zb.z_eval(e, h=h)
        out.append(_flag(f"grouplike[{i}]", zb.check_grouplike(v, cfg.win), str(e)))
        out.append(_flag(f"homotopy[{i}]", zb.homotopy_check(e, h=h), str(e)))
    for name, lhs, rhs in zb.RELATIONS:
        out.append(_eq(f"relation[{name}]", zb.z_eval(zb.parse_expr(lhs), h=h),
                       zb.z_eval(zb.parse_expr(rhs), h=h), cfg))
    return out


def suite_hair(cfg: Config, count: int = 3) -> List[Check]:
    rng = random.Random(cfg.seed)
    out = []
    for i in range(count):
        v = corpus.random_diagram(rng, 2, 2, 2, cfg.N)
        w = corpus.random_diagram(rng, 2, 2, 2, cfg.N)
        out.append(_flag(f"linear[{i}]", hair.hair_linearity_check(v, w)))
    return out


def suite_weights(cfg: Config, count: int = 10) -> List[Check]:
    L = weights.load_lie(cfg.lie) if cfg.lie else weights.sl2_data()
    rng = random.Random(cfg.seed)
    out = [
        _flag("casimir_matrix", weights.weight_eval(casimir(cfg.N), L) == weights.casimir_matrix(L)),
        _flag("unit_is_identity", weights.weight_eval(eta(cfg.N), L) == weights.mat_identity(L.dim_v)),
    ]
    Y = corpus.tree_graph(((("u", 0, 0),), (("u", 1, 0),), (("u", 2, 0),)), 0, (0, 1, 2))
    out.append(_flag("tripod_is_cartan_trivector", weights.weight_graph(Y, L) == weights.cartan_trivector(L)))
    from .diagcore import four_t_relations
    for i in range(count):
        t = corpus.random_word(rng, 0, rng.randint(1, 3), 3)
        rels = four_t_relations(t)
        ok = all(weights.is_zero(weights.weight_combination([(c, u) for u, c in rel], L)) for rel in rels)
        out.append(_flag(f"four_term[{i}]", ok))
    for i in range(count):
        combo = corpus.random_as(rng, rng.randint(1, 3)) if i % 2 == 0 else corpus.random_ihx(rng, rng.randint(1, 3))
        out.append(_flag(f"{'as' if i % 2 == 0 else 'ihx'}[{i}]",
                         weights.is_zero(weights.weight_combination(combo, L))))
        g = corpus.random_graph(rng, rng.randint(1, 3))
        out.append(_flag(f"stu[{i}]", weights.weight_graph(g, L) == weights.weight_eval(stu_resolve(g, 4), L)))
    return out


SUITE_FUNCS: Dict[str, Callable[[Config], List[Check]]] = {
    "hopf": suite_hopf,
    "casimir": suite_casimir,
    "quasihopf": suite_quasihopf,
    "associator": suite_associator,
    "stu": suite_stu,
    "anomaly": suite_anomaly,
    "transmute": suite_transmute,
    "weights": suite_weights,
    "cube": suite_cube,
    "tables": suite_tables,
    "zb": suite_zb,
    "hair": suite_hair,
}


def run_suite(name: str, cfg: Config) -> List[Check]:
    if name == "all":
        return [Check(f"{s}.{c.name}", c.passed, c.detail) for s in SUITES for c in SUITE_FUNCS[s](cfg)]
    if name not in SUITE_FUNCS:
        raise KeyError(name)
    return SUITE_FUNCS[name](cfg)


def report(name: str, checks: Sequence[Check], cfg: Config) -> str:
    passed = all(c.passed for c in checks)
    if cfg.fmt == "json":
        return json.dumps({"suite": name, "passed": passed, "seed": cfg.seed, "N": cfg.N,
                           "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]},
                          indent=1, sort_keys=True)
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in checks]
    lines.append(f"suite {name}: {'pass' if passed else 'fail'} ({sum(c.passed for c in checks)}/{len(checks)})")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# entry point


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", type=int, default=2, help="truncation degree N")
    common.add_argument("--window", type=int, default=None, help="relation window L (>= 4)")
    common.add_argument("--associator", default=None, help="associator table file")
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--lie", default=None, help="Lie data JSON for the weights suite")
    p = argparse.ArgumentParser(prog="hbjacobi", parents=[common])
    sub = p.add_subparsers(dest="cmd", required=True)
    z = sub.add_parser("z", parents=[common], help="evaluate a generator expression")
    z.add_argument("expr")
    c = sub.add_parser("check", parents=[common], help="run a check suite")
    c.add_argument("suite", choices=SUITES + ("all",))
    q = sub.add_parser("zcube", parents=[common], help="evaluate a cube presentation file")
    q.add_argument("file")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    p = _parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = Config(args.degree, args.window, args.associator, args.fmt, args.seed, args.lie)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.cmd == "z":
            try:
                e = zb.parse_expr(args.expr)
            except (ValueError, zb.ExprTypeError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
            print(describe(zb.z_eval(e, h=cfg.structure()), cfg))
            return 0
        if args.cmd == "zcube":
            try:
                cp = atkont.load_cube(args.file)
                v = cp.evaluate(cfg.N, cfg.structure())
            except (OSError, ValueError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
            print(describe(v, cfg))
            return 0
        checks = run_suite(args.suite, cfg)
        print(report(args.suite, checks, cfg))
        return 0 if all(c.passed for c in checks) else 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
