"""The ribbon quasi-Hopf algebra H_phi in A^B and its transmutation.

Elements ``0 -> n`` are written in Sweedler style through
:func:`sweedler`: a tuple of elements and identities is fed into a beadless
"pattern" morphism whose strand words say which legs are multiplied in
which order.  Every occurrence of ``x_j`` in a pattern is one coproduct copy
of leg ``j`` and ``x_j^-1`` is the antipode of such a copy.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

from .catab import (
    antipode,
    chord,
    compose,
    compose_all,
    conv_exp,
    conv_inverse,
    convolve,
    convolve_maps,
    counit_map,
    delta,
    delta_iter,
    epsilon,
    eta,
    identity,
    mu,
    mu_iter,
    permutation,
    r_element,
    symmetry,
    tensor,
    tensor_all,
    unit,
    casimir,
)
from .diagcore import DiagLin, RelationWindow, TensorWord, Verdict, eq_mod_relations
from .fgroup import parse_word
from .kdassoc import AssociatorSpec, TruncNCSeries, default_associator, subst

Part = Union[DiagLin, int]


def pattern(k: int, strands: Sequence[str], N: int) -> DiagLin:
    """A beadless morphism ``k -> len(strands)`` from words like ``"x1 x3^-1"``."""
    words = []
    for s in strands:
        w = parse_word(s, k)
        words.append(tuple(("b", j, e) for j, e in w.letters))
    return DiagLin(k, len(strands), N, {TensorWord(k, tuple(words)): 1})


def sweedler(parts: Sequence[Part], strands: Sequence[str], N: int) -> DiagLin:
    """``W o (p_1 (x) ... (x) p_r)``; integer parts are identities."""
    maps = [identity(p, N) if isinstance(p, int) else p for p in parts]
    inner = tensor_all(*maps)
    return compose(pattern(inner.n, strands, N), inner)


def lift(x: DiagLin, m: int) -> DiagLin:
    """View ``x: 0 -> n`` as the beadless morphism ``m -> n`` (``x epsilon^{(x)m}``)."""
    if x.m != 0:
        raise ValueError("lift expects a morphism with source 0")
    return compose(x, counit_map(m, x.N))


def act_left(g: DiagLin, f: DiagLin) -> DiagLin:
    """``g * f = mu_n (g (x) f)`` for ``g: 0 -> n`` and ``f: m -> n``."""
    return convolve_maps(lift(g, f.m), f)


def act_right(f: DiagLin, h: DiagLin) -> DiagLin:
    return convolve_maps(f, lift(h, f.m))


def place(x: DiagLin, slots: Sequence[int]) -> DiagLin:
    """``x_{ijk}``: leg ``a`` of ``x`` goes to strand ``slots[a]`` (1-based)."""
    n = len(slots)
    sigma = [0] * n
    for a, s in enumerate(slots, 1):
        sigma[s - 1] = a
    return compose(permutation(sigma, x.N), x)


def insert_unit(x: DiagLin, pos: int) -> DiagLin:
    """Insert an empty strand so that it becomes strand ``pos`` (1-based)."""
    N = x.N
    parts = [identity(pos - 1, N), eta(N), identity(x.n - pos + 1, N)]
    return compose(tensor_all(*parts), x)


@dataclass(frozen=True)
class HphiStructure:
    N: int
    phi: DiagLin
    phi_inv: DiagLin
    R: DiagLin
    R_inv: DiagLin
    r_elt: DiagLin
    r_inv: DiagLin
    nu: DiagLin
    beta: DiagLin
    alpha: DiagLin
    spec: Optional[AssociatorSpec] = None

    def with_R(self, R: DiagLin) -> "HphiStructure":
        return replace(self, R=R, R_inv=conv_inverse(R))


def phi_element(spec: Union[AssociatorSpec, TruncNCSeries], N: int) -> DiagLin:
    s = spec.series if isinstance(spec, AssociatorSpec) else spec
    s = s.truncate(N) if s.N >= N else s
    if s.N < N:
        raise ValueError(f"associator known to degree {s.N} only, {N} requested")
    return subst(s, [chord(3, 1, 2, N), chord(3, 2, 3, N)])


def nu_element(phi: DiagLin) -> DiagLin:
    """``nu = (mu^{[3]} (id (x) S (x) id) phi)^{-1}``."""
    N = phi.N
    inner = compose_all(mu_iter(3, N), tensor_all(identity(1, N), antipode(N), identity(1, N)), phi)
    return conv_inverse(inner)


def build_hphi(phi_spec: Union[AssociatorSpec, TruncNCSeries, None], N: int,
               beta: Optional[DiagLin] = None) -> HphiStructure:
    if phi_spec is None:
        phi_spec = default_associator(min(N, 2))
    phi = phi_element(phi_spec, N)
    half = Fraction(1, 2)
    R = conv_exp(casimir(N).scale(half))
    r = conv_exp(compose(mu(N), casimir(N)).scale(half))
    nu = nu_element(phi)
    beta = eta(N) if beta is None else beta
    alpha = convolve(nu, conv_inverse(beta))
    return HphiStructure(N, phi, conv_inverse(phi), R, conv_inverse(R), r, conv_inverse(r), nu, beta, alpha,
                         phi_spec if isinstance(phi_spec, AssociatorSpec) else None)


def r_power(h: HphiStructure, e: Fraction) -> DiagLin:
    """``r^e = exp_*(e/2 mu c)``."""
    return conv_exp(compose(mu(h.N), casimir(h.N)).scale(Fraction(e) / 2))


# --------------------------------------------------------------------------
# axioms


@dataclass
class Report:
    results: Dict[str, Verdict] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.equal for v in self.results.values())

    def failures(self) -> List[str]:
        return [k for k, v in self.results.items() if not v.equal]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": {k: str(v) for k, v in self.results.items()}}


def default_probes(N: int) -> List[DiagLin]:
    return [r_element(N), compose(mu(N), conv_exp(casimir(N)))]


def check_quasihopf(h: HphiStructure, win: Optional[RelationWindow] = None,
                    probes: Optional[Sequence[DiagLin]] = None) -> Report:
    N = h.N
    I = identity(1, N)
    D, S, e = delta(N), antipode(N), eta(N)
    P = symmetry(1, 1, N)
    rep = Report()

    def chk(name: str, a: DiagLin, b: DiagLin) -> None:
        rep.results[name] = eq_mod_relations(a, b, win)

    D3 = compose(tensor(D, I), D)
    chk("counit", compose(tensor(epsilon(N), I), D), I)
    chk("quasi_coassociative", compose(tensor(I, D), D), act_right(act_left(h.phi, D3), h.phi_inv))
    lhs = convolve(convolve(tensor(unit(1, N), h.phi), compose(tensor_all(I, D, I), h.phi)), tensor(h.phi, unit(1, N)))
    rhs = convolve(compose(tensor_all(I, I, D), h.phi), compose(tensor_all(D, I, I), h.phi))
    chk("phi_cocycle", lhs, rhs)
    chk("phi_counit", compose(tensor_all(I, epsilon(N), I), h.phi), unit(2, N))
    chk("alpha_antipode", compose_all(mu_iter(3, N), tensor_all(S, h.alpha, I), D), compose(h.alpha, epsilon(N)))
    chk("beta_antipode", compose_all(mu_iter(3, N), tensor_all(I, h.beta, S), D), compose(h.beta, epsilon(N)))
    chk("phi_antipode", compose_all(mu_iter(5, N), tensor_all(I, h.beta, S, h.alpha, I), h.phi), e)
    chk("phi_inv_antipode", compose_all(mu_iter(5, N), tensor_all(S, h.alpha, I, h.beta, S), h.phi_inv), e)
    chk("R_conjugates_delta", act_right(act_left(h.R, D), h.R_inv), compose(P, D))
    R12 = tensor(h.R, e)
    R13 = insert_unit(h.R, 2)
    R23 = tensor(e, h.R)
    ph, phi_ = h.phi, h.phi_inv
    rhs = convolve(convolve(convolve(convolve(place(ph, (3, 1, 2)), R13), place(phi_, (1, 3, 2))), R23), ph)
    chk("hexagon_left", compose(tensor(D, I), h.R), rhs)
    rhs = convolve(convolve(convolve(convolve(place(phi_, (2, 3, 1)), R13), place(ph, (2, 1, 3))), R12), phi_)
    chk("hexagon_right", compose(tensor(I, D), h.R), rhs)
    chk("S_ribbon", compose(S, h.r_elt), h.r_elt)
    chk("delta_ribbon", compose(D, h.r_elt), convolve(convolve(compose(P, h.R), h.R), tensor(h.r_elt, h.r_elt)))
    chk("triangular", compose(P, h.R), h.R)
    for i, x in enumerate(probes if probes is not None else default_probes(N)):
        chk(f"probe_central[{i}]", compose(mu(N), tensor(I, x)), compose(mu(N), tensor(x, I)))
    return rep


def general_fact(x: DiagLin, win: Optional[RelationWindow] = None) -> Verdict:
    """``Delta^{[n]} * x == x * Delta^{[n]}`` for ``x: 0 -> n``."""
    D = delta_iter(x.n, x.N)
    return eq_mod_relations(act_left(x, D), act_right(D, x), win)


# --------------------------------------------------------------------------
# transmutation


def delta_corrector(h: HphiStructure) -> DiagLin:
    """``delta = B^1 beta S(B^4) (x) B^2 beta S(B^3)``.

    ``B = (Delta (x) id (x) id)(phi) * (phi^{-1} (x) eta)``.
    """
    N = h.N
    B = convolve(compose(tensor_all(delta(N), identity(2, N)), h.phi), tensor(h.phi_inv, eta(N)))
    return sweedler([B, h.beta, h.beta], ["x1 x5 x4^-1", "x2 x6 x3^-1"], N)


def g_element(h: HphiStructure) -> DiagLin:
    """``g = Delta(S(x^1) alpha x^2) delta (S (x) S)(Delta^op(x^3))``."""
    N = h.N
    dl = delta_corrector(h)
    return sweedler([h.phi_inv, h.alpha, dl], ["x1^-1 x4 x2 x5 x3^-1", "x1^-1 x4 x2 x6 x3^-1"], N)


def anomaly_formula(h: HphiStructure) -> DiagLin:
    """The phi-sandwich ``X^1_(1) x^1 S(X^3) (x) X^1_(2) x^2 S(x^3) S(X^2)``."""
    return sweedler([h.phi, h.phi_inv], ["x1 x4 x3^-1", "x1 x5 x6^-1 x2^-1"], h.N)


def gamma1(h: HphiStructure) -> DiagLin:
    """``b (x) b' -> (x^1 |> b) (x) x^2 b' S(x^3)`` with ``x = phi^{-1}``."""
    return sweedler([h.phi_inv, 2], ["x1 x4 x1^-1", "x2 x5 x3^-1"], h.N)


def gamma2(h: HphiStructure) -> DiagLin:
    """``b (x) b' -> X^1 b S(X^2) alpha X^3 (x) b'``."""
    return sweedler([h.phi, h.alpha, 2], ["x1 x5 x2^-1 x4 x3", "x6"], h.N)


def theta(h: HphiStructure, i: int, R: Optional[DiagLin] = None) -> DiagLin:
    """``theta_i``; ``R`` overrides the R-matrix used by ``theta_4``."""
    N = h.N
    if i == 1:
        return sweedler([2, g_element(h)], ["x1 x3", "x2 x4"], N)
    if i == 2:
        return sweedler([h.phi, 2], ["x1 x4 x3^-1", "x2 x5 x3^-1"], N)
    if i == 3:
        return sweedler([h.phi_inv, 2], ["x4 x3^-1", "x1 x5 x2^-1"], N)
    if i == 4:
        return sweedler([h.R if R is None else R, 2], ["x3 x2^-1", "x1 x4 x1^-1"], N)
    if i == 5:
        return sweedler([h.phi_inv, 2], ["x1 x4 x2^-1", "x3 x5 x3^-1"], N)
    raise ValueError(f"no theta_{i}")


def transmute_mu(h: HphiStructure) -> DiagLin:
    """``mu gamma_2 gamma_1``."""
    return compose_all(mu(h.N), gamma2(h), gamma1(h))


def transmute_delta(h: HphiStructure) -> DiagLin:
    """``theta_5 theta_4 theta_3 theta_2 theta_1 Delta``."""
    return compose_all(theta(h, 5), theta(h, 4), theta(h, 3), theta(h, 2), theta(h, 1), delta(h.N))
