"""Built-in presentations and derived-cell constructors.

Each theory is a fixed validated presentation.  Structural 1-cells (tensor,
unit, action) are declared with their roles so strictification handles the
object-level equalities; the displayed equational axioms of each structure
become named rules.
"""

from __future__ import annotations

from functools import lru_cache

from . import cells, diagram as dg
from .cells import OneCell, Word, cell, compose, identity
from .diagram import Diagram, Layer, TwoGen, id2, of_gen, vcompose, vcompose_many
from .errors import DeclarationError
from .signature import Presentation, Rule

THEORY_NAMES = (
    "monad", "adjunction", "eilenberg_moore", "opmonoidal_functor",
    "bimonad", "monoidal_adjunction", "module_category", "comodule_functor",
    "comodule_monad", "comodule_adjunction",
)

# Auxiliary setting for the converse direction of the lifting theorem: the
# right adjoint is a *strong* comodule functor (its coaction has a formal
# inverse) and the left adjoint carries no coaction of its own.
AUX_THEORY_NAMES = ("strong_comodule_lift",)

DERIVED_CELL_NAMES = (
    "em_action_theta", "induced_comultiplication_UF", "induced_counit_UF",
    "identity_coaction", "composite_coaction", "recast_coaction",
    "delta_inverse", "induced_coaction_left_adjoint", "induced_coaction_VG",
    "F2_from_adjunction", "F0_from_adjunction",
)


def vertex(g: TwoGen, pre: OneCell | None = None, left: Word = (),
           right: Word = (), post: OneCell | None = None) -> Diagram:
    """Single-layer diagram: one generator whiskered into context."""
    left, right = tuple(left), tuple(right)
    if pre is None:
        pre = identity(left + g.src.source + right)
    if post is None:
        post = identity(left + g.src.target + right)
    ly = Layer(pre, left, g, right, post)
    return Diagram(ly.src_cell(), (ly,))


# --------------------------------------------------------------- packs

def _monad_pack(p: Presentation, t: str, c: str, mu: str, u: str,
                prefix: str) -> Presentation:
    """Multiplication/unit 2-cells with associativity and unit rules."""
    tc = p.cell(t)
    tt = compose(tc, tc)
    p = p.add_two(mu, tt, tc)
    p = p.add_two(u, identity((c,)), tc)
    gmu, gu = p.two_gen(mu), p.two_gen(u)
    dmu, du = of_gen(gmu), of_gen(gu)
    assoc_l = vcompose(dg.whisker_right(dmu, tc), dmu)
    assoc_r = vcompose(dg.whisker_left(tc, dmu), dmu)
    unit_l = vcompose(dg.whisker_right(du, tc), dmu)
    unit_r = vcompose(dg.whisker_left(tc, du), dmu)
    p = p.add_rule(Rule(f"{prefix}_assoc", assoc_l, assoc_r))
    p = p.add_rule(Rule(f"{prefix}_unit_left", unit_l, id2(tc)))
    p = p.add_rule(Rule(f"{prefix}_unit_right", unit_r, id2(tc)))
    return p


def _adjunction_pack(p: Presentation, f: str, u: str, eta: str, eps: str,
                     prefix: str) -> Presentation:
    """Unit/counit with the two snake rules."""
    fc, uc = p.cell(f), p.cell(u)
    p = p.add_two(eta, identity(fc.source), compose(fc, uc))
    p = p.add_two(eps, compose(uc, fc), identity(uc.source))
    deta, deps = of_gen(p.two_gen(eta)), of_gen(p.two_gen(eps))
    snake_f = vcompose(dg.whisker_right(deta, fc), dg.whisker_left(fc, deps))
    snake_u = vcompose(dg.whisker_left(uc, deta), dg.whisker_right(deps, uc))
    p = p.add_rule(Rule(f"{prefix}_snake_left", snake_f, id2(fc)))
    p = p.add_rule(Rule(f"{prefix}_snake_right", snake_u, id2(uc)))
    return p


def _opmonoidal_pack(p: Presentation, f: str, s: str, t: str,
                     strong: bool = False) -> Presentation:
    """Comultiplication/counit of a functor, with coassociativity and
    counitality; ``strong`` adds formal inverses with iso rules."""
    fg = p.one_gen(f)
    ts, us = p.one_gen(f"tens_{s}"), p.one_gen(f"unit_{s}")
    tt, ut = p.one_gen(f"tens_{t}"), p.one_gen(f"unit_{t}")
    f2_src = cell((s, s), [(0, ts), (0, fg)])
    f2_tgt = cell((s, s), [(0, fg), (1, fg), (0, tt)])
    f0_src = cell((), [(0, us), (0, fg)])
    f0_tgt = cell((), [(0, ut)])
    p = p.add_two(f"{f}2", f2_src, f2_tgt)
    p = p.add_two(f"{f}0", f0_src, f0_tgt)
    f2, f0 = p.two_gen(f"{f}2"), p.two_gen(f"{f}0")
    s3 = (s, s, s)
    side_a = vcompose(
        vertex(f2, pre=cell(s3, [(1, ts)])),
        vertex(f2, pre=cell(s3, [(0, fg)]), left=(t,),
               post=cell((t, t), [(0, tt)])))
    side_b = vcompose(
        vertex(f2, pre=cell(s3, [(0, ts)])),
        vertex(f2, right=(s,), post=cell((t, s), [(1, fg), (0, tt)])))
    p = p.add_rule(Rule(f"{f}_coassoc", side_a, side_b))
    cl = vcompose(
        vertex(f2, pre=cell((s,), [(0, us)])),
        vertex(f0, right=(s,), post=cell((t, s), [(1, fg), (0, tt)])))
    p = p.add_rule(Rule(f"{f}_counit_left", cl, id2(p.cell(f))))
    cr = vcompose(
        vertex(f2, pre=cell((s,), [(1, us)])),
        vertex(f0, left=(t,), pre=cell((s,), [(0, fg)]),
               post=cell((t, t), [(0, tt)])))
    p = p.add_rule(Rule(f"{f}_counit_right", cr, id2(p.cell(f))))
    if strong:
        p = p.add_two(f"{f}2i", f2_tgt, f2_src)
        p = p.add_two(f"{f}0i", f0_tgt, f0_src)
        f2i, f0i = p.two_gen(f"{f}2i"), p.two_gen(f"{f}0i")
        p = p.add_rule(Rule(f"{f}2_iso_a",
                            vcompose(of_gen(f2), of_gen(f2i)), id2(f2_src)))
        p = p.add_rule(Rule(f"{f}2_iso_b",
                            vcompose(of_gen(f2i), of_gen(f2)), id2(f2_tgt)))
        p = p.add_rule(Rule(f"{f}0_iso_a",
                            vcompose(of_gen(f0), of_gen(f0i)), id2(f0_src)))
        p = p.add_rule(Rule(f"{f}0_iso_b",
                            vcompose(of_gen(f0i), of_gen(f0)), id2(f0_tgt)))
    return p


def _comodule_pack(p: Presentation, g: str, delta: str, f: str,
                   m: str, s: str, n: str, t: str,
                   strong: bool = False) -> Presentation:
    """Coaction of a functor between module 0-cells over an opmonoidal one."""
    gg, fg = p.one_gen(g), p.one_gen(f)
    am = next(h for h in p.one_gens
              if h.role[0] == "action" and h.source == (m, s))
    an = next(h for h in p.one_gens
              if h.role[0] == "action" and h.source == (n, t))
    ts, us = p.one_gen(f"tens_{s}"), p.one_gen(f"unit_{s}")
    d_src = cell((m, s), [(0, am), (0, gg)])
    d_tgt = cell((m, s), [(0, gg), (1, fg), (0, an)])
    p = p.add_two(delta, d_src, d_tgt)
    dl = p.two_gen(delta)
    f2, f0 = p.two_gen(f"{f}2"), p.two_gen(f"{f}0")
    mss = (m, s, s)
    side_a = vcompose(
        vertex(dl, pre=cell(mss, [(1, ts)])),
        vertex(f2, pre=cell(mss, [(0, gg)]), left=(n,),
               post=cell((n, t), [(0, an)])))
    side_b = vcompose(
        vertex(dl, pre=cell(mss, [(0, am)])),
        vertex(dl, right=(s,), post=cell((n, s), [(1, fg), (0, an)])))
    p = p.add_rule(Rule(f"{delta}_coassoc", side_a, side_b))
    cu = vcompose(
        vertex(dl, pre=cell((m,), [(1, us)])),
        vertex(f0, left=(n,), pre=cell((m,), [(0, gg)]),
               post=cell((n, t), [(0, an)])))
    p = p.add_rule(Rule(f"{delta}_counit", cu, id2(p.cell(g))))
    if strong:
        p = p.add_two(f"{delta}i", d_tgt, d_src)
        di = p.two_gen(f"{delta}i")
        p = p.add_rule(Rule(f"{delta}_iso_a",
                            vcompose(of_gen(dl), of_gen(di)), id2(d_src)))
        p = p.add_rule(Rule(f"{delta}_iso_b",
                            vcompose(of_gen(di), of_gen(dl)), id2(d_tgt)))
    return p


def _opmonoidal_monad_rules(p: Presentation, b: str, mu: str, eta: str,
                            c: str) -> Presentation:
    """Rules making mu/eta opmonoidal natural transformations."""
    bg = p.one_gen(b)
    tc, uc = p.one_gen(f"tens_{c}"), p.one_gen(f"unit_{c}")
    gmu, geta = p.two_gen(mu), p.two_gen(eta)
    b2, b0 = p.two_gen(f"{b}2"), p.two_gen(f"{b}0")
    cc = (c, c)
    bb = p.cell(b)
    mu_l = vcompose(
        vertex(gmu, pre=cell(cc, [(0, tc)])),
        vertex(b2))
    mu_r = vcompose_many(
        vertex(b2, post=bb),
        vertex(b2, pre=cell(cc, [(0, bg), (1, bg)])),
        vertex(gmu, right=(c,), post=cell(cc, [(1, bg), (1, bg), (0, tc)])),
        vertex(gmu, left=(c,), pre=cell(cc, [(0, bg)]),
               post=cell(cc, [(0, tc)])))
    p = p.add_rule(Rule(f"{mu}_opmonoidal", mu_l, mu_r))
    mu_cl = vcompose(
        vertex(gmu, pre=cell((), [(0, uc)])),
        vertex(b0))
    mu_cr = vcompose(
        vertex(b0, post=bb),
        vertex(b0))
    p = p.add_rule(Rule(f"{mu}_counital", mu_cl, mu_cr))
    eta_l = vcompose(
        vertex(geta, pre=cell(cc, [(0, tc)])),
        vertex(b2))
    eta_r = vcompose(
        vertex(geta, right=(c,), post=cell(cc, [(0, tc)])),
        vertex(geta, left=(c,), pre=cell(cc, [(0, bg)]),
               post=cell(cc, [(0, tc)])))
    p = p.add_rule(Rule(f"{eta}_opmonoidal", eta_l, eta_r))
    eta_cl = vcompose(
        vertex(geta, pre=cell((), [(0, uc)])),
        vertex(b0))
    p = p.add_rule(Rule(f"{eta}_counital", eta_cl,
                        id2(cell((), [(0, uc)]))))
    return p


def _comodule_monad_rules(p: Presentation, k: str, mu: str, eta: str,
                          delta: str, bmu: str, beta: str,
                          m: str, c: str) -> Presentation:
    """Rules making the multiplication and unit morphisms of comodules."""
    kg, bg = p.one_gen(k), p.one_gen("B")
    am = next(h for h in p.one_gens
              if h.role[0] == "action" and h.source == (m, c))
    gmu, geta = p.two_gen(mu), p.two_gen(eta)
    gbmu, gbeta = p.two_gen(bmu), p.two_gen(beta)
    dl = p.two_gen(delta)
    mc = (m, c)
    mu_l = vcompose(
        vertex(gmu, pre=cell(mc, [(0, am)])),
        vertex(dl))
    mu_r = vcompose_many(
        vertex(dl, post=p.cell(k)),
        vertex(dl, pre=cell(mc, [(0, kg), (1, bg)])),
        vertex(gbmu, left=(m,), pre=cell(mc, [(0, kg), (0, kg)]),
               post=cell(mc, [(0, am)])),
        vertex(gmu, right=(c,), post=cell(mc, [(1, bg), (0, am)])))
    p = p.add_rule(Rule(f"{mu}_comodule", mu_l, mu_r))
    eta_l = vcompose(
        vertex(geta, pre=cell(mc, [(0, am)])),
        vertex(dl))
    eta_r = vcompose(
        vertex(gbeta, left=(m,), post=cell(mc, [(0, am)])),
        vertex(geta, right=(c,), post=cell(mc, [(1, bg), (0, am)])))
    p = p.add_rule(Rule(f"{eta}_comodule", eta_l, eta_r))
    return p


def _comodule_adjunction_rules(p: Presentation) -> Presentation:
    """The two compatibility identities of a comodule adjunction."""
    G, V, F, U = (p.one_gen(x) for x in "GVFU")
    amc = next(h for h in p.one_gens if h.role[0] == "action"
               and h.source == ("M", "C"))
    and_ = next(h for h in p.one_gens if h.role[0] == "action"
                and h.source == ("N", "D"))
    eta_gv, eps_gv = p.two_gen("eta_GV"), p.two_gen("eps_GV")
    eta_fu, eps_fu = p.two_gen("eta"), p.two_gen("eps")
    dG, dV = p.two_gen("dG"), p.two_gen("dV")
    mc = ("M", "C")
    nd = ("N", "D")
    unit_l = vcompose_many(
        vertex(eta_gv, pre=cell(mc, [(0, amc)])),
        vertex(dG, post=p.cell("V")),
        vertex(dV, pre=cell(mc, [(0, G), (1, F)])))
    unit_r = vcompose(
        vertex(eta_gv, right=("C",), post=cell(mc, [(0, amc)])),
        vertex(eta_fu, left=("M",), pre=cell(mc, [(0, G), (0, V)]),
               post=cell(mc, [(0, amc)])))
    p = p.add_rule(Rule("comadj_unit", unit_l, unit_r))
    counit_l = vcompose_many(
        vertex(dV, post=p.cell("G")),
        vertex(dG, pre=cell(nd, [(0, V), (1, U)])),
        vertex(eps_gv, right=("D",),
               post=cell(nd, [(1, U), (1, F), (0, and_)])),
        vertex(eps_fu, left=("N",), post=cell(nd, [(0, and_)])))
    counit_r = vertex(eps_gv, pre=cell(nd, [(0, and_)]))
    p = p.add_rule(Rule("comadj_counit", counit_l, counit_r))
    return p


# ------------------------------------------------------------- theories

def _monoidal_base(p: Presentation, c: str) -> Presentation:
    return p.add_monoidal(c, f"tens_{c}", f"unit_{c}")


@lru_cache(maxsize=None)
def builtin_presentation(name: str) -> Presentation:
    if name == "monad":
        p = Presentation("monad").add_zero("C")
        p = p.add_one("T", ("C",), ("C",))
        return _monad_pack(p, "T", "C", "mu", "u", "monad")
    if name == "adjunction":
        p = Presentation("adjunction").add_zero("C").add_zero("D")
        p = p.add_one("F", ("C",), ("D",)).add_one("U", ("D",), ("C",))
        return _adjunction_pack(p, "F", "U", "eta", "eps", "adj")
    if name == "eilenberg_moore":
        p = Presentation("eilenberg_moore").add_zero("C").add_zero("EM")
        p = p.add_one("FT", ("C",), ("EM",)).add_one("UT", ("EM",), ("C",))
        p = p.add_def("T", compose(p.cell("FT"), p.cell("UT")))
        return _adjunction_pack(p, "FT", "UT", "eta", "eps", "em")
    if name == "opmonoidal_functor":
        p = Presentation("opmonoidal_functor").add_zero("C").add_zero("D")
        p = _monoidal_base(p, "C")
        p = _monoidal_base(p, "D")
        p = p.add_one("F", ("C",), ("D",))
        return _opmonoidal_pack(p, "F", "C", "D")
    if name == "bimonad":
        p = Presentation("bimonad").add_zero("C")
        p = _monoidal_base(p, "C")
        p = p.add_one("B", ("C",), ("C",))
        p = _monad_pack(p, "B", "C", "mu", "eta", "monad")
        p = _opmonoidal_pack(p, "B", "C", "C")
        return _opmonoidal_monad_rules(p, "B", "mu", "eta", "C")
    if name == "monoidal_adjunction":
        return _monoidal_adjunction(Presentation("monoidal_adjunction"))
    if name == "module_category":
        p = Presentation("module_category").add_zero("C").add_zero("M")
        p = _monoidal_base(p, "C")
        return p.add_module("act_M", "M", "C")
    if name == "comodule_functor":
        p = Presentation("comodule_functor")
        for z in ("C", "D", "M", "N"):
            p = p.add_zero(z)
        p = _monoidal_base(p, "C")
        p = _monoidal_base(p, "D")
        p = p.add_module("act_M", "M", "C").add_module("act_N", "N", "D")
        p = p.add_one("F", ("C",), ("D",))
        p = _opmonoidal_pack(p, "F", "C", "D")
        p = p.add_one("G", ("M",), ("N",))
        return _comodule_pack(p, "G", "dG", "F", "M", "C", "N", "D")
    if name == "comodule_monad":
        p = Presentation("comodule_monad").add_zero("C").add_zero("M")
        p = _monoidal_base(p, "C")
        p = p.add_module("act_M", "M", "C")
        p = p.add_one("B", ("C",), ("C",))
        p = _monad_pack(p, "B", "C", "mu_B", "eta_B", "bmonad")
        p = _opmonoidal_pack(p, "B", "C", "C")
        p = _opmonoidal_monad_rules(p, "B", "mu_B", "eta_B", "C")
        p = p.add_one("K", ("M",), ("M",))
        p = _monad_pack(p, "K", "M", "mu_K", "eta_K", "kmonad")
        p = _comodule_pack(p, "K", "dK", "B", "M", "C", "M", "C")
        return _comodule_monad_rules(p, "K", "mu_K", "eta_K", "dK",
                                     "mu_B", "eta_B", "M", "C")
    if name == "comodule_adjunction":
        p = _comodule_adjunction_base()
        p = _comodule_pack(p, "G", "dG", "F", "M", "C", "N", "D")
        p = _comodule_pack(p, "V", "dV", "U", "N", "D", "M", "C")
        p = _adjunction_pack(p, "G", "V", "eta_GV", "eps_GV", "gv")
        return _comodule_adjunction_rules(p)
    if name == "strong_comodule_lift":
        p = _comodule_adjunction_base()
        p = _comodule_pack(p, "V", "dV", "U", "N", "D", "M", "C",
                           strong=True)
        return _adjunction_pack(p, "G", "V", "eta_GV", "eps_GV", "gv")
    raise DeclarationError(f"unknown theory {name!r}")


def _monoidal_adjunction(p: Presentation) -> Presentation:
    p = p.add_zero("C").add_zero("D")
    p = _monoidal_base(p, "C")
    p = _monoidal_base(p, "D")
    p = p.add_one("F", ("C",), ("D",)).add_one("U", ("D",), ("C",))
    p = _adjunction_pack(p, "F", "U", "eta", "eps", "adj")
    p = _opmonoidal_pack(p, "F", "C", "D")
    p = _opmonoidal_pack(p, "U", "D", "C", strong=True)
    return _opmonoidal_adjunction_rules(p)


def _opmonoidal_adjunction_rules(p: Presentation) -> Presentation:
    """Opmonoidality of the unit and counit of a monoidal adjunction."""
    F, U = p.one_gen("F"), p.one_gen("U")
    tC, uC = p.one_gen("tens_C"), p.one_gen("unit_C")
    tD, uD = p.one_gen("tens_D"), p.one_gen("unit_D")
    eta, eps = p.two_gen("eta"), p.two_gen("eps")
    F2, F0 = p.two_gen("F2"), p.two_gen("F0")
    U2, U0 = p.two_gen("U2"), p.two_gen("U0")
    cc, dd = ("C", "C"), ("D", "D")
    eta_l = vcompose_many(
        vertex(eta, pre=cell(cc, [(0, tC)])),
        vertex(F2, post=p.cell("U")),
        vertex(U2, pre=cell(cc, [(0, F), (1, F)])))
    eta_r = vcompose(
        vertex(eta, right=("C",), post=cell(cc, [(0, tC)])),
        vertex(eta, left=("C",), pre=cell(cc, [(0, F), (0, U)]),
               post=cell(cc, [(0, tC)])))
    p = p.add_rule(Rule("eta_opmonoidal", eta_l, eta_r))
    eta_cl = vcompose_many(
        vertex(eta, pre=cell((), [(0, uC)])),
        vertex(F0, post=p.cell("U")),
        vertex(U0))
    p = p.add_rule(Rule("eta_counital", eta_cl, id2(cell((), [(0, uC)]))))
    eps_l = vertex(eps, pre=cell(dd, [(0, tD)]))
    eps_r = vcompose_many(
        vertex(U2, post=p.cell("F")),
        vertex(F2, pre=cell(dd, [(0, U), (1, U)])),
        vertex(eps, right=("D",),
               post=cell(dd, [(1, U), (1, F), (0, tD)])),
        vertex(eps, left=("D",), post=cell(dd, [(0, tD)])))
    p = p.add_rule(Rule("eps_opmonoidal", eps_l, eps_r))
    eps_cl = vertex(eps, pre=cell((), [(0, uD)]))
    eps_cr = vcompose(
        vertex(U0, post=p.cell("F")),
        vertex(F0))
    p = p.add_rule(Rule("eps_counital", eps_cl, eps_cr))
    return p


def _comodule_adjunction_base() -> Presentation:
    p = Presentation("comodule_adjunction")
    p = p.add_zero("C").add_zero("D")
    p = _monoidal_base(p, "C")
    p = _monoidal_base(p, "D")
    p = p.add_zero("M").add_zero("N")
    p = p.add_module("act_M", "M", "C").add_module("act_N", "N", "D")
    p = p.add_one("F", ("C",), ("D",)).add_one("U", ("D",), ("C",))
    p = _adjunction_pack(p, "F", "U", "eta", "eps", "adj")
    p = _opmonoidal_pack(p, "F", "C", "D")
    p = _opmonoidal_pack(p, "U", "D", "C", strong=True)
    p = _opmonoidal_adjunction_rules(p)
    p = p.add_one("G", ("M",), ("N",)).add_one("V", ("N",), ("M",))
    return p


# -------------------------------------------------------- derived cells

def em_mu(p: Presentation | None = None) -> Diagram:
    """The multiplication of the Eilenberg-Moore monad: the counit
    whiskered between the free and forgetful 1-cells."""
    p = p or builtin_presentation("eilenberg_moore")
    ft, ut = p.cell("FT"), p.cell("UT")
    return vertex(p.two_gen("eps"), pre=ft, post=ut)


def derived_cell(name: str, p: Presentation | None = None) -> Diagram:
    if name not in DERIVED_CELL_NAMES:
        raise DeclarationError(f"unknown derived cell {name!r}")
    return _DERIVED[name](p)


def _em_action_theta(p):
    p = p or builtin_presentation("eilenberg_moore")
    return vertex(p.two_gen("eps"), post=p.cell("UT"))


def _induced_comultiplication_UF(p):
    p = p or builtin_presentation("monoidal_adjunction")
    F, U = p.one_gen("F"), p.one_gen("U")
    return vcompose(
        vertex(p.two_gen("F2"), post=p.cell("U")),
        vertex(p.two_gen("U2"), pre=cell(("C", "C"), [(0, F), (1, F)])))


def _induced_counit_UF(p):
    p = p or builtin_presentation("monoidal_adjunction")
    return vcompose(
        vertex(p.two_gen("F0"), post=p.cell("U")),
        vertex(p.two_gen("U0")))


def _identity_coaction(p):
    p = p or builtin_presentation("comodule_monad")
    act = next(h for h in p.one_gens if h.role[0] == "action")
    return vertex(p.two_gen("eta_B"), left=(act.source[0],),
                  post=cells.of_onegen(act))


def _composite_coaction(p):
    """Coaction of the composite K;K induced by the multiplication."""
    p = p or builtin_presentation("comodule_monad")
    kg, bg = p.one_gen("K"), p.one_gen("B")
    act = next(h for h in p.one_gens if h.role[0] == "action"
               and h.source == ("M", "C"))
    dk = p.two_gen("dK")
    mc = ("M", "C")
    return vcompose_many(
        vertex(dk, post=p.cell("K")),
        vertex(dk, pre=cell(mc, [(0, kg), (1, bg)])),
        vertex(p.two_gen("mu_B"), left=("M",),
               pre=cell(mc, [(0, kg), (0, kg)]),
               post=cell(mc, [(0, act)])))


def _recast_coaction(p):
    """A comodule natural transformation reinterpreted as a coaction."""
    p = p or _comodule_nat_setting()
    gg = p.one_gen("G")
    actn = next(h for h in p.one_gens if h.role[0] == "action"
                and h.source == ("N", "D"))
    return vcompose(
        of_gen(p.two_gen("dG")),
        vertex(p.two_gen("psi"), left=("N",),
               pre=cell(("M", "C"), [(0, gg)]),
               post=cell(("N", "D"), [(0, actn)])))


@lru_cache(maxsize=None)
def _comodule_nat_setting() -> Presentation:
    """Two opmonoidal endpoints joined by a 2-cell, with one coaction."""
    p = Presentation("comodule_nat")
    for z in ("C", "D", "M", "N"):
        p = p.add_zero(z)
    p = _monoidal_base(p, "C")
    p = _monoidal_base(p, "D")
    p = p.add_module("act_M", "M", "C").add_module("act_N", "N", "D")
    p = p.add_one("B", ("C",), ("D",)).add_one("F", ("C",), ("D",))
    p = _opmonoidal_pack(p, "B", "C", "D")
    p = _opmonoidal_pack(p, "F", "C", "D")
    p = p.add_one("G", ("M",), ("N",))
    p = _comodule_pack(p, "G", "dG", "B", "M", "C", "N", "D")
    return p.add_two("psi", p.cell("B"), p.cell("F"))


def _delta_inverse(p):
    """Candidate inverse of the right adjoint's coaction."""
    p = p or builtin_presentation("comodule_adjunction")
    V, U, G, F = (p.one_gen(x) for x in "VUGF")
    acm = next(h for h in p.one_gens if h.role[0] == "action"
               and h.source == ("M", "C"))
    acn = next(h for h in p.one_gens if h.role[0] == "action"
               and h.source == ("N", "D"))
    nd = ("N", "D")
    return vcompose_many(
        vertex(p.two_gen("eta_GV"),
               pre=cell(nd, [(0, V), (1, U), (0, acm)])),
        vertex(p.two_gen("dG"), pre=cell(nd, [(0, V), (1, U)]),
               post=p.cell("V")),
        vertex(p.two_gen("eps_GV"), right=("D",),
               post=cell(nd, [(1, U), (1, F), (0, acn), (0, V)])),
        vertex(p.two_gen("eps"), left=("N",),
               post=cell(nd, [(0, acn), (0, V)])))


def _induced_coaction_left_adjoint(p):
    """Coaction on the left adjoint induced by a strong right adjoint."""
    p = p or builtin_presentation("strong_comodule_lift")
    V, U, G, F = (p.one_gen(x) for x in "VUGF")
    acm = next(h for h in p.one_gens if h.role[0] == "action"
               and h.source == ("M", "C"))
    acn = next(h for h in p.one_gens if h.role[0] == "action"
               and h.source == ("N", "D"))
    mc = ("M", "C")
    return vcompose_many(
        vertex(p.two_gen("eta_GV"), right=("C",),
               post=cell(mc, [(0, acm), (0, G)])),
        vertex(p.two_gen("eta"), left=("M",),
               pre=cell(mc, [(0, G), (0, V)]),
               post=cell(mc, [(0, acm), (0, G)])),
        vertex(p.two_gen("dVi"), pre=cell(mc, [(0, G), (1, F)]),
               post=p.cell("G")),
        vertex(p.two_gen("eps_GV"),
               pre=cell(mc, [(0, G), (1, F), (0, acn)])))


def _induced_coaction_VG(p):
    """Coaction of the composite monad V;G over U;F."""
    p = p or builtin_presentation("comodule_adjunction")
    G, F = p.one_gen("G"), p.one_gen("F")
    return vcompose(
        vertex(p.two_gen("dG"), post=p.cell("V")),
        vertex(p.two_gen("dV"), pre=cell(("M", "C"), [(0, G), (1, F)])))


def _F2_from_adjunction(p):
    p = p or builtin_presentation("monoidal_adjunction")
    F, U = p.one_gen("F"), p.one_gen("U")
    tC, tD = p.one_gen("tens_C"), p.one_gen("tens_D")
    cc = ("C", "C")
    return vcompose_many(
        vertex(p.two_gen("eta"), right=("C",),
               post=cell(cc, [(0, tC), (0, F)])),
        vertex(p.two_gen("eta"), left=("C",),
               pre=cell(cc, [(0, F), (0, U)]),
               post=cell(cc, [(0, tC), (0, F)])),
        vertex(p.two_gen("U2i"), pre=cell(cc, [(0, F), (1, F)]),
               post=p.cell("F")),
        vertex(p.two_gen("eps"),
               pre=cell(cc, [(0, F), (1, F), (0, tD)])))


def _F0_from_adjunction(p):
    p = p or builtin_presentation("monoidal_adjunction")
    return vcompose(
        vertex(p.two_gen("U0i"), post=p.cell("F")),
        vertex(p.two_gen("eps"), pre=cell((), [(0, p.one_gen("unit_D"))])))


_DERIVED = {
    "em_action_theta": _em_action_theta,
    "induced_comultiplication_UF": _induced_comultiplication_UF,
    "induced_counit_UF": _induced_counit_UF,
    "identity_coaction": _identity_coaction,
    "composite_coaction": _composite_coaction,
    "recast_coaction": _recast_coaction,
    "delta_inverse": _delta_inverse,
    "induced_coaction_left_adjoint": _induced_coaction_left_adjoint,
    "induced_coaction_VG": _induced_coaction_VG,
    "F2_from_adjunction": _F2_from_adjunction,
    "F0_from_adjunction": _F0_from_adjunction,
}
