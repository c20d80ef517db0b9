"""Directed rewriting of diagrams by presentation rules at explicit positions.

The checker path is positional: a step names the rule, a direction, the layer
index and the whisker context.  Matching extracts the window and compares it
with the wrapped rule side up to normalization, so scripts survive
interchange-level drift; independent layers interleaved into the window span
are tolerated when the reordering is itself verified by the kernel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import cells, diagram as dg
from .cells import OneCell, Word, identity
from .diagram import Diagram, equals, normalize
from .errors import KernelError, RuleError
from .signature import Presentation, Rule

_SLACK = 3


@dataclass(frozen=True)
class Position:
    layer: int
    pre: OneCell | None = None
    post: OneCell | None = None
    left: Word = ()
    right: Word = ()


@dataclass(frozen=True)
class Step:
    rule: str
    forward: bool = True
    at: Position = Position(0)


@dataclass(frozen=True)
class ProofScript:
    name: str
    presentation: str
    src: Diagram
    tgt: Diagram
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        if (self.src.source != self.tgt.source
                or self.src.target != self.tgt.target):
            raise RuleError(f"proof {self.name}: goal sides are not parallel")


@dataclass(frozen=True)
class Verdict:
    status: str  # "pass" | "fail"
    failing_step: int | None = None
    intermediates: tuple[Diagram, ...] = ()
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def embed_diagram(left: Word, d: Diagram, right: Word) -> Diagram:
    out = d
    if right:
        out = dg._stack_id_right(out, identity(tuple(right)))
    if left:
        out = dg._stack_id_left(identity(tuple(left)), out)
    return out


def wrap(side: Diagram, pos: Position) -> Diagram:
    """The rule side placed into the whisker context of a position."""
    out = embed_diagram(pos.left, side, pos.right)
    if pos.pre is not None:
        out = dg.whisker_left(pos.pre, out)
    if pos.post is not None:
        out = dg.whisker_right(out, pos.post)
    return out


def subdiagram(d: Diagram, lo: int, hi: int) -> Diagram:
    return Diagram(d.interface(lo), d.layers[lo:hi])


def _sides(rule: Rule, forward: bool):
    return (rule.lhs, rule.rhs) if forward else (rule.rhs, rule.lhs)


def _bubble_up(d: Diagram, src: int, dst: int) -> Diagram | None:
    """Move layer ``src`` to index ``dst`` (dst < src) by verified swaps."""
    cur = d
    for t in range(src, dst, -1):
        cur = dg.try_swap(cur, t - 1, require_left=False)
        if cur is None:
            return None
    return cur


def _bubble_down(d: Diagram, src: int, dst: int) -> Diagram | None:
    """Move layer ``src`` to index ``dst`` (dst > src) by verified swaps."""
    cur = d
    for t in range(src, dst):
        cur = dg.try_swap(cur, t, require_left=False)
        if cur is None:
            return None
    return cur


def _clear_window(d: Diagram, k: int, b: int, skipped: tuple[int, ...],
                  bys_first: bool) -> Diagram | None:
    """Bubble the skipped layers out of the window span [k, k+b+len(skipped))."""
    cur = d
    if bys_first:
        placed = 0
        for j in sorted(skipped):
            cur = _bubble_up(cur, k + j, k + placed)
            if cur is None:
                return None
            placed += 1
    else:
        end = k + b + len(skipped) - 1
        placed = 0
        for j in sorted(skipped, reverse=True):
            cur = _bubble_down(cur, k + j, end - placed)
            if cur is None:
                return None
            placed += 1
    return cur


def apply_step(d: Diagram, p: Presentation, s: Step) -> Diagram:
    """Replace one window of ``d`` by the other side of a rule.

    Independent layers interleaved into the window span are tolerated: they
    are bubbled out by verified interchange swaps before matching.
    """
    rule = p.rule(s.rule)
    if not s.forward and not rule.invertible:
        raise RuleError(f"rule {rule.name} is not invertible")
    side_from, side_to = _sides(rule, s.forward)
    expected = wrap(side_from, s.at)
    replacement = wrap(side_to, s.at)
    b = len(side_from.layers)
    k = s.at.layer
    if k < 0 or k > len(d.layers) - b:
        raise RuleError(
            f"step {rule.name}: layer index {k} out of range")
    max_extra = min(_SLACK, len(d.layers) - k - b)
    for extra in range(max_extra + 1):
        for skipped in itertools.combinations(range(b + extra), extra):
            for bys_first in ((True, False) if extra else (False,)):
                cand = _clear_window(d, k, b, skipped, bys_first)
                if cand is None:
                    continue
                lo = k + (extra if bys_first else 0)
                try:
                    window = subdiagram(cand, lo, lo + b)
                    if window.source != expected.source:
                        continue
                    if not equals(window, expected):
                        continue
                    out = Diagram(
                        d.source,
                        cand.layers[:lo] + replacement.layers
                        + cand.layers[lo + b:])
                    return normalize(out)
                except KernelError:
                    continue
    raise RuleError(
        f"rule {rule.name} does not match at layer {k} with the given context")


def check_proof(ps: ProofScript, p: Presentation) -> Verdict:
    """Replay a script; pass iff every step matches and the chain closes."""
    cur = normalize(ps.src)
    inter = [cur]
    for i, st in enumerate(ps.steps):
        try:
            cur = apply_step(cur, p, st)
        except KernelError as e:
            return Verdict("fail", i, tuple(inter), str(e))
        inter.append(cur)
    if not equals(cur, ps.tgt):
        return Verdict("fail", len(ps.steps), tuple(inter),
                       "final diagram differs from the stated goal")
    return Verdict("pass", None, tuple(inter))


def enumerate_applications(d: Diagram, p: Presentation,
                           invertible_only: bool = False):
    """All (step, result) pairs of single rule applications on ``d``.

    Windows are consecutive segments; the whisker context is recovered from
    the interface by enumerating splits at which the side's source block
    occurs contiguously.
    """
    nd = normalize(d)
    out = []
    for rule in p.rules:
        dirs = (True, False) if rule.invertible else (True,)
        if invertible_only and not rule.invertible:
            continue
        for fwd in dirs:
            side_from, _ = _sides(rule, fwd)
            b = len(side_from.layers)
            nsrc = len(side_from.source.atoms)
            local = side_from.source.source
            for k in range(len(nd.layers) - b + 1):
                iface = nd.interface(k)
                words = iface.words
                for a in range(len(iface.atoms) - nsrc + 1):
                    cut = words[a]
                    for o in range(len(cut) - len(local) + 1):
                        if cut[o:o + len(local)] != local:
                            continue
                        blk = tuple((q + o, g)
                                    for q, g in side_from.source.atoms)
                        if tuple(iface.atoms[a:a + nsrc]) != blk:
                            continue
                        preW = OneCell(iface.source, iface.atoms[:a])
                        post_src = cut[:o] + side_from.source.target + \
                            cut[o + len(local):]
                        postW = OneCell(post_src, iface.atoms[a + nsrc:])
                        pos = Position(k, preW, postW, cut[:o],
                                       cut[o + len(local):])
                        st = Step(rule.name, fwd, pos)
                        try:
                            res = apply_step(nd, p, st)
                        except KernelError:
                            continue
                        out.append((st, res))
    return out


def search_equal(d1: Diagram, d2: Diagram, p: Presentation,
                 depth: int = 8) -> ProofScript | None:
    """Bidirectional breadth-first search for a rewrite path d1 -> d2."""
    if (d1.source != d2.source or d1.target != d2.target):
        raise RuleError("search goals are not parallel")
    n1, n2 = normalize(d1), normalize(d2)
    if equals(n1, n2):
        return ProofScript("search", p.name, d1, d2, ())
    fwd = {n1.key: (n1, ())}
    bwd = {n2.key: (n2, ())}
    frontier_f = [n1.key]
    frontier_b = [n2.key]
    for layer_depth in range(depth):
        expand_fwd = len(frontier_f) <= len(frontier_b)
        if expand_fwd:
            frontier, table, other = frontier_f, fwd, bwd
        else:
            frontier, table, other = frontier_b, bwd, fwd
        nxt = []
        for key in frontier:
            state, steps = table[key]
            apps = enumerate_applications(
                state, p, invertible_only=not expand_fwd)
            for st, res in apps:
                if res.key in table:
                    continue
                table[res.key] = (res, steps + (st,))
                nxt.append(res.key)
                if res.key in other:
                    left = fwd[res.key] if expand_fwd else fwd.get(res.key)
                    right = bwd.get(res.key) if expand_fwd else bwd[res.key]
                    if left is None or right is None:
                        continue
                    back = tuple(
                        Step(s.rule, not s.forward, s.at)
                        for s in reversed(right[1]))
                    script = ProofScript("search", p.name, d1, d2,
                                         left[1] + back)
                    if check_proof(script, p).passed:
                        return script
        if expand_fwd:
            frontier_f = nxt
        else:
            frontier_b = nxt
        if not frontier_f and not frontier_b:
            break
    return None
