"""Presentations: named signatures of cells, definitions and rules.

A presentation is a value; every ``add_*`` operation returns a new one and
leaves its input untouched.  Structural (tensor/unit/action) generators are
declared together so the strictification rewrites in :mod:`sheetcat.cells`
know their roles; 1-cell definitions are expanded before any 2-cell is built
over them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import cells
from .cells import OneCell, OneGen, Word, validate_role
from .diagram import Diagram, TwoGen
from .errors import BoundaryError, DeclarationError


@dataclass(frozen=True)
class ZeroCellSym:
    name: str


@dataclass(frozen=True)
class OneDef:
    """Definitional alias for a 1-cell; the body may mention other aliases."""

    alias: str
    body: OneCell


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: Diagram
    rhs: Diagram
    invertible: bool = True

    def __post_init__(self):
        if (self.lhs.source != self.rhs.source
                or self.lhs.target != self.rhs.target):
            raise BoundaryError(
                f"rule {self.name}: sides are not parallel "
                f"({self.lhs.source!r}=>{self.lhs.target!r} vs "
                f"{self.rhs.source!r}=>{self.rhs.target!r})")


@dataclass(frozen=True)
class Report:
    entries: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.entries

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "Report(ok)" if self.ok else "Report(" + "; ".join(self.entries) + ")"


def _alias_gen(name: str, body: OneCell) -> OneGen:
    return OneGen(name, body.source, body.target, role=("alias",))


@dataclass(frozen=True)
class Presentation:
    name: str = "anonymous"
    zero_cells: tuple[str, ...] = ()
    one_gens: tuple[OneGen, ...] = ()
    one_defs: tuple[OneDef, ...] = ()
    two_gens: tuple[TwoGen, ...] = ()
    rules: tuple[Rule, ...] = ()

    # ------------------------------------------------------------ lookup
    def _names(self):
        return ([z for z in self.zero_cells]
                + [g.name for g in self.one_gens]
                + [d.alias for d in self.one_defs]
                + [t.name for t in self.two_gens]
                + [r.name for r in self.rules])

    def one_gen(self, name: str) -> OneGen:
        for g in self.one_gens:
            if g.name == name:
                return g
        raise DeclarationError(f"unknown 1-generator {name!r}")

    def one_def(self, name: str) -> OneDef:
        for d in self.one_defs:
            if d.alias == name:
                return d
        raise DeclarationError(f"unknown 1-cell definition {name!r}")

    def has_one(self, name: str) -> bool:
        return (any(g.name == name for g in self.one_gens)
                or any(d.alias == name for d in self.one_defs))

    def two_gen(self, name: str) -> TwoGen:
        for t in self.two_gens:
            if t.name == name:
                return t
        raise DeclarationError(f"unknown 2-generator {name!r}")

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise DeclarationError(f"unknown rule {name!r}")

    def cell(self, name: str) -> OneCell:
        """The 1-cell named by a generator or definition, aliases expanded."""
        for g in self.one_gens:
            if g.name == name:
                return cells.of_onegen(g)
        for d in self.one_defs:
            if d.alias == name:
                return self.expand(d.body)
        raise DeclarationError(f"unknown 1-cell {name!r}")

    def expand(self, c: OneCell, _seen=()) -> OneCell:
        """Expand definitional aliases inside a 1-cell."""
        out = []
        for p, g in c.atoms:
            if g.role[0] == "alias":
                if g.name in _seen:
                    raise DeclarationError(f"cyclic definition {g.name!r}")
                body = self.expand(self.one_def(g.name).body,
                                   _seen + (g.name,))
                out.extend((p + q, h) for q, h in
                           cells.embed((), body, ()).atoms)
            else:
                out.append((p, g))
        return cells.cell(c.source, out)

    # --------------------------------------------------------- builders
    def _check_new_name(self, name: str):
        if name in self._names():
            raise DeclarationError(f"duplicate name {name!r}")

    def _check_word(self, w: Word):
        for z in w:
            if z not in self.zero_cells:
                raise DeclarationError(f"undeclared 0-cell {z!r}")

    def _check_cell(self, c: OneCell):
        self._check_word(c.source)
        for _, g in c.atoms:
            if g.role[0] == "alias":
                if not any(d.alias == g.name for d in self.one_defs):
                    raise DeclarationError(f"undeclared alias {g.name!r}")
            elif not any(h == g for h in self.one_gens):
                raise DeclarationError(
                    f"1-generator {g.name!r} not declared in {self.name}")

    def add_zero(self, name: str) -> "Presentation":
        self._check_new_name(name)
        return replace(self, zero_cells=self.zero_cells + (name,))

    def add_one(self, name: str, source: Word, target: Word,
                role: tuple = cells.ROLE_PLAIN) -> "Presentation":
        self._check_new_name(name)
        self._check_word(tuple(source))
        self._check_word(tuple(target))
        g = OneGen(name, tuple(source), tuple(target), role)
        if role[0] != "plain":
            validate_role(g)
        return replace(self, one_gens=self.one_gens + (g,))

    def add_monoidal(self, zero: str, tensor: str, unit: str) -> "Presentation":
        """Declare a strict monoidal structure on a 0-cell."""
        if zero not in self.zero_cells:
            raise DeclarationError(f"undeclared 0-cell {zero!r}")
        p = self.add_one(tensor, (zero, zero), (zero,), role=("tensor", unit))
        return p.add_one(unit, (), (zero,), role=("unit", tensor))

    def add_module(self, action: str, module: str, base: str) -> "Presentation":
        """Declare a strict right action of a monoidal 0-cell on another."""
        tensor = unit = None
        for g in self.one_gens:
            if g.role[0] == "tensor" and g.target == (base,):
                tensor = g
            if g.role[0] == "unit" and g.target == (base,):
                unit = g
        if tensor is None or unit is None:
            raise DeclarationError(f"0-cell {base!r} has no monoidal structure")
        return self.add_one(action, (module, base), (module,),
                            role=("action", tensor, unit))

    def add_def(self, alias: str, body: OneCell) -> "Presentation":
        self._check_new_name(alias)
        self._check_cell(body)
        return replace(self, one_defs=self.one_defs + (OneDef(alias, body),))

    def alias_cell(self, alias: str) -> OneCell:
        """Unexpanded reference to a definition, usable inside bodies."""
        d = self.one_def(alias)
        return cells.of_onegen(_alias_gen(alias, d.body))

    def add_two(self, name: str, src: OneCell, tgt: OneCell) -> "Presentation":
        self._check_new_name(name)
        src, tgt = self.expand(src), self.expand(tgt)
        self._check_cell(src)
        self._check_cell(tgt)
        t = TwoGen(name, src, tgt)
        return replace(self, two_gens=self.two_gens + (t,))

    def add_rule(self, rule: Rule) -> "Presentation":
        self._check_new_name(rule.name)
        for side in (rule.lhs, rule.rhs):
            self._check_cell(side.source)
            for ly in side.layers:
                if not any(t == ly.gen for t in self.two_gens):
                    raise DeclarationError(
                        f"rule {rule.name} uses undeclared 2-cell "
                        f"{ly.gen.name!r}")
        return replace(self, rules=self.rules + (rule,))


def add_symbol(p: Presentation, s) -> Presentation:
    """Spec-level symbol addition dispatching on the symbol kind."""
    if isinstance(s, ZeroCellSym):
        return p.add_zero(s.name)
    if isinstance(s, OneGen):
        return p.add_one(s.name, s.source, s.target, s.role)
    if isinstance(s, TwoGen):
        return p.add_two(s.name, s.src, s.tgt)
    if isinstance(s, OneDef):
        return p.add_def(s.alias, s.body)
    raise DeclarationError(f"cannot add {type(s).__name__} to a presentation")


def add_rule(p: Presentation, r: Rule) -> Presentation:
    return p.add_rule(r)


def validate(p: Presentation) -> Report:
    """Collect every invariant violation; an empty report means valid."""
    out = []
    seen = set()
    for n in p._names():
        if n in seen:
            out.append(f"duplicate name {n!r}")
        seen.add(n)
    for g in p.one_gens:
        for z in g.source + g.target:
            if z not in p.zero_cells:
                out.append(f"1-generator {g.name}: undeclared 0-cell {z!r}")
        if g.role[0] != "plain":
            try:
                validate_role(g)
            except DeclarationError as e:
                out.append(str(e))
    # acyclicity of definitions
    for d in p.one_defs:
        try:
            p.expand(d.body, _seen=(d.alias,))
        except DeclarationError as e:
            out.append(f"cyclic definition: {e}")
            continue
    def check_cell(c, what):
        try:
            p._check_cell(p.expand(c))
        except DeclarationError as e:
            out.append(f"{what}: {e}")
            return False
        return True
    for t in p.two_gens:
        ok = check_cell(t.src, f"2-generator {t.name}")
        ok = check_cell(t.tgt, f"2-generator {t.name}") and ok
        if ok and (t.src.source != t.tgt.source
                   or t.src.target != t.tgt.target):
            out.append(f"2-generator {t.name}: non-parallel boundary")
    for r in p.rules:
        for side, tag in ((r.lhs, "lhs"), (r.rhs, "rhs")):
            check_cell(side.source, f"rule {r.name} {tag}")
            for ly in side.layers:
                if not any(t == ly.gen for t in p.two_gens):
                    out.append(f"rule {r.name}: undeclared 2-cell "
                               f"{ly.gen.name!r}")
        if (r.lhs.source != r.rhs.source or r.lhs.target != r.rhs.target):
            out.append(f"rule {r.name}: sides not parallel")
    return Report(tuple(out))
