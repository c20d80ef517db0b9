"""Terms for 1-cells: words of 0-cells and whiskered generator atoms.

A 1-cell is stored as a source word together with a sequence of positional
atoms ``(pos, gen)``; the atom rewrites the slice ``[pos, pos+len(gen.source))``
of the running word to ``gen.target``.  Construction always normalizes:
atoms are sorted by the leftmost-first interchange order and the structural
equalities of strict monoidal/module structure (unit elimination, right-lean
reassociation) are applied until a fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import BoundaryError, DeclarationError

Word = tuple[str, ...]

ROLE_PLAIN = ("plain",)


def word(text: str) -> Word:
    """Parse a comma/space separated word of 0-cell names; '' is the empty word."""
    parts = [p for p in text.replace(",", " ").split() if p]
    return tuple(parts)


@dataclass(frozen=True)
class OneGen:
    """A 1-cell generator between words of 0-cells.

    ``role`` marks structural generators:
      ("plain",)                       ordinary functor generator
      ("tensor", unit_name)            monoidal product of a 0-cell
      ("unit", tensor_name)            monoidal unit of a 0-cell
      ("action", tensor_gen, unit_gen) module action, with its base structure
    """

    name: str
    source: Word
    target: Word
    role: tuple = ROLE_PLAIN

    def __repr__(self):
        return f"OneGen({self.name}: {'.'.join(self.source) or '()'} -> {'.'.join(self.target) or '()'})"


PosAtom = tuple[int, OneGen]


class _E:
    """Mutable entry used by the normalization engine.

    ``gen is None`` marks a phantom block marker of sheet width ``w`` used by
    the diagram layer analysis; it transforms nothing but occupies a window.
    """

    __slots__ = ("pos", "gen", "w", "uid", "tag")

    def __init__(self, pos, gen, w=0, uid=None, tag=None):
        self.pos = pos
        self.gen = gen
        self.w = w
        self.uid = uid
        self.tag = tag

    @property
    def srcw(self):
        return len(self.gen.source) if self.gen is not None else self.w

    @property
    def tgtw(self):
        return len(self.gen.target) if self.gen is not None else self.w

    @property
    def delta(self):
        return self.tgtw - self.srcw

    def copy(self):
        return _E(self.pos, self.gen, self.w, self.uid, self.tag)

    def __repr__(self):
        return f"{self.gen.name if self.gen else '<>'}@{self.pos}"


def _chain_words(source: Word, entries) -> list[Word]:
    """Boundary words before/after each entry; raises on a broken chain."""
    words = [source]
    w = source
    for e in entries:
        if e.gen is None:
            if e.pos < 0 or e.pos + e.w > len(w):
                raise BoundaryError(f"marker window {e.pos}+{e.w} outside word {w}")
            words.append(w)
            continue
        lo, hi = e.pos, e.pos + e.srcw
        if lo < 0 or hi > len(w) or w[lo:hi] != e.gen.source:
            raise BoundaryError(
                f"atom {e.gen.name}@{e.pos} expects {e.gen.source} in {w}")
        w = w[:lo] + e.gen.target + w[hi:]
        words.append(w)
    return words


def _sort_pass(entries) -> bool:
    """One bubble pass of leftmost-first interchange promotion."""
    changed = False
    for i in range(len(entries) - 1):
        a, b = entries[i], entries[i + 1]
        if b.pos + b.srcw <= a.pos:
            # zero-width/zero-delta entries at the same point do not commute
            if b.pos == a.pos and b.srcw == 0 and b.tgtw == 0:
                continue
            entries[i], entries[i + 1] = b, a
            a.pos += b.delta
            changed = True
    return changed


def _find_redex(entries):
    """First structural redex (producer idx, consumer idx, kind)."""
    for i, e in enumerate(entries):
        if e.gen is None:
            continue
        role = e.gen.role
        if role[0] not in ("unit", "tensor", "action"):
            continue
        wp = e.pos  # output wire of the producer
        for j in range(i + 1, len(entries)):
            f = entries[j]
            if f.gen is None:
                continue
            if wp < f.pos:
                continue
            if wp >= f.pos + f.srcw:
                wp += f.delta
                continue
            off = wp - f.pos
            frole = f.gen.role
            if role[0] == "unit":
                if frole[0] == "tensor" and f.gen.name == role[1] and off in (0, 1):
                    return i, j, "unit"
                if frole[0] == "action" and frole[2].name == e.gen.name and off == 1:
                    return i, j, "unit"
            elif role[0] == "tensor":
                if f.gen.name == e.gen.name and off == 0:
                    return i, j, "assoc"
            elif role[0] == "action":
                if f.gen.name == e.gen.name and off == 0:
                    return i, j, "assoc"
            break  # wire consumed without forming a redex
        # fallthrough: wire survives to the boundary
    return None


class _Dirty:
    def __init__(self):
        self.flag = False


def _apply_redex(entries, i, j, kind, dirty: _Dirty):
    """Rewrite entries for the redex found at (i, j)."""
    prod, cons = entries[i], entries[j]
    if (prod.tag is None) != (cons.tag is None):
        dirty.flag = True
    # walk the wire, adjusting the windows of the entries in between
    wp = prod.pos
    shift = -1 if kind == "unit" else +1
    for k in range(i + 1, j):
        f = entries[k]
        if f.gen is None:
            if f.pos <= wp < f.pos + f.w and f.w > 0:
                dirty.flag = True
            if f.pos > wp:
                f.pos += shift
            continue
        nxt = wp + f.delta if wp >= f.pos + f.srcw else wp
        if f.pos > wp:
            f.pos += shift
        wp = nxt
    if kind == "unit":
        repl = []
    else:
        # right-lean reassociation: producer output fed the consumer's left slot
        if prod.gen.role[0] == "tensor":
            inner = prod.gen
        else:
            inner = prod.gen.role[1]  # base tensor of the action
        tag = cons.tag if cons.tag == prod.tag else (cons.tag or prod.tag)
        if cons.tag != prod.tag:
            dirty.flag = True
        repl = [
            _E(wp + 1, inner, uid=(cons.uid, 0), tag=tag),
            _E(wp, cons.gen, uid=(cons.uid, 1), tag=tag),
        ]
    entries[j:j + 1] = repl
    del entries[i]


def normalize_entries(source: Word, entries, check=True) -> tuple[list, bool]:
    """Sort by interchange and reduce structural redexes to a fixpoint.

    Returns the rewritten entry list and a dirty flag recording whether any
    structural rewrite crossed a tagged block boundary.
    """
    if check:
        _chain_words(source, entries)
    dirty = _Dirty()
    guard = (len(entries) + 4) ** 2 * 8 + 64
    steps = 0
    while True:
        while _sort_pass(entries):
            steps += 1
            if steps > guard:
                raise RuntimeError("1-cell interchange sorting did not terminate")
        redex = _find_redex(entries)
        if redex is None:
            break
        _apply_redex(entries, *redex, dirty)
        steps += 1
        if steps > guard:
            raise RuntimeError("1-cell structural rewriting did not terminate")
    if check:
        _chain_words(source, entries)
    return entries, dirty.flag


def _redex_at(entries, i):
    """Structural redex whose producer is exactly entries[i], if any."""
    r = _find_redex(entries[i:])
    if r is not None and r[0] == 0:
        return i, i + r[1], r[2]
    return None


def structural_reducts(source: Word, atoms: tuple[PosAtom, ...]):
    """All single-step structural rewrites of a raw atom sequence.

    Used by the desk-scale confluence check; each result is returned as a raw
    (unnormalized) atom tuple.  Each producer's wire is consumed at most once,
    so there is at most one redex per producer index.
    """
    out = []
    for i in range(len(atoms)):
        entries = [_E(p, g) for p, g in atoms]
        found = _redex_at(entries, i)
        if found is None:
            continue
        _apply_redex(entries, *found, _Dirty())
        out.append(tuple((e.pos, e.gen) for e in entries))
    return out


@dataclass(frozen=True)
class OneAtom:
    """Whiskered view of one atom: sheets to the left/right of its generator."""

    left: Word
    gen: OneGen
    right: Word


@dataclass(frozen=True)
class OneCell:
    """A normalized 1-cell: source word plus positional atoms."""

    source: Word
    atoms: tuple[PosAtom, ...] = ()

    @cached_property
    def target(self) -> Word:
        return _chain_words(self.source, [_E(p, g) for p, g in self.atoms])[-1]

    @cached_property
    def words(self) -> tuple[Word, ...]:
        return tuple(_chain_words(self.source, [_E(p, g) for p, g in self.atoms]))

    @property
    def is_identity(self) -> bool:
        return not self.atoms

    def atom_views(self) -> tuple[OneAtom, ...]:
        views = []
        for k, (p, g) in enumerate(self.atoms):
            w = self.words[k]
            views.append(OneAtom(w[:p], g, w[p + len(g.source):]))
        return tuple(views)

    def __repr__(self):
        if not self.atoms:
            return f"id({','.join(self.source)})"
        return " ; ".join(f"{g.name}@{p}" for p, g in self.atoms)


def cell(source: Word, atoms) -> OneCell:
    """Normalize a raw atom sequence into a OneCell."""
    entries = [_E(p, g) for p, g in atoms]
    entries, _ = normalize_entries(source, entries)
    return OneCell(source, tuple((e.pos, e.gen) for e in entries))


def identity(w: Word) -> OneCell:
    return OneCell(tuple(w), ())


def of_onegen(g: OneGen) -> OneCell:
    return OneCell(g.source, ((0, g),))


def compose(a: OneCell, b: OneCell) -> OneCell:
    if a.target != b.source:
        raise BoundaryError(f"cannot compose: {a.target} != {b.source}")
    return cell(a.source, a.atoms + b.atoms)


def compose_many(*cs: OneCell) -> OneCell:
    out = cs[0]
    for c in cs[1:]:
        out = compose(out, c)
    return out


def stack(a: OneCell, b: OneCell) -> OneCell:
    off = len(a.target)
    atoms = a.atoms + tuple((p + off, g) for p, g in b.atoms)
    return cell(a.source + b.source, atoms)


def embed(left: Word, c: OneCell, right: Word) -> OneCell:
    off = len(left)
    atoms = tuple((p + off, g) for p, g in c.atoms)
    return cell(tuple(left) + c.source + tuple(right), atoms)


def validate_role(g: OneGen):
    """Check the arity of a structural generator against its role."""
    r = g.role
    if r[0] == "tensor":
        if not (len(g.source) == 2 and len(g.target) == 1
                and g.source[0] == g.source[1] == g.target[0]):
            raise DeclarationError(f"tensor {g.name} must be [X,X] -> [X]")
    elif r[0] == "unit":
        if not (len(g.source) == 0 and len(g.target) == 1):
            raise DeclarationError(f"unit {g.name} must be [] -> [X]")
    elif r[0] == "action":
        if not (len(g.source) == 2 and len(g.target) == 1
                and g.source[0] == g.target[0]):
            raise DeclarationError(f"action {g.name} must be [M,X] -> [M]")
        tensor, unit = r[1], r[2]
        if tensor.source != (g.source[1], g.source[1]):
            raise DeclarationError(f"action {g.name} base tensor mismatch")
        if unit.target != (g.source[1],):
            raise DeclarationError(f"action {g.name} base unit mismatch")
