"""Terms for 2-cell diagrams: stacked layers of whiskered generator vertices.

A layer is one vertex with identity context around it: ``pre`` and ``post``
are 1-cells composed horizontally before/after the sheet-embedded generator.
Diagrams are compared through a canonical form: every interface 1-cell is
normalized, the vertex of each layer is located inside it (by tagging the
embedded block through 1-cell normalization), and adjacent layers with
disjoint supports are sorted by the greedy leftmost-first interchange order.
The swap primitive is verified: a swap is only produced when the rebuilt
diagram reproduces the original interfaces exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import cells
from .cells import OneCell, OneGen, Word, _E, identity, normalize_entries
from .errors import BoundaryError


@dataclass(frozen=True)
class TwoGen:
    """A 2-cell generator between parallel 1-cells."""

    name: str
    src: OneCell
    tgt: OneCell

    def __post_init__(self):
        if (self.src.source != self.tgt.source
                or self.src.target != self.tgt.target):
            raise BoundaryError(
                f"2-generator {self.name} has non-parallel boundary: "
                f"{self.src} vs {self.tgt}")

    def __repr__(self):
        return f"TwoGen({self.name}: {self.src!r} => {self.tgt!r})"


@dataclass(frozen=True)
class Layer:
    pre: OneCell
    left: Word
    gen: TwoGen
    right: Word
    post: OneCell

    def __post_init__(self):
        want = tuple(self.left) + self.gen.src.source + tuple(self.right)
        if self.pre.target != want:
            raise BoundaryError(
                f"layer pre-whisker ends at {self.pre.target}, vertex "
                f"{self.gen.name} needs {want}")
        want_out = tuple(self.left) + self.gen.src.target + tuple(self.right)
        if self.post.source != want_out:
            raise BoundaryError(
                f"layer post-whisker starts at {self.post.source}, vertex "
                f"{self.gen.name} produces {want_out}")

    def src_cell(self) -> OneCell:
        return cells.compose_many(
            self.pre, cells.embed(self.left, self.gen.src, self.right), self.post)

    def tgt_cell(self) -> OneCell:
        return cells.compose_many(
            self.pre, cells.embed(self.left, self.gen.tgt, self.right), self.post)


def _raw_entries(ly: Layer, side: str):
    blk = ly.gen.src if side == "src" else ly.gen.tgt
    off = len(ly.left)
    ents = [_E(p, g, uid=("p", j)) for j, (p, g) in enumerate(ly.pre.atoms)]
    if blk.atoms:
        ents += [_E(p + off, g, uid=("b", j), tag="blk")
                 for j, (p, g) in enumerate(blk.atoms)]
    else:
        ents.append(_E(off, None, w=len(blk.source), uid=("b", "m"), tag="blk"))
    ents += [_E(p, g, uid=("q", j)) for j, (p, g) in enumerate(ly.post.atoms)]
    return ents


@dataclass
class _Info:
    src_idx: tuple
    src_marker: int | None
    src_offset: int | None
    src_dirty: bool
    tgt_idx: tuple
    tgt_marker: int | None
    tgt_offset: int | None
    tgt_dirty: bool


def _map_uid(u, umap, fresh):
    if u in umap:
        return umap[u]
    if isinstance(u, tuple) and len(u) == 2 and isinstance(u[0], tuple):
        return (_map_uid(u[0], umap, fresh), u[1])
    return fresh()


def _locate(norm, cur, ly, blkcell):
    """Align a tagged normalization result with the current interface.

    Returns (indices-of-block-atoms, marker, offset, umap raw-uid -> cur-uid).
    """
    real = [e for e in norm if e.gen is not None]
    if [(e.pos, e.gen) for e in real] != [(e.pos, e.gen) for e in cur]:
        raise BoundaryError(
            f"layer for {ly.gen.name} does not chain with the diagram")
    umap = {}
    idx = []
    marker = None
    offset = None
    i = 0
    for e in norm:
        if e.gen is None:
            marker = i
            offset = e.pos
            continue
        umap[e.uid] = cur[i].uid
        if e.tag == "blk":
            idx.append(i)
        i += 1
    if idx:
        offset = cur[idx[0]].pos - blkcell.atoms[0][0]
    return tuple(idx), marker, offset, umap


class _Analysis:
    def __init__(self, d: "Diagram"):
        counter = itertools.count()

        def fresh():
            return ("n", next(counter))

        cur = [_E(p, g, uid=("s", j)) for j, (p, g) in enumerate(d.source.atoms)]
        self.interfaces = [cur]
        self.infos = []
        for k, ly in enumerate(d.layers):
            if ly.pre.source != d.source.source:
                raise BoundaryError(f"layer {k} source word mismatch")
            raw = _raw_entries(ly, "src")
            norm, sdirty = normalize_entries(ly.pre.source, raw)
            sidx, smark, soff, umap = _locate(norm, cur, ly, ly.gen.src)
            rawt = _raw_entries(ly, "tgt")
            normt, tdirty = normalize_entries(ly.pre.source, rawt)
            nxt = []
            tidx, tmark, toff = [], None, None
            i = 0
            for e in normt:
                if e.gen is None:
                    tmark, toff = i, e.pos
                    continue
                uid = _map_uid(e.uid, umap, fresh) if e.tag != "blk" else fresh()
                nxt.append(_E(e.pos, e.gen, uid=uid, tag=e.tag))
                if e.tag == "blk":
                    tidx.append(i)
                i += 1
            if tidx:
                toff = nxt[tidx[0]].pos - ly.gen.tgt.atoms[0][0]
            self.infos.append(_Info(sidx, smark, soff, sdirty,
                                    tuple(tidx), tmark, toff, tdirty))
            self.interfaces.append(nxt)
            cur = nxt


def _word_of(entries, source: Word) -> Word:
    w = source
    for e in entries:
        w = w[:e.pos] + e.gen.target + w[e.pos + e.srcw:]
    return w


def _word_at(entries, source: Word, k: int) -> Word:
    return _word_of(entries[:k], source)


def _cell_from(entries, source: Word) -> OneCell:
    return OneCell(tuple(source), tuple((e.pos, e.gen) for e in entries))


@dataclass(frozen=True)
class Diagram:
    source: OneCell
    layers: tuple[Layer, ...] = ()

    @cached_property
    def _analysis(self) -> _Analysis:
        return _Analysis(self)

    @cached_property
    def target(self) -> OneCell:
        ents = self._analysis.interfaces[-1]
        return _cell_from(ents, self.source.source)

    def interface(self, k: int) -> OneCell:
        return _cell_from(self._analysis.interfaces[k], self.source.source)

    @cached_property
    def key(self):
        infos = self._analysis.infos
        return (self.source,
                tuple((ly.gen.name, i.src_idx, i.src_marker, i.src_offset)
                      for ly, i in zip(self.layers, infos)))

    def __repr__(self):
        names = " ; ".join(ly.gen.name for ly in self.layers) or "id2"
        return f"Diagram({self.source!r} | {names})"


def id2(f: OneCell) -> Diagram:
    return Diagram(f, ())


def of_gen(g: TwoGen) -> Diagram:
    ly = Layer(identity(g.src.source), (), g, (), identity(g.src.target))
    return Diagram(g.src, (ly,))


def boundary(d: Diagram) -> tuple[OneCell, OneCell]:
    return d.source, d.target


def vcompose(d1: Diagram, d2: Diagram) -> Diagram:
    if d1.target != d2.source:
        raise BoundaryError(
            f"vertical composition mismatch: {d1.target!r} vs {d2.source!r}")
    return Diagram(d1.source, d1.layers + d2.layers)


def vcompose_many(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = vcompose(out, d)
    return out


def whisker_left(f: OneCell, d: Diagram) -> Diagram:
    layers = tuple(
        Layer(cells.compose(f, ly.pre), ly.left, ly.gen, ly.right, ly.post)
        for ly in d.layers)
    return Diagram(cells.compose(f, d.source), layers)


def whisker_right(d: Diagram, f: OneCell) -> Diagram:
    layers = tuple(
        Layer(ly.pre, ly.left, ly.gen, ly.right, cells.compose(ly.post, f))
        for ly in d.layers)
    return Diagram(cells.compose(d.source, f), layers)


def hcompose(d1: Diagram, d2: Diagram) -> Diagram:
    """Horizontal composition along a 0-cell boundary, left diagram first."""
    if d1.source.target != d2.source.source:
        raise BoundaryError(
            f"horizontal composition mismatch: {d1.source.target} vs "
            f"{d2.source.source}")
    return vcompose(whisker_right(d1, d2.source),
                    whisker_left(d1.target, d2))


def _stack_id_right(d: Diagram, c: OneCell) -> Diagram:
    idt = identity(c.target)
    layers = tuple(
        Layer(cells.stack(ly.pre, c), ly.left, ly.gen,
              tuple(ly.right) + c.target, cells.stack(ly.post, idt))
        for ly in d.layers)
    return Diagram(cells.stack(d.source, c), layers)


def _stack_id_left(c: OneCell, d: Diagram) -> Diagram:
    idt = identity(c.target)
    layers = tuple(
        Layer(cells.stack(c, ly.pre), c.target + tuple(ly.left), ly.gen,
              ly.right, cells.stack(idt, ly.post))
        for ly in d.layers)
    return Diagram(cells.stack(c, d.source), layers)


def stack(d1: Diagram, d2: Diagram) -> Diagram:
    """Monoidal product: d1's sheets in front of d2's."""
    return vcompose(_stack_id_right(d1, d2.source),
                    _stack_id_left(d1.target, d2))


def _rebuild_layer(gen: TwoGen, entries, source: Word, s: int, n: int,
                   offset: int) -> Layer:
    pre = _cell_from(entries[:s], source)
    cut = _word_at(entries, source, s)
    local = gen.src.source
    if cut[offset:offset + len(local)] != local:
        raise BoundaryError("vertex local word does not match the cut")
    left, right = cut[:offset], cut[offset + len(local):]
    post_src = tuple(left) + gen.src.target + tuple(right)
    post = OneCell(post_src, tuple(
        (e.pos, e.gen) for e in entries[s + n:]))
    pre.target, post.target  # touch: validates internal chaining
    return Layer(pre, left, gen, right, post)


def try_swap(d: Diagram, i: int, require_left: bool = True) -> Diagram | None:
    """Swap adjacent layers i, i+1 when their vertices are disjoint.

    Only fires when both blocks are clean and contiguous, the later vertex can
    be relocated onto the earlier interface by surviving atom identity, and
    the rebuilt diagram reproduces the original interfaces exactly.
    """
    an = d._analysis
    u, v = d.layers[i], d.layers[i + 1]
    iu, iv = an.infos[i], an.infos[i + 1]
    if iu.tgt_dirty or iv.src_dirty:
        return None
    A, B = an.interfaces[i], an.interfaces[i + 1]
    usrc_ids = [A[j].uid for j in iu.src_idx]

    def contiguous(idx):
        return not idx or idx[-1] - idx[0] + 1 == len(idx)

    if not (contiguous(iu.tgt_idx) and contiguous(iv.src_idx)
            and contiguous(iu.src_idx)):
        return None
    vhi = (iv.src_idx[-1] + 1) if iv.src_idx else iv.src_marker
    ulo = iu.tgt_idx[0] if iu.tgt_idx else iu.tgt_marker
    if iv.src_idx:
        vleft = iv.src_idx[-1] < ulo
    elif iu.tgt_idx:
        vleft = vhi <= ulo
    else:
        vleft = vhi < ulo
    if require_left and not vleft:
        return None
    # relocate v onto interface A
    aid = {e.uid: j for j, e in enumerate(A)}
    if iv.src_idx:
        vids = [B[j].uid for j in iv.src_idx]
        if not all(uid in aid for uid in vids):
            return None
        pos = [aid[uid] for uid in vids]
        if pos != list(range(pos[0], pos[0] + len(pos))):
            return None
        s2, n2 = pos[0], len(pos)
        o2 = A[s2].pos - v.gen.src.atoms[0][0]
    else:
        before = [B[j].uid for j in range(iv.src_marker)]
        fresh = {uid for uid in before if uid not in aid}
        want = {uid for uid in before if uid in aid}
        if fresh:
            # the marker sits right of u's whole output block: relocate it
            # right of u's input block instead
            if fresh != {B[j].uid for j in iu.tgt_idx}:
                return None
            want |= {A[j].uid for j in iu.src_idx}
        s2 = len(want)
        if s2 > len(A) or {A[j].uid for j in range(s2)} != want:
            return None
        n2, o2 = 0, iv.src_offset
    try:
        new_v = _rebuild_layer(v.gen, A, d.source.source, s2, n2, o2)
        cand_prefix = Diagram(d.source, d.layers[:i] + (new_v,))
        mid = cand_prefix._analysis.interfaces[-1]
        vinfo = cand_prefix._analysis.infos[-1]
        mword = d.source.source
        # relocate u onto the new middle interface
        midid = {e.uid: j for j, e in enumerate(mid)}
        if iu.src_idx:
            if not all(uid in midid for uid in usrc_ids):
                return None
            pos = [midid[uid] for uid in usrc_ids]
            if pos != list(range(pos[0], pos[0] + len(pos))):
                return None
            s1, n1 = pos[0], len(pos)
            o1 = mid[s1].pos - u.gen.src.atoms[0][0]
        else:
            # everything left of u's old point, plus v's block when v is left
            want = {A[j].uid for j in range(iu.src_marker)}
            if vleft:
                want |= {mid[j].uid for j in vinfo.tgt_idx}
            s1 = len(want)
            if s1 > len(mid) or {mid[j].uid for j in range(s1)} != want:
                return None
            n1, o1 = 0, iu.src_offset
        new_u = _rebuild_layer(u.gen, mid, mword, s1, n1, o1)
        cand = Diagram(d.source,
                       d.layers[:i] + (new_v, new_u) + d.layers[i + 2:])
        if cand.key == d.key:
            return None
        fin = cand._analysis.interfaces[i + 2]
        old = an.interfaces[i + 2]
        if [(e.pos, e.gen) for e in fin] != [(e.pos, e.gen) for e in old]:
            return None
    except (BoundaryError, IndexError):
        return None
    return cand


def normalize(d: Diagram) -> Diagram:
    """Greedy leftmost-first interchange normal form, with layers rebuilt
    in clean split form where possible."""
    cur = d
    guard = len(d.layers) ** 2 * 4 + 8
    steps = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(cur.layers) - 1):
            nxt = try_swap(cur, i)
            if nxt is not None:
                cur = nxt
                changed = True
                steps += 1
                if steps > guard:
                    raise RuntimeError("diagram interchange sorting diverged")
    return _rebuilt(cur)


def _rebuilt(d: Diagram) -> Diagram:
    an = d._analysis
    layers = []
    for k, ly in enumerate(d.layers):
        info = an.infos[k]
        idx = info.src_idx
        ok = (not info.src_dirty
              and (not idx or idx[-1] - idx[0] + 1 == len(idx)))
        if ok:
            s = idx[0] if idx else info.src_marker
            n = len(idx)
            try:
                layers.append(_rebuild_layer(
                    ly.gen, an.interfaces[k], d.source.source, s, n,
                    info.src_offset))
                continue
            except BoundaryError:
                pass
        layers.append(ly)
    return Diagram(d.source, tuple(layers))


def equals(d1: Diagram, d2: Diagram) -> bool:
    if d1.source != d2.source or len(d1.layers) != len(d2.layers):
        return False
    return normalize(d1).key == normalize(d2).key


def interchange_neighbors(d: Diagram):
    """All diagrams reachable by one verified adjacent swap (any direction)."""
    out = []
    for i in range(len(d.layers) - 1):
        c = try_swap(d, i, require_left=False)
        if c is not None:
            out.append(c)
    return out


def interchange_class(d: Diagram, cap: int = 20000):
    """BFS closure of a diagram under single adjacent interchange swaps."""
    seen = {d.key: d}
    queue = [d]
    while queue:
        cur = queue.pop()
        for nxt in interchange_neighbors(cur):
            if nxt.key not in seen:
                if len(seen) >= cap:
                    raise RuntimeError("interchange class exceeded cap")
                seen[nxt.key] = nxt
                queue.append(nxt)
    return seen
