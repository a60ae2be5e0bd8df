"""Linear re-embeddings of plane curves and the glued curve in Q^(2+n).

A modification step adds one coordinate z = l(x, y) for a linear form l
and tropicalizes in one dimension higher.  The embedded curve is
reconstructed from the two plane projections: the original curve (bent
onto the graph of the tropical line) and the curve of the substituted
polynomial (hanging parts on the wall).  Consistency of the gluing is
certified by exact pushforward bookkeeping on both projections.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, inf, isinf

from .plane import (
    PuiseuxPolynomial,
    lattice_length,
    primitive,
    tropical_curve,
)
from .series import PuiseuxSeries, ZERO

__all__ = [
    "LinearForm",
    "ModificationPlan",
    "EmbeddedCurve",
    "InconsistentProjections",
    "substitute",
    "modify",
    "apply_plan",
    "naive_modification",
    "embedded_skeleton",
]


class InconsistentProjections(RuntimeError):
    """The two plane projections cannot be glued into one curve."""


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class LinearForm:
    """z = x + m ('x-shift'), z = y + m ('y-shift') or z = y + c*x ('yx-tilt').

    For the tilt the constant part must vanish (modifications here run along
    vertexless tropical lines only).
    """

    KINDS = ("x-shift", "y-shift", "yx-tilt")

    def __init__(self, kind, m=ZERO, c=None):
        if kind not in self.KINDS:
            raise ValueError("unknown form kind %r" % kind)
        if not isinstance(m, PuiseuxSeries):
            m = PuiseuxSeries([(0, m)])
        self.kind = kind
        self.m = m
        self.c = c
        if kind == "yx-tilt":
            if c is None:
                raise ValueError("tilt form needs the x-coefficient series")
            if not m.is_exact_zero():
                raise ValueError("tilt form must have zero constant part")
            self.level = -c.val()
        else:
            if m.is_exact_zero():
                raise ValueError("shift form needs a nonzero constant")
            self.level = -m.val()

    @staticmethod
    def tilt_monomial(l):
        """The paper's basic tilt z = y + t^(-l) x."""
        return LinearForm("yx-tilt", c=PuiseuxSeries([(-_frac(l), 1)]))

    def wall(self):
        """(a, b, c): the line a*X + b*Y = c with the graph part on
        a*X + b*Y - c > 0."""
        if self.kind == "x-shift":
            return (Fraction(1), Fraction(0), self.level)
        if self.kind == "y-shift":
            return (Fraction(0), Fraction(1), self.level)
        return (Fraction(-1), Fraction(1), self.level)

    def z_value(self, p):
        x, y = p[0], p[1]
        if self.kind == "x-shift":
            return max(x, self.level)
        if self.kind == "y-shift":
            return max(y, self.level)
        return max(y, x + self.level)

    # C~ plane accessors: native coordinates of tropical_curve(substitute(..))
    def a_index(self):
        return 1 if self.kind == "x-shift" else 0

    def z_index(self):
        return 0 if self.kind == "x-shift" else 1

    def boundary(self):
        """Line in the native C~ plane with hidden side negative."""
        if self.kind == "x-shift":
            return (Fraction(1), Fraction(0), self.level)
        if self.kind == "y-shift":
            return (Fraction(0), Fraction(1), self.level)
        return (Fraction(1), Fraction(-1), -self.level)  # Z - A = l, native (A, Z)

    def hidden_xy(self, a):
        """XY-point of the wall at coordinate a along it."""
        if self.kind == "x-shift":
            return (self.level, a)
        if self.kind == "y-shift":
            return (a, self.level)
        return (a, a + self.level)

    def wall_coordinate(self, p):
        return p[1] if self.kind == "x-shift" else p[0]

    def to_json(self):
        out = {"kind": self.kind, "m": self.m.to_json()}
        if self.c is not None:
            out["c"] = self.c.to_json()
        return out

    @staticmethod
    def from_json(data):
        kind = data["kind"]
        if kind == "yx-tilt":
            if "c" in data:
                c = PuiseuxSeries.from_json(data["c"])
            else:
                l = _frac(Fraction(data["l"][0], data["l"][1]))
                return LinearForm.tilt_monomial(l)
            return LinearForm(kind, c=c)
        return LinearForm(kind, m=PuiseuxSeries.from_json(data["m"]))


class ModificationPlan:
    """Ordered modification steps; each form refers to the original x, y."""

    def __init__(self, steps=()):
        self.steps = list(steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_json(self):
        return {"steps": [f.to_json() for f in self.steps]}

    @staticmethod
    def from_json(data):
        return ModificationPlan(
            [LinearForm.from_json(s) for s in data["steps"]]
        )


def substitute(q, form):
    """Exact coordinate change: eliminate x or y in favour of z."""
    out = {}

    def feed(pt, series):
        if pt in out:
            out[pt] = out[pt] + series
        else:
            out[pt] = series

    if form.kind == "x-shift":
        negm_pows = _powers(-form.m, max(i for i, _j in q.support) if q.support else 0)
        for (i, j), a in q.support.items():
            for k in range(i + 1):
                feed((k, j), a.scale(comb(i, k)) * negm_pows[i - k])
    elif form.kind == "y-shift":
        negm_pows = _powers(-form.m, max(j for _i, j in q.support) if q.support else 0)
        for (i, j), a in q.support.items():
            for k in range(j + 1):
                feed((i, k), a.scale(comb(j, k)) * negm_pows[j - k])
    else:
        negc_pows = _powers(-form.c, max(j for _i, j in q.support) if q.support else 0)
        for (i, j), a in q.support.items():
            for k in range(j + 1):
                feed((i + j - k, k), a.scale(comb(j, k)) * negc_pows[j - k])
    return PuiseuxPolynomial(out)


def _powers(s, n):
    out = [PuiseuxSeries([(0, 1)])]
    for _ in range(n):
        out.append(out[-1] * s)
    return out


# -- pieces: exact segments and rays in Q^d --------------------------------


class Piece:
    __slots__ = ("p0", "p1", "dir", "weight", "tag")

    def __init__(self, p0, p1=None, direction=None, weight=1, tag=None):
        self.p0 = tuple(_frac(v) for v in p0)
        self.p1 = tuple(_frac(v) for v in p1) if p1 is not None else None
        self.dir = tuple(direction) if direction is not None else None
        self.weight = weight
        self.tag = tag

    def is_ray(self):
        return self.dir is not None

    def direction(self):
        if self.dir is not None:
            return self.dir
        return primitive(tuple(b - a for a, b in zip(self.p0, self.p1)))

    def interior_point(self):
        if self.is_ray():
            return tuple(a + d for a, d in zip(self.p0, self.dir))
        return tuple((a + b) / 2 for a, b in zip(self.p0, self.p1))

    def __repr__(self):
        if self.is_ray():
            return "Ray(%s -> %s, w=%d)" % (self.p0, self.dir, self.weight)
        return "Seg(%s -- %s, w=%d)" % (self.p0, self.p1, self.weight)


def curve_pieces(curve, tag=None):
    out = []
    for a, b, w, _d in curve.edges:
        out.append(Piece(curve.vertices[a], curve.vertices[b], weight=w, tag=tag))
    for v, d, w, _dc in curve.rays:
        out.append(Piece(curve.vertices[v], direction=d, weight=w, tag=tag))
    return out


def _line_eval(line, p):
    a, b, c = line
    return a * p[0] + b * p[1] - c


def split_at_line(pieces, line):
    """Split 2d pieces so each lies weakly on one side of the line."""
    out = []
    for pc in pieces:
        h0 = _line_eval(line, pc.p0)
        if pc.is_ray():
            hd = line[0] * pc.dir[0] + line[1] * pc.dir[1]
            if hd == 0 or h0 == 0 or (h0 > 0) == (hd > 0):
                out.append(pc)
                continue
            tstar = -h0 / hd
            mid = tuple(a + tstar * d for a, d in zip(pc.p0, pc.dir))
            out.append(Piece(pc.p0, mid, weight=pc.weight, tag=pc.tag))
            out.append(Piece(mid, direction=pc.dir, weight=pc.weight, tag=pc.tag))
        else:
            h1 = _line_eval(line, pc.p1)
            if h0 * h1 < 0:
                t = h0 / (h0 - h1)
                mid = tuple(
                    a + t * (b - a) for a, b in zip(pc.p0, pc.p1)
                )
                out.append(Piece(pc.p0, mid, weight=pc.weight, tag=pc.tag))
                out.append(Piece(mid, pc.p1, weight=pc.weight, tag=pc.tag))
            else:
                out.append(pc)
    return out


def piece_side(piece, line):
    """-1/0/+1: the side the piece lies on (0 = inside the line)."""
    h0 = _line_eval(line, piece.p0)
    if piece.is_ray():
        hd = line[0] * piece.dir[0] + line[1] * piece.dir[1]
        if hd == 0:
            return 0 if h0 == 0 else (1 if h0 > 0 else -1)
        if h0 == 0:
            return 1 if hd > 0 else -1
        if (h0 > 0) != (hd > 0):
            raise AssertionError("ray crosses the line; split first")
        return 1 if h0 > 0 else -1
    h1 = _line_eval(line, piece.p1)
    if h0 == 0 and h1 == 0:
        return 0
    if h0 >= 0 and h1 >= 0:
        return 1
    if h0 <= 0 and h1 <= 0:
        return -1
    raise AssertionError("piece crosses the line; split first")


# -- interval bookkeeping ---------------------------------------------------


class _Cover:
    """Weighted interval cover of a 1-dimensional axis with exact endpoints."""

    def __init__(self):
        self.items = []  # (lo, hi, weight) with +-inf allowed

    def add(self, lo, hi, weight):
        if lo > hi:
            lo, hi = hi, lo
        if lo == hi:
            return
        self.items.append((lo, hi, weight))

    def breakpoints(self):
        pts = set()
        for lo, hi, _w in self.items:
            if not isinf(lo):
                pts.add(lo)
            if not isinf(hi):
                pts.add(hi)
        return pts

    def weight_at(self, t):
        return sum(w for lo, hi, w in self.items if lo < t < hi)


def _intervals(points, has_neg_inf, has_pos_inf):
    pts = sorted(points)
    out = []
    if has_neg_inf and pts:
        out.append((-inf, pts[0]))
    for a, b in zip(pts, pts[1:]):
        out.append((a, b))
    if has_pos_inf and pts:
        out.append((pts[-1], inf))
    if not pts and (has_neg_inf or has_pos_inf):
        out.append((-inf, inf))
    return out


def _mid(lo, hi):
    if isinf(lo) and isinf(hi):
        return Fraction(0)
    if isinf(lo):
        return hi - 1
    if isinf(hi):
        return lo + 1
    return (lo + hi) / 2


# -- the gluing --------------------------------------------------------------


class _FormData:
    def __init__(self, form, q):
        self.form = form
        self.qt = substitute(q, form)
        self.curve = tropical_curve(self.qt)
        self.wall_line = form.wall()
        self.bdry_line = form.boundary()


class EmbeddedCurve:
    """Weighted balanced 1-complex in Q^dim with provenance for vertices."""

    def __init__(self, dim, vertices, edges, rays, vertex_sources=None):
        self.dim = dim
        self.vertices = vertices  # list of coordinate tuples
        self.edges = edges  # (u, v, weight)
        self.rays = rays  # (v, primitive direction, weight)
        self.vertex_sources = vertex_sources or {}

    def edge_length(self, k):
        u, v, _w = self.edges[k]
        return lattice_length(self.vertices[u], self.vertices[v])

    def check_balancing(self):
        for k in range(len(self.vertices)):
            total = [Fraction(0)] * self.dim
            for u, v, w in self.edges:
                if k in (u, v):
                    other = self.vertices[v if u == k else u]
                    d = primitive(
                        tuple(b - a for a, b in zip(self.vertices[k], other))
                    )
                    for i in range(self.dim):
                        total[i] += w * d[i]
            for v, d, w in self.rays:
                if v == k:
                    for i in range(self.dim):
                        total[i] += w * d[i]
            if any(total):
                raise InconsistentProjections(
                    "balancing fails at %s: %s" % (self.vertices[k], total)
                )
        return True

    def project(self, coords):
        """Pieces of the projection to the listed coordinate axes."""
        out = []
        for u, v, w in self.edges:
            p0 = tuple(self.vertices[u][i] for i in coords)
            p1 = tuple(self.vertices[v][i] for i in coords)
            if p0 != p1:
                out.append((p0, p1, w, self._proj_index(u, v, coords)))
        return out

    def _proj_index(self, u, v, coords):
        d = primitive(
            tuple(b - a for a, b in zip(self.vertices[u], self.vertices[v]))
        )
        dp = [d[i] for i in coords]
        from math import gcd

        g = 0
        for x in dp:
            g = gcd(g, abs(x))
        return g

    def to_json(self):
        return {
            "dim": self.dim,
            "vertices": [[str(c) for c in v] for v in self.vertices],
            "edges": [
                {"u": u, "v": v, "weight": w, "length": str(self.edge_length(k))}
                for k, (u, v, w) in enumerate(self.edges)
            ],
            "rays": [
                {"v": v, "dir": list(d), "weight": w} for v, d, w in self.rays
            ],
        }


def apply_plan(q, plan, check=True):
    """Glue the modification steps into a curve in Q^(2+n)."""
    steps = list(plan)
    base = tropical_curve(q)
    datas = [_FormData(f, q) for f in steps]
    walls = [d.wall_line for d in datas]
    for i in range(len(walls)):
        for j in range(i + 1, len(walls)):
            if _same_line(walls[i], walls[j]):
                raise InconsistentProjections("two steps share a wall line")

    pieces = curve_pieces(base, tag="C")
    for w in walls:
        pieces = split_at_line(pieces, w)

    dim = 2 + len(steps)
    out = []
    wall_pieces = [[] for _ in steps]
    for pc in pieces:
        on = [k for k in range(len(steps)) if piece_side(pc, walls[k]) == 0]
        if len(on) > 1:
            raise InconsistentProjections("piece lies on two walls")
        if on:
            wall_pieces[on[0]].append(pc)
        else:
            out.append(_lift_piece(pc, datas))

    for k, data in enumerate(datas):
        out.extend(_hidden_and_corner(k, data, datas, wall_pieces[k], pieces))

    curve = _assemble(dim, out, base, datas)
    if check:
        curve.check_balancing()
        _check_pushforward(curve, base, datas)
    return curve


def modify(q, form, check=True):
    return apply_plan(q, ModificationPlan([form]), check=check)


def _same_line(l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    return a1 * b2 == a2 * b1 and a1 * c2 == a2 * c1 and b1 * c2 == b2 * c1


def _lift_piece(pc, datas):
    """Append all z-coordinates to an off-wall 2d piece (formulas affine)."""
    if pc.is_ray():
        base = pc.p0 + tuple(d.form.z_value(pc.p0) for d in datas)
        probe2 = tuple(a + b for a, b in zip(pc.p0, pc.dir))
        tip = probe2 + tuple(d.form.z_value(probe2) for d in datas)
        direction = tuple(b - a for a, b in zip(base, tip))
        return Piece(base, direction=primitive(direction), weight=pc.weight, tag=pc.tag)
    p0 = pc.p0 + tuple(d.form.z_value(pc.p0) for d in datas)
    p1 = pc.p1 + tuple(d.form.z_value(pc.p1) for d in datas)
    return Piece(p0, p1, weight=pc.weight, tag=pc.tag)


def _hidden_native_pieces(k, data, datas):
    """C~ pieces strictly below the boundary, split at other walls' pullbacks."""
    tpieces = curve_pieces(data.curve, tag=("Ct", k))
    tpieces = split_at_line(tpieces, data.bdry_line)
    ai = data.form.a_index()
    hidden = [p for p in tpieces if piece_side(p, data.bdry_line) < 0]
    # other walls restrict to vertical lines A = const on the hidden plane
    for j, other in enumerate(datas):
        if j == k:
            continue
        aa, bb, cc = other.wall_line
        # wall j on points hidden_xy(a): solve aa*x(a) + bb*y(a) = cc
        p0 = data.form.hidden_xy(Fraction(0))
        p1 = data.form.hidden_xy(Fraction(1))
        g0 = aa * p0[0] + bb * p0[1] - cc
        g1 = aa * p1[0] + bb * p1[1] - cc
        slope = g1 - g0
        if slope == 0:
            continue
        astar = -g0 / slope
        line = [Fraction(0), Fraction(0), astar]
        line[ai] = Fraction(1)
        hidden = split_at_line(hidden, tuple(line))
    return hidden, tpieces


def _embed_hidden(pc, k, data, datas):
    ai, zi = data.form.a_index(), data.form.z_index()

    def lift(nat):
        xy = data.form.hidden_xy(nat[ai])
        zs = []
        for j, d in enumerate(datas):
            zs.append(nat[zi] if j == k else d.form.z_value(xy))
        return xy + tuple(zs)

    if pc.is_ray():
        base = lift(pc.p0)
        tip = lift(tuple(a + b for a, b in zip(pc.p0, pc.dir)))
        return Piece(
            base,
            direction=primitive(tuple(b - a for a, b in zip(base, tip))),
            weight=pc.weight,
            tag=pc.tag,
        )
    return Piece(lift(pc.p0), lift(pc.p1), weight=pc.weight, tag=pc.tag)


def _hidden_and_corner(k, data, datas, wall_pcs, all_base_pieces):
    """Hidden pieces plus corner pieces determined by weight bookkeeping."""
    form = data.form
    ai = form.a_index()
    hidden, tpieces = _hidden_native_pieces(k, data, datas)

    out = [_embed_hidden(p, k, data, datas) for p in hidden]

    # covers along the wall axis
    wall_cover = _Cover()
    for pc in wall_pcs:
        lo, hi = _a_extent_xy(pc, form)
        wall_cover.add(lo, hi, pc.weight)
    hidden_cover = _Cover()
    for pc in hidden:
        lo, hi = _a_extent_native(pc, ai)
        if lo == hi:
            # vertical hidden piece: its wall point must lie on the curve
            continue
        d = pc.direction()
        hidden_cover.add(lo, hi, pc.weight * abs(d[ai]))
    bdry_cover = _Cover()
    for pc in tpieces:
        if piece_side(pc, data.bdry_line) == 0:
            lo, hi = _a_extent_native(pc, ai)
            bdry_cover.add(lo, hi, pc.weight)
    shadow_cover = _Cover()
    for pc in all_base_pieces:
        if piece_side(pc, data.wall_line) < 0:
            lo, hi = _a_extent_xy(pc, form)
            if lo == hi:
                continue
            d = pc.direction()
            idx = abs(d[1] if form.kind == "x-shift" else d[0])
            if idx:
                shadow_cover.add(lo, hi, pc.weight * idx)

    pts = set()
    neg = pos = False
    for cov in (wall_cover, hidden_cover, bdry_cover, shadow_cover):
        pts |= cov.breakpoints()
        for lo, hi, _w in cov.items:
            neg = neg or isinf(lo)
            pos = pos or isinf(hi)
    for lo, hi in _intervals(pts, neg, pos):
        t = _mid(lo, hi)
        kappa_wall = wall_cover.weight_at(t) - hidden_cover.weight_at(t)
        kappa_bdry = bdry_cover.weight_at(t) - shadow_cover.weight_at(t)
        if kappa_wall != kappa_bdry or kappa_wall < 0:
            raise InconsistentProjections(
                "projection weights disagree on wall %d over (%s, %s): "
                "%s vs %s" % (k, lo, hi, kappa_wall, kappa_bdry)
            )
        if kappa_wall > 0:
            out.append(_corner_piece(form, datas, k, lo, hi, kappa_wall))
    return out


def _corner_piece(form, datas, k, lo, hi, weight):
    def lift(a):
        xy = form.hidden_xy(a)
        return xy + tuple(d.form.z_value(xy) for d in datas)

    if isinf(lo) and isinf(hi):
        raise InconsistentProjections("doubly infinite corner piece")
    if isinf(hi):
        base = lift(lo)
        tip = lift(lo + 1)
        return Piece(
            base,
            direction=primitive(tuple(b - a for a, b in zip(base, tip))),
            weight=weight,
            tag=("corner", k),
        )
    if isinf(lo):
        base = lift(hi)
        tip = lift(hi - 1)
        return Piece(
            base,
            direction=primitive(tuple(b - a for a, b in zip(base, tip))),
            weight=weight,
            tag=("corner", k),
        )
    return Piece(lift(lo), lift(hi), weight=weight, tag=("corner", k))


def _a_extent_xy(pc, form):
    a0 = form.wall_coordinate(pc.p0)
    if pc.is_ray():
        da = form.wall_coordinate(pc.dir)
        if da == 0:
            return (a0, a0)
        return (a0, inf) if da > 0 else (-inf, a0)
    a1 = form.wall_coordinate(pc.p1)
    return (min(a0, a1), max(a0, a1))


def _a_extent_native(pc, ai):
    a0 = pc.p0[ai]
    if pc.is_ray():
        da = pc.dir[ai]
        if da == 0:
            return (a0, a0)
        return (a0, inf) if da > 0 else (-inf, a0)
    a1 = pc.p1[ai]
    return (min(a0, a1), max(a0, a1))


# -- assembly ---------------------------------------------------------------


def _assemble(dim, pcs, base, datas):
    index = {}
    vertices = []

    def vid(p):
        if p not in index:
            index[p] = len(vertices)
            vertices.append(p)
        return index[p]

    edges = []
    rays = []
    for pc in pcs:
        if pc.is_ray():
            rays.append((vid(pc.p0), pc.dir, pc.weight))
        else:
            if pc.p0 == pc.p1:
                continue
            edges.append((vid(pc.p0), vid(pc.p1), pc.weight))

    # merge collinear 2-valent joints of equal weight
    changed = True
    while changed:
        changed = False
        deg = [0] * len(vertices)
        for u, v, _w in edges:
            deg[u] += 1
            deg[v] += 1
        for v, _d, _w in rays:
            deg[v] += 1
        for k in range(len(vertices)):
            if deg[k] != 2:
                continue
            inc = [e for e in range(len(edges)) if k in edges[e][:2]]
            if len(inc) != 2:
                continue
            e1, e2 = inc
            u1, v1, w1 = edges[e1]
            u2, v2, w2 = edges[e2]
            if w1 != w2:
                continue
            a = u1 if v1 == k else v1
            b = u2 if v2 == k else v2
            if a == b:
                continue
            d1 = primitive(
                tuple(q - p for p, q in zip(vertices[k], vertices[a]))
            )
            d2 = primitive(
                tuple(q - p for p, q in zip(vertices[k], vertices[b]))
            )
            if all(x == -y for x, y in zip(d1, d2)):
                edges = [edges[e] for e in range(len(edges)) if e not in inc]
                edges.append((a, b, w1))
                changed = True
                break

    used = sorted(
        {u for u, v, _w in edges} | {v for _u, v, _w in edges} | {v for v, _d, _w in rays}
    )
    remap = {old: new for new, old in enumerate(used)}
    vertices2 = [vertices[old] for old in used]
    edges2 = [(remap[u], remap[v], w) for u, v, w in edges]
    rays2 = [(remap[v], d, w) for v, d, w in rays]

    sources = _vertex_sources(vertices2, base, datas)
    return EmbeddedCurve(dim, vertices2, edges2, rays2, sources)


def _vertex_sources(vertices, base, datas):
    """Map embedded vertex index -> (plane curve name, vertex idx) lists."""
    coords = {p: k for k, p in enumerate(vertices)}
    sources = {}

    def note(p, src):
        k = coords.get(p)
        if k is not None:
            sources.setdefault(k, []).append(src)

    for vi, p in enumerate(base.vertices):
        on = any(_line_eval(d.wall_line, p) == 0 for d in datas)
        if not on:
            full = p + tuple(d.form.z_value(p) for d in datas)
            note(full, ("C", vi))
    for k, data in enumerate(datas):
        ai, zi = data.form.a_index(), data.form.z_index()
        for vi, nat in enumerate(data.curve.vertices):
            if _line_eval(data.bdry_line, nat) > 0:
                continue
            xy = data.form.hidden_xy(nat[ai])
            zs = []
            for j, d in enumerate(datas):
                zs.append(nat[zi] if j == k else d.form.z_value(xy))
            note(xy + tuple(zs), (("Ct", k), vi))
    return sources


# -- projection pushforward check -------------------------------------------


def _check_pushforward(curve, base, datas):
    xy_pieces = []
    for u, v, w in curve.edges:
        xy_pieces.append((curve.vertices[u], curve.vertices[v], None, w))
    for v, d, w in curve.rays:
        xy_pieces.append((curve.vertices[v], None, d, w))

    _compare_projection(xy_pieces, base, (0, 1))
    for k, data in enumerate(datas):
        ai = data.form.a_index()
        zk = 2 + k
        axes = (zk, 1) if data.form.kind == "x-shift" else (0, zk)
        _compare_projection(xy_pieces, data.curve, axes)


def _compare_projection(embedded_pieces, target, axes):
    """Exact pushforward: per supporting line, weighted interval sums of the
    projected pieces must match the target curve's weights."""
    lines = {}

    def linekey(p, d):
        dp = primitive(d)
        if dp < tuple(-x for x in dp):
            dp = tuple(-x for x in dp)
        c = dp[0] * p[1] - dp[1] * p[0]
        return (dp, c)

    def param(p, dp):
        return p[0] * dp[0] + p[1] * dp[1]

    def add(key, entry, which):
        lines.setdefault(key, ([], []))[which].append(entry)

    for a, b, w, _dc in target.edges:
        p, q = target.vertices[a], target.vertices[b]
        d = tuple(y - x for x, y in zip(p, q))
        key = linekey(p, d)
        dp = key[0]
        t0, t1 = param(p, dp), param(q, dp)
        add(key, (min(t0, t1), max(t0, t1), w), 0)
    for v, d, w, _dc in target.rays:
        p = target.vertices[v]
        key = linekey(p, d)
        dp = key[0]
        t0 = param(p, dp)
        up = d[0] * dp[0] + d[1] * dp[1] > 0
        add(key, (t0, inf, w) if up else (-inf, t0, w), 0)

    for p0, p1, rdir, w in embedded_pieces:
        pa = (p0[axes[0]], p0[axes[1]])
        if rdir is not None:
            dd = (rdir[axes[0]], rdir[axes[1]])
            if dd == (0, 0):
                continue
            full = primitive(rdir)
            from math import gcd

            idx = gcd(abs(dd[0]), abs(dd[1]))
            key = linekey(pa, dd)
            dp = key[0]
            t0 = param(pa, dp)
            up = dd[0] * dp[0] + dd[1] * dp[1] > 0
            add(key, (t0, inf, w * idx) if up else (-inf, t0, w * idx), 1)
        else:
            pb = (p1[axes[0]], p1[axes[1]])
            if pa == pb:
                continue
            fulld = primitive(tuple(b - a for a, b in zip(p0, p1)))
            dd = (fulld[axes[0]], fulld[axes[1]])
            from math import gcd

            idx = gcd(abs(dd[0]), abs(dd[1]))
            key = linekey(pa, dd)
            dp = key[0]
            t0, t1 = param(pa, dp), param(pb, dp)
            add(key, (min(t0, t1), max(t0, t1), w * idx), 1)

    for key, (tgt, proj) in lines.items():
        pts = set()
        neg = pos = False
        for lo, hi, _w in tgt + proj:
            if isinf(lo):
                neg = True
            else:
                pts.add(lo)
            if isinf(hi):
                pos = True
            else:
                pts.add(hi)
        for lo, hi in _intervals(pts, neg, pos):
            t = _mid(lo, hi)
            wt = sum(w for a, b, w in tgt if a < t < b)
            wp = sum(w for a, b, w in proj if a < t < b)
            if wt != wp:
                raise InconsistentProjections(
                    "pushforward mismatch on line %s over (%s, %s): %s vs %s"
                    % (key, lo, hi, wt, wp)
                )


# -- naive modification (no cancellation) ------------------------------------


def naive_modification(curveq, form):
    """Bend the curve onto the graph of the tropical line and attach
    downward ends at transversal wall crossings.  Requires that no edge or
    ray lies inside the wall."""
    wall = form.wall()
    pieces = split_at_line(curve_pieces(curveq), wall)
    out = []
    crossings = {}
    for pc in pieces:
        if piece_side(pc, wall) == 0:
            raise InconsistentProjections(
                "curve meets the wall in a segment; no naive modification"
            )
        out.append(_lift_piece(pc, [_NaiveData(form)]))
        for p in (pc.p0,) if pc.is_ray() else (pc.p0, pc.p1):
            if _line_eval(wall, p) == 0:
                d = pc.direction()
                kink = abs(d[0] * wall[0] + d[1] * wall[1])
                key = p
                crossings[key] = crossings.get(key, 0) + pc.weight * kink
    for p, tot in crossings.items():
        if tot % 2:
            raise InconsistentProjections("odd crossing weight at %s" % (p,))
        z = form.z_value(p)
        down = (0, 0, -1)
        out.append(
            Piece(p + (z,), direction=down, weight=tot // 2, tag="down")
        )
    return _assemble(3, out, curveq, [_NaiveData(form)])


class _NaiveData:
    def __init__(self, form):
        self.form = form
        self.wall_line = form.wall()


def curves_equal(c1, c2):
    """Exact equality of embedded curves as weighted piece sets."""
    def canon(c):
        es = set()
        for u, v, w in c.edges:
            a, b = sorted((c.vertices[u], c.vertices[v]))
            es.add((a, b, w))
        rs = {(c.vertices[v], d, w) for v, d, w in c.rays}
        return es, rs

    return canon(c1) == canon(c2)


# -- skeleton extraction ------------------------------------------------------


def embedded_skeleton(curve):
    """The bounded part as a MetricGraph; rays become legs so the forgetful
    map shrinks the unbounded forest."""
    from .graphs import MetricGraph

    n = len(curve.vertices)
    genera = [0] * n
    edges = [
        (u, v, lattice_length(curve.vertices[u], curve.vertices[v]))
        for u, v, _w in curve.edges
    ]
    legs = [v for v, _d, _w in curve.rays]
    return MetricGraph(genera, edges, legs)


def skeleton_support(curve):
    """(edge index set, vertex index set) of the minimal-skeleton support.

    Strips rays and then genus-0 leaves iteratively; what remains carries the
    metric skeleton (2-valent smoothing does not change the support).
    """
    alive_edges = set(range(len(curve.edges)))
    alive_vertices = set(range(len(curve.vertices)))

    def degree(v, edges):
        return sum(1 for e in edges if v in curve.edges[e][:2])

    changed = True
    while changed:
        changed = False
        for v in list(alive_vertices):
            d = degree(v, alive_edges)
            if d == 0 and len(alive_vertices) > 1:
                alive_vertices.discard(v)
                changed = True
            elif d == 1:
                alive_vertices.discard(v)
                for e in list(alive_edges):
                    if v in curve.edges[e][:2]:
                        alive_edges.discard(e)
                changed = True
    return alive_edges, alive_vertices
