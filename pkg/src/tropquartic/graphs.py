"""Abstract metric graphs with vertex genus, and the genus-3 type zoo.

The five maximal combinatorial types of genus 3 are tagged 000 (K4),
020 (two bananas joined by two edges), 111 (banana + loop), 212 (two
loops + banana), 303 (three lollipops on a common vertex).  Edge slot
names a..f follow one fixed template per type; classify() returns the
canonical length tuple under the type's automorphisms.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

__all__ = [
    "MetricGraph",
    "Disconnected",
    "GenusZeroInput",
    "NotMaximal",
    "TYPE_TAGS",
    "type_template",
    "classify",
    "graphs_isomorphic",
]


class Disconnected(ValueError):
    pass


class GenusZeroInput(ValueError):
    pass


class NotMaximal(ValueError):
    pass


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class MetricGraph:
    """vertices: list of genera; edges: (u, v, length); legs: vertex ids."""

    def __init__(self, genera, edges, legs=()):
        self.genera = [int(g) for g in genera]
        self.edges = [(int(u), int(v), _frac(ln)) for u, v, ln in edges]
        self.legs = [int(v) for v in legs]
        n = len(self.genera)
        for u, v, ln in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge endpoint out of range")
            if ln <= 0:
                raise ValueError("edge lengths must be positive")
        for v in self.legs:
            if not 0 <= v < n:
                raise ValueError("leg endpoint out of range")

    # -- structure ---------------------------------------------------------

    def n_vertices(self):
        return len(self.genera)

    def valence(self, v, with_legs=True):
        n = 0
        for u, w, _ln in self.edges:
            if u == v:
                n += 1
            if w == v:
                n += 1
        if with_legs:
            n += sum(1 for x in self.legs if x == v)
        return n

    def incident(self, v):
        return [
            k for k, (u, w, _ln) in enumerate(self.edges) if v in (u, w)
        ]

    def is_connected(self):
        n = len(self.genera)
        if n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for u, w, _ln in self.edges:
                for a, b in ((u, w), (w, u)):
                    if a == x and b not in seen:
                        seen.add(b)
                        stack.append(b)
        return len(seen) == n

    def betti(self):
        if not self.is_connected():
            raise Disconnected("graph is not connected")
        return len(self.edges) - len(self.genera) + 1

    def genus(self):
        return self.betti() + sum(self.genera)

    # -- forgetful normalization --------------------------------------------

    def forgetful(self):
        """Minimal skeleton: no legs, no genus-0 leaves, no smoothable
        2-valent genus-0 vertices.  Genus must be positive."""
        if self.genus() < 1:
            raise GenusZeroInput("forgetful map degenerates genus-0 graphs")
        genera = list(self.genera)
        edges = [list(e) for e in self.edges]

        changed = True
        while changed:
            changed = False
            n = len(genera)
            val = [0] * n
            for u, v, _ln in edges:
                val[u] += 1
                val[v] += 1
            # genus-0 leaves go first
            leaf = next(
                (v for v in range(n) if val[v] == 1 and genera[v] == 0), None
            )
            if leaf is not None:
                edges = [e for e in edges if leaf not in (e[0], e[1])]
                genera, edges = _drop_vertex(genera, edges, leaf)
                changed = True
                continue
            # smooth 2-valent genus-0 vertices (not loop-based)
            for v in range(n):
                if genera[v] != 0 or val[v] != 2:
                    continue
                inc = [k for k, e in enumerate(edges) if v in (e[0], e[1])]
                if len(inc) == 1:
                    continue  # a loop at v: keep (circle component)
                k1, k2 = inc
                e1, e2 = edges[k1], edges[k2]
                a = e1[0] if e1[1] == v else e1[1]
                b = e2[0] if e2[1] == v else e2[1]
                newlen = e1[2] + e2[2]
                edges = [e for k, e in enumerate(edges) if k not in (k1, k2)]
                edges.append([a, b, newlen])
                genera, edges = _drop_vertex(genera, edges, v)
                changed = True
                break
        out = MetricGraph(genera, [tuple(e) for e in edges], ())
        assert out.genus() == self.genus()
        return out

    # -- dunder / io ---------------------------------------------------------

    def __repr__(self):
        return "MetricGraph(%r, %r, legs=%r)" % (self.genera, self.edges, self.legs)

    def to_json(self):
        return {
            "vertices": [{"genus": g} for g in self.genera],
            "edges": [
                {"u": u, "v": v, "len": [ln.numerator, ln.denominator]}
                for u, v, ln in self.edges
            ],
            "legs": [{"v": v} for v in self.legs],
        }

    @staticmethod
    def from_json(data):
        return MetricGraph(
            [v.get("genus", 0) for v in data["vertices"]],
            [
                (e["u"], e["v"], Fraction(e["len"][0], e["len"][1]))
                for e in data["edges"]
            ],
            [l["v"] for l in data.get("legs", ())],
        )


def _drop_vertex(genera, edges, v):
    remap = {}
    out_g = []
    for x in range(len(genera)):
        if x == v:
            continue
        remap[x] = len(out_g)
        out_g.append(genera[x])
    out_e = [[remap[u], remap[w], ln] for u, w, ln in edges]
    return out_g, out_e


# -- the five maximal genus-3 types ---------------------------------------

TYPE_TAGS = ("000", "020", "111", "212", "303")

# template edge lists in slot order a, b, c, d, e, f
_TEMPLATES = {
    # K4 on P1..P4; triangle abc, d/e/f from P4
    "000": ((0, 2), (0, 1), (1, 2), (2, 3), (0, 3), (1, 3)),
    # bananas A=0,B=1 (a,b) and C=2,D=3 (e,f), joined by c: A-C, d: B-D
    "020": ((0, 1), (0, 1), (0, 2), (1, 3), (2, 3), (2, 3)),
    # banana A=0,B=1 (a,b); c: A-C, d: B-C; e: C-D; f: loop at D
    "111": ((0, 1), (0, 1), (0, 2), (1, 2), (2, 3), (3, 3)),
    # loop a at A=0; b: A-B; banana c,d: B-C; e: C-D; loop f at D
    "212": ((0, 0), (0, 1), (1, 2), (1, 2), (2, 3), (3, 3)),
    # center O=0; sticks a,c,e to 1,2,3 carrying loops b,d,f
    "303": ((0, 1), (1, 1), (0, 2), (2, 2), (0, 3), (3, 3)),
}


def type_template(tag, lengths):
    """MetricGraph of the given type with slot lengths (a, b, c, d, e, f)."""
    pairs = _TEMPLATES[tag]
    return MetricGraph(
        [0, 0, 0, 0],
        [(u, v, _frac(ln)) for (u, v), ln in zip(pairs, lengths)],
    )


def _constraints_ok(tag, L):
    a, b, c, d, e, f = L
    if tag == "000":
        # abc the longest triangle, b <= c <= a
        tri = a + b + c
        return (
            b <= c <= a
            and tri >= a + d + e
            and tri >= b + e + f
            and tri >= c + d + f
        )
    if tag == "020":
        return a <= b and c <= d and e <= f and a <= e
    if tag == "111":
        return a >= b and c <= d
    if tag == "212":
        return c <= d
    if tag == "303":
        return a >= c >= e
    raise ValueError(tag)


def _all_isomorphisms(template_edges, g):
    """Yield slot->edge-index assignments realizing the template in g."""
    n = 4
    edges_by_pair = {}
    for k, (u, v, _ln) in enumerate(g.edges):
        edges_by_pair.setdefault(frozenset((u, v)) if u != v else (u,), []).append(k)
    for perm in itertools.permutations(range(n)):
        need = {}
        for slot, (tu, tv) in enumerate(template_edges):
            iu, iv = perm[tu], perm[tv]
            key = frozenset((iu, iv)) if iu != iv else (iu,)
            need.setdefault(key, []).append(slot)
        ok = True
        for key, slots in need.items():
            if len(edges_by_pair.get(key, ())) != len(slots):
                ok = False
                break
        if not ok:
            continue
        # assign parallel edges in every order
        choices = []
        for key, slots in need.items():
            idxs = edges_by_pair[key]
            choices.append(
                [list(zip(slots, p)) for p in itertools.permutations(idxs)]
            )
        for combo in itertools.product(*choices):
            assignment = {}
            for part in combo:
                for slot, eidx in part:
                    assignment[slot] = eidx
            yield assignment


def classify(g):
    """(tag, canonical lengths, slot->edge assignment) for a maximal graph.

    Requires the forgetful-normalized form: trivalent, all vertex genera 0,
    genus 3.  Canonical order follows the per-type symmetry reduction with
    lexicographic tie-breaking.
    """
    if g.genus() != 3:
        raise NotMaximal("genus %s != 3" % g.genus())
    if any(gv != 0 for gv in g.genera):
        raise NotMaximal("positive vertex genus")
    if any(g.valence(v) != 3 for v in range(g.n_vertices())):
        raise NotMaximal("graph is not trivalent")
    if g.legs:
        raise NotMaximal("legs present; apply forgetful first")

    n_loops = sum(1 for u, v, _ln in g.edges if u == v)
    pair_counts = {}
    for u, v, _ln in g.edges:
        if u != v:
            key = frozenset((u, v))
            pair_counts[key] = pair_counts.get(key, 0) + 1
    n_parallel = sum(1 for c in pair_counts.values() if c == 2)
    tag = {
        (0, 0): "000",
        (0, 2): "020",
        (1, 1): "111",
        (2, 1): "212",
        (3, 0): "303",
    }.get((n_loops, n_parallel))
    if tag is None:
        raise NotMaximal(
            "unrecognized trivalent genus-3 structure (%d loops, %d parallel pairs)"
            % (n_loops, n_parallel)
        )

    best = None
    for assignment in _all_isomorphisms(_TEMPLATES[tag], g):
        L = tuple(g.edges[assignment[s]][2] for s in range(6))
        if _constraints_ok(tag, L) and (best is None or L < best[0]):
            best = (L, assignment)
    if best is None:
        raise AssertionError("no canonical labeling found for type %s" % tag)
    return tag, best[0], best[1]


def graphs_isomorphic(g1, g2):
    """Genus- and length-preserving isomorphism test (exact lengths)."""
    if g1.n_vertices() != g2.n_vertices() or len(g1.edges) != len(g2.edges):
        return False
    if sorted(g1.genera) != sorted(g2.genera):
        return False
    if sorted(ln for _u, _v, ln in g1.edges) != sorted(
        ln for _u, _v, ln in g2.edges
    ):
        return False
    n = g1.n_vertices()
    mult1 = _multiset_by_pair(g1)
    for perm in itertools.permutations(range(n)):
        if any(g1.genera[v] != g2.genera[perm[v]] for v in range(n)):
            continue
        mult2 = {}
        for u, v, ln in g2.edges:
            mult2.setdefault(frozenset((u, v)) if u != v else (u,), []).append(ln)
        ok = True
        for key, lens in mult1.items():
            if len(key) == 1:
                (u,) = key
                key2 = (perm[u],)
            else:
                u, v = tuple(key)
                key2 = frozenset((perm[u], perm[v]))
            if sorted(mult2.get(key2, ())) != sorted(lens):
                ok = False
                break
        if ok:
            return True
    return False


def _multiset_by_pair(g):
    out = {}
    for u, v, ln in g.edges:
        out.setdefault(frozenset((u, v)) if u != v else (u,), []).append(ln)
    return out
