"""Plane tropical curves dual to regular subdivisions of the Newton polygon.

Max convention throughout: a coefficient a_ij lifts the support point
(i, j) to height -val(a_ij) and the subdivision is the projection of the
upper hull.  The curve is the corner locus of
max_ij ( -val(a_ij) + i*X + j*Y ).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .series import PuiseuxSeries, ZERO

__all__ = [
    "PuiseuxPolynomial",
    "DualSubdivision",
    "PlaneTropicalCurve",
    "FaithfulnessReport",
    "EmptySupport",
    "DegenerateSupport",
    "regular_subdivision",
    "tropical_curve",
    "faithfulness_report",
    "initial_form",
    "initial_form_certified",
    "lattice_length",
    "primitive",
]


class EmptySupport(ValueError):
    pass


class DegenerateSupport(ValueError):
    """Support does not span the plane; no dual curve in this model."""


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class PuiseuxPolynomial:
    """Bivariate polynomial with PuiseuxSeries coefficients, sparse support."""

    def __init__(self, support):
        clean = {}
        for (i, j), c in dict(support).items():
            if not isinstance(c, PuiseuxSeries):
                c = PuiseuxSeries([(0, c)])
            if c.is_exact_zero():
                continue
            clean[(int(i), int(j))] = c
        self.support = clean

    def coefficient(self, i, j):
        return self.support.get((i, j), ZERO)

    def points(self):
        return sorted(self.support)

    def degree(self):
        return max(i + j for i, j in self.support)

    def newton_polygon(self):
        """Vertices of the convex hull of the support, counterclockwise."""
        if not self.support:
            raise EmptySupport("polynomial has no support")
        return convex_hull(list(self.support))

    def lifts(self):
        """Map (i, j) -> -val(a_ij).  Raises PrecisionExhausted if undecidable."""
        return {p: -c.val() for p, c in self.support.items()}

    def gauge(self, u, v, w):
        """Multiply a_ij by t^(u*i + v*j + w): translates the curve by (-u, -v)."""
        return PuiseuxPolynomial(
            {
                (i, j): c.shift(_frac(u) * i + _frac(v) * j + _frac(w))
                for (i, j), c in self.support.items()
            }
        )

    def __eq__(self, other):
        return isinstance(other, PuiseuxPolynomial) and self.support == other.support

    def to_json(self):
        return {
            "monomials": [
                {"i": i, "j": j, "coeff": c.to_json()}
                for (i, j), c in sorted(self.support.items())
            ]
        }

    @staticmethod
    def from_json(data):
        return PuiseuxPolynomial(
            {
                (m["i"], m["j"]): PuiseuxSeries.from_json(m["coeff"])
                for m in data["monomials"]
            }
        )


# -- small exact 2d geometry helpers ------------------------------------


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Counterclockwise hull vertices (collinear interior points dropped)."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return hull


def primitive(vec):
    """Primitive integer vector parallel to a rational vector, same direction."""
    fr = [_frac(v) for v in vec]
    if all(v == 0 for v in fr):
        raise ValueError("zero vector has no direction")
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(v // g for v in ints)


def lattice_length(p, q):
    """Rational scale L with q - p = L * primitive direction."""
    delta = [_frac(b) - _frac(a) for a, b in zip(p, q)]
    prim = primitive(delta)
    for d, m in zip(delta, prim):
        if m:
            return d / m
    raise ValueError("degenerate segment")


class DualSubdivision:
    """Cells of the regular subdivision induced by the lift, plus 1-cells."""

    def __init__(self, cells, lift, polygon):
        # cells: list of (frozenset(points on the cell), (alpha, beta, gamma))
        self.cells = cells
        self.lift = lift
        self.polygon = polygon

    def cell_points(self, k):
        return self.cells[k][0]

    def cell_hull(self, k):
        return convex_hull(list(self.cells[k][0]))

    def interior_one_cells(self):
        """(cell_a, cell_b, endpoints) for 1-cells shared by two 2-cells."""
        out = []
        n = len(self.cells)
        for a in range(n):
            pa = self.cells[a][0]
            for b in range(a + 1, n):
                shared = pa & self.cells[b][0]
                if len(shared) >= 2:
                    hull = convex_hull(list(shared))
                    if len(hull) == 2:
                        out.append((a, b, tuple(hull)))
        return out

    def boundary_one_cells(self):
        """(cell, endpoints) for 1-cells on the Newton polygon boundary."""
        interior = set()
        for a, b, ends in self.interior_one_cells():
            interior.add(frozenset(ends))
        out = []
        for k, (pts, _phi) in enumerate(self.cells):
            hull = convex_hull(list(pts))
            m = len(hull)
            for idx in range(m):
                p, q = hull[idx], hull[(idx + 1) % m]
                if frozenset((p, q)) in interior:
                    continue
                if _on_polygon_boundary(self.polygon, p, q):
                    out.append((k, (p, q)))
        return out


def _on_polygon_boundary(polygon, p, q):
    m = len(polygon)
    for idx in range(m):
        a, b = polygon[idx], polygon[(idx + 1) % m]
        if cross(a, b, p) == 0 and cross(a, b, q) == 0:
            if _within(a, b, p) and _within(a, b, q):
                return True
    return False


def _within(a, b, p):
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def regular_subdivision(poly):
    """Upper-hull subdivision of the lifted support.

    Works by enumerating candidate supporting planes through point triples
    and keeping those that dominate the whole lifted configuration; supports
    here have at most 15 points so this is cheap and exact.
    """
    if not poly.support:
        raise EmptySupport("polynomial has no support")
    lift = poly.lifts()
    pts = sorted(lift)
    polygon = convex_hull(pts)
    if len(polygon) < 3:
        raise DegenerateSupport("support hull is not two-dimensional")

    seen = {}
    n = len(pts)
    for a in range(n):
        pa = pts[a]
        for b in range(a + 1, n):
            pb = pts[b]
            for c in range(b + 1, n):
                pc = pts[c]
                det = cross(pa, pb, pc)
                if det == 0:
                    continue
                # plane z = alpha*x + beta*y + gamma through the lifted triple
                x1, y1 = pa
                x2, y2 = pb
                x3, y3 = pc
                z1, z2, z3 = lift[pa], lift[pb], lift[pc]
                alpha = Fraction(
                    (z2 - z1) * (y3 - y1) - (z3 - z1) * (y2 - y1), det
                )
                beta = Fraction(
                    (x2 - x1) * (z3 - z1) - (x3 - x1) * (z2 - z1), det
                )
                gamma = z1 - alpha * x1 - beta * y1
                key = (alpha, beta, gamma)
                if key in seen:
                    continue
                ok = True
                for p in pts:
                    if alpha * p[0] + beta * p[1] + gamma < lift[p]:
                        ok = False
                        break
                if ok:
                    seen[key] = frozenset(
                        p
                        for p in pts
                        if alpha * p[0] + beta * p[1] + gamma == lift[p]
                    )

    cells = []
    for phi, members in seen.items():
        if len(convex_hull(list(members))) >= 3:
            cells.append((members, phi))
    cells.sort(key=lambda c: tuple(sorted(c[0])))

    # the cells must tile the polygon: compare total doubled area
    poly_area = _doubled_area(polygon)
    cell_area = sum(_doubled_area(convex_hull(list(m))) for m, _ in cells)
    if poly_area != cell_area:
        raise DegenerateSupport(
            "subdivision cells do not tile the Newton polygon "
            "(%s vs %s)" % (cell_area, poly_area)
        )
    return DualSubdivision(cells, lift, polygon)


def _doubled_area(hull):
    s = 0
    for k in range(1, len(hull) - 1):
        s += cross(hull[0], hull[k], hull[k + 1])
    return abs(s)


class PlaneTropicalCurve:
    """Vertices, bounded edges and rays dual to a regular subdivision.

    vertices[k] = (x, y) with dual 2-cell subdivision.cells[k];
    edges: (va, vb, weight, dual 1-cell endpoints);
    rays: (v, primitive direction, weight, dual 1-cell endpoints).
    """

    def __init__(self, subdivision, vertices, edges, rays):
        self.subdivision = subdivision
        self.vertices = vertices
        self.edges = edges
        self.rays = rays

    def vertex_valence(self, k):
        n = 0
        for a, b, _w, _d in self.edges:
            if k in (a, b):
                n += 1
        for v, _d, _w, _dc in self.rays:
            if v == k:
                n += 1
        return n

    def edge_length(self, e):
        va, vb, _w, _d = self.edges[e]
        return lattice_length(self.vertices[va], self.vertices[vb])

    def edge_weight_at(self, e):
        return self.edges[e][2]

    def check_balancing(self):
        for k in range(len(self.vertices)):
            total = [Fraction(0), Fraction(0)]
            for a, b, w, _d in self.edges:
                if a == k or b == k:
                    other = self.vertices[b if a == k else a]
                    here = self.vertices[k]
                    d = primitive((other[0] - here[0], other[1] - here[1]))
                    total[0] += w * d[0]
                    total[1] += w * d[1]
            for v, d, w, _dc in self.rays:
                if v == k:
                    total[0] += w * d[0]
                    total[1] += w * d[1]
            if total != [0, 0]:
                raise AssertionError(
                    "balancing fails at vertex %d: %s" % (k, total)
                )
        return True

    def betti_number(self):
        """First Betti number of the bounded part (rays ignored)."""
        verts = set()
        for a, b, _w, _d in self.edges:
            verts.add(a)
            verts.add(b)
        if not verts:
            return 0
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comp = len(verts)
        for a, b, _w, _d in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                comp -= 1
        return len(self.edges) - len(verts) + comp


def _cell_vertex(cell_points, phi):
    """Point of R^2 where all monomials of the cell tie (interior max)."""
    pts = sorted(cell_points)
    p0 = pts[0]
    alpha, beta, _gamma = phi
    # monomial values i*X + j*Y + w equal on the cell <=> (X, Y) = (-alpha-ish);
    # for lift on plane z = alpha x + beta y + gamma the tie point is
    # X = -alpha, Y = -beta... check: value = w(p) + pX + qY with
    # w(p) = alpha p + beta q + gamma, constant iff X = -alpha, Y = -beta.
    return (-alpha, -beta)


def tropical_curve(poly):
    """Dual curve of the regular subdivision (max convention)."""
    sub = regular_subdivision(poly)
    vertices = [_cell_vertex(pts, phi) for pts, phi in sub.cells]

    edges = []
    for a, b, ends in sub.interior_one_cells():
        w = int(lattice_length(ends[0], ends[1]))
        edges.append((a, b, w, ends))

    # counterclockwise boundary orientation for ray directions
    polygon = sub.polygon
    rays = []
    for k, (p, q) in sub.boundary_one_cells():
        # orient (p, q) along the ccw boundary
        m = len(polygon)
        oriented = None
        for idx in range(m):
            a, b = polygon[idx], polygon[(idx + 1) % m]
            if cross(a, b, p) == 0 and cross(a, b, q) == 0:
                dv = (b[0] - a[0], b[1] - a[1])
                dpq = (q[0] - p[0], q[1] - p[1])
                oriented = (p, q) if dv[0] * dpq[1] == dv[1] * dpq[0] and (
                    dpq[0] * dv[0] + dpq[1] * dv[1]
                ) > 0 else (q, p)
                break
        if oriented is None:
            raise AssertionError("boundary cell not on polygon boundary")
        dx = oriented[1][0] - oriented[0][0]
        dy = oriented[1][1] - oriented[0][1]
        direction = primitive((dy, -dx))
        w = int(lattice_length(p, q))
        rays.append((k, direction, w, (p, q)))

    curve = PlaneTropicalCurve(sub, vertices, edges, rays)
    curve.check_balancing()
    return curve


class FaithfulnessReport:
    """Weight>1 bounded edges plus vertices without a unimodular dual triangle."""

    def __init__(self, heavy_edges, flagged_vertices, undecided_vertices):
        self.heavy_edges = heavy_edges
        self.flagged_vertices = flagged_vertices
        self.undecided_vertices = undecided_vertices

    def is_empty(self):
        return not (
            self.heavy_edges or self.flagged_vertices or self.undecided_vertices
        )

    def to_json(self):
        return {
            "heavy_edges": self.heavy_edges,
            "flagged_vertices": self.flagged_vertices,
            "undecided_vertices": self.undecided_vertices,
        }


def faithfulness_report(curve):
    heavy = [e for e, (_a, _b, w, _d) in enumerate(curve.edges) if w > 1]
    flagged, undecided = [], []
    for k in range(len(curve.vertices)):
        hull = curve.subdivision.cell_hull(k)
        valence = curve.vertex_valence(k)
        if valence > 3:
            undecided.append(k)
        elif len(hull) != 3 or _doubled_area(hull) != 1:
            flagged.append(k)
    return FaithfulnessReport(heavy, flagged, undecided)


# -- initial forms and vertex certificates -------------------------------


def initial_form(poly, cell_points):
    """Leading coefficients of the monomials on a subdivision cell.

    Returns {(i, j): rational leading coefficient}.
    """
    out = {}
    for p in cell_points:
        e, c = poly.support[p].leading()
        out[p] = c
    return out


def initial_form_certified(form):
    """True iff the initial form is certified irreducible over the algebraic
    closure (sufficient checks only: unimodular triangle, linearity in one
    variable, or quadratic with non-square discriminant)."""
    pts = sorted(form)
    hull = convex_hull(list(pts))
    if len(hull) == 3 and _doubled_area(hull) == 1:
        return True
    # strip the common monomial factor
    imin = min(p[0] for p in pts)
    jmin = min(p[1] for p in pts)
    shifted = {(i - imin, j - jmin): c for (i, j), c in form.items()}
    for axis in (0, 1):
        deg = max(p[axis] for p in shifted)
        if deg == 1 and _content_free(shifted, axis):
            return True
        if deg == 2:
            ok = _quadratic_irreducible(shifted, axis)
            if ok is not None:
                return ok
    return False


def _collect(form, axis, power):
    """Coefficient of (main variable)^power as a dict over the other variable."""
    out = {}
    for (i, j), c in form.items():
        main, other = (i, j) if axis == 0 else (j, i)
        if main == power:
            out[other] = c
    return out


def _poly_gcd_deg(a, b):
    """Degree of gcd of two rational univariate polynomials given as dicts."""
    pa = _to_coeffs(a)
    pb = _to_coeffs(b)
    while pb:
        pa, pb = pb, _poly_mod(pa, pb)
    return len(pa) - 1 if pa else -1


def _to_coeffs(d):
    if not d:
        return []
    deg = max(d)
    out = [Fraction(0)] * (deg + 1)
    for k, c in d.items():
        out[k] = Fraction(c)
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_mod(a, b):
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        f = a[-1] / lb
        for k in range(db + 1):
            a[shift + k] -= f * b[k]
        while a and a[-1] == 0:
            a.pop()
    return a


def _min_exp(d):
    return min(d) if d else None


def _content_free(form, axis):
    """For a form linear in the axis variable A*x + B: irreducible iff the
    two coefficient polynomials (monomial factors stripped) are coprime."""
    A = _collect(form, axis, 1)
    B = _collect(form, axis, 0)
    if not A or not B:
        return False
    sa, sb = _min_exp(A), _min_exp(B)
    A = {k - sa: c for k, c in A.items()}
    B = {k - sb: c for k, c in B.items()}
    return _poly_gcd_deg(A, B) == 0


def _quadratic_irreducible(form, axis):
    """Quadratic A x^2 + B x + C over Q[y^+-]: irreducible over the closure
    iff the discriminant is not a Laurent square.  Returns None when the
    content test is inconclusive."""
    A = _collect(form, axis, 2)
    B = _collect(form, axis, 1)
    C = _collect(form, axis, 0)
    if not A or not C:
        return None
    # content must be trivial: gcd(A, B, C) free of non-monomial factors
    sa = _min_exp(A)
    Ad = {k - sa: c for k, c in A.items()}
    sc = _min_exp(C)
    Cd = {k - sc: c for k, c in C.items()}
    if _poly_gcd_deg(Ad, Cd) != 0:
        if not B:
            return None
        sb = _min_exp(B)
        Bd = {k - sb: c for k, c in B.items()}
        if _poly_gcd_deg(Ad, Bd) != 0 and _poly_gcd_deg(Bd, Cd) != 0:
            return None
    disc = _poly_sub(_poly_sq(B), _poly_scale(_poly_mul(A, C), 4))
    if not disc:
        return False  # perfect square discriminant (zero): reducible
    k0 = _min_exp(disc)
    shifted = {k - k0: c for k, c in disc.items()}
    if k0 % 2 != 0:
        return True  # odd monomial order: never a Laurent square
    return not _is_square_over_closure(shifted)


def _poly_mul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            out[ka + kb] = out.get(ka + kb, Fraction(0)) + ca * cb
    return {k: c for k, c in out.items() if c != 0}


def _poly_sq(a):
    return _poly_mul(a, a) if a else {}


def _poly_scale(a, s):
    return {k: c * s for k, c in a.items()}


def _poly_sub(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, Fraction(0)) - c
    return {k: c for k, c in out.items() if c != 0}


def _is_square_over_closure(d):
    """p with p(0) != 0 is a square over the closure iff all root
    multiplicities are even, iff p = lead * q^2 with q monic rational
    (the squarefree decomposition is rational)."""
    coeffs = _to_coeffs(d)
    deg = len(coeffs) - 1
    if deg == 0:
        return True
    return _square_check(coeffs)


def _square_check(coeffs):
    deg = len(coeffs) - 1
    if deg % 2 == 1:
        return False
    h = deg // 2
    lead = coeffs[-1]
    # q = sqrt(lead) x^h + ...: work with monic normalization p / lead
    p = [c / lead for c in coeffs]
    q = [Fraction(0)] * (h + 1)
    q[h] = Fraction(1)
    for k in range(h - 1, -1, -1):
        # coefficient of x^(h+k) in q^2 must match p
        s = Fraction(0)
        for a in range(k + 1, h):
            b = h + k - a
            if 0 <= b <= h:
                s += q[a] * q[b]
        q[k] = (p[h + k] - s) / 2
    sq = [Fraction(0)] * (deg + 1)
    for a in range(h + 1):
        for b in range(h + 1):
            sq[a + b] += q[a] * q[b]
    return sq == p
