"""Independent brute-force oracles used to derive expected test values.

Everything here is deliberately naive (box enumeration, schoolbook row
reduction, exhaustive search) and shares no code with the library paths it
is used to check.
"""

from fractions import Fraction
from itertools import product
from math import gcd


def schoolbook_hnf(rows):
    """Row Hermite form by direct integer row reduction (no transform)."""
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return ()
    ncols = len(rows[0])
    out = []
    work = [r[:] for r in rows]
    for col in range(ncols):
        nz = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not nz:
            work = rest
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            base = nz[0]
            reduced = [base]
            for r in nz[1:]:
                q = r[col] // base[col]
                r2 = [a - q * b for a, b in zip(r, base)]
                if r2[col] != 0:
                    reduced.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = reduced
        pivot = nz[0]
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        for prev in out:
            q = prev[col] // pivot[col]
            if q:
                prev[:] = [a - q * b for a, b in zip(prev, pivot)]
        out.append(pivot)
        work = rest
    return tuple(tuple(r) for r in out)


def gcd_of_minors(mat, k):
    """GCD of all k x k minors (0 when all vanish)."""
    rows = [list(map(int, r)) for r in mat]
    m, n = len(rows), len(rows[0]) if rows else 0
    from itertools import combinations

    def det(sub):
        size = len(sub)
        if size == 1:
            return sub[0][0]
        total = 0
        for j in range(size):
            minor = [r[:j] + r[j + 1 :] for r in sub[1:]]
            total += (-1) ** j * sub[0][j] * det(minor)
        return total

    g = 0
    for ri in combinations(range(m), k):
        for ci in combinations(range(n), k):
            sub = [[rows[i][j] for j in ci] for i in ri]
            g = gcd(g, abs(det(sub)))
    return g


def elementary_divisors_by_minors(mat):
    """Invariant factors d_i = gcd_i / gcd_{i-1} of an integer matrix."""
    rows = [r for r in mat if any(r)]
    if not rows:
        return ()
    bound = min(len(rows), len(rows[0]))
    out = []
    prev = 1
    for k in range(1, bound + 1):
        g = gcd_of_minors(rows, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def lattice_points_in_box(basis, box):
    """All integer combinations of basis rows landing in [-box, box]^n."""
    if not basis:
        return {tuple(0 for _ in range(box * 0))}
    n = len(basis[0])
    # coefficient bound: crude but safe for small examples
    coeff = box * max(1, max(abs(x) for row in basis for x in row)) * len(basis)
    pts = set()
    for coeffs in product(range(-coeff, coeff + 1), repeat=len(basis)):
        v = tuple(sum(c * row[i] for c, row in zip(coeffs, basis)) for i in range(n))
        if all(abs(x) <= box for x in v):
            pts.add(v)
    return pts


def saturation_by_box(basis, ambient, box=6):
    """Primitive integer points of the rational span inside a box."""
    if not basis:
        return set()
    pts = set()
    for v in product(range(-box, box + 1), repeat=ambient):
        if all(x == 0 for x in v):
            continue
        # v in span <=> rank of stacked matrix does not grow
        if _rank([list(b) for b in basis]) == _rank([list(b) for b in basis] + [list(v)]):
            pts.add(v)
    return pts


def _rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def coset_count(sub_basis, super_basis, box=8):
    """Index [super : sub] by counting residues in a fundamental domain.

    Enumerates super-lattice points in a box and counts equivalence classes
    modulo the sublattice; only valid when the index is finite and small.
    """
    ambient = len(super_basis[0])
    supers = lattice_points_in_box(super_basis, box)
    subs = lattice_points_in_box(sub_basis, 3 * box)
    classes = []
    for v in sorted(supers):
        found = False
        for c in classes:
            d = tuple(a - b for a, b in zip(v, c))
            if d in subs:
                found = True
                break
        if not found:
            classes.append(v)
    return len(classes)


def exhaustive_member(generators, v, bound=10):
    """Nonnegative combinations with coefficients up to ``bound``."""
    gens = [g for g in generators if any(g)]
    if all(x == 0 for x in v):
        return True
    for coeffs in product(range(bound + 1), repeat=len(gens)):
        s = tuple(
            sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(len(v))
        )
        if s == tuple(v):
            return True
    return False


def grid_slice_nonempty(halfspaces, equations, psi, directions, steps=24, span=6):
    """Sample the affine slice on a rational grid, testing strict positivity."""
    if not directions:
        ok = all(
            sum(h[i] * psi[i] for i in range(len(psi))) > 0 for h in halfspaces
        ) and all(
            sum(e[i] * psi[i] for i in range(len(psi))) == 0 for e in equations
        )
        return ok
    grid = [Fraction(span) * Fraction(2 * i - steps, steps) for i in range(steps + 1)]
    for coeffs in product(grid, repeat=len(directions)):
        pt = [
            Fraction(psi[i]) + sum(c * d[i] for c, d in zip(coeffs, directions))
            for i in range(len(psi))
        ]
        if all(sum(h[i] * pt[i] for i in range(len(pt))) > 0 for h in halfspaces) and all(
            sum(e[i] * pt[i] for i in range(len(pt))) == 0 for e in equations
        ):
            return True
    return False


def segment_integer_points(a, b):
    """Integer points on the segment [a, b] inclusive."""
    diff = tuple(y - x for x, y in zip(a, b))
    g = 0
    for x in diff:
        g = gcd(g, abs(x))
    if g == 0:
        return [tuple(a)]
    step = tuple(x // g for x in diff)
    return [tuple(x + k * s for x, s in zip(a, step)) for k in range(g + 1)]


def projected_ray_walls(fan, projection_matrix, sub_basis):
    """Rank-2/rank-1 oracle: quotient walls are the projected uncollapsed rays."""
    walls = set()
    for c in fan.cones:
        if c.dim != 1:
            continue
        ray = c.generators[0]
        img = sum(projection_matrix[0][i] * ray[i] for i in range(len(ray)))
        if img != 0:
            walls.add(1 if img > 0 else -1)
    return walls
