"""Truncated formal group laws: the universal law over the Lazard ring,
logarithms over Q, and p-typical reduction.

Degrees are stored halved: a generator of algebraic degree i sits in
homotopy degree 2i.  The universal construction works over Q[m_1, m_2, ...]
with the generic logarithm l(x) = x + m_1 x^2 + m_2 x^3 + ...; integral
polynomial generators x_i of the Lazard ring are then extracted by a
lattice computation on the coefficients of the universal law.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Poly, PolyRing, Monomial, ONE, mon_deg, format_poly, format_monomial
from .series import Series, compose_univariate, reversion, derivative, integrate, multiplicative_inverse

# coefficient base tags
ZZ = "ZZ"
QQ = "QQ"


def zz_local(p: int) -> str:
    return f"ZZ_({p})"


def zz_mod(p: int, k: int) -> str:
    return f"ZZ/{p}^{k}"


def ff(p: int) -> str:
    return f"FF_{p}"


@dataclass
class GradedRingPresentation:
    """Graded commutative ring: generators with degrees, relations, truncated."""

    base: str
    generators: list[tuple[str, int]]
    relations: list[str]
    degree_bound: int

    def ring(self) -> PolyRing:
        names = [n for n, _ in self.generators]
        degs = [d for _, d in self.generators]
        return PolyRing(names, degs, self.degree_bound)

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "relations": list(self.relations),
            "degree_bound": self.degree_bound,
        }

    @staticmethod
    def from_json(obj: dict) -> "GradedRingPresentation":
        return GradedRingPresentation(
            base=obj["base"],
            generators=[(g["name"], g["degree"]) for g in obj["generators"]],
            relations=list(obj.get("relations", [])),
            degree_bound=obj["degree_bound"],
        )


class FGLAxiomError(Exception):
    pass


@dataclass
class FormalGroupLaw:
    """F(x, y) truncated at total x,y-degree degree_bound + 1.

    `series` maps (i, j) with i + j <= degree_bound + 1 to the coefficient
    a_ij as a Poly over presentation.ring().  Unitality, commutativity and
    associativity are checked symbolically up to the bound on construction.
    """

    presentation: GradedRingPresentation
    series: dict[tuple[int, int], Poly]
    check: bool = True
    classifying_images: list | None = None

    def __post_init__(self):
        if self.check:
            self.verify_axioms()

    @property
    def order(self) -> int:
        return self.presentation.degree_bound + 1

    def coefficient(self, i: int, j: int) -> Poly:
        return self.series.get((i, j), self.presentation.ring().zero())

    def as_series(self) -> Series:
        ring = self.presentation.ring()
        return Series(ring, 2, self.order,
                      {(i, j): c for (i, j), c in self.series.items()})

    def verify_axioms(self):
        ring = self.presentation.ring()
        order = self.order
        F = self.as_series()
        # F(x, 0) = x
        for (i, j), c in F.terms.items():
            if j == 0:
                if (i, j) != (1, 0) and not c.is_zero():
                    raise FGLAxiomError(f"F(x,0) has stray term x^{i}")
        if F.coefficient((1, 0)).terms != ring.one().terms:
            raise FGLAxiomError("F(x,0) != x")
        # commutativity
        for (i, j), c in F.terms.items():
            if F.coefficient((j, i)).terms != c.terms:
                raise FGLAxiomError(f"a_{i}{j} != a_{j}{i}")
        # associativity in three variables
        left = _subst_two(F, 0)   # F(F(x,y), z)
        right = _subst_two(F, 1)  # F(x, F(y,z))
        if left != right:
            raise FGLAxiomError("associativity fails below the bound")

    def to_json(self) -> dict:
        ring = self.presentation.ring()
        coeffs = []
        for (i, j) in sorted(self.series):
            c = self.series[(i, j)]
            if not c.is_zero():
                coeffs.append({"i": i, "j": j, "value": format_poly(c)})
        return {"presentation": self.presentation.to_json(), "coefficients": coeffs}


def _subst_two(F: Series, slot: int) -> Series:
    """F(F(x,y),z) for slot=0, F(x,F(y,z)) for slot=1, as trivariate series."""
    ring = F.ring
    order = F.order
    x = Series.variable(ring, 3, order, 0)
    y = Series.variable(ring, 3, order, 1)
    z = Series.variable(ring, 3, order, 2)

    def ev(a: Series, b: Series) -> Series:
        out = Series.zero(ring, 3, order)
        # evaluate F at (a, b) by monomial substitution with caches
        pa: dict[int, Series] = {0: None}  # type: ignore
        pb: dict[int, Series] = {}

        def pw(s: Series, n: int, cache: dict) -> Series:
            if n not in cache:
                cache[n] = s.pow(n)
            return cache[n]

        for (i, j), c in F.terms.items():
            term = Series(ring, 3, order, {(0, 0, 0): c})
            if i:
                term = term * pw(a, i, pa)
            if j:
                term = term * pw(b, j, pb)
            out = out + term
        return out

    if slot == 0:
        return ev(ev(x, y), z)
    return ev(x, ev(y, z))


# ---------------------------------------------------------------------------
# the universal law over Q[m_1, m_2, ...]

class UniversalFGL:
    """Generic-logarithm model of the universal formal group law.

    Ring: Q[m_1..m_bound] with deg m_i = i.  log(x) = x + sum m_i x^{i+1},
    F = exp(log x + log y).  Also computes integral Lazard generators
    x_1..x_bound together with the change of basis to the m's.
    """

    def __init__(self, bound: int):
        if bound < 1:
            raise ValueError("bound must be >= 1")
        self.bound = bound
        self.mring = PolyRing([f"m{i}" for i in range(1, bound + 1)],
                              list(range(1, bound + 1)), bound)
        order = bound + 1
        log_terms = {(1,): self.mring.one()}
        for i in range(1, bound + 1):
            log_terms[(i + 1,)] = self.mring.gen(i - 1)
        self.log = Series(self.mring, 1, order, log_terms)
        self.exp = reversion(self.log)
        x = Series.variable(self.mring, 2, order, 0)
        y = Series.variable(self.mring, 2, order, 1)
        lx = _eval_univariate(self.log, x)
        ly = _eval_univariate(self.log, y)
        self.F = _eval_univariate(self.exp, lx + ly)
        # Lazard lattice data per degree
        self._lattice_basis: dict[int, list[dict[Monomial, Fraction]]] = {}
        self._xgens: list[Poly] = []
        self._compute_integral_generators()

    # -- lattice machinery over the m-monomial basis ------------------------

    def _mon_basis(self, d: int) -> list[Monomial]:
        return self.mring.monomials_of_degree(d)

    def _vec(self, p: Poly, basis: list[Monomial]) -> list[Fraction]:
        idx = {m: i for i, m in enumerate(basis)}
        v = [Fraction(0)] * len(basis)
        for m, c in p.terms.items():
            v[idx[m]] = Fraction(c)
        return v

    def _compute_integral_generators(self):
        coeffs_by_degree: dict[int, list[Poly]] = {d: [] for d in range(1, self.bound + 1)}
        for (i, j), c in self.F.terms.items():
            d = i + j - 1
            if i >= 1 and j >= 1 and 1 <= d <= self.bound and not c.is_zero():
                coeffs_by_degree[d].append(c)
        basis_elems: dict[int, list[Poly]] = {}
        for d in range(1, self.bound + 1):
            basis = self._mon_basis(d)
            rows: list[list[Fraction]] = []
            polys: list[Poly] = []
            # decomposables: products of lattice basis elements of lower degrees
            for k in range(1, d):
                for pl in basis_elems.get(k, []):
                    for pr in basis_elems.get(d - k, []):
                        polys.append(pl * pr)
            n_dec = len(polys)
            polys.extend(coeffs_by_degree[d])
            rows = [self._vec(p, basis) for p in polys]
            lat_basis, lat_rows = _hnf_basis(rows)
            basis_elems[d] = [_poly_from_vec(self.mring, basis, v) for v in lat_basis]
            # quotient by decomposables to find the Lazard generator
            dec_rows = rows[:n_dec]
            gen_vec = _lattice_quotient_generator(lat_basis, dec_rows)
            xp = _poly_from_vec(self.mring, basis, gen_vec)
            # canonical sign: positive coefficient on the pure m_d monomial
            lead = Fraction(xp.coefficient(((d - 1, 1),)))
            if lead < 0:
                xp = xp.scale(-1)
            self._xgens.append(xp)
        self._lattice_basis = {
            d: [self._vec(p, self._mon_basis(d)) for p in basis_elems[d]]
            for d in basis_elems
        }

    def x_generator(self, n: int) -> Poly:
        """The integral Lazard generator x_n as a polynomial in the m's."""
        return self._xgens[n - 1]

    def x_ring(self) -> PolyRing:
        return PolyRing([f"x{i}" for i in range(1, self.bound + 1)],
                        list(range(1, self.bound + 1)), self.bound)

    def to_x_coordinates(self, p: Poly) -> Poly:
        """Rewrite an integral element of Q[m] in the x-generators.

        Raises if the result is not integral (which would mean p is not in
        the Lazard subring).
        """
        xr = self.x_ring()
        out = xr.zero()
        rem = p
        # by degree, peel off x-monomials
        degrees = sorted({mon_deg(m, self.mring.degrees) for m in p.terms})
        for d in degrees:
            comp = rem.degree_component(d)
            if comp.is_zero():
                continue
            xmons = xr.monomials_of_degree(d)
            cols = []
            for xm in xmons:
                q = self.mring.one()
                for g, e in xm:
                    q = q * self._xgens[g].pow(e)
                cols.append(self._vec(q, self._mon_basis(d)))
            target = self._vec(comp, self._mon_basis(d))
            sol = _solve_rational(cols, target)
            if sol is None:
                raise ValueError("element not in the span of x-monomials")
            for xm, c in zip(xmons, sol):
                if c:
                    if c.denominator != 1:
                        raise ValueError("element is not integral in the x-basis")
                    out = out + xr.monomial(xm, int(c))
        return out

    def presentation(self) -> GradedRingPresentation:
        return GradedRingPresentation(
            base=ZZ,
            generators=[(f"x{i}", i) for i in range(1, self.bound + 1)],
            relations=[],
            degree_bound=self.bound,
        )

    def fgl_in_x(self) -> FormalGroupLaw:
        pres = self.presentation()
        xr = pres.ring()
        series: dict[tuple[int, int], Poly] = {}
        for (i, j), c in self.F.terms.items():
            if c.is_zero():
                continue
            if i + j == 1:
                series[(i, j)] = xr.one()
            else:
                series[(i, j)] = _reindex(self.to_x_coordinates(c), xr)
        return FormalGroupLaw(pres, series)


def _reindex(p: Poly, ring: PolyRing) -> Poly:
    return Poly(ring, dict(p.terms))


def _poly_from_vec(ring: PolyRing, basis: list[Monomial], v: list[Fraction]) -> Poly:
    terms = {}
    for m, c in zip(basis, v):
        if c:
            terms[m] = c if c.denominator != 1 else int(c)
    return Poly(ring, terms)


def _eval_univariate(f: Series, g: Series) -> Series:
    return compose_univariate(f, g)


# -- exact rational/integer lattice helpers ---------------------------------

def _hnf_basis(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], int]:
    """Hermite-style basis of the Z-span of rational row vectors."""
    if not rows:
        return [], 0
    n = len(rows[0])
    # clear denominators by a global scale D, do integer HNF, scale back
    denom = 1
    for r in rows:
        for c in r:
            denom = denom * c.denominator // _gcd(denom, c.denominator)
    int_rows = [[int(c * denom) for c in r] for r in rows]
    hnf = _integer_hnf(int_rows)
    return [[Fraction(a, denom) for a in r] for r in hnf], denom


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _integer_hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form (non-negative pivots, reduced above)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    basis: list[list[int]] = []
    work = rows
    for col in range(n):
        pivots = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not pivots:
            work = rest
            continue
        # gcd-reduce rows against each other in this column
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            p0 = pivots[0]
            survivors = [p0]
            for r in pivots[1:]:
                q = r[col] // p0[col]
                rr = [a - q * b for a, b in zip(r, p0)]
                if rr[col] != 0:
                    survivors.append(rr)
                elif any(rr):
                    rest.append(rr)
            pivots = survivors
            if len(pivots) == 1:
                break
        piv = pivots[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        # reduce earlier basis rows above this pivot
        for b in basis:
            if b[col] != 0:
                q = b[col] // piv[col]
                for k in range(n):
                    b[k] -= q * piv[k]
        basis.append(list(piv))
        work = rest
    return basis


def _lattice_quotient_generator(lat_basis: list[list[Fraction]],
                                dec_rows: list[list[Fraction]]) -> list[Fraction]:
    """Generator of L/D where D (span of dec_rows) has corank 1 in L.

    Works in coordinates of lat_basis; uses Smith form over Z.  The class of
    the returned vector generates the quotient, which is required to be Z
    (Lazard's theorem); anything else is reported as a defect.
    """
    if not lat_basis:
        raise ValueError("empty lattice")
    k = len(lat_basis)
    # express dec_rows in lat_basis coordinates (rational solve, must be integral)
    dmat: list[list[int]] = []
    for r in dec_rows:
        sol = _solve_rational(lat_basis, r)
        if sol is None:
            raise ValueError("decomposable not in lattice")
        if any(c.denominator != 1 for c in sol):
            raise ValueError("decomposable has non-integral coordinates")
        dmat.append([int(c) for c in sol])
    if not dmat:
        if k != 1:
            raise ValueError("quotient not cyclic")
        return lat_basis[0]
    diag, _, v_inv_rows = _integer_smith(dmat, k)
    # quotient = Z^k / row span; invariant factors diag (padded with 0)
    free_idx = [i for i in range(k) if i >= len(diag) or diag[i] == 0]
    nontrivial = [d for d in diag if d not in (0, 1)]
    if len(free_idx) != 1 or nontrivial:
        raise ValueError(f"Lazard quotient defect: diag={diag}, free={len(free_idx)}")
    j = free_idx[0]
    # generator = row j of V^{-1} mapped through lat_basis
    coords = v_inv_rows[j]
    n = len(lat_basis[0])
    out = [Fraction(0)] * n
    for c, b in zip(coords, lat_basis):
        for t in range(n):
            out[t] += c * b[t]
    return out


def _integer_smith(rows: list[list[int]], ncols: int):
    """Smith normal form over Z. Returns (diagonal, U, Vinv_rows).

    A = U * D * V; we track V^{-1} rows so that the generator extraction can
    read off coordinates in the original column space.
    """
    A = [list(r) for r in rows]
    m, n = len(A), ncols
    Vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_op(j1, j2, q):
        for r in A:
            r[j2] -= q * r[j1]
        # column op on A corresponds to row op on Vinv (inverse transform)
        for t in range(n):
            Vinv[j1][t] += q * Vinv[j2][t]

    def col_swap(j1, j2):
        for r in A:
            r[j1], r[j2] = r[j2], r[j1]
        Vinv[j1], Vinv[j2] = Vinv[j2], Vinv[j1]

    diag = []
    r0 = 0
    for c0 in range(n):
        if r0 >= m:
            break
        # find pivot
        best = None
        for i in range(r0, m):
            for j in range(c0, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        A[r0], A[bi] = A[bi], A[r0]
        if bj != c0:
            col_swap(c0, bj)
        while True:
            # clear column c0 with row ops
            done = True
            for i in range(m):
                if i != r0 and A[i][c0] != 0:
                    q = A[i][c0] // A[r0][c0]
                    for k in range(n):
                        A[i][k] -= q * A[r0][k]
                    if A[i][c0] != 0:
                        A[r0], A[i] = A[i], A[r0]
                        done = False
            # clear row r0 with column ops
            for j in range(n):
                if j != c0 and A[r0][j] != 0:
                    q = A[r0][j] // A[r0][c0]
                    col_op(c0, j, q)
                    if A[r0][j] != 0:
                        col_swap(c0, j)
                        done = False
            if done and all(A[i][c0] == 0 for i in range(m) if i != r0) \
                    and all(A[r0][j] == 0 for j in range(n) if j != c0):
                break
        diag.append(abs(A[r0][c0]))
        r0 += 1
    return diag, None, Vinv


def _solve_rational(cols: list[list[Fraction]], target: list[Fraction]):
    """Solve sum c_i * cols[i] = target over Q; None if inconsistent."""
    n = len(target)
    k = len(cols)
    M = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(target[i])]
         for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        pr = None
        for i in range(r, n):
            if M[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pv = M[r][c]
        M[r] = [a / pv for a in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, n):
        if M[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for row, c in enumerate(piv_cols):
        sol[c] = M[row][k]
    return sol


# ---------------------------------------------------------------------------
# public operations

def universal_fgl(bound: int) -> tuple[GradedRingPresentation, FormalGroupLaw]:
    """Universal formal group law on integral Lazard generators x_1..x_bound."""
    u = UniversalFGL(bound)
    law = u.fgl_in_x()
    return law.presentation, law


def universal_model(bound: int) -> UniversalFGL:
    return UniversalFGL(bound)


def additive_fgl(bound: int) -> FormalGroupLaw:
    pres = GradedRingPresentation(QQ, [], [], bound)
    ring = pres.ring()
    return FormalGroupLaw(pres, {(1, 0): ring.one(), (0, 1): ring.one()})


def multiplicative_fgl(bound: int) -> FormalGroupLaw:
    pres = GradedRingPresentation(QQ, [], [], bound)
    ring = pres.ring()
    return FormalGroupLaw(pres, {(1, 0): ring.one(), (0, 1): ring.one(),
                                 (1, 1): ring.one()})


def fgl_log(F: FormalGroupLaw) -> Series:
    """log of F over a Q base: integrate dx / (dF/dy)(x, 0)."""
    if F.presentation.base != QQ:
        raise ValueError("logarithm requires a Q coefficient base")
    return _log_over_char_zero(F)


def fgl_exp(F: FormalGroupLaw) -> Series:
    return reversion(fgl_log(F))


def fgl_inverse(F: FormalGroupLaw) -> Series:
    """The formal inverse series i(x) with F(x, i(x)) = 0."""
    ring = F.presentation.ring()
    order = F.order
    inv = Series(ring, 1, order, {(1,): ring.const(-1)})
    Fs = F.as_series()
    for n in range(2, order + 1):
        x1 = Series.variable(ring, 1, order, 0)
        val = _eval_bivariate(Fs, x1, inv)
        err = val.coefficient((n,))
        if not err.is_zero():
            inv = inv + Series(ring, 1, order, {(n,): err.scale(-1)})
    x1 = Series.variable(ring, 1, order, 0)
    if not _eval_bivariate(Fs, x1, inv).is_zero():
        raise FGLAxiomError("formal inverse construction failed")
    return inv


def _eval_bivariate(F: Series, a: Series, b: Series) -> Series:
    ring = a.ring
    order = a.order
    nv = a.nvars
    out = Series.zero(ring, nv, order)
    pa: dict[int, Series] = {}
    pb: dict[int, Series] = {}

    def pw(s, n, cache):
        if n not in cache:
            cache[n] = s.pow(n)
        return cache[n]

    for (i, j), c in F.terms.items():
        term = Series(ring, nv, order, {(0,) * nv: c})
        if i:
            term = term * pw(a, i, pa)
        if j:
            term = term * pw(b, j, pb)
        out = out + term
    return out


def fgl_series(F: FormalGroupLaw, op: str) -> Series:
    """Series attached to F: 'sum', 'inverse', 'log', 'exp'."""
    if op == "sum":
        return F.as_series()
    if op == "inverse":
        return fgl_inverse(F)
    if op == "log":
        return fgl_log(F)
    if op == "exp":
        return fgl_exp(F)
    raise ValueError(f"unknown series op {op!r}")


# ---------------------------------------------------------------------------
# p-typical reduction

def hazewinkel_lambdas(ring: PolyRing, p: int, count: int) -> list[Poly]:
    """lambda_0..lambda_count with p*lambda_n = sum_{i<n} lambda_i v_{n-i}^{p^i}.

    ring must be Q[v_1..v_m] with deg v_i = p^i - 1 (generator index i-1).
    """
    lams = [ring.one()]
    for n in range(1, count + 1):
        acc = ring.zero()
        for i in range(n):
            vidx = n - i - 1
            if vidx >= len(ring.names):
                continue
            acc = acc + lams[i] * ring.gen(vidx).pow(p ** i)
        lams.append(acc.scale(Fraction(1, p)))
    return lams


def p_typical_presentation(p: int, bound: int) -> GradedRingPresentation:
    gens = []
    i = 1
    while p ** i - 1 <= bound:
        gens.append((f"v{i}", p ** i - 1))
        i += 1
    return GradedRingPresentation(zz_local(p), gens, [], bound)


def p_typical_log(p: int, bound: int) -> tuple[GradedRingPresentation, Series]:
    pres = p_typical_presentation(p, bound)
    ring = pres.ring()
    m = len(pres.generators)
    order = bound + 1
    kmax = 0
    while p ** (kmax + 1) <= order:
        kmax += 1
    lams = hazewinkel_lambdas(ring, p, max(m, kmax))
    terms = {}
    for k in range(kmax + 1):
        if p ** k <= order:
            terms[(p ** k,)] = lams[k]
    return pres, Series(ring, 1, order, terms)


def _log_over_char_zero(F: FormalGroupLaw) -> Series:
    """Internal logarithm over base (x) Q: integrate dx / (dF/dy)(x, 0).

    Unlike the public fgl_series("log"), this accepts integral bases (Z,
    Z_(p)); the coefficients acquire rational denominators.
    """
    ring = F.presentation.ring()
    order = F.order
    w_terms = {}
    for (i, j), c in F.series.items():
        if j == 1:
            w_terms[(i,)] = c
    w = Series(ring, 1, order, w_terms)
    return integrate(multiplicative_inverse(w))


def p_typical_reduction(F: FormalGroupLaw, p: int, bound: int
                        ) -> tuple[GradedRingPresentation, FormalGroupLaw]:
    """Cartier reduction: the p-typical law on Hazewinkel generators v_i.

    The input logarithm is stripped to its p-power exponents (the Cartier
    idempotent) and the surviving coefficients lambda_i are converted to
    Hazewinkel generators through p lambda_n = sum lambda_i v_{n-i}^{p^i}.
    Returns the presentation Z_(p)[v_1..v_m] and the p-typical law over
    it; the classifying images of the v_i in the input base are recorded
    on the law as `classifying_images` (zero for the additive law, a unit
    times v_1 for the multiplicative one).
    """
    base = F.presentation.base
    if base not in (QQ, ZZ, zz_local(p)):
        raise ValueError(f"base {base} does not admit p-typification at {p}")
    pres, logser = p_typical_log(p, bound)
    ring = pres.ring()
    order = bound + 1
    expser = reversion(logser)
    x = Series.variable(ring, 2, order, 0)
    y = Series.variable(ring, 2, order, 1)
    lx = compose_univariate(logser, x)
    ly = compose_univariate(logser, y)
    Fser = compose_univariate(expser, lx + ly)
    law = FormalGroupLaw(pres, dict(Fser.terms))
    # denominators must clear: the law is defined over Z_(p)
    for (i, j), c in law.series.items():
        for mon, coeff in c.terms.items():
            fr = Fraction(coeff)
            if fr.denominator % p == 0:
                raise FGLAxiomError("p-typical law not p-integral")
    # classifying images: lambda-hats from the input logarithm, inverted
    # through the Hazewinkel recursion; must be p-integral in the base
    in_log = _log_over_char_zero(F)
    m = len(pres.generators)
    in_ring = F.presentation.ring()
    lam_hat = [in_ring.one()]
    for i in range(1, m + 1):
        lam_hat.append(in_log.coefficient((p ** i,)))
    v_images: list[Poly] = []
    for n in range(1, m + 1):
        acc = lam_hat[n].scale(p)
        for i in range(1, n):
            acc = acc - lam_hat[i] * v_images[n - i - 1].pow(p ** i)
        for mon, coeff in acc.terms.items():
            if Fraction(coeff).denominator % p == 0:
                raise FGLAxiomError(
                    "classifying images are not p-integral; the input law "
                    "does not p-typify over its base")
        v_images.append(acc)
    law.classifying_images = v_images
    return pres, law


def truncate_fgl(F: FormalGroupLaw, bound: int) -> FormalGroupLaw:
    """Forget generators and coefficients above a smaller bound."""
    if bound > F.presentation.degree_bound:
        raise ValueError("can only truncate downwards")
    gens = [(n, d) for n, d in F.presentation.generators if d <= bound]
    pres = GradedRingPresentation(F.presentation.base, gens, [], bound)
    ring = pres.ring()
    keep = set(range(len(gens)))
    series = {}
    for (i, j), c in F.series.items():
        if i + j > bound + 1:
            continue
        terms = {}
        for m, co in c.terms.items():
            if all(g in keep for g, _ in m) and mon_deg(m, ring.degrees) <= bound:
                terms[m] = co
        cc = Poly(ring, terms)
        if not cc.is_zero():
            series[(i, j)] = cc
    return FormalGroupLaw(pres, series)
