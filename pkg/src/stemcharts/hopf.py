"""Hopf algebroids of formal group laws: (A, Gamma) with structure maps.

Two constructions:

* universal: A = Lazard ring on integral generators x_i, Gamma = A[b_1, ...]
  corepresenting strict isomorphisms of formal group laws.  The right unit
  comes from composing the generic logarithm with the universal coordinate
  change b(x) = x + b_1 x^2 + ...; the coproduct from composing strict
  isomorphisms; the antipode from the compositional inverse.

* p_typical: A = Z_(p)[v_1, ...] (Hazewinkel generators), Gamma = A[t_1, ...]
  with the structure maps determined through the p-typical logarithm
  lambda-series.

Elements of Gamma^{(x)_A s} are kept in left-normal form: free A-module on
s-tuples of monomials in the Gamma generators, all A-coefficients rewritten
onto the leftmost factor through eta_R.  Tensor keys are
(a_monomial, (t_monomial_1, ..., t_monomial_s)) -> Fraction/int.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, PolyRing, Monomial, ONE, mon_mul, mon_deg
from .series import Series, compose_univariate, reversion
from .fgl import (GradedRingPresentation, UniversalFGL, hazewinkel_lambdas,
                  p_typical_presentation, zz_local, ZZ)

TensorKey = tuple[Monomial, tuple[Monomial, ...]]
Tensor = dict[TensorKey, object]


class HopfAxiomError(Exception):
    pass


class HopfAlgebroid:
    """(A, Gamma) with degree-truncated structure maps in left-normal form."""

    def __init__(self, kind: str, bound: int, p: int | None,
                 a_pres: GradedRingPresentation, gamma_names: list[str],
                 gamma_degrees: list[int],
                 eta_r: dict[int, Tensor], coproduct: dict[int, Tensor],
                 antipode: dict[int, Tensor]):
        self.kind = kind
        self.bound = bound
        self.p = p
        self.A = a_pres
        self.aring = a_pres.ring()
        self.gamma_names = gamma_names
        self.gamma_degrees = gamma_degrees
        self.eta_r_gen = eta_r          # A-generator index -> Gamma element
        self.coproduct_gen = coproduct  # Gamma-generator index -> Gamma^2 element
        self.antipode_gen = antipode    # Gamma-generator index -> Gamma element
        self._eta_r_cache: dict[Monomial, Tensor] = {ONE: {(ONE, (ONE,)): 1}}
        self._delta_cache: dict[Monomial, Tensor] = {ONE: {(ONE, (ONE, ONE)): 1}}
        self._antipode_cache: dict[Monomial, Tensor] = {ONE: {(ONE, (ONE,)): 1}}

    # -- presentation-level views -------------------------------------------

    @property
    def degree_bound(self) -> int:
        return self.bound

    def gamma_presentation(self) -> GradedRingPresentation:
        return GradedRingPresentation(
            base=f"{self.A.base}[A]",
            generators=list(zip(self.gamma_names, self.gamma_degrees)),
            relations=[],
            degree_bound=self.bound,
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "prime": self.p, "degree_bound": self.bound,
            "A": self.A.to_json(), "Gamma": self.gamma_presentation().to_json(),
        }

    # -- degree helpers ------------------------------------------------------

    def adeg(self, amon: Monomial) -> int:
        return mon_deg(amon, self.aring.degrees)

    def tdeg(self, tmon: Monomial) -> int:
        return mon_deg(tmon, self.gamma_degrees)

    def key_degree(self, key: TensorKey) -> int:
        amon, tmons = key
        return self.adeg(amon) + sum(self.tdeg(t) for t in tmons)

    def tensor_monomials(self, degree: int) -> list[Monomial]:
        ring = PolyRing(self.gamma_names, self.gamma_degrees, self.bound)
        return ring.monomials_of_degree(degree)

    def a_monomials(self, degree: int) -> list[Monomial]:
        return self.aring.monomials_of_degree(degree)

    # -- tensor arithmetic ----------------------------------------------------

    def tensor_add(self, a: Tensor, b: Tensor, scale=1) -> Tensor:
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + scale * c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def tensor_mul(self, a: Tensor, b: Tensor) -> Tensor:
        """Componentwise product; both sides in normal form, same slot count."""
        out: Tensor = {}
        bound = self.bound
        for (am1, tm1), c1 in a.items():
            d1 = self.adeg(am1) + sum(self.tdeg(t) for t in tm1)
            for (am2, tm2), c2 in b.items():
                d2 = self.adeg(am2) + sum(self.tdeg(t) for t in tm2)
                if d1 + d2 > bound:
                    continue
                key = (mon_mul(am1, am2),
                       tuple(mon_mul(x, y) for x, y in zip(tm1, tm2)))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return out

    def tensor_pow(self, a: Tensor, n: int, slots: int) -> Tensor:
        result: Tensor = {(ONE, (ONE,) * slots): 1}
        base = a
        while n:
            if n & 1:
                result = self.tensor_mul(result, base)
            n >>= 1
            if n:
                base = self.tensor_mul(base, base)
        return result

    def tensor_scale_poly(self, a: Tensor, q: Poly) -> Tensor:
        """Multiply by an A-polynomial through the left unit."""
        out: Tensor = {}
        bound = self.bound
        for (am, tm), c in a.items():
            d = self.adeg(am) + sum(self.tdeg(t) for t in tm)
            for qm, qc in q.terms.items():
                if d + self.adeg(qm) > bound:
                    continue
                key = (mon_mul(am, qm), tm)
                s = out.get(key, 0) + c * qc
                if s:
                    out[key] = s
                else:
                    del out[key]
        return out

    def poly_to_tensor(self, q: Poly, slots: int = 1) -> Tensor:
        return {(m, (ONE,) * slots): c for m, c in q.terms.items()}

    # -- structure maps on monomials ------------------------------------------

    def eta_r(self, amon: Monomial) -> Tensor:
        """eta_R of an A-monomial, as a Gamma element (1 slot)."""
        cached = self._eta_r_cache.get(amon)
        if cached is not None:
            return cached
        g, e = amon[0]
        rest = amon[1:] if e == 1 else tuple([(g, e - 1)] + list(amon[1:]))
        out = self.tensor_mul(self.eta_r_gen[g], self.eta_r(rest))
        self._eta_r_cache[amon] = out
        return out

    def eta_r_poly(self, q: Poly) -> Tensor:
        out: Tensor = {}
        for m, c in q.terms.items():
            out = self.tensor_add(out, self.eta_r(m), scale=c)
        return out

    def delta(self, tmon: Monomial) -> Tensor:
        """Coproduct of a Gamma monomial, as a Gamma^2 element."""
        cached = self._delta_cache.get(tmon)
        if cached is not None:
            return cached
        g, e = tmon[0]
        rest = tmon[1:] if e == 1 else tuple([(g, e - 1)] + list(tmon[1:]))
        out = self.tensor_mul(self.coproduct_gen[g], self.delta(rest))
        self._delta_cache[tmon] = out
        return out

    def antipode_t(self, tmon: Monomial) -> Tensor:
        cached = self._antipode_cache.get(tmon)
        if cached is not None:
            return cached
        g, e = tmon[0]
        rest = tmon[1:] if e == 1 else tuple([(g, e - 1)] + list(tmon[1:]))
        out = self.tensor_mul(self.antipode_gen[g], self.antipode_t(rest))
        self._antipode_cache[tmon] = out
        return out

    def antipode(self, elem: Tensor) -> Tensor:
        """Ring map c on a Gamma element: c(eta_L(a) tau) = eta_R(a) c(tau)."""
        out: Tensor = {}
        for (am, (tm,)), c in elem.items():
            piece = self.tensor_mul(self.eta_r(am), self.antipode_t(tm))
            out = self.tensor_add(out, piece, scale=c)
        return out

    def counit(self, elem: Tensor) -> Poly:
        """epsilon on a Gamma element: kill all positive Gamma monomials."""
        out = self.aring.zero()
        for (am, (tm,)), c in elem.items():
            if tm == ONE:
                out = out + self.aring.monomial(am, c)
        return out

    # -- slotwise operations with left migration ------------------------------

    def migrate(self, cmon: Monomial, pos: int,
                tmons: tuple[Monomial, ...]) -> Tensor:
        """Move an A-coefficient sitting at slot `pos` (1-based) to the left.

        Returns a normal-form tensor with the same slot count.
        """
        if pos == 1 or cmon == ONE:
            return {(cmon, tmons): 1}
        out: Tensor = {}
        for (dmon, (tau,)), c in self.eta_r(cmon).items():
            new = list(tmons)
            new[pos - 2] = mon_mul(new[pos - 2], tau)
            sub = self.migrate(dmon, pos - 1, tuple(new))
            out = self.tensor_add(out, sub, scale=c)
        return out

    def apply_delta_slot(self, elem: Tensor, slot: int) -> Tensor:
        """Replace slot `slot` (1-based) by its coproduct; slots increase by 1."""
        out: Tensor = {}
        bound = self.bound
        for (am, tmons), c in elem.items():
            base_deg = self.adeg(am) + sum(self.tdeg(t) for t in tmons)
            for (cm, (u, w)), c2 in self.delta(tmons[slot - 1]).items():
                if base_deg - self.tdeg(tmons[slot - 1]) + self.adeg(cm) \
                        + self.tdeg(u) + self.tdeg(w) > bound:
                    continue
                new_t = tmons[:slot - 1] + (u, w) + tmons[slot:]
                moved = self.migrate(cm, slot, new_t)
                for (em, fin), c3 in moved.items():
                    key = (mon_mul(am, em), fin)
                    s = out.get(key, 0) + c * c2 * c3
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return out

    def counit_slot(self, elem: Tensor, slot: int) -> Tensor:
        """Apply the counit in slot `slot`; slots decrease by 1."""
        out: Tensor = {}
        for (am, tmons), c in elem.items():
            if tmons[slot - 1] != ONE:
                continue
            key = (am, tmons[:slot - 1] + tmons[slot:])
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                del out[key]
        return out

    # -- axiom verification ----------------------------------------------------

    def verify(self):
        """Symbolic verification of all Hopf-algebroid identities on generators."""
        aring = self.aring
        # counit inverts both units on A-generators
        for i in range(len(aring.names)):
            if aring.degrees[i] > self.bound:
                continue
            gen = aring.gen(i)
            if self.counit(self.eta_r_poly(gen)) != gen:
                raise HopfAxiomError(f"counit o eta_R != id at {aring.names[i]}")
        for gi in range(len(self.gamma_names)):
            if self.gamma_degrees[gi] > self.bound:
                continue
            name = self.gamma_names[gi]
            tmon: Monomial = ((gi, 1),)
            gen_elem: Tensor = {(ONE, (tmon,)): 1}
            dl = self.delta(tmon)
            # counitality
            if self.counit_slot(dl, 1) != gen_elem:
                raise HopfAxiomError(f"(eps x 1) Delta != id at {name}")
            if self.counit_slot(dl, 2) != gen_elem:
                raise HopfAxiomError(f"(1 x eps) Delta != id at {name}")
            # coassociativity
            left = self.apply_delta_slot(dl, 1)
            right = self.apply_delta_slot(dl, 2)
            if left != right:
                raise HopfAxiomError(f"coassociativity fails at {name}")
            # antipode folds: mu(c x 1)Delta = eta_R eps, mu(1 x c)Delta = eta_L eps
            if self.fold_antipode_left(dl):
                raise HopfAxiomError(f"mu(c x 1)Delta != 0 at {name}")
            if self.fold_antipode_right(dl):
                raise HopfAxiomError(f"mu(1 x c)Delta != 0 at {name}")
            # antipode is involutive on generators
            cc = self.antipode(self.antipode_t(tmon))
            if cc != gen_elem:
                raise HopfAxiomError(f"c o c != id at {name}")
        # antipode exchanges the units on A-generators
        for i in range(len(aring.names)):
            if aring.degrees[i] > self.bound:
                continue
            gen = aring.gen(i)
            back = self.antipode(self.eta_r_poly(gen))
            if back != self.poly_to_tensor(gen):
                raise HopfAxiomError(f"c o eta_R != eta_L at {aring.names[i]}")
        # coproduct is compatible with the right unit: Delta eta_R = 1 (x) eta_R
        for i in range(len(aring.names)):
            if aring.degrees[i] > self.bound:
                continue
            er = self.eta_r_poly(aring.gen(i))
            left = self.apply_delta_slot(er, 1)
            right: Tensor = {}
            for (am, (sigma,)), c in er.items():
                ins = self.migrate(am, 2, (ONE, sigma))
                right = self.tensor_add(right, ins, scale=c)
            if left != right:
                raise HopfAxiomError(
                    f"Delta o eta_R != 1 (x) eta_R at {aring.names[i]}")

    def fold_antipode_left(self, elem2: Tensor) -> Tensor:
        """mu o (c x 1) on a Gamma^2 element; empty dict means zero."""
        out: Tensor = {}
        for (am, (u, w)), c in elem2.items():
            piece = self.tensor_mul(self.eta_r(am), self.antipode_t(u))
            piece = self.tensor_mul(piece, {(ONE, (w,)): 1})
            out = self.tensor_add(out, piece, scale=c)
        return out

    def fold_antipode_right(self, elem2: Tensor) -> Tensor:
        """mu o (1 x c) on a Gamma^2 element."""
        out: Tensor = {}
        for (am, (u, w)), c in elem2.items():
            piece = self.tensor_mul({(am, (u,)): 1}, self.antipode_t(w))
            out = self.tensor_add(out, piece, scale=c)
        return out


# ---------------------------------------------------------------------------
# constructions

def _series_coefficient_split(p: Poly, a_names: int) -> list[tuple[Monomial, Monomial, object]]:
    """Split monomials of a combined ring Q[a_0.., g_0..] into (a-part, g-part)."""
    out = []
    for m, c in p.terms.items():
        apart = tuple((g, e) for g, e in m if g < a_names)
        gpart = tuple((g - a_names, e) for g, e in m if g >= a_names)
        out.append((apart, gpart, c))
    return out


def build_p_typical(p: int, bound: int) -> HopfAlgebroid:
    a_pres = p_typical_presentation(p, bound)
    aring = a_pres.ring()
    nv = len(aring.names)
    tnames = [f"t{i}" for i in range(1, nv + 1)]
    tdegrees = [p ** i - 1 for i in range(1, nv + 1)]
    # lambda_n in Q[v]: p * lambda_n = sum_{i<n} lambda_i v_{n-i}^{p^i}
    nlam = nv
    lams = hazewinkel_lambdas(aring, p, nlam)

    def lam(i: int) -> Poly:
        return lams[i] if i < len(lams) else aring.zero()

    alg = HopfAlgebroid.__new__(HopfAlgebroid)
    # eta_R(lambda_n) = sum_{i+j=n} lambda_i t_j^{p^i}  (t_0 = 1)
    # solved for eta_R(v_n) through the Hazewinkel recursion
    eta_r_gen: dict[int, Tensor] = {}
    helper = HopfAlgebroid("p_typical", bound, p, a_pres, tnames, tdegrees,
                           eta_r_gen, {}, {})

    def eta_r_lambda(n: int) -> Tensor:
        out: Tensor = {}
        for i in range(n + 1):
            j = n - i
            li = lam(i)
            if li.is_zero():
                continue
            tpart: Monomial = ONE if j == 0 else ((j - 1, p ** i),)
            if helper.tdeg(tpart) > bound:
                continue
            for m, c in li.terms.items():
                key = (m, (tpart,))
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return out

    eta_r_v: dict[int, Tensor] = {}
    for n in range(1, nv + 1):
        # eta_R(v_n) = p eta_R(lambda_n) - sum_{i=1}^{n-1} eta_R(lambda_i) eta_R(v_{n-i})^{p^i}
        acc = {k: p * c for k, c in eta_r_lambda(n).items()}
        for i in range(1, n):
            term = helper.tensor_mul(
                eta_r_lambda(i),
                helper.tensor_pow(eta_r_v[n - i], p ** i, 1))
            acc = helper.tensor_add(acc, term, scale=-1)
        eta_r_v[n] = acc
        eta_r_gen[n - 1] = acc
    _check_p_integral(eta_r_gen, p, "eta_R")

    # coproduct: sum_{i+j+k=n} lambda_i t_j^{p^i} (x) t_k^{p^{i+j}}
    #          = sum_{h<=n} lambda_h Delta(t_{n-h})^{p^h}
    coproduct_gen: dict[int, Tensor] = {}
    helper.coproduct_gen = coproduct_gen
    delta_t: dict[int, Tensor] = {0: {(ONE, (ONE, ONE)): 1}}
    for n in range(1, nv + 1):
        lhs: Tensor = {}
        for i in range(n + 1):
            li = lam(i)
            if li.is_zero():
                continue
            for j in range(n - i + 1):
                k = n - i - j
                u: Monomial = ONE if j == 0 else ((j - 1, p ** i),)
                w: Monomial = ONE if k == 0 else ((k - 1, p ** (i + j)),)
                if helper.tdeg(u) + helper.tdeg(w) > bound:
                    continue
                for m, c in li.terms.items():
                    key = (m, (u, w))
                    s = lhs.get(key, 0) + c
                    if s:
                        lhs[key] = s
                    else:
                        del lhs[key]
        for h in range(1, n + 1):
            lh = lam(h)
            if lh.is_zero():
                continue
            pw = helper.tensor_pow(delta_t[n - h], p ** h, 2)
            lhs = helper.tensor_add(lhs, helper.tensor_scale_poly(pw, lh),
                                    scale=-1)
        delta_t[n] = lhs
        coproduct_gen[n - 1] = lhs
    _check_p_integral(coproduct_gen, p, "coproduct")

    # antipode: sum_{i+j+k=n} lambda_i t_j^{p^i} c(t_k)^{p^{i+j}} = lambda_n
    antipode_gen: dict[int, Tensor] = {}
    helper.antipode_gen = antipode_gen
    c_t: dict[int, Tensor] = {0: {(ONE, (ONE,)): 1}}
    for n in range(1, nv + 1):
        acc = helper.poly_to_tensor(lam(n))
        for i in range(n + 1):
            li = lam(i)
            if li.is_zero():
                continue
            for j in range(n - i + 1):
                k = n - i - j
                if k == n:
                    continue  # the unknown c(t_n) term
                u: Monomial = ONE if j == 0 else ((j - 1, p ** i),)
                if helper.tdeg(u) > bound:
                    continue
                term = helper.tensor_mul(
                    {(ONE, (u,)): 1},
                    helper.tensor_pow(c_t[k], p ** (i + j), 1))
                term = helper.tensor_scale_poly(term, li)
                acc = helper.tensor_add(acc, term, scale=-1)
        c_t[n] = acc
        antipode_gen[n - 1] = acc
    _check_p_integral(antipode_gen, p, "antipode")

    out = HopfAlgebroid("p_typical", bound, p, a_pres, tnames, tdegrees,
                        eta_r_gen, coproduct_gen, antipode_gen)
    return out


def _check_p_integral(gen_map: dict[int, Tensor], p: int, what: str):
    for i, elem in gen_map.items():
        for key, c in elem.items():
            fr = Fraction(c)
            if fr.denominator % p == 0:
                raise HopfAxiomError(f"{what} has non p-integral coefficient at {key}")
            if fr.denominator == 1:
                elem[key] = int(fr)


def build_universal(bound: int) -> HopfAlgebroid:
    u = UniversalFGL(bound)
    a_pres = u.presentation()
    nb = bound
    bnames = [f"b{i}" for i in range(1, nb + 1)]
    bdegrees = list(range(1, nb + 1))

    # eta_R(m_n): coefficient of x^{n+1} in sum_i m_i B(x)^{i+1} over Q[m, b]
    mb = PolyRing([f"m{i}" for i in range(1, bound + 1)] + bnames,
                  list(range(1, bound + 1)) + bdegrees, bound)
    nm = bound
    order = bound + 1
    B = Series(mb, 1, order,
               {(1,): mb.one(),
                **{(i + 1,): mb.gen(nm + i - 1) for i in range(1, nb + 1)}})
    logr = Series.zero(mb, 1, order)
    Bpow = {1: B}
    for i in range(0, bound + 1):
        if i + 1 not in Bpow:
            Bpow[i + 1] = Bpow[i] * B
        coeff = mb.one() if i == 0 else mb.gen(i - 1)
        logr = logr + Bpow[i + 1].scale_poly(coeff)
    eta_r_m: dict[int, Poly] = {}
    for n in range(1, bound + 1):
        eta_r_m[n] = logr.coefficient((n + 1,))

    # eta_R on the integral generators x_n, rewritten in x/b coordinates
    eta_r_gen: dict[int, Tensor] = {}
    for n in range(1, bound + 1):
        xn = u.x_generator(n)  # poly in m's
        img = mb.zero()
        for m, c in xn.terms.items():
            term = mb.const(c)
            for g, e in m:
                term = term * eta_r_m[g + 1].pow(e)
            img = img + term
        # split into b-monomials with Q[m] coefficients, convert to x-coords
        by_b: dict[Monomial, dict[Monomial, object]] = {}
        for apart, gpart, c in _series_coefficient_split(img, nm):
            by_b.setdefault(gpart, {})
            by_b[gpart][apart] = by_b[gpart].get(apart, 0) + c
        elem: Tensor = {}
        for bmon, mterms in by_b.items():
            mpoly = Poly(u.mring, {k: v for k, v in mterms.items() if v})
            if mpoly.is_zero():
                continue
            xpoly = u.to_x_coordinates(mpoly)
            for xm, xc in xpoly.terms.items():
                key = (xm, (bmon,))
                s = elem.get(key, 0) + xc
                if s:
                    elem[key] = s
                else:
                    del elem[key]
        eta_r_gen[n - 1] = elem

    # coproduct: Delta(B)-series = (b x 1) o (1 x b); the universal strict
    # isomorphism runs from the eta_R law to the eta_L law, so the left
    # tensor factor provides the outer coefficients
    b2 = PolyRing([f"bL{i}" for i in range(1, nb + 1)]
                  + [f"bR{i}" for i in range(1, nb + 1)],
                  bdegrees + bdegrees, bound)
    inner = Series(b2, 1, order,
                   {(1,): b2.one(),
                    **{(i + 1,): b2.gen(nb + i - 1) for i in range(1, nb + 1)}})
    comp = Series.zero(b2, 1, order)
    ipow = {1: inner}
    for j in range(0, bound + 1):
        if j + 1 not in ipow:
            ipow[j + 1] = ipow[j] * inner
        coeff = b2.one() if j == 0 else b2.gen(j - 1)
        comp = comp + ipow[j + 1].scale_poly(coeff)
    coproduct_gen: dict[int, Tensor] = {}
    for n in range(1, nb + 1):
        poly = comp.coefficient((n + 1,))
        elem: Tensor = {}
        for lpart, rpart, c in _series_coefficient_split(poly, nb):
            key = (ONE, (lpart, rpart))
            s = elem.get(key, 0) + c
            if s:
                elem[key] = s
            else:
                del elem[key]
        coproduct_gen[n - 1] = elem

    # antipode on b's: compositional inverse of B, in pure b's
    bring = PolyRing(bnames, bdegrees, bound)
    Bb = Series(bring, 1, order,
                {(1,): bring.one(),
                 **{(i + 1,): bring.gen(i - 1) for i in range(1, nb + 1)}})
    Binv = reversion(Bb)
    antipode_gen: dict[int, Tensor] = {}
    for n in range(1, nb + 1):
        poly = Binv.coefficient((n + 1,))
        antipode_gen[n - 1] = {(ONE, (m,)): c for m, c in poly.terms.items()}

    out = HopfAlgebroid("universal", bound, None, a_pres, bnames, bdegrees,
                        eta_r_gen, coproduct_gen, antipode_gen)
    out._universal_model = u
    return out


def build_algebroid(kind: str, bound: int, p: int | None = None,
                    verify: bool = True) -> HopfAlgebroid:
    """Build the universal or p-typical Hopf algebroid, verified symbolically."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if kind == "universal":
        alg = build_universal(bound)
    elif kind == "p_typical":
        if p is None or p < 2:
            raise ValueError("p_typical needs a prime p")
        alg = build_p_typical(p, bound)
    else:
        raise ValueError(f"unknown algebroid kind {kind!r}")
    if verify:
        alg.verify()
    return alg


# ---------------------------------------------------------------------------
# Adams summands and projections

def adams_summand_coefficients(ell: int, bound: int) -> GradedRingPresentation:
    """Coefficients of the degree-zero Adams summand of ell-local cobordism:
    a polynomial ring on one generator in algebraic degree i(ell-1) per i."""
    if ell == 2 or ell % 2 == 0:
        raise ValueError("Adams summands require an odd prime")
    gens = []
    i = 1
    while i * (ell - 1) <= bound:
        gens.append((f"x{i}", i * (ell - 1)))
        i += 1
    return GradedRingPresentation(zz_local(ell), gens, [], bound)


def adams_projection(obj, alpha: int, ell: int):
    """Project to homotopy degrees 2n with n = alpha mod (ell-1).

    Charts are filtered on the first (homotopy) index; polynomial
    presentations are supported for alpha = 0 when all generators already
    lie in degrees divisible by ell-1.
    """
    from .charts import BigradedChart
    if ell == 2 or ell % 2 == 0:
        raise ValueError("Adams idempotents require an odd prime")
    alpha = alpha % (ell - 1)
    if isinstance(obj, BigradedChart):
        out = {}
        for (i, j), g in obj.entries.items():
            if i % 2 == 0 and (i // 2) % (ell - 1) == alpha:
                out[(i, j)] = g
        return BigradedChart(out, obj.label, obj.prime)
    if isinstance(obj, GradedRingPresentation):
        if alpha != 0:
            raise ValueError("only the degree-zero summand of a ring is a ring")
        bad = [n for n, d in obj.generators if d % (ell - 1) != 0]
        if bad:
            raise ValueError(f"generators {bad} not concentrated in the summand")
        return GradedRingPresentation(obj.base, list(obj.generators),
                                      list(obj.relations), obj.degree_bound)
    raise TypeError("adams_projection expects a chart or a ring presentation")
