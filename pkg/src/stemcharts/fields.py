"""Field descriptors, Milnor K-theory and Witt-ring data.

The catalog gives closed-form answers per field variant; each rule is
backed by an independent brute-force oracle on small instances (Steinberg
symbol quotients for K_2 of finite fields, quadratic-form enumeration for
Witt data).  Values for variants that cannot be enumerated (real closed,
quadratically closed) come from rank/signature classification oracles over
formal square-class data.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .charts import AbGroupDesc, INF, cyclic, free_group

DIVISIBLE = AbGroupDesc(divisible=True)


class FieldError(Exception):
    pass


@dataclass(frozen=True)
class FieldDescriptor:
    variant: str                      # finite | algebraically_closed | real_closed
    #                                 | complex_like | cyclotomic_tower | custom
    name: str = ""
    q: Optional[int] = None           # finite(q)
    char: int = 0
    base_name: Optional[str] = None   # cyclotomic tower base (catalog key)
    tower_prime: Optional[int] = None
    km_table: Optional[tuple] = None          # ((degree, desc_json), ...)
    witt_table: Optional[tuple] = None         # (("GW", json), ("W", json), ("I", ((n, json), ...)))
    kmw_table: Optional[tuple] = None
    roots: Optional[tuple] = None              # ((p, n|"inf"), ...)
    km_mod_p_dims: Optional[tuple] = None      # ((p, ((degree, dim|"inf"), ...)), ...)
    galois_modules: Optional[tuple] = None     # ((p, ((degree, ind-module-json), ...)), ...)

    def describe(self) -> str:
        if self.variant == "finite":
            return f"F_{self.q}"
        return self.name or self.variant

    def characteristic(self) -> int:
        if self.variant == "finite":
            q = self.q
            p = 2
            while q % p:
                p += 1
            return p
        return self.char

    def roots_of_unity(self, p: int):
        """Largest n with mu_{p^n} in the field (INF marker if all)."""
        ch = self.characteristic()
        if p == ch:
            return 0
        if self.variant == "finite":
            n, q = 0, self.q - 1
            while q % p == 0:
                q //= p
                n += 1
            return n
        if self.variant in ("algebraically_closed", "complex_like"):
            return INF
        if self.variant == "real_closed":
            return 1 if p == 2 else 0
        if self.variant == "cyclotomic_tower":
            if p == self.tower_prime:
                return INF
            return 0 if self.roots is None else dict(self.roots).get(p, 0)
        if self.roots is not None:
            return dict(self.roots).get(p, 0)
        return 0

    def tate_orientable(self, p: int) -> bool:
        return self.characteristic() != p and self.roots_of_unity(p) == INF

    def to_json(self) -> dict:
        out = {"variant": self.variant}
        for key in ("name", "q", "char", "base_name", "tower_prime"):
            v = getattr(self, key)
            if v not in (None, "", 0) or (key == "char" and v != 0):
                out[key] = v
        if self.km_table is not None:
            out["km_table"] = {str(n): g for n, g in self.km_table}
        if self.witt_table is not None:
            out["witt_table"] = {k: v for k, v in self.witt_table}
        if self.kmw_table is not None:
            out["kmw_table"] = {str(n): g for n, g in self.kmw_table}
        if self.roots is not None:
            out["roots_of_unity"] = {str(p): n for p, n in self.roots}
        if self.km_mod_p_dims is not None:
            out["km_mod_p_dims"] = {str(p): {str(n): d for n, d in table}
                                    for p, table in self.km_mod_p_dims}
        if self.galois_modules is not None:
            out["galois_modules"] = {str(p): {str(n): mod for n, mod in table}
                                     for p, table in self.galois_modules}
        return out

    @staticmethod
    def from_json(obj: dict) -> "FieldDescriptor":
        def freeze_table(d):
            if d is None:
                return None
            return tuple(sorted((int(k), _freeze(v)) for k, v in d.items()))

        def _freeze(v):
            if isinstance(v, dict):
                return tuple(sorted((k, _freeze(x)) for k, x in v.items()))
            if isinstance(v, list):
                return tuple(_freeze(x) for x in v)
            return v

        roots = None
        if "roots_of_unity" in obj:
            roots = tuple(sorted((int(p), n if n == INF else int(n))
                                 for p, n in obj["roots_of_unity"].items()))
        kmd = None
        if "km_mod_p_dims" in obj:
            kmd = tuple(sorted(
                (int(p), tuple(sorted((int(n), d if d == INF else int(d))
                                      for n, d in table.items())))
                for p, table in obj["km_mod_p_dims"].items()))
        gal = None
        if "galois_modules" in obj:
            gal = tuple(sorted(
                (int(p), tuple(sorted((int(n), _freeze(mod))
                                      for n, mod in table.items())))
                for p, table in obj["galois_modules"].items()))
        return FieldDescriptor(
            variant=obj["variant"],
            name=obj.get("name", ""),
            q=obj.get("q"),
            char=obj.get("char", 0),
            base_name=obj.get("base_name"),
            tower_prime=obj.get("tower_prime"),
            km_table=freeze_table(obj.get("km_table")),
            witt_table=_freeze(obj["witt_table"]) if "witt_table" in obj else None,
            kmw_table=freeze_table(obj.get("kmw_table")),
            roots=roots,
            km_mod_p_dims=kmd,
            galois_modules=gal,
        )


def finite_field(q: int) -> FieldDescriptor:
    if q < 2 or _prime_power_base(q) is None:
        raise FieldError(f"{q} is not a prime power")
    return FieldDescriptor("finite", q=q, name=f"F_{q}")


def algebraically_closed(char: int = 0) -> FieldDescriptor:
    return FieldDescriptor("algebraically_closed", char=char,
                           name=f"algclosed_char{char}")


def real_closed() -> FieldDescriptor:
    return FieldDescriptor("real_closed", name="real_closed")


def complex_like() -> FieldDescriptor:
    return FieldDescriptor("complex_like", name="complex")


def _prime_power_base(q: int) -> Optional[int]:
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return p if q == 1 else None
        p += 1
    return q  # prime


# ---------------------------------------------------------------------------
# Milnor K-theory

def milnor_k(k: FieldDescriptor, n_max: int) -> dict[int, AbGroupDesc]:
    """K^M_n(k) for 0 <= n <= n_max; absent degrees are zero."""
    out: dict[int, AbGroupDesc] = {0: free_group(1)}
    if k.variant == "finite":
        if n_max >= 1:
            out[1] = cyclic(k.q - 1)
        return out
    if k.variant in ("algebraically_closed", "complex_like"):
        for n in range(1, n_max + 1):
            out[n] = DIVISIBLE
        return out
    if k.variant == "real_closed":
        for n in range(1, n_max + 1):
            out[n] = AbGroupDesc(torsion=(2,), divisible=True)
        return out
    if k.km_table is not None:
        for n, g in k.km_table:
            if 0 <= n <= n_max:
                out[n] = g if isinstance(g, AbGroupDesc) else _desc_from_frozen(g)
        return out
    raise FieldError(
        f"no Milnor K-theory rule for {k.describe()} (custom table required)")


def _desc_from_frozen(frozen) -> AbGroupDesc:
    return AbGroupDesc.from_json({k: _thaw(v) for k, v in frozen})


def _thaw(v):
    if isinstance(v, tuple):
        if v and all(isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], str)
                     for x in v):
            return {k: _thaw(x) for k, x in v}
        return [_thaw(x) for x in v]
    return v


def km_mod_p(k: FieldDescriptor, p: int, n_max: int) -> dict[int, object]:
    """Dimensions of K^M_n(k)/p over F_p (INF marker allowed)."""
    if k.km_mod_p_dims is not None:
        table = dict(k.km_mod_p_dims)
        if p in table:
            return {n: d for n, d in table[p] if n <= n_max}
    km = milnor_k(k, n_max)
    out: dict[int, object] = {}
    for n, g in km.items():
        if g.divisible:
            # the divisible summand has trivial mod-p reduction; recorded
            # torsion orders are honest direct summands and do contribute
            dim = len([q for q in g.torsion if q % p == 0])
        else:
            dim = (0 if g.free_rank == 0 else g.free_rank)
            if dim != INF:
                dim += len([q for q in g.torsion if q % p == 0])
            if g.torsion_infinite and any(q % p == 0 for q in g.torsion_infinite):
                dim = INF
        if dim:
            out[n] = dim
    return out


# ---------------------------------------------------------------------------
# Witt data

@dataclass
class WittData:
    gw: AbGroupDesc
    w: AbGroupDesc
    fundamental: dict[int, AbGroupDesc]   # I^n for n >= 1
    km_mod2: dict[int, AbGroupDesc]       # I^n/I^{n+1} = k^M_n


def witt_data(k: FieldDescriptor, n_max: int = 6) -> WittData:
    if k.characteristic() == 2:
        raise FieldError("Witt data requires characteristic != 2")
    if k.variant in ("algebraically_closed", "complex_like"):
        return WittData(
            gw=free_group(1), w=cyclic(2),
            fundamental={n: AbGroupDesc() for n in range(1, n_max + 1)},
            km_mod2={0: cyclic(2)},
        )
    if k.variant == "real_closed":
        return WittData(
            gw=free_group(2), w=free_group(1),
            fundamental={n: free_group(1) for n in range(1, n_max + 1)},
            km_mod2={n: cyclic(2) for n in range(0, n_max + 1)},
        )
    if k.variant == "finite":
        q = k.q
        w = AbGroupDesc(torsion=(2, 2)) if q % 4 == 1 else cyclic(4)
        fund = {1: cyclic(2)}
        fund.update({n: AbGroupDesc() for n in range(2, n_max + 1)})
        return WittData(
            gw=AbGroupDesc(free_rank=1, torsion=(2,)), w=w,
            fundamental=fund,
            km_mod2={0: cyclic(2), 1: cyclic(2)},
        )
    if k.witt_table is not None:
        table = dict(k.witt_table)
        fund = {int(n): _desc_from_frozen(g) for n, g in table.get("I", ())}
        kmod = {int(n): _desc_from_frozen(g) for n, g in table.get("k", ())}
        return WittData(gw=_desc_from_frozen(table["GW"]),
                        w=_desc_from_frozen(table["W"]),
                        fundamental=fund, km_mod2=kmod)
    raise FieldError(f"no Witt rule for {k.describe()} (custom table required)")


# ---------------------------------------------------------------------------
# oracles: Steinberg symbol quotient and quadratic-form enumeration

class SmallFiniteField:
    """F_q as polynomials over F_p modulo a found irreducible polynomial."""

    def __init__(self, q: int):
        p = _prime_power_base(q)
        if p is None:
            raise FieldError(f"{q} is not a prime power")
        e = 0
        qq = q
        while qq > 1:
            qq //= p
            e += 1
        self.p, self.e, self.q = p, e, q
        self.modpoly = self._find_irreducible() if e > 1 else (1,)
        self.elements = self._enumerate()

    def _polmul(self, a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % self.p
        return self._polmod(out)

    def _polmod(self, a):
        a = list(a)
        f = self.modpoly
        while len(a) >= len(f):
            c = a[-1]
            if c:
                shift = len(a) - len(f)
                for i, x in enumerate(f):
                    a[shift + i] = (a[shift + i] - c * x) % self.p
            a.pop()
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        return tuple(a) if a else (0,)

    def _find_irreducible(self):
        # monic degree-e polynomial with no roots and no low-degree factors,
        # found by exhaustive search in lexicographic order
        p, e = self.p, self.e
        from itertools import product
        for tail in product(range(p), repeat=e):
            f = tuple(tail) + (1,)
            if self._is_irreducible(f):
                return f
        raise FieldError("no irreducible polynomial found")

    def _is_irreducible(self, f):
        p, e = self.p, self.e
        from itertools import product
        for d in range(1, e // 2 + 1):
            for tail in product(range(p), repeat=d):
                g = tuple(tail) + (1,)
                if self._poldivides(g, f):
                    return False
        return True

    def _poldivides(self, g, f):
        r = list(f)
        while len(r) >= len(g) and any(r):
            c = r[-1]
            if c:
                inv = pow(g[-1], -1, self.p)
                factor = (c * inv) % self.p
                shift = len(r) - len(g)
                for i, x in enumerate(g):
                    r[shift + i] = (r[shift + i] - factor * x) % self.p
            r.pop()
        return not any(r)

    def _enumerate(self):
        from itertools import product
        if self.e == 1:
            return [(x,) for x in range(self.p)]
        out = []
        for tup in product(range(self.p), repeat=self.e):
            t = list(tup)
            while len(t) > 1 and t[-1] == 0:
                t.pop()
            out.append(tuple(t))
        return sorted(set(out))

    def mul(self, a, b):
        if self.e == 1:
            return ((a[0] * b[0]) % self.p,)
        return self._polmul(a, b)

    def add(self, a, b):
        n = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
               for i in range(n)]
        out = [x % self.p for x in out]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def neg(self, a):
        out = [(-x) % self.p for x in a]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def zero(self):
        return (0,)

    def one(self):
        return (1,)

    def units(self):
        return [x for x in self.elements if x != (0,)]

    def multiplicative_generator(self):
        m = self.q - 1
        for g in self.units():
            seen = g
            order = 1
            while seen != (1,):
                seen = self.mul(seen, g)
                order += 1
                if order > m:
                    raise FieldError("order overflow")
            if order == m:
                return g
        raise FieldError("no generator found")


def steinberg_k2(q: int) -> int:
    """Order of K_2^M(F_q) computed from the Steinberg-relation quotient.

    F_q^x is cyclic of order m, so the second exterior-style quotient is
    Z/m modulo the subgroup generated by dlog(a) * dlog(1-a).
    """
    F = SmallFiniteField(q)
    m = q - 1
    if m == 1:
        return 1
    g = F.multiplicative_generator()
    dlog = {}
    acc = F.one()
    for i in range(m):
        dlog[acc] = i
        acc = F.mul(acc, g)
    d = m
    one = F.one()
    for a in F.units():
        if a == one:
            continue
        b = F.add(one, F.neg(a))  # 1 - a
        if b == F.zero():
            continue
        rel = (dlog[a] * dlog[b]) % m
        d = _gcd(d, rel)
    return d


def steinberg_k1(q: int) -> int:
    return q - 1


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class SquareClassModel:
    """Quadratic-form arithmetic over a field given by square-class data.

    `classes` are square-class labels; `binary_isotropic(a, b)` decides
    whether a x^2 + b y^2 represents zero nontrivially; `product(a, b)` is
    the square class of a*b; `represents(a, b, c)` whether the binary form
    represents the class c; `minus_one` the class of -1.  Witt reduction of
    diagonal forms: cancel visibly isotropic pairs, and for dimension >= 3
    rewrite an anisotropic pair <a, b> as the equivalent <c, c*d> (c a
    represented class, d the discriminant) to expose a cancellation.
    """

    def __init__(self, classes, binary_isotropic, product, represents,
                 minus_one):
        self.classes = list(classes)
        self.binary_isotropic = binary_isotropic
        self.product = product
        self.represents = represents
        self.minus_one = minus_one

    def _cancel_pair(self, form: list) -> bool:
        for i in range(len(form)):
            for j in range(i + 1, len(form)):
                if self.binary_isotropic(form[i], form[j]):
                    del form[j], form[i]
                    return True
        return False

    def reduce(self, form: tuple) -> tuple:
        form = list(form)
        while len(form) >= 2:
            if self._cancel_pair(form):
                continue
            if len(form) < 3:
                break
            # look for i < j, k with <f_i, f_j> representing -f_k; rewriting
            # <f_i, f_j> ~ <-f_k, -f_k * d> then exposes an isotropic pair
            progressed = False
            n = len(form)
            for i in range(n):
                for j in range(i + 1, n):
                    for k in range(n):
                        if k in (i, j):
                            continue
                        c = self.product(form[k], self.minus_one)
                        if self.represents(form[i], form[j], c):
                            d = self.product(form[i], form[j])
                            form[i] = c
                            form[j] = self.product(c, d)
                            progressed = True
                            break
                    if progressed:
                        break
                if progressed:
                    break
            if not progressed:
                break
        return self.canonical(tuple(sorted(form)))

    def canonical(self, form: tuple) -> tuple:
        """Canonical representative among equivalent anisotropic forms.

        Binary anisotropic forms with equal discriminant that represent a
        common class are equivalent; pick the lexicographically least."""
        if len(form) != 2:
            return form
        a, b = form
        d = self.product(a, b)
        best = form
        for x in sorted(self.classes):
            y = self.product(x, d)
            cand = tuple(sorted((x, y)))
            if cand >= best:
                continue
            if self.binary_isotropic(x, y):
                continue
            # equivalence requires a commonly represented class
            if any(self.represents(a, b, c) and self.represents(x, y, c)
                   for c in self.classes):
                best = cand
        return best


def finite_field_square_model(q: int) -> SquareClassModel:
    """Actual enumeration model for F_q, q odd."""
    F = SmallFiniteField(q)
    if F.p == 2:
        raise FieldError("Witt enumeration needs odd characteristic")
    squares = {F.mul(x, x) for x in F.units()}
    one = F.one()
    u = next(x for x in sorted(F.units()) if x not in squares)

    def cls(x):
        return "1" if x in squares else "u"

    reps = {"1": one, "u": u}
    vcache: dict[tuple, set] = {}

    def value_set(a_lbl, b_lbl):
        key = (a_lbl, b_lbl)
        if key not in vcache:
            a, b = reps[a_lbl], reps[b_lbl]
            vals = set()
            zero = F.zero()
            for x in F.elements:
                ax2 = F.mul(a, F.mul(x, x))
                for y in F.elements:
                    if x == zero and y == zero:
                        continue
                    vals.add(F.add(ax2, F.mul(b, F.mul(y, y))))
            vcache[key] = vals
        return vcache[key]

    def binary_isotropic(a_lbl, b_lbl):
        return F.zero() in value_set(a_lbl, b_lbl)

    def product(a_lbl, b_lbl):
        return cls(F.mul(reps[a_lbl], reps[b_lbl]))

    def represents(a_lbl, b_lbl, c_lbl):
        vals = value_set(a_lbl, b_lbl)
        return any(v != F.zero() and cls(v) == c_lbl for v in vals)

    return SquareClassModel(["1", "u"], binary_isotropic, product,
                            represents, cls(F.neg(one)))


def real_closed_square_model() -> SquareClassModel:
    def binary_isotropic(a, b):
        return a != b  # opposite signs split off a hyperbolic plane

    def product(a, b):
        return "+" if a == b else "-"

    def represents(a, b, c):
        # definite forms represent exactly their sign
        if a == b:
            return c == a
        return True

    return SquareClassModel(["+", "-"], binary_isotropic, product,
                            represents, "-")


def quadratically_closed_square_model() -> SquareClassModel:
    return SquareClassModel(["1"], lambda a, b: True, lambda a, b: "1",
                            lambda a, b, c: True, "1")


def witt_group_table(model: SquareClassModel, max_dim: int = 4):
    """Witt classes of diagonal forms of dimension <= max_dim, with the
    addition table computed by reduction of orthogonal sums."""
    from itertools import combinations_with_replacement
    reps = [()]
    seen = {()}
    for d in range(1, max_dim + 1):
        for combo in combinations_with_replacement(sorted(model.classes), d):
            red = model.reduce(tuple(combo))
            if red not in seen:
                seen.add(red)
                reps.append(red)
    addition = {}
    for r1 in reps:
        for r2 in reps:
            addition[(r1, r2)] = model.reduce(tuple(sorted(r1 + r2)))
    return reps, addition


def element_order(rep, addition, reps) -> int:
    acc = rep
    n = 1
    while acc != ():
        acc = addition[(acc, rep)]
        n += 1
        if n > len(reps) + 2:
            raise FieldError("order computation overflow")
    return n
