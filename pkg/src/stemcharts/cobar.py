"""Cobar complex of a Hopf algebroid.

The cosimplicial object s |-> Gamma^{(x)_A s} has cofaces: insert a unit on
the left (which in left-normal form lands as eta_R of the coefficient),
coproduct on each factor, and insert a unit on the right.  The total
differential is the alternating sum.  The normalized (reduced) subcomplex
drops every tuple containing an empty slot; it computes the same
cohomology and is the default.  d o d = 0 is checked exactly on every
basis element produced.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Monomial, ONE, mon_mul
from .hopf import HopfAlgebroid, Tensor, TensorKey


class CobarError(Exception):
    pass


class CobarComplex:
    def __init__(self, algebroid: HopfAlgebroid, normalized: bool = True):
        self.alg = algebroid
        self.normalized = normalized
        self._basis_cache: dict[tuple[int, int], list[TensorKey]] = {}
        self._tmons_by_degree: dict[int, list[Monomial]] = {}
        self._amons_by_degree: dict[int, list[Monomial]] = {}

    # -- bases ---------------------------------------------------------------

    def _tmons(self, d: int) -> list[Monomial]:
        if d not in self._tmons_by_degree:
            self._tmons_by_degree[d] = self.alg.tensor_monomials(d)
        return self._tmons_by_degree[d]

    def _amons(self, d: int) -> list[Monomial]:
        if d not in self._amons_by_degree:
            self._amons_by_degree[d] = self.alg.a_monomials(d)
        return self._amons_by_degree[d]

    def basis(self, s: int, degree: int) -> list[TensorKey]:
        """Basis of C^s in algebraic degree `degree`, sorted canonically."""
        key = (s, degree)
        cached = self._basis_cache.get(key)
        if cached is not None:
            return cached
        if degree > self.alg.bound:
            raise CobarError("degree exceeds the algebroid bound")
        out: list[TensorKey] = []
        min_slot = 1 if self.normalized else 0

        def slots(rem: int, k: int, acc: list[Monomial]):
            if k == 0:
                for am in self._amons(rem):
                    out.append((am, tuple(acc)))
                return
            for d in range(min_slot, rem + 1):
                for tm in self._tmons(d):
                    acc.append(tm)
                    slots(rem - d, k - 1, acc)
                    acc.pop()

        slots(degree, s, [])
        out.sort()
        self._basis_cache[key] = out
        return out

    # -- differential --------------------------------------------------------

    def differential_element(self, key: TensorKey) -> Tensor:
        """Total differential of a basis element of C^s, as a C^{s+1} tensor."""
        alg = self.alg
        amon, tmons = key
        s = len(tmons)
        out: Tensor = {}

        def add(k: TensorKey, c):
            cur = out.get(k, 0) + c
            if cur:
                out[k] = cur
            else:
                out.pop(k, None)

        # d^0: eta_R of the coefficient lands in a new left slot
        for (cm, (sigma,)), c in alg.eta_r(amon).items():
            if self.normalized and sigma == ONE:
                continue
            add((cm, (sigma,) + tmons), c)
        # d^i: coproduct on slot i, coefficient migrated left
        elem: Tensor = {(amon, tmons): 1}
        for i in range(1, s + 1):
            sign = -1 if i % 2 else 1
            expanded = alg.apply_delta_slot(elem, i)
            for (em, fin), c in expanded.items():
                if self.normalized and any(t == ONE for t in fin):
                    continue
                add((em, fin), sign * c)
        # d^{s+1}: unit in a new right slot (degenerate when normalized)
        if not self.normalized:
            sign = -1 if (s + 1) % 2 else 1
            add((amon, tmons + (ONE,)), sign)
        return out

    def differential_matrix(self, s: int, degree: int) -> list[list[object]]:
        """Matrix of d: C^s -> C^{s+1} in algebraic degree `degree`.

        Rows indexed by basis(s+1, degree), columns by basis(s, degree);
        exact rational entries.
        """
        src = self.basis(s, degree)
        tgt = self.basis(s + 1, degree)
        index = {k: i for i, k in enumerate(tgt)}
        mat = [[0] * len(src) for _ in range(len(tgt))]
        for j, key in enumerate(src):
            img = self.differential_element(key)
            for k, c in img.items():
                if k not in index:
                    raise CobarError(f"differential leaves the basis at {k}")
                mat[index[k]][j] = c
        return mat

    def check_d_squared(self, s: int, degree: int) -> None:
        """Verify d o d = 0 exactly on every basis element of C^s."""
        m1 = self.differential_matrix(s, degree)
        m2 = self.differential_matrix(s + 1, degree)
        if not m1 or not m2:
            return
        for j in range(len(m1[0])):
            col = [m1[i][j] for i in range(len(m1))]
            for i in range(len(m2)):
                acc = 0
                row = m2[i]
                for t, v in enumerate(col):
                    if v and row[t]:
                        acc += row[t] * v
                if acc != 0:
                    raise CobarError(
                        f"d o d != 0 at s={s}, degree={degree}, column {j}")
