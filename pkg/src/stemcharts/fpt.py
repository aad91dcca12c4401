"""Constructive structure theory of finite-length F_p[[t]]-modules.

A finite-length module is a finite-dimensional F_p-space with a nilpotent
t-action matrix.  Property P_n (every t^n-torsion element is divisible by
t) drives the constructive decomposition: extract_free splits off the free
F_p[t]/t^{n+1} part exactly as in the structure-theory proofs, by splitting
the t^{n+1}-torsion submodule against the t^{n+1}-cotorsion quotient, and
decompose iterates from n = 0.  Divisible parts of ind-systems are counted
in Prussian copies of F_p((t))/F_p[[t]].  All pivoting is lexicographic-first
for reproducible witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# F_p linear algebra (lex-first pivoting)

def _mat_mul(A: Matrix, B: Matrix, p: int) -> Matrix:
    if not A or not B:
        return [[] for _ in A] if A else []
    n, k, m = len(A), len(B), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            a = A[i][t]
            if a:
                Bt = B[t]
                Oi = out[i]
                for j in range(m):
                    Oi[j] = (Oi[j] + a * Bt[j]) % p
    return out


def _mat_vec(A: Matrix, v: list[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in A]


def _mat_pow(A: Matrix, k: int, p: int) -> Matrix:
    n = len(A)
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [row[:] for row in A]
    while k:
        if k & 1:
            out = _mat_mul(out, base, p)
        k >>= 1
        if k:
            base = _mat_mul(base, base, p)
    return out


def _rref(rows: Matrix, p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    rows = [r[:] for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return [row for row in rows[:r]], pivots


def _kernel_basis(A: Matrix, ncols: int, p: int) -> list[list[int]]:
    """Basis of ker(A) as a list of vectors (lex-deterministic)."""
    if ncols == 0:
        return []
    if not A:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    rref, pivots = _rref(A, p)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rref[r][fc]) % p
        out.append(v)
    return out


def _solve(A_cols: list[list[int]], target: list[int], p: int
           ) -> Optional[list[int]]:
    """Solve sum c_i A_cols[i] = target over F_p; None if inconsistent."""
    n = len(target)
    k = len(A_cols)
    M = [[A_cols[j][i] % p for j in range(k)] + [target[i] % p]
         for i in range(n)]
    rref, pivots = _rref(M, p)
    for row in rref:
        if not any(row[:k]) and row[k] % p:
            return None
    sol = [0] * k
    for r, c in enumerate(pivots):
        if c == k:
            return None
        sol[c] = rref[r][k]
    return sol


def _in_span(cols: list[list[int]], v: list[int], p: int) -> bool:
    return _solve(cols, v, p) is not None


def _complement_basis(inside: list[list[int]], whole: list[list[int]], p: int
                      ) -> list[list[int]]:
    """Extend a basis of span(inside) to span(whole); return the new vectors.

    Candidates are taken from `whole` in order (lex-first determinism).
    """
    current = [list(c) for c in inside]
    out = []
    for cand in whole:
        if not _in_span(current, cand, p):
            current.append(list(cand))
            out.append(list(cand))
    return out


def _intersect(cols_a: list[list[int]], cols_b: list[list[int]], p: int,
               dim: int) -> list[list[int]]:
    """Basis of span(cols_a) n span(cols_b)."""
    if not cols_a or not cols_b:
        return []
    k, l = len(cols_a), len(cols_b)
    rows = [[cols_a[j][i] for j in range(k)] + [(-cols_b[j][i]) % p for j in range(l)]
            for i in range(dim)]
    out = []
    for v in _kernel_basis(rows, k + l, p):
        vec = [0] * dim
        for j in range(k):
            if v[j]:
                for i in range(dim):
                    vec[i] = (vec[i] + v[j] * cols_a[j][i]) % p
        if any(vec):
            out.append(vec)
    return _independent_subset(out, p)


def _independent_subset(vecs: list[list[int]], p: int) -> list[list[int]]:
    out: list[list[int]] = []
    for v in vecs:
        if not _in_span(out, v, p):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# modules

class FptError(Exception):
    pass


@dataclass(frozen=True)
class FptModule:
    """Finite-length F_p[[t]]-module: nilpotent t-action on F_p^dim."""

    p: int
    dim: int
    t_action: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.p < 2:
            raise FptError("p must be prime")
        T = [list(r) for r in self.t_action]
        if len(T) != self.dim or any(len(r) != self.dim for r in T):
            raise FptError("t-action must be dim x dim")
        object.__setattr__(self, "t_action",
                           tuple(tuple(x % self.p for x in r) for r in T))
        if self.dim:
            Tn = _mat_pow(self.T(), self.dim, self.p)
            if any(any(r) for r in Tn):
                raise FptError("t-action is not nilpotent")

    def T(self) -> Matrix:
        return [list(r) for r in self.t_action]

    def t_power(self, k: int) -> Matrix:
        return _mat_pow(self.T(), k, self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "dim": self.dim,
                "t": [x for row in self.t_action for x in row]}

    @staticmethod
    def from_json(obj: dict) -> "FptModule":
        p, dim = obj["p"], obj["dim"]
        flat = obj["t"]
        if len(flat) != dim * dim:
            raise FptError("row-major t-matrix has the wrong length")
        rows = tuple(tuple(flat[i * dim:(i + 1) * dim]) for i in range(dim))
        return FptModule(p, dim, rows)


def jordan_module(p: int, partition: list[int]) -> FptModule:
    """Direct sum of nilpotent Jordan blocks with the given sizes."""
    dim = sum(partition)
    T = [[0] * dim for _ in range(dim)]
    base = 0
    for size in partition:
        for i in range(size - 1):
            # t sends basis vector e_{base+i} to e_{base+i+1}
            T[base + i + 1][base + i] = 1
        base += size
    return FptModule(p, dim, tuple(tuple(r) for r in T))


def jordan_type(M: FptModule) -> dict[int, int]:
    """Block-size multiplicities from the rank sequence of t-powers.

    mult(s) = rank(T^{s-1}) - 2 rank(T^s) + rank(T^{s+1}); this is the
    independent oracle used against `decompose`.
    """
    if M.dim == 0:
        return {}
    ranks = [M.dim]
    Tk = M.t_power(1)
    k = 1
    while True:
        _, piv = _rref(Tk, M.p)
        ranks.append(len(piv))
        if not piv:
            break
        k += 1
        Tk = M.t_power(k)
    while len(ranks) < M.dim + 2:
        ranks.append(0)
    out = {}
    for s in range(1, M.dim + 1):
        mult = ranks[s - 1] - 2 * ranks[s] + ranks[s + 1]
        if mult:
            out[s] = mult
    return out


# ---------------------------------------------------------------------------
# property P_n and free extraction

def satisfies_pn(M: FptModule, n: int) -> tuple[bool, Optional[list[int]]]:
    """ker(t^n) <= im(t)?  On failure returns a witness vector."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0 or M.dim == 0:
        return True, None
    p = M.p
    ker = _kernel_basis(M.t_power(n), M.dim, p)
    im_cols = [[M.t_action[i][j] for i in range(M.dim)] for j in range(M.dim)]
    im = _independent_subset(im_cols, p)
    for v in ker:
        if not _in_span(im, v, p):
            return False, v
    return True, None


@dataclass
class Splitting:
    """M = F (+) M' with explicit inclusion and retraction witnesses."""

    free_exponent: int               # F is free over F_p[t]/t^exponent
    free_rank: int
    free_generators: list[list[int]]  # rank generators of F inside M
    inclusion: Matrix                 # dim(M) x dim(F), columns = F basis
    retraction: Matrix                # dim(F) x dim(M)
    quotient: FptModule               # M'
    quotient_inclusion: Matrix        # dim(M) x dim(M')


def extract_free(M: FptModule, n: int) -> Splitting:
    """Split off the free F_p[t]/t^{n+1}-part of a module satisfying P_n.

    Follows the constructive proof: both A = M[t^{n+1}] and B = M/t^{n+1}
    are free over F_p[t]/t^{n+1}; the canonical map A -> B is split
    against bases adapted mod t, giving the summand F with explicit
    inclusion/retraction, and the kernel M' of the retraction satisfies
    P_{n+1}.
    """
    ok, _ = satisfies_pn(M, n)
    if not ok:
        raise FptError(f"module does not satisfy P_{n}")
    p, d = M.p, M.dim
    if d == 0:
        return Splitting(n + 1, 0, [], [[] for _ in range(0)], [],
                         M, [[] for _ in range(0)])
    T = M.T()
    Tn1 = M.t_power(n + 1)
    std = [[1 if i == j else 0 for i in range(d)] for j in range(d)]

    # A = ker(t^{n+1}) inside M
    A_basis = _kernel_basis(Tn1, d, p)
    # G: complement of t*A in A
    tA = _independent_subset([_mat_vec(T, v, p) for v in A_basis], p)
    G = _complement_basis(tA, A_basis, p)

    # W = im(t^{n+1}); quotient B = M/W with basis C (coset representatives)
    W = _independent_subset(
        [[Tn1[i][j] for i in range(d)] for j in range(d)], p)
    C = _complement_basis(W, std, p)

    def proj_B(x: list[int]) -> list[int]:
        sol = _solve(C + W, x, p)
        if sol is None:
            raise FptError("projection to the quotient failed")
        return sol[:len(C)]

    TB = [[0] * len(C) for _ in range(len(C))]
    for j, c in enumerate(C):
        col = proj_B(_mat_vec(T, c, p))
        for i in range(len(C)):
            TB[i][j] = col[i]

    # tB and alpha(G): split G into G_2 = ker(G -> B/tB) and a complement G_1
    tB_cols = _independent_subset(
        [[TB[i][j] for i in range(len(C))] for j in range(len(C))], p)
    G1, G2 = [], []
    BmodT = _complement_basis(tB_cols,
                              [[1 if i == j else 0 for i in range(len(C))]
                               for j in range(len(C))], p)

    def mod_tB(xB: list[int]) -> list[int]:
        sol = _solve(BmodT + tB_cols, xB, p)
        return sol[:len(BmodT)]

    gmat = [mod_tB(proj_B(g)) for g in G]
    ker_coeffs = _kernel_basis([list(r) for r in zip(*gmat)] if gmat else [],
                               len(G), p)
    for coeffs in ker_coeffs:
        v = [0] * d
        for c, g in zip(coeffs, G):
            if c:
                for i in range(d):
                    v[i] = (v[i] + c * g[i]) % p
        G2.append(v)
    # complement of G2 inside G
    G1 = _complement_basis(G2, G, p)

    # F = span{t^j g : g in G_1, 0 <= j <= n}
    f_basis: list[list[int]] = []
    for g in G1:
        v = g
        for _ in range(n + 1):
            f_basis.append(v)
            v = _mat_vec(T, v, p)
    if len(_independent_subset(f_basis, p)) != len(f_basis):
        raise FptError("free part basis is not independent")

    # B decomposes as N_1 (+) N_2 on alpha(G_1) and a complement G_3
    aG1 = [proj_B(g) for g in G1]
    aG1_span = _independent_subset(aG1, p)
    if len(aG1_span) != len(aG1):
        raise FptError("alpha(G_1) not independent in the quotient")
    G3 = _complement_basis(
        _independent_subset(tB_cols + aG1, p),
        [[1 if i == j else 0 for i in range(len(C))] for j in range(len(C))], p)
    n1_basis: list[list[int]] = []
    n1_labels: list[tuple[int, int]] = []  # (generator index, power)
    for gi, b in enumerate(aG1):
        v = b
        for j in range(n + 1):
            n1_basis.append(v)
            n1_labels.append((gi, j))
            v = _mat_vec(TB, v, p)
    n2_basis: list[list[int]] = []
    for b in G3:
        v = b
        for j in range(n + 1):
            n2_basis.append(v)
            v = _mat_vec(TB, v, p)
    n2_basis = [v for v in n2_basis if any(v)]
    full = n1_basis + n2_basis
    if len(_independent_subset(full, p)) != len(C):
        raise FptError("N_1 (+) N_2 does not exhaust the quotient")

    # retraction: M -> B -> N_1 -> F
    retraction = [[0] * d for _ in range(len(f_basis))]
    for col in range(d):
        x = std[col]
        sol = _solve(full, proj_B(x), p)
        if sol is None:
            raise FptError("quotient coordinates failed")
        for idx, (gi, j) in enumerate(n1_labels):
            c = sol[idx]
            if c:
                retraction[gi * (n + 1) + j][col] = c

    inclusion = [[f_basis[j][i] for j in range(len(f_basis))] for i in range(d)]
    # rho o iota = identity on F
    comp = _mat_mul(retraction, inclusion, p)
    for i in range(len(f_basis)):
        for j in range(len(f_basis)):
            if comp[i][j] != (1 if i == j else 0):
                raise FptError("retraction does not split the inclusion")

    # M' = ker(retraction), with induced t-action
    MK = _kernel_basis(retraction, d, p) if f_basis else std
    Mp_dim = len(MK)
    TMp = [[0] * Mp_dim for _ in range(Mp_dim)]
    for j, v in enumerate(MK):
        tv = _mat_vec(T, v, p)
        sol = _solve(MK, tv, p)
        if sol is None:
            raise FptError("kernel of the retraction is not t-stable")
        for i in range(Mp_dim):
            TMp[i][j] = sol[i]
    Mp = FptModule(p, Mp_dim, tuple(tuple(r) for r in TMp))
    ok, _ = satisfies_pn(Mp, n + 1)
    if not ok:
        raise FptError("complement does not satisfy P_{n+1}")
    quotient_inclusion = [[MK[j][i] for j in range(Mp_dim)] for i in range(d)]
    # direct sum check: [inclusion | quotient_inclusion] invertible
    joint = [inclusion[i] + quotient_inclusion[i] for i in range(d)]
    _, piv = _rref(joint, p)
    if len(piv) != d:
        raise FptError("F (+) M' does not reassemble M")
    return Splitting(n + 1, len(G1), [list(g) for g in G1], inclusion,
                     retraction, Mp, quotient_inclusion)


@dataclass
class Decomposition:
    p: int
    free_parts: list[tuple[int, int]]       # (exponent i, multiplicity r_i)
    divisible_rank: object = 0              # extended natural
    witnesses: list[dict] = dc_field(default_factory=list)

    def profile(self) -> dict[int, int]:
        return {i: r for i, r in self.free_parts}

    def total_dim(self) -> int:
        return sum(i * r for i, r in self.free_parts)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "free_parts": [[i, r] for i, r in self.free_parts],
            "divisible_rank": self.divisible_rank,
            "witnesses": self.witnesses,
        }


def decompose(M: FptModule) -> Decomposition:
    """Full decomposition into (F_p[t]/t^i)^{r_i}, with witness matrices."""
    parts: list[tuple[int, int]] = []
    witnesses: list[dict] = []
    cur = M
    # inclusion of the current stage into the original module
    incl_chain: Matrix = [[1 if i == j else 0 for j in range(M.dim)]
                          for i in range(M.dim)]
    retr_chain: Matrix = [[1 if i == j else 0 for j in range(M.dim)]
                          for i in range(M.dim)]
    n = 0
    while cur.dim > 0:
        if n + 1 > M.dim:
            raise FptError("decomposition failed to terminate")
        spl = extract_free(cur, n)
        if spl.free_rank:
            incl = _mat_mul(incl_chain, spl.inclusion, M.p) if M.dim else []
            retr = _mat_mul(spl.retraction, retr_chain, M.p)
            parts.append((n + 1, spl.free_rank))
            witnesses.append({
                "exponent": n + 1, "multiplicity": spl.free_rank,
                "inclusion": incl, "retraction": retr,
            })
            comp = _mat_mul(retr, incl, M.p)
            k = len(comp)
            for i in range(k):
                for j in range(k):
                    if comp[i][j] != (1 if i == j else 0):
                        raise FptError("composed witnesses are not a splitting")
        incl_chain = _mat_mul(incl_chain, spl.quotient_inclusion, M.p) \
            if spl.quotient.dim else []
        # retraction onto the new stage: solve through the quotient inclusion
        retr_chain = _stage_retraction(spl, retr_chain, M.p)
        cur = spl.quotient
        n += 1
    return Decomposition(M.p, parts, 0, witnesses)


def _stage_retraction(spl: Splitting, retr_chain: Matrix, p: int) -> Matrix:
    """Retraction original -> new stage: project along F then restrict."""
    dq = spl.quotient.dim
    if dq == 0:
        return []
    d = len(spl.inclusion)
    # projector onto M' along F: pi = 1 - iota_F rho
    proj = [[(1 if i == j else 0) - _dot(spl.inclusion[i], [spl.retraction[k][j]
             for k in range(len(spl.retraction))]) for j in range(d)]
            for i in range(d)] if spl.free_rank else \
        [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    proj = [[x % p for x in row] for row in proj]
    # coordinates in the M'-basis
    cols = [[spl.quotient_inclusion[i][j] for i in range(d)] for j in range(dq)]
    out = [[0] * len(retr_chain[0]) if retr_chain else [] for _ in range(dq)]
    # build matrix: for each original basis vector, project then solve
    src_dim = len(retr_chain[0]) if retr_chain else 0
    for col in range(src_dim):
        x = [retr_chain[i][col] for i in range(len(retr_chain))]
        px = _mat_vec(proj, x, p)
        sol = _solve(cols, px, p)
        if sol is None:
            raise FptError("projection does not land in the complement")
        for i in range(dq):
            out[i][col] = sol[i]
    return out


def _dot(a: list[int], b: list[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def reassemble(dec: Decomposition) -> FptModule:
    """Direct sum of the recorded free parts."""
    partition: list[int] = []
    for i, r in sorted(dec.free_parts, reverse=True):
        partition.extend([i] * r)
    return jordan_module(dec.p, partition)


# ---------------------------------------------------------------------------
# torsion powers and u-sequences

def check_torsion_powers(M: FptModule, p: Optional[int] = None
                         ) -> tuple[bool, Optional[dict]]:
    """Every t-torsion element divisible by t^{p^n} is divisible by
    t^{p^{n+1}-1}; equivalently all decomposition exponents are p-powers.

    Both characterizations are computed and compared; a witness element is
    returned on failure.
    """
    p = p or M.p
    d = M.dim
    element_ok, witness = True, None
    n = 0
    while d and p ** n <= d and element_ok:
        a = p ** n
        b = p ** (n + 1) - 1
        ker_t = _kernel_basis(M.T(), d, M.p)
        Ta = M.t_power(a)
        im_a = _independent_subset(
            [[Ta[i][j] for i in range(d)] for j in range(d)], M.p)
        S = _intersect(ker_t, im_a, M.p, d)
        if b >= d:
            im_b = []
        else:
            Tb = M.t_power(b)
            im_b = _independent_subset(
                [[Tb[i][j] for i in range(d)] for j in range(d)], M.p)
        if b >= d:
            # t^b = 0: condition demands S = 0
            for v in S:
                if any(v):
                    element_ok, witness = False, {"n": n, "vector": v}
                    break
        else:
            for v in S:
                if not _in_span(im_b, v, M.p):
                    element_ok, witness = False, {"n": n, "vector": v}
                    break
        n += 1
    profile_ok = all(_is_p_power(i, p) for i, _ in decompose(M).free_parts)
    if element_ok != profile_ok:
        raise FptError(
            "element-level scan and decomposition profile disagree "
            f"(scan={element_ok}, profile={profile_ok})")
    return element_ok, witness


def _is_p_power(i: int, p: int) -> bool:
    while i % p == 0:
        i //= p
    return i == 1


def check_u_sequence(M: FptModule, p: Optional[int] = None, n: int = 0) -> bool:
    """Exactness of the u-sequence at the middle term, u = t^{p^n}.

    Odd p: M[u^p] --(u^{p-1})--> M[u] --> M/u exact at M[u], i.e.
    M[u] n uM = u^{p-1} M[u^p].  p = 2: M[u^2] (+) M[u^4] --> M[u^4]
    --(u^3)--> M[u] exact at M[u^4], i.e. M[u^3] = M[u^2] + u M[u^4].
    """
    p = p or M.p
    d = M.dim
    if d == 0:
        return True
    if p ** n > d:
        raise ValueError("u = t^{p^n} requires p^n <= dim")
    e = p ** n

    def U(k: int) -> Matrix:
        return M.t_power(min(e * k, d))

    def ker_u(k: int) -> list[list[int]]:
        return _kernel_basis(U(k), d, M.p)

    if p != 2:
        keru = ker_u(1)
        Umat = U(1)
        imu = _independent_subset(
            [[Umat[i][j] for i in range(d)] for j in range(d)], M.p)
        lhs = _intersect(keru, imu, M.p, d)
        Upm1 = M.t_power(min(e * (p - 1), d))
        rhs = _independent_subset(
            [_mat_vec(Upm1, v, M.p) for v in ker_u(p)], M.p)
        return _same_span(lhs, rhs, M.p)
    lhs = ker_u(3)
    rhs = [list(v) for v in ker_u(2)]
    Umat = U(1)
    rhs += [_mat_vec(Umat, v, M.p) for v in ker_u(4)]
    rhs = _independent_subset(rhs, M.p)
    return _same_span(lhs, rhs, M.p)


def _same_span(a: list[list[int]], b: list[list[int]], p: int) -> bool:
    return all(_in_span(b, v, p) for v in a) and all(_in_span(a, v, p) for v in b)


# ---------------------------------------------------------------------------
# ind-systems

@dataclass
class IndFptModule:
    """Finite prefix of an ind-system with a declared stabilization index.

    `maps[k]` is the matrix of M_k -> M_{k+1} (dim_{k+1} x dim_k), required
    injective and t-equivariant.  Profiles must stabilize from `stable_from`
    on: exponents present at every stage are the stable free parts, and the
    residual blocks must grow strictly (the divisible part of the colimit).
    """

    modules: list[FptModule]
    maps: list[Matrix]
    stable_from: int = 0

    def __post_init__(self):
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise FptError("need one structure map per adjacent pair")
        for k, f in enumerate(self.maps):
            src, tgt = self.modules[k], self.modules[k + 1]
            if len(f) != tgt.dim or (f and any(len(r) != src.dim for r in f)):
                raise FptError(f"map {k} has the wrong shape")
            cols = [[f[i][j] for i in range(tgt.dim)] for j in range(src.dim)]
            if len(_independent_subset(cols, src.p)) != src.dim:
                raise FptError(f"structure map {k} is not injective")
            left = _mat_mul(tgt.T(), f, src.p)
            right = _mat_mul(f, src.T(), src.p)
            if left != right:
                raise FptError(f"structure map {k} is not t-equivariant")


def classify_divisible(ind: IndFptModule) -> Decomposition:
    """Stable free parts plus the Pruefer rank of the residual system."""
    if not ind.modules:
        return Decomposition(2, [], 0, [])
    p = ind.modules[0].p
    decs = [decompose(M) for M in ind.modules]
    profiles = [d.profile() for d in decs]
    suffix = profiles[ind.stable_from:]
    if not suffix:
        raise FptError("stable_from is beyond the prefix")
    stable: dict[int, int] = {}
    for i in sorted(set().union(*(set(pr) for pr in suffix))):
        m = min(pr.get(i, 0) for pr in suffix)
        if m:
            stable[i] = m
    residuals = []
    for pr in suffix:
        res = {i: r - stable.get(i, 0) for i, r in pr.items()
               if r - stable.get(i, 0) > 0}
        residuals.append(res)
    counts = [sum(r.values()) for r in residuals]
    if len(set(counts)) > 1:
        raise FptError(
            f"residual block counts do not stabilize: {counts}; "
            "refine stable_from or the declared rule")
    div_rank = counts[0] if counts else 0
    if div_rank:
        mins = [min(r) for r in residuals if r]
        if any(b <= a for a, b in zip(mins, mins[1:])) or len(mins) != len(residuals):
            raise FptError(
                "residual exponents do not grow; the system is not "
                "eventually divisible")
    last = decs[-1]
    witnesses = [w for w in last.witnesses if w["exponent"] in stable]
    return Decomposition(p, sorted(stable.items()), div_rank, witnesses)


# ---------------------------------------------------------------------------
# enumeration helpers (used by the oracles and the acceptance suite)

def partitions(n: int, max_part: Optional[int] = None) -> list[list[int]]:
    if n == 0:
        return [[]]
    out = []
    top = min(n, max_part if max_part is not None else n)
    for first in range(top, 0, -1):
        for rest in partitions(n - first, first):
            out.append([first] + rest)
    return out


def random_nilpotent(p: int, dim: int, rng) -> FptModule:
    """Random conjugate of a random Jordan type (deterministic given rng)."""
    parts = partitions(dim)
    partition = parts[rng.randrange(len(parts))]
    base = jordan_module(p, partition)
    if dim == 0:
        return base
    while True:
        G = [[rng.randrange(p) for _ in range(dim)] for _ in range(dim)]
        _, piv = _rref(G, p)
        if len(piv) == dim:
            break
    Ginv = _invert(G, p)
    T = _mat_mul(_mat_mul(G, base.T(), p), Ginv, p)
    return FptModule(p, dim, tuple(tuple(r) for r in T))


def _invert(G: Matrix, p: int) -> Matrix:
    n = len(G)
    M = [G[i][:] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    rref, piv = _rref(M, p)
    if piv != list(range(n)):
        raise FptError("matrix not invertible")
    return [row[n:] for row in rref]
