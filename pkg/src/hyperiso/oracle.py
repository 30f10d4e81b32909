"""Reference implementations for differential testing.

Everything here is deliberately naive and shares no kernels with the
solver: series products use plain Python integers, linear algebra is dense
Gaussian elimination, and quotient-ring arithmetic is schoolbook.

* :func:`solve_coordinatewise` runs the Newton iteration on the roots
  x_i(t) directly (split instances only).
* :func:`forward_rhs_split` / :func:`forward_rhs_mumford` compute G = H(X) X'
  from a chosen solution, for round-trip tests.
* :func:`cantor_add` / :func:`cantor_mul` implement the Jacobian group law
  on Mumford pairs over Z/m (a field when m is prime).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotUnit, SingularH


# -- plain series over Z/q, lists of ints ------------------------------------


def _smul(a, b, n, q):
    """Truncated product via one Python-int Kronecker product."""
    a, b = [x % q for x in a[:n]], [x % q for x in b[:n]]
    if not a or not b:
        return [0] * n
    bits = 2 * q.bit_length() + n.bit_length() + 1
    A = sum(x << (bits * i) for i, x in enumerate(a))
    B = sum(x << (bits * i) for i, x in enumerate(b))
    C = A * B
    mask = (1 << bits) - 1
    return [((C >> (bits * i)) & mask) % q for i in range(n)]


def _sadd(a, b, q):
    return [(x + y) % q for x, y in zip(a, b)]


def _ssub(a, b, q):
    return [(x - y) % q for x, y in zip(a, b)]


def _pad(a, n):
    return (list(a) + [0] * n)[:n]


def _sinv(a, n, q):
    x = [pow(a[0], -1, q)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = _smul(_pad(a, k), _pad(x, k), k, q)
        corr = [(-c) % q for c in e]
        corr[0] = (corr[0] + 2) % q
        x = _smul(_pad(x, k), corr, k, q)
    return _pad(x, n)


def _ssqrt(a, y0, n, q):
    """Square root of a with constant term congruent to y0."""
    w = [pow(y0, -1, q)]
    for _ in range(q.bit_length().bit_length() + 1):
        w = [w[0] * (3 - a[0] * w[0] * w[0]) * pow(2, -1, q) % q]
    k = 1
    half = pow(2, -1, q)
    while k < n:
        k = min(2 * k, n)
        wk = _pad(w, k)
        e = _smul(_pad(a, k), _smul(wk, wk, k, q), k, q)
        corr = [(-c) % q for c in e]
        corr[0] = (corr[0] + 3) % q
        w = [c * half % q for c in _smul(wk, corr, k, q)]
    return _smul(_pad(a, n), _pad(w, n), n, q)


def _sderiv(a, q):
    return [a[i] * i % q for i in range(1, len(a))]


def _sintegrate(a, p, q):
    out = [0]
    for i, c in enumerate(a):
        k = i + 1
        while k % p == 0:
            if c % p:
                raise ArithmeticError("non-integral antiderivative")
            c //= p
            k //= p
        out.append(c * pow(k, -1, q) % q)
    return out


def _spoly_eval(coeffs, x, n, q):
    """f(x(t)) for an integer polynomial f, by Horner."""
    acc = [0] * n
    for c in reversed(coeffs):
        acc = _smul(acc, x, n, q)
        acc[0] = (acc[0] + c) % q
    return acc


def _spow(x, e, n, q):
    out = [1] + [0] * (n - 1)
    for _ in range(e):
        out = _smul(out, x, n, q)
    return out


def _mod_root0(y0, q):
    return y0 % q


# -- coordinate-wise Newton iteration -------------------------------------------


@dataclass
class SplitInstance:
    """Initial data whose x_i, y_i all lie in Z/p^M.

    ``f`` is an integer coefficient list, ``G`` a list of g integer series.
    """

    p: int
    M: int
    f: list
    X0: list
    Y0: list
    G: list

    @property
    def g(self) -> int:
        return len(self.X0)

    @property
    def q(self) -> int:
        return self.p**self.M


def _solve_dense(H, R, n, q, p):
    """Solve H d = R over (Z/q)[[t]]/t^n by Gaussian elimination with unit pivots."""
    g = len(H)
    A = [[list(H[i][j]) for j in range(g)] + [list(R[i])] for i in range(g)]
    for col in range(g):
        piv = next((r for r in range(col, g) if A[r][col][0] % p), None)
        if piv is None:
            raise SingularH("H(X0) is singular mod p")
        A[col], A[piv] = A[piv], A[col]
        inv = _sinv(A[col][col], n, q)
        A[col] = [_smul(e, inv, n, q) for e in A[col]]
        for r in range(g):
            if r != col and any(A[r][col]):
                c = A[r][col]
                A[r] = [_ssub(A[r][j], _smul(c, A[col][j], n, q), q) for j in range(g + 1)]
    return [A[i][g] for i in range(g)]


def _H_matrix(X, Y, n, q):
    g = len(X)
    winv = [_sinv(y, n, q) for y in Y]
    H = []
    for k in range(g):
        H.append([_smul(_spow(X[j], k, n, q), winv[j], n, q) for j in range(g)])
    return H


def solve_coordinatewise(inst: SplitInstance, n: int) -> list[list[int]]:
    """X(t) mod t^n by X_2m = X_m + H(X_m)^-1 int(G - H(X_m) X_m') dt."""
    q, p, g = inst.q, inst.p, inst.g
    X = [[x % q] for x in inst.X0]
    m = 1
    H0 = _H_matrix(X, [[y % q] for y in inst.Y0], 1, q)
    _solve_dense(H0, [[0]] * g, 1, q, p)
    while m < n:
        k = min(2 * m, n)
        Xk = [_pad(x, k) for x in X]
        Y = [_ssqrt(_spoly_eval(inst.f, x, k, q), y0, k, q) for x, y0 in zip(Xk, inst.Y0)]
        H = _H_matrix(Xk, Y, k, q)
        dX = [_sderiv(x, q) for x in Xk]
        R = []
        for i in range(g):
            acc = _pad(inst.G[i], k - 1)
            for j in range(g):
                acc = _ssub(acc, _smul(H[i][j][: k - 1], dX[j], k - 1, q), q)
            R.append(_sintegrate(acc, p, q))
        delta = _solve_dense(H, R, k, q, p)
        X = [_sadd(Xk[i], delta[i], q) for i in range(g)]
        m = k
    return X


def roots_to_mumford(X: list[list[int]], n: int, q: int) -> list[list[int]]:
    """Coefficient table of prod (z - x_i(t)) mod t^n, ascending in z."""
    poly = [[1] + [0] * (n - 1)]
    for x in X:
        x = _pad(x, n)
        new = [[0] * n for _ in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            new[i + 1] = _sadd(new[i + 1], c, q)
            new[i] = _ssub(new[i], _smul(c, x, n, q), q)
        poly = new
    return poly


# -- forward right-hand sides -------------------------------------------------------


def forward_rhs_split(f, X, Y0, n, p, M):
    """G_k = sum_j x_j^(k-1) x_j' / y_j for explicit root series X, order n - 1."""
    q = p**M
    g = len(X)
    Xn = [_pad(x, n) for x in X]
    Y = [_ssqrt(_spoly_eval(f, x, n, q), y0, n, q) for x, y0 in zip(Xn, Y0)]
    G = []
    for k in range(g):
        acc = [0] * (n - 1)
        for j in range(g):
            term = _smul(_sderiv(Xn[j], q), _smul(_spow(Xn[j], k, n, q), _sinv(Y[j], n, q), n, q)[: n - 1], n - 1, q)
            acc = _sadd(acc, term, q)
        G.append(acc)
    return G


def _qred(P, U, n, q):
    """Schoolbook remainder of P (list of series) by monic U."""
    g = len(U) - 1
    P = [list(c) for c in P]
    for k in range(len(P) - 1, g - 1, -1):
        c = P[k]
        if any(c):
            for i in range(g + 1):
                P[k - g + i] = _ssub(P[k - g + i], _smul(c, U[i], n, q), q)
    P = P[:g]
    return P + [[0] * n for _ in range(g - len(P))]


def _qmul(A, B, U, n, q):
    prod = [[0] * n for _ in range(len(A) + len(B) - 1)]
    for i, a in enumerate(A):
        if not any(a):
            continue
        for j, b in enumerate(B):
            prod[i + j] = _sadd(prod[i + j], _smul(a, b, n, q), q)
    return _qred(prod, U, n, q)


def _qinv0(A, U, p, q):
    """Inverse of A in (Z/q)[z]/U at t^0, by solving the multiplication matrix."""
    g = len(U) - 1
    cols = []
    e = [[1]] + [[0] for _ in range(g - 1)]
    for j in range(g):
        cols.append([c[0] for c in _qmul(A, e, U, 1, q)])
        e = _qred([[0]] + e, U, 1, q)
    mat = [[cols[j][i] for j in range(g)] + [1 if i == 0 else 0] for i in range(g)]
    for col in range(g):
        piv = next((r for r in range(col, g) if mat[r][col] % p), None)
        if piv is None:
            raise NotUnit("element not invertible mod (U, p)")
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = pow(mat[col][col], -1, q)
        mat[col] = [x * inv % q for x in mat[col]]
        for r in range(g):
            if r != col and mat[r][col]:
                c = mat[r][col]
                mat[r] = [(x - c * y) % q for x, y in zip(mat[r], mat[col])]
    return [[mat[i][g]] for i in range(g)]


def _qinv(A, U, n, p, q, M):
    x = _qinv0([c[:1] for c in A], [c[:1] for c in U], p, q)
    k = 1
    while k < n:
        k = min(2 * k, n)
        Uk = [_pad(c, k) for c in U]
        xk = [_pad(c, k) for c in x]
        e = _qmul([_pad(c, k) for c in A], xk, Uk, k, q)
        corr = [[(-v) % q for v in c] for c in e]
        corr[0][0] = (corr[0][0] + 2) % q
        x = _qmul(xk, corr, Uk, k, q)
    return [_pad(c, n) for c in x]


def forward_rhs_mumford(f, U, V0, n, p, M):
    """G for the solution whose root set is the zero set of U(t, z).

    ``U`` is an integer table (ascending in z, each entry a list of t
    coefficients), monic in z; ``V0`` fixes the sign of y at t = 0.  The
    trace form of (Z/q)[[t]][z]/U gives G_k = Tr(z^(k-1) x' / y) with
    x' = -U_t / U_z and 1/y the inverse square root of f, lifted from V0.
    """
    q = p**M
    g = len(U) - 1
    Un = [_pad(c, n) for c in U]
    fz = [[c % q] + [0] * (n - 1) for c in f]
    # 1/y: Newton on w^2 f = 1, starting from V0^-1 at t = 0
    U1 = [c[:1] for c in Un]
    w = _qinv0([[v % q] for v in V0] + [[0]] * (g - len(V0)), U1, p, q)
    f1 = _qred([c[:1] for c in fz], U1, 1, q)
    half = pow(2, -1, q)
    for _ in range(M.bit_length() + 1):
        e = _qmul(f1, _qmul(w, w, U1, 1, q), U1, 1, q)
        corr = [[(-v) % q for v in c] for c in e]
        corr[0][0] = (corr[0][0] + 3) % q
        w = [[v * half % q for v in c] for c in _qmul(w, corr, U1, 1, q)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        Uk = [_pad(c, k) for c in Un]
        wk = [_pad(c, k) for c in w]
        fk = _qred([_pad(c, k) for c in fz], Uk, k, q)
        e = _qmul(fk, _qmul(wk, wk, Uk, k, q), Uk, k, q)
        corr = [[(-v) % q for v in c] for c in e]
        corr[0][0] = (corr[0][0] + 3) % q
        w = [[v * half % q for v in c] for c in _qmul(wk, corr, Uk, k, q)]
    # x' = -U_t / U_z in the quotient ring
    Uz = [[c * i % q for c in Un[i]] for i in range(1, g + 1)]
    Ut = [[(-v) % q for v in _sderiv(c, q)] + [0] for c in Un[:g]]
    xdot = _qmul(Ut, _qinv(Uz, Un, n, p, q, M), Un, n, q)
    # traces of z^j: coefficient of z^i in z^(i+j) mod U, summed over i
    zpow = [[[1] + [0] * (n - 1)] + [[0] * n for _ in range(g - 1)]]
    for _ in range(2 * g - 2):
        zpow.append(_qred([[0] * n] + zpow[-1], Un, n, q))
    tau = []
    for j in range(g):
        acc = [0] * n
        for i in range(g):
            acc = _sadd(acc, zpow[i + j][i], q)
        tau.append(acc)
    base = _qmul(xdot, w, Un, n, q)
    G = []
    elem = base
    for k in range(g):
        acc = [0] * n
        for j in range(g):
            acc = _sadd(acc, _smul(elem[j], tau[j], n, q), q)
        G.append(acc[: n - 1])
        elem = _qred([[0] * n] + elem, Un, n, q)
    return G


# -- Cantor's group law ---------------------------------------------------------------


def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b, m):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _psub(a, b, m):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _pmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim([c % m for c in out])


def _pdivmod(a, b, m):
    a, b = _ptrim(a), _ptrim(b)
    inv = pow(b[-1], -1, m)
    r = list(a)
    qt = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * inv % m
        qt[k] = c
        for i, y in enumerate(b):
            r[k + i] = (r[k + i] - c * y) % m
    return _ptrim(qt), _ptrim(r[: len(b) - 1])


def _pxgcd(a, b, m):
    r0, r1 = _ptrim(a), _ptrim(b)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        qt, r = _pdivmod(r0, r1, m)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(qt, s1, m), m)
        t0, t1 = t1, _psub(t0, _pmul(qt, t1, m), m)
    inv = pow(r0[-1], -1, m)
    return [c * inv % m for c in r0], [c * inv % m for c in s0], [c * inv % m for c in t0]


@dataclass(frozen=True)
class ReducedDivisor:
    """Mumford pair (a, b): a monic, deg b < deg a <= g, a | f - b^2."""

    a: tuple
    b: tuple

    @classmethod
    def identity(cls) -> "ReducedDivisor":
        return cls((1,), ())

    @classmethod
    def of(cls, a, b, m) -> "ReducedDivisor":
        return cls(tuple(_ptrim([x % m for x in a])), tuple(_ptrim([x % m for x in b])))

    def negate(self, m) -> "ReducedDivisor":
        return ReducedDivisor(self.a, tuple(_ptrim([(-x) % m for x in self.b])))

    def is_valid(self, f, m) -> bool:
        a, b = list(self.a), list(self.b)
        if not a or a[-1] != 1 or len(b) >= len(a):
            return False
        _, r = _pdivmod(_psub(list(f), _pmul(b, b, m), m), a, m)
        return not r


def _reduce(a, b, f, g, m):
    while len(a) - 1 > g:
        a2, r = _pdivmod(_psub(f, _pmul(b, b, m), m), a, m)
        if r:
            raise ArithmeticError("composition produced an invalid divisor")
        inv = pow(a2[-1], -1, m)
        a = [c * inv % m for c in a2]
        _, b = _pdivmod([(-c) % m for c in b], a, m)
    inv = pow(a[-1], -1, m)
    a = [c * inv % m for c in a]
    _, b = _pdivmod(b, a, m)
    return ReducedDivisor(tuple(a), tuple(b))


def cantor_add(D1: ReducedDivisor, D2: ReducedDivisor, f, m: int) -> ReducedDivisor:
    """Sum of two reduced divisors on y^2 = f(x) over Z/m (composition + reduction)."""
    f = _ptrim([c % m for c in f])
    g = (len(f) - 2) // 2
    a1, b1, a2, b2 = list(D1.a), list(D1.b), list(D2.a), list(D2.b)
    d1, e1, e2 = _pxgcd(a1, a2, m)
    d, c1, c2 = _pxgcd(d1, _padd(b1, b2, m), m)
    s1, s2, s3 = _pmul(c1, e1, m), _pmul(c1, e2, m), c2
    dd = _pmul(d, d, m)
    a, r = _pdivmod(_pmul(a1, a2, m), dd, m)
    num = _padd(
        _padd(_pmul(_pmul(s1, a1, m), b2, m), _pmul(_pmul(s2, a2, m), b1, m), m),
        _pmul(s3, _padd(_pmul(b1, b2, m), f, m), m),
        m,
    )
    b, r2 = _pdivmod(num, d, m)
    if r or r2:
        raise ArithmeticError("inexact division in composition")
    _, b = _pdivmod(b, a, m)
    return _reduce(a, b, f, g, m)


def cantor_mul(D: ReducedDivisor, ell: int, f, m: int) -> ReducedDivisor:
    """[ell] D by double-and-add."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    result = ReducedDivisor.identity()
    base = D
    while ell:
        if ell & 1:
            result = cantor_add(result, base, f, m)
        ell >>= 1
        if ell:
            base = cantor_add(base, base, f, m)
    return result


def point_divisor(u, v, m) -> ReducedDivisor:
    """The class of P - oo for P = (u, v)."""
    return ReducedDivisor.of([-u, 1], [v], m)


# -- random forward-generated instances --------------------------------------------


@dataclass
class ForwardInstance:
    """A problem together with its known solution U (integer tables mod p^M)."""

    p: int
    M: int
    f: list
    U0: list
    V0: list
    G: list
    U: list
    X: list | None = None
    Y0: list | None = None

    @property
    def g(self) -> int:
        return len(self.U0) - 1

    @property
    def split(self) -> bool:
        return self.X is not None


def _peval(a, x, q):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % q
    return acc


def _squarefree_mod_p(a, p):
    a = _ptrim([c % p for c in a])
    da = _ptrim([c * i % p for i, c in enumerate(a)][1:])
    if not da:
        return False
    g, _, _ = _pxgcd(a, da, p)
    return len(g) == 1


def _coprime_mod_p(a, b, p):
    a, b = _ptrim([c % p for c in a]), _ptrim([c % p for c in b])
    if not a or not b:
        return False
    g, _, _ = _pxgcd(a, b, p)
    return len(g) == 1


def _curve_through(rng, U0, V0, g, q):
    """f = V0^2 + U0 R with R monic of degree g + 1, so deg f = 2g + 1."""
    R = [rng.randrange(q) for _ in range(g + 1)] + [1]
    f = [0] * (2 * g + 2)
    for i, c in enumerate(_pmul(V0, V0, q)):
        f[i] = (f[i] + c) % q
    for i, c in enumerate(_pmul(U0, R, q)):
        f[i] = (f[i] + c) % q
    return f


def random_split_forward(rng, p: int, g: int, n: int, M: int) -> ForwardInstance:
    """X(t) = random polynomials of degree < n with distinct unit x_i(0)."""
    if g > p - 1:
        raise ValueError(f"only {p - 1} distinct units mod {p}")
    q = p**M
    while True:
        residues = rng.sample(range(1, p), g)
        x0 = [r + p * rng.randrange(p ** (M - 1)) for r in residues]
        U0 = [1]
        for x in x0:
            U0 = _pmul(U0, [(-x) % q, 1], q)
        V0 = [rng.randrange(q) for _ in range(g)]
        if _coprime_mod_p(V0, U0, p):
            break
    f = _curve_through(rng, U0, V0, g, q)
    Y0 = [_peval(V0, x, q) for x in x0]
    X = [[x] + [rng.randrange(q) for _ in range(n - 1)] for x in x0]
    G = forward_rhs_split(f, X, Y0, n, p, M)
    return ForwardInstance(p, M, f, U0, V0, G, roots_to_mumford(X, n, q), X, Y0)


def random_mumford_forward(rng, p: int, g: int, n: int, M: int) -> ForwardInstance:
    """U(t, z) random with U(0, z) separable mod p and U(0, 0) a unit (roots may be non-rational)."""
    q = p**M
    while True:
        U0 = [rng.randrange(q) for _ in range(g)] + [1]
        V0 = [rng.randrange(q) for _ in range(g)]
        if U0[0] % p and _squarefree_mod_p(U0, p) and _coprime_mod_p(V0, U0, p):
            break
    f = _curve_through(rng, U0, V0, g, q)
    U = [[U0[i]] + [rng.randrange(q) for _ in range(n - 1)] for i in range(g)] + [[1] + [0] * (n - 1)]
    G = forward_rhs_mumford(f, U, V0, n, p, M)
    return ForwardInstance(p, M, f, U0, V0, G, U)


def random_forward(rng, p: int, g: int, n: int, M: int) -> ForwardInstance:
    """Split when there are enough units mod p, otherwise a Mumford-form instance."""
    if g <= p - 1 and rng.random() < 0.5:
        return random_split_forward(rng, p, g, n, M)
    return random_mumford_forward(rng, p, g, n, M)
