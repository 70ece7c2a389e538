"""Pure-Python hot kernels. ``_kernels_ext.pyx`` mirrors this module."""


def lll_gram(gram, delta_num=3, delta_den=4):
    """Integral LLL on an integer Gram matrix.

    Returns ``(H, G)``: the unimodular transform (rows are coefficient vectors
    of the reduced basis over the input basis) and the reduced Gram matrix.
    Raises ``ZeroDivisionError`` with message "dependent" when the vectors are
    linearly dependent; the caller translates it.
    """
    n = len(gram)
    G = [list(row) for row in gram]
    H = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 0:
        return H, G
    d = [1] + [0] * n
    d[1] = G[0][0]
    if d[1] <= 0:
        raise ZeroDivisionError("dependent")
    lam = [[0] * n for _ in range(n)]

    def redi(k, l):
        dl = d[l + 1]
        lk = lam[k]
        if 2 * abs(lk[l]) <= dl:
            return
        q = (2 * lk[l] + dl) // (2 * dl)
        Hk, Hl = H[k], H[l]
        for j in range(n):
            Hk[j] -= q * Hl[j]
        Gk, Gl = G[k], G[l]
        for j in range(n):
            Gk[j] -= q * Gl[j]
        for j in range(n):
            G[j][k] -= q * G[j][l]
        lk[l] -= q * dl
        ll = lam[l]
        for i in range(l):
            lk[i] -= q * ll[i]

    def swap(k, kmax):
        H[k], H[k - 1] = H[k - 1], H[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        lk, lk1 = lam[k], lam[k - 1]
        for j in range(k - 1):
            lk[j], lk1[j] = lk1[j], lk[j]
        lmb = lk[k - 1]
        B = (d[k - 1] * d[k + 1] + lmb * lmb) // d[k]
        for i in range(k + 1, kmax + 1):
            li = lam[i]
            t = li[k]
            li[k] = (d[k + 1] * li[k - 1] - lmb * t) // d[k]
            li[k - 1] = (B * t + lmb * li[k]) // d[k + 1]
        d[k] = B

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            lk = lam[k]
            for j in range(k + 1):
                u = G[k][j]
                lj = lam[j]
                for i in range(j):
                    u = (d[i + 1] * u - lk[i] * lj[i]) // d[i]
                if j < k:
                    lk[j] = u
                else:
                    if u <= 0:
                        raise ZeroDivisionError("dependent")
                    d[k + 1] = u
        while True:
            redi(k, k - 1)
            lmb = lam[k][k - 1]
            if delta_den * (d[k + 1] * d[k - 1] + lmb * lmb) < delta_num * d[k] * d[k]:
                swap(k, kmax)
                if k > 1:
                    k -= 1
                continue
            for l in range(k - 2, -1, -1):
                redi(k, l)
            k += 1
            break
    return H, G


def _values(limit):
    yield 0
    for v in range(1, limit + 1):
        yield v
        yield -v


def ball_sign_mismatch(w, wbar, radius):
    """First integer b with ||b||_1 <= radius and sign(w.b) != sign(wbar.b).

    ``w`` and ``wbar`` are integer lists of equal length. Coordinates are
    enumerated depth-first, each in the order 0, 1, -1, 2, -2, ...
    Returns ``None`` when no mismatch exists.
    """
    r = len(w)
    b = [0] * r

    def walk(i, budget, s1, s2):
        if i == r or budget == 0:
            if (s1 > 0) - (s1 < 0) != (s2 > 0) - (s2 < 0):
                return tuple(b)
            return None
        wi, vi = w[i], wbar[i]
        for v in _values(budget):
            b[i] = v
            hit = walk(i + 1, budget - abs(v), s1 + v * wi, s2 + v * vi)
            if hit is not None:
                return hit
        b[i] = 0
        return None

    return walk(0, radius, 0, 0)
