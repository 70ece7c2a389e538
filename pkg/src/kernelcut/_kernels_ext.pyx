# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""GMP-backed versions of the kernels in ``_kernels_py``.

Integers cross the boundary as hexadecimal strings; inside, every quantity of
the integral LLL lives in an ``mpz_t``.
"""

from libc.stdlib cimport free, malloc

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    int mpz_set_str(mpz_ptr, const char*, int)
    char* mpz_get_str(char*, int, mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    void mpz_add(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_sub(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_addmul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_mul_2exp(mpz_ptr, mpz_ptr, unsigned long)
    void mpz_fdiv_q(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_swap(mpz_ptr, mpz_ptr)
    int mpz_cmp(mpz_ptr, mpz_ptr)
    int mpz_cmpabs(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)


cdef void _load(mpz_ptr z, object value):
    cdef bytes text = format(value, "x").encode("ascii")
    mpz_set_str(z, text, 16)


cdef object _store(mpz_ptr z):
    cdef size_t size = mpz_sizeinbase(z, 16) + 2
    cdef char* buf = <char*> malloc(size)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_get_str(buf, 16, z)
        return int(buf.decode("ascii"), 16)
    finally:
        free(buf)


cdef class _Matrix:
    cdef __mpz_struct* data
    cdef Py_ssize_t rows, cols

    def __cinit__(self, Py_ssize_t rows, Py_ssize_t cols):
        cdef Py_ssize_t i
        self.rows = rows
        self.cols = cols
        self.data = <__mpz_struct*> malloc(max(rows * cols, 1) * sizeof(__mpz_struct))
        if self.data == NULL:
            raise MemoryError()
        for i in range(rows * cols):
            mpz_init(&self.data[i])

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.data != NULL:
            for i in range(self.rows * self.cols):
                mpz_clear(&self.data[i])
            free(self.data)

    cdef inline mpz_ptr at(self, Py_ssize_t i, Py_ssize_t j):
        return &self.data[i * self.cols + j]

    cdef list to_lists(self):
        cdef Py_ssize_t i, j
        return [[_store(self.at(i, j)) for j in range(self.cols)] for i in range(self.rows)]


cdef class _LLL:
    cdef _Matrix G, H, lam, d, tmp
    cdef Py_ssize_t n

    def __cinit__(self, list gram):
        cdef Py_ssize_t i, j
        self.n = len(gram)
        n = self.n
        self.G = _Matrix(n, n)
        self.H = _Matrix(n, n)
        self.lam = _Matrix(n, n)
        self.d = _Matrix(1, n + 1)
        self.tmp = _Matrix(1, 6)
        for i in range(n):
            row = gram[i]
            for j in range(n):
                _load(self.G.at(i, j), row[j])
            mpz_set_si(self.H.at(i, i), 1)
        mpz_set_si(self.d.at(0, 0), 1)

    cdef inline mpz_ptr dd(self, Py_ssize_t i):
        return self.d.at(0, i)

    cdef void redi(self, Py_ssize_t k, Py_ssize_t l):
        cdef Py_ssize_t i, j, n = self.n
        cdef mpz_ptr dl = self.dd(l + 1)
        cdef mpz_ptr t = self.tmp.at(0, 0)
        cdef mpz_ptr t2 = self.tmp.at(0, 1)
        cdef mpz_ptr q = self.tmp.at(0, 2)
        mpz_mul_2exp(t, self.lam.at(k, l), 1)
        if mpz_cmpabs(t, dl) <= 0:
            return
        mpz_add(t, t, dl)
        mpz_mul_2exp(t2, dl, 1)
        mpz_fdiv_q(q, t, t2)
        for j in range(n):
            mpz_submul(self.H.at(k, j), q, self.H.at(l, j))
        for j in range(n):
            mpz_submul(self.G.at(k, j), q, self.G.at(l, j))
        for j in range(n):
            mpz_submul(self.G.at(j, k), q, self.G.at(j, l))
        mpz_submul(self.lam.at(k, l), q, dl)
        for i in range(l):
            mpz_submul(self.lam.at(k, i), q, self.lam.at(l, i))

    cdef void swap(self, Py_ssize_t k, Py_ssize_t kmax):
        cdef Py_ssize_t i, j, n = self.n
        cdef mpz_ptr lmb = self.lam.at(k, k - 1)
        cdef mpz_ptr B = self.tmp.at(0, 3)
        cdef mpz_ptr t = self.tmp.at(0, 4)
        cdef mpz_ptr u = self.tmp.at(0, 5)
        for j in range(n):
            mpz_swap(self.H.at(k, j), self.H.at(k - 1, j))
            mpz_swap(self.G.at(k, j), self.G.at(k - 1, j))
        for j in range(n):
            mpz_swap(self.G.at(j, k), self.G.at(j, k - 1))
        for j in range(k - 1):
            mpz_swap(self.lam.at(k, j), self.lam.at(k - 1, j))
        mpz_mul(B, self.dd(k - 1), self.dd(k + 1))
        mpz_addmul(B, lmb, lmb)
        mpz_divexact(B, B, self.dd(k))
        for i in range(k + 1, kmax + 1):
            mpz_set(t, self.lam.at(i, k))
            mpz_mul(u, self.dd(k + 1), self.lam.at(i, k - 1))
            mpz_submul(u, lmb, t)
            mpz_divexact(self.lam.at(i, k), u, self.dd(k))
            mpz_mul(u, B, t)
            mpz_addmul(u, lmb, self.lam.at(i, k))
            mpz_divexact(self.lam.at(i, k - 1), u, self.dd(k + 1))
        mpz_set(self.dd(k), B)

    cdef bint lovasz_fails(self, Py_ssize_t k, mpz_ptr num, mpz_ptr den):
        cdef mpz_ptr lhs = self.tmp.at(0, 4)
        cdef mpz_ptr rhs = self.tmp.at(0, 5)
        cdef mpz_ptr lmb = self.lam.at(k, k - 1)
        mpz_mul(lhs, self.dd(k + 1), self.dd(k - 1))
        mpz_addmul(lhs, lmb, lmb)
        mpz_mul(lhs, lhs, den)
        mpz_mul(rhs, self.dd(k), self.dd(k))
        mpz_mul(rhs, rhs, num)
        return mpz_cmp(lhs, rhs) < 0

    cdef int run(self, object delta_num, object delta_den) except -1:
        cdef Py_ssize_t n = self.n, k, kmax, i, j, l
        cdef _Matrix consts = _Matrix(1, 3)
        cdef mpz_ptr num = consts.at(0, 0)
        cdef mpz_ptr den = consts.at(0, 1)
        cdef mpz_ptr u = consts.at(0, 2)
        if n == 0:
            return 0
        _load(num, delta_num)
        _load(den, delta_den)
        mpz_set(self.dd(1), self.G.at(0, 0))
        if mpz_sgn(self.dd(1)) <= 0:
            raise ZeroDivisionError("dependent")
        k, kmax = 1, 0
        while k < n:
            if k > kmax:
                kmax = k
                for j in range(k + 1):
                    mpz_set(u, self.G.at(k, j))
                    for i in range(j):
                        mpz_mul(u, u, self.dd(i + 1))
                        mpz_submul(u, self.lam.at(k, i), self.lam.at(j, i))
                        mpz_divexact(u, u, self.dd(i))
                    if j < k:
                        mpz_set(self.lam.at(k, j), u)
                    else:
                        if mpz_sgn(u) <= 0:
                            raise ZeroDivisionError("dependent")
                        mpz_set(self.dd(k + 1), u)
            while True:
                self.redi(k, k - 1)
                if self.lovasz_fails(k, num, den):
                    self.swap(k, kmax)
                    if k > 1:
                        k -= 1
                    continue
                for l in range(k - 2, -1, -1):
                    self.redi(k, l)
                k += 1
                break
        return 0


def lll_gram(gram, delta_num=3, delta_den=4):
    state = _LLL([list(row) for row in gram])
    state.run(delta_num, delta_den)
    return state.H.to_lists(), state.G.to_lists()


def ball_sign_mismatch(w, wbar, Py_ssize_t radius):
    cdef Py_ssize_t r = len(w)
    cdef list b = [0] * r
    cdef list wl = list(w)
    cdef list vl = list(wbar)

    def walk(Py_ssize_t i, Py_ssize_t budget, s1, s2):
        cdef Py_ssize_t v, mag
        if i == r or budget == 0:
            if (s1 > 0) - (s1 < 0) != (s2 > 0) - (s2 < 0):
                return tuple(b)
            return None
        wi = wl[i]
        vi = vl[i]
        hit = walk(i + 1, budget, s1, s2)
        if hit is not None:
            return hit
        for mag in range(1, budget + 1):
            for v in (mag, -mag):
                b[i] = v
                hit = walk(i + 1, budget - mag, s1 + v * wi, s2 + v * vi)
                if hit is not None:
                    return hit
        b[i] = 0
        return None

    return walk(0, radius, 0, 0)
