# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernels; same contract as ``_kernels_py``.

Odd masks that fit in 63 bits take a machine-word path for the sign of the
merge permutation; wider masks fall back to Python integers.
"""

BACKEND = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cdef object _WORD_LIMIT = 1 << 63


cdef inline bint _negates_word(unsigned long long ma, unsigned long long mb) nogil:
    cdef unsigned long long m = mb, low, above
    cdef int inv = 0
    while m:
        low = m & (~m + 1)
        above = ~((low << 1) - 1)
        inv += __builtin_popcountll(ma & above)
        m ^= low
    return inv & 1


cdef bint _negates_big(object ma, object mb):
    cdef long inv = 0
    m = mb
    while m:
        low = m & -m
        inv += (ma & ~((low << 1) - 1)).bit_count()
        m ^= low
    return inv & 1


cdef inline bint _negates(object ma, object mb):
    if ma < _WORD_LIMIT and mb < _WORD_LIMIT:
        return _negates_word(<unsigned long long> ma, <unsigned long long> mb)
    return _negates_big(ma, mb)


def merge_negates(ma, mb):
    return bool(_negates(ma, mb))


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef list bitems = list(b.items())
    cdef list aitems = list(a.items())
    cdef Py_ssize_t i, j, na = len(aitems), nb = len(bitems)
    cdef bint small
    cdef unsigned long long wa, wb
    cdef tuple akey, bkey, acoef, bcoef, key, old
    for i in range(na):
        akey = <tuple> aitems[i][0]
        acoef = <tuple> aitems[i][1]
        ea = akey[0]
        ma = akey[1]
        ar = acoef[0]
        ai = acoef[1]
        a_real = ai == 0
        small_a = ma < _WORD_LIMIT
        if small_a:
            wa = <unsigned long long> ma
        for j in range(nb):
            bkey = <tuple> bitems[j][0]
            mb = bkey[1]
            small = small_a and mb < _WORD_LIMIT
            if small:
                wb = <unsigned long long> mb
                if wa & wb:
                    continue
            elif ma & mb:
                continue
            bcoef = <tuple> bitems[j][1]
            br = bcoef[0]
            bi = bcoef[1]
            if a_real and bi == 0:
                re = ar * br
                im = 0
            else:
                re = ar * br - ai * bi
                im = ar * bi + ai * br
            if small:
                if wa and wb and _negates_word(wa, wb):
                    re = -re
                    im = -im
            elif ma and mb and _negates_big(ma, mb):
                re = -re
                im = -im
            key = (ea + bkey[0], ma | mb)
            o = out.get(key)
            if o is None:
                out[key] = (re, im)
            else:
                old = <tuple> o
                out[key] = (old[0] + re, old[1] + im)
    return {k: v for k, v in out.items() if v[0] != 0 or v[1] != 0}


def add_terms(dict a, dict b, bint negate=False):
    cdef dict out = dict(a)
    cdef tuple old
    for key, coef in b.items():
        br = coef[0]
        bi = coef[1]
        if negate:
            br = -br
            bi = -bi
        o = out.get(key)
        if o is None:
            out[key] = (br, bi)
        else:
            old = <tuple> o
            re = old[0] + br
            im = old[1] + bi
            if re == 0 and im == 0:
                del out[key]
            else:
                out[key] = (re, im)
    return out


def scale_terms(dict a, tuple c):
    cr = c[0]
    ci = c[1]
    if cr == 0 and ci == 0:
        return {}
    cdef dict out = {}
    if ci == 0:
        for key, coef in a.items():
            out[key] = (coef[0] * cr, coef[1] * cr)
    else:
        for key, coef in a.items():
            ar = coef[0]
            ai = coef[1]
            out[key] = (ar * cr - ai * ci, ar * ci + ai * cr)
    return out


def shift_terms(dict a, exps, mask, tuple c):
    cr = c[0]
    ci = c[1]
    cdef dict out = {}
    for key, coef in a.items():
        ma = key[1]
        if ma & mask:
            continue
        ar = coef[0]
        ai = coef[1]
        if ci == 0:
            re = ar * cr
            im = ai * cr
        else:
            re = ar * cr - ai * ci
            im = ar * ci + ai * cr
        if mask and ma and _negates(ma, mask):
            re = -re
            im = -im
        out[(key[0] + exps, ma | mask)] = (re, im)
    return out
