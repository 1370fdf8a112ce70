"""Pure-Python term kernels for super-polynomials.

A term dictionary maps ``(exps, mask)`` to a coefficient pair ``(re, im)``.
``exps`` packs the even exponents into fixed-width bit fields of one int, so
monomial products are integer additions; ``mask`` is the set of odd
generators as a bitmask, ordered by increasing index.

The compiled module ``_kernels`` implements the same functions; both must
agree term for term.
"""

BACKEND = "python"


def merge_negates(ma, mb):
    """True iff sorting the odd word ``ma`` followed by ``mb`` is an odd permutation."""
    inv = 0
    m = mb
    while m:
        low = m & -m
        # odd generators of ma lying above this generator of mb
        inv += (ma & ~((low << 1) - 1)).bit_count()
        m ^= low
    return bool(inv & 1)


def mul_terms(a, b):
    out = {}
    get = out.get
    bitems = list(b.items())
    for (ea, ma), (ar, ai) in a.items():
        for (eb, mb), (br, bi) in bitems:
            if ma & mb:
                continue
            if ai == 0 and bi == 0:
                re = ar * br
                im = 0
            else:
                re = ar * br - ai * bi
                im = ar * bi + ai * br
            if mb and ma and merge_negates(ma, mb):
                re = -re
                im = -im
            key = (ea + eb, ma | mb)
            old = get(key)
            if old is None:
                out[key] = (re, im)
            else:
                out[key] = (old[0] + re, old[1] + im)
    return {k: v for k, v in out.items() if v[0] != 0 or v[1] != 0}


def add_terms(a, b, negate=False):
    out = dict(a)
    get = out.get
    for key, (br, bi) in b.items():
        if negate:
            br = -br
            bi = -bi
        old = get(key)
        if old is None:
            out[key] = (br, bi)
        else:
            re = old[0] + br
            im = old[1] + bi
            if re == 0 and im == 0:
                del out[key]
            else:
                out[key] = (re, im)
    return out


def scale_terms(a, c):
    cr, ci = c
    if cr == 0 and ci == 0:
        return {}
    out = {}
    if ci == 0:
        for key, (ar, ai) in a.items():
            out[key] = (ar * cr, ai * cr)
    else:
        for key, (ar, ai) in a.items():
            out[key] = (ar * cr - ai * ci, ar * ci + ai * cr)
    return out


def shift_terms(a, exps, mask, c):
    """Multiply every term by the monomial ``c * x^exps * xi_mask`` (mask on the right)."""
    cr, ci = c
    out = {}
    for (ea, ma), (ar, ai) in a.items():
        if ma & mask:
            continue
        if ci == 0:
            re = ar * cr
            im = ai * cr
        else:
            re = ar * cr - ai * ci
            im = ar * ci + ai * cr
        if mask and ma and merge_negates(ma, mask):
            re = -re
            im = -im
        out[(ea + exps, ma | mask)] = (re, im)
    return out
