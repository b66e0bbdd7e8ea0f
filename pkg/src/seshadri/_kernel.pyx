# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-enumeration kernel.

Same contract and enumeration order as seshadri._oracle_py.min_ratio; this
version keeps the whole scan in C integers.  Limits: 16 variables, 64 bound
expressions, 16 forms per side (far beyond every problem in this package).
"""


def min_ratio(
    int nvars,
    list expr_const,
    list expr_coeffs,
    list lo_start,
    list lo_count,
    list hi_start,
    list hi_count,
    list num_forms,
    list den_forms,
):
    cdef int n_exprs = len(expr_const)
    cdef int nf = len(num_forms)
    cdef int nd = len(den_forms)
    if nvars > 16 or n_exprs > 64 or nf > 16 or nd > 16:
        raise ValueError("problem exceeds compiled kernel limits")

    cdef long long c_const[64]
    cdef long long c_coeffs[64][16]
    cdef int c_lo_start[16]
    cdef int c_lo_count[16]
    cdef int c_hi_start[16]
    cdef int c_hi_count[16]
    cdef long long c_num[16][16]
    cdef long long c_den[16][16]

    cdef int i, j, e, f, g
    for e in range(n_exprs):
        c_const[e] = expr_const[e]
        row = expr_coeffs[e]
        for j in range(nvars):
            c_coeffs[e][j] = row[j]
    for i in range(nvars):
        c_lo_start[i] = lo_start[i]
        c_lo_count[i] = lo_count[i]
        c_hi_start[i] = hi_start[i]
        c_hi_count[i] = hi_count[i]
    for f in range(nf):
        row = num_forms[f]
        for j in range(nvars):
            c_num[f][j] = row[j]
    for g in range(nd):
        row = den_forms[g]
        for j in range(nvars):
            c_den[g][j] = row[j]

    cdef long long x[16]
    cdef long long hi[16]
    cdef long long npart[17][16]
    cdef long long dpart[17][16]
    cdef long long best_point[16]
    cdef bint found = False
    cdef bint entering = True
    cdef long long best_num = 0, best_den = 0, count = 0
    cdef long long v, lo_v, hi_v, num, den, value
    cdef bint have_lo, have_hi

    for f in range(nf):
        npart[0][f] = 0
    for g in range(nd):
        dpart[0][g] = 0

    i = 0
    while True:
        if entering:
            have_lo = False
            lo_v = 0
            for e in range(c_lo_start[i], c_lo_start[i] + c_lo_count[i]):
                v = c_const[e]
                for j in range(i):
                    v += c_coeffs[e][j] * x[j]
                if not have_lo or v > lo_v:
                    lo_v = v
                    have_lo = True
            have_hi = False
            hi_v = 0
            for e in range(c_hi_start[i], c_hi_start[i] + c_hi_count[i]):
                v = c_const[e]
                for j in range(i):
                    v += c_coeffs[e][j] * x[j]
                if not have_hi or v < hi_v:
                    hi_v = v
                    have_hi = True
            x[i] = lo_v
            hi[i] = hi_v
            entering = False
        if x[i] > hi[i]:
            i -= 1
            if i < 0:
                break
            x[i] += 1
            continue
        value = x[i]
        for f in range(nf):
            npart[i + 1][f] = npart[i][f] + c_num[f][i] * value
        for g in range(nd):
            dpart[i + 1][g] = dpart[i][g] + c_den[g][i] * value
        if i == nvars - 1:
            count += 1
            den = dpart[nvars][0]
            for g in range(1, nd):
                if dpart[nvars][g] < den:
                    den = dpart[nvars][g]
            if den > 0:
                num = npart[nvars][0]
                for f in range(1, nf):
                    if npart[nvars][f] < num:
                        num = npart[nvars][f]
                if not found or num * best_den < best_num * den:
                    found = True
                    best_num = num
                    best_den = den
                    for j in range(nvars):
                        best_point[j] = x[j]
            x[i] += 1
            continue
        i += 1
        entering = True

    point = tuple(best_point[j] for j in range(nvars)) if found else None
    return (bool(found), int(best_num), int(best_den), point, int(count))
