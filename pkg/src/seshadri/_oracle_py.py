"""Pure-Python lattice-enumeration kernel.

Fallback for the compiled extension; both backends implement the same
contract and must visit lattice points in the same order, so the argmin is
identical.  Integer arithmetic only; ratios are compared by cross
multiplication (denominators are positive).
"""

from __future__ import annotations


def min_ratio(
    nvars: int,
    expr_const: list,
    expr_coeffs: list,
    lo_start: list,
    lo_count: list,
    hi_start: list,
    hi_count: list,
    num_forms: list,
    den_forms: list,
):
    """Scan integer points of a triangular region, minimizing a ratio.

    Variables are enumerated in order; bounds for variable i are the max of
    its lower expressions and the min of its upper expressions, each affine
    in the previous variables (constants already folded by the caller).  At
    each point the numerator is min over num_forms, the denominator min over
    den_forms; points with nonpositive denominator are skipped.

    Returns (found, best_num, best_den, best_point, points_scanned).
    """
    nf = len(num_forms)
    nd = len(den_forms)
    x = [0] * nvars
    hi = [0] * nvars
    npart = [[0] * nf for _ in range(nvars + 1)]
    dpart = [[0] * nd for _ in range(nvars + 1)]
    found = False
    best_num = 0
    best_den = 0
    best_point = None
    count = 0

    i = 0
    entering = True
    while True:
        if entering:
            lo_v = None
            for e in range(lo_start[i], lo_start[i] + lo_count[i]):
                v = expr_const[e]
                row = expr_coeffs[e]
                for j in range(i):
                    v += row[j] * x[j]
                if lo_v is None or v > lo_v:
                    lo_v = v
            hi_v = None
            for e in range(hi_start[i], hi_start[i] + hi_count[i]):
                v = expr_const[e]
                row = expr_coeffs[e]
                for j in range(i):
                    v += row[j] * x[j]
                if hi_v is None or v < hi_v:
                    hi_v = v
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
        base = npart[i]
        nxt = npart[i + 1]
        for f in range(nf):
            nxt[f] = base[f] + num_forms[f][i] * value
        base_d = dpart[i]
        nxt_d = dpart[i + 1]
        for g in range(nd):
            nxt_d[g] = base_d[g] + den_forms[g][i] * value
        if i == nvars - 1:
            count += 1
            den = min(nxt_d)
            if den > 0:
                num = min(nxt)
                if not found or num * best_den < best_num * den:
                    found = True
                    best_num = num
                    best_den = den
                    best_point = tuple(x)
            x[i] += 1
            continue
        i += 1
        entering = True

    return (found, best_num, best_den, best_point, count)
