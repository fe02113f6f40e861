"""Pure-Python twin of the compiled ``_dp`` kernels (same signatures, same results)."""

import numpy as np


def cost_table(a, af, b, bf, sub, indel, mult):
    m, n = len(a), len(b)
    a, af, b, bf = list(a), list(af), list(b), list(bf)
    sub = sub.tolist() if hasattr(sub, "tolist") else sub
    mult = list(mult)
    t = [[0.0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        t[i][0] = t[i - 1][0] + indel * mult[af[i - 1]]
    for j in range(1, n + 1):
        t[0][j] = t[0][j - 1] + indel * mult[bf[j - 1]]
    for i in range(1, m + 1):
        row_sub = sub[a[i - 1]]
        fa = af[i - 1]
        del_cost = indel * mult[fa]
        prev_row, row = t[i - 1], t[i]
        for j in range(1, n + 1):
            fb = bf[j - 1]
            best = prev_row[j - 1] + row_sub[b[j - 1]] * mult[fa | fb]
            up = prev_row[j] + del_cost
            if up < best:
                best = up
            left = row[j - 1] + indel * mult[fb]
            if left < best:
                best = left
            row[j] = best
    return np.array(t, dtype=np.float64)


def pairwise(a, af, a_off, b, bf, b_off, sub, indel, mult):
    a, af, b, bf = list(a), list(af), list(b), list(bf)
    a_off, b_off = list(a_off), list(b_off)
    out = np.empty((len(a_off) - 1, len(b_off) - 1), dtype=np.float64)
    for p in range(len(a_off) - 1):
        sa, saf = a[a_off[p]:a_off[p + 1]], af[a_off[p]:a_off[p + 1]]
        for q in range(len(b_off) - 1):
            sb, sbf = b[b_off[q]:b_off[q + 1]], bf[b_off[q]:b_off[q + 1]]
            out[p, q] = cost_table(sa, saf, sb, sbf, sub, indel, mult)[-1, -1]
    return out
