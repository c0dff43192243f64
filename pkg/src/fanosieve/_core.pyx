# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_core_py`` for the contracts."""

from array import array
from math import comb

from libc.stdlib cimport calloc, free, malloc


def scan(const long long[:] options, const long long[:] offsets, const long long[:] counts,
         const long long[:] target, long long modulus, bint first_only):
    cdef Py_ssize_t G = counts.shape[0]
    cdef Py_ssize_t S = target.shape[0]
    cdef Py_ssize_t g, h, s, base, leaf = G * S
    cdef long long fail
    cdef long long[:] partial = array("q", [0]) * ((G + 1) * S)
    cdef long long[:] idx = array("q", [0]) * G if G else array("q")
    minfail = array("q")

    for h in range(G):
        base = (offsets[h] + idx[h]) * S
        for s in range(S):
            partial[(h + 1) * S + s] = (partial[h * S + s] + options[base + s]) % modulus

    while True:
        fail = 0
        for s in range(S):
            if partial[leaf + s] != target[s]:
                fail = s + 1
                break
        if first_only:
            if fail == 0:
                return [idx[h] for h in range(G)], []
        else:
            minfail.append(fail)

        g = G - 1
        while g >= 0:
            idx[g] += 1
            if idx[g] < counts[g]:
                break
            idx[g] = 0
            g -= 1
        if g < 0:
            break
        for h in range(g, G):
            base = (offsets[h] + idx[h]) * S
            for s in range(S):
                partial[(h + 1) * S + s] = (partial[h * S + s] + options[base + s]) % modulus

    return None, list(minfail)


cdef void _extend(const long long[:] costs, const long long[:] masks, const long long[:] prune,
                  long long full_mask, long long budget, Py_ssize_t start, long long spent,
                  long long covered, long long* stack, Py_ssize_t depth, list out):
    cdef Py_ssize_t i, j, K = costs.shape[0]
    cdef long long total
    cdef long long missing = full_mask & ~covered
    if missing == 0:
        out.append(tuple([stack[j] for j in range(depth)]))
    elif spent + prune[missing] > budget:
        return
    for i in range(start, K):
        total = spent + costs[i]
        if total <= budget:
            stack[depth] = i
            _extend(costs, masks, prune, full_mask, budget, i, total, covered | masks[i], stack, depth + 1, out)


def basket_dfs(const long long[:] costs, const long long[:] masks, const long long[:] prune,
               long long full_mask, long long budget):
    cdef long long stack[256]
    cdef list out = []
    if costs.shape[0] and budget // min(costs) >= 256:
        raise OverflowError("basket depth exceeds the compiled stack")
    _extend(costs, masks, prune, full_mask, budget, 0, 0, 0, stack, 0, out)
    return out


def uniform_failures(const long long[:] rs, const long long[:] ds, const long long[:] scales,
                     const long long[:] targets, long long modulus):
    cdef Py_ssize_t n = rs.shape[0], S = targets.shape[0]
    cdef Py_ssize_t i, j, k, x, s, nreach, nnew, nval, cap = 1, width = 1
    cdef long long r, w, v, t
    for i in range(n):
        width = max(width, rs[i] // 2 + 1)
        cap = min(cap * (rs[i] // 2 + 1), modulus)
    cdef unsigned char* seen = <unsigned char*> calloc(modulus, 1)
    cdef long long* reach = <long long*> malloc(cap * sizeof(long long))
    cdef long long* fresh = <long long*> malloc(cap * sizeof(long long))
    cdef long long* vals = <long long*> malloc(width * sizeof(long long))
    cdef long long* swap
    out = []
    if seen == NULL or reach == NULL or fresh == NULL or vals == NULL:
        free(seen); free(reach); free(fresh); free(vals)
        raise MemoryError()
    try:
        for s in range(1, S + 1):
            reach[0] = 0
            nreach = 1
            for i in range(n):
                r = rs[i]
                nval = 0
                for x in range(r // 2 + 1):
                    w = (s * x) % r
                    v = ds[i] * w * (r - w) * scales[i] % modulus
                    for k in range(nval):
                        if vals[k] == v:
                            break
                    else:
                        vals[nval] = v
                        nval += 1
                nnew = 0
                for j in range(nreach):
                    for k in range(nval):
                        t = (reach[j] + vals[k]) % modulus
                        if not seen[t]:
                            seen[t] = 1
                            fresh[nnew] = t
                            nnew += 1
                for j in range(nnew):
                    seen[fresh[j]] = 0
                swap = reach
                reach = fresh
                fresh = swap
                nreach = nnew
            for j in range(nreach):
                if reach[j] == targets[s - 1]:
                    break
            else:
                out.append(s)
    finally:
        free(seen); free(reach); free(fresh); free(vals)
    return out


def run_options(long long r, long long d, long long scale, Py_ssize_t m, Py_ssize_t S, long long modulus):
    cdef Py_ssize_t h = r // 2, i, s, x, row, at = 0
    cdef long long w
    cdef long long[:] vec = array("q", [0]) * ((h + 1) * S)
    cdef long long[:] combo = array("q", [0]) * m if m else array("q")
    out = array("q", [0]) * (comb(h + m, m) * S)
    cdef long long[:] view = out
    for x in range(h + 1):
        for s in range(S):
            w = ((s + 1) * x) % r
            vec[x * S + s] = d * w * (r - w) * scale % modulus
    while True:
        for i in range(m):
            row = combo[i] * S
            for s in range(S):
                view[at + s] = (view[at + s] + vec[row + s]) % modulus
        at += S
        i = m - 1
        while i >= 0 and combo[i] == h:
            i -= 1
        if i < 0:
            return out
        combo[i] += 1
        for x in range(i + 1, m):
            combo[x] = combo[i]
