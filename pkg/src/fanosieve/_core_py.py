"""Pure-Python kernels; mirrors ``_core.pyx`` line for line."""

from __future__ import annotations


def scan(options, offsets, counts, target, modulus, first_only):
    """Walk the mixed-radix product of option indices in lexicographic order.

    ``options`` is a flat list; option ``i`` of group ``g`` is the length-S
    slice starting at ``(offsets[g] + i) * S``.  At each leaf the summed
    vector is compared with ``target`` modulo ``modulus``.

    Returns ``(first, minfail)``: with ``first_only`` the index list of the
    first matching leaf (or None) and an empty list; otherwise None and, for
    every leaf, the 1-based position of the first mismatch (0 = match).
    """
    G = len(counts)
    S = len(target)
    partial = [0] * ((G + 1) * S)
    idx = [0] * G
    minfail = []

    for h in range(G):
        base = (offsets[h] + idx[h]) * S
        for s in range(S):
            partial[(h + 1) * S + s] = (partial[h * S + s] + options[base + s]) % modulus

    leaf = G * S
    while True:
        fail = 0
        for s in range(S):
            if partial[leaf + s] != target[s]:
                fail = s + 1
                break
        if first_only:
            if fail == 0:
                return list(idx), []
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

    return None, minfail


def basket_dfs(costs, masks, prune, full_mask, budget):
    """Index sequences ``i1 <= i2 <= ...`` of record kinds within ``budget``.

    Costs are pre-scaled integers.  ``masks[i]`` marks the prime powers of J
    that kind ``i`` covers; ``prune[m]`` is the least cost of covering the
    prime powers in mask ``m``.  A sequence is emitted when its masks cover
    ``full_mask``; emission order is depth-first, prefixes first.
    """
    K = len(costs)
    out = []
    stack = []

    def extend(start, spent, covered):
        missing = full_mask & ~covered
        if missing == 0:
            out.append(tuple(stack))
        elif spent + prune[missing] > budget:
            return
        for i in range(start, K):
            total = spent + costs[i]
            if total <= budget:
                stack.append(i)
                extend(i, total, covered | masks[i])
                stack.pop()

    extend(0, 0, 0)
    return out


def uniform_failures(rs, ds, scales, targets, modulus):
    """The ``s`` (1-based) whose target no residue choice can reach.

    For each ``s`` the reachable totals are built record by record: record
    ``i`` adds ``d w (r - w) scale`` mod ``modulus`` with ``w = s x mod r``
    for some ``0 <= x <= r/2``.
    """
    out = []
    for s in range(1, len(targets) + 1):
        reach = {0}
        for r, d, scale in zip(rs, ds, scales):
            ws = {s * x % r for x in range(r // 2 + 1)}
            values = {d * w * (r - w) * scale % modulus for w in ws}
            reach = {(a + v) % modulus for a in reach for v in values}
        if targets[s - 1] not in reach:
            out.append(s)
    return out


def run_options(r, d, scale, m, S, modulus):
    """Summed term vectors for every sorted choice of ``m`` residues in ``[0, r/2]``.

    Choices are visited in ``combinations_with_replacement`` order and the
    vectors (length ``S``, entry ``s - 1`` for ``s = 1..S``) are concatenated.
    """
    h = r // 2
    vec = [[d * (s * x % r) * (r - s * x % r) * scale % modulus for s in range(1, S + 1)] for x in range(h + 1)]
    out = []
    combo = [0] * m
    while True:
        total = [0] * S
        for x in combo:
            total = [(a + b) % modulus for a, b in zip(total, vec[x])]
        out.extend(total)
        i = m - 1
        while i >= 0 and combo[i] == h:
            i -= 1
        if i < 0:
            return out
        combo[i:] = [combo[i] + 1] * (m - i)
