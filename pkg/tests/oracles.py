"""Independent reference implementations used to cross-check the package.

Each oracle is written straight from the definitions with plain loops and
shares no helper with the code under test beyond the data classes.
"""
from itertools import product

OPS = {"and": "meet", "or": "join", "imp": "imp", "not": "neg"}


def closure(formulas):
    seen, out = set(), []

    def walk(f):
        for a in f.args:
            walk(a)
        if id(f) not in seen:
            seen.add(id(f))
            out.append(f)

    for f in formulas:
        walk(f)
    return out


def cell(h, f, vals):
    if f.op == "not":
        return h.neg[vals[f.args[0]]]
    return getattr(h, OPS[f.op])[vals[f.args[0]]][vals[f.args[1]]]


def brute_consequence(h, gamma, phi):
    """Enumerate every total assignment on the closure, keep the legal ones, no pruning.

    Returns ``(holds, first countermodel or None, number of assignments)``.
    """
    nodes = closure(list(gamma) + [phi])
    des = h.designated_set
    count = 0
    for vals in product(range(h.n), repeat=len(nodes)):
        count += 1
        v = dict(zip(nodes, vals))
        if any(not f.is_var and v[f] not in cell(h, f, v) for f in nodes):
            continue
        if all(v[g] in des for g in gamma) and v[phi] not in des:
            return False, v, count
    return True, None, count


def brute_valid(h, phi):
    return brute_consequence(h, [], phi)[0]


def brute_bival(gamma, phi):
    """C_min bivaluations over the closure by full 0/1 enumeration."""
    nodes = closure(list(gamma) + [phi])
    for bits in product((0, 1), repeat=len(nodes)):
        b = dict(zip(nodes, bits))
        ok = True
        for f in nodes:
            if f.op == "and":
                ok = b[f] == (b[f.args[0]] and b[f.args[1]])
            elif f.op == "or":
                ok = b[f] == (b[f.args[0]] or b[f.args[1]])
            elif f.op == "imp":
                ok = b[f] == ((not b[f.args[0]]) or b[f.args[1]])
            elif f.op == "not":
                a = f.args[0]
                ok = not (b[a] == 0 and b[f] == 0)
                if ok and a.op == "not" and b[f] == 1:
                    ok = b[a.args[0]] == 1
            if not ok:
                break
        if ok and all(b[g] == 1 for g in gamma) and b[phi] == 0:
            return False, b
    return True, None


def residual(leq, meet_cell, x, y):
    """Max{z : every member of x^z is below y}, straight from the definition."""
    n = len(leq)
    r = [z for z in range(n) if all(leq[m][y] for m in meet_cell(x, z))]
    return frozenset(z for z in r if all(not leq[z][w] or leq[w][z] for w in r))


def lattice_residual(leq, x, y):
    """Classical residual on a finite lattice: the greatest z with glb(x, z) <= y."""
    n = len(leq)

    def glb(a, b):
        lbs = [c for c in range(n) if leq[c][a] and leq[c][b]]
        return [c for c in lbs if all(leq[d][c] for d in lbs)][0]

    zs = [z for z in range(n) if leq[glb(x, z)][y]]
    return [z for z in zs if all(leq[w][z] for w in zs)][0]


def s0_comprehension(n, leq, meet, join, imp, top):
    """Snapshot tables of a deterministic lattice, from the set-builder definitions.

    ``meet/join/imp`` are functions on elements; ``top`` is the greatest element.
    Returns ``(snapshots, {op: table}, neg)`` with tables of index sets.
    """
    snaps = sorted((a, b) for a in range(n) for b in range(n) if join(a, b) == top)
    idx = {z: i for i, z in enumerate(snaps)}
    tables = {}
    for name, f in (("meet", meet), ("join", join), ("imp", imp)):
        tables[name] = [
            [frozenset(idx[u] for u in snaps if u[0] == f(z[0], w[0])) for w in snaps] for z in snaps
        ]
    neg = [frozenset(idx[u] for u in snaps if u[0] == z[1] and leq[u[1]][z[0]]) for z in snaps]
    return snaps, tables, neg


def truth_table(f, v):
    """Classical evaluation with 0/1 values."""
    if f.is_var:
        return v[f.name]
    if f.op == "not":
        return 1 - truth_table(f.args[0], v)
    a, b = (truth_table(g, v) for g in f.args)
    return {"and": a & b, "or": a | b, "imp": (1 - a) | b}[f.op]


def schema_instance(schema, f):
    """Naive matcher: metavariables are the variables of the schema, bound consistently."""
    sigma = {}

    def go(s, g):
        if s.is_var:
            if s.name in sigma:
                return sigma[s.name] is g
            sigma[s.name] = g
            return True
        return s.op == g.op and len(s.args) == len(g.args) and all(go(a, b) for a, b in zip(s.args, g.args))

    return go(schema, f)
