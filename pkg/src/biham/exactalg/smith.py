"""Smith normal form for matrices of univariate polynomials over Q.

Elementary row and column operations with degree-minimal pivot selection;
no modular arithmetic, no randomization.  The inputs of interest are
pencils (entry degree at most one), where coefficient growth stays mild.
"""

from ..errors import ValidationError


def smith_invariant_factors(rows) -> list:
    """Invariant factors s_1 | s_2 | ... | s_rho of a polynomial matrix.

    Returns the nonzero diagonal of the Smith normal form, monic, with the
    divisibility chain guaranteed by construction.  ``rho`` is the rank of
    the matrix over the field of rational functions.
    """
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    if any(len(r) != n_cols for r in m):
        raise ValidationError("ragged polynomial matrix")
    if n_rows != n_cols:
        raise ValidationError("smith form expects a square matrix")

    factors = []
    t = 0
    while t < min(n_rows, n_cols):
        pivot = _min_degree_entry(m, t)
        if pivot is None:
            break
        while True:
            pi, pj = _min_degree_entry(m, t)
            if (pi, pj) != (t, t):
                if pi != t:
                    m[t], m[pi] = m[pi], m[t]
                if pj != t:
                    for r in m:
                        r[t], r[pj] = r[pj], r[t]
            piv = m[t][t]
            dirty = False
            for i in range(t + 1, n_rows):
                if not m[i][t].is_zero():
                    q = m[i][t] // piv
                    for j in range(t, n_cols):
                        m[i][j] = m[i][j] - q * m[t][j]
                    if not m[i][t].is_zero():
                        dirty = True
            for j in range(t + 1, n_cols):
                if not m[t][j].is_zero():
                    q = m[t][j] // piv
                    for i in range(t, n_rows):
                        m[i][j] = m[i][j] - q * m[i][t]
                    if not m[t][j].is_zero():
                        dirty = True
            if dirty:
                continue
            # pivot now alone in its row and column; force divisibility
            offender = None
            for i in range(t + 1, n_rows):
                for j in range(t + 1, n_cols):
                    if not (m[i][j] % piv).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(t, n_cols):
                m[t][j] = m[t][j] + m[offender][j]
        factors.append(m[t][t].monic())
        t += 1
    return factors


def _min_degree_entry(m, t):
    best = None
    best_deg = None
    for i in range(t, len(m)):
        for j in range(t, len(m[0])):
            p = m[i][j]
            if p.is_zero():
                continue
            d = p.degree()
            if best_deg is None or d < best_deg:
                best, best_deg = (i, j), d
                if d == 0:
                    return best
    return best
