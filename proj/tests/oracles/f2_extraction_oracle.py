#!/usr/bin/env python3
"""Independent end-to-end check of the F2 extraction: builds the I-function,
mirror map, J = I o kappa^{-1}, theta-word frame and Omega = C^{-1} C_shift
entirely in Fractions, with its own series types.  Prints the z-support of the
extracted Omega matrices."""

from fractions import Fraction
from itertools import product

ORDER = 3
NVARS = 2  # q1 (section dual), q2 (fiber dual)

# cohomology of F2, basis [1, p1, p2, p1p2]; p1 = section, p2 = fiber
# relations: p2^2 = 0, p1^2 = 2 p1 p2
BAS = 4

def cmul_table():
    # table[i][j] = vector of products
    def z4():
        return [Fraction(0)] * 4
    t = [[z4() for _ in range(4)] for _ in range(4)]
    def setv(i, j, vec):
        t[i][j] = [Fraction(x) for x in vec]
        t[j][i] = [Fraction(x) for x in vec]
    setv(0, 0, [1, 0, 0, 0])
    setv(0, 1, [0, 1, 0, 0])
    setv(0, 2, [0, 0, 1, 0])
    setv(0, 3, [0, 0, 0, 1])
    setv(1, 1, [0, 0, 0, 2])   # p1^2 = 2 p1p2
    setv(1, 2, [0, 0, 0, 1])
    setv(2, 2, [0, 0, 0, 0])   # p2^2 = 0
    setv(1, 3, [0, 0, 0, 0])
    setv(2, 3, [0, 0, 0, 0])
    setv(3, 3, [0, 0, 0, 0])
    return t

TABLE = cmul_table()

def cvmul(u, v):
    out = [Fraction(0)] * 4
    for i in range(4):
        if u[i] == 0:
            continue
        for j in range(4):
            if v[j] == 0:
                continue
            c = u[i] * v[j]
            for k in range(4):
                out[k] += c * TABLE[i][j][k]
    return out

P1 = [Fraction(0), Fraction(1), Fraction(0), Fraction(0)]
P2 = [Fraction(0), Fraction(0), Fraction(1), Fraction(0)]
ONE = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]

# series: dict (e1,e2,j) -> class-vector, truncated componentwise at ORDER
def sadd(s, key, vec):
    if key[0] > ORDER or key[1] > ORDER:
        return
    if all(x == 0 for x in vec):
        return
    cur = s.get(key)
    if cur is None:
        s[key] = list(vec)
    else:
        new = [a + b for a, b in zip(cur, vec)]
        if all(x == 0 for x in new):
            del s[key]
        else:
            s[key] = new

def smul(a, b):
    out = {}
    for (e1, e2, j1), va in a.items():
        for (f1, f2, j2), vb in b.items():
            sadd(out, (e1 + f1, e2 + f2, j1 + j2), cvmul(va, vb))
    return out

def sscale(a, c):
    return {k: [x * c for x in v] for k, v in a.items()} if c != 0 else {}

def splus(a, b):
    out = {k: list(v) for k, v in a.items()}
    for k, v in b.items():
        sadd(out, k, v)
    return out

# ---- interior I-series ----
M_COLS = [(0, 1, 0, 1), (1, -2, 1, 0)]
D = [P2, [Fraction(0), Fraction(1), Fraction(-2), Fraction(0)], P2, P1]

def inv_linear(d, nu):
    # (D + nu z)^{-1} = sum_k (-1)^k D^k nu^{-k-1} z^{-k-1}
    out = {}
    pw = ONE
    sign = Fraction(1)
    nupow = Fraction(nu)
    for k in range(0, 3):
        sadd(out, (0, 0, -k - 1), [x * sign / nupow for x in pw])
        pw = cvmul(pw, d)
        sign = -sign
        nupow *= nu
    return out

def ratio(d, li):
    out = {(0, 0, 0): list(ONE)}
    if li >= 0:
        for nu in range(1, li + 1):
            out = smul(out, inv_linear(d, nu))
    else:
        for nu in range(li + 1, 1):
            f = {(0, 0, 0): list(d)}
            sadd(f, (0, 0, 1), [Fraction(nu) * x for x in ONE])
            out = smul(out, f)
    return out

def build_interior():
    s = {}
    for e1, e2 in product(range(ORDER + 1), repeat=2):
        l = tuple(e1 * M_COLS[0][i] + e2 * M_COLS[1][i] for i in range(4))
        term = {(0, 0, 0): list(ONE)}
        for i in range(4):
            term = smul(term, ratio(D[i], l[i]))
        for (a, b, j), v in term.items():
            sadd(s, (e1 + a, e2 + b, j), v)
    return s

# ---- univariate series helpers in q2 (gamma' depends only on q2) ----
def u_mul(a, b):
    out = [Fraction(0)] * (ORDER + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= ORDER:
                out[i + j] += x * y
    return out

def u_exp(a):
    assert a[0] == 0
    out = [Fraction(0)] * (ORDER + 1)
    out[0] = Fraction(1)
    pw = [Fraction(0)] * (ORDER + 1)
    pw[0] = Fraction(1)
    fact = 1
    for k in range(1, ORDER + 1):
        pw = u_mul(pw, a)
        fact *= k
        for i in range(ORDER + 1):
            out[i] += pw[i] / fact
    return out

def u_log(a):
    assert a[0] == 1
    x = list(a)
    x[0] = Fraction(0)
    out = [Fraction(0)] * (ORDER + 1)
    pw = [Fraction(0)] * (ORDER + 1)
    pw[0] = Fraction(1)
    for k in range(1, ORDER + 1):
        pw = u_mul(pw, x)
        sign = Fraction(1 if k % 2 == 1 else -1, k)
        for i in range(ORDER + 1):
            out[i] += sign * pw[i]
    return out

def u_compose(a, inner):
    # a(q2) composed with q2 -> inner (inner[1] != 0, inner[0] = 0)
    out = [Fraction(0)] * (ORDER + 1)
    pw = [Fraction(0)] * (ORDER + 1)
    pw[0] = Fraction(1)
    for k, coeff in enumerate(a):
        if k > 0:
            pw = u_mul(pw, inner)
        for i in range(ORDER + 1):
            out[i] += coeff * pw[i]
    return out

def main():
    interior = build_interior()

    # gamma' from the z^{-1} coefficient
    g1 = [Fraction(0)] * (ORDER + 1)  # component on p1, series in q2
    g2 = [Fraction(0)] * (ORDER + 1)
    for (e1, e2, j), v in interior.items():
        if j != -1:
            continue
        assert v[0] == 0 and v[3] == 0
        assert e1 == 0
        g1[e2] += v[1]
        g2[e2] += v[2]
    print("gamma'_1 (on p1):", g1)
    print("gamma'_2 (on p2):", g2)

    # kappa_a = q_a exp(g_a); inverse units w_a(q2hat) with
    # w2 solving w2 = exp(-g2(q2hat * w2)), w1 = exp(-g1(q2hat * w2))
    w2 = [Fraction(0)] * (ORDER + 1)
    w2[0] = Fraction(1)
    for _ in range(ORDER + 2):
        q2w2 = u_mul([Fraction(0), Fraction(1)] + [Fraction(0)] * (ORDER - 1), w2)
        w2 = u_exp([-x for x in u_compose(g2, q2w2)])
    q2w2 = u_mul([Fraction(0), Fraction(1)] + [Fraction(0)] * (ORDER - 1), w2)
    w1 = u_exp([-x for x in u_compose(g1, q2w2)])
    print("w1:", w1)
    print("w2:", w2)

    # J interior: substitute q1 -> q1 w1(q2), q2 -> q2 w2(q2) into the interior,
    # then multiply by exp((log w1 p1 + log w2 p2)/z)
    j_int = {}
    w1pows = [[Fraction(1)] + [Fraction(0)] * ORDER]
    w2pows = [[Fraction(1)] + [Fraction(0)] * ORDER]
    for k in range(ORDER):
        w1pows.append(u_mul(w1pows[-1], w1))
        w2pows.append(u_mul(w2pows[-1], w2))
    for (e1, e2, j), v in interior.items():
        scal = u_mul(w1pows[e1], w2pows[e2])
        for k, c in enumerate(scal):
            if c != 0:
                sadd(j_int, (e1, e2 + k, j), [x * c for x in v])
    lw1 = u_log(w1)
    lw2 = u_log(w2)
    fac = {(0, 0, 0): list(ONE)}
    for (lw, p) in ((lw1, P1), (lw2, P2)):
        f = {(0, 0, 0): list(ONE)}
        pw = list(ONE)
        lk = [Fraction(1)] + [Fraction(0)] * ORDER
        fact = 1
        for k in range(1, 3):
            pw = cvmul(pw, p)
            lk = u_mul(lk, lw)
            fact *= k
            for i, c in enumerate(lk):
                if c != 0:
                    sadd(f, (0, i, -k), [x * c / fact for x in pw])
        fac = smul(fac, f)
    j_int = smul(fac, j_int)

    # words: G_{} = j_int; G_{w.a} = p_a G + z q_a d/dq_a G
    def theta(s, a):
        out = {}
        for (e1, e2, j), v in s.items():
            e = (e1, e2)
            if e[a] != 0:
                sadd(out, (e1, e2, j + 1), [x * e[a] for x in v])
        return out

    def dword(s, a):
        return splus(smul({(0, 0, 0): list(P1 if a == 0 else P2)}, s), theta(s, a))

    words = {(): j_int}
    for w in [(0,), (1,), (0, 1), (0, 0), (1, 1), (0, 0, 1), (0, 1, 1)]:
        g = words[w[:-1]]
        words[w] = dword(g, w[-1])

    basis_words = [(), (0,), (1,), (0, 1)]
    # C entries: dict (h,w) -> dict (e1,e2,j) -> Fraction
    def column(g):
        cols = [dict() for _ in range(4)]
        for (e1, e2, j), v in g.items():
            for h in range(4):
                if v[h] != 0:
                    cols[h][(e1, e2, j)] = v[h]
        return cols

    C = [[None] * 4 for _ in range(4)]
    Cs = [[[None] * 4 for _ in range(4)] for _ in range(2)]
    for wi, w in enumerate(basis_words):
        col = column(words[w])
        for h in range(4):
            C[h][wi] = col[h]
        for a in range(2):
            wa = tuple(sorted(w + (a,)))
            cola = column(words[wa])
            for h in range(4):
                Cs[a][h][wi] = cola[h]

    # scalar-series matrix algebra
    def e_add(a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, Fraction(0)) + v
            if out[k] == 0:
                del out[k]
        return out

    def e_mul(a, b):
        out = {}
        for (e1, e2, j1), x in a.items():
            for (f1, f2, j2), y in b.items():
                k = (e1 + f1, e2 + f2, j1 + j2)
                if k[0] > ORDER or k[1] > ORDER:
                    continue
                out[k] = out.get(k, Fraction(0)) + x * y
                if out[k] == 0:
                    del out[k]
        return out

    def m_mul(A, B):
        out = [[dict() for _ in range(4)] for _ in range(4)]
        for i in range(4):
            for l in range(4):
                if not A[i][l]:
                    continue
                for j in range(4):
                    if B[l][j]:
                        out[i][j] = e_add(out[i][j], e_mul(A[i][l], B[l][j]))
        return out

    ident = [[({(0, 0, 0): Fraction(1)} if i == j else dict()) for j in range(4)] for i in range(4)]
    X = [[dict(C[i][j]) for j in range(4)] for i in range(4)]
    for i in range(4):
        X[i][i] = e_add(X[i][i], {(0, 0, 0): Fraction(-1)})
    Cinv = [[dict(ident[i][j]) for j in range(4)] for i in range(4)]
    pw = ident
    for s in range(1, 2 * ORDER + 2):
        pw = m_mul(pw, X)
        if all(not pw[i][j] for i in range(4) for j in range(4)):
            break
        sign = -1 if s % 2 == 1 else 1
        for i in range(4):
            for j in range(4):
                Cinv[i][j] = e_add(Cinv[i][j], {k: sign * v for k, v in pw[i][j].items()})

    # Y0 = z^0 part of C and its inverse (unipotent)
    ident = [[({(0, 0, 0): Fraction(1)} if i == j else dict()) for j in range(4)]
             for i in range(4)]
    Y0 = [[{k: v for k, v in C[i][j].items() if k[2] == 0} for j in range(4)] for i in range(4)]
    XY = [[dict(Y0[i][j]) for j in range(4)] for i in range(4)]
    for i in range(4):
        XY[i][i] = e_add(XY[i][i], {(0, 0, 0): Fraction(-1)})
    Y0inv = [[dict(ident[i][j]) for j in range(4)] for i in range(4)]
    pw = ident
    for s in range(1, 2 * ORDER + 2):
        pw = m_mul(pw, XY)
        if all(not pw[i][j] for i in range(4) for j in range(4)):
            break
        sign = -1 if s % 2 == 1 else 1
        for i in range(4):
            for j in range(4):
                Y0inv[i][j] = e_add(Y0inv[i][j], {k: sign * v for k, v in pw[i][j].items()})

    for a in range(2):
        Om = m_mul(Cinv, Cs[a])
        # the z-support must be {0, 1} with the z^1 part the gauge derivative
        dY = [[{k: v * k[a] for k, v in Y0[i][j].items() if k[a] != 0} for j in range(4)]
              for i in range(4)]
        gauge = m_mul(Y0inv, dY)
        bad = []
        Om0 = [[dict() for _ in range(4)] for _ in range(4)]
        for i in range(4):
            for j in range(4):
                for (e1, e2, jz), v in Om[i][j].items():
                    if jz == 0:
                        Om0[i][j][(e1, e2, 0)] = v
                    elif jz != 1 or gauge[i][j].get((e1, e2, 0), Fraction(0)) != v:
                        bad.append(((i, j), (e1, e2, jz), v))
        print(f"Omega_{a+1}: residuals beyond the gauge term: {bad if bad else 'NONE'}")
        Q = m_mul(m_mul(Y0, Om0), Y0inv)
        print(f"Q_{a+1} (flat frame):")
        for i in range(4):
            row = []
            for j in range(4):
                terms = sorted((k, v) for k, v in Q[i][j].items())
                row.append(" + ".join(f"{v}*q1^{k[0]}*q2^{k[1]}" for k, v in terms) or "0")
            print("  ", row)

if __name__ == "__main__":
    main()
