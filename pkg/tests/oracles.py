"""Slow reference computations used only by the tests."""


def _solve_mod(A, b, p):
    n = len(A)
    M = [row[:] + [v] for row, v in zip(A, b)]
    for c in range(n):
        r = next(r for r in range(c, n) if M[r][c] % p)
        M[c], M[r] = M[r], M[c]
        iv = pow(M[c][c], p - 2, p)
        M[c] = [v * iv % p for v in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [(v - f * u) % p for v, u in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]


def _mul(a, b, p, N):
    c = [0] * N
    for i, x in enumerate(a):
        if x:
            for j in range(N - i):
                c[i + j] = (c[i + j] + x * b[j]) % p
    return c


def chord_branch(p, center, N, chart=0, param=1):
    """Branch of S_1 = ... = S_{m-2} = 0 over F_p at `center` by chord iteration.

    x_chart = 1 and x_param = center[param] + t; every sweep subtracts
    J^{-1} F(x) using the Jacobian at the center only.
    """
    m = len(center)
    inv = pow(center[chart], p - 2, p)
    P = [x * inv % p for x in center]
    A = [[k * pow(x, k - 1, p) % p for x in P] for k in range(1, m - 1)]
    A.append([int(i == chart) for i in range(m)])
    A.append([int(i == param) for i in range(m)])
    x = [[P[i]] + [0] * (N - 1) for i in range(m)]
    x[param][1] = 1
    for _ in range(N + 2):
        sums = [[0] * N for _ in range(m - 2)]
        for xi in x:
            y = xi
            for k in range(m - 2):
                if k:
                    y = _mul(y, xi, p, N)
                sums[k] = [(a + b) % p for a, b in zip(sums[k], y)]
        if not any(any(s) for s in sums):
            return x
        for n in range(N):
            rhs = [sums[k][n] for k in range(m - 2)] + [0, 0]
            if any(rhs):
                d = _solve_mod(A, rhs, p)
                for i in range(m):
                    x[i][n] = (x[i][n] - d[i]) % p
    raise ArithmeticError("chord iteration did not converge")


def pivot_columns(series, p):
    """Columns where the rank of the coefficient matrix increases."""
    rows = [r[:] for r in series]
    m, N = len(rows), len(rows[0])
    piv, r0 = [], 0
    for c in range(N):
        pr = next((r for r in range(r0, m) if rows[r][c]), None)
        if pr is None:
            continue
        rows[r0], rows[pr] = rows[pr], rows[r0]
        iv = pow(rows[r0][c], p - 2, p)
        rows[r0] = [v * iv % p for v in rows[r0]]
        for r in range(m):
            if r != r0 and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(v - f * u) % p for v, u in zip(rows[r], rows[r0])]
        piv.append(c)
        r0 += 1
    return piv
