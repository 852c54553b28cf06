"""Exact Weyl algebra of the lattice canonical operators.

Elements are noncommutative polynomials in p_m and e^{+-q_m} with Q(i)
coefficients, kept in the canonical normal order "all e^{a.q} factors to the
left of all p powers".  Multiplication re-normal-orders through
p_m e^{a q_m} = e^{a q_m} (p_m - i a).

On top of the algebra sit the 2x2 Lax matrices, the monodromy matrix, and
exact (coefficient-wise) checks of the RLL relation, commutativity of the
conserved quantities, and the A/C recursion.
"""

from __future__ import annotations

import math
from typing import Dict, List, Tuple

from .rationals import QI, ONE, ZERO
from .report import VerificationReport

Mono = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (exp_q, pow_p)


class WeylElement:
    """Normal-ordered noncommutative polynomial over n lattice sites."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Mono, QI] | None = None):
        self.n = n
        self.terms: Dict[Mono, QI] = {}
        if terms:
            for mono, c in terms.items():
                if not c.is_zero():
                    self.terms[mono] = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "WeylElement":
        c = c if isinstance(c, QI) else QI(c)
        zq = (0,) * n
        return cls(n, {(zq, zq): c})

    @classmethod
    def one(cls, n: int) -> "WeylElement":
        return cls.constant(n, 1)

    @classmethod
    def p(cls, n: int, m: int) -> "WeylElement":
        """Momentum operator p_m (1-based site index)."""
        zq = (0,) * n
        pp = tuple(1 if k == m - 1 else 0 for k in range(n))
        return cls(n, {(zq, pp): ONE})

    @classmethod
    def exp_q(cls, n: int, m: int, a: int = 1) -> "WeylElement":
        """e^{a q_m} (1-based site index)."""
        eq = tuple(a if k == m - 1 else 0 for k in range(n))
        return cls(n, {(eq, (0,) * n): ONE})

    # -- ring operations --------------------------------------------------

    def _check(self, other: "WeylElement"):
        if self.n != other.n:
            raise ValueError("site count mismatch")

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, ZERO) + c
            if s.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = s
        out = WeylElement(self.n)
        out.terms = terms
        return out

    def __neg__(self) -> "WeylElement":
        out = WeylElement(self.n)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def scale(self, c) -> "WeylElement":
        c = c if isinstance(c, QI) else QI(c)
        if c.is_zero():
            return WeylElement(self.n)
        out = WeylElement(self.n)
        out.terms = {m: cc * c for m, cc in self.terms.items()}
        return out

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        n = self.n
        acc: Dict[Mono, QI] = {}
        for (aq, ap), ca in self.terms.items():
            for (cq, cp), cb in other.terms.items():
                coef0 = ca * cb
                new_q = tuple(aq[k] + cq[k] for k in range(n))
                # push p^{ap} through e^{cq.q}: per-site binomial expansion
                expansions: List[Tuple[Tuple[int, ...], QI]] = [((), ONE)]
                for m in range(n):
                    b, c = ap[m], cq[m]
                    if b == 0 or c == 0:
                        expansions = [(pows + (b,), co) for pows, co in expansions]
                        continue
                    site: List[Tuple[int, QI]] = []
                    for k in range(b + 1):
                        site.append((k, QI(math.comb(b, k)) * QI(0, -c) ** (b - k)))
                    expansions = [
                        (pows + (k,), co * ck)
                        for pows, co in expansions
                        for k, ck in site
                    ]
                for pows, co in expansions:
                    mono = (new_q, tuple(pows[k] + cp[k] for k in range(n)))
                    s = acc.get(mono, ZERO) + coef0 * co
                    if s.is_zero():
                        acc.pop(mono, None)
                    else:
                        acc[mono] = s
        out = WeylElement(n)
        out.terms = acc
        return out

    # -- predicates & display ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        raise TypeError("WeylElement is unhashable")

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (eq, pp), c in sorted(self.terms.items()):
            bits = [f"({c})"]
            for k, a in enumerate(eq):
                if a:
                    bits.append(f"e^{{{a}q{k + 1}}}" if a != 1 else f"e^{{q{k + 1}}}")
            for k, b in enumerate(pp):
                if b:
                    bits.append(f"p{k + 1}" + (f"^{b}" if b > 1 else ""))
            parts.append("*".join(bits))
        return " + ".join(parts)


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Canonical normal-ordered product (exact coefficients)."""
    return a * b


# ---------------------------------------------------------------------------
# Polynomials in one or two spectral parameters with WeylElement coefficients
# ---------------------------------------------------------------------------


class UPoly:
    """Polynomial in the spectral parameter u, WeylElement coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: List[WeylElement] | None = None):
        self.n = n
        self.coeffs = list(coeffs) if coeffs else []
        self._trim()

    def _trim(self):
        while self.coeffs and self.coeffs[-1].is_zero():
            self.coeffs.pop()

    @classmethod
    def from_element(cls, w: WeylElement) -> "UPoly":
        return cls(w.n, [w])

    @classmethod
    def u(cls, n: int) -> "UPoly":
        return cls(n, [WeylElement.zero(n), WeylElement.one(n)])

    def coeff(self, k: int) -> WeylElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return WeylElement.zero(self.n)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "UPoly") -> "UPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.n, [self.coeff(k) + other.coeff(k) for k in range(m)])

    def __neg__(self) -> "UPoly":
        return UPoly(self.n, [-c for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        out = [WeylElement.zero(self.n) for _ in range(len(self.coeffs) + len(other.coeffs))]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return UPoly(self.n, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return (self - other).is_zero()

    def as_uv(self, var: str) -> "UVPoly":
        terms = {}
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms[(k, 0) if var == "u" else (0, k)] = c
        return UVPoly(self.n, terms)

    def __repr__(self):
        return " + ".join(f"u^{k}*[{c!r}]" for k, c in enumerate(self.coeffs)) or "0"


class UVPoly:
    """Polynomial in two spectral parameters (u, v), WeylElement coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Tuple[int, int], WeylElement] | None = None):
        self.n = n
        self.terms = {}
        if terms:
            for k, w in terms.items():
                if not w.is_zero():
                    self.terms[k] = w

    @classmethod
    def scalar(cls, n: int, terms: Dict[Tuple[int, int], QI]) -> "UVPoly":
        return cls(n, {k: WeylElement.constant(n, c) for k, c in terms.items()})

    def __add__(self, other: "UVPoly") -> "UVPoly":
        terms = dict(self.terms)
        for k, w in other.terms.items():
            s = terms.get(k)
            s = w if s is None else s + w
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return UVPoly(self.n, terms)

    def __neg__(self) -> "UVPoly":
        return UVPoly(self.n, {k: -w for k, w in self.terms.items()})

    def __sub__(self, other: "UVPoly") -> "UVPoly":
        return self + (-other)

    def __mul__(self, other: "UVPoly") -> "UVPoly":
        acc: Dict[Tuple[int, int], WeylElement] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                prod = a * b
                s = acc.get(k)
                s = prod if s is None else s + prod
                if s.is_zero():
                    acc.pop(k, None)
                else:
                    acc[k] = s
        return UVPoly(self.n, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, UVPoly):
            return NotImplemented
        return (self - other).is_zero()


# ---------------------------------------------------------------------------
# Matrices of operator polynomials
# ---------------------------------------------------------------------------


class OperatorPolyMatrix:
    """d x d matrix with UPoly (or UVPoly) entries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        d = len(entries)
        if any(len(row) != len(entries[0]) for row in entries):
            raise ValueError("matrix must be rectangular")
        self.entries = [list(row) for row in entries]

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "OperatorPolyMatrix") -> "OperatorPolyMatrix":
        r, k = self.shape
        k2, c = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(r):
            row = []
            for j in range(c):
                acc = None
                for s in range(k):
                    prod = self.entries[i][s] * other.entries[s][j]
                    acc = prod if acc is None else acc + prod
                row.append(acc)
            out.append(row)
        return OperatorPolyMatrix(out)

    def __sub__(self, other: "OperatorPolyMatrix") -> "OperatorPolyMatrix":
        r, c = self.shape
        return OperatorPolyMatrix(
            [[self.entries[i][j] - other.entries[i][j] for j in range(c)] for i in range(r)]
        )

    def map(self, fn) -> "OperatorPolyMatrix":
        return OperatorPolyMatrix([[fn(e) for e in row] for row in self.entries])


def lax_matrix(m: int, N: int) -> OperatorPolyMatrix:
    """Site-m Lax matrix [[u - p_m, -e^{q_m}], [e^{-q_m}, 0]]."""
    if not 1 <= m <= N:
        raise IndexError(f"site index {m} out of range for N={N}")
    u = UPoly.u(N)
    pm = UPoly.from_element(WeylElement.p(N, m))
    eq = UPoly.from_element(WeylElement.exp_q(N, m, 1))
    emq = UPoly.from_element(WeylElement.exp_q(N, m, -1))
    zero = UPoly(N)
    return OperatorPolyMatrix([[u - pm, -eq], [emq, zero]])


def r_matrix(N: int = 1) -> OperatorPolyMatrix:
    """4x4 R(u) = uI - iP over scalar coefficients (P the flip operator)."""
    u = UPoly.u(N)
    mi = UPoly.from_element(WeylElement.constant(N, QI(0, -1)))
    z = UPoly(N)
    # P[(a,i),(b,j)] = delta_{aj} delta_{ib}; row index 2a+i, column 2b+j
    rows = []
    for a in range(2):
        for i in range(2):
            row = []
            for b in range(2):
                for j in range(2):
                    e = z
                    if a == b and i == j:
                        e = e + u
                    if a == j and i == b:
                        e = e + mi
                    row.append(e)
            rows.append(row)
    return OperatorPolyMatrix(rows)


def monodromy(N: int, upto: int | None = None) -> OperatorPolyMatrix:
    """T_k(u) = L_k(u) L_{k-1}(u) ... L_1(u) in the N-site algebra.

    upto defaults to N; smaller values give the partial monodromies used by
    the recursion check.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    k = N if upto is None else upto
    T = lax_matrix(1, N)
    for m in range(2, k + 1):
        T = lax_matrix(m, N) @ T
    return T


def extract_ABCD(T: OperatorPolyMatrix):
    """Entries (A, B, C, D) of a 2x2 monodromy matrix."""
    if T.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    return T[0, 0], T[0, 1], T[1, 0], T[1, 1]


def integrals_of_motion(N: int):
    """Operator coefficients X_m (from A_N) and Y_m (from D_N).

    A_N(u) = u^N + sum_m X_m u^{N-m},  D_N(u) = sum_{m=2}^N Y_m u^{N-m}.
    Returns (X, Y) as lists indexed from m=1 and m=2 respectively.
    """
    A, _, _, D = extract_ABCD(monodromy(N))
    X = [A.coeff(N - m) for m in range(1, N + 1)]
    Y = [D.coeff(N - m) for m in range(2, N + 1)]
    return X, Y


# ---------------------------------------------------------------------------
# Exact relation checks
# ---------------------------------------------------------------------------


def _kron_uv(M: OperatorPolyMatrix, side: str, var: str) -> OperatorPolyMatrix:
    """Embed a 2x2 UPoly matrix into 4x4 UVPoly: side 'left' -> M (x) I."""
    n = M[0, 0].n
    one = UVPoly.scalar(n, {(0, 0): ONE})
    zero = UVPoly(n)
    rows = []
    for a in range(2):
        for i in range(2):
            row = []
            for b in range(2):
                for j in range(2):
                    if side == "left":
                        row.append(M[a, b].as_uv(var) if i == j else zero)
                    else:
                        row.append(M[i, j].as_uv(var) if a == b else zero)
            rows.append(row)
    return OperatorPolyMatrix(rows)


def _r_uv(n: int) -> OperatorPolyMatrix:
    """R(u - v) as a 4x4 matrix of scalar UVPoly."""
    rows = []
    for a in range(2):
        for i in range(2):
            row = []
            for b in range(2):
                for j in range(2):
                    terms: Dict[Tuple[int, int], QI] = {}
                    if a == b and i == j:
                        terms[(1, 0)] = ONE
                        terms[(0, 1)] = QI(-1)
                    if a == j and i == b:
                        terms[(0, 0)] = terms.get((0, 0), ZERO) + QI(0, -1)
                    row.append(UVPoly.scalar(n, {k: c for k, c in terms.items() if not c.is_zero()}))
            rows.append(row)
    return OperatorPolyMatrix(rows)


def _first_failure(D: OperatorPolyMatrix):
    r, c = D.shape
    for i in range(r):
        for j in range(c):
            if not D.entries[i][j].is_zero():
                return f"entry ({i + 1},{j + 1})"
    return None


def check_rll(scope: str, n: int) -> VerificationReport:
    """Exact check of R(u-v) X1(u) X2(v) = X2(v) X1(u) R(u-v).

    scope "local" checks X = L_n in a single-relevant-site algebra;
    "global" checks X = T_n.
    """
    if scope == "local":
        X = lax_matrix(n, n)
        relation = f"rll-local-m{n}"
    elif scope == "global":
        X = monodromy(n)
        relation = f"rll-global-N{n}"
    else:
        raise ValueError(f"unknown scope {scope!r}")
    R = _r_uv(n)
    X1 = _kron_uv(X, "left", "u")
    X2 = _kron_uv(X, "right", "v")
    lhs = R @ X1 @ X2
    rhs = X2 @ X1 @ R
    fail = _first_failure(lhs - rhs)
    return VerificationReport(
        suite="qism", n=n, relation=relation,
        status="PASS" if fail is None else "FAIL", witness=fail,
    )


def check_commutativity(N: int) -> List[VerificationReport]:
    """[X_m, X_k] = 0, [t_m, t_k] = 0, and the A/C exchange identities."""
    X, Y = integrals_of_motion(N)
    reports = []

    def commute_family(name, ops):
        for a in range(len(ops)):
            for b in range(a + 1, len(ops)):
                if not (ops[a] * ops[b] - ops[b] * ops[a]).is_zero():
                    return VerificationReport(
                        suite="qism", n=N, relation=name, status="FAIL",
                        witness=f"pair ({a + 1},{b + 1})",
                    )
        return VerificationReport(suite="qism", n=N, relation=name, status="PASS")

    reports.append(commute_family("commute-X", X))
    t_coeffs = list(X)
    for m, y in enumerate(Y, start=2):
        t_coeffs[m - 1] = t_coeffs[m - 1] + y
    reports.append(commute_family("commute-t", t_coeffs))

    A, B, C, _ = extract_ABCD(monodromy(N))
    Au, Av = A.as_uv("u"), A.as_uv("v")
    Bu, Bv = B.as_uv("u"), B.as_uv("v")
    Cu, Cv = C.as_uv("u"), C.as_uv("v")
    umv = UVPoly.scalar(N, {(1, 0): ONE, (0, 1): QI(-1)})
    umvpi = UVPoly.scalar(N, {(1, 0): ONE, (0, 1): QI(-1), (0, 0): QI(0, 1)})
    ei = UVPoly.scalar(N, {(0, 0): QI(0, 1)})
    # exchange-AC: (u-v+i) C(u) A(v) = (u-v) A(v) C(u) + i C(v) A(u).
    # The commonly quoted form with A and C in the opposite order fails the
    # exact N=1 computation by -2i(u-v) e^{-q}; this ordering is the one the
    # RLL relation actually implies.
    checks = [
        ("commute-B", Bu * Bv - Bv * Bu),
        ("commute-C", Cu * Cv - Cv * Cu),
        ("exchange-AC", umvpi * (Cu * Av) - umv * (Av * Cu) - ei * (Cv * Au)),
    ]
    for name, diff in checks:
        reports.append(VerificationReport(
            suite="qism", n=N, relation=name,
            status="PASS" if diff.is_zero() else "FAIL",
        ))
    return reports


def check_recursion(N: int) -> List[VerificationReport]:
    """Exact check of the one-site peeling of the monodromy entries:

        A_N(u) = (u - p_N) A_{N-1}(u) - e^{q_N} C_{N-1}(u)
        C_N(u) = e^{-q_N} A_{N-1}(u)

    The first line's middle factor is -e^{q_N} (operator); the source
    formula's e^{-x_N} does not reproduce the exact N=2 product and is read
    as a misprint.
    """
    if N < 2:
        return [VerificationReport(suite="qism", n=N, relation="recursion", status="PASS",
                                   witness="vacuous for N=1")]
    A_N, _, C_N, _ = extract_ABCD(monodromy(N))
    A_p, _, C_p, _ = extract_ABCD(monodromy(N, upto=N - 1))
    u = UPoly.u(N)
    pN = UPoly.from_element(WeylElement.p(N, N))
    eqN = UPoly.from_element(WeylElement.exp_q(N, N, 1))
    emqN = UPoly.from_element(WeylElement.exp_q(N, N, -1))
    ok_A = A_N == (u - pN) * A_p - eqN * C_p
    ok_C = C_N == emqN * A_p
    return [
        VerificationReport(suite="qism", n=N, relation="recursion-A",
                           status="PASS" if ok_A else "FAIL"),
        VerificationReport(suite="qism", n=N, relation="recursion-C",
                           status="PASS" if ok_C else "FAIL"),
    ]


def qism_suite(N: int) -> List[VerificationReport]:
    """All exact QISM checks for lattice size N."""
    reports = [check_rll("local", N), check_rll("global", N)]
    reports += check_commutativity(N)
    reports += check_recursion(N)
    return reports
