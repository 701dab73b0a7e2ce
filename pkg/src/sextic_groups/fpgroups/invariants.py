"""Group invariants: abelianization, finite quotients, Alexander polynomial,
abelianized commutant, and the combined suite used to compare groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from ..algebra import upoly
from ..algebra.matrix import AbelianInvariants, IntegerMatrix, smith_normal_form
from ..algebra.words import exponent_sums
from .cosets import DEFAULT_CAP, CosetCapExceeded, CosetTable, _col, todd_coxeter
from .presentation import Presentation
from .schreier import coset_representatives, reidemeister_schreier
from .tietze import tietze_simplify


def relation_matrix(p: Presentation) -> IntegerMatrix:
    rows = [exponent_sums(r, p.rank) for r in p.relators]
    return IntegerMatrix.from_rows(rows, p.rank)


def abelianization(p: Presentation) -> AbelianInvariants:
    if not p.relators:
        return AbelianInvariants((), p.rank)
    return smith_normal_form(relation_matrix(p)).invariants


# finite quotients

def element_orders(t: CosetTable) -> list[int]:
    """Orders of the group elements, given the table of the trivial subgroup."""
    reps = coset_representatives(t)
    out = []
    for w in reps:
        n, c = 0, 0
        while True:
            c = t.act(c, w)
            n += 1
            if c == 0:
                break
        out.append(n)
    return out


def involution_count(t: CosetTable) -> int:
    return sum(1 for n in element_orders(t) if n == 2)


@dataclass(frozen=True)
class QuotientReport:
    exponent: int
    order: int | None  # None: enumeration exceeded the cap
    involutions: int | None = None

    def __str__(self):
        if self.order is None:
            return f"mod g^{self.exponent}: > cap"
        extra = f", {self.involutions} involutions" if self.involutions is not None else ""
        return f"mod g^{self.exponent}: order {self.order}{extra}"


def power_quotient(p: Presentation, n: int, cap: int = DEFAULT_CAP, count_involutions: bool = True) -> QuotientReport:
    """Quotient by the normal closure of ``g^n`` for every generator ``g``."""
    q = p.power_quotient(n)
    try:
        t = todd_coxeter(q, (), cap)
    except CosetCapExceeded:
        return QuotientReport(n, None)
    inv = involution_count(t) if count_involutions and t.index <= 5000 else None
    return QuotientReport(n, t.index, inv)


# Alexander polynomial

def _laurent_add(acc: dict, e: int, c) -> None:
    v = acc.get(e, 0) + c
    if v:
        acc[e] = v
    else:
        acc.pop(e, None)


def fox_row(r: Sequence[int], rank: int, degree: Sequence[int]) -> list[dict]:
    """Fox derivatives of ``r`` mapped to Laurent polynomials ``{exponent: coeff}``."""
    row = [dict() for _ in range(rank)]
    e = 0
    for x in r:
        g = abs(x) - 1
        if x > 0:
            _laurent_add(row[g], e, 1)
            e += degree[g]
        else:
            e -= degree[g]
            _laurent_add(row[g], e, -1)
    return row


def _laurent_to_poly(lp: dict, shift: int) -> tuple:
    if not lp:
        return ()
    n = max(lp) - shift
    coeffs = [Fraction(0)] * (n + 1)
    for e, c in lp.items():
        coeffs[e - shift] = Fraction(c)
    return upoly.trim(coeffs)


def cyclotomic(n: int) -> tuple:
    out = upoly.trim([Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)])
    for d in range(1, n):
        if n % d == 0:
            out = upoly.divmod_poly(out, cyclotomic(d))[0]
    return out


def _rank_mod(matrix: list[list[tuple]], modulus: tuple) -> int:
    """Rank over the field ``Q[t]/(modulus)`` (modulus irreducible)."""
    rows = [[upoly.divmod_poly(e, modulus)[1] for e in row] for row in matrix]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        g, s, _ = upoly.xgcd(rows[rank][col], modulus)
        inv = s  # s * pivot = 1 mod modulus
        pr = [upoly.divmod_poly(upoly.mul(inv, e), modulus)[1] for e in rows[rank]]
        rows[rank] = pr
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [
                    upoly.divmod_poly(upoly.sub(a, upoly.mul(f, b)), modulus)[1]
                    for a, b in zip(rows[i], pr)
                ]
        rank += 1
    return rank


def _poly_smith_diagonal(matrix: list[list[tuple]]) -> list[tuple]:
    """Invariant factors (monic) of a matrix over Q[t]; zero factors omitted."""
    a = [list(r) for r in matrix]
    m = len(a)
    n = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or len(a[i][j]) < len(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        a[t], a[best[0]] = a[best[0]], a[t]
        for r in a:
            r[t], r[best[1]] = r[best[1]], r[t]
        while True:
            dirty = False
            piv = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q, _ = upoly.divmod_poly(a[i][t], piv)
                    a[i] = [upoly.sub(x, upoly.mul(q, y)) for x, y in zip(a[i], a[t])]
                    dirty = dirty or bool(a[i][t])
            for j in range(t + 1, n):
                if a[t][j]:
                    q, _ = upoly.divmod_poly(a[t][j], piv)
                    for r in a:
                        r[j] = upoly.sub(r[j], upoly.mul(q, r[t]))
                    dirty = dirty or bool(a[t][j])
            if not dirty:
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                     if a[i][j] and upoly.divmod_poly(a[i][j], piv)[1]),
                    None,
                )
                if bad is None:
                    break
                a[t] = [upoly.add(x, y) for x, y in zip(a[t], a[bad[0]])]
                continue
            best = (t, t)
            for i in range(t + 1, m):
                if a[i][t] and len(a[i][t]) < len(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, n):
                if a[t][j] and len(a[t][j]) < len(a[best[0]][best[1]]):
                    best = (t, j)
            a[t], a[best[0]] = a[best[0]], a[t]
            for r in a:
                r[t], r[best[1]] = r[best[1]], r[t]
        diag.append(upoly.monic(a[t][t]))
        t += 1
    return diag


def _normalize(poly: tuple) -> tuple:
    """Integer primitive polynomial, lowest degree 0, positive leading coefficient."""
    poly = upoly.trim(poly)
    if not poly:
        return poly
    k = next(i for i, c in enumerate(poly) if c)
    poly = poly[k:]

    den = 1
    for c in poly:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in poly]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(Fraction(c) for c in ints)


def format_poly(poly: Sequence, var: str = "t") -> str:
    if not poly:
        return "0"
    terms = []
    for k in range(len(poly) - 1, -1, -1):
        c = Fraction(poly[k])
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = (str(mag) if mag != 1 or not mono else "") + ("*" if mono and mag != 1 else "") + mono
        terms.append(("-" if c < 0 else "+", body))
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class AlexanderResult:
    polynomial: tuple
    cyclic_order: int  # 0 when the degree map lands in Z, else n for Z/n

    def __str__(self):
        return format_poly(self.polynomial)


def alexander_polynomial(
    p: Presentation, degree: Sequence[int] | Mapping[str, int] | None = None, strict: bool = False
) -> AlexanderResult:
    """Rational Alexander polynomial for the degree map ``gen -> t^degree``.

    If every relator has degree 0 this is the gcd of the maximal proper minors
    of the Fox matrix. Otherwise the degree map only factors through Z/n with
    ``n`` the gcd of the relator degrees; then the polynomial returned is
    ``prod Phi_d^m_d`` over ``d | n, d > 1``, where ``m_d`` is the multiplicity
    of the eigenvalue ring ``Q[t]/Phi_d`` in the rational Alexander module of
    the cyclic cover (``strict=True`` raises instead)."""
    if degree is None:
        deg = [1] * p.rank
    elif isinstance(degree, Mapping):
        deg = [degree.get(g, 0) for g in p.generators]
    else:
        deg = list(degree)
    n_cyc = 0
    for r in p.relators:
        s = sum(deg[abs(x) - 1] * (1 if x > 0 else -1) for x in r)
        n_cyc = gcd(n_cyc, abs(s))
    if n_cyc and strict:
        raise ValueError("degree map does not kill every relator")
    rows = []
    for r in p.relators:
        lrow = fox_row(r, p.rank, deg)
        exps = [e for lp in lrow for e in lp]
        shift = min(exps) if exps else 0
        rows.append([_laurent_to_poly(lp, shift) for lp in lrow])
    n = p.rank
    if n_cyc == 0:
        if n <= 1:
            # cyclic group Z: the empty minor
            if not rows or all(not any(r) for r in rows):
                return AlexanderResult((Fraction(1),), 0)
        diag = _poly_smith_diagonal(rows) if rows else []
        if len(diag) < n - 1:
            return AlexanderResult((), 0)
        out = (Fraction(1),)
        for f in diag[: n - 1]:
            out = upoly.mul(out, f)
        return AlexanderResult(_normalize(out), 0)
    out = (Fraction(1),)
    for d in range(2, n_cyc + 1):
        if n_cyc % d:
            continue
        phi = cyclotomic(d)
        rank = _rank_mod(rows, phi) if rows else 0
        m = n - 1 - rank
        for _ in range(max(m, 0)):
            out = upoly.mul(out, phi)
    return AlexanderResult(_normalize(out), n_cyc)


# commutant

def abelian_quotient_table(p: Presentation) -> CosetTable:
    """Coset table of the commutator subgroup, built from the finite
    abelianization (cosets = elements of the abelianization)."""
    res = smith_normal_form(relation_matrix(p)) if p.relators else None
    if res is None or res.invariants.free_rank:
        raise ValueError("abelianization is infinite; commutator subgroup has infinite index")
    V = res.V.tolist()
    diag = list(res.diagonal) + [0] * (p.rank - len(res.diagonal))
    keep = [i for i in range(p.rank) if diag[i] != 1]
    mods = [diag[i] for i in keep]
    images = [tuple(V[g][i] % diag[i] for i in keep) for g in range(p.rank)]
    zero = tuple(0 for _ in keep)
    elements = [zero]
    index = {zero: 0}
    k = 0
    while k < len(elements):
        e = elements[k]
        k += 1
        for img in images:
            for sgn in (1, -1):
                f = tuple((a + sgn * b) % m for a, b, m in zip(e, img, mods))
                if f not in index:
                    index[f] = len(elements)
                    elements.append(f)
    table = []
    for e in elements:
        row = []
        for img in images:
            for sgn in (1, -1):
                row.append(index[tuple((a + sgn * b) % m for a, b, m in zip(e, img, mods))])
        table.append(tuple(row))
    return CosetTable(p.rank, tuple(table), ())


def commutant_abelianization(p: Presentation, budget: int = 400) -> AbelianInvariants:
    t = abelian_quotient_table(p)
    sub = reidemeister_schreier(p, t)
    return abelianization(tietze_simplify(sub, budget))


@dataclass(frozen=True)
class InvariantSuite:
    abelianization: str
    mod_squares: int | None
    mod_squares_involutions: int | None
    mod_fourth: int | None
    alexander: str
    commutant: str

    def as_dict(self) -> dict:
        return {
            "abelianization": self.abelianization,
            "mod_squares_order": self.mod_squares,
            "mod_squares_involutions": self.mod_squares_involutions,
            "mod_fourth_powers_order": self.mod_fourth if self.mod_fourth is not None else "> cap",
            "alexander_polynomial": self.alexander,
            "commutant_abelianization": self.commutant,
        }


def invariant_suite(p: Presentation, cap: int = 200_000) -> InvariantSuite:
    """Invariants used to certify that two presentations define the same group.
    Power quotients kill ``g^n`` for every generator, which is meaningful when
    all generators are conjugate meridians."""
    ab = abelianization(p)
    sq = power_quotient(p, 2, cap)
    fourth = power_quotient(p, 4, cap, count_involutions=False)
    alex = alexander_polynomial(p)
    try:
        comm = str(commutant_abelianization(p))
    except ValueError:
        comm = "infinite index"
    return InvariantSuite(str(ab), sq.order, sq.involutions, fourth.order, str(alex), comm)
