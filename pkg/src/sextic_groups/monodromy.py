"""Numerical braid monodromy of the curve plus section over the real axis.

Strands are the roots of the fiber polynomial, ordered by decreasing real
part of ``y * exp(i*theta)`` at the base fiber (a small rotation keeps
crossings of real parts isolated along real paths). The reference point of
the fiber sits at real ``+infinity``; positive ``sigma_k`` is the
counterclockwise half-twist of the strands at positions ``k`` and ``k+1``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .algebra.quadratic import format_number
from .algebra.words import format_word, free_reduce
from .braids import Braid, artin_act, braid_equal
from .curves import Section, TrigonalCurve, named_section, singular_fibers

CERTIFY_RATIO = 1 / 3
MIN_STEP = 2.0**-40
RESIDUAL_TOL = 1e-9


class TrackingError(RuntimeError):
    pass


# paths

@dataclass(frozen=True)
class Piece:
    kind: str  # "line" or "arc"
    a: complex  # line start, or arc center
    b: complex  # line end, or (radius, start angle) packed as complex
    sweep: float = 0.0  # arc sweep in radians (positive = counterclockwise)

    def point(self, s: float) -> complex:
        if self.kind == "line":
            return self.a + (self.b - self.a) * s
        radius, start = self.b.real, self.b.imag
        return self.a + radius * cmath.exp(1j * (start + self.sweep * s))

    @property
    def length(self) -> float:
        if self.kind == "line":
            return abs(self.b - self.a)
        return abs(self.sweep) * self.b.real

    def reversed(self) -> "Piece":
        if self.kind == "line":
            return Piece("line", self.b, self.a)
        radius, start = self.b.real, self.b.imag
        return Piece("arc", self.a, complex(radius, start + self.sweep), -self.sweep)


def line(z0: complex, z1: complex) -> Piece:
    return Piece("line", complex(z0), complex(z1))


def arc(center: complex, radius: float, start: float, sweep: float) -> Piece:
    return Piece("arc", complex(center), complex(radius, start), sweep)


@dataclass(frozen=True)
class Path:
    pieces: tuple

    def __add__(self, other: "Path") -> "Path":
        return Path(self.pieces + other.pieces)

    def reversed(self) -> "Path":
        return Path(tuple(p.reversed() for p in reversed(self.pieces)))

    @property
    def start(self) -> complex:
        return self.pieces[0].point(0.0)

    @property
    def end(self) -> complex:
        return self.pieces[-1].point(1.0)

    @property
    def length(self) -> float:
        return sum(p.length for p in self.pieces)


# fibers

@dataclass(frozen=True)
class YFactor:
    """A factor of the fiber polynomial: coefficients in ``y`` (leading first),
    each a tuple of coefficients in ``x`` (constant term first)."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def at(self, x: complex) -> list:
        return [_xpoly(c, x) for c in self.coeffs]

    def dx_at(self, x: complex) -> list:
        return [_xpoly(tuple(i * a for i, a in enumerate(c))[1:], x) for c in self.coeffs]

    def roots(self, x: complex, high_precision: bool = False, bits: int = 200) -> list:
        c = self.at(x)
        if c[0] == 0:
            raise TrackingError(f"leading coefficient vanishes at x={x}")
        if self.degree == 1:
            return [-c[1] / c[0]]
        if high_precision:
            with mpmath.workprec(bits):
                rts = mpmath.polyroots([mpmath.mpc(v) for v in c], maxsteps=200, extraprec=bits)
            ys = [complex(z) for z in rts]
        else:
            ys = [_newton(c, complex(y)) for y in np.roots(c)]
        for y in ys:
            scale = sum(abs(v) * abs(y) ** (self.degree - i) for i, v in enumerate(c))
            if abs(_horner(c, y)[0]) > RESIDUAL_TOL * max(scale, 1.0):
                raise TrackingError(f"root residual too large at x={x}")
        return ys

    def slopes(self, x: complex, ys) -> list:
        """``dy/dx`` at the given roots by implicit differentiation."""
        c, cx = self.at(x), self.dx_at(x)
        out = []
        for y in ys:
            fy = _horner(c, y)[1]
            fx = _horner(cx, y)[0]
            out.append(-fx / fy if fy != 0 else 0j)
        return out


def _xpoly(c: tuple, x: complex) -> complex:
    acc = 0j
    for a in reversed(c):
        acc = acc * x + a
    return acc


@dataclass
class FiberConfiguration:
    """A fiber polynomial (product of ``factors``) over the complex ``x``-line
    together with its real singular fibers and a base point.

    Strands are labelled factor by factor; ``section_factor`` names the factor
    whose single root is the strand ``delta`` (None when there is none)."""

    factors: tuple
    positions: tuple
    base: float = 0.0
    k: int = 2
    theta: float = 0.1
    detour_factor: float = 0.25
    precision_bits: int = 200
    initial_steps: int = 32
    section_factor: int | None = None
    source: dict = field(default_factory=dict)

    def __post_init__(self):
        self.positions = tuple(sorted(float(p) for p in self.positions))
        if not self.positions:
            raise ValueError("no singular fibers")
        if not self.base:
            positive = [p for p in self.positions if p > 0]
            self.base = min(positive) / 2 if positive else self.positions[-1] + 1.0
        if any(abs(p - self.base) < 1e-12 for p in self.positions):
            raise ValueError("the base point is a singular fiber")
        self._rot = cmath.exp(1j * self.theta)

    @classmethod
    def from_section(cls, section: Section, curve: TrigonalCurve, k: int = 2, **kwargs) -> "FiberConfiguration":
        """The trigonal curve ``f_r`` together with the section ``y = s(x)``."""
        fibers = singular_fibers(section, curve, strict=True)
        r = float(curve.r)
        a, b, c = (float(v) for v in (section.a, section.b, section.c))
        cubic = YFactor(((1.0,), (r * r,), (0.0, 2 * r), (0.0, 0.0, 1.0)))
        line = YFactor(((1.0,), (-c, -b, -a)))
        source = {"r": format_number(curve.r), "section": section.to_dict()}
        return cls((cubic, line), tuple(f.approx for f in fibers), k=k, section_factor=1, source=source, **kwargs)

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    def detour_radius(self, x: float) -> float:
        others = [abs(p - x) for p in self.positions if abs(p - x) > 1e-12]
        if not others:
            return self.detour_factor * max(1.0, abs(x - self.base))
        return self.detour_factor * min(others)

    def roots(self, x: complex, high_precision: bool = False) -> np.ndarray:
        """All roots in label order (factor by factor)."""
        ys = []
        for f in self.factors:
            ys += f.roots(x, high_precision, self.precision_bits)
        return np.array(ys, dtype=complex)

    def derivative(self, x: complex, ys: np.ndarray) -> np.ndarray:
        out, i = [], 0
        for f in self.factors:
            out += f.slopes(x, ys[i: i + f.degree])
            i += f.degree
        return np.array(out, dtype=complex)

    def section_labels(self) -> set:
        if self.section_factor is None:
            return set()
        start = sum(f.degree for f in self.factors[: self.section_factor])
        return set(range(start, start + self.factors[self.section_factor].degree))

    def projection(self, ys: np.ndarray) -> np.ndarray:
        return ys * self._rot

    def order_at(self, x: complex) -> list[int]:
        """Root labels at the fiber over ``x`` sorted by decreasing projected real part."""
        z = self.projection(self.roots(x))
        return sorted(range(self.degree), key=lambda i: -z[i].real)

    def order_at_roots(self, ys: np.ndarray) -> list[int]:
        z = self.projection(ys)
        return sorted(range(len(ys)), key=lambda i: -z[i].real)

    def base_order(self) -> list[int]:
        return self.order_at(self.base)

    def section_level(self) -> float:
        """A constant section level beyond the fiberwise convex hull at the base."""
        return 1.0 + float(np.max(np.abs(self.roots(self.base))))

    def echo(self) -> dict:
        return {
            **self.source,
            "k": self.k,
            "degree": self.degree,
            "theta": self.theta,
            "base": self.base,
            "detour_factor": self.detour_factor,
            "initial_steps": self.initial_steps,
            "singular_fibers": list(self.positions),
        }


def _horner(coeffs, y):
    """Value and derivative of the polynomial at ``y``."""
    v, d = 0j, 0j
    for c in coeffs:
        d = d * y + v
        v = v * y + c
    return v, d


def _newton(coeffs, y, steps: int = 3):
    for _ in range(steps):
        v, d = _horner(coeffs, y)
        if d == 0:
            break
        y = y - v / d
    return complex(y)


# tracking

@dataclass
class RootTrajectory:
    points: list  # x samples
    roots: list  # per sample, roots in label order
    permutation: tuple  # final position of each initial label

    @property
    def start(self):
        return self.roots[0]

    @property
    def end(self):
        return self.roots[-1]


def _min_gap(ys: np.ndarray) -> float:
    n = len(ys)
    return min(abs(ys[i] - ys[j]) for i in range(n) for j in range(i + 1, n))


PAIR_RATIO = 0.25


def _match(old: np.ndarray, predicted: np.ndarray, new: np.ndarray):
    """Certified matching of predicted positions to the new roots, or None
    when some prediction is not within a third of the new minimal gap, or
    when some pairwise difference moves by a quarter of its length or more
    (which keeps the projected crossings of the step linearly resolvable)."""
    gap = _min_gap(new)
    perm = []
    for y in predicted:
        d = np.abs(new - y)
        j = int(np.argmin(d))
        if d[j] >= CERTIFY_RATIO * gap:
            return None
        perm.append(j)
    if len(set(perm)) != len(perm):
        return None
    moved = new[perm]
    n = len(old)
    for i in range(n):
        for j in range(i + 1, n):
            before = old[i] - old[j]
            if abs(moved[i] - moved[j] - before) >= PAIR_RATIO * abs(before):
                return None
    return moved


def track_roots(config: FiberConfiguration, path: Path, start: np.ndarray | None = None,
                initial_steps: int | None = None) -> RootTrajectory:
    """Continue the roots along ``path``.

    Each step predicts the new roots to first order and accepts the step only
    if every prediction lies within a third of the minimal gap of the freshly
    computed roots; otherwise the step is halved. Below ``MIN_STEP`` the roots
    are recomputed in high precision before giving up."""
    initial_steps = initial_steps or config.initial_steps
    total = path.length
    current = config.roots(path.start) if start is None else np.asarray(start, dtype=complex)
    points, samples = [path.start], [current]
    x_cur = path.start
    for piece in path.pieces:
        s, h = 0.0, 1.0 / initial_steps
        floor = MIN_STEP * total / piece.length if piece.length else MIN_STEP
        while s < 1.0:
            h = min(h, 1.0 - s)
            x = piece.point(s + h)
            pred = current + config.derivative(x_cur, current) * (x - x_cur)
            matched = None
            try:
                matched = _match(current, pred, config.roots(x))
            except TrackingError:
                pass
            if matched is None and h <= floor:
                matched = _match(current, pred, config.roots(x, high_precision=True))
                if matched is None:
                    raise TrackingError(f"certification failed near x={x}")
            if matched is None:
                h /= 2
                continue
            current, x_cur = matched, x
            s += h
            points.append(x)
            samples.append(current)
            h = min(2 * h, 1.0 / initial_steps)
    first, last = samples[0], samples[-1]
    perm = ()
    if np.allclose(np.sort_complex(first), np.sort_complex(last), atol=1e-8):
        perm = tuple(int(np.argmin(np.abs(first - y))) for y in last)
    return RootTrajectory(points, samples, perm)


class _Refine(Exception):
    pass


def _crossings(order: list, old: np.ndarray, new: np.ndarray) -> list:
    """Letters for the motion ``old -> new`` (projected roots in label order)."""
    n = len(order)
    events = []
    for i in range(n):
        for j in range(i + 1, n):
            d0 = old[i].real - old[j].real
            d1 = new[i].real - new[j].real
            if d0 == 0 or d1 == 0:
                raise _Refine
            if (d0 > 0) != (d1 > 0):
                events.append((d0 / (d0 - d1), i, j))
    letters = []
    for tau, i, j in sorted(events):
        pi, pj = order.index(i), order.index(j)
        if abs(pi - pj) != 1:
            raise _Refine
        k = min(pi, pj)
        upper = order[k]  # label that had the larger real part
        lower = order[k + 1]
        im_u = old[upper].imag + tau * (new[upper].imag - old[upper].imag)
        im_l = old[lower].imag + tau * (new[lower].imag - old[lower].imag)
        letters.append((k + 1) if im_u > im_l else -(k + 1))
        order[k], order[k + 1] = lower, upper
    return letters


def braid_of_trajectory(config: FiberConfiguration, traj: RootTrajectory, order: Sequence[int] | None = None) -> Braid:
    """Braid traced by the projected roots; ``order`` lists labels by position."""
    proj = [config.projection(y) for y in traj.roots]
    order = list(order) if order is not None else sorted(range(len(proj[0])), key=lambda i: -proj[0][i].real)
    letters: list[int] = []
    for a, b in zip(proj, proj[1:]):
        letters += _crossings_refined(order, a, b)
    return Braid(len(order), free_reduce(tuple(letters)))


def _crossings_refined(order: list, a: np.ndarray, b: np.ndarray, depth: int = 0) -> list:
    saved = list(order)
    try:
        return _crossings(order, a, b)
    except _Refine:
        order[:] = saved
        if depth > 30:
            raise TrackingError("could not resolve simultaneous crossings")
        # straight-line midpoint keeps the matching; split the step
        mid = (a + b) / 2 + 1e-13j * np.arange(len(a))
        return _crossings_refined(order, a, mid, depth + 1) + _crossings_refined(order, mid, b, depth + 1)


# loops

def _approach(config: FiberConfiguration, target: float) -> Path:
    """From the base point along the real axis to the detour circle of
    ``target``, passing below fibers on the right and above fibers on the left."""
    base = config.base
    pieces = []
    cur = complex(base)
    right = target > base
    between = sorted((p for p in config.positions if min(base, target) < p < max(base, target)), reverse=not right)
    for p in between:
        rho = config.detour_radius(p)
        near, far = (p - rho, p + rho) if right else (p + rho, p - rho)
        pieces.append(line(cur, near))
        if right:
            pieces.append(arc(p, rho, math.pi, math.pi))  # lower half, counterclockwise from the left
        else:
            pieces.append(arc(p, rho, 0.0, math.pi))  # upper half, counterclockwise from the right
        cur = complex(far)
    rho = config.detour_radius(target)
    end = complex(target - rho if right else target + rho)
    pieces.append(line(cur, end))
    return Path(tuple(pc for pc in pieces if pc.length > 0))


def loop_path(config: FiberConfiguration, target: float) -> Path:
    rho = config.detour_radius(target)
    go = _approach(config, target)
    start = math.pi if target > config.base else 0.0
    circle = Path((arc(target, rho, start, 2 * math.pi),))
    return go + circle + go.reversed()


def local_braid(config: FiberConfiguration, position: float) -> Braid:
    match = [p for p in config.positions if abs(p - position) < 1e-6 * max(1.0, abs(position))]
    if not match:
        raise ValueError(f"{position} is not a singular fiber of the configuration")
    path = loop_path(config, match[0])
    traj = track_roots(config, path)
    return braid_of_trajectory(config, traj, config.base_order())


def big_circle_braid(config: FiberConfiguration, radius: float | None = None) -> Braid:
    """Braid along a counterclockwise circle enclosing every affine singular fiber,
    reached from the base point along the real axis to the right."""
    far = max(abs(p) for p in config.positions)
    radius = radius or 2 * far + 10
    go = _approach_point(config, radius)
    path = go + Path((arc(0.0, radius, 0.0, 2 * math.pi),)) + go.reversed()
    return braid_of_trajectory(config, track_roots(config, path), config.base_order())


def _approach_point(config: FiberConfiguration, x: float) -> Path:
    base = config.base
    pieces, cur = [], complex(base)
    for p in sorted(q for q in config.positions if base < q < x):
        rho = config.detour_radius(p)
        pieces += [line(cur, p - rho), arc(p, rho, math.pi, math.pi)]
        cur = complex(p + rho)
    pieces.append(line(cur, x))
    return Path(tuple(pc for pc in pieces if pc.length > 0))


def _segment_to(config: FiberConfiguration, x: float) -> Path:
    """Real path from the base point to ``x``, below fibers on the right and
    above fibers on the left."""
    base = config.base
    right = x > base
    pieces, cur = [], complex(base)
    between = sorted((p for p in config.positions if min(base, x) < p < max(base, x)), reverse=not right)
    for p in between:
        rho = config.detour_radius(p)
        near, far = (p - rho, p + rho) if right else (p + rho, p - rho)
        pieces.append(line(cur, near))
        pieces.append(arc(p, rho, math.pi, math.pi) if right else arc(p, rho, 0.0, math.pi))
        cur = complex(far)
    pieces.append(line(cur, x))
    return Path(tuple(pc for pc in pieces if pc.length > 0))


def _mirror_rotation(config: FiberConfiguration, ys: np.ndarray, steps: int = 63) -> Braid:
    """Braid seen while the projection angle turns from ``theta`` to ``-theta``
    over a fixed fiber (odd step count: conjugate pairs tie at the midpoint)."""
    samples = [ys * cmath.exp(-2j * config.theta * t / steps) for t in range(steps + 1)]
    traj = RootTrajectory([None] * len(samples), samples, ())
    return braid_of_trajectory(config, traj, config.order_at_roots(ys))


def basis_transport(config: FiberConfiguration, target: float) -> dict:
    """Standard basis of the fiber over ``target`` as words in the base basis.

    At the target the strands are ordered for the mirrored projection angle
    ``-theta`` (this only matters when the fiber has non-real roots). Keys are
    the base names with suffix ``1``; values are word texts, written with
    barred generators (``xbar = delta^-1 x delta``) when the word has an even
    number of ``delta`` letters."""
    if any(abs(p - target) < 1e-9 * max(1.0, abs(target)) for p in config.positions):
        raise ValueError(f"x={target} is a singular fiber")
    names = basis_names(config)
    if abs(target - config.base) < 1e-15:
        b = Braid.identity(config.degree)
        end = config.roots(config.base)
    else:
        traj = track_roots(config, _segment_to(config, target))
        b = braid_of_trajectory(config, traj, config.base_order())
        end = traj.end
    b = b * _mirror_rotation(config, end)
    inv = b.inverse()
    # labels at the target in the mirrored order name the new generators
    z = end * cmath.exp(-1j * config.theta)
    order = sorted(range(config.degree), key=lambda i: -z[i].real)
    section = config.section_labels()
    plain = iter(n for n in names if n != "delta")
    out = {}
    for pos, label in enumerate(order, start=1):
        key = ("delta" if label in section else next(plain)) + "1"
        out[key] = _bar_text(artin_act(inv, (pos,)), names)
    return out


def _bar_text(word, names) -> str:
    if "delta" not in names:
        return format_word(word, names)
    d = names.index("delta") + 1
    if sum(1 for x in word if abs(x) == d) % 2:
        return format_word(word, names)
    state, out, bar_names = 0, [], []
    for n in names:
        if n != "delta":
            bar_names += [n, n + "bar"]
    index = {n: i + 1 for i, n in enumerate(bar_names)}
    for x in word:
        if abs(x) == d:
            state ^= 1
            continue
        name = names[abs(x) - 1] + ("bar" if state else "")
        out.append(index[name] if x > 0 else -index[name])
    return format_word(free_reduce(out), bar_names)


# the monodromy

@dataclass
class MonodromyData:
    config: dict
    braids: list  # (position, Braid), left to right
    names: tuple  # generator name per strand position
    degree: int = 4
    k: int = 2

    def product_order(self) -> list:
        """Loop order whose product is the counterclockwise boundary loop:
        fibers right of the base from far to near, then left from far to near."""
        base = self.config["base"]
        right = sorted((e for e in self.braids if e[0] > base), key=lambda e: -e[0])
        left = sorted((e for e in self.braids if e[0] < base), key=lambda e: e[0])
        return right + left

    def product(self) -> Braid:
        out = Braid.identity(self.degree)
        for _, b in self.product_order():
            out = out * b
        return out

    @property
    def delta_position(self) -> int:
        return self.names.index("delta") + 1

    def to_dict(self) -> dict:
        return {
            "configuration": self.config,
            "degree": self.degree,
            "k": self.k,
            "basis": list(self.names),
            "braids": [{"x": x, "braid": str(b)} for x, b in self.braids],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "MonodromyData":
        braids = [(e["x"], Braid.parse(e["braid"])) for e in d["braids"]]
        return cls(d["configuration"], braids, tuple(d["basis"]), d["degree"], d["k"])

    @classmethod
    def from_json(cls, text: str) -> "MonodromyData":
        return cls.from_dict(json.loads(text))


def basis_names(config: FiberConfiguration) -> tuple:
    """Names by strand position: the section root is ``delta``, the others
    are ``alpha``, ``beta``, ``gamma`` in order."""
    order = config.base_order()
    section = config.section_labels()
    if len(section) > 1:
        raise ValueError("the section factor must be linear in y")
    if len(section) == 1 and config.degree == 4:
        plain = iter(("alpha", "beta", "gamma"))
    else:
        plain = iter(f"z{j}" for j in range(1, config.degree + 1))
    return tuple("delta" if label in section else next(plain) for label in order)


def braid_monodromy(config: FiberConfiguration) -> MonodromyData:
    braids = [(p, local_braid(config, p)) for p in config.positions]
    return MonodromyData(config.echo(), braids, basis_names(config), config.degree, config.k)


def configuration(name: str, r=Fraction(3), **kwargs) -> FiberConfiguration:
    """Configuration of a named family at the given ``r``."""
    curve = TrigonalCurve(r)
    return FiberConfiguration.from_section(named_section(name, curve), curve, **kwargs)


# monodromy at infinity

@dataclass(frozen=True)
class InfinityCheck:
    """Comparison of the ordered product of local braids with conjugation by
    ``rho^k`` and with the braid tracked along a big circle."""

    product: Braid
    boundary: Braid | None
    conjugation_by_rho: bool
    matches_boundary: bool | None
    mismatches: tuple  # generators j where product(z_j) != rho^k z_j rho^-k

    def as_dict(self) -> dict:
        return {
            "product": str(self.product),
            "boundary": str(self.boundary) if self.boundary is not None else None,
            "conjugation_by_rho": self.conjugation_by_rho,
            "matches_boundary": self.matches_boundary,
            "mismatches": list(self.mismatches),
        }


def is_rho_conjugation(b: Braid, k: int) -> tuple:
    """Generators on which ``b`` differs from ``z -> rho^k z rho^-k``."""
    d = b.strands
    rk = tuple(range(1, d + 1)) * k
    bad = []
    for j in range(1, d + 1):
        want = free_reduce(rk + (j,) + tuple(-x for x in reversed(rk)))
        if artin_act(b, (j,)) != want:
            bad.append(j)
    return tuple(bad)


def infinity_check(md: MonodromyData, config: FiberConfiguration | None = None) -> InfinityCheck:
    product = md.product()
    bad = is_rho_conjugation(product, md.k)
    boundary = big_circle_braid(config) if config is not None else None
    same = braid_equal(product, boundary) if boundary is not None else None
    return InfinityCheck(product, boundary, not bad, same, bad)
