"""Desk-scale normal-family extraction over the polydisc.

The classical compactness argument walks a fixed dense point list,
repeatedly thins a sequence of functions to a value cluster at the next
point, and certifies that the surviving tail is uniformly Cauchy on a
compact set.  At desk scale the sequence is a finite family, so every
step becomes a measurement: extraction reports the surviving indices,
the per-stage cluster diameters it achieved, and the modulus it attained
on the certification net.  A finite family may simply fail to contain a
tight cluster; that outcome is a report, not an exception.

Compact sets are finitely supported boxes (products of closed discs of
radii < 1), which admit a closed-form distance to the torus boundary and
cover every test this machinery is used for.  Nets over a box are
tensor products of per-coordinate square grids and are iterated in
chunks rather than materialized: certification nets can run to tens of
millions of centers.

The Dirichlet-side analogue thins a family of Dirichlet polynomials by
clustering coefficients up to a cutoff frequency chosen so that the
damped tails are already negligible, then certifies pairwise distances
after the damping flow.  The flow distance must be positive: at zero
distance the monomial family n^(-s) keeps all pairwise distances at
sqrt(2) and no selection can ever become Cauchy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from . import _kernels as K
from .analysis import PointInPolydisc, QuadratureConfig, evaluate_many, hp_norm
from .bounds import DEFAULT_TRUNCATION_C, TOL, BoundReport, _log_weight_tail_brackets
from .errors import ResourceError
from .series import (
    DirichletPolynomial,
    MonomialExpansion,
    as_p,
    h2_distance,
    h2_norm_exact,
    tail_h2_norm,
    translate,
)

__all__ = [
    "CompactBox",
    "EpsNet",
    "ExtractionReport",
    "StageCertificate",
    "box_distance",
    "build_eps_net",
    "certify_uniform_cauchy",
    "dense_enumerate",
    "diagonal_extract",
    "dirichlet_montel",
    "extract_and_certify",
    "geometric_schedule",
    "harmonic_schedule",
    "limit_norm_check",
    "tail_half",
]

DEFAULT_NET_CAP = 1 << 26


@dataclass(frozen=True)
class CompactBox:
    """Product of closed coordinate discs |z_j| <= rho_j; zero beyond them.

    Finitely supported boxes with max rho < 1 are compact inside the
    open polydisc and keep a positive distance 1 - max rho to the torus
    boundary.
    """

    radii: tuple[float, ...]

    def __post_init__(self) -> None:
        coerced = tuple(float(r) for r in self.radii)
        for r in coerced:
            if not (0.0 <= r < 1.0) or not math.isfinite(r):
                raise ValueError("box radii must lie in [0, 1)")
        object.__setattr__(self, "radii", coerced)

    @property
    def dims(self) -> int:
        return len(self.radii)

    def distance(self) -> float:
        """Distance to the complement of the open polydisc: 1 - max rho."""
        return 1.0 - max(self.radii, default=0.0)

    def diameter(self) -> float:
        return 2.0 * math.sqrt(sum(r * r for r in self.radii))

    def contains(self, coords, tol: float = 1e-12, enlarge: float = 0.0) -> bool:
        """Membership with per-coordinate slack ``enlarge`` and float tolerance."""
        for j, c in enumerate(coords):
            rho = self.radii[j] if j < len(self.radii) else 0.0
            if abs(complex(c)) > rho + enlarge + tol:
                return False
        return True

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """(count, dims) array of points drawn uniformly from the box."""
        if count < 0:
            raise ValueError("count must be >= 0")
        m = self.dims
        radius = np.sqrt(rng.random((count, m))) * np.asarray(self.radii)
        phase = rng.uniform(0.0, 2.0 * np.pi, (count, m))
        return radius * np.exp(1j * phase)


def box_distance(box: CompactBox) -> float:
    return box.distance()


class EpsNet:
    """Lazy tensor-product net over a box with covering radius <= radius.

    Per coordinate, a square grid of target spacing radius / sqrt(2 m)
    covers the disc of radius rho_j (nodes outside are pulled radially
    onto the boundary, which can only move them closer to interior
    points).  The full net is the product of the per-coordinate grids
    and is only ever walked in chunks: its size is the product of the
    squared per-axis node counts and routinely exceeds memory.
    """

    __slots__ = ("parent", "radius", "axis_nodes", "size")

    def __init__(self, parent: CompactBox, radius: float, axis_nodes: tuple[np.ndarray, ...]):
        self.parent = parent
        self.radius = radius
        self.axis_nodes = axis_nodes
        size = 1
        for nodes in axis_nodes:
            size *= int(nodes.shape[0]) ** 2
        self.size = size

    def _coordinate_centers(self, j: int) -> np.ndarray:
        nodes = self.axis_nodes[j]
        grid = nodes[:, None] + 1j * nodes[None, :]
        flat = grid.reshape(-1)
        rho = self.parent.radii[j]
        mods = np.abs(flat)
        scale = np.ones_like(mods)
        outside = mods > rho
        scale[outside] = rho / mods[outside]
        return flat * scale

    def iter_chunks(self, chunk: int = K.CHUNK) -> Iterator[np.ndarray]:
        """Yield (k, dims) center blocks in a fixed row-major order."""
        m = self.parent.dims
        if m == 0:
            yield np.zeros((1, 0), dtype=np.complex128)
            return
        per_coord = [self._coordinate_centers(j) for j in range(m)]
        sizes = [c.shape[0] for c in per_coord]
        strides = []
        acc = 1
        for s in reversed(sizes):
            strides.append(acc)
            acc *= s
        strides.reverse()
        for start in range(0, self.size, chunk):
            idx = np.arange(start, min(start + chunk, self.size), dtype=np.int64)
            pts = np.empty((idx.shape[0], m), dtype=np.complex128)
            for j in range(m):
                pts[:, j] = per_coord[j][(idx // strides[j]) % sizes[j]]
            yield pts

    def centers(self, cap: int = 200_000) -> np.ndarray:
        """Materialize every center; refuses nets larger than cap."""
        if self.size > cap:
            raise ResourceError(f"net with {self.size} centers exceeds the materialization cap {cap}")
        blocks = list(self.iter_chunks())
        return np.concatenate(blocks, axis=0)

    def nearest_distance(self, coords) -> "float | np.ndarray":
        """Distance to the net from one point or from each row of a batch.

        The net is a product of per-coordinate grids, so the squared
        distance splits across coordinates and no center is materialized.
        """
        m = self.parent.dims
        batch = np.asarray(coords, dtype=np.complex128)
        if batch.ndim == 2:
            if batch.shape[1] < m:
                raise ValueError(f"points have {batch.shape[1]} coordinates, net needs {m}")
            total = np.zeros(batch.shape[0])
            for j in range(m):
                grid = self._coordinate_centers(j)
                col = batch[:, j]
                best = np.full(col.shape[0], np.inf)
                for start in range(0, grid.shape[0], 4096):
                    block = grid[start:start + 4096]
                    np.minimum(
                        best,
                        np.min(np.abs(col[:, None] - block[None, :]), axis=1),
                        out=best,
                    )
                total += best**2
            return np.sqrt(total)
        total = 0.0
        for j in range(m):
            c = complex(coords[j]) if j < len(coords) else 0j
            total += float(np.min(np.abs(self._coordinate_centers(j) - c))) ** 2
        return math.sqrt(total)


def build_eps_net(box: CompactBox, eps: float, size_cap: int = DEFAULT_NET_CAP) -> EpsNet:
    """Net over the box with covering radius <= eps (<= eps/2 as built)."""
    eps = float(eps)
    if not (eps > 0 and math.isfinite(eps)):
        raise ValueError("eps must be positive and finite")
    m = box.dims
    axis_nodes = []
    if m > 0:
        target = eps / math.sqrt(2.0 * m)
        size = 1
        for rho in box.radii:
            if rho == 0.0:
                nodes = np.zeros(1)
            else:
                steps = max(1, math.ceil(2.0 * rho / target))
                nodes = -rho + (2.0 * rho / steps) * np.arange(steps + 1)
            axis_nodes.append(nodes)
            size *= int(nodes.shape[0]) ** 2
            if size > size_cap:
                raise ResourceError(
                    f"eps-net would need more than {size_cap} centers; "
                    "enlarge eps or lower the box dimension"
                )
    return EpsNet(box, eps, tuple(axis_nodes))


def dense_enumerate(count: int, dims: int) -> list[PointInPolydisc]:
    """The first ``count`` points of a fixed dense sequence in the polydisc.

    Points have dyadic-rational real and imaginary parts.  Level l uses
    denominator 2^l and support width min(dims, l); within a level,
    coordinate pairs run in lexicographic order and points already
    representable at the previous level are skipped.  The first point is
    the origin.  The enumeration is a pinned convention: extraction
    paths depend on it, so it must never change silently.
    """
    if count < 1 or dims < 1:
        raise ValueError("count and dims must be >= 1")
    out: list[PointInPolydisc] = [PointInPolydisc((0j,) * dims)]
    level = 1
    while len(out) < count:
        for point in _level_points(level, dims):
            out.append(point)
            if len(out) == count:
                return out
        level += 1
    return out


def _level_points(level: int, dims: int) -> Iterator[PointInPolydisc]:
    q = 1 << level
    width = min(dims, level)
    prev_width = min(dims, level - 1)
    pairs = [
        (a, b)
        for a in range(-q + 1, q)
        for b in range(-q + 1, q)
        if a * a + b * b < q * q
    ]

    def rec(j: int, chosen: list[tuple[int, int]]) -> Iterator[PointInPolydisc]:
        if j == width:
            old_scale = all(a % 2 == 0 and b % 2 == 0 for a, b in chosen)
            old_support = all(chosen[k] == (0, 0) for k in range(prev_width, width))
            if old_scale and old_support:
                return
            coords = tuple(complex(a, b) / q for a, b in chosen) + (0j,) * (dims - width)
            yield PointInPolydisc(coords)
            return
        for pair in pairs:
            chosen.append(pair)
            yield from rec(j + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def harmonic_schedule(stages: int) -> list[float]:
    """The 1/k tolerance ladder the classical proof walks."""
    if stages < 1:
        raise ValueError("stages must be >= 1")
    return [1.0 / (k + 1) for k in range(stages)]


def geometric_schedule(stages: int, start: float = 1.0, ratio: float = 0.5) -> list[float]:
    if stages < 1:
        raise ValueError("stages must be >= 1")
    if not (start > 0 and 0 < ratio < 1):
        raise ValueError("need start > 0 and ratio in (0, 1)")
    return [start * ratio**k for k in range(stages)]


@dataclass(frozen=True)
class StageCertificate:
    """One pigeonhole stage: where it looked and how tight the cluster was."""

    stage: int
    site: object
    tolerance: float
    diameter: float
    survivors: int
    representative: complex


@dataclass(frozen=True)
class ExtractionReport:
    """Everything a finite extraction run can honestly assert.

    selected_indices index into the input family (strictly increasing).
    cauchy_modulus is the achieved sup-difference on the certification
    net, when certification ran; certified is its comparison against the
    requested eps.  limit is a representative of the cluster's limit
    candidate, with limit_norm_bound the cap its norm was checked
    against.
    """

    selected_indices: tuple[int, ...]
    stages: tuple[StageCertificate, ...]
    survivor_sets: tuple[tuple[int, ...], ...]
    cauchy_modulus: float | None = None
    certified: bool | None = None
    limit: object | None = None
    limit_norm_bound: float | None = None
    limit_norm_report: BoundReport | None = None
    context: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        idx = self.selected_indices
        if any(idx[i] >= idx[i + 1] for i in range(len(idx) - 1)):
            raise ValueError("selected_indices must be strictly increasing")
        if self.cauchy_modulus is not None and not self.cauchy_modulus >= 0:
            raise ValueError("cauchy_modulus must be >= 0")
        if self.limit_norm_bound is not None and not self.limit_norm_bound >= 0:
            raise ValueError("limit_norm_bound must be >= 0")


def tail_half(indices: Sequence[int]) -> list[int]:
    """The later half of a selection, but never fewer than two members.

    Certification measures only these: the convention pins down which
    members play "k, l large" from the classical Cauchy estimate.
    """
    n = len(indices)
    t = min(n, max(2, math.ceil(n / 2)))
    return list(indices[n - t :])


def _bucket_key(value: complex, side: float) -> tuple[int, int]:
    return (math.floor(value.real / side), math.floor(value.imag / side))


def _largest_cluster(
    members: Sequence[int], values: Sequence[complex], side: float
) -> tuple[list[int], list[complex]]:
    """Largest pigeonhole bucket; ties go to the lowest bucket coordinates."""
    buckets: dict[tuple[int, int], list[int]] = {}
    for pos, v in enumerate(values):
        buckets.setdefault(_bucket_key(v, side), []).append(pos)
    best = min(buckets, key=lambda k: (-len(buckets[k]), k, min(buckets[k])))
    keep = buckets[best]
    return [members[i] for i in keep], [values[i] for i in keep]


def _as_row_evaluator(member) -> Callable[[np.ndarray], np.ndarray]:
    """Normalize a family member to a batch evaluator over (n, m) arrays."""
    if isinstance(member, MonomialExpansion):
        return lambda pts, f=member: evaluate_many(f, pts)
    if callable(member):
        def slow(pts: np.ndarray, f=member) -> np.ndarray:
            return np.array([complex(f(row)) for row in pts], dtype=np.complex128)

        return slow
    raise TypeError("family members must be MonomialExpansion or callables on coordinate rows")


def _family_width(family: Sequence, floor: int = 1) -> int:
    width = floor
    for member in family:
        if isinstance(member, MonomialExpansion):
            width = max(width, member.active_vars)
    return width


def diagonal_extract(
    family: Sequence,
    dense_points: Sequence[PointInPolydisc],
    schedule: Sequence[float] | None = None,
) -> ExtractionReport:
    """Thin a family along dense points by pigeonhole value clustering.

    Stage j buckets the surviving members' values at dense_points[j] on
    a grid of side schedule[j] and keeps the largest bucket, whose
    diameter is at most schedule[j] * sqrt(2).  The walk stops early,
    keeping the longest achievable chain, when the best cluster would
    have fewer than two members or the points run out.  Nothing here is
    an existence claim: the report carries the measured diameters.
    """
    if len(family) == 0:
        raise ValueError("family must be nonempty")
    if len(dense_points) == 0:
        raise ValueError("dense_points must be nonempty")
    if schedule is None:
        schedule = harmonic_schedule(len(dense_points))
    else:
        schedule = [float(t) for t in schedule]
        if any(not (t > 0) for t in schedule):
            raise ValueError("schedule tolerances must be positive")
    evaluators = [_as_row_evaluator(member) for member in family]
    width = _family_width(family)

    survivors = list(range(len(family)))
    stages: list[StageCertificate] = []
    survivor_sets: list[tuple[int, ...]] = []
    stop_reason = "points exhausted"
    for j, point in enumerate(dense_points):
        if j >= len(schedule):
            stop_reason = "schedule exhausted"
            break
        row = point.as_array(max(width, len(point.coords))).reshape(1, -1)
        values = [complex(evaluators[i](row)[0]) for i in survivors]
        keep, cluster = _largest_cluster(survivors, values, schedule[j])
        if len(keep) < 2:
            stop_reason = f"no cluster of size >= 2 at stage {j}"
            break
        survivors = keep
        diameter = max(
            (abs(a - b) for i, a in enumerate(cluster) for b in cluster[i + 1 :]),
            default=0.0,
        )
        representative = complex(np.mean(np.asarray(cluster)))
        stages.append(
            StageCertificate(j, point.coords, schedule[j], diameter, len(keep), representative)
        )
        survivor_sets.append(tuple(survivors))
    return ExtractionReport(
        selected_indices=tuple(survivors),
        stages=tuple(stages),
        survivor_sets=tuple(survivor_sets),
        context={"stages_applied": len(stages), "stop_reason": stop_reason},
    )


def certify_uniform_cauchy(
    family: Sequence,
    indices: Sequence[int],
    box: CompactBox,
    eps: float,
    *,
    audit_samples: int = 4096,
    seed: int = 0,
    net_size_cap: int = DEFAULT_NET_CAP,
    chunk: int = K.CHUNK,
) -> tuple[bool, float]:
    """Measure the worst pairwise sup-difference of the selection's tail half.

    Evaluates the tail-half members over a net of covering radius eps/4
    plus a seeded random audit sample, and reports
    (achieved <= eps, achieved).  Only tail-half members are evaluated;
    the earlier half exists to witness the thinning, not the modulus.
    """
    eps = float(eps)
    if not (eps > 0 and math.isfinite(eps)):
        raise ValueError("eps must be positive and finite")
    if len(indices) == 0:
        raise ValueError("indices must be nonempty")
    if any(not (0 <= i < len(family)) for i in indices):
        raise ValueError("indices must point into the family")
    tail = tail_half(indices)
    if len(tail) < 2:
        return True, 0.0
    members = [family[i] for i in tail]
    evaluators = [_as_row_evaluator(member) for member in members]
    width = max(_family_width(members), box.dims)

    def widen(pts: np.ndarray) -> np.ndarray:
        if pts.shape[1] >= width:
            return pts
        wide = np.zeros((pts.shape[0], width), dtype=np.complex128)
        wide[:, : pts.shape[1]] = pts
        return wide

    achieved = 0.0
    net = build_eps_net(box, eps / 4.0, size_cap=net_size_cap)

    def sweep(pts: np.ndarray) -> float:
        wide = widen(pts)
        block = np.empty((len(evaluators), wide.shape[0]), dtype=np.complex128)
        for k, ev in enumerate(evaluators):
            block[k] = ev(wide)
        return K.pairwise_max_absdiff(block)

    for pts in net.iter_chunks(chunk):
        achieved = max(achieved, sweep(pts))
    if audit_samples > 0:
        rng = np.random.default_rng(seed)
        audit = box.sample(rng, audit_samples)
        achieved = max(achieved, sweep(audit))
    return achieved <= eps, achieved


def _majority_limit(members: Sequence[MonomialExpansion], side: float) -> MonomialExpansion:
    """Coefficient-wise majority representative of a selection.

    For each multi-index the members' coefficients are pigeonholed on a
    grid of the given side; the representative takes the mean of the
    largest bucket.  Members missing a term contribute an exact zero, so
    a majority of absentees collapses that coefficient to exactly 0.
    """
    if not members:
        return MonomialExpansion({})
    support = sorted({alpha for f in members for alpha, _ in f}, key=lambda a: a.grlex_key())
    out = {}
    for alpha in support:
        values = [f.coefficient(alpha) for f in members]
        _, cluster = _largest_cluster(range(len(values)), values, side)
        rep = complex(np.mean(np.asarray(cluster)))
        if rep != 0:
            out[alpha] = rep
    return MonomialExpansion(out)


def limit_norm_check(
    limit: MonomialExpansion, p, member_norm_cap: float, cfg: QuadratureConfig | None = None
) -> BoundReport:
    """Norm of the limit representative against member_norm_cap + 1/2.

    The classical closing step: the limit cannot outgrow the family's
    uniform norm bound by more than the extraction slack.
    """
    p = as_p(p)
    member_norm_cap = float(member_norm_cap)
    if not (member_norm_cap >= 0 and math.isfinite(member_norm_cap)):
        raise ValueError("member_norm_cap must be finite and >= 0")
    est = hp_norm(limit, p, cfg)
    return BoundReport.compare(
        est.value,
        member_norm_cap + 0.5,
        {"p": p, "member_norm_cap": member_norm_cap, "norm_method": est.method},
    )


def extract_and_certify(
    family: Sequence[MonomialExpansion],
    box: CompactBox,
    eps: float,
    *,
    n_dense: int = 16,
    schedule: Sequence[float] | None = None,
    p=2,
    member_norm_cap: float | None = None,
    cfg: QuadratureConfig | None = None,
    audit_samples: int = 4096,
    seed: int = 0,
    net_size_cap: int = DEFAULT_NET_CAP,
) -> ExtractionReport:
    """Full pipeline: thin, certify on the box, and check the limit's norm."""
    p = as_p(p)
    if len(family) == 0:
        raise ValueError("family must be nonempty")
    width = max(_family_width(family), box.dims)
    points = dense_enumerate(n_dense, width)
    base = diagonal_extract(family, points, schedule)
    certified, achieved = certify_uniform_cauchy(
        family,
        base.selected_indices,
        box,
        eps,
        audit_samples=audit_samples,
        seed=seed,
        net_size_cap=net_size_cap,
    )
    if member_norm_cap is None:
        member_norm_cap = max(hp_norm(f, p, cfg).value for f in family)
    side = base.stages[-1].tolerance if base.stages else 1.0
    limit = _majority_limit([family[i] for i in base.selected_indices], side)
    report = limit_norm_check(limit, p, member_norm_cap, cfg)
    context = dict(base.context)
    context.update(
        {
            "eps": eps,
            "box_radii": box.radii,
            "n_dense": n_dense,
            "member_norm_cap": member_norm_cap,
            "audit_samples": audit_samples,
            "seed": seed,
            "tail_half": tuple(tail_half(base.selected_indices)),
        }
    )
    return ExtractionReport(
        selected_indices=base.selected_indices,
        stages=base.stages,
        survivor_sets=base.survivor_sets,
        cauchy_modulus=achieved,
        certified=certified,
        limit=limit,
        limit_norm_bound=report.rhs,
        limit_norm_report=report,
        context=context,
    )


def dirichlet_montel(
    family: Sequence[DirichletPolynomial],
    eps_translate: float,
    eta: float,
    *,
    C: float = DEFAULT_TRUNCATION_C,
) -> ExtractionReport:
    """Select a subfamily whose eps-translates are pairwise close in H2.

    The cutoff l0 is the smallest l that makes every member's exact
    translated tail beyond l smaller than eta (it exists: beyond the
    largest support the tails vanish).  Coefficients a_1..a_{l0} are then
    clustered with pairwise gaps below eta / l0, and the pairwise
    translated H2 distances of the surviving selection are measured
    against 3 * eta.  The translation distance must be positive: at
    eps_translate = 0 the monomial family n^(-s) has all pairwise
    distances sqrt(2) and no thinning can help, which is exactly why the
    flow is there.
    """
    eps_translate = float(eps_translate)
    eta = float(eta)
    if not (eps_translate > 0 and math.isfinite(eps_translate)):
        raise ValueError("eps_translate must be positive; at 0 the family need not cluster at all")
    if not (eta > 0 and math.isfinite(eta)):
        raise ValueError("eta must be positive")
    if len(family) == 0:
        raise ValueError("family must be nonempty")
    member_norms = [h2_norm_exact(d) for d in family]
    m_cap = max(member_norms)
    support_cap = max(d.support_bound for d in family)

    l0 = 0
    while l0 < support_cap and any(
        not tail_h2_norm(d, l0, eps_translate) < eta for d in family
    ):
        l0 += 1
    l0 = max(l0, 1)
    s_lower, _ = _log_weight_tail_brackets(l0, eps_translate)
    abel_rhs = eps_translate * C * m_cap * s_lower

    threshold = eta / l0
    side = threshold / 2.0
    survivors = list(range(len(family)))
    stages: list[StageCertificate] = []
    survivor_sets: list[tuple[int, ...]] = []
    stop_reason = "all frequencies walked"
    for n in range(1, l0 + 1):
        values = [family[i].coefficient(n) for i in survivors]
        keep, cluster = _largest_cluster(survivors, values, side)
        if len(keep) < 2:
            stop_reason = f"no cluster of size >= 2 at frequency {n}"
            break
        survivors = keep
        diameter = max(
            (abs(a - b) for i, a in enumerate(cluster) for b in cluster[i + 1 :]),
            default=0.0,
        )
        representative = complex(np.mean(np.asarray(cluster)))
        stages.append(StageCertificate(n - 1, n, side, diameter, len(keep), representative))
        survivor_sets.append(tuple(survivors))

    translated = [translate(family[i], eps_translate) for i in survivors]
    worst = 0.0
    for i in range(len(translated)):
        for j in range(i + 1, len(translated)):
            worst = max(worst, h2_distance(translated[i], translated[j]))
    certified = worst <= 3.0 * eta * (1.0 + TOL)

    head = {}
    for n in range(1, l0 + 1):
        values = [family[i].coefficient(n) for i in survivors]
        _, cluster = _largest_cluster(range(len(values)), values, side)
        rep = complex(np.mean(np.asarray(cluster)))
        if rep != 0:
            head[n] = rep
    limit = DirichletPolynomial(head)
    report = BoundReport.compare(
        h2_norm_exact(limit),
        m_cap + 0.5,
        {"p": 2.0, "member_norm_cap": m_cap, "norm_method": "exact_parseval"},
    )
    return ExtractionReport(
        selected_indices=tuple(survivors),
        stages=tuple(stages),
        survivor_sets=tuple(survivor_sets),
        cauchy_modulus=worst,
        certified=certified,
        limit=limit,
        limit_norm_bound=report.rhs,
        limit_norm_report=report,
        context={
            "eps_translate": eps_translate,
            "eta": eta,
            "C": C,
            "l0": l0,
            "coefficient_gap": threshold,
            "bucket_side": side,
            "abel_rhs_at_l0": abel_rhs,
            "member_norm_cap": m_cap,
            "distance_cap": 3.0 * eta,
            "stop_reason": stop_reason,
        },
    )
