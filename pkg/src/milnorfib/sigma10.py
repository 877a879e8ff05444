"""End-to-end pipeline for germs ``Φ(s, t) = (s, t², t·d(s, t))`` with ``d(s, t) = g(s, t²)``.

For these germs the double-point curve is ``D = {d = 0}``, the involution is
``ι(s, t) = (s, −t)``, the transversal section is ``H = z`` (so every vertical
index ``𝔳_j`` vanishes and ``D_♯ = {t = 0}``), and the number of crosscaps of
a stabilization is ``C = ord_s d(s, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, TypeVar

from .algebra.bipoly import BivariatePolynomial, squarefree_check
from .algebra.intlinalg import AbelianGroup
from .boundary import BoundaryGraph, Pair, PairingData, alpha, build_boundary_graph, vertical_index
from .branches import (
    BranchSet,
    apply_involution,
    branches_equal,
    intersection_multiplicity,
)
from .errors import InfiniteOrder, InvalidGerm, MilnorError, PairingFailure, PipelineError
from .newton_puiseux import DEFAULT_ORDER, expand
from .plumbing import h1
from .resolution import ResolutionGraph, multiplicities, pairwise_intersections_from_graph, resolve

T = TypeVar("T")


@dataclass(frozen=True)
class Sigma10Germ:
    """The germ ``(s, t) ↦ (s, t², t·d(s, t))``; ``d`` must be even in ``t``, prime to ``t`` and square-free."""

    d: BivariatePolynomial

    def __post_init__(self):
        d = self.d
        if d.is_zero():
            raise InvalidGerm("d must be nonzero")
        if not d.is_even_in_t():
            raise InvalidGerm(f"d = {d} is not of the form g(s, t^2)")
        if d.divides_by_t():
            raise InvalidGerm("d must not be divisible by t")
        if not d.vanishes_at_origin():
            raise InvalidGerm("d(0, 0) != 0: the germ has no double points")
        if not squarefree_check(d):
            raise InvalidGerm(f"d = {d} is not square-free (the germ is not finitely determined)")

    @property
    def field(self):
        return self.d.field

    def g_terms(self) -> dict[tuple[int, int], Any]:
        """Coefficients of ``g(x, y)`` with ``d(s, t) = g(s, t²)``."""
        return {(i, j // 2): c for (i, j), c in self.d.terms.items()}


def image_equation(germ: Sigma10Germ) -> str:
    """The image ``{y·g(x, y)² − z² = 0}`` as display text."""
    g = BivariatePolynomial(germ.field, germ.g_terms()).format(("x", "y"))
    return f"y*({g})^2 - z^2"


def crosscap_count(germ: Sigma10Germ) -> int:
    """``C(Φ) = dim O/(t, d) = ord_s d(s, 0)``."""
    d0 = germ.d.at_t_zero()
    for k, c in enumerate(d0):
        if not c.is_zero():
            return k
    raise InfiniteOrder("d(s, 0) vanishes identically")


def pairing(bs: BranchSet) -> PairingData:
    """``σ(i)`` = the branch equal to ``ι(D_i)``.

    Agreement is tested up to the current truncation; whenever several branches
    agree with ``ι(D_i)`` the expansions are extended until one remains (the
    true image is always among the branches because ``d`` is ι-invariant).
    """
    images = [apply_involution(b) for b in bs]
    sigma = []
    for i, img in enumerate(images):
        while True:
            cands = [k for k, b in enumerate(bs) if branches_equal(img, b)]
            if len(cands) == 1:
                sigma.append(cands[0])
                break
            if not cands:
                raise PairingFailure(f"the involution maps branch {i + 1} outside the branch set")
            extendable = [bs[k] for k in cands if not bs[k].is_exact]
            if not extendable:
                raise PairingFailure(f"branch {i + 1}: ambiguous involution image")
            for b in extendable:
                b.extend()
            if not img.is_exact:
                img.extend()
    pd = PairingData(sigma)
    return pd


def lambda_value(bs: BranchSet, i: int) -> int:
    """``λ_i = −Σ_{k≠i} D_i·D_k − D_i·{t = 0}``."""
    t_axis = BivariatePolynomial.t(bs.field)
    total = sum(intersection_multiplicity(bs[i], bs[k]) for k in range(len(bs)) if k != i)
    return -total - intersection_multiplicity(bs[i], t_axis)


def verify_sum_identity(germ: Sigma10Germ, bs: BranchSet | None = None, g: ResolutionGraph | None = None) -> tuple[bool, dict]:
    """Check ``Σ_j 𝔳𝔦_j = −Σ_{i≠k} D_i·D_k − C(Φ)``.

    The left side uses λ's from the Puiseux expansions; the right side uses
    ``D_i·D_k`` from the resolution graph and ``C`` read off ``d`` directly.
    """
    bs = bs if bs is not None else expand(germ.d)
    g = g if g is not None else resolve(bs)
    pd = pairing(bs)
    lambdas = [lambda_value(bs, i) for i in range(len(bs))]
    lhs = sum(vertical_index(_pair_with_lambdas(p, lambdas)) for p in pd.pairs)
    inter = pairwise_intersections_from_graph(g)
    c = crosscap_count(germ)
    rhs = -sum(inter[i][k] for i in range(len(bs)) for k in range(len(bs)) if i != k) - c
    report = {"lhs": lhs, "rhs": rhs, "crosscaps": c, "lambdas": lambdas}
    return lhs == rhs, report


def _pair_with_lambdas(p: Pair, lambdas: list[int]) -> Pair:
    return Pair(p.members, lambdas=tuple(lambdas[i] for i in p.members), v=0)


@dataclass
class Sigma10Result:
    germ: Sigma10Germ
    branches: BranchSet
    resolution: ResolutionGraph
    pairing: PairingData
    lambdas: list[int]
    boundary: BoundaryGraph
    sum_identity: dict
    intersections: list[list[int]] = dc_field(default_factory=list)

    @property
    def h1(self) -> AbelianGroup:
        return h1(self.boundary.graph)


def _stage(name: str, fn: Callable[[], T]) -> T:
    try:
        return fn()
    except PipelineError:
        raise
    except MilnorError as exc:
        raise PipelineError(name, exc) from exc


def compute_boundary(germ: Sigma10Germ, min_order: int = DEFAULT_ORDER) -> Sigma10Result:
    """expand → resolve → multiplicities → pairing → λ → α → Γ̂, with internal cross-checks."""
    bs = _stage("expand", lambda: expand(germ.d, min_order))
    g = _stage("resolve", lambda: resolve(bs))
    _stage("multiplicities", lambda: multiplicities(g))
    inter = _stage("intersections", lambda: pairwise_intersections_from_graph(g))

    def check_intersections():
        for i in range(len(bs)):
            for k in range(i + 1, len(bs)):
                pu = intersection_multiplicity(bs[i], bs[k])
                if pu != inter[i][k]:
                    raise AssertionError(f"D_{i + 1}·D_{k + 1}: graph gives {inter[i][k]}, Puiseux gives {pu}")

    _stage("intersections", check_intersections)
    pd0 = _stage("pairing", lambda: pairing(bs))
    lambdas = _stage("lambda", lambda: [lambda_value(bs, i) for i in range(len(bs))])
    pd = PairingData(pd0.sigma, [_pair_with_lambdas(p, lambdas) for p in pd0.pairs])
    _stage("alpha", lambda: [alpha(p, g) for p in pd.pairs])
    boundary = _stage("build", lambda: build_boundary_graph(g, pd))
    ok, report = _stage("verify", lambda: verify_sum_identity(germ, bs, g))
    if not ok:
        raise PipelineError("verify", AssertionError(f"vertical-index sum identity fails: {report}"))
    return Sigma10Result(germ, bs, g, pd, lambdas, boundary, report, inter)
