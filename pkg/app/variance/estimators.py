"""
Monte Carlo estimators of intersection variances.

var_random draws a Liouville-random segment of length L and an independent
centre w in F_A. var_closed and expectation_check sum over the closed
geodesics of a discriminant and draw w from all of X, split at a height A*
above which no closed geodesic of the discriminant can meet the annulus.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from app.errors import DomainError
from app.forms import FormCache, cycle_anchors, dirichlet_L1
from app.intersections import SegmentFrame, path_annulus_length, trace_closed_geodesic, walk_segment
from app.models import AnnulusSpec, Estimate, ExperimentConfig
from app.special import G_value, bessel_main_integral
from app.variance.runner import run_samples
from app.variance.sampling import MU_F, sample_point_F, sample_tangent

logger = logging.getLogger(__name__)

REGIME_THRESHOLD = 0.1
PERIOD_TOL = 1e-9


def random_prediction(L: float, ann: AnnulusSpec) -> float:
    return 16.0 * L * ann.R ** 3 / math.pi * G_value(ann.ratio)


def thin_annulus_prediction(L: float, ann: AnnulusSpec) -> float:
    """12 L R (R - r)^2 / pi * log(1 / (R - r)), the thin-annulus limit."""
    gap = ann.R - ann.r
    return 12.0 * L * ann.R * gap * gap / math.pi * math.log(1.0 / gap)


def closed_prediction(D: int, ann: AnnulusSpec) -> float:
    return 64.0 * math.sqrt(D) * dirichlet_L1(D) * ann.R ** 3 / math.pi * G_value(ann.ratio)


def spectral_main_term(D: int, ann: AnnulusSpec) -> float:
    """48 sqrt(D) L(1, chi_D) times the Bessel main-term integral."""
    return 48.0 * math.sqrt(D) * dirichlet_L1(D) * bessel_main_integral(ann)


def regime_parameter(A: float, ann: AnnulusSpec) -> float:
    return math.log(A) * ann.R * math.log(1.0 / (ann.R - ann.r))


def agrees_with_prediction(estimate: Estimate, z_bound: float = 3.0) -> bool:
    """|mean - prediction| within z_bound standard errors, widened by the
    finite-scale error term regime * prediction.

    The cusp and short-return corrections are of relative size
    log A * R * log(1/(R - r)) and do not shrink with n.
    """
    slack = estimate.extras.get("regime", 0.0) * abs(estimate.prediction)
    return abs(estimate.mean - estimate.prediction) <= z_bound * estimate.stderr + slack


@dataclass(frozen=True)
class RandomSegmentSampler:
    ann: AnnulusSpec
    L: float
    A: float
    step: float
    hit_cap: int

    def __call__(self, rng: np.random.Generator) -> float:
        g = sample_tangent(rng)
        w = sample_point_F(self.A, rng)
        return walk_segment(g, self.L, w, self.ann, self.step, self.hit_cap)


@dataclass(frozen=True)
class ClosedGeodesicSampler:
    frames: tuple[SegmentFrame, ...]
    ann: AnnulusSpec
    A: float
    hit_cap: int

    def __call__(self, rng: np.random.Generator) -> float:
        w = sample_point_F(self.A, rng)
        return path_annulus_length(list(self.frames), w, self.ann, self.hit_cap)


def var_random(cfg: ExperimentConfig) -> Estimate:
    """E[F^2] with F = walk length - L mu(annulus) / mu(F)."""
    if cfg.L is None:
        raise DomainError("var_random needs a segment length L")
    ann = cfg.ann
    if cfg.L < 1.0 or ann.R > 0.2:
        logger.warning(f"L={cfg.L}, R={ann.R} is outside the asymptotic regime L >= 1, R <= 0.2")
    regime = regime_parameter(cfg.A, ann)
    if regime > REGIME_THRESHOLD:
        logger.warning(
            f"log A * R * log(1/(R - r)) = {regime:.3g} exceeds {REGIME_THRESHOLD}; "
            "the cusp contribution may dominate"
        )
    logger.info(f"var_random: L={cfg.L}, r={ann.r}, R={ann.R}, A={cfg.A}, n={cfg.n_samples}")
    sampler = RandomSegmentSampler(ann, cfg.L, cfg.A, cfg.step, cfg.hit_cap)
    lengths = run_samples(sampler, cfg.n_samples, cfg.seed, cfg.workers, cfg.chunk_size)
    centre = cfg.L * ann.volume() / MU_F
    centred = lengths - centre
    prediction = random_prediction(cfg.L, ann)
    thin = thin_annulus_prediction(cfg.L, ann)
    extras = {
        "centering": centre,
        "mean_length": float(np.mean(lengths)),
        "uncentered_mean": float(np.mean(lengths * lengths)),
        "thin_prediction": thin,
        "regime": regime,
    }
    if thin > 0.0:
        extras["prediction_ratio"] = prediction / thin
    return Estimate.from_samples(centred * centred, cfg.seed, prediction, extras)


@dataclass(frozen=True)
class ClosedGeodesicSetup:
    D: int
    h_plus: int
    period: float
    frames: tuple[SegmentFrame, ...]
    cutoff: float

    @property
    def total_length(self) -> float:
        return self.h_plus * self.period

    @property
    def upper_weight(self) -> float:
        """mu(X \\ F_{A*}) / mu(X)."""
        return 1.0 / (self.cutoff * MU_F)


def closed_geodesic_setup(D: int, ann: AnnulusSpec, A: float, step: float, cache: FormCache) -> ClosedGeodesicSetup:
    """Windows along one period of every cycle's geodesic, plus the cutoff A*."""
    data = cache.get(D)
    frames: list[SegmentFrame] = []
    for cycle in cache.cycles(D):
        anchors, total = cycle_anchors(cycle)
        if abs(total - data.geodesic_length) > PERIOD_TOL * data.geodesic_length:
            logger.warning(
                f"Cycle of {cycle.representative.as_tuple()} sums to {total:.12g}, "
                f"period is {data.geodesic_length:.12g}"
            )
        frames.extend(trace_closed_geodesic(anchors, data.geodesic_length, step))
    ceiling = 0.5 * math.sqrt(data.D) * math.exp(ann.R)
    cutoff = max(A, ceiling)
    if cutoff > A:
        logger.warning(f"Raised the sampling cutoff from A={A} to {cutoff:.6g} (geodesics of D={data.D} reach sqrt(D)/2)")
    return ClosedGeodesicSetup(data.D, data.h_plus, data.geodesic_length, tuple(frames), cutoff)


def _stratified_moments(values: np.ndarray, weight: float, upper_value: float) -> tuple[float, float]:
    """Mean and standard error over X of a quantity sampled on F_{A*} and
    equal to upper_value above A*."""
    lower = 1.0 - weight
    mean = lower * float(np.mean(values)) + weight * upper_value
    stderr = lower * float(np.std(values, ddof=1)) / math.sqrt(values.size)
    return mean, stderr


def var_closed(cfg: ExperimentConfig, cache: FormCache | None = None) -> Estimate:
    """Variance over w in X of the annulus intersection length of the closed
    geodesics of discriminant D, against the large-D prediction.

    The prediction concerns D -> infinity and is reported, never asserted.
    """
    if cfg.D is None:
        raise DomainError("var_closed needs a discriminant D")
    cache = cache or FormCache(directory=None)
    ann = cfg.ann
    setup = closed_geodesic_setup(cfg.D, ann, cfg.A, cfg.step, cache)
    squarefree = cache.get(setup.D).squarefree
    if not squarefree:
        logger.warning(f"D={setup.D} is not squarefree; the large-D prediction assumes squarefree D")
    logger.info(
        f"var_closed: D={setup.D}, h+={setup.h_plus}, total length={setup.total_length:.6g}, n={cfg.n_samples}"
    )
    logger.warning("The large-D prediction is out of reach at this scale; its z-score is informational")
    sampler = ClosedGeodesicSampler(setup.frames, ann, setup.cutoff, cfg.hit_cap)
    lengths = run_samples(sampler, cfg.n_samples, cfg.seed, cfg.workers, cfg.chunk_size)
    centre = ann.volume() / MU_F * setup.total_length
    centred = lengths - centre
    mean, stderr = _stratified_moments(centred * centred, setup.upper_weight, centre * centre)
    extras = {
        "h_plus": float(setup.h_plus),
        "squarefree": float(squarefree),
        "total_length": setup.total_length,
        "centering": centre,
        "cutoff": setup.cutoff,
        "upper_weight": setup.upper_weight,
        "spectral_main_term": spectral_main_term(setup.D, ann),
    }
    return Estimate.from_moments(mean, stderr, cfg.n_samples, cfg.seed, closed_prediction(setup.D, ann), extras)


def expectation_check(
    D: int,
    ann: AnnulusSpec,
    n: int,
    seed: int,
    *,
    A: float | None = None,
    workers: int = 1,
    step: float = 0.5,
    chunk_size: int = 256,
    hit_cap: int = 1_000_000,
    cache: FormCache | None = None,
) -> Estimate:
    """Mean over X of the intersection length against its exact value
    mu(annulus) / mu(X) * h+ * 2 log eps+."""
    cache = cache or FormCache(directory=None)
    A = A if A is not None else max(1.0, 0.5 * math.sqrt(D))
    cfg = ExperimentConfig(
        ann=ann, D=D, A=A, n_samples=n, seed=seed, workers=workers,
        step=step, chunk_size=chunk_size, hit_cap=hit_cap,
    )
    setup = closed_geodesic_setup(cfg.D, ann, cfg.A, cfg.step, cache)
    sampler = ClosedGeodesicSampler(setup.frames, ann, setup.cutoff, cfg.hit_cap)
    lengths = run_samples(sampler, cfg.n_samples, cfg.seed, cfg.workers, cfg.chunk_size)
    mean, stderr = _stratified_moments(lengths, setup.upper_weight, 0.0)
    prediction = ann.volume() / MU_F * setup.total_length
    extras = {
        "h_plus": float(setup.h_plus),
        "total_length": setup.total_length,
        "cutoff": setup.cutoff,
    }
    return Estimate.from_moments(mean, stderr, cfg.n_samples, cfg.seed, prediction, extras)


def truncation_scan(cfg: ExperimentConfig, A_values: list[float]) -> list[dict[str, float]]:
    """var_random at several cusp cutoffs, for watching growth in A."""
    rows = []
    for A in A_values:
        estimate = var_random(cfg.model_copy(update={"A": A}))
        rows.append(
            {
                "A": A,
                "regime": regime_parameter(A, cfg.ann),
                "mean": estimate.mean,
                "stderr": estimate.stderr,
                "prediction": estimate.prediction,
            }
        )
    return rows
