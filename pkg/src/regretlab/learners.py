"""Online learners behind one round-based protocol.

Every learner exposes ``predict(x) -> Prediction`` followed by
``observe(x, y)``. Predictions are either a deterministic label or a
probability of answering 1; the analytic run mode accumulates the exact
per-round mistake probability (for the expert-advice learners this equals
the current weight mass on wrong experts), so expectations over permutation
streams need no Monte Carlo sampling. Sampled mode draws the answers from a
seeded generator instead and is used to cross-check the analytic numbers.

Baselines: consistent, halving, soa (version-space learners, realizable
sequences only). wm is the randomized expert-advice learner with weights
exp(-eta * mistakes), normalized. The wm_* hybrids run their version-space
engine until the space empties, then hand the accumulated expert mistake
counts to the expert-advice core for the remaining rounds.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DimensionMismatch, WrongPhase
from .hypotheses import FiniteHypothesisClass, Sequence, VersionSpace, restrict
from .ldim import LdimComputer

BASELINE_KINDS = ("consistent", "halving", "soa")
HYBRID_KINDS = ("wm_consistent", "wm_halving", "wm_soa")
LEARNER_KINDS = BASELINE_KINDS + ("wm",) + HYBRID_KINDS

ETA_VARIANTS = ("sqrt8", "sqrt2")
TIE_BREAKS = ("one", "zero", "random")


def eta_for(d: int, T: int, variant: str = "sqrt8") -> float:
    """Learning rate for d experts over horizon T.

    sqrt8 is the rate the regret analysis is tuned for; sqrt2 is the
    alternative initialization kept selectable for comparison runs.
    """
    if variant not in ETA_VARIANTS:
        raise ValueError(f"eta variant must be one of {ETA_VARIANTS}, got {variant!r}")
    if d <= 1 or T <= 0:
        return 0.0
    factor = 8.0 if variant == "sqrt8" else 2.0
    return math.sqrt(factor * math.log(d) / T)


@dataclass(frozen=True)
class LearnerConfig:
    """Which learner to run and how its free parameters are set."""

    kind: str
    eta_variant: str = "sqrt8"
    tie_break: str = "one"

    def __post_init__(self) -> None:
        if self.kind not in LEARNER_KINDS:
            raise ValueError(f"unknown learner kind {self.kind!r}")
        if self.eta_variant not in ETA_VARIANTS:
            raise ValueError(f"unknown eta variant {self.eta_variant!r}")
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"unknown tie break {self.tie_break!r}")


@dataclass(frozen=True)
class Prediction:
    """A deterministic label (p_one in {0, 1}) or P(predict 1) = p_one."""

    p_one: float
    randomized: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_one <= 1.0:
            raise ValueError(f"p_one must lie in [0, 1], got {self.p_one}")

    @classmethod
    def label(cls, y: int) -> "Prediction":
        return cls(float(y), randomized=False)

    @classmethod
    def prob(cls, p: float) -> "Prediction":
        return cls(float(p), randomized=True)

    def mistake_probability(self, y: int) -> float:
        return self.p_one if y == 0 else 1.0 - self.p_one


def wm_weights(mistakes: np.ndarray, eta: float) -> np.ndarray:
    """Normalized weights exp(-eta * mistakes); shifted for stability."""
    m = np.asarray(mistakes, dtype=np.float64)
    w = np.exp(-eta * (m - m.min()))
    return w / w.sum()


class WeightedMajority:
    """Randomized expert-advice core: weights decay with expert mistakes."""

    def __init__(self, d: int, eta: float, mistakes: np.ndarray | None = None):
        self.d = d
        self.eta = eta
        self.mistakes = (
            np.zeros(d, dtype=np.int64) if mistakes is None else np.asarray(mistakes, np.int64)
        )
        if self.mistakes.shape != (d,):
            raise DimensionMismatch(f"mistake vector must have length {d}")

    def _check(self, advice: np.ndarray) -> np.ndarray:
        advice = np.asarray(advice)
        if advice.shape != (self.d,):
            raise DimensionMismatch(f"advice must have length {self.d}, got {advice.shape}")
        return advice

    def weights(self) -> np.ndarray:
        return wm_weights(self.mistakes, self.eta)

    def predict_from_advice(self, advice: np.ndarray) -> Prediction:
        advice = self._check(advice)
        p_hat = float(self.weights()[advice == 1].sum())
        return Prediction.prob(min(1.0, p_hat))

    def update_from_advice(self, advice: np.ndarray, y: int) -> None:
        advice = self._check(advice)
        self.mistakes += advice != y


def consistent_label(cls: FiniteHypothesisClass, space: VersionSpace, x: int) -> int:
    """Prediction of the lowest-indexed surviving hypothesis."""
    return cls.evaluate(space.min_index(), x)


def halving_votes(cls: FiniteHypothesisClass, space: VersionSpace, x: int) -> tuple[int, int]:
    """(votes for 0, votes for 1) among the surviving hypotheses."""
    ones = (space.mask & cls.ones_mask(cls.column_index(x))).bit_count()
    return len(space) - ones, ones


class _ConsistentEngine:
    def __init__(self, cls: FiniteHypothesisClass, config: LearnerConfig):
        self.cls = cls

    def predict(self, space: VersionSpace, x: int) -> Prediction:
        return Prediction.label(consistent_label(self.cls, space, x))


class _HalvingEngine:
    def __init__(self, cls: FiniteHypothesisClass, config: LearnerConfig):
        self.cls = cls
        self.tie_break = config.tie_break

    def predict(self, space: VersionSpace, x: int) -> Prediction:
        zeros, ones = halving_votes(self.cls, space, x)
        if ones != zeros:
            return Prediction.label(1 if ones > zeros else 0)
        if self.tie_break == "random":
            return Prediction.prob(0.5)
        return Prediction.label(1 if self.tie_break == "one" else 0)


class _SoaEngine:
    """Predicts the label whose restriction keeps the larger Ldim; ties go to 1.

    An empty restriction side counts as Ldim -1 so the non-empty side always
    wins. The Ldim memo is owned by this engine and so by a single run.
    """

    def __init__(self, cls: FiniteHypothesisClass, config: LearnerConfig):
        self.cls = cls
        self.computer = LdimComputer(cls)

    def predict(self, space: VersionSpace, x: int) -> Prediction:
        ones = self.cls.ones_mask(self.cls.column_index(x))
        m1 = space.mask & ones
        m0 = space.mask & ~ones
        l1 = self.computer.value(m1) if m1 else -1
        l0 = self.computer.value(m0) if m0 else -1
        return Prediction.label(1 if l1 >= l0 else 0)


_ENGINES = {"consistent": _ConsistentEngine, "halving": _HalvingEngine, "soa": _SoaEngine}


class VersionSpaceLearner:
    """Pure realizable-phase learner; raises WrongPhase once the space empties."""

    def __init__(self, config: LearnerConfig, cls: FiniteHypothesisClass, T: int):
        self.cls = cls
        self.engine = _ENGINES[config.kind](cls, config)
        self.space = cls.full_space()

    def predict(self, x: int) -> Prediction:
        if not self.space:
            raise WrongPhase("version space is empty; the sequence is not realizable")
        return self.engine.predict(self.space, x)

    def observe(self, x: int, y: int) -> None:
        self.space = restrict(self.space, self.cls, x, y)


class WmLearner:
    """Expert-advice learner bound to a hypothesis class for advice lookup."""

    def __init__(self, config: LearnerConfig, cls: FiniteHypothesisClass, T: int):
        self.cls = cls
        self.core = WeightedMajority(cls.d, eta_for(cls.d, T, config.eta_variant))

    @property
    def mistakes(self) -> np.ndarray:
        return self.core.mistakes

    def predict(self, x: int) -> Prediction:
        return self.core.predict_from_advice(self.cls.column(x))

    def observe(self, x: int, y: int) -> None:
        self.core.update_from_advice(self.cls.column(x), y)


class HybridLearner:
    """Version-space engine until the space empties, expert advice afterwards.

    Expert mistake counts are maintained in both phases, so the expert-advice
    core starts from the state it would have reached had it run from round 1.
    The switch happens exactly once; at that point every hypothesis has been
    wrong at least once (otherwise the space could not be empty).
    """

    def __init__(self, config: LearnerConfig, cls: FiniteHypothesisClass, T: int):
        self.cls = cls
        engine_kind = config.kind.removeprefix("wm_")
        self.engine = _ENGINES[engine_kind](cls, config)
        self.space = cls.full_space()
        self.core = WeightedMajority(cls.d, eta_for(cls.d, T, config.eta_variant))
        self.round = 0
        self.switch_round: int | None = None
        self.min_mistakes_at_switch: int | None = None

    @property
    def mistakes(self) -> np.ndarray:
        return self.core.mistakes

    def predict(self, x: int) -> Prediction:
        if self.space:
            return self.engine.predict(self.space, x)
        return self.core.predict_from_advice(self.cls.column(x))

    def observe(self, x: int, y: int) -> None:
        advice = self.cls.column(x)
        if self.space:
            new_space = restrict(self.space, self.cls, x, y)
            self.core.update_from_advice(advice, y)
            if not new_space and self.switch_round is None:
                self.switch_round = self.round + 1
                self.min_mistakes_at_switch = int(self.core.mistakes.min())
            self.space = new_space
        else:
            self.core.update_from_advice(advice, y)
        self.round += 1


def make_learner(config: LearnerConfig, cls: FiniteHypothesisClass, T: int):
    if config.kind in BASELINE_KINDS:
        return VersionSpaceLearner(config, cls, T)
    if config.kind == "wm":
        return WmLearner(config, cls, T)
    return HybridLearner(config, cls, T)


@dataclass(frozen=True)
class Analytic:
    """Accumulate exact per-round mistake probabilities; no randomness."""


@dataclass(frozen=True)
class Sampled:
    """Draw predictions from Bernoulli(p_one); `trials` independent passes."""

    seed: int | tuple[int, ...]
    trials: int = 1

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


ANALYTIC = Analytic()


@dataclass(frozen=True)
class RoundRecord:
    x: int
    y: int
    p_one: float
    randomized: bool
    mistake_prob: float


@dataclass
class RunTrace:
    """Per-round record of one learner pass plus aggregate totals."""

    rounds: list[RoundRecord]
    expected_mistakes: float
    deterministic_mistakes: int
    randomized_rounds: int = 0
    switch_round: int | None = None
    min_mistakes_at_switch: int | None = None
    trial_mistakes: np.ndarray | None = None

    def to_jsonl(self) -> str:
        lines = [
            json.dumps(
                {
                    "x": r.x,
                    "y": r.y,
                    "p_one": r.p_one,
                    "randomized": r.randomized,
                    "mistake_prob": r.mistake_prob,
                }
            )
            for r in self.rounds
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def run(
    config: LearnerConfig,
    cls: FiniteHypothesisClass,
    seq: Sequence | Iterable[tuple[int, int]],
    mode: Analytic | Sampled = ANALYTIC,
    collect_rounds: bool = True,
) -> RunTrace:
    """Drive one learner over one sequence.

    Analytic mode is deterministic: each round contributes its exact mistake
    probability. Sampled mode replays the same per-round prediction
    probabilities through a seeded generator; learner state never depends on
    the learner's own predictions, so the probabilities are shared across
    trials. Deterministic learners produce identical traces in both modes.
    """
    examples = tuple(seq)
    learner = make_learner(config, cls, len(examples))

    p_ones = np.empty(len(examples))
    randomized = np.empty(len(examples), dtype=bool)
    ys = np.empty(len(examples), dtype=np.int8)
    for t, (x, y) in enumerate(examples):
        if y not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {y!r}")
        pred = learner.predict(x)
        learner.observe(x, y)
        p_ones[t] = pred.p_one
        randomized[t] = pred.randomized
        ys[t] = y

    analytic_probs = np.where(ys == 0, p_ones, 1.0 - p_ones)
    trial_mistakes = None
    if isinstance(mode, Sampled):
        rng = np.random.default_rng(mode.seed)
        draws = rng.random((mode.trials, len(examples)))
        wrong = (draws < p_ones) != (ys == 1)
        trial_mistakes = wrong.sum(axis=1).astype(np.int64)
        round_probs = wrong.mean(axis=0)
    else:
        round_probs = analytic_probs

    deterministic = int(analytic_probs[~randomized].sum())
    rounds: list[RoundRecord] = []
    if collect_rounds:
        rounds = [
            RoundRecord(x, int(y), float(p), bool(r), float(mp))
            for (x, y), p, r, mp in zip(examples, p_ones, randomized, round_probs)
        ]
    return RunTrace(
        rounds=rounds,
        expected_mistakes=float(round_probs.sum()),
        deterministic_mistakes=deterministic,
        randomized_rounds=int(randomized.sum()),
        switch_round=getattr(learner, "switch_round", None),
        min_mistakes_at_switch=getattr(learner, "min_mistakes_at_switch", None),
        trial_mistakes=trial_mistakes,
    )
