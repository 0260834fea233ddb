"""Learning-game harnesses.

The online protocol runs on a finite class window: per round the adversary
asks a point, the learner guesses, the adversary reveals the truth, and the
harness independently verifies that the revealed history stays realizable,
recording a witness concept each round.  Adversaries never get trusted.

The PAC side is a seeded Monte Carlo experiment around empirical risk
minimization, together with a standard realizable-case sample size bound.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .classes import FiniteClass
from .errors import ProtocolViolationError
from .dimensions import LittlestoneTree, littlestone_dim


@dataclass(frozen=True)
class GameTranscript:
    rounds: tuple[tuple[int, int, int], ...]  # (x, guess, truth)
    mistakes: int
    witnesses: tuple[tuple[int, ...], ...]  # per-round consistent concept

    def to_json_dict(self) -> dict:
        return {
            "rounds": [list(r) for r in self.rounds],
            "mistakes": self.mistakes,
            "witnesses": [list(w) for w in self.witnesses],
        }


class _VersionSpace:
    """Concept ids of a finite class consistent with the history so far."""

    def __init__(self, fc: FiniteClass):
        self.fc = fc
        self.ids = list(range(len(fc.concepts)))

    def split(self, x: int) -> tuple[list[int], list[int]]:
        col = self.fc.column(x)
        zeros = [i for i in self.ids if self.fc.concepts[i][col] == 0]
        ones = [i for i in self.ids if self.fc.concepts[i][col] == 1]
        return zeros, ones

    def observe(self, x: int, y: int) -> None:
        col = self.fc.column(x)
        self.ids = [i for i in self.ids if self.fc.concepts[i][col] == y]


def soa_predict(version_space: FiniteClass, x: int) -> int:
    """Label whose restriction keeps the larger Littlestone dimension.

    Ties predict 0.  Guarantees at most Ldim mistakes against any
    realizable adversary.  Raises on an empty version space, which can only
    mean the adversary violated realizability.
    """
    if not version_space.concepts:
        raise ValueError("version space is empty: adversary violated realizability")
    col = version_space.column(x)
    zeros = [c for c in version_space.concepts if c[col] == 0]
    ones = [c for c in version_space.concepts if c[col] == 1]
    if not zeros:
        return 1
    if not ones:
        return 0
    dim0 = littlestone_dim(FiniteClass.from_rows(version_space.domain, zeros)).value
    dim1 = littlestone_dim(FiniteClass.from_rows(version_space.domain, ones)).value
    return 1 if dim1 > dim0 else 0


class SOALearner:
    """Standard optimal algorithm: predict the argmax-dimension restriction."""

    def __init__(self, fc: FiniteClass):
        self.space = _VersionSpace(fc)

    def predict(self, x: int) -> int:
        fc = self.space.fc
        current = FiniteClass.from_rows(
            fc.domain, [fc.concepts[i] for i in self.space.ids]
        )
        return soa_predict(current, x)

    def observe(self, x: int, y: int) -> None:
        self.space.observe(x, y)


class ConstantLearner:
    def __init__(self, label: int):
        self.label = label

    def predict(self, x: int) -> int:
        return self.label

    def observe(self, x: int, y: int) -> None:
        pass


class RandomLearner:
    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def predict(self, x: int) -> int:
        return self.rng.randint(0, 1)

    def observe(self, x: int, y: int) -> None:
        pass


class TreeAdversary:
    """Follows a mistake tree: asks the current node's point and answers the
    opposite of the learner's guess, descending the matching edge.

    Forces one mistake per tree level while the tree property keeps the
    history realizable.  Once the tree is exhausted it commits to the first
    class concept consistent with the history and answers truthfully,
    cycling through the domain for questions.
    """

    def __init__(self, fc: FiniteClass, tree: LittlestoneTree):
        self.fc = fc
        self.tree = tree
        self.prefix: tuple[int, ...] = ()
        self.space = _VersionSpace(fc)
        self.committed: tuple[int, ...] | None = None
        self._cycle = 0

    def question(self) -> int:
        if len(self.prefix) < self.tree.depth:
            return self.tree.labels[self.prefix]
        x = self.fc.domain[self._cycle % len(self.fc.domain)]
        self._cycle += 1
        return x

    def reveal(self, x: int, guess: int) -> int:
        if len(self.prefix) < self.tree.depth:
            truth = 1 - guess
            self.prefix = self.prefix + (truth,)
        else:
            if self.committed is None:
                if not self.space.ids:
                    raise ValueError("no concept consistent with the tree history")
                self.committed = self.fc.concepts[self.space.ids[0]]
            truth = self.committed[self.fc.column(x)]
        self.space.observe(x, truth)
        return truth


class RandomConsistentAdversary:
    """Asks random points and reveals a random label among the realizable ones."""

    def __init__(self, fc: FiniteClass, seed: int = 0):
        self.fc = fc
        self.space = _VersionSpace(fc)
        self.rng = random.Random(seed)

    def question(self) -> int:
        return self.rng.choice(self.fc.domain)

    def reveal(self, x: int, guess: int) -> int:
        zeros, ones = self.space.split(x)
        if zeros and ones:
            truth = self.rng.randint(0, 1)
        else:
            truth = 1 if ones else 0
        self.space.observe(x, truth)
        return truth


class MajorityFlipAdversary:
    """Asks the most contested point and reveals the minority label.

    Shrinks the version space as fast as labels can be flipped against the
    crowd while staying realizable; ignores the learner's guess.
    """

    def __init__(self, fc: FiniteClass):
        self.fc = fc
        self.space = _VersionSpace(fc)

    def question(self) -> int:
        best_x = self.fc.domain[0]
        best_minority = -1
        for x in self.fc.domain:
            zeros, ones = self.space.split(x)
            minority = min(len(zeros), len(ones))
            if minority > best_minority:
                best_minority = minority
                best_x = x
        return best_x

    def reveal(self, x: int, guess: int) -> int:
        zeros, ones = self.space.split(x)
        if not ones:
            truth = 0
        elif not zeros:
            truth = 1
        else:
            truth = 0 if len(zeros) <= len(ones) else 1
        self.space.observe(x, truth)
        return truth


def tree_adversary(fc: FiniteClass, tree: LittlestoneTree) -> TreeAdversary:
    if not tree.verify_against(fc):
        raise ValueError("tree is not realizable in the class")
    return TreeAdversary(fc, tree)


def play_online_game(
    fc: FiniteClass, learner, adversary, max_rounds: int
) -> GameTranscript:
    """Run the online protocol for max_rounds rounds with verified realizability.

    Every revealed prefix must be consistent with some class concept; the
    witness found per round goes into the transcript.  Raises
    ProtocolViolationError naming the (1-based) round otherwise.
    """
    rounds: list[tuple[int, int, int]] = []
    witnesses: list[tuple[int, ...]] = []
    history: list[tuple[int, int]] = []
    mistakes = 0
    for t in range(1, max_rounds + 1):
        x = adversary.question()
        guess = learner.predict(x)
        truth = adversary.reveal(x, guess)
        if truth not in (0, 1):
            raise ProtocolViolationError(f"adversary revealed non-bit label {truth!r}", t)
        history.append((x, truth))
        witness = _consistent_concept(fc, history)
        if witness is None:
            raise ProtocolViolationError("revealed history is unrealizable", t)
        witnesses.append(witness)
        rounds.append((x, guess, truth))
        if guess != truth:
            mistakes += 1
        learner.observe(x, truth)
    return GameTranscript(rounds=tuple(rounds), mistakes=mistakes, witnesses=tuple(witnesses))


def _consistent_concept(
    fc: FiniteClass, history: Sequence[tuple[int, int]]
) -> tuple[int, ...] | None:
    cols = [(fc.column(x), y) for x, y in history]
    for concept in fc.concepts:
        if all(concept[col] == y for col, y in cols):
            return concept
    return None


def erm(fc: FiniteClass, sample: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    """Concept minimizing empirical disagreement; ties go to the smallest
    witness index."""
    if not sample:
        raise ValueError("erm requires a nonempty sample")
    counts: dict[tuple[int, int], int] = {}
    for x, y in sample:
        counts[(x, y)] = counts.get((x, y), 0) + 1
    return _erm_from_counts(fc, counts)


def _erm_from_counts(fc: FiniteClass, counts: Mapping[tuple[int, int], int]) -> tuple[int, ...]:
    cols = {x: fc.column(x) for x, _ in counts}
    best_row: tuple[int, ...] | None = None
    best_key: tuple[int, int] | None = None
    for row, witness in zip(fc.concepts, fc.witnesses):
        errors = sum(c for (x, y), c in counts.items() if row[cols[x]] != y)
        key = (errors, witness)
        if best_key is None or key < best_key:
            best_key, best_row = key, row
    assert best_row is not None
    return best_row


def sample_size_bound(vcdim: int, epsilon: float, delta: float) -> int:
    """A standard realizable-case PAC sample size:
    ceil((8/eps) * (vcdim * log2(16/eps) + log2(2/delta))).

    One admissible polynomial choice; only the polynomial dependence on
    1/eps and log(1/delta) is canonical.
    """
    if vcdim < 0:
        raise ValueError("vcdim must be nonnegative")
    if not (0 < epsilon < 1 and 0 < delta < 1):
        raise ValueError("epsilon and delta must lie in (0, 1)")
    return math.ceil(
        (8 / epsilon) * (vcdim * math.log2(16 / epsilon) + math.log2(2 / delta))
    )


@dataclass(frozen=True)
class PacReport:
    epsilon: float
    delta: float
    trials: int
    seed: int
    sample_sizes: tuple[int, ...]
    success_frequencies: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "trials": self.trials,
            "seed": self.seed,
            "sample_sizes": list(self.sample_sizes),
            "success_frequencies": list(self.success_frequencies),
        }


def pac_experiment(
    fc: FiniteClass,
    target: Sequence[int],
    dist: Mapping[int, int | float | Fraction],
    epsilon: float,
    delta: float,
    trials: int,
    *,
    sample_sizes: Sequence[int] | None = None,
    seed: int = 0,
) -> PacReport:
    """Monte Carlo check of ERM in the realizable regime.

    For each sample size, draws `trials` independent samples from the
    distribution labelled by `target`, fits ERM, and reports the fraction of
    trials whose true error under the distribution is at most epsilon.
    Per-trial randomness derives deterministically from the master seed.
    """
    if not (0 < epsilon < 1 and 0 < delta < 1):
        raise ValueError("epsilon and delta must lie in (0, 1)")
    if trials < 1:
        raise ValueError("trials must be positive")
    target_row = tuple(target)
    fc.index_of(target_row)  # realizable regime: the target is in the class

    points = sorted(dist)
    weights = [Fraction(dist[x]) for x in points]
    if any(w < 0 for w in weights) or sum(weights) == 0:
        raise ValueError("distribution weights must be nonnegative and not all zero")
    total = sum(weights)
    probs = [w / total for w in weights]
    point_cols = {x: fc.column(x) for x in points}  # validates support

    if sample_sizes is None:
        from .dimensions import vc_dim

        sizes = (sample_size_bound(vc_dim(fc).value, epsilon, delta),)
    else:
        sizes = tuple(sample_sizes)
        if any(m < 1 for m in sizes):
            raise ValueError("sample sizes must be positive")

    master = random.Random(seed)
    trial_seeds = [master.randrange(2**63) for _ in range(trials * len(sizes))]
    cum = [float(sum(probs[: k + 1])) for k in range(len(probs))]

    frequencies: list[float] = []
    seed_iter = iter(trial_seeds)
    for m in sizes:
        successes = 0
        for _ in range(trials):
            rng = random.Random(next(seed_iter))
            drawn = rng.choices(points, cum_weights=cum, k=m)
            counts: dict[tuple[int, int], int] = {}
            for x in drawn:
                key = (x, target_row[point_cols[x]])
                counts[key] = counts.get(key, 0) + 1
            hypothesis = _erm_from_counts(fc, counts)
            true_error = float(
                sum(
                    p
                    for p, x in zip(probs, points)
                    if hypothesis[point_cols[x]] != target_row[point_cols[x]]
                )
            )
            if true_error <= epsilon:
                successes += 1
        frequencies.append(successes / trials)
    return PacReport(
        epsilon=epsilon,
        delta=delta,
        trials=trials,
        seed=seed,
        sample_sizes=sizes,
        success_frequencies=tuple(frequencies),
    )
