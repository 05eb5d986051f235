#
# Class to train the weights of a grammar from form-meaning pairs
#

import logging
import os
import time
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .elements import SourcedGrammar
from .evaluator import canonical_term
from .model import Model, beam_filter
from .extrapolation import minimal_polynomial_extrapolation
from .processor_config import ProcessorConfig
from .grammar_io import ExperimentSpec, regenerate_text
from .plotter import Plotter
from .workspace import atomic_write
from .errors import ChartOverflow, EmptySupervision

logger = logging.getLogger(__name__)


@dataclass
class Candidate:
    """A weight snapshot offered as a trained grammar."""
    label: str
    order: int
    accuracy: float
    grammar: SourcedGrammar


class Trainer:
    """This class runs stochastic gradient ascent on the log-linear model of
    a grammar, one supervision pair at a time, and selects candidate
    grammars among the epoch snapshots.
    """

    def __init__(self, grammar: SourcedGrammar, pairs: list,
                 spec: ExperimentSpec, config: ProcessorConfig = None,
                 num_candidates: int = 3):
        """Constructor Method

        Parameters
        ----------
        grammar : SourcedGrammar
            The grammar whose weights are the starting parameters
        pairs : list[SupervisionPair]
            The supervision, in training order
        spec : ExperimentSpec
            Iterations, learning rates, log prefix and pre-function
        config : ProcessorConfig [optional, default=None]
            Processor switches; copied, then changed by the pre-function and
            the memory hints of `spec`
        num_candidates : int [optional, default=3]
            How many candidate grammars to select
        """
        if not pairs:
            raise EmptySupervision("There are no supervision pairs to train "
                                   "on")
        if num_candidates < 1:
            raise ValueError("num_candidates must be at least 1")
        self._spec = spec
        self._config = (config or ProcessorConfig()).copy()
        if spec.pre_function:
            report = self._config.call(spec.pre_function)
            logger.info("%s: %s", spec.pre_function, report)
        self._config.apply_resource_hints(spec.mem_mb, spec.heap_mb)
        self._grammar = grammar
        self._pairs = list(pairs)
        self._num_candidates = num_candidates
        self._model = Model(grammar, self._config)
        self._derivations = None
        self._history = pd.DataFrame(columns=["epoch", "rate", "accuracy",
                                              "skipped", "failed",
                                              "seconds"])
        self._weight_history = pd.DataFrame(
            columns=["epoch"] + [str(key) for key in self._model.get_keys()])
        self._snapshots = []

    def get_model(self) -> Model:
        return self._model

    def get_history(self) -> pd.DataFrame:
        return self._history

    def get_weight_history(self) -> pd.DataFrame:
        return self._weight_history

    def learning_rate(self, t: int) -> float:
        """The step size of epoch `t` (from 1): `lr / (1 + lrr (t - 1))`."""
        return self._spec.learning_rate / (
            1 + self._spec.learning_rate_rate * (t - 1))

    def num_epochs(self) -> int:
        if self._spec.extrapolate:
            return self._config.xp_epochs
        return self._spec.iterations

    def _analyze(self, pair) -> list:
        try:
            return self._model.analyze(list(pair.surface))
        except ChartOverflow as error:
            logger.warning("%s: %s", pair.text, error)
            return []

    def _prepare(self):
        if self._derivations is None:
            self._derivations = [self._analyze(pair) for pair in self._pairs]

    def accuracy(self) -> float:
        """Fraction of pairs whose top ranked lf is the gold lf, under the
        current parameters."""
        self._prepare()
        hits = 0
        for pair, derivations in zip(self._pairs, self._derivations):
            if not derivations:
                continue
            top = self._model.rank_derivations(derivations)[0]
            hits += canonical_term(top.lf) == canonical_term(pair.gold_lf)
        return hits / len(self._pairs)

    def _record(self, epoch, rate: float, accuracy: float, skipped: int,
                failed: int, seconds: float):
        df = self._history
        df.loc[len(df)] = [str(epoch), rate, accuracy, skipped, failed,
                           round(seconds, 6)]

    def _record_weights(self, epoch: int):
        df = self._weight_history
        df.loc[len(df)] = [epoch] + list(self._model.get_theta())

    def _epoch(self, t: int, active):
        rate = self.learning_rate(t)
        skipped = failed = 0
        for pair, derivations in zip(self._pairs, self._derivations):
            if not derivations:
                failed += 1
                continue
            grad, skip = self._model.gradient(pair, derivations)
            if skip:
                skipped += 1
                continue
            if active is not None:
                masked = np.zeros_like(grad)
                masked[active] = grad[active]
                grad = masked
            self._model.set_theta(self._model.get_theta() + rate * grad)
        return rate, skipped, failed

    def run(self) -> list[Candidate]:
        """Main method for training. Each epoch visits the pairs in order
        and moves the parameters along each pair's gradient; every epoch's
        parameters are kept as a snapshot. An `xp` run adds the
        extrapolated limit of its last iterates as one more snapshot.

        Returns
        -------
        list[Candidate]
            The selected candidates, best first
        """
        self._prepare()
        self._record(0, 0.0, self.accuracy(), 0, 0, 0.0)
        self._record_weights(0)
        epochs = self.num_epochs()
        delta = None
        for t in range(1, epochs + 1):
            start = time.perf_counter()
            theta_start = self._model.get_theta()
            active = None
            if self._config.beam and delta is not None:
                active = beam_filter(delta, self._config.beam_exponent)
            rate, skipped, failed = self._epoch(t, active)
            theta = self._model.get_theta()
            delta = theta - theta_start
            accuracy = self.accuracy()
            self._record(t, rate, accuracy, skipped, failed,
                         time.perf_counter() - start)
            self._record_weights(t)
            self._snapshots.append((str(t), t, theta, accuracy))
            logger.info("epoch %d: accuracy %.4f, %d skipped, %d without "
                        "analysis", t, accuracy, skipped, failed)
        if self._spec.extrapolate:
            start = time.perf_counter()
            window = self._weight_history.iloc[-self._config.xp_window:, 1:]
            theta = minimal_polynomial_extrapolation(
                window.to_numpy(dtype=float))
            self._model.set_theta(theta)
            accuracy = self.accuracy()
            self._record("xp", 0.0, accuracy, 0, 0,
                         time.perf_counter() - start)
            self._snapshots.append(("xp", epochs + 1, theta, accuracy))
            logger.info("extrapolated: accuracy %.4f", accuracy)
        return self.candidates()

    def candidates(self) -> list[Candidate]:
        """The snapshots with the best training accuracy, later ones first
        among equals."""
        keys = self._model.get_keys()
        ranked = sorted(self._snapshots, key=lambda s: (-s[3], -s[1]))
        return [Candidate(label, order, accuracy, self._grammar.with_weights(
                    {key: float(value) for key, value in zip(keys, theta)}))
                for label, order, theta, accuracy
                in ranked[:self._num_candidates]]

    def log_text(self, candidates: list[Candidate]) -> str:
        spec = self._spec
        lines = [f"run {spec.run_label()}",
                 f"grammar {self._grammar.get_name()}, "
                 f"{len(self._pairs)} supervision pairs",
                 f"experiment {spec.to_line()}",
                 self._history.to_string(index=False),
                 "candidates:"]
        lines += [f"cand{i} epoch {c.label} accuracy {c.accuracy:.4f}"
                  for i, c in enumerate(candidates, start=1)]
        return "\n".join(lines) + "\n"

    def write_outputs(self, candidates: list[Candidate], directory: str = ".",
                      plot: bool = False) -> list[str]:
        """Writes the candidate grammars (re-text), the log and optionally
        the weight trace plot, all named after the run.

        Returns
        -------
        list[str]
            The paths written
        """
        label = self._spec.run_label()
        paths = []
        for i, candidate in enumerate(candidates, start=1):
            path = os.path.join(directory, f"{label}-cand{i}.txt")
            atomic_write(path, regenerate_text(candidate.grammar))
            paths.append(path)
        log_path = os.path.join(directory, f"{label}.log")
        atomic_write(log_path, self.log_text(candidates))
        paths.append(log_path)
        if plot:
            paths.append(Plotter.plot_traces(
                self._weight_history.astype(float), label, directory))
        return paths
