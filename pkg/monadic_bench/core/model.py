#
# Log-linear model over derivations: scores, ranking and gradients
#

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp, softmax

from .lambda_term import LambdaTerm
from .elements import SourcedGrammar
from .evaluator import canonical_term
from .chart_parser import ChartParser, Derivation
from .processor_config import ProcessorConfig
from .surface import surface_text
from .errors import NoDerivations, UnknownKey


def derivation_logscore(derivation: Derivation, theta: np.array,
                        index: dict) -> float:
    """The inner product of `theta` with the derivation's key counts.

    Parameters
    ----------
    derivation : Derivation
        The derivation to score
    theta : np.array
        The parameter vector
    index : dict
        Maps element keys to positions in `theta`

    Returns
    -------
    float
        The log score

    Raises
    ------
    UnknownKey
        If the derivation uses a key `index` does not know
    """
    score = 0.0
    for key, count in derivation.features().items():
        if key not in index:
            raise UnknownKey(f"Key {key} is not a parameter of the model")
        score += theta[index[key]] * count
    return float(score)


def beam_filter(delta: np.array, exponent: float) -> np.array:
    """The positions whose last change is within the beam. With `m` the
    largest absolute change, the cut is `m ** exponent` when `m >= 1`
    (never above `m`) and `m * min(exponent, 1)` when the changes are all
    below one. Positions that did not move are never kept.

    Parameters
    ----------
    delta : np.array
        The change of each parameter over the previous epoch
    exponent : float
        Exponent of the threshold

    Returns
    -------
    np.array
        Indices of the parameters still to update
    """
    size = np.abs(np.asarray(delta, dtype=float))
    largest = size.max(initial=0.0)
    if largest == 0:
        return np.array([], dtype=int)
    if largest >= 1:
        threshold = min(largest ** exponent, largest)
    else:
        threshold = largest * min(exponent, 1.0)
    return np.flatnonzero((size >= threshold) & (size > 0))


@dataclass
class RankedSolution:
    """One distinct lf of an input with its total probability, the most
    probable derivation that yields it and how many derivations do."""
    lf: LambdaTerm
    probability: float
    derivation: Derivation
    count: int


class Model:
    """A sourced grammar viewed as a log-linear model: one parameter per
    element key, initialised from the element weights.
    """

    def __init__(self, grammar: SourcedGrammar,
                 config: ProcessorConfig = None):
        """Constructor method

        Parameters
        ----------
        grammar : SourcedGrammar
            The keyed grammar
        config : ProcessorConfig [optional, default=None]
            Processor switches used for every analysis of the model
        """
        self._grammar = grammar
        self._keys = grammar.get_keys()
        self._index = {key: i for i, key in enumerate(self._keys)}
        self._theta = np.array([float(e.weight) for e in grammar],
                               dtype=float)
        self._parser = ChartParser(grammar, config)

    def get_keys(self) -> list[int]:
        return list(self._keys)

    def get_index(self) -> dict:
        return dict(self._index)

    def get_theta(self) -> np.array:
        return self._theta.copy()

    def set_theta(self, theta: np.array):
        theta = np.asarray(theta, dtype=float)
        if theta.shape != self._theta.shape:
            raise ValueError(f"Expected {self._theta.shape[0]} parameters, "
                             f"got {theta.shape}")
        self._theta = theta.copy()

    def get_parser(self) -> ChartParser:
        return self._parser

    def get_config(self) -> ProcessorConfig:
        return self._parser.get_config()

    def get_grammar(self) -> SourcedGrammar:
        """The grammar with the current parameters as its weights."""
        return self._grammar.with_weights(
            {key: float(value) for key, value in zip(self._keys,
                                                     self._theta)})

    def analyze(self, expression) -> list[Derivation]:
        return self._parser.analyze(expression)

    def feature_matrix(self, derivations: list[Derivation]) -> np.array:
        """Key counts of each derivation, one row per derivation."""
        matrix = np.zeros((len(derivations), len(self._keys)))
        for row, derivation in enumerate(derivations):
            for key, count in derivation.features().items():
                if key not in self._index:
                    raise UnknownKey(f"Key {key} is not a parameter of the "
                                     f"model")
                matrix[row, self._index[key]] = count
        return matrix

    def logscore(self, derivation: Derivation) -> float:
        return derivation_logscore(derivation, self._theta, self._index)

    def probabilities(self, derivations: list[Derivation]) -> np.array:
        """Softmax of the derivation scores."""
        return softmax(self.feature_matrix(derivations) @ self._theta)

    def rank(self, expression) -> list[RankedSolution]:
        """Ranks the distinct lfs of an expression by the summed
        probability of their derivations.

        Parameters
        ----------
        expression : str or list[SurfaceItem]
            The input

        Returns
        -------
        list[RankedSolution]
            Most probable first; ties in print order of the lf

        Raises
        ------
        NoDerivations
            If the expression has no analysis
        """
        derivations = self.analyze(expression)
        if not derivations:
            text = (expression if isinstance(expression, str)
                    else surface_text(expression))
            raise NoDerivations(f"No analysis of {text}")
        return self.rank_derivations(derivations)

    def rank_derivations(self,
                         derivations: list[Derivation]
                         ) -> list[RankedSolution]:
        """Ranks already computed (non-empty) derivations; see :meth:`rank`.
        """
        probabilities = self.probabilities(derivations)
        groups = {}
        for derivation, probability in zip(derivations, probabilities):
            group = groups.setdefault(canonical_term(derivation.lf),
                                      [0.0, None, 0.0, 0])
            group[0] += float(probability)
            group[3] += 1
            if group[1] is None or probability > group[2]:
                group[1], group[2] = derivation, float(probability)
        ranked = [RankedSolution(best.lf, total, best, count)
                  for total, best, _, count in groups.values()]
        ranked.sort(key=lambda solution: (-solution.probability,
                                          str(solution.lf)))
        return ranked

    def _split(self, pair, derivations):
        if derivations is None:
            derivations = self.analyze(list(pair.surface))
        if not derivations:
            raise NoDerivations(f"No analysis of {pair.text}")
        gold = canonical_term(pair.gold_lf)
        correct = np.array([canonical_term(d.lf) == gold
                            for d in derivations])
        return self.feature_matrix(derivations), correct

    def gradient(self, pair, derivations: list[Derivation] = None):
        """Gradient of the log probability of the gold lf: expected key
        counts over the derivations yielding the gold lf minus those over
        all derivations.

        Parameters
        ----------
        pair : SupervisionPair
            The surface expression and its gold lf
        derivations : list[Derivation] [optional, default=None]
            The analyses of the surface, if already computed

        Returns
        -------
        tuple[np.array, bool]
            The gradient, and whether the pair was skipped because no
            derivation yields the gold lf (the gradient is then zero)

        Raises
        ------
        NoDerivations
            If the surface has no analysis
        """
        features, correct = self._split(pair, derivations)
        if not correct.any():
            return np.zeros_like(self._theta), True
        scores = features @ self._theta
        expected_all = softmax(scores) @ features
        expected_correct = softmax(scores[correct]) @ features[correct]
        return expected_correct - expected_all, False

    def log_likelihood(self, pair, derivations: list[Derivation] = None):
        """Log probability of the gold lf; `-inf` if no derivation yields
        it."""
        features, correct = self._split(pair, derivations)
        if not correct.any():
            return -np.inf
        scores = features @ self._theta
        return float(logsumexp(scores[correct]) - logsumexp(scores))
