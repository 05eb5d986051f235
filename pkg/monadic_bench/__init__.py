# Import directories
from . import core # noqa
from . import examples # noqa

# Import main classes
from .core.category import Basic, Complex, Singleton, Meta # noqa
from .core.lambda_term import Var, Const, Abs, App # noqa
from .core.elements import Entry, AsymRule, SymRule # noqa
from .core.elements import Grammar, SourcedGrammar # noqa
from .core.grammar_io import load_grammar, source_grammar # noqa
from .core.grammar_io import parse_supervision, ExperimentSpec # noqa
from .core.processor_config import ProcessorConfig # noqa
from .core.chart_parser import ChartParser, Derivation # noqa
from .core.model import Model # noqa
from .core.plotter import Plotter # noqa
from .core.trainer import Trainer # noqa
from .core.display import render_ranked # noqa
from .core.session import Session # noqa
from .core.workspace import Workspace # noqa
