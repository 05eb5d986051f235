from .errors import (BenchError, LineError, DuplicateUserKey,
                     VersionMismatch, UnknownPreFunction,
                     ReductionDepthExceeded, NoGrammarLoaded, NoDerivations,
                     UnknownKey, EmptySupervision, EmptyPosList,
                     UnbalancedMweBars, ChartOverflow, SpawnFailure,
                     UnknownCommand, CommandUsageError)
from .category import (FeatureBundle, SlashSpec, Basic, Complex, Singleton,
                       Meta, cat_equal, arity, skeleton)
from .lambda_term import Var, Const, Abs, App
from .elements import Entry, AsymRule, SymRule, Grammar, SourcedGrammar
from .notation import NotationError, parse_category, parse_term
from .workspace import Workspace
from .processor_config import ProcessorConfig, PROCESSOR_FUNCTIONS
from .grammar_io import (parse_element, parse_grammar_text, load_grammar,
                         source_grammar, regenerate_text, write_src,
                         read_src, SupervisionPair, parse_supervision,
                         write_sup, read_sup, ExperimentSpec,
                         parse_experiment_line, parse_experiment_file)
from .unification import Substitution, unify_cat, rename_apart
from .evaluator import beta_reduce, alpha_equiv, canonical_term
from .surface import SurfaceItem, tokenize
from .combinators import combine, nf_admissible
from .chart_parser import ChartItem, Derivation, ChartParser, analyze
from .casegen import generate_case_functions, merge_case_functions, \
    write_arules
from .extrapolation import minimal_polynomial_extrapolation
from .model import Model, RankedSolution, derivation_logscore, beam_filter
from .plotter import Plotter
from .trainer import Trainer, Candidate
from .experiments import TrainRun, prepare_runs, run_training, \
    spawn_experiments
from .display import render_derivation, render_ranked, report_skeleton, \
    report_inventory
from .session import Session
