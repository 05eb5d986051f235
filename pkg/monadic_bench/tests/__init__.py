from monadic_bench.core import category
from monadic_bench.core import lambda_term
from monadic_bench.core import elements
from monadic_bench.core import notation
from monadic_bench.core import grammar_io
from monadic_bench.core import unification
from monadic_bench.core import evaluator
from monadic_bench.core import combinators
from monadic_bench.core import chart_parser
from monadic_bench.core import casegen
from monadic_bench.core import model
from monadic_bench.core import trainer
from monadic_bench.core import experiments
from monadic_bench.core import session
