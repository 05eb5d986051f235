#
# Class holding the state of one workbench session and running its commands
#

import datetime
import logging
import os
import platform
import shutil
import subprocess
import sys
from pprint import pformat
from typing import Callable, Optional

import lark
import numpy as np

from .casegen import generate_case_functions, merge_case_functions, \
    write_arules
from .chart_parser import filter_solutions
from .display import render_summary, render_solutions, render_ranked, \
    report_skeleton, report_inventory, list_by_pos
from .experiments import prepare_runs, spawn_experiments, read_status
from .grammar_io import load_grammar, source_grammar, write_src, read_src, \
    regenerate_text, element_to_dict, parse_element, grammar_name
from .model import Model
from .processor_config import ProcessorConfig
from .surface import tokenize, surface_text
from .workspace import Workspace, atomic_write
from .errors import BenchError, NoGrammarLoaded, UnknownCommand, \
    CommandUsageError

BENCH_VERSION = "1.0.0"
PROMPT = "bench> "
BATCH_PROMPT = "bench>> "
MAX_BATCH_DEPTH = 8
SYMBOLS = "@,#=!$-+></?"

HELP = [
    ("a", ".*", "analyzes . in the current grammar; MWEs go in bars, e.g. "
                "|the bucket|"),
    ("c", "-g? .*", "case functions for the current grammar from elements "
                    "with parts of speech . (-g generalizes features)"),
    ("e", ".*", "not supported (host expression evaluation)"),
    ("g", ".", "grammar text . checked and its source made current (.src "
               "goes to the workspace)"),
    ("i", ".", "intermediate representation of the current grammar saved "
               "(file . goes to the workspace)"),
    ("k", "", "categorial skeleton of the current grammar"),
    ("l", "..?", "processor function . called with args ."),
    ("o", ".*", "shell command . is run at your own risk"),
    ("r", ".*", "ranks . in the current grammar"),
    ("t", "...n?", "trains grammar . on supervision . with the experiments "
                   "in file . (n candidates, default 3)"),
    ("z", ".", "source . from the workspace saved as editable grammar "
               "(.txt; a previous one is kept as .txt.bak)"),
    ("@", ".", "does (nested) commands in file . (1 command/line); forces "
               "output to .log"),
    (",", ".*?", "displays analyses numbered ., all if none given"),
    ("#", ".?", "displays ranked analyses; only [string likeliest-solution] "
                "if . is 'bare'"),
    ("=", ".*", "displays analyses onto basic categories in ."),
    ("!", ".?", "basic categories and features of the current grammar "
                "(optionally saved to .log)"),
    ("$", ".*", "shows the elements with parts of speech in ."),
    ("-", ".", "shows (without adding) the intermediate representation of "
               "element ."),
    ("+", ".", "not supported (processor plugins)"),
    (">", "..?", "logs output to file .log; 'force' overwrites an existing "
                 "log"),
    ("<", "", "logging turned off"),
    ("/", "force?", "clears the workspace directory"),
    ("?", "", "displays help"),
    ("pass", ".*", "does nothing but echo itself"),
    ("x", "", "exit"),
]


def welcome_banner() -> str:
    rule = "-" * 73
    today = datetime.datetime.now().strftime("%B %d, %Y, %H:%M:%S")
    return "\n".join([
        rule,
        "Welcome to monadic_bench",
        "    A workbench for grammars built by two command relations",
        f"        Bench version:   {BENCH_VERSION}",
        f"        Python version:  {platform.python_version()}",
        f"        numpy version:   {np.__version__}",
        f"        lark version:    {lark.__version__}",
        f"        Encoding:        {sys.getdefaultencoding()}",
        f"    Today: {today}",
        "Type x to exit, ? to get some help",
        rule,
        "ready"])


def split_command(line: str) -> tuple[str, str]:
    """The command name of a line and the rest of it. Symbol commands need
    no space after them."""
    line = line.strip()
    if not line:
        return "", ""
    if line[0] in SYMBOLS:
        return line[0], line[1:].strip()
    name, _, rest = line.partition(" ")
    return name.lower(), rest.strip()


class Session:
    """The workbench state: current grammar and model, last analyses,
    processor switches, logging and workspace. :meth:`dispatch` runs one
    command line.
    """

    def __init__(self, workspace: Workspace = None,
                 config: ProcessorConfig = None, batch: bool = False,
                 stream=None, quiet: bool = False,
                 confirm: Optional[Callable[[str], bool]] = None,
                 directory: str = None):
        """Constructor method

        Parameters
        ----------
        workspace : Workspace [optional, default=None]
            The internal directory; the default workspace if None
        config : ProcessorConfig [optional, default=None]
            Processor switches; the defaults if None
        batch : bool [optional, default=False]
            Whether there is no one to answer questions
        stream : file-like [optional, default=None]
            Where command output goes; stdout if None
        quiet : bool [optional, default=False]
            Suppress the welcome banner
        confirm : callable [optional, default=None]
            Asks a yes/no question; without it, `/` needs `force`
        directory : str [optional, default=None]
            Where editable outputs go; the working directory if None
        """
        self._workspace = workspace or Workspace()
        self._config = config or ProcessorConfig()
        self._batch = batch
        self._confirm = confirm
        self._directory = directory or os.getcwd()
        self._grammar = None
        self._model = None
        self._solutions = []
        self._ranked = []
        self._input = ""
        self._jobs = []
        self._depth = 0
        self._log_handler = None
        self._logger = logging.getLogger(f"{__name__}.{id(self)}")
        self._logger.setLevel(logging.INFO)
        self._logger.propagate = False
        console = logging.StreamHandler(stream or sys.stdout)
        console.setFormatter(logging.Formatter("%(message)s"))
        self._logger.addHandler(console)
        self._commands = {
            "a": self._analyze, "c": self._casegen, "e": self._unsupported,
            "g": self._load, "i": self._intermediate, "k": self._skeleton,
            "l": self._processor, "o": self._shell, "r": self._rank,
            "t": self._train, "z": self._retext, "@": self._run_file,
            ",": self._show, "#": self._show_ranked, "=": self._show_onto,
            "!": self._inventory, "$": self._by_pos, "-": self._element,
            "+": self._unsupported, ">": self._log_on, "<": self._log_off,
            "/": self._clear, "?": self._help, "pass": self._pass,
        }
        if not quiet:
            self.output(welcome_banner())

    def get_grammar(self):
        return self._grammar

    def get_model(self) -> Model:
        return self._model

    def get_config(self) -> ProcessorConfig:
        return self._config

    def get_workspace(self) -> Workspace:
        return self._workspace

    def get_solutions(self) -> list:
        return list(self._solutions)

    def get_jobs(self) -> list:
        return list(self._jobs)

    def is_logging(self) -> bool:
        return self._log_handler is not None

    def output(self, text: str):
        self._logger.info(text)

    def close(self):
        """Stops logging and releases the session's handlers."""
        self._stop_logging()
        for handler in list(self._logger.handlers):
            self._logger.removeHandler(handler)
            handler.close()

    def dispatch(self, line: str) -> bool:
        """Runs one command line. Errors are reported, never raised.

        Parameters
        ----------
        line : str
            The command as typed

        Returns
        -------
        bool
            False if the command asks to exit, True otherwise
        """
        name, rest = split_command(line)
        if not name:
            return True
        if name == "x":
            return False
        try:
            command = self._commands.get(name)
            if command is None:
                raise UnknownCommand(f"Unknown command {name!r}; ? lists the "
                                     f"commands")
            command(name, rest)
        except CommandUsageError as error:
            self.output(f"error: {error}\nusage: {self._usage(name)}")
        except (BenchError, ValueError, KeyError, OSError) as error:
            self.output(f"error: {error}")
        return True

    def run_batch(self, path: str):
        """Runs a command file as the `@` command does."""
        self.dispatch(f"@ {path}")

    @staticmethod
    def _usage(name: str) -> str:
        for command, arguments, _ in HELP:
            if command == name:
                return f"{command} {arguments}".strip()
        return name

    def _editable_path(self, file_name: str) -> str:
        return os.path.join(self._directory, file_name)

    def _log_path(self, name: str) -> str:
        path = name if os.path.isabs(name) else self._editable_path(name)
        return os.path.splitext(path)[0] + ".log"

    def _require_grammar(self):
        if self._grammar is None:
            raise NoGrammarLoaded("No grammar is loaded; use g first")

    def _set_grammar(self, grammar):
        self._grammar = grammar
        self._model = Model(grammar, self._config)
        self._solutions, self._ranked, self._input = [], [], ""

    def _add_file_handler(self, path: str, mode: str) -> logging.Handler:
        handler = logging.FileHandler(path, mode=mode, encoding="utf-8")
        handler.setFormatter(logging.Formatter("%(message)s"))
        self._logger.addHandler(handler)
        return handler

    def _remove_handler(self, handler: logging.Handler):
        self._logger.removeHandler(handler)
        handler.close()

    def _stop_logging(self):
        if self._log_handler is not None:
            self._remove_handler(self._log_handler)
            self._log_handler = None

    def _analyze(self, name, rest):
        if not rest:
            raise CommandUsageError("Nothing to analyze")
        self._require_grammar()
        items = tokenize(rest)
        self._solutions = self._model.analyze(items)
        self._ranked, self._input = [], surface_text(items)
        self.output(render_summary(self._solutions))

    def _casegen(self, name, rest):
        args = rest.split()
        generalize = bool(args) and args[0] == "-g"
        if generalize:
            args = args[1:]
        self._require_grammar()
        rules = generate_case_functions(self._grammar, args, generalize)
        path = write_arules(rules, self._grammar.get_name(), self._directory)
        self._set_grammar(merge_case_functions(self._grammar, rules))
        lines = [f"{len(rules)} case function(s) saved to {path} and added "
                 f"to the current grammar"]
        lines += [f"    #{rule.name} {rule.lhs_cat} --> {rule.rhs_cat}"
                  for rule in rules]
        self.output("\n".join(lines))

    def _unsupported(self, name, rest):
        what = ("host expression evaluation" if name == "e"
                else "loading processor code")
        self.output(f"{name}: {what} is not supported; use o for shell "
                    f"commands and l for processor functions")

    def _load(self, name, rest):
        if not rest:
            raise CommandUsageError("Which grammar file?")
        grammar, errors = load_grammar(rest)
        if errors:
            self.output("\n".join([f"{rest}: {error}" for error in errors]
                                  + [f"{len(errors)} error(s); grammar not "
                                     f"loaded"]))
            return
        sourced = source_grammar(grammar)
        path = self._workspace.src_path(sourced.get_name())
        write_src(sourced, path)
        self._set_grammar(sourced)
        self.output(f"grammar {sourced.get_name()}: "
                    f"{len(sourced.get_entries())} entries, "
                    f"{len(sourced.get_arules())} rules; source in {path}")

    def _intermediate(self, name, rest):
        if not rest:
            raise CommandUsageError("Which file?")
        self._require_grammar()
        path = self._workspace.path_for(rest)
        atomic_write(path, pformat([element_to_dict(element)
                                    for element in self._grammar]) + "\n")
        self.output(f"intermediate representation saved to {path}")

    def _skeleton(self, name, rest):
        self.output(report_skeleton(self._grammar))

    def _processor(self, name, rest):
        args = rest.split()
        if not args:
            raise CommandUsageError("Which processor function?")
        self.output(self._config.call(args[0], *args[1:]))

    def _shell(self, name, rest):
        if not rest:
            raise CommandUsageError("Which shell command?")
        done = subprocess.run(rest, shell=True, capture_output=True,
                              text=True)
        text = (done.stdout + done.stderr).rstrip("\n")
        if done.returncode:
            text += f"\nexit status {done.returncode}"
        if text:
            self.output(text.lstrip("\n"))

    def _rank(self, name, rest):
        if not rest:
            raise CommandUsageError("Nothing to rank")
        self._require_grammar()
        items = tokenize(rest)
        self._input = surface_text(items)
        self._ranked = self._model.rank(items)
        self.output(render_ranked(self._ranked, self._input,
                                  lambda_display=self._config.lambda_display))

    def _train(self, name, rest):
        args = rest.split()
        if len(args) not in (3, 4):
            raise CommandUsageError("t takes a grammar, a supervision and an "
                                    "experiment file")
        count = 3
        if len(args) == 4:
            try:
                count = int(args[3])
            except ValueError:
                raise CommandUsageError(f"Candidate count must be an "
                                        f"integer, got {args[3]!r}") from None
        runs = prepare_runs(*args[:3], output_dir=self._directory,
                            workspace_dir=self._workspace.get_path(),
                            num_candidates=count,
                            config=self._config)
        jobs = spawn_experiments(runs)
        self._jobs.extend(jobs)
        lines = [f"{len(jobs)} experiment(s) from {args[2]}"]
        for job in jobs:
            if job.error is not None:
                lines.append(f"    {job.run.job_name}: failed to start "
                             f"({job.error})")
            else:
                status, _ = read_status(job.run)
                lines.append(f"    {job.run.job_name}: pid "
                             f"{job.process.pid}, {status}")
        self.output("\n".join(lines))

    def _retext(self, name, rest):
        if not rest:
            raise CommandUsageError("Which source?")
        stem = grammar_name(rest)
        grammar = read_src(self._workspace.src_path(stem))
        path = self._editable_path(stem + ".txt")
        if os.path.exists(path):
            shutil.copyfile(path, path + ".bak")
            self._logger.warning(f"warning: {path} exists; the previous "
                                 f"text is kept in {path}.bak")
        atomic_write(path, regenerate_text(grammar))
        self.output(f"{stem}: {len(grammar)} elements saved to {path}")

    def _run_file(self, name, rest):
        if not rest:
            raise CommandUsageError("Which command file?")
        if self._depth >= MAX_BATCH_DEPTH:
            raise CommandUsageError(f"Command files nest at most "
                                    f"{MAX_BATCH_DEPTH} deep")
        with open(rest, "r", encoding="utf-8") as command_file:
            lines = command_file.read().splitlines()
        log_path = os.path.splitext(os.path.abspath(rest))[0] + ".log"
        handler = self._add_file_handler(log_path, "w")
        self._depth += 1
        try:
            for line in lines:
                if not line.strip():
                    continue
                self.output(BATCH_PROMPT + line.strip())
                if not self.dispatch(line):
                    break
        finally:
            self._depth -= 1
            self._remove_handler(handler)

    def _show(self, name, rest):
        try:
            numbers = [int(arg) for arg in rest.split()]
        except ValueError:
            raise CommandUsageError("Solution numbers must be integers") \
                from None
        self.output(render_solutions(self._solutions, numbers,
                                     self._config.lambda_display))

    def _show_ranked(self, name, rest):
        bare = rest.strip().lower() == "bare"
        if rest and not bare:
            raise CommandUsageError(f"Unknown option {rest!r}")
        ranked = self._ranked
        if not ranked and self._solutions:
            ranked = self._model.rank_derivations(self._solutions)
        if not ranked:
            self.output("nothing ranked")
            return
        self.output(render_ranked(ranked, self._input, bare,
                                  self._config.lambda_display))

    def _show_onto(self, name, rest):
        categories = rest.split()
        if not categories:
            raise CommandUsageError("Which basic categories?")
        self.output(render_solutions(
            filter_solutions(self._solutions, categories), None,
            self._config.lambda_display))

    def _inventory(self, name, rest):
        text = report_inventory(self._grammar)
        if rest:
            path = self._log_path(rest)
            atomic_write(path, text + "\n")
            text += f"\nsaved to {path}"
        self.output(text)

    def _by_pos(self, name, rest):
        pos_list = rest.split()
        if not pos_list:
            raise CommandUsageError("Which parts of speech?")
        self.output(list_by_pos(self._grammar, pos_list))

    def _element(self, name, rest):
        if not rest:
            raise CommandUsageError("Which element?")
        element = parse_element(rest, 1)
        if element is None:
            raise CommandUsageError("The line holds no element")
        self.output(pformat(element_to_dict(element)))

    def _log_on(self, name, rest):
        args = rest.split()
        if not args or len(args) > 2 or args[1:] not in ([], ["force"]):
            raise CommandUsageError("> takes a file name and optionally "
                                    "'force'")
        path = self._log_path(args[0])
        if os.path.exists(path) and len(args) == 1:
            raise CommandUsageError(f"{path} exists; add 'force' to "
                                    f"overwrite it")
        self._stop_logging()
        self._log_handler = self._add_file_handler(path, "w")
        self.output(f"logging to {path}")

    def _log_off(self, name, rest):
        if self._log_handler is None:
            self.output("logging is off")
            return
        path = self._log_handler.baseFilename
        self._stop_logging()
        self.output(f"logging to {path} stopped")

    def _clear(self, name, rest):
        forced = rest.strip() == "force"
        if not forced:
            if self._batch or self._depth or self._confirm is None:
                raise CommandUsageError("Clearing the workspace needs "
                                        "confirmation; use '/ force'")
            if not self._confirm(f"Delete everything in "
                                 f"{self._workspace}?"):
                self.output("workspace left alone")
                return
        removed = self._workspace.clear()
        self.output(f"{removed} entries removed from {self._workspace}")

    def _help(self, name, rest):
        lines = [" Letter commands are processor commands; symbol commands "
                 "are for display or setup"]
        lines += [f" {command:<4} {arguments:<8}| {text}"
                  for command, arguments, text in HELP]
        lines.append(" Use UP and DOWN keys for command recall")
        self.output("\n".join(lines))

    def _pass(self, name, rest):
        self.output(f"pass {rest}".rstrip())
