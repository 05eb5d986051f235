#
# Training runs as detached worker processes, one per experiment line
#

import argparse
import logging
import os
import subprocess
import sys
from dataclasses import dataclass, field
from typing import Optional

from .grammar_io import (parse_experiment_line, experiment_lines,
                         load_grammar, source_grammar, parse_supervision,
                         write_sup, grammar_name)
from .trainer import Trainer
from .processor_config import ProcessorConfig
from .workspace import Workspace, atomic_write
from .errors import SpawnFailure

logger = logging.getLogger(__name__)

RUNNING = "running"
FINISHED = "finished"
FAILED = "failed"

WORKER_SWITCHES = ("nfparse-on", "nfparse-off", "beam-on", "beam-off",
                   "oov-on", "oov-off", "monad-all", "monad-montague")


@dataclass(frozen=True)
class TrainRun:
    """Everything one worker needs: the three input files, which line of
    the experiment file it runs and where its outputs go. `config` holds the
    switches of the launching session; `None` means the defaults."""
    grammar_path: str
    supervision_path: str
    experiment_line: str
    line_no: int
    output_dir: str
    workspace_dir: str
    num_candidates: int = 3
    plot: bool = False
    config: Optional[ProcessorConfig] = field(default=None, compare=False)

    def __post_init__(self):
        if self.num_candidates < 1:
            raise ValueError("num_candidates must be at least 1")

    @property
    def job_name(self) -> str:
        return (f"{grammar_name(self.grammar_path)}-"
                f"{grammar_name(self.supervision_path)}-{self.line_no}")

    def command(self) -> list[str]:
        cmd = [sys.executable, "-m", "monadic_bench.core.experiments",
               "--grammar", os.path.abspath(self.grammar_path),
               "--supervision", os.path.abspath(self.supervision_path),
               "--line", self.experiment_line,
               "--line-no", str(self.line_no),
               "--output", os.path.abspath(self.output_dir),
               "--workspace", os.path.abspath(self.workspace_dir),
               "--candidates", str(self.num_candidates)]
        config = self.config or ProcessorConfig()
        for name in config.worker_switches():
            cmd.extend(["--switch", name])
        cmd.extend(["--beam-exponent", repr(config.beam_exponent),
                    "--max-items", str(config.max_items),
                    "--max-steps", str(config.max_reduction_steps),
                    "--xp-epochs", str(config.xp_epochs),
                    "--xp-window", str(config.xp_window)])
        if self.plot:
            cmd.append("--plot")
        return cmd


@dataclass
class Job:
    run: TrainRun
    process: Optional[subprocess.Popen] = None
    error: Optional[SpawnFailure] = None


def write_status(run: TrainRun, status: str, message: str = ""):
    path = Workspace(run.workspace_dir).status_path(run.job_name)
    atomic_write(path, status + ("\n" + message if message else "") + "\n")


def read_status(run: TrainRun) -> tuple[str, str]:
    """The status word of a job and its message, `("unknown", "")` if the
    job has written nothing yet."""
    path = Workspace(run.workspace_dir).status_path(run.job_name)
    if not os.path.exists(path):
        return "unknown", ""
    with open(path, "r", encoding="utf-8") as status_file:
        lines = status_file.read().splitlines()
    return (lines[0] if lines else "unknown"), "\n".join(lines[1:])


def prepare_runs(grammar_path: str, supervision_path: str,
                 experiment_path: str, output_dir: str = ".",
                 workspace_dir: str = None, num_candidates: int = 3,
                 plot: bool = False,
                 config: ProcessorConfig = None) -> list[TrainRun]:
    """One run per experiment line. Lines are not validated here; each
    worker checks its own. Every run gets its own copy of `config`."""
    workspace_dir = Workspace(workspace_dir).get_path()
    with open(experiment_path, "r", encoding="utf-8") as experiment_file:
        lines = experiment_lines(experiment_file.read())
    return [TrainRun(grammar_path, supervision_path, line, line_no,
                     output_dir, workspace_dir, num_candidates, plot,
                     config.copy() if config is not None else None)
            for line_no, line in lines]


def run_training(run: TrainRun) -> list[str]:
    """The body of one worker: parses its experiment line and inputs,
    trains, writes candidates and log, and keeps the status file current.

    Returns
    -------
    list[str]
        The paths written

    Raises
    ------
    Exception
        Whatever stopped the run; the status file then says `failed`
    """
    write_status(run, RUNNING)
    try:
        spec = parse_experiment_line(run.experiment_line, run.line_no)
        grammar, errors = load_grammar(run.grammar_path)
        if errors:
            raise errors[0]
        sourced = source_grammar(grammar)
        with open(run.supervision_path, "r",
                  encoding="utf-8") as supervision_file:
            pairs, errors = parse_supervision(supervision_file.read())
        if errors:
            raise errors[0]
        write_sup(pairs, Workspace(run.workspace_dir).sup_path(
            grammar_name(run.supervision_path)))
        trainer = Trainer(sourced, pairs, spec, config=run.config,
                          num_candidates=run.num_candidates)
        candidates = trainer.run()
        paths = trainer.write_outputs(candidates, run.output_dir, run.plot)
    except Exception as error:
        write_status(run, FAILED, f"{type(error).__name__}: {error}")
        raise
    write_status(run, FINISHED, "\n".join(paths))
    return paths


def spawn_experiments(runs: list[TrainRun]) -> list[Job]:
    """Starts one detached worker process per run. The workers share
    nothing and outlive the launching session. A run that cannot be
    started gets a `SpawnFailure` and a `failed` status; the others go on.

    Returns
    -------
    list[Job]
        One job per run, in order
    """
    jobs = []
    for run in runs:
        try:
            os.makedirs(run.output_dir, exist_ok=True)
            process = subprocess.Popen(run.command(),
                                       stdin=subprocess.DEVNULL,
                                       stdout=subprocess.DEVNULL,
                                       stderr=subprocess.DEVNULL,
                                       start_new_session=True)
        except OSError as error:
            failure = SpawnFailure(f"{run.job_name}: {error}")
            logger.warning("could not start %s", failure)
            write_status(run, FAILED, str(failure))
            jobs.append(Job(run, error=failure))
            continue
        logger.info("started %s (pid %d)", run.job_name, process.pid)
        jobs.append(Job(run, process=process))
    return jobs


def get_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Run one training experiment of monadic_bench.")
    parser.add_argument("--grammar", required=True,
                        help="Grammar text file")
    parser.add_argument("--supervision", required=True,
                        help="Supervision text file")
    parser.add_argument("--line", required=True,
                        help="The experiment line to run")
    parser.add_argument("--line-no", type=int, default=1,
                        help="Its line number in the experiment file")
    parser.add_argument("--output", default=".",
                        help="Directory for candidates and log")
    parser.add_argument("--workspace", default=None,
                        help="Workspace directory for status files")
    parser.add_argument("--candidates", type=int, default=3,
                        help="Number of candidate grammars")
    parser.add_argument("--plot", action="store_true",
                        help="Also save a weight trace plot")
    defaults = ProcessorConfig()
    parser.add_argument("--switch", action="append", default=[],
                        choices=WORKER_SWITCHES,
                        help="Processor function to run before training; "
                             "may be repeated")
    parser.add_argument("--beam-exponent", type=float,
                        default=defaults.beam_exponent,
                        help="Exponent of the beam threshold")
    parser.add_argument("--max-items", type=int, default=defaults.max_items,
                        help="Chart item ceiling of one analysis")
    parser.add_argument("--max-steps", type=int,
                        default=defaults.max_reduction_steps,
                        help="Step budget of one beta reduction")
    parser.add_argument("--xp-epochs", type=int, default=defaults.xp_epochs,
                        help="Length of an extrapolated run")
    parser.add_argument("--xp-window", type=int, default=defaults.xp_window,
                        help="Iterates used by the extrapolation")
    return parser


def main(argv=None) -> int:
    args = get_argparser().parse_args(argv)
    logging.basicConfig(level=logging.INFO,
                        format="%(asctime)s %(levelname)s %(message)s")
    config = ProcessorConfig(beam_exponent=args.beam_exponent,
                             max_items=args.max_items,
                             max_reduction_steps=args.max_steps,
                             xp_epochs=args.xp_epochs,
                             xp_window=args.xp_window)
    for name in args.switch:
        config.call(name)
    run = TrainRun(args.grammar, args.supervision, args.line, args.line_no,
                   args.output, Workspace(args.workspace).get_path(),
                   args.candidates, args.plot, config)
    try:
        run_training(run)
    except Exception:
        logger.exception("%s failed", run.job_name)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
