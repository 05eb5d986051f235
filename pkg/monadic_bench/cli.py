#
# Command line entry point: the interactive prompt and batch runs
#

import argparse
import logging
import sys

from prompt_toolkit import PromptSession
from prompt_toolkit.history import FileHistory
from prompt_toolkit.shortcuts import confirm

from .core.session import Session, PROMPT
from .core.workspace import Workspace


def get_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monadic-bench",
        description="A workbench for monadic categorial grammars.")
    parser.add_argument("--batch", metavar="FILE", default=None,
                        help="Run the commands in FILE (as @ does) and exit")
    parser.add_argument("--workspace", metavar="DIR", default=None,
                        help="Workspace directory (default $THEBENCH_HOME, "
                             "then /var/tmp/thebench)")
    parser.add_argument("--quiet", action="store_true",
                        help="Do not show the welcome banner")
    return parser


def repl(session: Session, prompt_session: PromptSession,
         prompt: str = PROMPT):
    """Reads commands until `x` or end of input. UP and DOWN recall earlier
    commands from the workspace history file."""
    while True:
        try:
            line = prompt_session.prompt(prompt)
        except KeyboardInterrupt:
            continue
        except EOFError:
            break
        if not session.dispatch(line):
            break


def main(argv=None) -> int:
    args = get_argparser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    workspace = Workspace(args.workspace)
    if args.batch:
        session = Session(workspace, batch=True, quiet=True)
        session.run_batch(args.batch)
        session.close()
        return 0
    session = Session(workspace, quiet=args.quiet,
                      confirm=lambda question: confirm(question))
    repl(session, PromptSession(history=FileHistory(
        workspace.history_path())))
    session.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
