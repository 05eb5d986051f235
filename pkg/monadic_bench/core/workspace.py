#
# The internal directory holding sourced grammars, compiled supervision and
# job status files
#

import logging
import os
import shutil
import tempfile

logger = logging.getLogger(__name__)

DEFAULT_WORKSPACE = "/var/tmp/thebench"
WORKSPACE_VARIABLE = "THEBENCH_HOME"


def atomic_write(path: str, text: str):
    """Writes `text` to `path` through a temporary file in the same
    directory, so readers never see a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8") as tmp_file:
            tmp_file.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


class Workspace:
    """The workspace directory. Internal artifacts (`.src`, `.sup`,
    `.status`, command history) live here; editable files go to the working
    directory instead.
    """

    def __init__(self, path: str = None):
        """Constructor method

        Parameters
        ----------
        path : str [optional, default=None]
            The directory to use. Defaults to the `THEBENCH_HOME` environment
            variable, then to `/var/tmp/thebench`
        """
        if not path:
            path = os.environ.get(WORKSPACE_VARIABLE) or DEFAULT_WORKSPACE
        self._path = os.path.abspath(path)
        os.makedirs(self._path, exist_ok=True)

    def get_path(self) -> str:
        return self._path

    def path_for(self, file_name: str) -> str:
        return os.path.join(self._path, os.path.basename(file_name))

    def src_path(self, grammar_name: str) -> str:
        return self.path_for(grammar_name + ".src")

    def sup_path(self, supervision_name: str) -> str:
        return self.path_for(supervision_name + ".sup")

    def status_path(self, job_name: str) -> str:
        return self.path_for(job_name + ".status")

    def history_path(self) -> str:
        return self.path_for("history")

    def list_files(self) -> list[str]:
        return sorted(os.listdir(self._path))

    def clear(self) -> int:
        """Deletes everything inside the workspace directory (never the
        directory itself, never the target of a symbolic link).

        Returns
        -------
        int
            The number of entries removed
        """
        removed = 0
        with os.scandir(self._path) as entries:
            for entry in entries:
                if entry.is_dir(follow_symlinks=False):
                    shutil.rmtree(entry.path)
                else:
                    os.unlink(entry.path)
                removed += 1
        logger.info("cleared %d entries from %s", removed, self._path)
        return removed

    def __str__(self):
        return self._path
