#
# Switches and limits of the processor, and the named functions that set them
#

import copy

from .errors import UnknownPreFunction

PROCESSOR_FUNCTIONS = ("beam-on", "beam-off", "beam-value", "lambda-on",
                       "lambda-off", "monad-all", "monad-montague",
                       "nfparse-on", "nfparse-off", "onoff", "oov-on",
                       "oov-off", "show-config")

MONAD_MODES = ("all", "montague")


class ProcessorConfig:
    """Holds the on/off switches that control analysis, ranking and training
    together with the numeric limits of the processor.
    """

    def __init__(self, nfparse: bool = True, beam: bool = False,
                 beam_exponent: float = 0.5, oov: bool = False,
                 lambda_display: bool = True, monad: str = "all",
                 max_items: int = 200000, max_reduction_steps: int = 10000,
                 xp_epochs: int = 20, xp_window: int = 5, eta: bool = False):
        """Constructor method

        Parameters
        ----------
        nfparse : bool [optional, default=True]
            Whether derivations are restricted to normal form
        beam : bool [optional, default=False]
            Whether training updates only the keys that moved most
        beam_exponent : float [optional, default=0.5]
            Exponent of the beam threshold
        oov : bool [optional, default=False]
            Whether unknown items get the two dummy entries
        lambda_display : bool [optional, default=True]
            Whether derivation displays show the lf of every step
        monad : str [optional, default="all"]
            "all" for every combination rule, "montague" for application
            only
        max_items : int [optional, default=200000]
            Ceiling on the number of chart items of one analysis
        max_reduction_steps : int [optional, default=10000]
            Step budget of one beta reduction
        xp_epochs : int [optional, default=20]
            Length of an extrapolated (`xp`) training run
        xp_window : int [optional, default=5]
            Number of trailing iterates the extrapolation uses
        eta : bool [optional, default=False]
            Reserved; gold comparison is on beta-normal forms only
        """
        if beam_exponent <= 0:
            raise ValueError("beam_exponent must be positive")
        if monad not in MONAD_MODES:
            raise ValueError(f"monad must be one of {', '.join(MONAD_MODES)}")
        if max_items < 1:
            raise ValueError("max_items must be at least 1")
        if max_reduction_steps < 1:
            raise ValueError("max_reduction_steps must be at least 1")
        if xp_window < 2:
            raise ValueError("xp_window must be at least 2")
        if xp_epochs < xp_window:
            raise ValueError("xp_epochs cannot be less than xp_window")
        if eta:
            raise ValueError("eta conversion is not supported")
        self.nfparse = nfparse
        self.beam = beam
        self.beam_exponent = float(beam_exponent)
        self.oov = oov
        self.lambda_display = lambda_display
        self.monad = monad
        self.max_items = int(max_items)
        self.max_reduction_steps = int(max_reduction_steps)
        self.xp_epochs = int(xp_epochs)
        self.xp_window = int(xp_window)
        self.eta = eta

    @property
    def montague(self) -> bool:
        return self.monad == "montague"

    def copy(self) -> "ProcessorConfig":
        return copy.copy(self)

    def apply_resource_hints(self, mem_mb: int, heap_mb: int):
        """Turns the advisory memory figures of an experiment line into a
        chart ceiling. A heap of 0 leaves the ceiling alone."""
        if heap_mb > 0:
            self.max_items = max(1000, heap_mb * 2000)

    def switches(self) -> dict:
        return {"nfparse": self.nfparse, "beam": self.beam,
                "oov": self.oov, "lambda": self.lambda_display,
                "monad-montague": self.montague}

    def worker_switches(self) -> list[str]:
        """The processor functions that bring a default configuration to the
        analysis and training switches of this one."""
        return ["nfparse-on" if self.nfparse else "nfparse-off",
                "beam-on" if self.beam else "beam-off",
                "oov-on" if self.oov else "oov-off",
                f"monad-{self.monad}"]

    def call(self, name: str, *args: str) -> str:
        """Runs the processor function `name` and returns its report.

        Parameters
        ----------
        name : str
            One of :data:`PROCESSOR_FUNCTIONS`
        *args : str
            Arguments as typed; `beam-value` takes an optional new exponent

        Returns
        -------
        str
            What the function reports

        Raises
        ------
        UnknownPreFunction
            If `name` is not a processor function
        """
        if name not in PROCESSOR_FUNCTIONS:
            raise UnknownPreFunction(f"Unknown processor function {name!r}")
        if name == "beam-value":
            if args:
                try:
                    exponent = float(args[0])
                except ValueError:
                    raise ValueError(f"Beam exponent must be a number, got "
                                     f"{args[0]!r}") from None
                if exponent <= 0:
                    raise ValueError("beam exponent must be positive")
                self.beam_exponent = exponent
            return (f"beam: {'on' if self.beam else 'off'}, exponent: "
                    f"{self.beam_exponent}")
        if name == "onoff":
            return "\n".join(f"{switch}: {'on' if value else 'off'}"
                             for switch, value in self.switches().items())
        if name == "show-config":
            return str(self)
        switch, _, state = name.rpartition("-")
        if switch == "monad":
            self.monad = "montague" if state == "montague" else "all"
        elif switch == "lambda":
            self.lambda_display = state == "on"
        else:
            setattr(self, switch, state == "on")
        return f"{name}: done"

    def __str__(self):
        return "\n".join([
            f"nfparse: {'on' if self.nfparse else 'off'}",
            f"beam: {'on' if self.beam else 'off'}",
            f"beam exponent: {self.beam_exponent}",
            f"oov: {'on' if self.oov else 'off'}",
            f"lambda display: {'on' if self.lambda_display else 'off'}",
            f"monad: {self.monad}",
            f"max chart items: {self.max_items}",
            f"max reduction steps: {self.max_reduction_steps}",
            f"xp epochs: {self.xp_epochs}, window: {self.xp_window}"])
