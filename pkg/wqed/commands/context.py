from typing import Any, Dict, Optional, Sequence

from .. import config as wqed_config
from .. import output
from ..config import Grid, RunConfig
from ..model import ModelParams


class Context:
    def __init__(self, root: str, config_file: Optional[str] = None) -> None:
        self.root = root
        self.config_file = config_file

    def load_config(self) -> Dict[str, Any]:
        return wqed_config.load(self.root, self.config_file)

    def run_config(
        self, subcommand: str, options: Dict[str, Any], grids: Dict[str, Grid]
    ) -> "Run":
        """
        Merge command-line options over the stored configuration. Options left to
        None keep the configured value.
        """
        config = self.load_config()
        for key, name in wqed_config.PARAM_KEYS.items():
            if options.get(name) is not None:
                config[key] = options[name]
        overrides = {"QUADRATURE_TOL": "tol", "FORMAT": "fmt", "THREADS": "threads"}
        for key, name in overrides.items():
            if options.get(name) is not None:
                config[key] = options[name]
        run_config = RunConfig(
            subcommand=subcommand,
            params=wqed_config.model_params(config),
            grids=grids,
            output=options.get("output") or output.STDOUT,
            fmt=wqed_config.output_format(config),
            tolerances=wqed_config.tolerances(config),
            threads=wqed_config.threads(config),
        )
        return Run(run_config.validate(), config)


class Run:
    """
    A validated run. Computations use `reduced`, the parameters in units of J;
    energies are scaled back with `energy` before being written.
    """

    def __init__(self, run_config: RunConfig, config: Dict[str, Any]) -> None:
        self.config = run_config
        self.settings = config
        self.params = run_config.params
        self.reduced = run_config.params.in_hopping_units()

    @property
    def tol(self) -> float:
        return self.config.tolerances["quadrature_tol"]

    @property
    def threads(self) -> int:
        return self.config.threads

    def energy(self, reduced_energy: float) -> float:
        return float(reduced_energy * self.params.j_hop)

    def reduced_energies(self, name: str) -> Sequence[float]:
        """
        Grid of energies (or couplings) given in the units of J=params.j_hop.
        """
        return [float(value) / self.params.j_hop for value in self.config.grid(name)]

    def grid(self, name: str) -> Sequence[float]:
        return [float(value) for value in self.config.grid(name)]

    def with_reduced(self, **changes: float) -> ModelParams:
        return self.reduced.replace(**changes)

    def write(self, records: Sequence[Dict[str, Any]], columns: Sequence[str]) -> None:
        output.write_output(
            records,
            self.config.output,
            self.config.fmt,
            output.metadata(
                self.config.subcommand, self.params, self.config.tolerances
            ),
            columns,
        )
