import os
import tempfile
import unittest
from typing import Any, Dict
from unittest.mock import Mock, patch

from wqed import config as wqed_config
from wqed import exceptions
from wqed.model import ModelParams


class ConfigTests(unittest.TestCase):
    def test_defaults(self) -> None:
        defaults = wqed_config.load_defaults()
        for key in wqed_config.PARAM_KEYS:
            self.assertIn(key, defaults)
        self.assertEqual("csv", defaults["FORMAT"])
        self.assertEqual(ModelParams(g=0.2), wqed_config.model_params(defaults))

    def test_merge(self) -> None:
        config1 = {"x": "y"}
        config2 = {"x": "z"}
        wqed_config.merge(config1, config2)
        self.assertEqual({"x": "y"}, config1)
        wqed_config.merge(config1, config2, force=True)
        self.assertEqual({"x": "z"}, config1)

    @patch.object(wqed_config.fmt, "echo_info")
    def test_save_and_load(self, _: Mock) -> None:
        with tempfile.TemporaryDirectory() as root:
            wqed_config.save_config_file(root, {"G": 0.5, "DELTA": -1.0})
            config = wqed_config.load(root)
        self.assertEqual(0.5, config["G"])
        self.assertEqual(-1.0, config["DELTA"])
        self.assertEqual(1.0, config["J"])

    @patch.object(wqed_config.fmt, "echo_info")
    def test_save_twice(self, _: Mock) -> None:
        with tempfile.TemporaryDirectory() as root:
            wqed_config.save_config_file(root, {"G": 0.5})
            config1 = wqed_config.load_user(root)
            wqed_config.save_config_file(root, config1)
            config2 = wqed_config.load_user(root)
        self.assertEqual(config1, config2)

    def test_extra_config_file(self) -> None:
        with tempfile.TemporaryDirectory() as root:
            path = os.path.join(root, "extra.yml")
            with open(path, "w", encoding="utf-8") as f:
                f.write("G: 1.5\nFORMAT: json\n")
            config = wqed_config.load(root, path)
        self.assertEqual(1.5, config["G"])
        self.assertEqual("json", wqed_config.output_format(config))

    def test_invalid_config_files(self) -> None:
        with tempfile.TemporaryDirectory() as root:
            with self.assertRaises(exceptions.ConfigError):
                wqed_config.load(root, os.path.join(root, "missing.yml"))
            path = os.path.join(root, "list.yml")
            with open(path, "w", encoding="utf-8") as f:
                f.write("- 1\n- 2\n")
            with self.assertRaises(exceptions.ConfigError):
                wqed_config.load(root, path)

    def test_env_overrides(self) -> None:
        with tempfile.TemporaryDirectory() as root:
            with patch.dict(os.environ, {"WQED_G": "0.75", "WQED_THREADS": "2"}):
                config = wqed_config.load(root)
        self.assertEqual(0.75, config["G"])
        self.assertEqual(2, wqed_config.threads(config))

    def test_typed_accessors(self) -> None:
        config: Dict[str, Any] = wqed_config.load_defaults()
        self.assertEqual(
            {"quadrature_tol": 1e-10, "verify_tol": 1e-6},
            wqed_config.tolerances(config),
        )
        self.assertEqual(0, wqed_config.threads(config))
        for key, value in [
            ("G", "strong"),
            ("G", True),
            ("J", 0),
            ("VERIFY_TOL", 0),
            ("THREADS", -1),
            ("FORMAT", "xml"),
        ]:
            broken = dict(config, **{key: value})
            with self.assertRaises(exceptions.ConfigError):
                wqed_config.model_params(broken)
                wqed_config.tolerances(broken)
                wqed_config.threads(broken)
                wqed_config.output_format(broken)

    def test_grid(self) -> None:
        grid = wqed_config.Grid(0.0, 1.0, 5).validate("t")
        self.assertEqual([0.0, 0.25, 0.5, 0.75, 1.0], list(grid.values()))
        log_grid = wqed_config.Grid(1.0, 100.0, 3, log=True).validate("t")
        self.assertAlmostEqual(10.0, log_grid.values()[1])
        self.assertEqual([2.0], list(wqed_config.Grid(2.0, 2.0, 1).values()))
        for grid in [
            wqed_config.Grid(0.0, 1.0, 0),
            wqed_config.Grid(1.0, 0.0, 5),
            wqed_config.Grid(0.0, float("inf"), 5),
            wqed_config.Grid(0.0, 1.0, 5, log=True),
        ]:
            with self.assertRaises(exceptions.ConfigError):
                grid.validate("t")

    def test_run_config(self) -> None:
        run = wqed_config.RunConfig(
            subcommand="decay",
            params=ModelParams(g=0.2),
            grids={"t": wqed_config.Grid(0.0, 10.0, 11)},
            output="-",
            fmt="csv",
            tolerances={"quadrature_tol": 1e-10},
        ).validate()
        self.assertEqual(11, len(run.grid("t")))
        with self.assertRaises(exceptions.ConfigError):
            wqed_config.RunConfig(
                subcommand="decay",
                params=ModelParams(g=0.2),
                grids={},
                output="-",
                fmt="xml",
                tolerances={},
            ).validate()
