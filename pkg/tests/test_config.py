import math

import pytest

from fwlab.config import RunConfig, parse_config
from fwlab.errors import ConfigError

SAMPLE = """
# full annotated sample (mirrors the README)
[grid]
L = 64
N = 4096

[solver]
dt = 0.0005
T = 0.5
cfl_safety = 0.2
blowup_threshold = 50

[experiment]
name = nonuniform
n_range = 2..4
t_list = 0.01, 0.05, 0.1
seed = 7

[initial]
kind = fn+gn
n = 3

[output]
directory = out
figures = false
"""


class TestParse:
    def test_empty_is_all_defaults(self):
        cfg = parse_config("")
        assert cfg == RunConfig()

    def test_full_sample_round_trip(self):
        cfg = parse_config(SAMPLE)
        assert cfg.grid_L == 64 and cfg.grid_N == 4096
        assert cfg.dt == 0.0005 and cfg.t_final == 0.5
        assert cfg.cfl_safety == 0.2 and cfg.blowup_threshold == 50
        assert cfg.experiment == "nonuniform"
        assert cfg.n_range == (2, 3, 4)
        assert cfg.t_list == (0.01, 0.05, 0.1)
        assert cfg.seed == 7
        assert cfg.initial_kind == "fn+gn" and cfg.initial_n == 3
        assert cfg.output_dir == "out" and cfg.figures is False
        echo = cfg.resolved()
        assert echo["grid.N"] == 4096
        assert echo["experiment.n_range"] == [2, 3, 4]
        assert echo["schema"] == 1
        # parsing the same text again yields an identical config
        assert parse_config(SAMPLE) == cfg

    def test_power_of_two_invariant(self):
        with pytest.raises(ConfigError, match="power of two"):
            parse_config("[grid]\nN = 12345\n")

    def test_all_errors_collected(self):
        bad = "\n".join([
            "[grid]",
            "N = 100",            # not a power of two
            "M = 3",              # unknown key
            "[nosuch]",           # unknown section
            "x = 1",
            "[solver]",
            "dt = -1",            # invariant violation
            "garbage line",       # syntax
        ])
        with pytest.raises(ConfigError) as err:
            parse_config(bad)
        problems = err.value.problems
        assert len(problems) >= 5
        assert any("power of two" in p for p in problems)
        assert any("unknown key" in p for p in problems)
        assert any("unknown section" in p for p in problems)
        assert any("dt" in p for p in problems)
        assert any("key = value" in p for p in problems)
        # line numbers included on the syntax-level problems
        assert any("line 3" in p for p in problems)

    def test_resolvability_names_max_n(self):
        text = "[experiment]\nname = nonuniform\nn_range = 20..20\n"
        with pytest.raises(ConfigError) as err:
            parse_config(text)
        msg = str(err.value)
        assert "largest admissible n is 9" in msg

    def test_inf_besov_indices(self):
        cfg = parse_config("[besov]\ns = 2\np = inf\nr = 1\n")
        assert cfg.besov_p == math.inf and cfg.besov_r == 1.0

    def test_experiment_name_validated(self):
        with pytest.raises(ConfigError, match="experiment.name"):
            parse_config("[experiment]\nname = frobnicate\n")


class TestDefaults:
    def test_grid_defaults_per_experiment(self):
        cfg = parse_config("")
        assert cfg.grid("peakon").n_points == 2**15
        assert cfg.grid("nonuniform").n_points == 2**16
        assert cfg.grid("lemma41").n_points == 2**16
        assert cfg.grid("lipschitz").n_points == 2**13

    def test_explicit_grid_overrides(self):
        cfg = parse_config("[grid]\nN = 1024\nL = 32\n")
        g = cfg.grid("nonuniform")
        assert g.n_points == 1024 and g.half_length == 32
