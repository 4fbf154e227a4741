import pytest

from config import Command, OutputFormat, RunConfig, TheoremId, Tolerances, load_yaml
from errors import ConfigError


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.command is Command.VERIFY
        assert config.theorem is TheoremId.T1
        assert (config.seed, config.count, config.threads) == (7, 100, 4)
        assert config.output_format is OutputFormat.CSV
        assert config.tolerances == Tolerances()
        assert not config.debug

    def test_from_dict(self):
        config = RunConfig.from_dict({
            'command': 'sweep', 'theorem': 't3', 'format': 'md', 'n': 5, 'eps': 0.01,
            'tolerances': {'max_iterations': 50},
        })
        assert config.command is Command.SWEEP
        assert config.theorem is TheoremId.T3
        assert config.output_format is OutputFormat.MARKDOWN
        assert (config.n, config.eps) == (5, 0.01)
        assert config.tolerances.max_iterations == 50
        assert config.tolerances.convexity == 1e-12

    def test_none_values_keep_defaults(self):
        assert RunConfig.from_dict({'seed': None, 'n': None}).seed == 7

    def test_dict_round_trip(self):
        config = RunConfig.from_dict({'command': 'export', 'format': 'svg', 'overlay': True, 'seed': 3})
        again = RunConfig.from_dict(config.to_dict())
        assert again.to_dict() == config.to_dict()

    @pytest.mark.parametrize("data", [
        {'seed': 0},
        {'count': -1},
        {'threads': 0},
        {'n': 2},
        {'eps': 0.0},
        {'tol': -1e-9},
        {'log_level': 'LOUD'},
        {'tolerances': {'convexity': 0.0}},
        {'tolerances': {'precision': 1e-3}},
        {'command': 'plot'},
        {'theorem': 't4'},
        {'format': 'pdf'},
    ])
    def test_invalid(self, data):
        with pytest.raises(ConfigError):
            RunConfig.from_dict(data)


class TestEnvironment:
    def test_threads_cap(self, monkeypatch):
        monkeypatch.setenv('VOLPROD_THREADS', '2')
        assert RunConfig(threads=8).threads == 2
        assert RunConfig(threads=1).threads == 1

    def test_bad_threads(self, monkeypatch):
        monkeypatch.setenv('VOLPROD_THREADS', 'many')
        with pytest.raises(ConfigError):
            RunConfig()

    def test_log_level(self, monkeypatch):
        monkeypatch.setenv('VOLPROD_LOG_LEVEL', 'debug')
        config = RunConfig()
        assert config.log_level == 'DEBUG'
        assert config.debug


class TestLoadYaml:
    def test_mapping(self, tmp_path):
        path = tmp_path / "volprod.yml"
        path.write_text("seed: 11\ntolerances:\n  max_iterations: 20\n")
        config = RunConfig.from_dict(load_yaml(str(path)))
        assert config.seed == 11
        assert config.tolerances.max_iterations == 20

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yml"
        path.write_text("")
        assert load_yaml(str(path)) == {}

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "list.yml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            load_yaml(str(path))
