"""
Shared fixtures: a small two-node scenario and cached corpus runs
"""

import copy
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from runners.pipeline import ScenarioRunner
from scenarios import CORPUS, corpus_file
from utils.config import load_scenario, scenario_from_dict

TOY_SCENARIO = {
    'name': 'toy',
    'duration': 600,
    'window_length': 60,
    'energy_tick': 10,
    'seed': 1,
    'nodes': [
        {
            'id': 'n1',
            'position': [0, 0],
            'radio_range': 30,
            'battery': {'capacity': 100000},
        },
        {
            'id': 'n2',
            'position': [4, 0],
            'radio_range': 30,
            'battery': {'capacity': 100000},
        },
    ],
    'capabilities': [
        {'id': 'isr', 'bootstrap_instances': 2, 'bootstrap_nodes': ['n1', 'n2']}
    ],
    'mission': {
        'generators': [
            {
                'capability': 'isr',
                'rate': 6,
                'client_pool': 8,
                'request_count': 10,
                'work_per_request': 0.8,
                'area': [2, 0, 2],
            }
        ]
    },
    'power': {'p_idle': 0.01, 'beta': 0.001},
    'detector': {'min_windows': 5},
}


@pytest.fixture
def toy_data():
    """Fresh copy of the toy scenario document"""
    return copy.deepcopy(TOY_SCENARIO)


@pytest.fixture
def make_toy():
    """Factory building a validated toy ScenarioSpec with top-level overrides"""

    def _make(**overrides):
        data = copy.deepcopy(TOY_SCENARIO)
        data.update(overrides)
        return scenario_from_dict(data)

    return _make


@pytest.fixture
def corpus_spec():
    """Factory loading a bundled scenario by name"""

    def _load(name):
        return load_scenario(corpus_file(name))

    return _load


@pytest.fixture(scope='session')
def corpus_results(tmp_path_factory):
    """Every bundled scenario run once through the pipeline"""
    root = tmp_path_factory.mktemp('corpus')
    runner = ScenarioRunner(root)
    return {
        name: runner.run(load_scenario(corpus_file(name)), root / name)
        for name in CORPUS
    }
