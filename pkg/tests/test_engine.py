"""
Tests for the event queue, random streams, mission expansion and the simulator
"""

import pytest
import sys
import os
import tempfile
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from engine.events import EventKind, EventQueue
from engine.mission import MissionGenerator, expand_mission
from engine.rng import RngStreams, stream
from engine.simulator import run as simulate
from utils.exceptions import InternalScheduleError
from utils.export import export_trace


def _export_bytes(trace):
    with tempfile.TemporaryDirectory() as tmpdir:
        files = export_trace(trace, Path(tmpdir))
        return {name: path.read_bytes() for name, path in files.items()}


class TestEventQueue:
    """Test event ordering"""

    def test_orders_by_time_then_insertion(self):
        """Equal timestamps come out in insertion order"""
        queue = EventQueue()
        queue.schedule(5.0, EventKind.ACTION_ARRIVAL, capability='late')
        queue.schedule(1.0, EventKind.WINDOW_CLOSE)
        queue.schedule(1.0, EventKind.ORCHESTRATOR_TICK)
        queue.schedule(1.0, EventKind.ACTION_ARRIVAL, capability='early')

        kinds = []
        while len(queue):
            kinds.append(queue.next_event().kind)
        assert kinds == [
            EventKind.WINDOW_CLOSE,
            EventKind.ORCHESTRATOR_TICK,
            EventKind.ACTION_ARRIVAL,
            EventKind.ACTION_ARRIVAL,
        ]
        assert queue.now == 5.0

    def test_scheduling_in_the_past_fails(self):
        """An event before the current time is an internal error"""
        queue = EventQueue()
        queue.schedule(10.0, EventKind.ENERGY_TICK)
        queue.next_event()
        with pytest.raises(InternalScheduleError):
            queue.schedule(9.0, EventKind.ENERGY_TICK)
        with pytest.raises(InternalScheduleError):
            queue.schedule(float('nan'), EventKind.ENERGY_TICK)

    def test_empty_queue(self):
        """An empty queue yields None"""
        queue = EventQueue()
        assert queue.next_event() is None
        assert queue.peek_time() is None


class TestRandomStreams:
    """Test seeded per-subsystem streams"""

    def test_same_seed_same_draws(self):
        """A stream is reproducible from (seed, label)"""
        assert stream(7, 'mission').random(5).tolist() == stream(7, 'mission').random(5).tolist()

    def test_labels_are_independent(self):
        """Different labels give different draws"""
        streams = RngStreams(7)
        assert streams.mission.random(5).tolist() != streams.adversary.random(5).tolist()

    def test_negative_seed_rejected(self):
        """Seeds are non-negative integers"""
        with pytest.raises(ValueError):
            stream(-1, 'mission')


class TestMission:
    """Test mission expansion"""

    def test_integer_rate_gives_exact_counts(self):
        """rate=6 yields six actions in every window"""
        gen = MissionGenerator('isr', rate=6, client_pool=4, request_count=10, work_per_request=0.8)
        actions = expand_mission([gen], [], 600.0, 60.0, stream(3, 'mission'))
        per_window = [0] * 10
        for action in actions:
            per_window[int(action.time // 60)] += 1
        assert per_window == [6] * 10
        assert [a.time for a in actions] == sorted(a.time for a in actions)
        assert len({a.action_id for a in actions}) == len(actions)

    def test_fractional_rate(self):
        """rate=2.5 yields two or three actions per window"""
        gen = MissionGenerator('isr', rate=2.5, client_pool=4, request_count=1, work_per_request=1.0)
        actions = expand_mission([gen], [], 1200.0, 60.0, stream(3, 'mission'))
        per_window = [0] * 20
        for action in actions:
            per_window[int(action.time // 60)] += 1
        assert set(per_window) <= {2, 3}

    def test_generator_start_and_end(self):
        """No actions outside [start, end)"""
        gen = MissionGenerator(
            'isr', rate=3, client_pool=2, request_count=1, work_per_request=1.0,
            start=120.0, end=300.0,
        )
        actions = expand_mission([gen], [], 600.0, 60.0, stream(1, 'mission'))
        assert len(actions) == 9
        assert all(120.0 <= a.time < 300.0 for a in actions)


class TestSimulator:
    """Test the engine loop on the toy scenario"""

    def test_window_series(self, make_toy):
        """Steady demand gives steady CRoWN counters"""
        trace = simulate(make_toy())
        windows = trace.windows_for('isr')
        assert len(windows) == 10
        assert [w.window_index for w in windows] == list(range(10))
        assert all(w.nA == 6 for w in windows)
        assert all(w.R == 60 for w in windows)
        assert all(w.NF == 2 and w.tD == 2 for w in windows)
        assert all(w.nT == 0 for w in windows)
        assert all(w.W == pytest.approx(48.0) for w in windows)
        assert all(1 <= w.C <= 8 for w in windows)
        # window 0 also pays for the two bootstrap instantiations
        assert windows[0].nC > windows[1].nC

    def test_request_totals_match_event_log(self, make_toy):
        """Window R sums to the requests of every ActionArrival"""
        trace = simulate(make_toy())
        logged = sum(e.get('requests') for e in trace.events_of(EventKind.ACTION_ARRIVAL))
        assert sum(w.R for w in trace.windows) == logged == 600

    def test_sequence_numbers(self, make_toy):
        """Logged sequence numbers are strictly increasing and times never go back"""
        trace = simulate(make_toy())
        assert [e.sequence for e in trace.events] == list(range(len(trace.events)))
        times = [e.time for e in trace.events]
        assert times == sorted(times)

    def test_category_order_at_boundaries(self, make_toy):
        """At a window boundary: energy ticks, then window close, then orchestrator"""
        trace = simulate(make_toy())
        at_60 = [e.kind for e in trace.events if e.time == 60.0]
        assert at_60 == [
            EventKind.ENERGY_TICK,
            EventKind.ENERGY_TICK,
            EventKind.WINDOW_CLOSE,
            EventKind.ORCHESTRATOR_TICK,
        ]

    def test_attack_start_after_window_close(self, make_toy):
        """An attack starting on a boundary takes effect in the new window"""
        spec = make_toy(attacks=[{
            'kind': 'WEdos', 'target': {'capability': 'isr'},
            't_start': 300, 't_end': 600, 'intensity': {'multiplier': 2.0},
        }])
        trace = simulate(spec)
        at_300 = [e.kind for e in trace.events if e.time == 300.0]
        assert at_300.index(EventKind.WINDOW_CLOSE) < at_300.index(EventKind.ATTACK_START)
        windows = trace.windows_for('isr')
        assert windows[4].W == pytest.approx(48.0)
        assert windows[5].W == pytest.approx(96.0)

    def test_no_orchestrator_tick_after_last_window(self, make_toy):
        """Orchestrator ticks run for every window but the last"""
        trace = simulate(make_toy())
        ticks = trace.events_of(EventKind.ORCHESTRATOR_TICK)
        assert [e.get('window') for e in ticks] == list(range(9))

    def test_quiescent_run(self, make_toy):
        """Without demand there are no clients, requests or work"""
        # u_lo=0 keeps the idle instances from being scaled in
        trace = simulate(make_toy(mission={'generators': []}, policy={'u_lo': 0.0}))
        for window in trace.windows:
            assert (window.C, window.R, window.W, window.nA) == (0, 0, 0.0, 0)
            assert window.NF == 2
            assert window.nC > 0

    def test_fixed_actions(self, make_toy):
        """Three scripted actions land in the first three windows"""
        actions = [
            {'time': t, 'capability': 'isr', 'client_id': 'c1', 'request_count': 2,
             'work_per_request': 1.0, 'origin': [1, 0]}
            for t in (10, 70, 130)
        ]
        trace = simulate(make_toy(mission={'generators': [], 'actions': actions}))
        assert [w.nA for w in trace.windows] == [1, 1, 1] + [0] * 7

    def test_determinism(self, make_toy):
        """Equal scenario and seed give byte-identical CSVs"""
        spec = make_toy()
        assert _export_bytes(simulate(spec)) == _export_bytes(simulate(spec))

    def test_seed_changes_trace(self, make_toy):
        """A different seed draws a different mission"""
        first = _export_bytes(simulate(make_toy()))
        second = _export_bytes(simulate(make_toy(seed=2)))
        assert first['events'] != second['events']

    def test_attack_does_not_shift_mission(self, make_toy):
        """Adding an attack leaves the mission's arrival times alone"""
        clean = simulate(make_toy())
        attacked = simulate(make_toy(attacks=[{
            'kind': 'WEdos', 'target': {'capability': 'isr'},
            't_start': 120, 't_end': 600, 'intensity': {'multiplier': 3.0},
        }]))

        def arrivals(trace):
            return [(e.time, e.get('action')) for e in trace.events_of(EventKind.ACTION_ARRIVAL)]

        assert arrivals(clean) == arrivals(attacked)

    def test_undeploy_kills_instances(self, make_toy):
        """Undeploy kills every instance and later requests are dropped"""
        spec = make_toy(lifecycle=[{'time': 300, 'capability': 'isr', 'event': 'Undeploy'}])
        trace = simulate(spec)

        kills = trace.events_of(EventKind.INSTANCE_KILL)
        assert len(kills) == 2
        assert all(e.time == 300.0 and e.get('reason') == 'Undeploy' for e in kills)

        windows = trace.windows_for('isr')
        assert windows[4].NF == 2
        assert all(w.NF == 0 and w.tD == 0 for w in windows[5:])
        assert trace.final_state['capabilities']['isr']['lifecycle'] == 'Undeployed'
        assert trace.final_state['dropped']['isr'] == 300
        late = [e for e in trace.events_of(EventKind.ACTION_ARRIVAL) if e.time > 300]
        assert late and all(e.get('outcome') == 'dropped' for e in late)

    def test_position_update_fails_over(self, make_toy, toy_data):
        """A node moving out of range hands its clients to the other node"""
        nodes = toy_data['nodes']
        nodes[1]['waypoints'] = [[120, 50, 0]]
        trace = simulate(make_toy(nodes=nodes))

        moves = trace.events_of(EventKind.POSITION_UPDATE)
        assert len(moves) == 1 and moves[0].get('x') == 50.0
        assert trace.final_state['nodes']['n2']['position'] == [50.0, 0.0]
        late = [e for e in trace.events_of(EventKind.ACTION_ARRIVAL) if e.time > 120]
        assert all(e.node == 'n1' for e in late)
        assert trace.final_state['uncovered']['isr'] == 0

    def test_instance_ids(self, make_toy):
        """Instance ids follow <capability>-NNN in spawn order"""
        trace = simulate(make_toy())
        assert [entry.instance_id for entry in trace.lineage] == ['isr-001', 'isr-002']
        assert [entry.node for entry in trace.lineage] == ['n1', 'n2']
        assert all(entry.spawn_reason == 'Bootstrap' for entry in trace.lineage)

    def test_window_of(self, make_toy):
        """Times map to half-open windows; the horizon maps to the last one"""
        trace = simulate(make_toy())
        assert trace.window_of(0.0) == 0
        assert trace.window_of(59.999) == 0
        assert trace.window_of(60.0) == 1
        assert trace.window_of(600.0) == 9
