"""
Tests for attack specifications and injectors
"""

import math
import pytest
import sys
import os
import tempfile
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from adversary.attacks import AttackKind, AttackSpec
from adversary.injectors import (
    activate_supply_chain_taint,
    apply_decoy_field,
    apply_denial_of_sleep,
    apply_flash_crowd,
    apply_iedos,
    apply_wedos,
    decoy_positions,
)
from energy.battery import PowerModel
from engine.events import EventKind
from engine.rng import stream
from engine.simulator import run as simulate
from model.entities import MarketplaceImage, MissionAction
from orchestrator.marketplace import Marketplace
from orchestrator.telemetry import TelemetryReport
from utils.exceptions import NoSecondaryCluster
from utils.export import export_trace


def _action(action_id='a1', client='c1', requests=10, work=0.8):
    return MissionAction(action_id, 5.0, 'isr', client, requests, work, origin=(1.0, 0.0))


class TestAttackSpec:
    """Test attack declaration"""

    def test_defaults_merged(self):
        """Missing intensity keys take the kind's defaults"""
        attack = AttackSpec(AttackKind.WEDOS, 0.0, 60.0, target_capability='isr')
        assert attack.param('multiplier') == 2.0
        assert attack.tdos_capable

    def test_unknown_intensity_key(self):
        with pytest.raises(ValueError):
            AttackSpec('WEdos', 0.0, 60.0, target_capability='isr', intensity={'power': 2})

    def test_empty_interval(self):
        with pytest.raises(ValueError):
            AttackSpec('WEdos', 60.0, 60.0, target_capability='isr')

    def test_flash_crowd_needs_capability(self):
        with pytest.raises(ValueError):
            AttackSpec('FlashCrowd', 0.0, 60.0, target_nodes=('n1',))

    def test_intensity_floor(self):
        with pytest.raises(ValueError):
            AttackSpec('WEdos', 0.0, 60.0, target_capability='isr', intensity={'multiplier': 0.5})

    @pytest.mark.parametrize('kind,intensity', [
        ('WEdos', {'multiplier': 1.0}),
        ('IEdos', {'inflation': 0.0}),
        ('DenialOfSleep', {'factor': 1.0}),
        ('FlashCrowd', {'surge': 1.0}),
        ('DecoyField', {'decoys': 0}),
    ])
    def test_neutral_intensity_is_inert(self, kind, intensity):
        attack = AttackSpec(kind, 0.0, 60.0, target_capability='isr', intensity=intensity)
        assert attack.is_inert

    def test_supply_chain_never_inert(self):
        attack = AttackSpec('SupplyChainTaint', 0.0, 60.0, target_capability='isr')
        assert not attack.is_inert

    def test_flash_crowd_is_not_tdos(self):
        attack = AttackSpec('FlashCrowd', 0.0, 60.0, target_capability='isr')
        assert not attack.tdos_capable

    def test_interval_helpers(self):
        """Intervals are half-open"""
        attack = AttackSpec('WEdos', 100.0, 200.0, target_capability='isr')
        assert attack.active_at(100.0)
        assert not attack.active_at(200.0)
        assert attack.overlap(60.0, 120.0) == 20.0
        assert attack.overlap(200.0, 260.0) == 0.0

    def test_targets(self):
        """Node targets match through the hosting nodes"""
        by_cap = AttackSpec('WEdos', 0.0, 60.0, target_capability='isr')
        by_node = AttackSpec('WEdos', 0.0, 60.0, target_nodes=('n2',))
        assert by_cap.targets('isr') and not by_cap.targets('c2')
        assert by_node.targets('isr', ['n1', 'n2'])
        assert not by_node.targets('isr', ['n1'])

    def test_dict_round_trip(self):
        attack = AttackSpec('DecoyField', 0.0, 60.0, target_capability='isr',
                            intensity={'decoys': 4, 'area': (0.0, 0.0, 20.0)})
        data = attack.to_dict()
        assert data['intensity']['area'] == [0.0, 0.0, 20.0]
        assert AttackSpec.from_dict(data).to_dict() == data


class TestInjectors:
    """Test the pure attack transformations"""

    def test_wedos_scales_work_only(self):
        """Clients and request counts are unchanged"""
        [attacked] = apply_wedos([_action()], 3.0)
        assert attacked.work_per_request == pytest.approx(2.4)
        assert attacked.request_count == 10
        assert attacked.client_id == 'c1'
        assert attacked.total_work == pytest.approx(24.0)

    def test_iedos_inflates_and_caps(self):
        """Reported CPU is inflated additively and capped at 0.99"""
        reports = [
            TelemetryReport('isr-001', 'isr', 3, 0.05, 10),
            TelemetryReport('isr-002', 'isr', 3, 0.5, 10),
        ]
        low, high = apply_iedos(reports, 0.85)
        assert low.reported_cpu == pytest.approx(0.90)
        assert high.reported_cpu == 0.99
        assert low.poisoned and high.poisoned
        assert low.reported_requests == 10

    def test_iedos_zero_is_identity(self):
        reports = [TelemetryReport('isr-001', 'isr', 0, 0.5, 10)]
        assert apply_iedos(reports, 0.0) == reports

    def test_denial_of_sleep(self):
        """Idle power is scaled by the factor"""
        power = apply_denial_of_sleep(PowerModel(p_idle=0.1), 3.0)
        assert power.p_idle == pytest.approx(0.3)

    def test_flash_crowd_whole_surge(self):
        """surge=5 gives five actions per original, each from its own client"""
        surged = apply_flash_crowd([_action('a1'), _action('a2', 'c2')], 5.0, stream(1, 'adversary'))
        assert len(surged) == 10
        assert len({a.client_id for a in surged}) == 10
        assert len({a.action_id for a in surged}) == 10

    def test_flash_crowd_fractional_surge(self):
        """surge=2.5 gives two or three actions per original"""
        actions = [_action(f'a{i}') for i in range(50)]
        surged = apply_flash_crowd(actions, 2.5, stream(1, 'adversary'))
        assert 100 <= len(surged) <= 150

    def test_decoy_positions(self):
        """Decoys sit evenly on the ring"""
        points = decoy_positions([0.0, 0.0, 20.0], 4)
        assert points[0] == pytest.approx((20.0, 0.0))
        assert points[1] == pytest.approx((0.0, 20.0), abs=1e-9)
        for x, y in points:
            assert math.hypot(x, y) == pytest.approx(20.0)

    def test_decoy_field_window(self):
        """Each decoy sends round(rate * overlap) requests flagged as decoy"""
        kwargs = dict(capability='isr', area=[0, 0, 20], decoys=12, rate=0.05,
                      work_per_request=0.8, window_index=15, window_start=900.0,
                      window_end=960.0, attack_start=900.0, attack_end=2400.0)
        actions = apply_decoy_field(**kwargs)
        assert len(actions) == 12
        assert all(a.decoy and a.request_count == 3 for a in actions)
        assert len({a.client_id for a in actions}) == 12

        kwargs.update(attack_start=930.0)
        assert all(a.request_count == 2 for a in apply_decoy_field(**kwargs))
        kwargs.update(attack_start=960.0)
        assert apply_decoy_field(**kwargs) == []

    def test_supply_chain_taint(self):
        """The primary cluster goes away; pulls land on the tainted secondary"""
        market = Marketplace(images=(
            MarketplaceImage('isr-trusted', 'isr'),
            MarketplaceImage('isr-market', 'isr', tainted=True, cluster='secondary'),
        ))
        market, tainted = activate_supply_chain_taint(market, 'isr')
        assert tainted
        assert not market.primary_available('isr')

    def test_supply_chain_needs_secondary(self):
        market = Marketplace(images=(MarketplaceImage('isr-trusted', 'isr'),))
        with pytest.raises(NoSecondaryCluster):
            activate_supply_chain_taint(market, 'isr')


def _export_bytes(trace):
    with tempfile.TemporaryDirectory() as tmpdir:
        files = export_trace(trace, Path(tmpdir))
        return {name: path.read_bytes() for name, path in files.items()}


class TestInjectedRuns:
    """Test injector effects on whole runs"""

    @pytest.mark.parametrize('kind,intensity', [
        ('WEdos', {'multiplier': 1.0}),
        ('IEdos', {'inflation': 0.0}),
        ('DenialOfSleep', {'factor': 1.0}),
        ('FlashCrowd', {'surge': 1.0}),
        ('DecoyField', {'decoys': 0}),
    ])
    def test_neutral_attack_leaves_trace_unchanged(self, make_toy, kind, intensity):
        """A neutral attack gives byte-identical CSVs"""
        clean = make_toy(perspective='attacker')
        attacked = make_toy(perspective='attacker', attacks=[{
            'kind': kind, 'target': {'capability': 'isr'},
            't_start': 120, 't_end': 600, 'intensity': intensity,
        }])
        assert _export_bytes(simulate(clean)) == _export_bytes(simulate(attacked))

    def test_wedos_isolation(self, make_toy):
        """W-EDoS keeps clients, requests and actions; work triples"""
        clean = simulate(make_toy(policy={'max_instances': 2}))
        attacked = simulate(make_toy(policy={'max_instances': 2}, attacks=[{
            'kind': 'WEdos', 'target': {'capability': 'isr'},
            't_start': 300, 't_end': 600, 'intensity': {'multiplier': 3.0},
        }]))
        for a, b in zip(clean.windows, attacked.windows):
            assert (a.C, a.R, a.nA, a.nT) == (b.C, b.R, b.nA, b.nT)
            if a.window_index >= 5:
                assert b.W == pytest.approx(3.0 * a.W)
                assert b.nC > a.nC
            else:
                assert b.W == pytest.approx(a.W)

    def test_iedos_poisons_reports_only(self, make_toy):
        """I-EDoS inflates what is reported, never what is served"""
        clean = simulate(make_toy())
        attacked = simulate(make_toy(attacks=[{
            'kind': 'IEdos', 'target': {'capability': 'isr'},
            't_start': 300, 't_end': 600, 'intensity': {'inflation': 0.85},
        }]))
        for a, b in zip(clean.windows, attacked.windows):
            assert (a.C, a.R, a.nA, a.nT) == (b.C, b.R, b.nA, b.nT)
            assert b.W == pytest.approx(a.W)
        for iw in attacked.instance_windows:
            if iw.window_index >= 5:
                assert iw.poisoned
                assert iw.reported_cpu == pytest.approx(min(0.99, iw.cpu_load + 0.85))
            else:
                assert not iw.poisoned
                assert iw.reported_cpu == iw.cpu_load

    def test_decoy_traffic_is_sinkholed(self, make_toy):
        """Decoy requests count as requests and sinkholed, never as actions"""
        trace = simulate(make_toy(perspective='attacker', attacks=[{
            'kind': 'DecoyField', 'target': {'capability': 'isr'},
            't_start': 300, 't_end': 600,
            'intensity': {'decoys': 4, 'rate': 0.05, 'work_per_request': 0.8, 'area': [2, 0, 1]},
        }]))
        windows = trace.windows_for('isr')
        assert all(w.nA == 6 for w in windows)
        assert all(w.sinkholed == 12 and w.R == 72 for w in windows[5:])
        assert trace.final_state['sinkholed']['isr'] == 60
        decoys = [e for e in trace.events_of(EventKind.ACTION_ARRIVAL) if e.get('decoy')]
        assert len(decoys) == 20

    def test_flash_crowd_multiplies_demand(self, make_toy):
        """A surge of 2 doubles the actions inside the interval"""
        trace = simulate(make_toy(attacks=[{
            'kind': 'FlashCrowd', 'target': {'capability': 'isr'},
            't_start': 300, 't_end': 600, 'intensity': {'surge': 2.0},
        }]))
        assert [w.nA for w in trace.windows] == [6] * 5 + [12] * 5
