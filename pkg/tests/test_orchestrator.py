"""
Tests for telemetry, the autoscaler, placement and the marketplace
"""

import pytest
import sys
import os

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from energy.battery import BatteryState
from model.entities import Capability, MarketplaceImage, TacticalNode
from model.lifecycle import LifecycleState
from orchestrator.autoscaler import (
    HOLD,
    IN,
    OUT,
    AutoscalePolicy,
    autoscale_step,
    coverage_step,
    pick_scale_in_victim,
)
from orchestrator.marketplace import Marketplace, pull_image
from orchestrator.placement import Placement, RoundRobinCursor, eligible_nodes, place_instance
from orchestrator.telemetry import TelemetryReport, window_means
from utils.exceptions import NoEligibleNode, NoImageAvailable


def _reports(per_window):
    """Reports for instances a and b, one list of cpu values per window"""
    reports = []
    for k, values in enumerate(per_window):
        for iid, cpu in zip(('isr-001', 'isr-002'), values):
            reports.append(TelemetryReport(iid, 'isr', k, cpu, 10))
    return reports


def _node(node_id, x=0.0, radio_range=10.0, recharging=False, max_instances=4):
    return TacticalNode(
        id=node_id,
        position=(x, 0.0),
        radio_range=radio_range,
        max_instances=max_instances,
        battery=BatteryState(capacity=100.0, soc=10.0 if recharging else 100.0,
                             recharging=recharging),
    )


CAP = Capability(
    id='isr',
    lifecycle=LifecycleState.DEPLOYED,
    instances=frozenset({'isr-001', 'isr-002'}),
)


class TestTelemetry:
    """Test report aggregation"""

    def test_window_means(self):
        """Means are taken per window over the last k windows"""
        reports = _reports([(0.1, 0.3), (0.5, 0.7), (0.9, 0.9)])
        assert window_means(reports, 2) == pytest.approx((0.6, 0.9))

    def test_negative_report_rejected(self):
        """Reports never carry negative values"""
        with pytest.raises(ValueError):
            TelemetryReport('isr-001', 'isr', 0, -0.1, 0)


class TestAutoscaler:
    """Test the threshold scaling rule"""

    def test_scale_out(self):
        """k windows above u_hi trigger Out(1)"""
        decision = autoscale_step(CAP, _reports([(0.9, 0.95), (0.85, 0.9)]), AutoscalePolicy())
        assert decision.action == OUT
        assert decision.n == 1

    def test_scale_out_capped(self):
        """No scale-out at max_instances"""
        policy = AutoscalePolicy(max_instances=2)
        decision = autoscale_step(CAP, _reports([(0.9, 0.95), (0.85, 0.9)]), policy)
        assert decision.action == HOLD

    def test_scale_in(self):
        """k windows below u_lo trigger In(1)"""
        decision = autoscale_step(CAP, _reports([(0.1, 0.0), (0.05, 0.1)]), AutoscalePolicy())
        assert decision.action == IN

    def test_no_scale_in_below_one(self):
        """The last instance is never scaled in"""
        decision = autoscale_step(
            CAP, _reports([(0.1, 0.0), (0.05, 0.1)]), AutoscalePolicy(), instance_count=1
        )
        assert decision.action == HOLD

    def test_mixed_windows_hold(self):
        """Only one window above u_hi is not enough"""
        decision = autoscale_step(CAP, _reports([(0.5, 0.5), (0.9, 0.9)]), AutoscalePolicy())
        assert decision.action == HOLD

    def test_not_enough_windows(self):
        """Fewer than k windows of telemetry hold"""
        decision = autoscale_step(CAP, _reports([(0.9, 0.9)]), AutoscalePolicy())
        assert decision.is_hold
        assert decision.reason == 'not enough telemetry windows'

    def test_policy_validation(self):
        """Thresholds must be ordered and bounds positive"""
        with pytest.raises(ValueError):
            AutoscalePolicy(u_lo=0.8, u_hi=0.5)
        with pytest.raises(ValueError):
            AutoscalePolicy(k_windows=0)
        with pytest.raises(ValueError):
            AutoscalePolicy(max_instances=0)


class TestCoverage:
    """Test the coverage scaling rule"""

    def _nodes(self):
        return [_node('n1', x=0.0, radio_range=5.0), _node('n2', x=10.0, radio_range=5.0)]

    def test_spawns_where_demand_is_uncovered(self):
        """Uncovered demand in each of the last k windows picks the covering node"""
        history = [{(10.0, 0.0): 3}, {(10.0, 0.0): 3}]
        decision = coverage_step(history, self._nodes(), {'n1': 1}, ['n1'], 1, AutoscalePolicy())
        assert decision.action == OUT
        assert decision.node == 'n2'

    def test_needs_every_window(self):
        """A covered window in between holds"""
        history = [{(10.0, 0.0): 3}, {}]
        decision = coverage_step(history, self._nodes(), {'n1': 1}, ['n1'], 1, AutoscalePolicy())
        assert decision.is_hold

    def test_disabled(self):
        """coverage=False never fires"""
        history = [{(10.0, 0.0): 3}, {(10.0, 0.0): 3}]
        policy = AutoscalePolicy(coverage=False)
        decision = coverage_step(history, self._nodes(), {'n1': 1}, ['n1'], 1, policy)
        assert decision.is_hold

    def test_recharging_node_not_chosen(self):
        """Recharging nodes are not eligible"""
        nodes = [_node('n1', radio_range=5.0), _node('n2', x=10.0, radio_range=5.0, recharging=True)]
        history = [{(10.0, 0.0): 3}, {(10.0, 0.0): 3}]
        decision = coverage_step(history, nodes, {'n1': 1}, ['n1'], 1, AutoscalePolicy())
        assert decision.is_hold


class TestScaleInVictim:
    """Test scale-in victim selection"""

    def test_least_productive(self):
        """The instance serving least per unit of load goes"""
        victim = pick_scale_in_victim(
            {'isr-001': (0, 0.5), 'isr-002': (10, 1.0)}, {'isr-001': 1, 'isr-002': 2}
        )
        assert victim == 'isr-001'

    def test_tie_goes_to_newest(self):
        """Equal productivity removes the most recent instance"""
        victim = pick_scale_in_victim(
            {'isr-001': (10, 1.0), 'isr-002': (10, 1.0), 'isr-003': (10, 1.0)},
            {'isr-001': 1, 'isr-002': 2, 'isr-003': 3},
        )
        assert victim == 'isr-003'

    def test_tie_past_three_digit_ordinals(self):
        """Recency follows the spawn ordinal, not the spelling of the id"""
        last = {'isr-999': (10, 1.0), 'isr-1000': (10, 1.0)}
        victim = pick_scale_in_victim(last, {'isr-999': 999, 'isr-1000': 1000})
        assert victim == 'isr-1000'

    def test_empty(self):
        with pytest.raises(ValueError):
            pick_scale_in_victim({}, {})


class TestPlacement:
    """Test host selection"""

    def test_least_loaded(self):
        """The lowest reported load wins, ties by id"""
        nodes = [_node('n1'), _node('n2')]
        assert place_instance(nodes, loads={'n1': 0.5, 'n2': 0.1}) == 'n2'
        assert place_instance(nodes, loads={}) == 'n1'

    def test_full_and_recharging_nodes_skipped(self):
        """Only nodes with a free slot that are not recharging are eligible"""
        nodes = [_node('n1', max_instances=1), _node('n2', recharging=True), _node('n3')]
        hosted = {'n1': 1}
        assert [n.id for n in eligible_nodes(nodes, hosted)] == ['n3']
        assert place_instance(nodes, hosted=hosted) == 'n3'

    def test_no_eligible_node(self):
        """Every node recharging raises NoEligibleNode"""
        with pytest.raises(NoEligibleNode):
            place_instance([_node('n1', recharging=True)])

    def test_round_robin(self):
        """Round robin cycles through the sorted node ids"""
        nodes = [_node('n2'), _node('n1'), _node('n3')]
        cursor = RoundRobinCursor()
        picks = [place_instance(nodes, Placement.ROUND_ROBIN, cursor=cursor) for _ in range(4)]
        assert picks == ['n1', 'n2', 'n3', 'n1']


class TestMarketplace:
    """Test image selection between clusters"""

    def _market(self, **kwargs):
        images = (
            MarketplaceImage('isr-trusted', 'isr'),
            MarketplaceImage('isr-market', 'isr', tainted=True, cluster='secondary'),
        )
        return Marketplace(images=images, **kwargs)

    def test_primary_preferred(self):
        assert pull_image('isr', self._market()).image_id == 'isr-trusted'

    def test_fallback_to_secondary(self):
        """An unavailable primary cluster falls back to the secondary"""
        market = self._market().with_primary_unavailable('isr')
        image = pull_image('isr', market)
        assert image.image_id == 'isr-market'
        assert image.tainted
        assert pull_image('isr', market.with_primary_restored('isr')).image_id == 'isr-trusted'

    def test_scripted_outage(self):
        """Outage windows apply only at the times they cover"""
        market = self._market(outages=(('isr', 100.0, 200.0),))
        assert pull_image('isr', market, now=150.0).image_id == 'isr-market'
        assert pull_image('isr', market, now=200.0).image_id == 'isr-trusted'

    def test_no_image(self):
        with pytest.raises(NoImageAvailable):
            pull_image('c2', self._market())
