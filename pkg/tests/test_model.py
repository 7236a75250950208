"""
Tests for the domain model: lifecycle machine, dependency graph, entities
"""

import pytest
import sys
import os

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from model.dependency import build_dependency_graph
from model.entities import Capability, MissionAction, TacticalNode, live_instances, VnfInstance, SpawnReason
from model.lifecycle import LifecycleEvent, LifecycleState, advance_lifecycle, next_state
from utils.config import CapabilitySpec
from utils.exceptions import CycleError, IllegalTransition, UnknownCapability


class TestLifecycle:
    """Test the capability lifecycle state machine"""

    def test_happy_path(self):
        """Onboarding through adaptation to undeployment"""
        state = LifecycleState.ONBOARDING
        for event, expected in [
            (LifecycleEvent.ONBOARD_COMPLETE, LifecycleState.DEPLOYED),
            (LifecycleEvent.ADAPT_START, LifecycleState.ADAPTATION),
            (LifecycleEvent.ADAPT_END, LifecycleState.DEPLOYED),
            (LifecycleEvent.UNDEPLOY, LifecycleState.UNDEPLOYED),
        ]:
            state = next_state(state, event)
            assert state is expected

    @pytest.mark.parametrize('state,event', [
        (LifecycleState.ONBOARDING, LifecycleEvent.ADAPT_START),
        (LifecycleState.DEPLOYED, LifecycleEvent.ADAPT_END),
        (LifecycleState.UNDEPLOYED, LifecycleEvent.DEPLOY_COMPLETE),
        (LifecycleState.UNDEPLOYED, LifecycleEvent.UNDEPLOY),
        (LifecycleState.ADAPTATION, LifecycleEvent.ADAPT_START),
    ])
    def test_illegal_transitions(self, state, event):
        """Events outside the table raise IllegalTransition"""
        with pytest.raises(IllegalTransition):
            next_state(state, event)

    def test_surveillance_flag(self):
        """Surveillance is on while deployed or adapting"""
        cap = Capability(id='isr')
        assert not cap.surveillance
        cap = advance_lifecycle(cap, LifecycleEvent.ONBOARD_COMPLETE)
        assert cap.surveillance and cap.serving
        cap = advance_lifecycle(cap, LifecycleEvent.ADAPT_START)
        assert cap.surveillance and cap.serving

    def test_undeploy_drops_instances(self):
        """Undeployment leaves no instance references behind"""
        cap = Capability(
            id='isr',
            lifecycle=LifecycleState.DEPLOYED,
            instances=frozenset({'isr-001', 'isr-002'}),
        )
        cap = advance_lifecycle(cap, LifecycleEvent.UNDEPLOY)
        assert cap.lifecycle is LifecycleState.UNDEPLOYED
        assert cap.instances == frozenset()
        assert not cap.surveillance


class TestDependencyGraph:
    """Test the horizontal dependency graph"""

    def _caps(self, *pairs):
        return [CapabilitySpec(id=cid, depends_on=tuple(deps)) for cid, deps in pairs]

    def test_n_t_counts_direct_dependents(self):
        """Two capabilities depending on relay give n_t(relay) == 2"""
        graph = build_dependency_graph(self._caps(
            ('relay', ()), ('isr', ('relay',)), ('c2', ('relay',)),
        ))
        assert graph.n_t('relay') == 2
        assert graph.n_t('isr') == 0
        assert graph.dependents('relay') == ['c2', 'isr']
        assert graph.dependents('isr') == []

    def test_transitive_dependents(self):
        """A chain counts indirect dependents only when asked to"""
        graph = build_dependency_graph(self._caps(
            ('relay', ()), ('isr', ('relay',)), ('fires', ('isr',)),
        ))
        assert graph.n_t('relay') == 1
        assert graph.n_t('relay', transitive=True) == 2
        assert graph.dependents('relay', transitive=True) == ['fires', 'isr']

    def test_cycle_rejected(self):
        """A dependency cycle raises CycleError"""
        with pytest.raises(CycleError):
            build_dependency_graph(self._caps(('a', ('b',)), ('b', ('a',))))

    def test_unknown_dependency(self):
        """depends_on naming an undeclared capability raises UnknownCapability"""
        with pytest.raises(UnknownCapability):
            build_dependency_graph(self._caps(('a', ('ghost',))))

    def test_unknown_query(self):
        """Querying a missing capability raises UnknownCapability"""
        graph = build_dependency_graph(self._caps(('a', ())))
        with pytest.raises(UnknownCapability):
            graph.n_t('b')


class TestEntities:
    """Test entity validation"""

    def test_node_range(self):
        """in_range uses the Euclidean distance"""
        node = TacticalNode(id='n1', position=(0.0, 0.0), radio_range=5.0)
        assert node.in_range((3.0, 4.0))
        assert not node.in_range((3.0, 4.1))

    def test_node_rejects_bad_range(self):
        """radio_range must be positive"""
        with pytest.raises(ValueError):
            TacticalNode(id='n1', position=(0.0, 0.0), radio_range=0.0)

    def test_action_validation(self):
        """Actions need at least one request and positive work"""
        with pytest.raises(ValueError):
            MissionAction('a', 0.0, 'isr', 'c', request_count=0, work_per_request=1.0)
        with pytest.raises(ValueError):
            MissionAction('a', 0.0, 'isr', 'c', request_count=1, work_per_request=0.0)
        action = MissionAction('a', 0.0, 'isr', 'c', request_count=10, work_per_request=0.8)
        assert action.total_work == pytest.approx(8.0)

    def test_live_instances_sorted(self):
        """Only alive instances are returned, sorted by id"""
        instances = [
            VnfInstance('isr-002', 'isr', 'n1', SpawnReason.BOOTSTRAP, 'img'),
            VnfInstance('isr-001', 'isr', 'n2', SpawnReason.BOOTSTRAP, 'img'),
            VnfInstance('isr-003', 'isr', 'n1', SpawnReason.BOOTSTRAP, 'img', alive=False),
            VnfInstance('c2-001', 'c2', 'n1', SpawnReason.BOOTSTRAP, 'img'),
        ]
        assert [i.id for i in live_instances(instances, 'isr')] == ['isr-001', 'isr-002']
        assert len(live_instances(instances)) == 3
