"""
VNF Marketplace
===============

Images live in a primary cluster (the trusted tactical repository) or a
secondary cluster (the external market). When the primary cluster is
unavailable for a capability the VNF manager falls back to the secondary.
"""

from dataclasses import dataclass, replace
from typing import FrozenSet, List, Optional, Tuple

from model.entities import MarketplaceImage
from utils.exceptions import NoImageAvailable


@dataclass(frozen=True)
class Marketplace:
    images: Tuple[MarketplaceImage, ...] = ()
    primary_unavailable: FrozenSet[str] = frozenset()
    # scripted (capability, t_start, t_end) windows where the primary cluster is down
    outages: Tuple[Tuple[str, float, float], ...] = ()

    def images_for(self, capability_id: str, cluster: str) -> List[MarketplaceImage]:
        return sorted(
            (
                img
                for img in self.images
                if img.capability_id == capability_id and img.cluster == cluster
            ),
            key=lambda img: img.image_id,
        )

    def has_secondary(self, capability_id: str) -> bool:
        return bool(self.images_for(capability_id, "secondary"))

    def primary_available(self, capability_id: str, now: Optional[float] = None) -> bool:
        if capability_id in self.primary_unavailable:
            return False
        if now is not None and any(
            cap == capability_id and start <= now < end for cap, start, end in self.outages
        ):
            return False
        return bool(self.images_for(capability_id, "primary"))

    def with_primary_unavailable(self, capability_id: str) -> "Marketplace":
        return replace(self, primary_unavailable=self.primary_unavailable | {capability_id})

    def with_primary_restored(self, capability_id: str) -> "Marketplace":
        return replace(self, primary_unavailable=self.primary_unavailable - {capability_id})


def pull_image(
    capability_id: str,
    marketplace: Marketplace,
    preference: str = "primary",
    now: Optional[float] = None,
) -> MarketplaceImage:
    """Pick the image a new instance of capability_id is built from"""
    order = ("primary", "secondary") if preference == "primary" else ("secondary", "primary")
    for cluster in order:
        if cluster == "primary" and not marketplace.primary_available(capability_id, now):
            continue
        images = marketplace.images_for(capability_id, cluster)
        if images:
            return images[0]
    raise NoImageAvailable(f"no image available for capability '{capability_id}'")
