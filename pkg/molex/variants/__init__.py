"""
Variant-Specific Configuration Package

Each index family with closed-form bounds has its own configuration module that provides:

- the edge weight f(i, j, p) and, where the bases are integers, an exact version
- the admissible parameter range
- the closed forms of the seven reduction coefficients
- representative parameters for callers that only name a regime

Current Variants:
- chi_config.py: general sum-connectivity index chi_alpha
- platt_config.py: general Platt index Pl_alpha
- oga_config.py: ordinary generalized geometric-arithmetic index OGA_k

Usage:
    from molex.variants import get_variant_config
    from molex.schemas import Variant

    config = get_variant_config(Variant.CHI)
    config.edge_weight(1, 4, -0.5)
"""

from types import ModuleType
from typing import Dict

from molex.schemas import Variant
from molex.variants import chi_config, oga_config, platt_config

VARIANT_CONFIGS: Dict[Variant, ModuleType] = {
    Variant.CHI: chi_config,
    Variant.PLATT: platt_config,
    Variant.OGA: oga_config,
}


def get_variant_config(variant: Variant) -> ModuleType:
    """Configuration module of a variant."""
    return VARIANT_CONFIGS[Variant(variant)]
