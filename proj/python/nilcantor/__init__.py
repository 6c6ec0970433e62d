"""Heisenberg group chains: boxes, cores, Steinitz orders and certificates."""

import json

from ._core import (
    Box,
    ChainSpec,
    ContractError,
    ResourceError,
    UndecidableError,
    __version__,
    asymptotically_equivalent,
    box_at,
    canonical_coset,
    conjugate,
    core,
    core_at,
    discriminant_order,
    index_in,
    inverse,
    is_normal_in_gamma,
    kernel_order,
    multiply,
    relative_core,
    stable_image_order,
    steinitz_lcm,
    steinitz_limit,
    steinitz_product,
    trivial_action_kernel,
)
from . import _core


def spectrum(chain, depth=4, bound=50):
    return json.loads(_core.spectrum_report(chain, depth, bound))


def discriminant(chain, level=1, depth=4):
    return json.loads(_core.discriminant_report(chain, level, depth))


def wildness(chain, lmax=3, dmax=5):
    return json.loads(_core.wildness_report(chain, lmax, dmax))


def freeness(chain, level=1, radius=100, dmax=6):
    return json.loads(_core.freeness_report(chain, level, radius, dmax))


def reproduce(name, count=5, bound=200):
    return json.loads(_core.reproduce_report(name, count, bound))
