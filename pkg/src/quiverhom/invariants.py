"""Algebra-level homological invariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import MonomialAlgebra
from .decompose import enumerate_indecomposables
from .homint import HomInt, hmax
from .modules import (
    DEFAULT_DEPTH_LIMIT, dual, injective_dimension, pd, regular_module,
    simple_module, syzygy,
)


def global_dimension(A: MonomialAlgebra,
                     limit: int = DEFAULT_DEPTH_LIMIT) -> HomInt:
    """max of pd over the simple modules."""
    key = ("gldim", limit)
    if key not in A._cache:
        A._cache[key] = hmax(*(pd(simple_module(A, v), limit)
                               for v in range(A.n_vertices)))
    return A._cache[key]


@dataclass
class FinDimResult:
    value: int
    exact: bool
    mode: str

    def to_json(self):
        return {"value": self.value, "exact": self.exact, "mode": self.mode}


def finitistic_dimension(A: MonomialAlgebra, mode: str = "rep-finite",
                         limit: int = DEFAULT_DEPTH_LIMIT) -> FinDimResult:
    """max pd over modules of finite pd.

    rep-finite mode is exact (pd of a sum is the max over its summands, so
    the enumerated indecomposables suffice); corpus mode reports a lower
    bound from simples and radicals of projectives."""
    if mode == "rep-finite":
        mods = enumerate_indecomposables(A)  # NotNakayama when not applicable
    elif mode == "corpus":
        from .igusa_todorov import IsoClassRegistry, _corpus_classes
        reg = IsoClassRegistry(A)
        mods = [reg.reps[c] for c in _corpus_classes(A, reg)]
        mods += [regular_module(A)]
    else:
        raise ValueError(f"unknown finitistic dimension mode {mode!r}")
    best = 0
    exact = True
    for m in mods:
        p = pd(m, limit)
        if p.is_finite_exact:
            best = max(best, int(p.lo))
        elif not p.is_infinite and not p.is_none:
            exact = False  # unresolved: might be a larger finite value
    return FinDimResult(best, exact and mode == "rep-finite", mode)


def is_selfinjective(A: MonomialAlgebra) -> bool:
    """id of the regular right module is zero."""
    return syzygy(dual(regular_module(A)), 1).is_zero()


@dataclass
class GorensteinProfile:
    id_right: HomInt
    id_left: HomInt
    gorenstein: Optional[bool]      # None when a side is unresolved
    levels: Optional[int]           # least n with id(_AA) < n, strict as stated

    def to_json(self):
        return {"id_right": self.id_right.to_json(),
                "id_left": self.id_left.to_json(),
                "gorenstein": self.gorenstein,
                "n_gorenstein_levels": self.levels}


def gorenstein_profile(A: MonomialAlgebra,
                       limit: int = DEFAULT_DEPTH_LIMIT) -> GorensteinProfile:
    idr = injective_dimension(regular_module(A), limit)
    idl = injective_dimension(regular_module(A.opposite()), limit)
    if idr.is_finite_exact and idl.is_finite_exact:
        return GorensteinProfile(idr, idl, True, int(idl.lo) + 1)
    if idr.is_infinite or idl.is_infinite:
        return GorensteinProfile(idr, idl, False, None)
    return GorensteinProfile(idr, idl, None, None)
