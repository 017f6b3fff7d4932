from .base import Tangent, delta_for
from .cayley import CayleyHom, CayleyModule, cayley_abs, cayley_rep
from .dense import DenseModule
from .iso import IsoWitness, iso_chains
from .linear import LinearModule, LinHom, linhom_abs, linhom_apply, linhom_rep
from .mutable import ConsumedHandle, MutAccum, TapeAction, TapeModule, modify_at
from .sparse import SparseModule, abs_sparse, rep_sparse

__all__ = [
    "CayleyHom", "CayleyModule", "ConsumedHandle", "DenseModule", "IsoWitness",
    "LinHom", "LinearModule", "MutAccum", "SparseModule", "Tangent", "TapeAction",
    "TapeModule", "abs_sparse", "cayley_abs", "cayley_rep", "delta_for", "iso_chains",
    "linhom_abs", "linhom_apply", "linhom_rep", "modify_at", "rep_sparse",
]
