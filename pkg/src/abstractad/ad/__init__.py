from .higher import (
    DerivStream, SecondOrder, StreamSemiring, forward_2nd, hessian_vector, hybrid_eval,
    hybrid_semiring, second_order_semiring, stream_all, take_diag, take_path,
)
from .modes import (
    MODES, ADResult, abstract_d, forward_dense, forward_sparse, gradient, reverse,
    reverse_cayley, reverse_mut, run_mode, tangent_module, to_sparse,
)
from .nagata import Nagata, NagataLetRule, NagataSemiring
from .symbolic import derive, derive_n, derive_tuple, forward_classic, symbolic


def letin(tangents, y: int, de1, de2):
    """Tangent of ``let y = e1 in e2`` in any tangent representation."""
    return tangents.letin(y, de1, de2)


__all__ = [
    "MODES", "ADResult", "DerivStream", "Nagata", "NagataLetRule", "NagataSemiring",
    "SecondOrder", "StreamSemiring", "abstract_d", "derive", "derive_n", "derive_tuple",
    "forward_2nd", "forward_classic", "forward_dense", "forward_sparse", "gradient",
    "hessian_vector", "hybrid_eval", "hybrid_semiring", "letin", "reverse", "reverse_cayley",
    "reverse_mut", "run_mode", "second_order_semiring", "stream_all", "symbolic",
    "take_diag", "take_path", "tangent_module", "to_sparse",
]
