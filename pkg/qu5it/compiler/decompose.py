"""Two-qu5it Givens rotations as single-qu5it rotations and controlled permutations.

For exp(-i alpha G_ab (x) G_mn) the rotation exp(-i phi G_ab) on the first
qudit is conjugated by frames D = sum_k |k><k| (x) T_k controlled on the first
qudit, which turn G_ab (x) 1 into G_ab (x) M with M = T_a^dag T_b. Two frames
with M = +-sigma on {m, n} and identity elsewhere, each wrapped around a
half-angle rotation, multiply to the target because the identity parts cancel.

    XX: D1 = (1, X^)                   D2 = (Y^_mn, X^ Y^_mn)
    YY: D1 = (Y^_mn, Y^_nm Y^_mn)      D2 = (1, Y^_mn)

Y^_nm Y^_mn is -1 on {m, n}. Adjacent frames D1^dag D2 are merged into two
controlled permutations, leaving 6 controlled gates per product (2 CX^ and
4 CY^ for XX, 6 CY^ for YY); ``expanded=True`` keeps every frame separate
at 8.
"""

import logging
from typing import List, Sequence, Tuple

from qu5it.compiler.ir import CircuitIR, CtrlPermute, GateOp, GivensRot
from qu5it.algebra.givens import check_levels
from qu5it.errors import DomainError

logger = logging.getLogger(__name__)


def decomposition_gates(
    kind: str,
    left_levels: Tuple[int, int],
    right_levels: Tuple[int, int],
    alpha: float,
    qudits: Sequence[int] = (0, 1),
    expanded: bool = False
) -> List[GateOp]:
    """Gate list in application order; the first qudit carries (a, b)."""
    if kind not in ("XX", "YY"):
        raise DomainError(f"two-qudit Givens kind must be XX or YY, got {kind!r}")
    a, b = check_levels(*left_levels)
    m, n = check_levels(*right_levels)
    c, t = int(qudits[0]), int(qudits[1])
    single = kind[0]

    def ctrl(state: int, perm: str, levels: Tuple[int, int]) -> CtrlPermute:
        return CtrlPermute(c, (state,), t, perm, levels)

    forward = GivensRot(single, (a, b), alpha / 2, c)
    backward = GivensRot(single, (a, b), -alpha / 2, c)

    if kind == "XX":
        d1 = [ctrl(b, "X", (m, n))]
        d1_dag = [ctrl(b, "X", (m, n))]
        d2 = [ctrl(a, "Y", (m, n)), ctrl(b, "Y", (m, n)), ctrl(b, "X", (m, n))]
        d2_dag = [ctrl(a, "Y", (m, n)), ctrl(b, "X", (m, n)), ctrl(b, "Y", (m, n))]
        merged = [ctrl(a, "Y", (m, n)), ctrl(b, "Y", (n, m))]
    else:
        d1 = [ctrl(a, "Y", (m, n)), ctrl(b, "Y", (m, n)), ctrl(b, "Y", (n, m))]
        d1_dag = [ctrl(a, "Y", (m, n)), ctrl(b, "Y", (n, m)), ctrl(b, "Y", (m, n))]
        d2 = [ctrl(b, "Y", (m, n))]
        d2_dag = [ctrl(b, "Y", (m, n))]
        merged = [ctrl(a, "Y", (m, n)), ctrl(b, "Y", (n, m))]

    middle = d1_dag + d2 if expanded else merged
    return d1 + [forward] + middle + [backward] + d2_dag


def decompose_two_qudit_givens(
    kind: str,
    left_levels: Tuple[int, int],
    right_levels: Tuple[int, int],
    alpha: float,
    expanded: bool = False
) -> CircuitIR:
    """
    Circuit equal to exp(-i alpha G_ab (x) G_mn) on qudits (0, 1).

    Args:
        kind: "XX" or "YY"
        left_levels: (a, b) on qudit 0
        right_levels: (m, n) on qudit 1
        alpha: Rotation angle
        expanded: Keep the frames unmerged

    Returns:
        CircuitIR with two half-angle rotations and the controlled permutations
    """
    gates = decomposition_gates(kind, left_levels, right_levels, alpha, (0, 1), expanded)
    return CircuitIR(2, gates, {"decomposition": "expanded" if expanded else "merged", "kind": kind})
