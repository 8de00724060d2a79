"""Full-modulus sweeps: CharExtremes for every nonprincipal character mod q."""

import functools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from charmax import config
from charmax.arithmetic import (
    DirichletCharacter,
    FactoredModulus,
    Parity,
    build_unit_group,
    character_from_index,
    conductor_moduli,
    root_table,
    unit_group,
)
from charmax.charsums.executor import SweepBudget, SweepChunk, SweepExecutor
from charmax.charsums.fourier import fourier_extremes
from charmax.charsums.prefix import CharExtremes, argmax_tolerance
from charmax.errors import BudgetExceededError, DomainError

logger = logging.getLogger(__name__)

ENGINES = ("exact", "fourier")


@dataclass
class SweepTable:
    """Per-character results for one modulus, stored column-wise.

    Row i describes the character with enumeration index ``indices[i]``; a
    complete table holds indices 1..phi(q)-1 in order (chi_0 excluded).
    """

    modulus: FactoredModulus
    engine: str
    indices: np.ndarray  # int64 (n,)
    exponents: np.ndarray  # int64 (n, rank)
    M: np.ndarray  # float64 (n,)
    N: np.ndarray  # int64 (n,)
    S_half: np.ndarray  # complex128 (n,)
    odd: np.ndarray  # bool (n,)
    conductor: np.ndarray  # int64 (n,)
    complete: bool = True
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def certified(self) -> bool:
        """Only exact-engine tables are ground truth."""
        return self.engine == "exact"

    def __len__(self) -> int:
        return len(self.indices)

    def extremes(self, i: int) -> CharExtremes:
        return CharExtremes(
            M=float(self.M[i]),
            N=int(self.N[i]),
            S_half=complex(self.S_half[i]),
            parity=Parity.ODD if self.odd[i] else Parity.EVEN,
            conductor=int(self.conductor[i]),
        )

    @property
    def rows(self) -> List[Tuple[Tuple[int, ...], CharExtremes]]:
        """(exponent tuple, CharExtremes) per row, in table order."""
        return [
            (tuple(int(x) for x in self.exponents[i]), self.extremes(i)) for i in range(len(self))
        ]

    def character(self, i: int) -> DirichletCharacter:
        return character_from_index(build_unit_group(self.q), int(self.indices[i]))

    @classmethod
    def concatenate(
        cls, modulus: FactoredModulus, engine: str, parts: Sequence["SweepTable"]
    ) -> "SweepTable":
        """Join partial tables in the order given."""
        if not parts:
            rank = len(build_unit_group(modulus.q).components)
            return cls(
                modulus=modulus,
                engine=engine,
                indices=np.zeros(0, dtype=np.int64),
                exponents=np.zeros((0, rank), dtype=np.int64),
                M=np.zeros(0),
                N=np.zeros(0, dtype=np.int64),
                S_half=np.zeros(0, dtype=np.complex128),
                odd=np.zeros(0, dtype=bool),
                conductor=np.zeros(0, dtype=np.int64),
                complete=False,
            )
        return cls(
            modulus=modulus,
            engine=engine,
            indices=np.concatenate([p.indices for p in parts]),
            exponents=np.concatenate([p.exponents for p in parts]),
            M=np.concatenate([p.M for p in parts]),
            N=np.concatenate([p.N for p in parts]),
            S_half=np.concatenate([p.S_half for p in parts]),
            odd=np.concatenate([p.odd for p in parts]),
            conductor=np.concatenate([p.conductor for p in parts]),
            complete=all(p.complete for p in parts),
        )

    def is_full(self) -> bool:
        """Whether the rows hold each index 1..phi(q)-1 exactly once, in any order."""
        phi = self.modulus.phi
        return len(self) == phi - 1 and np.array_equal(np.sort(self.indices), np.arange(1, phi))

    def equals(self, other: "SweepTable") -> bool:
        """Row-for-row identity of two tables."""
        return (
            self.q == other.q
            and self.engine == other.engine
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.exponents, other.exponents)
            and np.array_equal(self.M, other.M)
            and np.array_equal(self.N, other.N)
            and np.array_equal(self.S_half, other.S_half)
            and np.array_equal(self.odd, other.odd)
            and np.array_equal(self.conductor, other.conductor)
        )


def decode_indices(orders: Sequence[int], indices: np.ndarray) -> np.ndarray:
    """Mixed-radix exponent tuples for enumeration indices (last component fastest)."""
    indices = np.asarray(indices, dtype=np.int64).copy()
    exps = np.zeros((len(indices), len(orders)), dtype=np.int64)
    for column in range(len(orders) - 1, -1, -1):
        indices, exps[:, column] = np.divmod(indices, orders[column])
    return exps


def _exact_rows(q: int, exps: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """M, N and S_half for a batch of characters by a full vectorised scan."""
    g = build_unit_group(q)
    E = g.exponent
    roots = root_table(E)
    scaled = g.scaled_dlog[1:q]
    units = g.unit_mask[1:q]

    k = (exps @ scaled.T) % E
    values = np.where(units[None, :], roots[k], 0j)
    sums = np.cumsum(values, axis=1)
    magnitudes = np.abs(sums)
    M = magnitudes.max(axis=1)
    N = np.argmax(magnitudes >= (M - argmax_tolerance(q))[:, None], axis=1) + 1
    S_half = sums[:, q // 2 - 1]
    return M, N.astype(np.int64), S_half


def compute_chunk(q: int, engine: str, start: int, stop: int) -> SweepTable:
    """Sweep rows for character indices [start, stop)."""
    g = build_unit_group(q)
    indices = np.arange(start, stop, dtype=np.int64)
    exps = decode_indices(g.orders, indices)
    n = len(indices)

    M = np.empty(n)
    N = np.empty(n, dtype=np.int64)
    S_half = np.empty(n, dtype=np.complex128)

    if engine == "exact":
        batch = max(1, config.BATCH_ELEMENTS // q)
        for lo in range(0, n, batch):
            hi = min(lo + batch, n)
            M[lo:hi], N[lo:hi], S_half[lo:hi] = _exact_rows(q, exps[lo:hi])
    else:
        for i, index in enumerate(indices):
            row = fourier_extremes(character_from_index(g, int(index)))
            M[i], N[i], S_half[i] = row.M, row.N, row.S_half

    minus_one = g.scaled_dlog[q - 1]
    odd = (exps @ minus_one) % g.exponent != 0

    return SweepTable(
        modulus=g.modulus,
        engine=engine,
        indices=indices,
        exponents=exps,
        M=M,
        N=N,
        S_half=S_half,
        odd=odd,
        conductor=conductor_moduli(g, exps),
    )


def sweep(
    q: int,
    engine: str = "exact",
    workers: int = 1,
    budget: Optional[SweepBudget] = None,
    progress: bool = False,
    preloaded: Optional[Dict[int, SweepTable]] = None,
    on_chunk: Optional[Callable[[SweepChunk, SweepTable], None]] = None,
    summary: bool = False,
) -> SweepTable:
    """One CharExtremes row per nonprincipal character mod q.

    Rows are computed in chunks of SWEEP_CHUNK_SIZE characters and merged by
    index, so the table does not depend on ``workers``.

    Args:
        q: Modulus, q >= 3
        engine: "exact" (ground truth) or "fourier" (advisory, non-certified)
        workers: Worker processes
        budget: Row/time ceilings (default: from config)
        progress: Show a progress bar
        preloaded: Chunk results from an earlier run, keyed by chunk index
        on_chunk: Called after each newly computed chunk
        summary: Print the execution summary when done

    Returns:
        Complete SweepTable

    Raises:
        DomainError: If q < 3 or the engine is unknown
        BudgetExceededError: With ``partial`` set to the incomplete SweepTable
    """
    if engine not in ENGINES:
        raise DomainError(f"Unknown engine {engine!r}; expected one of {ENGINES}")
    g = unit_group(q)

    executor: SweepExecutor[SweepTable] = SweepExecutor(
        workers=workers,
        budget=budget if budget is not None else SweepBudget.from_config(),
        progress=progress,
        label=f"{engine} sweep q={q}",
    )
    executor.set_range(1, g.modulus.phi)
    if on_chunk:
        executor.set_completion_callback(on_chunk)

    task = functools.partial(compute_chunk, q, engine)
    try:
        results = executor.execute(task, preloaded=preloaded)
    except BudgetExceededError as e:
        parts = [e.partial[i] for i in sorted(e.partial)]
        table = SweepTable.concatenate(g.modulus, engine, parts)
        table.complete = False
        raise BudgetExceededError(str(e), partial=table) from e
    finally:
        if summary:
            executor.print_summary()

    table = SweepTable.concatenate(g.modulus, engine, [results[i] for i in sorted(results)])
    logger.info("Swept q=%d with the %s engine: %d rows", q, engine, len(table))
    return table
