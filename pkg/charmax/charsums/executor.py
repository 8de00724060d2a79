"""
Chunked sweep execution with progress tracking.

This module splits a range of character indices into fixed-size chunks, runs a
task on each chunk (serially or in a process pool), and records timing,
progress and budget consumption as the chunks complete.
"""

import concurrent.futures
import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, Generic, List, Optional, TypeVar

from tqdm import tqdm

from charmax import config
from charmax.errors import BudgetExceededError

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class SweepChunk:
    """A contiguous range of character indices processed as one unit."""

    index: int  # Chunk number in sequence
    start: int  # First character index
    stop: int  # One past the last character index
    completed: bool = False
    start_time: Optional[float] = None
    end_time: Optional[float] = None

    @property
    def rows(self) -> int:
        return self.stop - self.start

    @property
    def duration(self) -> Optional[float]:
        """Execution duration in seconds, or None if not timed."""
        if self.start_time is not None and self.end_time is not None:
            return self.end_time - self.start_time
        return None


@dataclass(frozen=True)
class SweepBudget:
    """Row and wall-clock ceilings for a sweep; None means unlimited."""

    max_rows: Optional[int] = None
    max_seconds: Optional[float] = None

    @classmethod
    def from_config(cls) -> "SweepBudget":
        return cls(max_rows=config.SWEEP_MAX_ROWS, max_seconds=config.SWEEP_MAX_SECONDS)


class SweepExecutor(Generic[T]):
    """
    Runs a chunk task over a range of character indices.

    Provides:
    - Chunk-based progress tracking
    - Timing metrics for each chunk
    - Completion callbacks (used for checkpointing)
    - Row and time budgets
    """

    def __init__(
        self,
        chunk_size: Optional[int] = None,
        workers: int = 1,
        budget: Optional[SweepBudget] = None,
        progress: bool = False,
        label: str = "sweep",
    ):
        """
        Initialize the sweep executor.

        Args:
            chunk_size: Characters per chunk (default: from config)
            workers: Number of worker processes; 1 runs in-process
            budget: Row/time ceilings (default: unlimited)
            progress: Show a tqdm progress bar
            label: Description shown on the progress bar
        """
        self.chunk_size = chunk_size if chunk_size is not None else config.SWEEP_CHUNK_SIZE
        self.workers = max(1, workers)
        self.budget = budget if budget is not None else SweepBudget()
        self.progress = progress
        self.label = label
        self.chunks: List[SweepChunk] = []
        self.completion_callback: Optional[Callable[[SweepChunk, T], None]] = None
        self.execution_start_time: Optional[float] = None
        self.execution_end_time: Optional[float] = None

    def set_range(self, start: int, stop: int):
        """
        Split the index range [start, stop) into chunks.

        Args:
            start: First character index
            stop: One past the last character index
        """
        self.chunks = [
            SweepChunk(index=i, start=lo, stop=min(lo + self.chunk_size, stop))
            for i, lo in enumerate(range(start, stop, self.chunk_size))
        ]

    def set_completion_callback(self, callback: Callable[[SweepChunk, T], None]):
        """
        Set a function called in the parent process after each chunk completes.

        Args:
            callback: Function taking the chunk and its result
        """
        self.completion_callback = callback

    def _admitted(self, pending: List[SweepChunk]) -> List[SweepChunk]:
        """Leading chunks that fit in the row budget."""
        if self.budget.max_rows is None:
            return pending
        rows = self.completed_rows
        admitted = []
        for chunk in pending:
            if rows + chunk.rows > self.budget.max_rows:
                break
            rows += chunk.rows
            admitted.append(chunk)
        return admitted

    def _out_of_time(self) -> bool:
        if self.budget.max_seconds is None or self.execution_start_time is None:
            return False
        return time.time() - self.execution_start_time > self.budget.max_seconds

    def execute(
        self, task: Callable[[int, int], T], preloaded: Optional[Dict[int, T]] = None
    ) -> Dict[int, T]:
        """
        Run ``task(start, stop)`` on every chunk not already in ``preloaded``.

        Args:
            task: Picklable callable computing one chunk
            preloaded: Results of chunks finished earlier, keyed by chunk index

        Returns:
            Results keyed by chunk index

        Raises:
            BudgetExceededError: When a budget runs out; ``partial`` holds the
                results finished so far
        """
        if not self.chunks:
            raise ValueError("No chunks defined. Call set_range() first.")

        results: Dict[int, T] = dict(preloaded or {})
        for chunk in self.chunks:
            if chunk.index in results:
                chunk.completed = True

        pending = [chunk for chunk in self.chunks if not chunk.completed]
        admitted = self._admitted(pending)
        logger.info(
            "%s: %d chunks (%d preloaded, %d to run) on %d worker(s)",
            self.label,
            self.total_chunks,
            self.total_chunks - len(pending),
            len(admitted),
            self.workers,
        )

        self.execution_start_time = time.time()
        bar = tqdm(
            total=self.total_chunks,
            initial=self.completed_chunks,
            desc=self.label,
            unit="chunk",
            disable=not self.progress,
        )
        try:
            if self.workers == 1:
                self._run_serial(task, admitted, results, bar)
            else:
                self._run_pool(task, admitted, results, bar)
        finally:
            bar.close()
            self.execution_end_time = time.time()

        if len(admitted) < len(pending):
            raise BudgetExceededError(
                f"Row budget {self.budget.max_rows} reached after {self.completed_rows} "
                f"of {self.total_rows} rows",
                partial=results,
            )
        return results

    def _finish(self, chunk: SweepChunk, result: T, results: Dict[int, T], bar) -> None:
        chunk.end_time = time.time()
        chunk.completed = True
        results[chunk.index] = result
        if self.completion_callback:
            self.completion_callback(chunk, result)
        bar.update(1)

    def _time_exceeded(self, results: Dict[int, T]) -> BudgetExceededError:
        return BudgetExceededError(
            f"Time budget {self.budget.max_seconds}s exceeded after {self.completed_rows} "
            f"of {self.total_rows} rows",
            partial=results,
        )

    def _run_serial(self, task, admitted: List[SweepChunk], results: Dict[int, T], bar):
        for chunk in admitted:
            if self._out_of_time():
                raise self._time_exceeded(results)
            chunk.start_time = time.time()
            self._finish(chunk, task(chunk.start, chunk.stop), results, bar)

    def _run_pool(self, task, admitted: List[SweepChunk], results: Dict[int, T], bar):
        pool = concurrent.futures.ProcessPoolExecutor(max_workers=self.workers)
        try:
            futures = {}
            for chunk in admitted:
                chunk.start_time = time.time()
                futures[pool.submit(task, chunk.start, chunk.stop)] = chunk
            for future in concurrent.futures.as_completed(futures):
                self._finish(futures[future], future.result(), results, bar)
                if self._out_of_time() and len(results) < self.total_chunks:
                    raise self._time_exceeded(results)
        finally:
            pool.shutdown(wait=True, cancel_futures=True)

    @property
    def total_chunks(self) -> int:
        return len(self.chunks)

    @property
    def completed_chunks(self) -> int:
        return sum(1 for chunk in self.chunks if chunk.completed)

    @property
    def progress_percentage(self) -> float:
        """Execution progress as a percentage (0-100)."""
        if not self.chunks:
            return 0.0
        return (self.completed_chunks / self.total_chunks) * 100.0

    @property
    def total_rows(self) -> int:
        return sum(chunk.rows for chunk in self.chunks)

    @property
    def completed_rows(self) -> int:
        return sum(chunk.rows for chunk in self.chunks if chunk.completed)

    @property
    def total_execution_time(self) -> Optional[float]:
        if self.execution_start_time and self.execution_end_time:
            return self.execution_end_time - self.execution_start_time
        return None

    @property
    def average_chunk_time(self) -> Optional[float]:
        """Average time per chunk run in this execution, in seconds."""
        timed = [chunk.duration for chunk in self.chunks if chunk.completed and chunk.duration]
        if not timed:
            return None
        return sum(timed) / len(timed)

    @property
    def estimated_time_remaining(self) -> Optional[float]:
        avg_time = self.average_chunk_time
        if avg_time is None:
            return None
        return (self.total_chunks - self.completed_chunks) * avg_time / self.workers

    def get_summary(self) -> dict:
        """
        Get a summary of execution metrics.

        Returns:
            Dictionary containing execution statistics
        """
        return {
            "total_chunks": self.total_chunks,
            "completed_chunks": self.completed_chunks,
            "progress_percentage": self.progress_percentage,
            "total_rows": self.total_rows,
            "completed_rows": self.completed_rows,
            "workers": self.workers,
            "total_execution_time_s": self.total_execution_time,
            "average_chunk_time_s": self.average_chunk_time,
            "estimated_time_remaining_s": self.estimated_time_remaining,
        }

    def print_summary(self):
        """Print execution summary to console."""
        summary = self.get_summary()

        print("\n" + "=" * 60)
        print(f"Sweep Execution Summary ({self.label})")
        print("=" * 60)
        print(
            f"Chunks: {summary['completed_chunks']}/{summary['total_chunks']} "
            f"({summary['progress_percentage']:.1f}%)"
        )
        print(f"Rows: {summary['completed_rows']}/{summary['total_rows']}")
        print(f"Workers: {summary['workers']}")

        if summary["total_execution_time_s"]:
            print(f"Total time: {summary['total_execution_time_s']:.2f}s")

        if summary["average_chunk_time_s"]:
            print(f"Average chunk time: {summary['average_chunk_time_s']:.3f}s")

        if summary["estimated_time_remaining_s"]:
            print(f"Estimated remaining: {summary['estimated_time_remaining_s']:.1f}s")

        print("=" * 60)
