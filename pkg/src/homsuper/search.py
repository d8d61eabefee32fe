"""Bounded exhaustive search over structure constants for small algebras
satisfying a given law suite.

Candidates are enumerated in lexicographic order: the twisting-map choice is
the outer digit string (identity only, or diagonal entries over a pool), the
parity-allowed structure constants the inner one, both in the order the
coefficient lists were given.  The search space size is computed up front
and refused when it exceeds the configured bound; an optional time budget
stops the scan early with the partial flag set.  Results are re-buildable
from their candidate index, so the output is deterministic.

The candidate space can be partitioned across worker processes (the
HOMSUPER_WORKERS environment variable); chunks are merged back in index
order, so the result order does not depend on the worker count.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor

from . import identities as idn
from . import serialize
from .kernel import BilinearOp, EvenMap, HomSuperalgebra, SuperSpace, scalar


class SearchSpaceError(ValueError):
    pass


DEFAULT_MAX_SPACE = 10 ** 7


class SearchSpec:
    """What to enumerate: dimensions, coefficient pool, twisting-map family
    (identity or diagonal over a pool), the suite to satisfy, a result cap
    and an optional time budget."""

    def __init__(self, dims, coeffs=("-1", "0", "1"), alpha="id",
                 suite="leibniz", max_results=100, budget_ms=None,
                 max_space=DEFAULT_MAX_SPACE):
        self.dims = (int(dims[0]), int(dims[1]))
        self.coeffs = tuple(scalar(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("empty coefficient set")
        if alpha == "id":
            self.alpha_pool = None
        else:
            self.alpha_pool = tuple(scalar(c) for c in alpha)
            if not self.alpha_pool:
                raise ValueError("empty diagonal pool")
        self.suite = suite
        self.max_results = int(max_results)
        self.budget_ms = budget_ms
        self.max_space = int(max_space)
        self.space = SuperSpace(*self.dims)
        self.slots = _allowed_slots(self.space)

    def alpha_count(self):
        if self.alpha_pool is None:
            return 1
        return len(self.alpha_pool) ** self.space.dim

    def space_size(self):
        return self.alpha_count() * len(self.coeffs) ** len(self.slots)

    def candidate(self, index):
        """Rebuild candidate number `index` (0-based, lexicographic)."""
        constants_count = len(self.coeffs) ** len(self.slots)
        alpha_index, value_index = divmod(index, constants_count)
        if self.alpha_pool is None:
            alpha = EvenMap.identity(self.space)
        else:
            digits = _digits(alpha_index, len(self.alpha_pool),
                             self.space.dim)
            alpha = EvenMap.diagonal(self.space,
                                     [self.alpha_pool[d] for d in digits])
        digits = _digits(value_index, len(self.coeffs), len(self.slots))
        entries = {}
        for slot, digit in zip(self.slots, digits):
            value = self.coeffs[digit]
            if value != 0:
                entries[slot] = value
        product = BilinearOp(self.space, entries=entries)
        name = "search_%d_%d_%d" % (self.dims[0], self.dims[1], index)
        return HomSuperalgebra(self.space, product, alpha, name=name)

    def to_data(self):
        return {
            "dims": self.dims,
            "coeffs": [str(c) for c in self.coeffs],
            "alpha": "id" if self.alpha_pool is None
                     else [str(c) for c in self.alpha_pool],
            "suite": self.suite,
            "max_results": self.max_results,
            "budget_ms": self.budget_ms,
            "max_space": self.max_space,
        }

    @classmethod
    def from_data(cls, data):
        return cls(data["dims"], data["coeffs"], data["alpha"], data["suite"],
                   data["max_results"], data["budget_ms"], data["max_space"])


def _allowed_slots(space):
    slots = []
    n = space.dim
    for i in range(n):
        for j in range(n):
            want = (space.parity(i) + space.parity(j)) % 2
            for k in range(n):
                if space.parity(k) == want:
                    slots.append((i, j, k))
    return slots


def _digits(value, base, width):
    digits = [0] * width
    for pos in range(width - 1, -1, -1):
        value, digits[pos] = divmod(value, base)
    return digits


class SearchOutcome:
    def __init__(self, spec, documents, examined, partial):
        self.spec = spec
        self.documents = documents
        self.examined = examined
        self.partial = partial
        self.space_size = spec.space_size()


def _scan(spec, start, end, deadline, cap):
    """Scan candidate indices [start, end); returns (documents, examined,
    hit_deadline)."""
    documents = []
    examined = 0
    for index in range(start, end):
        if deadline is not None and time.monotonic() > deadline:
            return documents, examined, True
        examined += 1
        algebra = spec.candidate(index)
        if idn.suite_passes(spec.suite, algebra):
            algebra.metadata = {"source": "search", "candidate": index,
                                "expected": {spec.suite: True}}
            documents.append(serialize.algebra_to_document(algebra))
            if cap is not None and len(documents) >= cap:
                return documents, examined, False
    return documents, examined, False


def _scan_worker(args):
    data, start, end, deadline = args
    spec = SearchSpec.from_data(data)
    docs, examined, hit = _scan(spec, start, end, deadline, cap=None)
    return docs, examined, hit


def worker_count():
    try:
        return max(1, int(os.environ.get("HOMSUPER_WORKERS", "1")))
    except ValueError:
        return 1


def run_search(spec):
    """Enumerate the whole space (subject to cap and budget) and keep the
    candidates passing the suite.  Raises SearchSpaceError when the space
    exceeds spec.max_space."""
    size = spec.space_size()
    if size > spec.max_space:
        raise SearchSpaceError(
            "search space has %d candidates, above the bound %d"
            % (size, spec.max_space))
    deadline = None
    if spec.budget_ms is not None:
        deadline = time.monotonic() + spec.budget_ms / 1000.0
    workers = worker_count()
    if workers <= 1 or size < 2 * workers:
        documents, examined, hit = _scan(spec, 0, size, deadline,
                                         spec.max_results)
        return SearchOutcome(spec, documents, examined,
                             hit or examined < size)
    chunk = (size + workers - 1) // workers
    jobs = [(spec.to_data(), start, min(start + chunk, size), deadline)
            for start in range(0, size, chunk)]
    documents = []
    examined = 0
    hit = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for docs, count, chunk_hit in pool.map(_scan_worker, jobs):
            documents.extend(docs)
            examined += count
            hit = hit or chunk_hit
    truncated = len(documents) > spec.max_results
    documents = documents[:spec.max_results]
    return SearchOutcome(spec, documents, examined, hit or truncated)
