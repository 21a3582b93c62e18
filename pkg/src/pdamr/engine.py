"""Bit-exact execution of the coded shuffle scheme on synthetic workloads.

The engine runs the full map / shuffle / reduce pipeline that a Comp-PDA
describes, over every (or a sampled set of) active node subsets, counts the
signal bits exactly, and checks the reduced outputs of every active node
against a direct reference evaluation that ignores placement entirely.

The synthetic workload is deterministic and nonlinear: files are FNV-1a
counter streams of the job seed, each intermediate value is the first V bits
of an FNV-1a block stream keyed by (function, file), and each reduce output
hashes the concatenation of its function's intermediate values. Nothing in
the shuffle or reduce path exploits any structure of these functions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bits import Bits, block_stream, le64
from .loads import LoadPair, achieved_load
from .pda import STAR, Pda, column_subarray


class DivisibilityError(ValueError):
    """A job parameter fails a divisibility requirement of the scheme."""

    def __init__(self, message: str, divisor: int | None = None, value: int | None = None):
        self.divisor = divisor
        self.value = value
        super().__init__(message)


@dataclass(frozen=True)
class JobSpec:
    """Synthetic workload: N files of W bits, D output functions with V-bit
    intermediate values and U-bit outputs, all derived from ``seed``.

    A job is run against a PDA with F rows, which partitions the files into F
    batches of eta = N/F files; F must divide N. The active-set size Q must
    divide D, and lcm(1..Q-1) must divide eta*(D/Q)*V so that every coded
    block splits into equal parts on bit boundaries. Those two checks happen
    when an active set is planned, since they need F and Q.
    """

    n_files: int
    d_functions: int
    w_bits: int
    v_bits: int
    u_bits: int
    seed: int = 0

    def __post_init__(self):
        for name in ("n_files", "d_functions", "w_bits", "v_bits", "u_bits"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


class Workload:
    """Lazy cache of files, intermediate values, and reference outputs for a job.

    One instance can be shared across the transcripts of many active sets;
    everything it produces is a pure function of the job.
    """

    def __init__(self, job: JobSpec):
        self.job = job
        self._files: dict[int, Bits] = {}
        self._ivas: dict[tuple[int, int], Bits] = {}
        self._reference: dict[int, Bits] | None = None

    def file(self, n: int) -> Bits:
        """File n (1-based), W bits from the seeded counter stream."""
        if n not in self._files:
            self._files[n] = block_stream(
                le64(self.job.seed) + le64(n), b"", self.job.w_bits)
        return self._files[n]

    def iva(self, d: int, n: int) -> Bits:
        """Intermediate value of function d on file n: first V bits of the
        block stream keyed by LE64(d) || LE64(n) over the file bytes."""
        key = (d, n)
        if key not in self._ivas:
            self._ivas[key] = block_stream(
                le64(d) + le64(n), self.file(n).to_bytes(), self.job.v_bits)
        return self._ivas[key]

    def reduce_output(self, d: int, ivas: list[Bits]) -> Bits:
        """Reduce function d: first U bits of the block stream keyed by LE64(d)
        over the concatenation of the N intermediate values of d."""
        if len(ivas) != self.job.n_files:
            raise ValueError("reduce needs one intermediate value per file")
        payload = Bits.concat(ivas).to_bytes()
        return block_stream(le64(d), payload, self.job.u_bits)

    def reference(self) -> dict[int, Bits]:
        """Every output computed directly from all files, ignoring placement."""
        if self._reference is None:
            self._reference = {
                d: self.reduce_output(
                    d, [self.iva(d, n) for n in range(1, self.job.n_files + 1)])
                for d in range(1, self.job.d_functions + 1)
            }
        return self._reference


def reference_oracle(job: JobSpec) -> dict[int, Bits]:
    """Ground-truth outputs of all D functions, computed without any placement
    or shuffling. Transcript verification compares against this."""
    return Workload(job).reference()


@dataclass(frozen=True)
class Placement:
    """Which batches (hence files) each node stores, from the stars of the
    full PDA only; the active set plays no role here."""

    eta: int
    node_rows: dict[int, tuple[int, ...]]   # node -> 0-based batch rows
    node_files: dict[int, tuple[int, ...]]  # node -> 1-based file ids


def batch_files(row: int, eta: int) -> range:
    """1-based file ids of 0-based batch ``row``."""
    return range(row * eta + 1, (row + 1) * eta + 1)


def build_placement(pda: Pda, job: JobSpec) -> Placement:
    """Assign file batches to nodes by the star pattern of the PDA."""
    if job.n_files % pda.f != 0:
        raise DivisibilityError(
            f"row count {pda.f} must divide the number of files {job.n_files}",
            divisor=pda.f, value=job.n_files)
    eta = job.n_files // pda.f
    node_rows = {k: pda.star_rows(k - 1) for k in range(1, pda.k + 1)}
    node_files = {
        k: tuple(n for row in rows for n in batch_files(row, eta))
        for k, rows in node_rows.items()
    }
    return Placement(eta=eta, node_rows=node_rows, node_files=node_files)


def storage_profile(placement: Placement) -> dict[int, int]:
    """How many files are stored at exactly u nodes, for each occurring u."""
    copies: dict[int, int] = {}
    for files in placement.node_files.values():
        for n in files:
            copies[n] = copies.get(n, 0) + 1
    profile: dict[int, int] = {}
    for count in copies.values():
        profile[count] = profile.get(count, 0) + 1
    return dict(sorted(profile.items()))


@dataclass(frozen=True)
class ActiveSetPlan:
    """Deterministic shuffle plan for one active set.

    ``occurrences`` maps each surviving symbol to its positions (0-based row,
    1-based node label) inside the active columns. Symbols occurring once go
    to ``singleton_assignment`` (symbol -> responsible sender, the smallest
    active node with a star in that row); symbols occurring g >= 2 times
    appear in ``coded_symbols`` for each of their columns, and every
    occurrence (row, node) has a ``split_plan`` entry listing the other
    occurrence columns in ascending order, which label the g-1 equal parts of
    its block.
    """

    active: tuple[int, ...]
    subarray: Pda
    occurrences: dict[int, tuple[tuple[int, int], ...]]
    singleton_assignment: dict[int, int]
    coded_symbols: dict[int, tuple[int, ...]]
    split_plan: dict[tuple[int, int], tuple[int, ...]]
    reduce_assignment: dict[int, tuple[int, ...]]


def plan_active_set(pda: Pda, active, job: JobSpec) -> ActiveSetPlan:
    """Build the shuffle/reduce plan for ``active`` (1-based node labels).

    Checks the divisibility preconditions that depend on Q, and raises
    EmptyStarRowError if the restriction to the active columns leaves a row
    uncovered (the excluded outage case).
    """
    active = tuple(sorted(set(active)))
    q = len(active)
    subarray = column_subarray(pda, active)

    if job.d_functions % q != 0:
        raise DivisibilityError(
            f"active-set size {q} must divide the number of functions {job.d_functions}",
            divisor=q, value=job.d_functions)
    if job.n_files % pda.f != 0:
        raise DivisibilityError(
            f"row count {pda.f} must divide the number of files {job.n_files}",
            divisor=pda.f, value=job.n_files)
    eta = job.n_files // pda.f
    block_bits = eta * (job.d_functions // q) * job.v_bits
    need = math.lcm(*range(1, q)) if q > 1 else 1
    if block_bits % need != 0:
        raise DivisibilityError(
            f"lcm(1..{q - 1}) = {need} must divide eta*(D/Q)*V = {block_bits} "
            f"so coded blocks split evenly",
            divisor=need, value=block_bits)

    occurrences: dict[int, list[tuple[int, int]]] = {}
    for i in range(pda.f):
        for k in active:
            entry = pda.grid[i][k - 1]
            if entry != STAR:
                occurrences.setdefault(entry, []).append((i, k))

    singleton_assignment: dict[int, int] = {}
    coded_symbols: dict[int, list[int]] = {k: [] for k in active}
    split_plan: dict[tuple[int, int], tuple[int, ...]] = {}
    for sym in sorted(occurrences):
        places = occurrences[sym]
        if len(places) == 1:
            i = places[0][0]
            sender = min(k for k in active if pda.grid[i][k - 1] == STAR)
            singleton_assignment[sym] = sender
        else:
            columns = sorted(k for _, k in places)
            for i, k in places:
                coded_symbols[k].append(sym)
                split_plan[(i, k)] = tuple(c for c in columns if c != k)

    functions = range(1, job.d_functions + 1)
    reduce_assignment = {
        k: tuple(functions[p::q]) for p, k in enumerate(active)
    }

    return ActiveSetPlan(
        active=active,
        subarray=subarray,
        occurrences={sym: tuple(places) for sym, places in sorted(occurrences.items())},
        singleton_assignment=singleton_assignment,
        coded_symbols={k: tuple(v) for k, v in coded_symbols.items()},
        split_plan=split_plan,
        reduce_assignment=reduce_assignment,
    )


@dataclass(frozen=True)
class TranscriptReport:
    """One full map/shuffle/reduce run for one active set.

    ``signals`` holds the multicast payloads keyed by (sender, symbol);
    ``outputs`` the reduced outputs per active node; ``reference_match``
    whether every output equals the placement-free reference evaluation.
    """

    active: tuple[int, ...]
    signals: dict[tuple[int, int], Bits]
    per_node_bits: dict[int, int]
    per_symbol_bits: dict[int, int]
    total_bits: int
    outputs: dict[int, dict[int, Bits]]
    reference_match: bool


def run_transcript(pda: Pda, job: JobSpec, active,
                   workload: Workload | None = None) -> TranscriptReport:
    """Execute the scheme for one active set and verify the reduced outputs.

    Map: every node computes all intermediate values of its stored batches.
    Shuffle: singleton symbols are sent uncoded by their responsible node;
    each block under a g >= 2 symbol is split into g-1 labeled parts and each
    occurrence column XORs the parts labeled with it across the other
    occurrences. Reduce: nodes rebuild the blocks of their unstored batches
    from the signals plus locally computed parts, then evaluate their assigned
    reduce functions.
    """
    wl = workload if workload is not None else Workload(job)
    if wl.job != job:
        raise ValueError("workload belongs to a different job")
    plan = plan_active_set(pda, active, job)
    placement = build_placement(pda, job)
    eta = placement.eta

    def block(i: int, j: int) -> Bits:
        """Intermediate values node j needs from batch i, (d, n) ascending."""
        return Bits.concat(wl.iva(d, n)
                           for d in plan.reduce_assignment[j]
                           for n in batch_files(i, eta))

    def part_label_index(i: int, j: int, label: int) -> int:
        return plan.split_plan[(i, j)].index(label)

    signals: dict[tuple[int, int], Bits] = {}
    for k in plan.active:
        stored = set(placement.node_rows[k])
        for sym, sender in plan.singleton_assignment.items():
            if sender != k:
                continue
            (i, j), = plan.occurrences[sym]
            assert i in stored  # sender has a star in the symbol's row
            signals[(k, sym)] = block(i, j)
        for sym in plan.coded_symbols[k]:
            places = plan.occurrences[sym]
            g = len(places)
            acc = None
            for i, j in places:
                if j == k:
                    continue
                assert i in stored  # guaranteed by the cross-star rule
                piece = block(i, j).split(g - 1)[part_label_index(i, j, k)]
                acc = piece if acc is None else acc ^ piece
            signals[(k, sym)] = acc

    per_node_bits = {k: 0 for k in plan.active}
    per_symbol_bits: dict[int, int] = {}
    for (k, sym), payload in signals.items():
        per_node_bits[k] += len(payload)
        per_symbol_bits[sym] = per_symbol_bits.get(sym, 0) + len(payload)
    total_bits = sum(per_node_bits.values())

    outputs: dict[int, dict[int, Bits]] = {}
    for k in plan.active:
        stored = set(placement.node_rows[k])
        known: dict[tuple[int, int], Bits] = {}
        for i in stored:
            for d in plan.reduce_assignment[k]:
                for n in batch_files(i, eta):
                    known[(d, n)] = wl.iva(d, n)
        for i in range(pda.f):
            if i in stored:
                continue
            sym = pda.grid[i][k - 1]
            places = plan.occurrences[sym]
            g = len(places)
            if g == 1:
                decoded = signals[(plan.singleton_assignment[sym], sym)]
            else:
                labels = plan.split_plan[(i, k)]
                parts = []
                for label in labels:
                    acc = signals[(label, sym)]
                    for i2, j2 in places:
                        if (i2, j2) == (i, k) or j2 == label:
                            continue
                        assert i2 in stored  # cross-star rule again
                        piece = block(i2, j2).split(g - 1)[part_label_index(i2, j2, label)]
                        acc = acc ^ piece
                    parts.append(acc)
                decoded = Bits.concat(parts)
            pieces = decoded.split(len(plan.reduce_assignment[k]) * eta)
            pairs = [(d, n) for d in plan.reduce_assignment[k] for n in batch_files(i, eta)]
            for pair, piece in zip(pairs, pieces):
                known[pair] = piece
        outputs[k] = {
            d: wl.reduce_output(d, [known[(d, n)] for n in range(1, job.n_files + 1)])
            for d in plan.reduce_assignment[k]
        }

    reference = wl.reference()
    match = all(outputs[k][d] == reference[d]
                for k in plan.active for d in plan.reduce_assignment[k])

    return TranscriptReport(
        active=plan.active,
        signals=signals,
        per_node_bits=per_node_bits,
        per_symbol_bits=dict(sorted(per_symbol_bits.items())),
        total_bits=total_bits,
        outputs=outputs,
        reference_match=match,
    )


@dataclass(frozen=True)
class LoadReport:
    """Measured loads over active sets against the closed-form prediction.

    In exhaustive mode the average runs over all C(K,Q) active sets with
    exact rational arithmetic and ``match`` demands equality with the closed
    form; in sample mode the average covers the drawn sets only and ``match``
    is informational.
    """

    mode: str  # "exhaustive" or "sample"
    q_active: int
    r_measured: Fraction
    l_measured: Fraction
    per_active_set: tuple[tuple[tuple[int, ...], int], ...]
    closed_form: LoadPair
    match: bool
    all_reference_match: bool


def measure_loads(pda: Pda, job: JobSpec, q_active: int,
                  samples: int | None = None, seed: int = 0) -> LoadReport:
    """Run transcripts over active sets of size ``q_active`` and compare the
    measured communication load with the closed-form value.

    ``samples=None`` enumerates all C(K,Q) sets; otherwise that many sets are
    drawn uniformly with replacement using ``seed``.
    """
    if not 1 <= q_active <= pda.k:
        raise ValueError(f"q_active must be in 1..{pda.k}, got {q_active}")
    closed_form = achieved_load(pda, q_active)

    all_sets = list(combinations(range(1, pda.k + 1), q_active))
    if samples is None:
        chosen = all_sets
        mode = "exhaustive"
    else:
        if samples < 1:
            raise ValueError("samples must be >= 1")
        rng = random.Random(seed)
        chosen = [rng.choice(all_sets) for _ in range(samples)]
        mode = "sample"

    wl = Workload(job)
    placement = build_placement(pda, job)
    per_active_set = []
    total = 0
    all_match = True
    for active in chosen:
        report = run_transcript(pda, job, active, workload=wl)
        per_active_set.append((report.active, report.total_bits))
        total += report.total_bits
        all_match = all_match and report.reference_match

    stored = sum(len(files) for files in placement.node_files.values())
    r_measured = Fraction(stored, job.n_files)
    l_measured = Fraction(total, len(chosen)) / (job.n_files * job.d_functions * job.v_bits)

    return LoadReport(
        mode=mode,
        q_active=q_active,
        r_measured=r_measured,
        l_measured=l_measured,
        per_active_set=tuple(per_active_set),
        closed_form=closed_form,
        match=(l_measured == closed_form.l and r_measured == closed_form.r),
        all_reference_match=all_match,
    )


def minimal_valid_v(pda: Pda, job: JobSpec, q_active: int) -> int:
    """Smallest V >= job.v_bits satisfying the split-divisibility condition
    lcm(1..Q-1) | eta*(D/Q)*V for this PDA and active-set size."""
    if job.n_files % pda.f != 0:
        raise DivisibilityError(
            f"row count {pda.f} must divide the number of files {job.n_files}",
            divisor=pda.f, value=job.n_files)
    if job.d_functions % q_active != 0:
        raise DivisibilityError(
            f"active-set size {q_active} must divide the number of functions "
            f"{job.d_functions}", divisor=q_active, value=job.d_functions)
    per_bit = (job.n_files // pda.f) * (job.d_functions // q_active)
    need = math.lcm(*range(1, q_active)) if q_active > 1 else 1
    step = need // math.gcd(need, per_bit)
    return ((job.v_bits + step - 1) // step) * step
