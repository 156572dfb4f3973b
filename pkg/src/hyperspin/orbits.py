"""Exhaustive orbit enumeration over all 2^(2g) spin matrices.

States are packed keys (top word in the low g bits, bottom word above) and
the generator actions are evaluated as vectorized bit operations on numpy
arrays, so a full breadth-first partition of the state space stays cheap up
to the enumeration ceiling g = 12 (2^24 states, ~4e8 edge traversals).

Determinism: orbits are seeded in increasing key order and labelled by
their minimum packed key, so the partition, census and all derived tables
are bit-reproducible.  Stabilizer orders are exact integers throughout;
(2g+2)! overflows 64 bits from g = 10 on, so no fixed-width arithmetic is
used for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .braid import apply_generator, apply_word, flip_word
from .gf2 import SpinMatrix, arf
from .normalform import class_index, stabilizer_form

MAX_ENUMERATION_GENUS = 12
MAX_SP_GENUS = 6

_UNSEEN = np.uint32(0xFFFFFFFF)


class SelfCheckError(RuntimeError):
    """An internal cross-check failed; the computed data contradicts itself."""


def _check_enumeration_genus(g: int) -> None:
    if not 1 <= g <= MAX_ENUMERATION_GENUS:
        raise ValueError(
            f"enumeration supports 1 <= g <= {MAX_ENUMERATION_GENUS} "
            f"(2^(2g) states); got g = {g}"
        )


def apply_generator_keys(g: int, i: int, keys: np.ndarray) -> np.ndarray:
    """Vectorized generator action on packed keys."""
    if not 1 <= i <= 2 * g + 1:
        raise ValueError(f"generator index {i} out of range 1..{2 * g + 1}")
    gmask = (1 << g) - 1
    a = keys & gmask
    b = keys >> np.uint32(g)
    if i == 1:
        a = a ^ ((b & 1) ^ 1)
    elif i == 2 * g + 1:
        t = g - 1
        a = a ^ ((((b >> np.uint32(t)) & 1) ^ 1) << np.uint32(t))
    elif i % 2 == 0:
        t = i // 2 - 1
        b = b ^ ((((a >> np.uint32(t)) & 1) ^ 1) << np.uint32(t))
    else:
        t = (i - 1) // 2 - 1
        flip = ((b >> np.uint32(t)) ^ (b >> np.uint32(t + 1)) ^ 1) & 1
        a = a ^ (flip << np.uint32(t)) ^ (flip << np.uint32(t + 1))
    return a | (b << np.uint32(g))


def twist_keys(g: int, gamma_key: int, keys: np.ndarray) -> np.ndarray:
    """Vectorized twist transvection about the class packed in gamma_key."""
    gmask = (1 << g) - 1
    ga = gamma_key & gmask
    gb = gamma_key >> g
    a = keys & gmask
    b = keys >> np.uint32(g)
    value = (
        ((ga & gb).bit_count() & 1)
        ^ (np.bitwise_count(a & np.uint32(ga)) & 1)
        ^ (np.bitwise_count(b & np.uint32(gb)) & 1)
    )
    keep = value.astype(np.uint32)  # twist fixes the structure iff c(gamma) = 1
    flip = keep ^ 1
    a = a ^ (flip * np.uint32(gb))
    b = b ^ (flip * np.uint32(ga))
    return a | (b << np.uint32(g))


def arf_keys(g: int, keys: np.ndarray) -> np.ndarray:
    gmask = (1 << g) - 1
    return np.bitwise_count((keys & gmask) & (keys >> np.uint32(g))) & 1


def _bfs_partition(n: int, expand) -> np.ndarray:
    """Label array for the partition generated by expand(frontier) -> images."""
    labels = np.full(n, _UNSEEN, dtype=np.uint32)
    while True:
        unseen = np.flatnonzero(labels == _UNSEEN)
        if unseen.size == 0:
            return labels
        seed = np.uint32(unseen[0])
        labels[seed] = seed
        frontier = np.array([seed], dtype=np.uint32)
        while frontier.size:
            fresh = []
            for images in expand(frontier):
                new = images[labels[images] == _UNSEEN]
                if new.size:
                    new = np.unique(new)
                    new = new[labels[new] == _UNSEEN]
                    labels[new] = seed
                    fresh.append(new)
            frontier = np.concatenate(fresh) if fresh else np.empty(0, dtype=np.uint32)


@dataclass(frozen=True)
class OrbitPartition:
    """BFS partition of all packed keys under the 2g+1 generators."""

    g: int
    labels: np.ndarray  # labels[key] = minimum key of its orbit

    @property
    def orbit_ids(self) -> tuple[int, ...]:
        return tuple(int(v) for v in np.unique(self.labels))

    @property
    def orbit_count(self) -> int:
        return len(np.unique(self.labels))

    def sizes(self) -> dict[int, int]:
        ids, counts = np.unique(self.labels, return_counts=True)
        return {int(i): int(c) for i, c in zip(ids, counts)}

    def orbit_of(self, matrix: SpinMatrix) -> int:
        if matrix.g != self.g:
            raise ValueError(f"genus mismatch: {matrix.g} != {self.g}")
        return int(self.labels[matrix.key()])


def enumerate_orbits(g: int) -> OrbitPartition:
    """Partition all 2^(2g) spin matrices into generator orbits.

    >>> enumerate_orbits(3).sizes()
    {0: 35, 9: 28, 47: 1}
    """
    _check_enumeration_genus(g)
    generators = list(range(1, 2 * g + 2))

    def expand(frontier: np.ndarray):
        for i in generators:
            yield apply_generator_keys(g, i, frontier)

    labels = _bfs_partition(1 << (2 * g), expand)
    sizes = np.unique(labels, return_counts=True)[1]
    if int(sizes.sum()) != 1 << (2 * g):
        raise SelfCheckError("orbit sizes do not sum to the state count")
    return OrbitPartition(g, labels)


def predicted_orbit_size(g: int, m: int) -> int:
    """Orbit size from the counting argument: C(2g+2, g+1-2m), halved at m=0."""
    if m == 0:
        return math.comb(2 * g + 2, g + 1) // 2
    return math.comb(2 * g + 2, g + 1 - 2 * m)


def predicted_stabilizer_order(g: int, m: int) -> int:
    """Point-stabilizer order: (g+1+2m)! (g+1-2m)!, doubled at m=0."""
    if m == 0:
        return 2 * math.factorial(g + 1) ** 2
    return math.factorial(g + 1 + 2 * m) * math.factorial(g + 1 - 2 * m)


@dataclass(frozen=True)
class OrbitRecord:
    class_index: int | None  # None below genus 3, where reduction is undefined
    size: int
    stabilizer_order: int
    arf: int
    orbit_id: int
    representative: SpinMatrix


def census(g: int, partition: OrbitPartition | None = None) -> tuple[OrbitRecord, ...]:
    """Join the orbit partition with class indices, Arf values and exact orders.

    For g >= 3 each orbit size is checked against the binomial prediction;
    a mismatch raises SelfCheckError since it would contradict the
    classification the package exists to verify.
    """
    if partition is None:
        partition = enumerate_orbits(g)
    elif partition.g != g:
        raise ValueError(f"partition is for genus {partition.g}, not {g}")
    group_order = math.factorial(2 * g + 2)
    records = []
    for orbit_id, size in partition.sizes().items():
        rep = SpinMatrix.from_key(g, orbit_id)
        if group_order % size:
            raise SelfCheckError(f"orbit size {size} does not divide the group order")
        m = class_index(rep) if g >= 3 else None
        records.append(
            OrbitRecord(m, size, group_order // size, arf(rep), orbit_id, rep)
        )
    if g >= 3:
        records.sort(key=lambda r: r.class_index)
        expected = (g + 1) // 2 + 1
        if [r.class_index for r in records] != list(range(expected)):
            raise SelfCheckError(
                f"class indices {[r.class_index for r in records]} are not 0..{expected - 1}"
            )
        for record in records:
            if record.size != predicted_orbit_size(g, record.class_index):
                raise SelfCheckError(
                    f"orbit {record.class_index} has size {record.size}, "
                    f"predicted {predicted_orbit_size(g, record.class_index)}"
                )
            if record.arf != record.class_index % 2:
                raise SelfCheckError(
                    f"orbit {record.class_index} has Arf {record.arf}"
                )
    else:
        records.sort(key=lambda r: r.orbit_id)
    return tuple(records)


@dataclass(frozen=True)
class IsotropyReport:
    g: int
    m: int
    fixing_generators: frozenset[int]
    moving_generator: int | None  # expected non-fixing generator, if in range
    tau_fixes: bool
    predicted_order: int
    observed_order: int | None
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_isotropy(
    g: int, m: int, partition: OrbitPartition | None = None
) -> IsotropyReport:
    """Check the stabilizer of the class-m stabilizer form, column by column.

    Verifies that every generator except s_{g+1+2m} fixes the form, that
    s_{g+1+2m} moves it (when in range), that the order-reversing involution
    fixes the m = 0 form, and that the predicted stabilizer order matches
    the exact order obtained from the orbit size when a partition is
    available.
    """
    if g < 3:
        raise ValueError(f"isotropy verification needs genus >= 3, got {g}")
    form = stabilizer_form(g, m)
    fixing = frozenset(
        i for i in range(1, 2 * g + 2) if apply_generator(form, i) == form
    )
    special = g + 1 + 2 * m
    moving = special if special <= 2 * g + 1 else None
    tau_fixes = apply_word(form, flip_word(g)) == form

    failures = []
    expected_fixing = frozenset(range(1, 2 * g + 2)) - (
        {moving} if moving is not None else frozenset()
    )
    if fixing != expected_fixing:
        unexpected = sorted(expected_fixing ^ fixing)
        failures.append(f"fixing set differs at generators {unexpected}")
    if moving is not None and moving in fixing:
        failures.append(f"generator {moving} unexpectedly fixes the form")
    if m == 0 and not tau_fixes:
        failures.append("order-reversing involution does not fix the m=0 form")

    predicted = predicted_stabilizer_order(g, m)
    observed = None
    if partition is not None:
        if partition.g != g:
            raise ValueError(f"partition is for genus {partition.g}, not {g}")
        size = partition.sizes()[partition.orbit_of(form)]
        observed = math.factorial(2 * g + 2) // size
        if observed != predicted:
            failures.append(f"stabilizer order {observed} != predicted {predicted}")

    return IsotropyReport(
        g, m, fixing, moving, tau_fixes, predicted, observed, tuple(failures)
    )


@dataclass(frozen=True)
class SpPartition:
    """Partition of the state space under all nonzero twist transvections."""

    g: int
    labels: np.ndarray

    def sizes(self) -> dict[int, int]:
        ids, counts = np.unique(self.labels, return_counts=True)
        return {int(i): int(c) for i, c in zip(ids, counts)}


def sp_transvection_orbits(g: int) -> SpPartition:
    """Partition under twists about every nonzero class (the full group).

    Exactly two orbits must appear, with constant Arf and sizes
    2^(g-1) (2^g + 1) and 2^(g-1) (2^g - 1); anything else raises
    SelfCheckError.
    """
    if not 1 <= g <= MAX_SP_GENUS:
        raise ValueError(
            f"transvection enumeration supports 1 <= g <= {MAX_SP_GENUS}; got {g}"
        )
    n = 1 << (2 * g)
    gammas = range(1, n)

    def expand(frontier: np.ndarray):
        for gamma_key in gammas:
            yield twist_keys(g, gamma_key, frontier)

    labels = _bfs_partition(n, expand)
    partition = SpPartition(g, labels)
    sizes = partition.sizes()
    if len(sizes) != 2:
        raise SelfCheckError(f"expected 2 transvection orbits, found {len(sizes)}")
    by_arf = {}
    for orbit_id in sizes:
        members = np.flatnonzero(labels == orbit_id)
        values = np.unique(arf_keys(g, members.astype(np.uint32)))
        if values.size != 1:
            raise SelfCheckError(f"orbit {orbit_id} has non-constant Arf")
        by_arf[int(values[0])] = sizes[orbit_id]
    half = 1 << (g - 1)
    if by_arf != {0: half * ((1 << g) + 1), 1: half * ((1 << g) - 1)}:
        raise SelfCheckError(f"transvection orbit sizes {by_arf} are wrong")
    return partition


def fixed_matrices(g: int) -> tuple[SpinMatrix, ...]:
    """All matrices fixed by every generator (exhaustive, vectorized)."""
    _check_enumeration_genus(g)
    keys = np.arange(1 << (2 * g), dtype=np.uint32)
    fixed = np.ones(keys.shape, dtype=bool)
    for i in range(1, 2 * g + 2):
        fixed &= apply_generator_keys(g, i, keys) == keys
    return tuple(SpinMatrix.from_key(g, int(k)) for k in np.flatnonzero(fixed))
