"""Synthetic low-rank + sparse recovery experiments.

Each trial draws two complex matrices M = X Y* + S (X, Y with i.i.d.
complex-normal entries of total variance 1/m, S with Bernoulli support and
uniformly random unit-modulus phases), embeds the pair into one hypercomplex
matrix, runs principal component pursuit with lambda = 1/sqrt(m), and calls
a part recovered when the relative error of its low-rank estimate beats a
threshold.  A grid runner sweeps (rank, density) cells and emits success
fractions as CSV.

All randomness is derived from (base seed, embedding, rank, density, trial,
instance) through counter-based Philox streams, so results are reproducible
and independent of the worker-pool size (capped by POLARPCP_THREADS).
"""

from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .hyperalgebra import COMPLEX, REAL
from .hypermatrix import HyperMatrix
from .solvers import SolverConfig, pcp_ialm, tensor_rpca

POLAR4COMPLEX = "polar4complex"
POLAR2BICOMPLEX = "polar2bicomplex"
EMBEDDINGS = (POLAR4COMPLEX, POLAR2BICOMPLEX)
PARTS = ("M1", "M2")
VARIANTS = ("polar", "tensor-rpca")

_GRID_FRACTIONS = tuple(round(0.02 * i, 2) for i in range(1, 11))


@dataclass(frozen=True)
class TrialSpec:
    """Configuration of a phase-transition experiment."""

    m: int = 100
    ranks: tuple[int, ...] | None = None
    rhos: tuple[float, ...] | None = None
    epsilons: tuple[float, ...] = (0.1, 0.05, 0.01)
    embeddings: tuple[str, ...] = EMBEDDINGS
    trials: int = 10
    seed: int = 0
    variant: str = "polar"
    c: float = 1.0
    tol: float = 1e-7
    max_iters: int = 1000

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.ranks is None:
            object.__setattr__(
                self, "ranks", tuple(max(1, round(f * self.m)) for f in _GRID_FRACTIONS)
            )
        if self.rhos is None:
            object.__setattr__(self, "rhos", _GRID_FRACTIONS)
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "rhos", tuple(float(r) for r in self.rhos))
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        object.__setattr__(self, "embeddings", tuple(self.embeddings))
        for r in self.ranks:
            if not 0 < r <= self.m:
                raise ValueError(f"rank {r} outside (0, m={self.m}]")
        for rho in self.rhos:
            if not 0.0 <= rho <= 1.0:
                raise ValueError(f"density {rho} outside [0, 1]")
        for eps in self.epsilons:
            if not 0.0 < eps < 1.0:
                raise ValueError(f"threshold {eps} outside (0, 1)")
        if not self.epsilons:
            raise ValueError("at least one threshold is required")
        for emb in self.embeddings:
            if emb not in EMBEDDINGS:
                raise ValueError(f"unknown embedding {emb!r}")
        if not self.embeddings:
            raise ValueError("at least one embedding is required")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")

    def solver_config(self):
        return SolverConfig(c=self.c, tol=self.tol, max_iters=self.max_iters)


def _instance_rng(seed, embedding, r, rho, trial, instance):
    """Philox stream keyed by every coordinate of the draw."""
    key = (
        EMBEDDINGS.index(embedding),
        int(r),
        int(round(rho * 1e9)),
        int(trial),
        int(instance),
    )
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=key))
    )


def gen_low_rank_sparse(m, r, rho, seed):
    """Draw one instance of the low-rank + sparse model.

    Returns (M, L0, S0) with L0 = X Y* for m x r complex-normal X, Y of total
    entry variance 1/m, and S0 supported on i.i.d. Bernoulli(rho) cells with
    unit-modulus uniformly-phased values.  ``seed`` may be an integer or a
    numpy Generator.
    """
    if m < 1 or not 0 < r <= m:
        raise ValueError(f"invalid dimensions m={m}, r={r}")
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"density {rho} outside [0, 1]")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    scale = 1.0 / math.sqrt(2 * m)
    X = (rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))) * scale
    Y = (rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))) * scale
    L0 = X @ Y.conj().T
    support = rng.random((m, m)) < rho
    phases = np.exp(2j * math.pi * rng.random((m, m)))
    S0 = np.where(support, phases, 0.0 + 0.0j)
    return L0 + S0, L0, S0


def embed(M1, M2, mode):
    """Combine two complex matrices into one hypercomplex matrix.

    polar4complex stacks [Re M1, Im M1, Re M2, Im M2] as a real 4-tube;
    polar2bicomplex stacks [M1, M2] as a complex 2-tube.
    """
    M1 = np.asarray(M1, dtype=np.complex128)
    M2 = np.asarray(M2, dtype=np.complex128)
    if M1.shape != M2.shape or M1.ndim != 2:
        raise ValueError("embed expects two complex matrices of equal shape")
    if mode == POLAR4COMPLEX:
        data = np.stack([M1.real, M1.imag, M2.real, M2.imag], axis=2)
        return HyperMatrix(data, REAL)
    if mode == POLAR2BICOMPLEX:
        return HyperMatrix(np.stack([M1, M2], axis=2), COMPLEX)
    raise ValueError(f"unknown embedding {mode!r}")


def extract(H, mode):
    """Invert embed exactly (no arithmetic performed)."""
    if mode == POLAR4COMPLEX:
        if H.field != REAL or H.n != 4:
            raise ValueError("polar4complex extraction needs a real 4-tube matrix")
        d = H.data
        return d[:, :, 0] + 1j * d[:, :, 1], d[:, :, 2] + 1j * d[:, :, 3]
    if mode == POLAR2BICOMPLEX:
        if H.field != COMPLEX or H.n != 2:
            raise ValueError("polar2bicomplex extraction needs a complex 2-tube matrix")
        return H.data[:, :, 0].copy(), H.data[:, :, 1].copy()
    raise ValueError(f"unknown embedding {mode!r}")


@dataclass(frozen=True)
class TrialOutcome:
    """Relative low-rank recovery errors of one trial's two parts."""

    error_m1: float
    error_m2: float

    def error(self, part):
        return self.error_m1 if part == "M1" else self.error_m2

    def success(self, epsilon, part):
        return self.error(part) < epsilon


def run_trial(spec, r, rho, embedding, trial):
    """Generate, embed, decompose, and score one trial."""
    gens = [
        gen_low_rank_sparse(
            spec.m, r, rho, _instance_rng(spec.seed, embedding, r, rho, trial, inst)
        )
        for inst in (0, 1)
    ]
    (M1, L01, _), (M2, L02, _) = gens
    H = embed(M1, M2, embedding)
    solve = tensor_rpca if spec.variant == "tensor-rpca" else pcp_ialm
    result = solve(H, spec.solver_config())
    L1, L2 = extract(result.L, embedding)
    e1 = np.linalg.norm(L1 - L01) / np.linalg.norm(L01)
    e2 = np.linalg.norm(L2 - L02) / np.linalg.norm(L02)
    return TrialOutcome(float(e1), float(e2))


@dataclass(frozen=True)
class CellResult:
    """All trial outcomes of one (embedding, rank, density) cell."""

    embedding: str
    r: int
    rho: float
    outcomes: tuple[TrialOutcome, ...]
    runtime: float

    def successes(self, epsilon, part):
        return sum(o.success(epsilon, part) for o in self.outcomes)


@dataclass(frozen=True)
class GridResult:
    spec: TrialSpec
    cells: tuple[CellResult, ...]

    def cell(self, embedding, r, rho):
        for c in self.cells:
            if c.embedding == embedding and c.r == r and c.rho == rho:
                return c
        raise KeyError((embedding, r, rho))

    def fraction(self, embedding, r, rho, epsilon, part):
        c = self.cell(embedding, r, rho)
        return c.successes(epsilon, part) / len(c.outcomes)


def _pool_size():
    env = os.environ.get("POLARPCP_THREADS")
    if env is not None:
        size = int(env)
        if size < 1:
            raise ValueError("POLARPCP_THREADS must be >= 1")
        return size
    return os.cpu_count() or 1


def run_grid(spec):
    """Run every (embedding, rank, density) cell of the grid.

    Trials execute on a thread pool; aggregation order is fixed by the cell
    and trial indices, so the output is independent of scheduling.
    """
    cells = [
        (emb, r, rho) for emb in spec.embeddings for r in spec.ranks for rho in spec.rhos
    ]
    jobs = [(cell, t) for cell in cells for t in range(spec.trials)]

    def work(job):
        (emb, r, rho), t = job
        start = time.perf_counter()
        outcome = run_trial(spec, r, rho, emb, t)
        return job, outcome, time.perf_counter() - start

    workers = min(_pool_size(), len(jobs))
    if workers <= 1:
        finished = [work(job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            finished = list(pool.map(work, jobs))
    results = {}
    runtimes = {}
    for job, outcome, elapsed in finished:
        cell, t = job
        results[(cell, t)] = outcome
        runtimes[cell] = runtimes.get(cell, 0.0) + elapsed

    out = []
    for cell in cells:
        emb, r, rho = cell
        outcomes = tuple(results[(cell, t)] for t in range(spec.trials))
        out.append(CellResult(emb, r, rho, outcomes, runtimes[cell]))
    return GridResult(spec, tuple(out))


def write_csv(grid, path):
    """Emit success counts, one row per (embedding, r, rho, epsilon, part)."""
    spec = grid.spec
    rows = []
    for cell in grid.cells:
        for eps in spec.epsilons:
            for part in PARTS:
                rows.append(
                    (
                        cell.embedding,
                        cell.r,
                        cell.rho,
                        eps,
                        part,
                        cell.successes(eps, part),
                        spec.trials,
                        spec.seed,
                    )
                )
    rows.sort(key=lambda row: row[:5])
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["embedding", "r", "rho", "epsilon", "part", "successes", "trials", "seed"])
        writer.writerows(rows)
