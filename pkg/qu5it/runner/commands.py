"""Subcommand implementations: spectrum, evolve, resources, signprob, verify, bench."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from qu5it.algebra.so5 import N_DIAG, PAIRS_DIAG, TZ_DIAG
from qu5it.compiler.ir import circuit_to_text, execute
from qu5it.compiler.prep import prep_single, prepare
from qu5it.compiler.resources import count_resources, tally_circuit
from qu5it.compiler.trotter import evolve_trotter, trotter_circuit
from qu5it.engine.sampling import diagonal_from_histogram, sample, survival_from_histogram
from qu5it.engine.state import StateVector, init_basis_state, product_state
from qu5it.mappings.costs import GENERIC_COUPLINGS, MAPPINGS, comparison_table, mapping_blocks, term_costs
from qu5it.mappings.encodings import one_body_ladder, two_body_ladder
from qu5it.model.couplings import ModelInstance
from qu5it.model.spectrum import SPECTRUM_HEADER, spectrum_rows
from qu5it.model.states import initial_digits
from qu5it.models import ExperimentConfig
from qu5it.oracle.evolution import ObservableRow, get_evolver, long_time_statistics, observables, sign_diagnostics
from qu5it.runner.outputs import new_manifest, render, stage, write_outputs
from qu5it.runner.verify import run_suite

logger = logging.getLogger(__name__)

OBSERVABLE_HEADER = ("t", "survival", "pairs", "sz", "n", "evolver", "n_trot", "shots")


@dataclass
class CommandResult:
    """What a subcommand wrote and how the process should exit."""

    command: str
    paths: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    report: str = ""
    exit_code: int = 0


def run_jobs(jobs: Dict[Hashable, Callable[[], Any]], workers: int = 1) -> List[Tuple[Hashable, Any]]:
    """
    Run independent jobs, sequentially or on a thread pool.

    Results come back sorted by job key regardless of completion order.
    """
    if workers <= 1 or len(jobs) <= 1:
        results = {key: job() for key, job in jobs.items()}
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {key: pool.submit(job) for key, job in jobs.items()}
            results = {key: future.result() for key, future in futures.items()}
    return sorted(results.items(), key=lambda item: item[0])


def _output_dir(config: ExperimentConfig) -> Path:
    return Path(config.output.directory)


def _stem(config: ExperimentConfig, default: str) -> str:
    return config.output.stem or default


def _initial_state(config: ExperimentConfig) -> Tuple[StateVector, Optional[List[int]]]:
    """Initial register state and, for basis states, its digits."""
    spec = config.initial_state
    n = config.model.omega // 2
    if spec.digits is not None:
        return init_basis_state(n, spec.digits), list(spec.digits)
    if spec.prep_angles is not None:
        single = prepare(prep_single(spec.prep_angles)).amplitudes
        return product_state([single] * n), None
    digits = initial_digits(config.model.omega, spec.label)
    return init_basis_state(n, digits), digits


# ==================== SPECTRUM ====================

def cmd_spectrum(config: ExperimentConfig) -> CommandResult:
    spec = config.spectrum
    manifest = new_manifest("spectrum", config, config.evolution.seed)
    jobs = {
        (omega, name): (lambda omega=omega, name=name: spectrum_rows([omega], [name], spec.particle_numbers, spec.k))
        for omega in spec.omegas
        for name in spec.presets
    }
    with stage(manifest, "spectrum"):
        results = run_jobs(jobs, config.jobs)
    rows = [row for _, block in results for row in block]
    summary = {
        "rows": len(rows),
        "ground_densities": {
            f"omega={omega},{name},N={n}": density
            for omega, n, name, level, density in rows if level == 0
        },
    }
    paths = write_outputs(_output_dir(config), _stem(config, "spectrum"), manifest, SPECTRUM_HEADER, rows,
                          summary, config.output.formats)
    return CommandResult("spectrum", paths, summary)


# ==================== EVOLVE ====================

def _row_values(row: ObservableRow) -> Tuple:
    return (row.t, row.survival, row.pairs, row.sz, row.n, row.evolver, row.n_trot, row.shots)


def _shot_row(state: StateVector, digits: Optional[Sequence[int]], t: float, shots: int, seed: int,
              evolver: str, n_trot: int) -> ObservableRow:
    histogram = sample(state, shots, seed)
    survival = survival_from_histogram(histogram, digits) if digits is not None else float("nan")
    return ObservableRow(
        t=float(t),
        survival=survival,
        pairs=diagonal_from_histogram(histogram, PAIRS_DIAG)[0],
        sz=diagonal_from_histogram(histogram, TZ_DIAG)[0],
        n=diagonal_from_histogram(histogram, N_DIAG)[0],
        evolver=evolver,
        n_trot=n_trot,
        shots=shots,
    )


def _series(model: ModelInstance, state0: StateVector, digits: Optional[Sequence[int]], grid: Sequence[float],
            n_trot: int, backend: str, shots: int, seed: int) -> List[ObservableRow]:
    """Exact (n_trot = 0) or Trotter series, followed by its shot-sampled companion."""
    if n_trot == 0:
        states = get_evolver(model).evolve_many(state0, grid)
        evolver = "exact"
    else:
        states = [evolve_trotter(model, state0, t, n_trot, backend) for t in grid]
        evolver = "trotter"
    rows = [observables(state0, state, t, evolver=evolver, n_trot=n_trot) for state, t in zip(states, grid)]
    if shots > 0:
        rows += [
            _shot_row(state, digits, t, shots, seed + k, evolver, n_trot)
            for k, (state, t) in enumerate(zip(states, grid))
        ]
    return rows


def _max_errors(rows: Sequence[ObservableRow], reference: Sequence[ObservableRow]) -> Dict[str, float]:
    return {
        name: float(max(abs(getattr(a, name) - getattr(b, name)) for a, b in zip(rows, reference)))
        for name in ("survival", "pairs", "sz", "n")
    }


def cmd_evolve(config: ExperimentConfig) -> CommandResult:
    evolution = config.evolution
    model = config.model.instance()
    state0, digits = _initial_state(config)
    grid = evolution.grid()
    manifest = new_manifest("evolve", config, evolution.seed)
    logger.info(f"evolving omega={model.omega} ({model.n_qudits} qu5its) over {len(grid)} times")

    step_counts = [0] + sorted(set(evolution.n_trot))
    jobs = {
        n: (lambda n=n, j=j: _series(model, state0, digits, grid, n, evolution.backend, evolution.shots,
                                     evolution.seed + j * len(grid)))
        for j, n in enumerate(step_counts)
    }
    with stage(manifest, "evolve"):
        results = dict(run_jobs(jobs, config.jobs))

    exact = [row for row in results[0] if row.shots == 0]
    summary: Dict[str, Any] = {
        "omega": model.omega,
        "couplings": asdict(model.couplings),
        "min_survival": min(row.survival for row in exact),
        "long_time": long_time_statistics(exact),
        "trotter_max_error": {
            str(n): _max_errors([row for row in results[n] if row.shots == 0], exact)
            for n in step_counts[1:]
        },
    }

    if config.output.emit_circuit and step_counts[1:]:
        with stage(manifest, "emit-circuit"):
            circuit = trotter_circuit(model, evolution.t_max, step_counts[-1], evolution.backend)
            path = Path(config.output.emit_circuit)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(circuit_to_text(circuit), encoding="utf-8")
        summary["circuit"] = {"path": str(path), "gates": len(circuit), "tally": tally_circuit(circuit).as_dict()}
        logger.info(f"✅ wrote circuit IR ({len(circuit)} gates) to {path}")
    elif config.output.emit_circuit:
        logger.warning("⚠️  --emit-circuit needs at least one Trotter step count; no circuit written")

    rows = [_row_values(row) for n in step_counts for row in results[n]]
    stem = _stem(config, f"evolve_omega{model.omega}")
    paths = write_outputs(_output_dir(config), stem, manifest, OBSERVABLE_HEADER, rows, summary,
                          config.output.formats)
    return CommandResult("evolve", paths, summary)


# ==================== RESOURCES ====================

def _block_report(mapping: str) -> List[Dict[str, Any]]:
    one, two = mapping_blocks(mapping)
    blocks = []
    for name, total, ladder in (("one-body", one, one_body_ladder), ("two-body", two, two_body_ladder)):
        blocks.append({
            "mapping": mapping,
            "name": name,
            "h": total.h,
            "rz": total.rz,
            "cnot": total.cnot,
            "rows": term_costs(ladder(mapping, GENERIC_COUPLINGS)),
        })
    return blocks


def cmd_resources(config: ExperimentConfig) -> CommandResult:
    spec = config.resources
    manifest = new_manifest("resources", config, config.evolution.seed)
    with stage(manifest, "count"):
        table = comparison_table(spec.omegas, spec.backends)
    rows = [(row.omega, row.mapping, row.hilbert_dim, row.entangling) for row in table]

    names = [f"qu5it-{backend}" for backend in spec.backends] + list(MAPPINGS)
    by_omega: Dict[int, Dict[str, int]] = {}
    for row in table:
        by_omega.setdefault(row.omega, {})[row.mapping] = row.entangling
    blocks = [block for mapping in MAPPINGS for block in _block_report(mapping)]

    summary = {
        "qu5it": {
            str(omega): {backend: count_resources(omega, backend).as_dict() for backend in spec.backends}
            for omega in spec.omegas
        },
        "blocks": {
            f"{block['mapping']} {block['name']}": [block["h"], block["rz"], block["cnot"]] for block in blocks
        },
    }
    report = render("resources.txt.j2", mappings=names, table=sorted(by_omega.items()), blocks=blocks)
    paths = write_outputs(_output_dir(config), _stem(config, "resources"), manifest,
                          ("omega", "mapping", "hilbert_dim", "entangling"), rows, summary, config.output.formats)
    return CommandResult("resources", paths, summary, report)


# ==================== SIGN DIAGNOSTICS ====================

def cmd_signprob(config: ExperimentConfig) -> CommandResult:
    model = config.model.instance()
    state0, _ = _initial_state(config)
    t = config.evolution.t_max
    manifest = new_manifest("signprob", config, config.evolution.seed)
    with stage(manifest, "evolve"):
        state = get_evolver(model).evolve(state0, t)
    diagnostics = sign_diagnostics(state)

    rows = [("probability", rank, value) for rank, value in enumerate(diagnostics.probabilities)]
    rows += [("spin_density", rank, value) for rank, value in enumerate(diagnostics.spin_densities)]
    summary = {
        "t": t,
        "nonzero_probabilities": int(diagnostics.probabilities.size),
        "nonzero_spin_densities": int(diagnostics.spin_densities.size),
        "mean": diagnostics.mean,
        "std": diagnostics.std,
        "sz": diagnostics.sz,
    }
    label = config.initial_state.label if config.initial_state.digits is None else "custom"
    report = render("signprob.txt.j2", omega=model.omega, preset=config.model.preset or "custom",
                    label=label, t=t, diagnostics=diagnostics)
    stem = _stem(config, f"signprob_omega{model.omega}")
    paths = write_outputs(_output_dir(config), stem, manifest, ("kind", "rank", "value"), rows, summary,
                          config.output.formats)
    return CommandResult("signprob", paths, summary, report)


# ==================== VERIFY ====================

def cmd_verify(config: ExperimentConfig, tolerance: float = 1e-13, mutate_g_sign: bool = False) -> CommandResult:
    manifest = new_manifest("verify", config)
    with stage(manifest, "checks"):
        checks = run_suite(tolerance, mutate_g_sign)
    passed = sum(check.passed for check in checks)
    rows = [(check.name, check.passed, check.deviation, check.tolerance) for check in checks]
    summary = {
        "passed": passed,
        "failed": len(checks) - passed,
        "failures": [check.name for check in checks if not check.passed],
    }
    title = "Invariant checks" + (" (sigma(14) flipped)" if mutate_g_sign else "")
    report = render("verify.txt.j2", title=title, manifest=manifest, checks=checks, passed=passed)
    paths = write_outputs(_output_dir(config), _stem(config, "verify"), manifest,
                          ("check", "passed", "deviation", "tolerance"), rows, summary, config.output.formats)
    return CommandResult("verify", paths, summary, report, 0 if passed == len(checks) else 1)


# ==================== BENCH ====================

def _time_trotter(model: ModelInstance, n_trot: int, backend: str, repeats: int) -> Tuple[int, float, float]:
    compile_s = execute_s = float("inf")
    state0 = init_basis_state(model.n_qudits, initial_digits(model.omega, "A"))
    for _ in range(repeats):
        start = time.perf_counter()
        circuit = trotter_circuit(model, 1.0, n_trot, backend)
        compiled = time.perf_counter()
        execute(circuit, state0)
        done = time.perf_counter()
        compile_s = min(compile_s, compiled - start)
        execute_s = min(execute_s, done - compiled)
    return len(circuit), compile_s, execute_s


def cmd_bench(config: ExperimentConfig) -> CommandResult:
    """Wall-clock grid over (omega, n_trot) of circuit compilation and execution to t = 1."""
    spec = config.bench
    backend = config.evolution.backend
    manifest = new_manifest("bench", config)
    rows = []
    with stage(manifest, "bench"):
        for omega in spec.omegas:
            model = ModelInstance(omega, config.model.coupling_set())
            for n_trot in spec.n_trot:
                gates, compile_s, execute_s = _time_trotter(model, n_trot, backend, max(spec.repeats, 1))
                rows.append((omega, n_trot, backend, gates, compile_s, execute_s))
                logger.debug(f"bench omega={omega} n_trot={n_trot}: {gates} gates, {execute_s:.3f}s")
    summary = {"backend": backend, "total_seconds": float(np.sum([row[4] + row[5] for row in rows]))}
    paths = write_outputs(_output_dir(config), _stem(config, "bench"), manifest,
                          ("omega", "n_trot", "backend", "gates", "compile_s", "execute_s"), rows, summary,
                          config.output.formats)
    return CommandResult("bench", paths, summary)
