"""
Resolución de instancias CNF: solver integrado, solver externo por
subproceso (DIMACS) o Minisat22 de python-sat si está instalado.
"""

import logging
import os
import shlex
import subprocess
import tempfile
import threading
import time
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from core.config.constants import ERROR_MESSAGES, SAT_EXIT_CODES, SOLVER_MODES
from core.utils.cdcl_solver import CdclSolver
from core.utils.dimacs_utils import clauses_to_dimacs, parse_solver_output, to_dimacs
from core.utils.errors import InternalInconsistency, OutputUnparseable, SolverCrashed

logger = logging.getLogger(__name__)

SAT, UNSAT, UNKNOWN = 'sat', 'unsat', 'unknown'


@dataclass(frozen=True)
class SolverConfig:
    mode: str = 'builtin'
    external_path: Optional[str] = None
    timeout_ms: Optional[int] = None

    def __post_init__(self):
        if self.mode not in SOLVER_MODES:
            raise ValueError(f"Modo de solver no soportado: {self.mode}. Use {SOLVER_MODES}")
        if self.mode == 'external' and not (self.external_path or '').strip():
            raise ValueError("El modo externo requiere un comando de solver")
        if self.timeout_ms is not None and self.timeout_ms <= 0:
            raise ValueError(f"timeout_ms debe ser positivo (recibido {self.timeout_ms})")

    @property
    def timeout_s(self) -> Optional[float]:
        return self.timeout_ms / 1000.0 if self.timeout_ms is not None else None


@dataclass
class SatResult:
    status: str
    assignment: Dict[int, bool] = field(default_factory=dict)
    stats: Dict[str, object] = field(default_factory=dict)
    reason: Optional[str] = None


def check_model(clauses: Sequence[Sequence[int]], assignment: Dict[int, bool]) -> Optional[int]:
    """Índice de la primera cláusula falsa bajo el modelo, o None"""
    for index, clause in enumerate(clauses):
        if not any(assignment.get(abs(lit), False) == (lit > 0) for lit in clause):
            return index
    return None


def solve(instance, cfg: Optional[SolverConfig] = None) -> SatResult:
    """
    Decide la instancia.

    Todo modelo ``sat`` se comprueba contra todas las cláusulas antes de
    devolverse; ``unknown`` nunca se confunde con ``unsat``.
    """
    return solve_clauses(instance.num_vars, instance.clauses, cfg, meta_source=instance)


def solve_clauses(num_vars: int, clauses: Sequence[Sequence[int]],
                  cfg: Optional[SolverConfig] = None, meta_source=None) -> SatResult:
    cfg = cfg or SolverConfig()
    start = time.perf_counter()

    if cfg.mode == 'builtin':
        result = _solve_builtin(num_vars, clauses, cfg)
    elif cfg.mode == 'pysat':
        result = _solve_pysat(num_vars, clauses, cfg)
    else:
        payload = to_dimacs(meta_source) if meta_source is not None else clauses_to_dimacs(num_vars, list(clauses))
        result = _solve_external(num_vars, payload, cfg)

    result.stats.setdefault('solve_time_ms', (time.perf_counter() - start) * 1000.0)

    if result.status == SAT:
        for var in range(1, num_vars + 1):
            result.assignment.setdefault(var, False)
        failed = check_model(clauses, result.assignment)
        if failed is not None:
            raise InternalInconsistency(
                f"El modelo del solver {result.stats.get('solver_name')} no satisface la cláusula {failed}",
                detail=str(list(clauses[failed])))

    logger.debug("solver=%s estado=%s (%.1f ms)", result.stats.get('solver_name'),
                 result.status, result.stats['solve_time_ms'])
    return result


def _solve_builtin(num_vars: int, clauses, cfg: SolverConfig) -> SatResult:
    solver = CdclSolver(num_vars, clauses)
    outcome = solver.solve(cfg.timeout_s)
    stats = {'solver_name': 'builtin-cdcl', 'conflicts': solver.conflicts, 'decisions': solver.decisions}
    if outcome is None:
        return SatResult(UNKNOWN, stats=stats, reason='timeout')
    if outcome:
        return SatResult(SAT, solver.model(), stats)
    return SatResult(UNSAT, stats=stats)


def _solve_pysat(num_vars: int, clauses, cfg: SolverConfig) -> SatResult:
    try:
        from pysat.solvers import Minisat22
    except ImportError:
        raise SolverCrashed("El modo pysat requiere el paquete python-sat")

    stats = {'solver_name': 'pysat-minisat22'}
    with Minisat22(bootstrap_with=[list(c) for c in clauses]) as solver:
        if cfg.timeout_s is None:
            outcome = solver.solve()
        else:
            timer = threading.Timer(cfg.timeout_s, solver.interrupt)
            timer.start()
            try:
                outcome = solver.solve_limited(expect_interrupt=True)
            finally:
                timer.cancel()
        if outcome is None:
            return SatResult(UNKNOWN, stats=stats, reason='timeout')
        if not outcome:
            return SatResult(UNSAT, stats=stats)
        model = solver.get_model() or []
    assignment = {abs(lit): lit > 0 for lit in model if abs(lit) <= num_vars}
    return SatResult(SAT, assignment, stats)


def _solve_external(num_vars: int, payload: bytes, cfg: SolverConfig) -> SatResult:
    command = shlex.split(cfg.external_path)
    stats = {'solver_name': os.path.basename(command[0])}

    handle, path = tempfile.mkstemp(suffix='.cnf', prefix='dfa_decomp_')
    try:
        with os.fdopen(handle, 'wb') as cnf_file:
            cnf_file.write(payload)
        try:
            process = subprocess.run(command + [path], capture_output=True, text=True,
                                     timeout=cfg.timeout_s)
        except subprocess.TimeoutExpired:
            logger.warning("El solver externo superó el límite de %s ms", cfg.timeout_ms)
            return SatResult(UNKNOWN, stats=stats, reason='timeout')
        except OSError as exc:
            raise SolverCrashed(ERROR_MESSAGES['solver_crashed'].format('-'), detail=str(exc))
    finally:
        if os.path.exists(path):
            os.remove(path)

    status, assignment = parse_solver_output(process.stdout, num_vars)
    code_status = SAT_EXIT_CODES.get(process.returncode)

    if status is None:
        status = code_status
    if status is None:
        if process.returncode not in (0, *SAT_EXIT_CODES):
            raise SolverCrashed(ERROR_MESSAGES['solver_crashed'].format(process.returncode),
                                detail=process.stderr.strip()[:200] or None)
        raise OutputUnparseable(ERROR_MESSAGES['solver_unparseable'].format(process.stdout.strip()[:200]))
    if code_status is not None and code_status != status:
        raise OutputUnparseable(ERROR_MESSAGES['solver_unparseable'].format(
            f"línea s={status} pero código de salida {process.returncode}"))
    if status == SAT and not assignment and num_vars > 0:
        raise OutputUnparseable(ERROR_MESSAGES['solver_unparseable'].format("sat sin líneas v"))
    if status == UNKNOWN:
        return SatResult(UNKNOWN, stats=stats, reason='solver')
    if status == UNSAT:
        return SatResult(UNSAT, stats=stats)
    return SatResult(SAT, assignment, stats)

