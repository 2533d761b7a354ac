import itertools
import stat
import sys
import threading
import types

import pytest

from core.base.automata_base import build_apta, reduce_to_3dfa
from core.config.app_config import solver_config_from_options
from core.config.constants import SOLVER_ENV_VAR
from core.utils.cdcl_solver import CdclSolver, luby
from core.utils.dimacs_utils import parse_dimacs, parse_solver_output, to_dimacs
from core.utils.errors import InternalInconsistency, OutputUnparseable, SolverCrashed
from core.utils.sat_backend import SAT, UNKNOWN, UNSAT, SolverConfig, check_model, solve, solve_clauses
from apps.three_dfa.encoder import encode_3dfa

posix_only = pytest.mark.skipif(sys.platform.startswith('win'), reason="scripts de shell")


def pigeonhole(pigeons, holes):
    def var(p, h):
        return p * holes + h + 1

    clauses = [[var(p, h) for h in range(holes)] for p in range(pigeons)]
    for h in range(holes):
        for p, q in itertools.combinations(range(pigeons), 2):
            clauses.append([-var(p, h), -var(q, h)])
    return pigeons * holes, clauses


def fake_solver(tmp_path, body):
    script = tmp_path / "solver.sh"
    script.write_text("#!/bin/sh\n" + body + "\n")
    script.chmod(script.stat().st_mode | stat.S_IEXEC)
    return str(script)


def test_luby_prefix():
    assert [luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


@pytest.mark.parametrize("num_vars, clauses, expected", [
    (1, [[1], [-1]], False),
    (2, [[1, 2], [-1], [-2, 1]], False),
    (3, [[1, 2], [-1, 3], [-2, -3]], True),
    (0, [], True),
])
def test_cdcl_small(num_vars, clauses, expected):
    solver = CdclSolver(num_vars, clauses)
    assert solver.solve() is expected
    if expected:
        assert check_model(clauses, solver.model()) is None


def test_cdcl_pigeonhole():
    num_vars, clauses = pigeonhole(5, 4)
    assert CdclSolver(num_vars, clauses).solve() is False
    num_vars, clauses = pigeonhole(4, 4)
    solver = CdclSolver(num_vars, clauses)
    assert solver.solve() is True
    assert check_model(clauses, solver.model()) is None


def test_empty_clause_is_unsat():
    assert solve_clauses(1, [[]]).status == UNSAT


def test_dimacs_roundtrip(toy_samples):
    instance = encode_3dfa(reduce_to_3dfa(build_apta(toy_samples)), (2, 2))
    payload = to_dimacs(instance)
    assert payload.startswith(b"c encoding=three_dfa\n")
    assert b"\r" not in payload
    num_vars, clauses = parse_dimacs(payload)
    assert num_vars == instance.num_vars
    assert clauses == instance.clauses


@pytest.mark.parametrize("text", [
    "1 2 0\n",
    "p cnf 2 2\n1 2 0\n",
    "p cnf 1 1\n1 2 0\n",
    "p cnf 2 1\n1 2\n",
])
def test_parse_dimacs_errors(text):
    with pytest.raises(ValueError):
        parse_dimacs(text)


def test_parse_solver_output():
    status, assignment = parse_solver_output("c hola\ns SATISFIABLE\nv 1 -2\nv 3 0\n", num_vars=4)
    assert status == 'sat'
    assert assignment == {1: True, 2: False, 3: True, 4: False}
    assert parse_solver_output("s UNSATISFIABLE\n") == ('unsat', {})
    assert parse_solver_output("nada\n")[0] is None
    with pytest.raises(OutputUnparseable):
        parse_solver_output("s QUIZAS\n")


@pytest.mark.parametrize("kwargs", [
    {'mode': 'magic'},
    {'mode': 'external'},
    {'mode': 'builtin', 'timeout_ms': 0},
])
def test_invalid_solver_config(kwargs):
    with pytest.raises(ValueError):
        SolverConfig(**kwargs)


def test_solver_from_environment(monkeypatch):
    monkeypatch.setenv(SOLVER_ENV_VAR, "minisat -verb=0")
    cfg = solver_config_from_options()
    assert cfg.mode == 'external'
    assert cfg.external_path == "minisat -verb=0"
    monkeypatch.delenv(SOLVER_ENV_VAR)
    assert solver_config_from_options().mode == 'builtin'


def test_builtin_instance(toy_samples):
    acceptor = reduce_to_3dfa(build_apta(toy_samples))
    assert solve(encode_3dfa(acceptor, (2,))).status == UNSAT
    instance = encode_3dfa(acceptor, (3,))
    result = solve(instance)
    assert result.status == SAT
    assert len(result.assignment) == instance.num_vars


@posix_only
def test_external_sat(tmp_path):
    cfg = SolverConfig('external', fake_solver(tmp_path, "printf 's SATISFIABLE\\nv 1 2 0\\n'; exit 10"))
    result = solve_clauses(2, [[1], [2]], cfg)
    assert result.status == SAT
    assert result.assignment == {1: True, 2: True}


@posix_only
def test_external_unsat_by_exit_code(tmp_path):
    cfg = SolverConfig('external', fake_solver(tmp_path, "exit 20"))
    assert solve_clauses(1, [[1], [-1]], cfg).status == UNSAT


@posix_only
def test_external_crash(tmp_path):
    cfg = SolverConfig('external', fake_solver(tmp_path, "echo boom >&2; exit 1"))
    with pytest.raises(SolverCrashed):
        solve_clauses(1, [[1]], cfg)


@posix_only
def test_external_missing_binary(tmp_path):
    cfg = SolverConfig('external', str(tmp_path / "no_such_solver"))
    with pytest.raises(SolverCrashed):
        solve_clauses(1, [[1]], cfg)


@posix_only
def test_external_garbage(tmp_path):
    cfg = SolverConfig('external', fake_solver(tmp_path, "echo 's MAYBE'; exit 0"))
    with pytest.raises(OutputUnparseable):
        solve_clauses(1, [[1]], cfg)


@posix_only
def test_external_sat_without_model(tmp_path):
    cfg = SolverConfig('external', fake_solver(tmp_path, "echo 's SATISFIABLE'; exit 10"))
    with pytest.raises(OutputUnparseable):
        solve_clauses(1, [[1]], cfg)


@posix_only
def test_external_wrong_model(tmp_path):
    cfg = SolverConfig('external', fake_solver(tmp_path, "printf 's SATISFIABLE\\nv -1 0\\n'; exit 10"))
    with pytest.raises(InternalInconsistency):
        solve_clauses(1, [[1]], cfg)


@posix_only
def test_external_timeout_is_unknown(tmp_path):
    cfg = SolverConfig('external', fake_solver(tmp_path, "exec sleep 2"), timeout_ms=200)
    result = solve_clauses(1, [[1]], cfg)
    assert result.status == UNKNOWN
    assert result.reason == 'timeout'


def test_builtin_timeout_never_reports_sat():
    num_vars, clauses = pigeonhole(9, 8)
    result = solve_clauses(num_vars, clauses, SolverConfig(timeout_ms=1))
    assert result.status in (UNKNOWN, UNSAT)


def test_pysat_backend(toy_samples):
    pytest.importorskip("pysat")
    instance = encode_3dfa(reduce_to_3dfa(build_apta(toy_samples)), (3,))
    assert solve(instance, SolverConfig('pysat')).status == SAT
    assert solve_clauses(1, [[1], [-1]], SolverConfig('pysat')).status == UNSAT

class BlockingMinisat:
    """Sustituto de pysat.solvers.Minisat22 que sólo termina al interrumpirlo"""

    interrupted = None

    def __init__(self, bootstrap_with=None):
        self.stop = threading.Event()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def interrupt(self):
        BlockingMinisat.interrupted = True
        self.stop.set()

    def solve_limited(self, expect_interrupt=False):
        assert expect_interrupt
        return None if self.stop.wait(5) else True


def test_pysat_timeout_is_unknown(monkeypatch):
    module = types.ModuleType('pysat.solvers')
    module.Minisat22 = BlockingMinisat
    package = types.ModuleType('pysat')
    package.solvers = module
    monkeypatch.setitem(sys.modules, 'pysat', package)
    monkeypatch.setitem(sys.modules, 'pysat.solvers', module)

    result = solve_clauses(1, [[1]], SolverConfig('pysat', timeout_ms=50))
    assert result.status == UNKNOWN
    assert result.reason == 'timeout'
    assert BlockingMinisat.interrupted


def test_pysat_missing_package(monkeypatch):
    monkeypatch.setitem(sys.modules, 'pysat.solvers', None)
    with pytest.raises(SolverCrashed):
        solve_clauses(1, [[1]], SolverConfig('pysat'))
