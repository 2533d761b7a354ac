"""
Serialización DIMACS CNF y lectura de la salida de solvers externos
(convenciones de la competición SAT: líneas ``s`` y ``v``).
"""

import re
from typing import Dict, List, Optional, Tuple

from core.config.constants import ERROR_MESSAGES
from core.utils.errors import OutputUnparseable

_HEADER = re.compile(r'^p\s+cnf\s+(\d+)\s+(\d+)\s*$')


def to_dimacs(instance) -> bytes:
    """
    DIMACS con bloque de comentarios ``c`` para los metadatos.

    Returns:
        Bytes UTF-8 con finales de línea LF
    """
    lines = [f"c {key}={value}" for key, value in instance.meta.items()]
    lines.append(f"p cnf {instance.num_vars} {len(instance.clauses)}")
    lines.extend(' '.join(map(str, clause)) + ' 0' for clause in instance.clauses)
    return ('\n'.join(lines) + '\n').encode('utf-8')


def clauses_to_dimacs(num_vars: int, clauses: List[List[int]]) -> bytes:
    """Variante sin metadatos, para cláusulas sueltas"""
    lines = [f"p cnf {num_vars} {len(clauses)}"]
    lines.extend(' '.join(map(str, clause)) + ' 0' for clause in clauses)
    return ('\n'.join(lines) + '\n').encode('utf-8')


def parse_dimacs(text) -> Tuple[int, List[List[int]]]:
    """
    Inverso de to_dimacs; tolera cláusulas repartidas en varias líneas.

    Returns:
        (num_vars, cláusulas)
    """
    if isinstance(text, bytes):
        text = text.decode('utf-8')

    header = None
    clauses: List[List[int]] = []
    pending: List[int] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('c'):
            continue
        if header is None:
            match = _HEADER.match(line)
            if match is None:
                raise ValueError(f"Línea {line_no}: se esperaba la cabecera 'p cnf', se leyó {line!r}")
            header = (int(match.group(1)), int(match.group(2)))
            continue
        for token in line.split():
            literal = int(token)
            if literal == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(literal)

    if header is None:
        raise ValueError("Falta la cabecera 'p cnf'")
    if pending:
        raise ValueError("Cláusula final sin terminar en 0")

    num_vars, num_clauses = header
    if len(clauses) != num_clauses:
        raise ValueError(f"La cabecera declara {num_clauses} cláusulas y hay {len(clauses)}")
    if any(abs(lit) > num_vars for clause in clauses for lit in clause):
        raise ValueError("Literal mayor que el número de variables declarado")
    return num_vars, clauses


def parse_solver_output(output: str, num_vars: Optional[int] = None) -> Tuple[Optional[str], Dict[int, bool]]:
    """
    Lee la salida de un solver.

    Returns:
        (estado, asignación) con estado 'sat', 'unsat', 'unknown' o None si no
        hay línea ``s``; la asignación sólo se llena con líneas ``v``.
    """
    status = None
    assignment: Dict[int, bool] = {}

    for raw in output.splitlines():
        line = raw.strip()
        if line.startswith('s '):
            word = line[2:].strip().upper()
            if word == 'SATISFIABLE':
                status = 'sat'
            elif word == 'UNSATISFIABLE':
                status = 'unsat'
            elif word == 'UNKNOWN':
                status = 'unknown'
            else:
                raise OutputUnparseable(ERROR_MESSAGES['solver_unparseable'].format(line))
        elif line.startswith('v ') or line == 'v':
            for token in line.split()[1:]:
                try:
                    literal = int(token)
                except ValueError:
                    raise OutputUnparseable(ERROR_MESSAGES['solver_unparseable'].format(line))
                if literal != 0:
                    assignment[abs(literal)] = literal > 0

    if num_vars is not None and status == 'sat' and assignment:
        # Variables no mencionadas quedan en falso
        for var in range(1, num_vars + 1):
            assignment.setdefault(var, False)
    return status, assignment
