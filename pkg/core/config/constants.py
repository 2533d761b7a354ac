"""
Constantes globales del proyecto.
"""

# Códigos de salida del CLI (estables entre versiones)
EXIT_CODES = {
    'ok': 0,
    'usage': 1,
    'no_decomposition': 2,
    'solver_failure': 3,
    'internal': 4,
}

# Formatos de entrada de muestras
SAMPLE_FORMATS = ('abbadingo', 'lines')

ABBADINGO_LABELS = {'1': True, '0': False}
LINES_LABELS = {'+': True, '-': False}
LINES_COMMENT = '#'

# Variable de entorno usada cuando no se pasa --solver
SOLVER_ENV_VAR = 'DFA_DECOMP_SOLVER'

SOLVER_MODES = ('builtin', 'external', 'pysat')

# Convención de códigos de salida de la competición SAT
SAT_EXIT_CODES = {
    10: 'sat',
    20: 'unsat',
}

# Grupos de cláusulas por codificación (orden de emisión)
CLAUSE_GROUPS = {
    'three_dfa': ('D1', 'D2', 'R1', 'R2', 'T1', 'T2', 'T3', "O1'", 'SYM'),
    'apta_legacy': ('0', '1', '2', '3', '4', '5', '6', '7', '8', '9', 'SYM'),
}

# Estilos DOT: aceptación doble círculo, rechazo caja, indiferente círculo
DOT_STYLES = {
    'accept': 'doublecircle',
    'reject': 'box',
    'dont_care': 'circle',
    'rankdir': 'LR',
    'font_name': 'Helvetica',
}

# Métricas de benchmarks
METRICS_SCHEMA_VERSION = 1
METRICS_COLUMNS = (
    'benchmark_id', 'encoder', 'allocation', 'acceptor_states',
    'num_vars', 'num_clauses', 'status', 'solve_time_ms',
)

# Configuración de logging
LOGGING_CONFIG = {
    'level': 'WARNING',
    'format': '%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s',
    'file_format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    'file_name': 'dfa_decomp.log',
    'max_bytes': 10485760,  # 10MB
    'backup_count': 3,
    'colors': {
        'DEBUG': 'cyan',
        'INFO': 'green',
        'WARNING': 'yellow',
        'ERROR': 'red',
        'CRITICAL': 'red,bg_white',
    },
}

# Mensajes de error comunes
ERROR_MESSAGES = {
    'empty_input': 'Entrada vacía: no hay ejemplos etiquetados',
    'malformed_header': 'Cabecera inválida en la línea {}: {!r}',
    'malformed_line': 'Línea {} mal formada: {!r}',
    'unknown_symbol': 'Símbolo desconocido {!r} en la línea {}',
    'conflicting_label': 'La palabra {!r} aparece como positiva y negativa',
    'allocation_too_small': 'Cada DFA necesita al menos 2 estados: {}',
    'empty_allocation': 'La asignación de estados está vacía',
    'allocation_not_sorted': 'La asignación debe ser ascendente: {}',
    'malformed_model': 'Modelo inválido para el DFA {} (estado {}, letra {}): {} sucesores',
    'solver_crashed': 'El solver externo terminó con código {}',
    'solver_unparseable': 'No se pudo interpretar la salida del solver: {}',
    'solver_unknown': 'El solver no decidió la asignación {}: {}',
    'arity_mismatch': 'Asignaciones de distinta longitud: {} vs {}',
    'invalid_bound': 'Cota inválida: N={} < k={}',
    'bound_exceeded': 'N={} supera la cota de terminación {}',
    'inconsistent_decomposition': 'La descomposición decodificada no es consistente: {}',
    'insufficient_words': 'No existen suficientes palabras: {}',
    'search_space_too_large': 'Espacio de búsqueda demasiado grande: {} > {}',
    'file_not_found': 'Archivo no encontrado: {}',
    'invalid_json': 'JSON de descomposición inválido: {}',
    'file_access': 'No se puede acceder al archivo: {}',
}
