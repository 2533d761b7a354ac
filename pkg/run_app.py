#!/usr/bin/env python3
"""
Launcher principal de dfa_decomp
Construcción de 3DFA, identificación de descomposiciones de DFA,
verificación y benchmarks desde un único punto de entrada
"""

import sys
import argparse
from pathlib import Path

# Agregar el directorio raíz al path
ROOT_DIR = Path(__file__).parent
sys.path.insert(0, str(ROOT_DIR))

from core import commands  # noqa: E402
from core.config.app_config import COMMON_CONFIG, solver_config_from_options  # noqa: E402
from core.config.constants import EXIT_CODES, SAMPLE_FORMATS, SOLVER_MODES  # noqa: E402
from core.utils.logging_utils import setup_logging  # noqa: E402

ENCODER_CHOICES = ('3dfa', 'apta')


def _add_input(parser):
    parser.add_argument('input', help='Archivo de muestras etiquetadas')
    parser.add_argument('--format', choices=SAMPLE_FORMATS, default='lines',
                        help='Formato de entrada (default: lines)')


def _add_encoder(parser):
    parser.add_argument('--encoder', choices=ENCODER_CHOICES, default='3dfa',
                        help='Codificación SAT (default: 3dfa)')
    parser.add_argument('--no-symmetry', dest='symmetry', action='store_false',
                        help='Desactivar la ruptura de simetrías')


def _add_solver(parser):
    parser.add_argument('--solver', default=None,
                        help='Comando de un solver DIMACS externo (o variable DFA_DECOMP_SOLVER)')
    parser.add_argument('--solver-mode', choices=SOLVER_MODES, default=None,
                        help='builtin, external o pysat (default: builtin, external si hay --solver)')
    parser.add_argument('--timeout-ms', type=int, default=None,
                        help='Límite de tiempo por instancia SAT en milisegundos')


def parse_arguments(argv=None):
    """Parsear argumentos de línea de comandos"""
    parser = argparse.ArgumentParser(
        prog='dfa_decomp',
        description="Identificación de descomposiciones de DFA a partir de ejemplos",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos de uso:
  python run_app.py build-3dfa samples.txt --dot a.dot
  python run_app.py identify-pareto samples.txt --n 2 --out frontier.json
  python run_app.py identify-states-optimal samples.txt --out best.json
  python run_app.py verify samples.txt --decomposition best.json
  python run_app.py gen-bench --alphabet 3 --max-len 5 --count 20 --seed 7 --out bench.txt
        """
    )
    parser.add_argument('--verbose', action='store_true', help='Mostrar progreso (INFO)')
    parser.add_argument('--debug', action='store_true', help='Mostrar detalle (DEBUG)')
    parser.add_argument('--log-file', default=None, help='Archivo de log rotativo')

    sub = parser.add_subparsers(dest='command', required=True)

    build = sub.add_parser('build-3dfa', help='Construir el APTA y el 3DFA')
    _add_input(build)
    build.add_argument('--dot', default=None, help='Exportar el 3DFA a DOT')
    build.add_argument('--apta-dot', default=None, help='Exportar el APTA a DOT')
    build.add_argument('--json', dest='json_out', default=None, help='Exportar el 3DFA a JSON')

    pareto = sub.add_parser('identify-pareto', help='Frontera de Pareto con n DFAs')
    _add_input(pareto)
    pareto.add_argument('--n', type=int, required=True, help='Número de DFAs')
    _add_encoder(pareto)
    _add_solver(pareto)
    pareto.add_argument('--out', default=None, help='JSON de la frontera')

    optimal = sub.add_parser('identify-states-optimal', help='Descomposición states-optimal')
    _add_input(optimal)
    optimal.add_argument('--max-n', type=int, default=None, help='Máximo número de DFAs')
    _add_encoder(optimal)
    _add_solver(optimal)
    optimal.add_argument('--jobs', type=int, default=COMMON_CONFIG['search_config']['jobs'],
                         help='Procesos para resolver cada ronda')
    optimal.add_argument('--out', default=None, help='JSON de la descomposición')

    verify = sub.add_parser('verify', help='Verificar una descomposición contra las muestras')
    _add_input(verify)
    verify.add_argument('--decomposition', required=True, help='JSON de descomposición o frontera')

    bench = sub.add_parser('gen-bench', help='Generar muestras aleatorias reproducibles')
    bench.add_argument('--alphabet', type=int, required=True, help='Tamaño del alfabeto')
    bench.add_argument('--max-len', type=int, required=True, help='Longitud máxima de palabra')
    bench.add_argument('--count', type=int, required=True, help='Ejemplos por etiqueta')
    bench.add_argument('--generator', default=COMMON_CONFIG['bench_config']['generator'],
                       choices=('partial_order_tasks', 'random_split'))
    bench.add_argument('--seed', type=int, default=0)
    bench.add_argument('--out', default=None, help='Archivo de salida (default: stdout)')

    dump = sub.add_parser('dump-cnf', help='Escribir la CNF DIMACS de una asignación')
    _add_input(dump)
    dump.add_argument('--allocation', required=True, help="Asignación, p. ej. '2,2'")
    _add_encoder(dump)
    dump.add_argument('--out', required=True, help='Archivo DIMACS')

    compare = sub.add_parser('compare', help='Comparar ambas codificaciones (CSV de métricas)')
    compare.add_argument('inputs', nargs='+', help='Archivos de muestras')
    compare.add_argument('--format', choices=SAMPLE_FORMATS, default='lines')
    compare.add_argument('--n', type=int, required=True, help='Número de DFAs')
    compare.add_argument('--no-symmetry', dest='symmetry', action='store_false')
    _add_solver(compare)
    compare.add_argument('--out', required=True, help='CSV de métricas')

    return parser.parse_args(argv)


def _solver(args):
    return solver_config_from_options(args.solver_mode, args.solver, args.timeout_ms)


def dispatch(args) -> int:
    """Traducir los argumentos al comando correspondiente"""
    if args.command == 'build-3dfa':
        return commands.run_command(commands.cmd_build_3dfa, input=args.input, format=args.format,
                                    dot=args.dot, json_out=args.json_out, apta_dot=args.apta_dot)
    if args.command == 'verify':
        return commands.run_command(commands.cmd_verify, input=args.input, format=args.format,
                                    decomposition=args.decomposition)
    if args.command == 'gen-bench':
        return commands.run_command(commands.cmd_gen_bench, alphabet=args.alphabet, max_len=args.max_len,
                                    count=args.count, generator=args.generator, seed=args.seed,
                                    out=args.out)
    if args.command == 'dump-cnf':
        return commands.run_command(commands.cmd_dump_cnf, input=args.input, format=args.format,
                                    allocation=args.allocation, out=args.out, encoder=args.encoder,
                                    symmetry=args.symmetry)

    # Los comandos restantes necesitan un solver
    try:
        solver = _solver(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CODES['usage']

    if args.command == 'identify-pareto':
        return commands.run_command(commands.cmd_identify_pareto, input=args.input, format=args.format,
                                    n=args.n, encoder=args.encoder, symmetry=args.symmetry,
                                    solver=solver, out=args.out)
    if args.command == 'identify-states-optimal':
        return commands.run_command(commands.cmd_identify_states_optimal, input=args.input,
                                    format=args.format, max_n=args.max_n, encoder=args.encoder,
                                    symmetry=args.symmetry, solver=solver, jobs=args.jobs, out=args.out)
    if args.command == 'compare':
        return commands.run_command(commands.cmd_compare, inputs=args.inputs, format=args.format,
                                    n=args.n, symmetry=args.symmetry, solver=solver, out=args.out)
    return EXIT_CODES['usage']


def main(argv=None) -> int:
    """Función principal"""
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        # argparse sale con 2 en errores de uso; el código estable es 1
        return EXIT_CODES['ok'] if e.code == 0 else EXIT_CODES['usage']

    level = 'DEBUG' if args.debug else 'INFO' if args.verbose else None
    setup_logging(level, args.log_file)

    return dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
