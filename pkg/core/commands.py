"""
Comandos de la línea de comandos.

Cada ``cmd_*`` recibe parámetros ya interpretados, escribe el resumen de una
línea en la salida estándar y devuelve el código de salida. Los errores se
traducen a código de salida en ``run_command``.
"""

import logging
import os
import sys
from typing import Callable, List, Optional

from core.app_factory import EncoderFactory
from core.base.automata_base import build_apta, reduce_to_3dfa, verify_consistency
from core.base.samples_base import LabeledSamples, parse_samples, serialize_samples
from core.base.search_base import solve_pareto, solve_states_optimal
from core.config.app_config import normalize_encoder_name
from core.config.constants import EXIT_CODES
from core.utils.common_validations import parse_allocation, validate_positive
from core.utils.dimacs_utils import to_dimacs
from core.utils.errors import DecompError, FileAccessError
from core.utils.export_utils import (
    decomposition_from_dict,
    decomposition_to_dict,
    frontier_to_list,
    states_optimal_to_dict,
    to_dot,
)
from core.utils.file_utils import (
    open_output,
    read_json_file,
    read_text_file,
    write_json_file,
    write_text_file,
)
from core.utils.sat_backend import SolverConfig

logger = logging.getLogger(__name__)

EMPTY_WORD = 'ε'


def run_command(command: Callable[..., int], **kwargs) -> int:
    """Ejecuta un comando y traduce sus excepciones a códigos de salida"""
    try:
        return command(**kwargs)
    except DecompError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FileAccessError.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES['usage']
    except Exception as exc:
        logger.exception("Error inesperado")
        print(f"error interno: {exc}", file=sys.stderr)
        return EXIT_CODES['internal']


def load_samples(path: str, format: str = 'lines') -> LabeledSamples:
    return parse_samples(read_text_file(path), format)


def _format_entropy(value: float) -> str:
    return format(round(value, 6) + 0.0, 'g')


def cmd_build_3dfa(input: str, format: str = 'lines', dot: Optional[str] = None,
                   json_out: Optional[str] = None, apta_dot: Optional[str] = None) -> int:
    samples = load_samples(input, format)
    apta = build_apta(samples)
    acceptor = reduce_to_3dfa(apta)

    if dot:
        write_text_file(to_dot(acceptor, name='three_dfa'), dot)
    if apta_dot:
        write_text_file(to_dot(apta, name='apta'), apta_dot)
    if json_out:
        letters = acceptor.alphabet.letters
        write_json_file({
            'alphabet': list(letters),
            'initial': acceptor.initial,
            'states': list(acceptor.states),
            'accepting': sorted(acceptor.accepting),
            'rejecting': sorted(acceptor.rejecting),
            'merged': sorted(acceptor.merged),
            'delta': [{'from': s, 'letter': letters[a], 'to': t}
                      for (s, a), t in sorted(acceptor.delta.items())],
            'provenance': {str(s): sorted(m) for s, m in sorted(acceptor.provenance.items())},
        }, json_out)

    print(f"apta_states={apta.num_states} 3dfa_states={acceptor.num_states} merged={len(acceptor.merged)}")
    return EXIT_CODES['ok']


def cmd_identify_pareto(input: str, n: int, format: str = 'lines', encoder: str = '3dfa',
                        symmetry: bool = True, solver: Optional[SolverConfig] = None,
                        out: Optional[str] = None) -> int:
    validate_positive("--n", n)
    samples = load_samples(input, format)
    frontier = solve_pareto(samples, n, solver, normalize_encoder_name(encoder), symmetry)

    if out:
        write_json_file(frontier_to_list(frontier), out)
    for allocation, _ in frontier:
        print(f"allocation={allocation}")
    return EXIT_CODES['ok']


def cmd_identify_states_optimal(input: str, format: str = 'lines', max_n: Optional[int] = None,
                                encoder: str = '3dfa', symmetry: bool = True,
                                solver: Optional[SolverConfig] = None, jobs: int = 1,
                                out: Optional[str] = None) -> int:
    samples = load_samples(input, format)
    result = solve_states_optimal(samples, solver, max_n, normalize_encoder_name(encoder), symmetry, jobs)

    if out:
        write_json_file(states_optimal_to_dict(result), out)
    print(f"N={result.total} allocation={result.allocation} entropy={_format_entropy(result.entropy)}")
    return EXIT_CODES['ok']


def cmd_verify(input: str, decomposition: str, format: str = 'lines') -> int:
    """
    Verifica una descomposición (o cada entrada de una frontera) contra las
    muestras. Imprime ``consistent`` o la primera violación.
    """
    samples = load_samples(input, format)
    data = read_json_file(decomposition)
    entries = data if isinstance(data, list) else [data]
    if not entries:
        raise ValueError("La frontera no contiene descomposiciones")

    for entry in entries:
        candidate = decomposition_from_dict(entry)
        if candidate.alphabet != samples.alphabet:
            candidate = _realign(candidate, samples)
        verdict = verify_consistency(candidate, samples)
        if not verdict.consistent:
            word = samples.alphabet.format_word(verdict.word) or EMPTY_WORD
            print(f"violation word={word} kind={verdict.kind.value}")
            return EXIT_CODES['no_decomposition']

    print("consistent")
    return EXIT_CODES['ok']


def _realign(candidate, samples: LabeledSamples):
    # Mismo conjunto de letras en otro orden: se reordenan las columnas de δ
    letters = candidate.alphabet.letters
    if set(letters) != set(samples.alphabet.letters):
        raise ValueError(f"Alfabetos distintos: {letters} vs {samples.alphabet.letters}")
    data = decomposition_to_dict(candidate)
    data['alphabet'] = list(samples.alphabet.letters)
    return decomposition_from_dict(data)


def cmd_gen_bench(alphabet: int, max_len: int, count: int, generator: str = 'partial_order_tasks',
                  seed: int = 0, out: Optional[str] = None) -> int:
    from apps.bench.generator import BenchmarkSpec, generate

    spec = BenchmarkSpec(alphabet_size=alphabet, max_word_length=max_len,
                         num_examples_per_label=count, generator=generator, seed=seed)
    text = serialize_samples(generate(spec), 'lines')
    if out:
        write_text_file(text, out)
        print(f"wrote {2 * count} words to {out}")
    else:
        sys.stdout.write(text)
    return EXIT_CODES['ok']


def cmd_dump_cnf(input: str, allocation: str, out: str, format: str = 'lines',
                 encoder: str = '3dfa', symmetry: bool = True) -> int:
    samples = load_samples(input, format)
    name = normalize_encoder_name(encoder)
    acceptor = EncoderFactory.build_acceptor(name, samples)
    instance = EncoderFactory.create_encoder(name).encode(acceptor, parse_allocation(allocation), symmetry)

    with open_output(out, 'wb') as handle:
        handle.write(to_dimacs(instance))
    print(f"num_vars={instance.num_vars} num_clauses={instance.num_clauses}")
    return EXIT_CODES['ok']


def cmd_compare(inputs: List[str], n: int, out: str, format: str = 'lines',
                symmetry: bool = True, solver: Optional[SolverConfig] = None) -> int:
    from apps.bench.metrics import compare_run, write_metrics_csv

    validate_positive("--n", n)
    runs = []
    for path in inputs:
        samples = load_samples(path, format)
        benchmark_id = os.path.splitext(os.path.basename(path))[0]
        metrics = compare_run(samples, n, solver, benchmark_id, symmetry)
        runs.append(metrics)
        for encoder, frontier in metrics.frontiers.items():
            allocations = ' '.join('(' + ','.join(map(str, a)) + ')' for a in frontier)
            print(f"{benchmark_id} encoder={encoder} frontier={allocations}")

    write_metrics_csv(runs, out)
    return EXIT_CODES['ok']