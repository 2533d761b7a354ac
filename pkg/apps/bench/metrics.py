"""
Comparación entre codificaciones y métricas en CSV (pandas).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import pandas as pd

from core.app_factory import EncoderFactory
from core.base.samples_base import LabeledSamples
from core.base.search_base import AllocationResult, solve_pareto
from core.config.app_config import get_available_encoders
from core.config.constants import METRICS_COLUMNS, METRICS_SCHEMA_VERSION
from core.utils.file_utils import open_output
from core.utils.sat_backend import SolverConfig

logger = logging.getLogger(__name__)

SCHEMA_HEADER = f"# schema_version={METRICS_SCHEMA_VERSION}"


@dataclass
class RunMetrics:
    benchmark_id: str
    acceptor_states_apta: int
    acceptor_states_3dfa: int
    rows: List[Dict[str, object]] = field(default_factory=list)
    frontiers: Dict[str, List[Tuple[int, ...]]] = field(default_factory=dict)

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=list(METRICS_COLUMNS))

    def variables_by_allocation(self, encoder: str) -> Dict[str, int]:
        df = self.to_dataframe()
        subset = df[df['encoder'] == encoder]
        return dict(zip(subset['allocation'], subset['num_vars']))


def compare_run(samples: LabeledSamples, n: int, cfg: Optional[SolverConfig] = None,
                benchmark_id: str = 'bench', symmetry: bool = True) -> RunMetrics:
    """
    Ejecuta la búsqueda de Pareto con cada codificación y registra tamaños,
    tiempos y resultados por asignación. Los tiempos de cada codificación se
    miden en su propia ejecución.
    """
    apta = EncoderFactory.build_acceptor('apta_legacy', samples)
    three_dfa = EncoderFactory.build_acceptor('three_dfa', samples)
    sizes = {'apta_legacy': apta.num_states, 'three_dfa': three_dfa.num_states}

    metrics = RunMetrics(benchmark_id, sizes['apta_legacy'], sizes['three_dfa'])

    for encoder in get_available_encoders():
        def record(parts: Tuple[int, ...], result: AllocationResult, encoder=encoder):
            metrics.rows.append({
                'benchmark_id': benchmark_id,
                'encoder': encoder,
                'allocation': '(' + ','.join(map(str, parts)) + ')',
                'acceptor_states': sizes[encoder],
                'num_vars': result.stats['num_vars'],
                'num_clauses': result.stats['num_clauses'],
                'status': result.status,
                'solve_time_ms': result.stats['solve_time_ms'],
            })

        frontier = solve_pareto(samples, n, cfg, encoder, symmetry, observer=record)
        metrics.frontiers[encoder] = frontier.allocations()
        logger.info("%s [%s]: frontera %s", benchmark_id, encoder, metrics.frontiers[encoder])

    return metrics


def write_metrics_csv(frames: List[RunMetrics], path: str) -> None:
    """CSV con una fila por (benchmark, codificación, asignación) y cabecera de versión"""
    if frames:
        df = pd.concat([m.to_dataframe() for m in frames], ignore_index=True)
    else:
        df = pd.DataFrame(columns=list(METRICS_COLUMNS))
    with open_output(path, 'w', encoding='utf-8', newline='') as handle:
        handle.write(SCHEMA_HEADER + '\n')
        df.to_csv(handle, index=False, lineterminator='\n')


def read_metrics_csv(path: str) -> pd.DataFrame:
    with open(path, encoding='utf-8') as handle:
        first = handle.readline().strip()
    if first != SCHEMA_HEADER:
        raise ValueError(f"Versión de esquema no soportada: {first!r}")
    return pd.read_csv(path, comment='#', dtype={'allocation': str})
