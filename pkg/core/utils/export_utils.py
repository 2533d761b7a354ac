"""
Exportación de autómatas: DOT (plantilla jinja2) y JSON de descomposiciones
y fronteras de Pareto.
"""

import logging
from collections import defaultdict
from typing import Any, Dict, List, Union

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from core.base.automata_base import Apta, Classification, Decomposition, Dfa, ThreeDfa
from core.base.samples_base import Alphabet
from core.config.constants import DOT_STYLES, ERROR_MESSAGES
from core.utils.common_validations import DecompositionJsonValidator
from core.utils.errors import DecompositionFormatError, InvalidAutomaton
from core.utils.file_utils import get_template_path

logger = logging.getLogger(__name__)

DOT_TEMPLATE = 'automaton.dot.j2'

_SHAPES = {
    Classification.ACCEPT: DOT_STYLES['accept'],
    Classification.REJECT: DOT_STYLES['reject'],
    Classification.DONT_CARE: DOT_STYLES['dont_care'],
}


def _environment() -> Environment:
    loader = FileSystemLoader(str(get_template_path(DOT_TEMPLATE).parent))
    return Environment(loader=loader, undefined=StrictUndefined, trim_blocks=True, lstrip_blocks=True)


def _escape(text: str) -> str:
    return text.replace('\\', '\\\\').replace('"', '\\"')


def _grouped_edges(pairs, alphabet: Alphabet) -> List[Dict[str, Any]]:
    # Una arista por par (origen, destino), con las letras separadas por coma
    letters = defaultdict(list)
    for (source, letter), target in pairs:
        letters[(source, target)].append(letter)
    return [
        {'source': s, 'target': t,
         'label': _escape(','.join(alphabet.letters[a] for a in sorted(group)))}
        for (s, t), group in sorted(letters.items())
    ]


def _acceptor_nodes(acceptor: Union[Apta, ThreeDfa]) -> List[Dict[str, Any]]:
    nodes = []
    for state in acceptor.states:
        tooltip = ''
        if isinstance(acceptor, ThreeDfa) and state in acceptor.merged:
            members = ', '.join(str(m) for m in sorted(acceptor.provenance[state]))
            tooltip = f"APTA: {members}"
        elif isinstance(acceptor, Apta):
            word = acceptor.alphabet.format_word(acceptor.prefix_of[state]) or 'ε'
            tooltip = _escape(word)
        nodes.append({
            'id': state,
            'shape': _SHAPES[acceptor.state_class(state)],
            'label': str(state),
            'tooltip': tooltip,
        })
    return nodes


def _dfa_nodes(dfa: Dfa) -> List[Dict[str, Any]]:
    return [
        {'id': state,
         'shape': DOT_STYLES['accept'] if state in dfa.accepting else DOT_STYLES['dont_care'],
         'label': f"q{state - 1}",
         'tooltip': ''}
        for state in range(1, dfa.num_states + 1)
    ]


def to_dot(automaton: Union[Apta, ThreeDfa, Dfa], alphabet: Alphabet = None, name: str = 'A') -> str:
    """
    Representación DOT de un APTA, 3DFA o DFA completo.

    Aceptación como doble círculo, rechazo como caja e indiferente como
    círculo. Un DFA completo necesita ``alphabet`` para nombrar las letras.
    """
    if isinstance(automaton, Dfa):
        if alphabet is None or alphabet.size != automaton.num_letters:
            raise InvalidAutomaton("Se necesita el alfabeto del DFA para exportarlo")
        nodes = _dfa_nodes(automaton)
        pairs = (((i, a), j) for i, a, j in automaton.transitions())
        edges = _grouped_edges(pairs, alphabet)
    else:
        alphabet = automaton.alphabet
        nodes = _acceptor_nodes(automaton)
        edges = _grouped_edges(automaton.delta.items(), alphabet)

    template = _environment().get_template(DOT_TEMPLATE)
    return template.render(name=name, styles=DOT_STYLES, nodes=nodes, edges=edges,
                           initial=automaton.initial)


def decomposition_to_dict(decomposition: Decomposition) -> Dict[str, Any]:
    letters = decomposition.alphabet.letters
    return {
        'alphabet': list(letters),
        'dfas': [
            {
                'num_states': dfa.num_states,
                'initial': dfa.initial,
                'accepting': sorted(dfa.accepting),
                'delta': [{'from': i, 'letter': letters[a], 'to': j} for i, a, j in dfa.transitions()],
            }
            for dfa in decomposition.dfas
        ],
    }


def decomposition_from_dict(data: Any) -> Decomposition:
    """
    Reconstruye una descomposición desde su forma JSON.

    Raises:
        DecompositionFormatError: forma inválida o DFA incompleto
    """
    ok, errors = DecompositionJsonValidator().validate(data)
    if not ok:
        raise DecompositionFormatError(ERROR_MESSAGES['invalid_json'].format('; '.join(errors)))

    alphabet = Alphabet(tuple(data['alphabet']))
    dfas = []
    for index, entry in enumerate(data['dfas']):
        size = entry['num_states']
        rows = [[None] * alphabet.size for _ in range(size)]
        for edge in entry['delta']:
            source, target = edge['from'], edge['to']
            if not (isinstance(source, int) and 1 <= source <= size):
                raise DecompositionFormatError(f"DFA {index}: estado origen inválido {source!r}")
            slot = alphabet.index(edge['letter'])
            if rows[source - 1][slot] is not None:
                raise DecompositionFormatError(
                    f"DFA {index}: transición duplicada ({source}, {edge['letter']})")
            rows[source - 1][slot] = target
        if any(t is None for row in rows for t in row):
            raise DecompositionFormatError(f"DFA {index}: δ incompleta")
        try:
            dfas.append(Dfa(num_states=size, delta=tuple(tuple(r) for r in rows),
                            accepting=frozenset(entry['accepting'])))
        except (InvalidAutomaton, TypeError) as exc:
            raise DecompositionFormatError(f"DFA {index}: {exc}")

    dfas.sort(key=lambda d: d.num_states)
    try:
        return Decomposition(alphabet=alphabet, dfas=tuple(dfas))
    except InvalidAutomaton as exc:
        raise DecompositionFormatError(str(exc))


def frontier_to_list(frontier) -> List[Dict[str, Any]]:
    """Frontera de Pareto como lista de {allocation, dfas}"""
    return [
        {'allocation': list(allocation.parts), **decomposition_to_dict(decomposition)}
        for allocation, decomposition in frontier
    ]


def states_optimal_to_dict(result) -> Dict[str, Any]:
    return {
        'total': result.total,
        'allocation': list(result.allocation.parts),
        'entropy': result.entropy,
        **decomposition_to_dict(result.decomposition),
    }
