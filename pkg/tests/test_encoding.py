import pytest

from apps.apta_legacy.encoder import AptaLegacyEncoder, encode_apta_legacy
from apps.three_dfa.encoder import ThreeDfaEncoder, encode_3dfa
from core.app_factory import EncoderFactory, encode
from core.base.automata_base import build_apta, dfa_accepts, reduce_to_3dfa, verify_consistency
from core.base.encoder_base import VarMap, decode, encode_symmetry, encoding_stats
from core.config.constants import CLAUSE_GROUPS
from core.utils.errors import AllocationTooSmall, EmptyAllocation, EncodingError, MalformedModel
from core.utils.sat_backend import SAT, UNSAT, check_model, solve, solve_clauses


@pytest.fixture
def apta(toy_samples):
    return build_apta(toy_samples)


@pytest.fixture
def three_dfa(apta):
    return reduce_to_3dfa(apta)


def test_state_variable_counts(apta, three_dfa):
    assert encode_apta_legacy(apta, (2, 2)).var_map.count('x') == 32
    assert encode_3dfa(three_dfa, (2, 2)).var_map.count('x') == 28


def test_variable_order(three_dfa):
    instance = encode_3dfa(three_dfa, (2, 3))
    vm = instance.var_map
    kinds = [vm.key_of(v)[0] for v in range(1, instance.num_vars + 1)]
    first_aux = min(i for i, kind in enumerate(kinds) if kind in ('t', 'p', 'm'))
    core = kinds[:first_aux]
    assert core == sorted(core, key=['x', 'e', 'z', 'r'].index)
    assert vm.key_of(1) == ('x', 1, three_dfa.states[0], 1)
    assert vm.x(2, 7, 3) == vm[('x', 2, 7, 3)]


def test_group_counts(three_dfa):
    instance = encode_3dfa(three_dfa, (2, 2), symmetry=False)
    groups = instance.groups
    assert set(groups) == set(CLAUSE_GROUPS['three_dfa'])
    assert groups['T1'] == 2
    # 6 estados no fusionados, 2 DFAs, un par de colores por DFA
    assert groups["O1'"] == 12
    assert groups['SYM'] == 0
    assert sum(groups.values()) == instance.num_clauses


def test_legacy_groups(apta):
    instance = encode_apta_legacy(apta, (2, 2), symmetry=False)
    assert set(instance.groups) == set(CLAUSE_GROUPS['apta_legacy'])
    assert instance.groups['0'] == 2
    # |R| x |A| x n x m
    assert instance.groups['9'] == 2 * 3 * 2 * 2


def test_t3_only_over_defined_transitions(three_dfa):
    instance = encode_3dfa(three_dfa, (2,), symmetry=False)
    defined = len(three_dfa.delta)
    assert instance.groups['T3'] == defined * 2 * 2


def test_three_dfa_is_smaller(apta, three_dfa):
    for allocation in [(2,), (2, 2), (3, 4)]:
        assert encode_3dfa(three_dfa, allocation).num_vars <= encode_apta_legacy(apta, allocation).num_vars


def test_determinism_growth(three_dfa):
    small = encode_3dfa(three_dfa, (4,), symmetry=False).groups['D1']
    large = encode_3dfa(three_dfa, (8,), symmetry=False).groups['D1']
    assert 7 <= large / small <= 10


@pytest.mark.parametrize("allocation, error", [
    ((), EmptyAllocation),
    ((1, 2), AllocationTooSmall),
    ((3, 2), EncodingError),
])
def test_invalid_allocations(three_dfa, allocation, error):
    with pytest.raises(error):
        encode_3dfa(three_dfa, allocation)


def test_encoder_requires_matching_acceptor(apta, three_dfa):
    with pytest.raises(EncodingError):
        ThreeDfaEncoder().encode(apta, (2,))
    with pytest.raises(EncodingError):
        AptaLegacyEncoder().encode(three_dfa, (2,))


def test_encoder_rejects_incomplete_config():
    with pytest.raises(ValueError):
        ThreeDfaEncoder({'nombre': 'three_dfa', 'symmetry': True})


def test_factory_aliases(toy_samples):
    assert isinstance(EncoderFactory.create_encoder('3dfa'), ThreeDfaEncoder)
    assert isinstance(EncoderFactory.create_encoder('apta'), AptaLegacyEncoder)
    assert EncoderFactory.build_acceptor('3dfa', toy_samples).num_states == 7
    assert EncoderFactory.build_acceptor('apta', toy_samples).num_states == 8
    with pytest.raises(ValueError):
        EncoderFactory.create_encoder('nfa')


def test_symmetry_variables():
    vm = VarMap((3,), 2)
    for letter in range(2):
        for i in range(1, 4):
            for j in range(1, 4):
                vm.new('e', 1, letter, i, j)
    encode_symmetry(vm, 1)
    assert vm.count('t') == 3
    assert vm.count('p') == 3
    assert vm.count('m') == 2 * 3


def test_symmetry_toggle(three_dfa):
    with_sym = encode_3dfa(three_dfa, (2, 2), symmetry=True)
    without = encode_3dfa(three_dfa, (2, 2), symmetry=False)
    assert with_sym.num_vars > without.num_vars
    assert without.var_map.count('t') == 0
    assert with_sym.meta['symmetry'] is True


def test_decode_roundtrip(toy_samples, three_dfa):
    instance = encode(three_dfa, (2, 2), 'three_dfa')
    result = solve(instance)
    assert result.status == SAT
    decomposition = decode(instance, result.assignment)
    assert decomposition.allocation == (2, 2)
    assert verify_consistency(decomposition, toy_samples).consistent


def test_decode_rejects_missing_successor(three_dfa):
    instance = encode_3dfa(three_dfa, (2,))
    with pytest.raises(MalformedModel):
        decode(instance, {})


def test_encoding_stats(apta):
    instance = encode_apta_legacy(apta, (2, 3))
    stats = encoding_stats(instance)
    assert stats['num_vars'] == instance.num_vars
    assert stats['num_clauses'] == instance.num_clauses
    assert sum(stats['groups'].values()) == instance.num_clauses
    instance.validate()


def test_three_dfa_sizes_for_two_by_two(three_dfa):
    instance = encode_3dfa(three_dfa, (2, 2), symmetry=False)
    vm = instance.var_map
    assert vm.count('e') == 16
    assert vm.count('z') == 4
    assert vm.count('r') == 4
    assert instance.groups['D2'] == 8


def symmetry_clauses(m, num_letters=2):
    vm = VarMap((m,), num_letters)
    for letter in range(num_letters):
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                vm.new('e', 1, letter, i, j)
    return vm, encode_symmetry(vm, 1)


def test_symmetry_two_states_parent_unit():
    vm, clauses = symmetry_clauses(2)
    assert [c for c in clauses if len(c) == 1] == [[vm[('p', 1, 2, 1)]]]


def test_symmetry_transition_biconditional():
    vm, clauses = symmetry_clauses(2)
    t = vm[('t', 1, 1, 2)]
    ea, eb = vm.e(1, 0, 1, 2), vm.e(1, 1, 1, 2)
    defining = [sorted(c) for c in clauses
                if t in map(abs, c) and all(vm.key_of(abs(lit))[0] in ('t', 'e') for lit in c)]
    assert sorted(defining) == sorted([sorted([-t, ea, eb]), sorted([-ea, t]), sorted([-eb, t])])


def closed_state_clauses(vm, clauses):
    """Cláusulas ¬p[j][i] ∨ ¬t[h][q] con q distinto de j"""
    found = []
    for clause in clauses:
        if len(clause) != 2 or any(lit > 0 for lit in clause):
            continue
        keys = sorted((vm.key_of(-lit) for lit in clause), key=lambda key: key[0])
        if [key[0] for key in keys] == ['p', 't'] and keys[0][2] != keys[1][3]:
            found.append(keys)
    return found


def test_symmetry_closed_states_need_four_indices():
    vm, clauses = symmetry_clauses(3)
    assert closed_state_clauses(vm, clauses) == []
    vm, clauses = symmetry_clauses(4)
    assert closed_state_clauses(vm, clauses) == [[('p', 1, 3, 1), ('t', 1, 2, 4)]]


def fixed_transitions(m, edges):
    """Unidades que fijan δ: edges[(i, letra)] = j, el resto son bucles"""
    vm, clauses = symmetry_clauses(m)
    units = []
    for letter in range(2):
        for i in range(1, m + 1):
            target = edges.get((i, letter), i)
            for j in range(1, m + 1):
                var = vm.e(1, letter, i, j)
                units.append([var] if j == target else [-var])
    return len(vm), clauses + units


def test_symmetry_accepts_depth_first_numbering():
    # 1 -a-> 2 -a-> 3 y 1 -b-> 4: 4 se descubre tras cerrar 2 y 3
    num_vars, clauses = fixed_transitions(4, {(1, 0): 2, (2, 0): 3, (1, 1): 4})
    assert solve_clauses(num_vars, clauses).status == SAT


def test_symmetry_rejects_breadth_first_numbering():
    # 1 -a-> 2, 1 -b-> 3, 2 -a-> 4: en profundidad 4 iría antes que 3
    num_vars, clauses = fixed_transitions(4, {(1, 0): 2, (1, 1): 3, (2, 0): 4})
    assert solve_clauses(num_vars, clauses).status == UNSAT


def test_symmetry_rejects_unordered_siblings():
    # 1 -b-> 2, 1 -a-> 3: el hermano con letra menor debe numerarse primero
    num_vars, clauses = fixed_transitions(3, {(1, 1): 2, (1, 0): 3})
    assert solve_clauses(num_vars, clauses).status == UNSAT


def assignment_from_decomposition(instance, apta, decomposition):
    vm = instance.var_map
    assignment = {var: False for var in range(1, instance.num_vars + 1)}
    for k, dfa in enumerate(decomposition.dfas, start=1):
        for v in apta.states:
            assignment[vm.x(k, v, dfa.run(apta.prefix_of[v]))] = True
        for i, letter, j in dfa.transitions():
            assignment[vm.e(k, letter, i, j)] = True
        for i in dfa.accepting:
            assignment[vm.z(k, i)] = True
        for v in apta.rejecting:
            if not dfa_accepts(dfa, apta.prefix_of[v]):
                assignment[vm.selector(v, k)] = True
    return assignment


def test_legacy_accepts_known_decomposition(apta, toy_decomposition):
    instance = encode_apta_legacy(apta, (2, 2), symmetry=False)
    assignment = assignment_from_decomposition(instance, apta, toy_decomposition)
    assert check_model(instance.clauses, assignment) is None

    units = [[var] if value else [-var] for var, value in assignment.items()]
    result = solve_clauses(instance.num_vars, instance.clauses + units)
    assert result.status == SAT
    assert decode(instance, result.assignment) == toy_decomposition
