"""
Solver CDCL integrado: dos literales vigilados, aprendizaje 1UIP con
retroceso no cronológico, actividad tipo VSIDS, guardado de fase y
reinicios según la secuencia de Luby.
"""

import heapq
import logging
import time
from typing import Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)

TRUE, FALSE, UNASSIGNED = 1, -1, 0

_ACTIVITY_DECAY = 0.95
_RESTART_BASE = 100
_DEADLINE_CHECK = 128


def luby(i: int) -> int:
    """i-ésimo término (desde 1) de la secuencia de Luby: 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while (1 << k) - 1 != i:
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1
    return 1 << (k - 1)


class CdclSolver:
    """Una instancia por fórmula; ``solve`` no es reentrante"""

    def __init__(self, num_vars: int, clauses: Sequence[Sequence[int]]):
        self.num_vars = num_vars
        self.values: List[int] = [UNASSIGNED] * (num_vars + 1)
        self.level: List[int] = [0] * (num_vars + 1)
        self.reason: List[Optional[int]] = [None] * (num_vars + 1)
        self.saved: List[bool] = [False] * (num_vars + 1)
        self.activity: List[float] = [0.0] * (num_vars + 1)
        self.bump = 1.0

        self.clauses: List[List[int]] = []
        self.watches: Dict[int, List[int]] = {lit: [] for v in range(1, num_vars + 1) for lit in (v, -v)}
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.heap = [(0.0, v) for v in range(1, num_vars + 1)]

        self.conflicts = 0
        self.decisions = 0
        self.inconsistent = False

        for clause in clauses:
            self._add_input_clause(clause)

    # Literales

    def value(self, lit: int) -> int:
        v = self.values[abs(lit)]
        return v if lit > 0 else -v

    @property
    def decision_level(self) -> int:
        return len(self.trail_lim)

    def _enqueue(self, lit: int, reason: Optional[int]) -> None:
        var = abs(lit)
        self.values[var] = TRUE if lit > 0 else FALSE
        self.level[var] = self.decision_level
        self.reason[var] = reason
        self.trail.append(lit)

    def _add_input_clause(self, clause: Sequence[int]) -> None:
        if self.inconsistent:
            return
        lits = list(dict.fromkeys(clause))
        if any(-lit in lits for lit in lits):
            return  # tautología
        if not lits:
            self.inconsistent = True
            return
        if len(lits) == 1:
            current = self.value(lits[0])
            if current == FALSE:
                self.inconsistent = True
            elif current == UNASSIGNED:
                self._enqueue(lits[0], None)
            return
        self._attach(lits)

    def _attach(self, lits: List[int]) -> int:
        index = len(self.clauses)
        self.clauses.append(lits)
        self.watches[lits[0]].append(index)
        self.watches[lits[1]].append(index)
        return index

    # Propagación

    def _propagate(self) -> Optional[int]:
        """Propagación unitaria; devuelve el índice de la cláusula en conflicto"""
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watchers = self.watches[false_lit]
            i = j = 0
            while i < len(watchers):
                ci = watchers[i]
                i += 1
                clause = self.clauses[ci]
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self.value(first) == TRUE:
                    watchers[j] = ci
                    j += 1
                    continue

                moved = False
                for k in range(2, len(clause)):
                    if self.value(clause[k]) != FALSE:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches[clause[1]].append(ci)
                        moved = True
                        break
                if moved:
                    continue

                watchers[j] = ci
                j += 1
                if self.value(first) == FALSE:
                    while i < len(watchers):
                        watchers[j] = watchers[i]
                        j += 1
                        i += 1
                    del watchers[j:]
                    return ci
                self._enqueue(first, ci)
            del watchers[j:]
        return None

    # Análisis de conflictos

    def _bump(self, var: int) -> None:
        self.activity[var] += self.bump
        if self.activity[var] > 1e100:
            for v in range(1, self.num_vars + 1):
                self.activity[v] *= 1e-100
            self.bump *= 1e-100
            self.heap = [(-self.activity[v], v) for v in range(1, self.num_vars + 1)
                         if self.values[v] == UNASSIGNED]
            heapq.heapify(self.heap)
        elif self.values[var] == UNASSIGNED:
            heapq.heappush(self.heap, (-self.activity[var], var))

    def _analyze(self, conflict: int):
        """Cláusula aprendida 1UIP (literal afirmado primero) y nivel de retroceso"""
        learnt: List[int] = [0]
        seen = set()
        counter = 0
        p = None
        index = len(self.trail) - 1
        clause = self.clauses[conflict]

        while True:
            for q in (clause if p is None else clause[1:]):
                var = abs(q)
                if var in seen or self.level[var] == 0:
                    continue
                seen.add(var)
                self._bump(var)
                if self.level[var] == self.decision_level:
                    counter += 1
                else:
                    learnt.append(q)
            while abs(self.trail[index]) not in seen:
                index -= 1
            p = self.trail[index]
            index -= 1
            seen.discard(abs(p))
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[abs(p)]]

        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        # El literal de mayor nivel va en la segunda posición vigilada
        best = max(range(1, len(learnt)), key=lambda k: self.level[abs(learnt[k])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _backtrack(self, level: int) -> None:
        if self.decision_level <= level:
            return
        limit = self.trail_lim[level]
        for lit in self.trail[limit:]:
            var = abs(lit)
            self.saved[var] = lit > 0
            self.values[var] = UNASSIGNED
            self.reason[var] = None
            heapq.heappush(self.heap, (-self.activity[var], var))
        del self.trail[limit:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    def _pick_branch(self) -> Optional[int]:
        while self.heap:
            _, var = heapq.heappop(self.heap)
            if self.values[var] == UNASSIGNED:
                return var if self.saved[var] else -var
        return None

    # Búsqueda

    def solve(self, time_budget_s: Optional[float] = None) -> Optional[bool]:
        """
        Returns:
            True (sat), False (unsat) o None si se agota el tiempo
        """
        if self.inconsistent:
            return False
        if self._propagate() is not None:
            return False

        deadline = time.monotonic() + time_budget_s if time_budget_s is not None else None
        restart_index = 1
        conflicts_until_restart = luby(restart_index) * _RESTART_BASE
        steps = 0

        while True:
            steps += 1
            if deadline is not None and steps % _DEADLINE_CHECK == 0 and time.monotonic() > deadline:
                logger.debug("CDCL: tiempo agotado tras %d conflictos", self.conflicts)
                return None

            conflict = self._propagate()
            if conflict is not None:
                self.conflicts += 1
                if self.decision_level == 0:
                    return False
                learnt, back_level = self._analyze(conflict)
                self._backtrack(back_level)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._enqueue(learnt[0], self._attach(learnt))
                self.bump /= _ACTIVITY_DECAY

                conflicts_until_restart -= 1
                if conflicts_until_restart <= 0:
                    restart_index += 1
                    conflicts_until_restart = luby(restart_index) * _RESTART_BASE
                    self._backtrack(0)
                continue

            lit = self._pick_branch()
            if lit is None:
                return True
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)

    def model(self) -> Dict[int, bool]:
        return {v: self.values[v] == TRUE for v in range(1, self.num_vars + 1)}
