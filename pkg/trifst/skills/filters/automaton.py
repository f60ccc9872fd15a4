"""
Filter automata: small deterministic, all-accepting automata over a move
alphabet. Blocking is expressed by absent transitions.

`derive_filter` rebuilds a filter from its forbidden factors: automaton for
Σ*(f1 + ... + fk)Σ*, subset construction, complementation, removal of the
non-coaccessible sink and Moore minimization.
"""
from collections import deque
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ...core.exceptions import FilterError

Symbol = Hashable


class FilterAutomaton:
    """Deterministic automaton with initial state 0 and every state accepting"""

    def __init__(self, alphabet: Sequence[Symbol], transitions: Dict[Tuple[int, Symbol], int],
                 num_states: int, name: str = ""):
        """
        Initialize filter automaton

        Args:
            alphabet: Ordered move alphabet
            transitions: (state, symbol) -> target state
            num_states: Number of states, numbered from 0
            name: Label used in logs and DOT output
        """
        self.alphabet: Tuple[Symbol, ...] = tuple(alphabet)
        self.transitions: Dict[Tuple[int, Symbol], int] = dict(transitions)
        self.num_states = num_states
        self.initial = 0
        self.name = name

    def step(self, state: int, symbol: Symbol) -> Optional[int]:
        """Target of (state, symbol), or None when the move is blocked"""
        return self.transitions.get((state, symbol))

    def allowed(self, state: int) -> List[Symbol]:
        return [s for s in self.alphabet if (state, s) in self.transitions]

    def accepts(self, sequence: Iterable[Symbol]) -> bool:
        state = self.initial
        for symbol in sequence:
            state = self.step(state, symbol)
            if state is None:
                return False
        return True

    @property
    def num_transitions(self) -> int:
        return len(self.transitions)

    def __repr__(self):
        return f"<FilterAutomaton {self.name} states={self.num_states} transitions={self.num_transitions}>"


def _ordered(alphabet: Iterable[Symbol]) -> Tuple[Symbol, ...]:
    if isinstance(alphabet, (set, frozenset)):
        return tuple(sorted(alphabet, key=str))
    return tuple(alphabet)


def derive_filter(alphabet: Iterable[Symbol], forbidden_factors: Iterable[Sequence[Symbol]],
                  name: str = "") -> FilterAutomaton:
    """
    Minimal DFA accepting the sequences that contain no forbidden factor

    Args:
        alphabet: Move symbols (ordered sequences keep their order; sets are sorted by str)
        forbidden_factors: Factors of length 1 or 2
        name: Name of the resulting filter

    Returns:
        Trimmed, minimized, canonically numbered filter
    """
    sigma = _ordered(alphabet)
    if not sigma:
        raise FilterError("filter alphabet is empty")
    factors = [tuple(f) for f in forbidden_factors]
    for factor in factors:
        if len(factor) not in (1, 2):
            raise FilterError(f"forbidden factor {factor} must have length 1 or 2")
        for symbol in factor:
            if symbol not in sigma:
                raise FilterError(f"factor symbol {symbol!r} is not in the alphabet")

    # NFA for Σ* F Σ*: a trie over factor prefixes, "" is the looping start,
    # None is the absorbing "factor seen" state.
    factor_set = set(factors)
    first_symbols = {factor[:1] for factor in factors if len(factor) == 2}
    seen_factor = None

    def nfa_step(state, symbol):
        targets = set()
        if state is seen_factor:
            return {seen_factor}
        if state == ():
            targets.add(())
        extended = state + (symbol,)
        if extended in factor_set:
            targets.add(seen_factor)
        elif extended in first_symbols:
            targets.add(extended)
        return targets

    start: FrozenSet = frozenset({()})
    subsets: Dict[FrozenSet, int] = {start: 0}
    order = [start]
    dfa: Dict[Tuple[int, Symbol], int] = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for symbol in sigma:
            target = frozenset(t for s in subset for t in nfa_step(s, symbol))
            if not target:
                continue
            if target not in subsets:
                subsets[target] = len(order)
                order.append(target)
                queue.append(target)
            dfa[(subsets[subset], symbol)] = subsets[target]

    # Complement: a subset is accepting iff no factor has been completed.
    accepting = {i for i, subset in enumerate(order) if seen_factor not in subset}
    if 0 not in accepting:
        raise FilterError("every sequence is forbidden: the empty language has no filter")
    coaccessible = set(accepting)
    changed = True
    while changed:
        changed = False
        for (src, _), dst in dfa.items():
            if dst in coaccessible and src not in coaccessible:
                coaccessible.add(src)
                changed = True
    partial = {(src, sym): dst for (src, sym), dst in dfa.items()
               if src in coaccessible and dst in coaccessible and src in accepting and dst in accepting}
    logger.debug(f"derive_filter {name}: {len(order)} subsets, {len(accepting)} accepting")
    return _canonical(_minimize(sigma, partial, sorted(accepting & coaccessible)), name)


def _minimize(sigma: Tuple[Symbol, ...], transitions: Dict[Tuple[int, Symbol], int],
              states: List[int]) -> FilterAutomaton:
    """Moore partition refinement; a missing transition acts as a dead state"""
    block = {q: 0 for q in states}
    while True:
        signatures: Dict[tuple, int] = {}
        refined = {}
        for q in states:
            signature = (block[q],) + tuple(
                block.get(transitions.get((q, s)), -1) if (q, s) in transitions else -1 for s in sigma)
            refined[q] = signatures.setdefault(signature, len(signatures))
        if len(signatures) == len(set(block.values())):
            break
        block = refined
    merged = {}
    for (src, sym), dst in transitions.items():
        merged[(block[src], sym)] = block[dst]
    initial_block = block[0]
    # move the initial block to id 0 before canonical renumbering
    swap = {initial_block: 0, 0: initial_block}
    merged = {(swap.get(s, s), sym): swap.get(d, d) for (s, sym), d in merged.items()}
    return FilterAutomaton(sigma, merged, len(set(block.values())))


def _canonical(automaton: FilterAutomaton, name: str) -> FilterAutomaton:
    """Renumber states in BFS order from the initial state, alphabet order on ties"""
    numbering = {automaton.initial: 0}
    queue = deque([automaton.initial])
    while queue:
        q = queue.popleft()
        for symbol in automaton.alphabet:
            target = automaton.step(q, symbol)
            if target is not None and target not in numbering:
                numbering[target] = len(numbering)
                queue.append(target)
    transitions = {(numbering[s], sym): numbering[d] for (s, sym), d in automaton.transitions.items()
                   if s in numbering}
    return FilterAutomaton(automaton.alphabet, transitions, len(numbering), name)


def is_isomorphic(A: FilterAutomaton, B: FilterAutomaton) -> bool:
    """
    Structural equality up to state renumbering

    Both automata are deterministic with a single initial state, so a joint
    BFS fixes the only candidate bijection.
    """
    if set(A.alphabet) != set(B.alphabet) or A.num_states != B.num_states:
        return False
    mapping = {A.initial: B.initial}
    queue = deque([A.initial])
    while queue:
        qa = queue.popleft()
        qb = mapping[qa]
        for symbol in A.alphabet:
            ta, tb = A.step(qa, symbol), B.step(qb, symbol)
            if (ta is None) != (tb is None):
                return False
            if ta is None:
                continue
            if ta in mapping:
                if mapping[ta] != tb:
                    return False
            else:
                if tb in mapping.values():
                    return False
                mapping[ta] = tb
                queue.append(ta)
    return len(mapping) == A.num_states and A.num_transitions == B.num_transitions


def enumerate_language(A: FilterAutomaton, max_len: int) -> List[Tuple[Symbol, ...]]:
    """All accepted sequences of length <= max_len, shortest first"""
    accepted: List[Tuple[Symbol, ...]] = [()]
    frontier = [((), A.initial)]
    for _ in range(max_len):
        nxt = []
        for prefix, state in frontier:
            for symbol in A.alphabet:
                target = A.step(state, symbol)
                if target is not None:
                    nxt.append((prefix + (symbol,), target))
        accepted.extend(seq for seq, _ in nxt)
        frontier = nxt
    return accepted
