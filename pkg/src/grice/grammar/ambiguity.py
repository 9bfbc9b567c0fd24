"""Saturating parse-tree counting for ambiguity detection.

Counts distinct parse trees of a word under a single context-free grammar
with a span-based packed chart. All arithmetic saturates at ``cap``:
ambiguity detection only needs to know whether the count reaches 2, so the
cap bounds work on grammars with exponentially many trees. Grammars whose
unit productions cycle (A =>+ A over the same span) have infinitely many
trees for any word that span derives; those report ``cap``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .model import (
    Cdgs,
    GrammarError,
    NotEpsilonFree,
    Production,
    Symbol,
)


def count_parse_trees(grammar: Cdgs, word: Sequence[str], cap: int) -> int:
    """Number of distinct parse trees of ``word``, saturated at ``cap``.

    ``grammar`` must consist of a single component (a plain CFG). Tokens
    not in the terminal alphabet simply yield 0 (the word has no parse).
    """
    if cap < 2:
        raise GrammarError(f"cap must be >= 2, got {cap}")
    if len(grammar.components) != 1:
        raise GrammarError(
            f"count_parse_trees expects a single-component grammar, got {len(grammar.components)}"
        )
    productions = grammar.components[0].productions
    for prod in productions:
        if len(prod.rhs) == 0:
            raise NotEpsilonFree(f"erasing rule {prod} present")

    terminals_by_name = {s.name: s for s in grammar.terminals}
    tokens: list[Symbol] = []
    for name in word:
        sym = terminals_by_name.get(name)
        if sym is None:
            return 0
        tokens.append(sym)
    n = len(tokens)
    if n == 0:
        return 0

    by_lhs: dict[Symbol, list[Production]] = {}
    for prod in productions:
        by_lhs.setdefault(prod.lhs, []).append(prod)

    def sat_add(a: int, b: int) -> int:
        return min(a + b, cap)

    def sat_mul(a: int, b: int) -> int:
        return min(a * b, cap)

    # counts[(A, i, j)] = saturated number of trees with root A spanning
    # tokens[i:j]; filled bottom-up by span length so that non-unit
    # productions only consult strictly smaller spans.
    counts: dict[tuple[Symbol, int, int], int] = {}

    def seq_ways(rhs: tuple[Symbol, ...], i: int, j: int) -> int:
        # ways to split tokens[i:j] across rhs; every symbol spans >= 1 token
        total_syms = len(rhs)

        def rec(t: int, at: int, memo: dict) -> int:
            if t == total_syms:
                return 1 if at == j else 0
            key = (t, at)
            if key in memo:
                return memo[key]
            acc = 0
            remaining = total_syms - t - 1
            sym = rhs[t]
            for end in range(at + 1, j - remaining + 1):
                here = _sym_count(sym, at, end)
                if here:
                    acc = sat_add(acc, sat_mul(here, rec(t + 1, end, memo)))
            memo[key] = acc
            return acc

        return rec(0, i, {})

    def _sym_count(sym: Symbol, i: int, j: int) -> int:
        if not sym.is_nonterminal:
            return 1 if (j == i + 1 and tokens[i] == sym) else 0
        return counts.get((sym, i, j), 0)

    for length in range(1, n + 1):
        for i in range(0, n - length + 1):
            j = i + length
            # base counts exclude unit nonterminal productions, which stay on
            # the same span and are resolved as a graph afterwards
            base: dict[Symbol, int] = {}
            unit_edges: dict[Symbol, list[Symbol]] = {}
            for lhs, prods in by_lhs.items():
                acc = 0
                for prod in prods:
                    if len(prod.rhs) == 1 and prod.rhs[0].is_nonterminal:
                        unit_edges.setdefault(lhs, []).append(prod.rhs[0])
                        continue
                    acc = sat_add(acc, seq_ways(prod.rhs, i, j))
                base[lhs] = acc
            for lhs, total in _resolve_unit_graph(base, unit_edges, cap).items():
                if total:
                    counts[(lhs, i, j)] = total

    return _sym_count(grammar.axiom, 0, n)


def _resolve_unit_graph(
    base: dict[Symbol, int],
    unit_edges: dict[Symbol, list[Symbol]],
    cap: int,
) -> dict[Symbol, int]:
    """total[A] = base[A] + sum over unit productions A->B of total[B].

    Solved over the unit-production graph via Tarjan condensation; any
    strongly connected part with a nonzero count inside or below it denotes
    infinitely many trees and saturates to cap.
    """
    nodes = list(base)
    index: dict[Symbol, int] = {}
    low: dict[Symbol, int] = {}
    on_stack: set[Symbol] = set()
    stack: list[Symbol] = []
    sccs: list[list[Symbol]] = []
    scc_of: dict[Symbol, int] = {}
    counter = [0]

    def strongconnect(v: Symbol) -> None:
        # iterative Tarjan to keep recursion depth independent of grammar size
        work = [(v, iter(unit_edges.get(v, ())))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in base:
                    continue
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(unit_edges.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    scc_of[w] = len(sccs)
                    if w == node:
                        break
                sccs.append(scc)

    for v in nodes:
        if v not in index:
            strongconnect(v)

    # Tarjan emits SCCs in reverse topological order: successors first.
    total: dict[Symbol, int] = {}
    for scc_id, members in enumerate(sccs):
        cyclic = len(members) > 1 or any(
            m in unit_edges.get(m, ()) for m in members
        )
        inflow = 0
        for m in members:
            inflow = min(inflow + base.get(m, 0), cap)
            for w in unit_edges.get(m, ()):
                if w in base and scc_of.get(w) != scc_id:
                    inflow = min(inflow + total.get(w, 0), cap)
        if cyclic:
            value = cap if inflow > 0 else 0
            for m in members:
                total[m] = value
        else:
            (m,) = members
            acc = base.get(m, 0)
            for w in unit_edges.get(m, ()):
                if w in base and scc_of.get(w) != scc_id:
                    acc = min(acc + total.get(w, 0), cap)
            total[m] = acc
    return total
