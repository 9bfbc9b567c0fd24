from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import PlainGrammar

from grice.grammar import Cdgs, Component, DerivationMode, Production, Symbol, SymbolKind

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"


def build_grammar(pg: PlainGrammar, default_mode: DerivationMode | None = None) -> Cdgs:
    """Engine grammar from the oracle's plain-data description."""
    nts = frozenset(Symbol(n, SymbolKind.NONTERMINAL) for n in pg.nonterminals)
    ts = frozenset(Symbol(n, SymbolKind.TERMINAL) for n in pg.terminals)
    sym = {s.name: s for s in nts | ts}
    comps = tuple(
        Component(cid, tuple(Production(sym[l], tuple(sym[x] for x in r)) for l, r in prods))
        for cid, prods in pg.components
    )
    return Cdgs(nts, ts, sym[pg.axiom], comps, default_mode)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion, regardless of -s.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[{status}] acceptance: {name}", flush=True)
