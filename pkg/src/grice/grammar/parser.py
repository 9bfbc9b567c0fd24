"""Parser for the line-oriented grammar file format.

Format (UTF-8, ``#`` starts a comment):

    nonterminals: S A A' B B'
    terminals: a b c
    axiom: S
    mode: t            # optional; one of *, t, =k, <=k, >=k
    component P1:
      S -> A B
      A' -> A
      B' -> B

Right-hand sides are whitespace-separated symbol names; alternatives are
written as repeated lines, one production per line. Headers precede the
component sections.
"""

from __future__ import annotations

from .model import (
    Cdgs,
    Component,
    DerivationMode,
    DuplicateComponentId,
    EmptyComponent,
    ErasingRuleRejected,
    GrammarError,
    GrammarSyntaxError,
    Production,
    SYMBOL_NAME_RE,
    Symbol,
    SymbolKind,
    UndeclaredSymbol,
)

_HEADERS = ("nonterminals", "terminals", "axiom", "mode")


def parse_grammar_file(text: str) -> Cdgs:
    """Parse grammar-definition text into a validated :class:`Cdgs`.

    Errors carry the 1-based line (and column where meaningful) of the
    offending token.
    """
    seen_headers: set[str] = set()
    symbols: dict[str, Symbol] = {}
    nonterminals: frozenset[Symbol] = frozenset()
    terminals: frozenset[Symbol] = frozenset()
    axiom_decl: tuple[str, int] | None = None
    default_mode: DerivationMode | None = None
    components: list[tuple[str, int, list[Production]]] = []
    current: list[Production] | None = None

    lines = text.splitlines()

    def declare(names_text: str, kind: SymbolKind, lineno: int) -> frozenset[Symbol]:
        raw = lines[lineno - 1]
        out = []
        for name in names_text.split():
            col = raw.find(name) + 1
            if not SYMBOL_NAME_RE.match(name):
                raise GrammarSyntaxError(f"invalid symbol name {name!r}", lineno, col)
            if name in symbols:
                raise GrammarSyntaxError(f"symbol {name!r} declared twice", lineno, col)
            symbols[name] = Symbol(name, kind)
            out.append(symbols[name])
        return frozenset(out)

    def resolve(name: str, lineno: int, column: int) -> Symbol:
        if name not in symbols:
            if not SYMBOL_NAME_RE.match(name):
                raise GrammarSyntaxError(f"invalid symbol name {name!r}", lineno, column)
            raise UndeclaredSymbol(f"symbol {name!r} is not declared", lineno, column)
        return symbols[name]

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        head = stripped.split(":", 1)[0].strip().lower() if ":" in stripped else None

        if head in _HEADERS:
            if head in seen_headers:
                raise GrammarSyntaxError(f"duplicate {head!r} header", lineno, 1)
            if current is not None:
                raise GrammarSyntaxError(f"{head!r} header after component section", lineno, 1)
            seen_headers.add(head)
            value = stripped.split(":", 1)[1].strip()
            if head == "nonterminals":
                nonterminals = declare(value, SymbolKind.NONTERMINAL, lineno)
            elif head == "terminals":
                terminals = declare(value, SymbolKind.TERMINAL, lineno)
            elif head == "axiom":
                # resolved after the loop so header order stays free
                axiom_decl = (value, lineno)
            else:
                try:
                    default_mode = DerivationMode.parse(value)
                except GrammarError as exc:
                    raise GrammarSyntaxError(f"invalid mode: {exc}", lineno, 1) from None
            continue

        if stripped.lower().startswith("component"):
            for required in ("nonterminals", "terminals"):
                if required not in seen_headers:
                    raise GrammarSyntaxError(f"missing {required!r} header", lineno, 1)
            if not stripped.endswith(":"):
                raise GrammarSyntaxError("component line must end with ':'", lineno, len(line))
            comp_id = stripped[len("component"):-1].strip()
            if not comp_id:
                raise GrammarSyntaxError("component needs an id", lineno, 1)
            if any(c[0] == comp_id for c in components):
                raise DuplicateComponentId(f"component id {comp_id!r} declared twice", lineno, 1)
            current = []
            components.append((comp_id, lineno, current))
            continue

        if "->" in stripped:
            if current is None:
                raise GrammarSyntaxError("production before any component", lineno, 1)
            lhs_text, rhs_text = stripped.split("->", 1)
            lhs_name = lhs_text.strip()
            if not lhs_name or len(lhs_name.split()) != 1:
                raise GrammarSyntaxError(
                    f"production lhs must be a single symbol, got {lhs_text.strip()!r}", lineno, 1
                )
            lhs_col = raw.find(lhs_name) + 1
            lhs = resolve(lhs_name, lineno, lhs_col)
            if not lhs.is_nonterminal:
                raise GrammarSyntaxError(f"production lhs {lhs_name!r} must be a nonterminal", lineno, lhs_col)
            rhs_names = rhs_text.split()
            if not rhs_names:
                raise ErasingRuleRejected(f"erasing rule for {lhs_name!r} rejected", lineno, len(line) + 1)
            arrow_at = raw.find("->")
            rhs = tuple(resolve(name, lineno, raw.find(name, arrow_at) + 1) for name in rhs_names)
            prod = Production(lhs, rhs)
            if prod not in current:
                current.append(prod)
            continue

        raise GrammarSyntaxError(f"cannot parse line {stripped!r}", lineno, 1)

    for required in ("nonterminals", "terminals", "axiom"):
        if required not in seen_headers:
            raise GrammarSyntaxError(f"missing {required!r} header", len(lines) or 1, 1)
    assert axiom_decl is not None
    axiom_name, axiom_line = axiom_decl
    if axiom_name not in symbols or not symbols[axiom_name].is_nonterminal:
        raise UndeclaredSymbol(f"axiom {axiom_name!r} is not a declared nonterminal", axiom_line, 1)
    axiom = symbols[axiom_name]

    if not components:
        raise GrammarSyntaxError("no components declared", len(lines) or 1, 1)

    built = []
    for comp_id, comp_line, prods in components:
        if not prods:
            raise EmptyComponent(f"component {comp_id!r} has no productions", comp_line, 1)
        built.append(Component(comp_id, tuple(prods)))

    return Cdgs(
        nonterminals=nonterminals,
        terminals=terminals,
        axiom=axiom,
        components=tuple(built),
        default_mode=default_mode,
    )
