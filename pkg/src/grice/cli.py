"""The ``grice`` command line: serve, audit, grammar tooling, LDA tooling.

Exit codes: 0 ok, 1 domain-negative (e.g. a word that is not in the
language), 2 startup failure, 64 usage error, 65 input data error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .dialogue import ModelMissing
from .grammar import (
    DerivationMode,
    GrammarError,
    derive_in_mode,
    enumerate_language,
    form_text,
    membership,
    parse_grammar_file,
)
from .monitor import ConfigInvalid
from .topics import Corpus, EmptyCorpus, LdaConfig, TopicModel, infer, tokenize, train
from .service import TranscriptMalformed, audit_transcript, load_models, load_server_config

EX_DOMAIN = 1
EX_STARTUP = 2
EX_USAGE = 64
EX_DATA = 65


class StartupFailure(Exception):
    pass


@click.group()
def cli() -> None:
    """Norm-aware dialogue engine."""


@cli.command()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON config file (server + monitor keys).")
@click.option("--bind", default=None, help="host:port override.")
def serve(config_path, bind) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    try:
        cfg = load_server_config(config_path)
        if bind is not None:
            import dataclasses

            cfg = dataclasses.replace(cfg, bind_address=bind)
        host, port = cfg.host_port()
        app = create_app(cfg)
    except (ConfigInvalid, ModelMissing, OSError) as exc:
        raise StartupFailure(str(exc)) from None
    uvicorn.run(app, host=host, port=port, log_level="warning")


@cli.command()
@click.argument("transcript", type=click.Path())
@click.option("--config", "config_path", type=click.Path(), default=None)
@click.option("--json", "json_out", type=click.Path(), default=None,
              help="Also write the report as JSON to this path ('-' for stdout).")
@click.option("--dialogue-id", default=None,
              help="Override the dialogue id used for seeding (default: transcript header).")
def audit(transcript, config_path, json_out, dialogue_id) -> None:
    """Audit a transcript file: replay it with robot replies suppressed."""
    cfg = load_server_config(config_path)
    models = load_models(cfg)
    report = audit_transcript(transcript, cfg.monitor, models, dialogue_id=dialogue_id)
    click.echo(report.to_text(), nl=False)
    if json_out == "-":
        click.echo(report.to_json(), nl=False)
    elif json_out:
        Path(json_out).write_text(report.to_json(), "utf-8")


@cli.group()
def grammar() -> None:
    """CDGS grammar tooling."""


def _load_grammar(path: str):
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise GrammarError(f"cannot read grammar file {path}: {exc}") from None
    return parse_grammar_file(text)


def _resolve_mode(grammar_obj, mode_text):
    if mode_text is not None:
        return DerivationMode.parse(mode_text)
    if grammar_obj.default_mode is not None:
        return grammar_obj.default_mode
    return DerivationMode.terminal()


def _word_display(names) -> str:
    if all(len(n) == 1 for n in names):
        return "".join(names)
    return " ".join(names)


@grammar.command("enumerate")
@click.option("--grammar", "grammar_path", required=True, type=click.Path())
@click.option("--mode", "mode_text", default=None, help="*, t, =k, <=k, >=k (default: file header).")
@click.option("--max-len", type=int, required=True)
@click.option("--max-steps", type=int, default=None, help="Total rewriting-step budget (default 4*max_len+8).")
def grammar_enumerate(grammar_path, mode_text, max_len, max_steps) -> None:
    """Print the bounded language, one word per line, sorted."""
    g = _load_grammar(grammar_path)
    mode = _resolve_mode(g, mode_text)
    steps = max_steps if max_steps is not None else 4 * max_len + 8
    result = enumerate_language(g, mode, max_len=max_len, max_steps=steps)
    for word in sorted(_word_display(w) for w in result.words):
        click.echo(word)
    if result.truncated:
        click.echo("note: search truncated by the bounds", err=True)


@grammar.command("member")
@click.option("--grammar", "grammar_path", required=True, type=click.Path())
@click.option("--mode", "mode_text", default=None)
@click.option("--word", required=True)
@click.option("--max-steps", type=int, default=64)
@click.pass_context
def grammar_member(ctx, grammar_path, mode_text, word, max_steps) -> None:
    """Witness derivation for a word, or exit 1 if it is not derivable."""
    g = _load_grammar(grammar_path)
    mode = _resolve_mode(g, mode_text)
    trace = membership(g, mode, word, max_steps=max_steps)
    if trace is None:
        click.echo(f"{word!r} is not derivable within {max_steps} steps", err=True)
        ctx.exit(EX_DOMAIN)
    for block in trace.blocks:
        steps_text = "; ".join(f"{s.production} @ {s.position}" for s in block.steps)
        click.echo(f"{block.component_id} [{block.mode}]: {steps_text} => {form_text(block.result)}")


@grammar.command("derive")
@click.option("--grammar", "grammar_path", required=True, type=click.Path())
@click.option("--form", "form_text_arg", required=True)
@click.option("--mode", "mode_text", default=None)
@click.option("--component", "component_id", default=None, help="Restrict to one component.")
@click.option("--max-steps", type=int, default=16)
@click.option("--max-len", type=int, default=64)
def grammar_derive(grammar_path, form_text_arg, mode_text, component_id, max_steps, max_len) -> None:
    """Print every mode-block successor of a sentential form."""
    g = _load_grammar(grammar_path)
    mode = _resolve_mode(g, mode_text)
    form = g.form_from_text(form_text_arg)
    components = [g.component(component_id)] if component_id else list(g.components)
    truncated = False
    for comp in components:
        result = derive_in_mode(comp, form, mode, max_steps=max_steps, max_len=max_len)
        truncated = truncated or result.truncated
        for successor in sorted(form_text(f) for f in result.forms):
            click.echo(f"{comp.id}: {successor}")
    if truncated:
        click.echo("note: search truncated by the bounds", err=True)


@cli.group()
def lda() -> None:
    """Topic-model tooling."""


@lda.command("train")
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--k", type=int, default=2)
@click.option("--alpha", type=float, default=0.5)
@click.option("--beta", type=float, default=0.01)
@click.option("--sweeps", type=int, default=500)
@click.option("--burn-in", type=int, default=250)
@click.option("--seed", type=int, default=0)
def lda_train(corpus_path, out_path, k, alpha, beta, sweeps, burn_in, seed) -> None:
    """Train on a corpus file (one document per line) and write the model."""
    try:
        lines = Path(corpus_path).read_text("utf-8").splitlines()
    except OSError as exc:
        raise EmptyCorpus(f"cannot read corpus {corpus_path}: {exc}") from None
    docs = [tokenize(line) for line in lines if line.strip()]
    docs = [d for d in docs if d]
    if not docs:
        raise EmptyCorpus(f"corpus {corpus_path} has no usable documents")
    try:
        cfg = LdaConfig(k=k, alpha=alpha, beta=beta, sweeps=sweeps, burn_in=burn_in, seed=seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    model = train(Corpus.from_token_lists(docs), cfg)
    Path(out_path).write_text(model.to_json() + "\n", "utf-8")
    click.echo(f"wrote {out_path} (K={k}, V={model.vocabulary.size}, D={len(docs)})")


@lda.command("infer")
@click.option("--model", "model_path", required=True, type=click.Path())
@click.option("--sweeps", type=int, default=64)
@click.option("--seed", type=int, default=0)
@click.argument("text")
def lda_infer(model_path, sweeps, seed, text) -> None:
    """Print the topic distribution of a document."""
    try:
        model = TopicModel.from_json(Path(model_path).read_text("utf-8"))
    except (OSError, ValueError, KeyError) as exc:
        raise EmptyCorpus(f"cannot load model {model_path}: {exc}") from None
    ids = model.vocabulary.encode(tokenize(text))
    from .topics import EmptyAfterFiltering

    try:
        theta = infer(model, ids, sweeps=sweeps, seed=seed)
    except EmptyAfterFiltering as exc:
        raise EmptyCorpus(str(exc)) from None
    import json

    click.echo(json.dumps([float(x) for x in theta]))


def main(argv=None) -> int:
    try:
        result = cli.main(args=argv, standalone_mode=False)
        return result if isinstance(result, int) else 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EX_USAGE
    except StartupFailure as exc:
        click.echo(f"startup failure: {exc}", err=True)
        return EX_STARTUP
    except (GrammarError, TranscriptMalformed, EmptyCorpus, ConfigInvalid, ModelMissing) as exc:
        click.echo(f"error: {exc}", err=True)
        return EX_DATA
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
