"""Server configuration and model loading.

The config file is flat JSON, lower_snake_case: the server keys below plus
any monitor threshold keys. Path keys default to the artifacts baked into
the package; explicitly configured paths must exist and be readable at
startup (ModelMissing otherwise).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping, Optional

from ..dialogue import (
    DialogueModels,
    ModelMissing,
    default_dialogue_grammar,
    load_reply_templates,
    load_resource_text,
    sha256_text,
)
from ..grammar import GrammarError, parse_grammar_file
from ..monitor import ConfigInvalid, MonitorConfig
from ..topics import TopicModel

_SERVER_KEYS = ("bind_address", "data_dir", "grammar_path", "topic_model_path", "reply_template_path")


@dataclass(frozen=True)
class ServerConfig:
    bind_address: str = "127.0.0.1:8714"
    data_dir: str = "./grice-data"
    grammar_path: Optional[str] = None
    topic_model_path: Optional[str] = None
    reply_template_path: Optional[str] = None
    monitor: MonitorConfig = field(default_factory=MonitorConfig)

    def __post_init__(self) -> None:
        self.host_port()

    def host_port(self) -> tuple[str, int]:
        host, sep, port = self.bind_address.rpartition(":")
        if not sep or not host:
            raise ConfigInvalid(f"bind_address must be host:port, got {self.bind_address!r}")
        try:
            port_no = int(port)
        except ValueError:
            raise ConfigInvalid(f"bind_address port {port!r} is not a number") from None
        if not 0 <= port_no <= 65535:
            raise ConfigInvalid(f"bind_address port {port_no} out of range")
        return host, port_no


def server_config_from_dict(data: Mapping[str, Any]) -> ServerConfig:
    server: dict[str, Any] = {}
    monitor: dict[str, Any] = {}
    monitor_keys = {f.name for f in fields(MonitorConfig)}
    for key, value in data.items():
        if key in _SERVER_KEYS:
            server[key] = value
        elif key in monitor_keys:
            monitor[key] = value
        else:
            raise ConfigInvalid(f"unknown config key {key!r}")
    return ServerConfig(monitor=MonitorConfig.from_dict(monitor), **server)


def load_server_config(path: str | Path | None) -> ServerConfig:
    if path is None:
        return ServerConfig()
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise ConfigInvalid(f"cannot read config file {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigInvalid(f"config file {path} must hold a JSON object")
    return server_config_from_dict(data)


def _read(path: Optional[str], resource: str, what: str) -> str:
    if path is None:
        return load_resource_text(resource)
    try:
        return Path(path).read_text("utf-8")
    except OSError as exc:
        raise ModelMissing(f"cannot read {what} at {path}: {exc}") from None


def load_models(cfg: ServerConfig) -> DialogueModels:
    """Model bundle per the config; packaged defaults fill absent paths."""
    dialogue_grammar, grammar_hash = default_dialogue_grammar()
    ref_text = _read(cfg.grammar_path, "ref_grammar.cdg", "reference grammar")
    model_text = _read(cfg.topic_model_path, "topic_model.json", "topic model")
    template_text = _read(cfg.reply_template_path, "reply_templates.json", "reply templates")
    try:
        ref_grammar = parse_grammar_file(ref_text)
    except GrammarError as exc:
        raise ModelMissing(f"reference grammar invalid: {exc}") from None
    try:
        topic_model = TopicModel.from_json(model_text)
    except (ValueError, KeyError) as exc:
        raise ModelMissing(f"topic model invalid: {exc}") from None
    return DialogueModels(
        topic_model=topic_model,
        ref_grammar=ref_grammar,
        dialogue_grammar=dialogue_grammar,
        reply_templates=load_reply_templates(template_text),
        grammar_hash=grammar_hash,
        model_hash=sha256_text(model_text),
    )
