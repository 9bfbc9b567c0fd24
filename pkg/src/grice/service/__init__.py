"""Operational shell: HTTP service, transcript auditing, configuration."""

from .app import create_app, turn_response
from .audit import BreachReport, TranscriptMalformed, audit_transcript, read_transcript
from .config import ServerConfig, load_models, load_server_config, server_config_from_dict
from .store import DialogueNotFound, SessionStore

__all__ = [
    "BreachReport",
    "DialogueNotFound",
    "ServerConfig",
    "SessionStore",
    "TranscriptMalformed",
    "audit_transcript",
    "create_app",
    "load_models",
    "load_server_config",
    "read_transcript",
    "server_config_from_dict",
    "turn_response",
]
