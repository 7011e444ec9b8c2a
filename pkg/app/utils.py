"""
utils file for the geodesic variance lab
"""

import copy
import csv
import hashlib
import io
import json
import logging
import os

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    "experiment": {
        "r": 0.0,
        "R": 0.01,
        "L": 50.0,
        "A": 10.0,
        "n": 1000,
        "seed": 42,
        "workers": 1,
        "step": 0.5,
        "chunk_size": 256,
    },
    "enumeration": {"hit_cap": 1_000_000},
    "cache": {"dir": "cache"},
    "results": {"ledger": "results/ledger.jsonl"},
    "plot": {"step": 0.05, "max_pieces": 10_000, "width": 800},
    "logging": {"level": "INFO"},
}

INTEGER_KEYS = {"n", "seed", "workers", "chunk_size", "hit_cap", "max_pieces", "width"}
STRING_KEYS = {"dir", "ledger", "level"}
LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


def load_config(file_path):
    """
    Load configuration from a JSON file and fill in defaults.

    Args:
        file_path (str): Path to the configuration file.

    Returns:
        dict: Every known section, with missing keys taken from DEFAULT_CONFIG.
    """

    with open(file_path, "r") as file:
        raw = json.load(file)
    if not isinstance(raw, dict):
        raise ValueError("Configuration file must contain a JSON object.")

    config = copy.deepcopy(DEFAULT_CONFIG)
    for section, values in raw.items():
        if section not in DEFAULT_CONFIG:
            raise ValueError(f"Unknown configuration section: {section}")
        if not isinstance(values, dict):
            raise ValueError(f"Configuration section '{section}' must be an object.")
        for key, value in values.items():
            if key not in DEFAULT_CONFIG[section]:
                raise ValueError(f"Unknown key '{key}' in section '{section}'")
            if key in STRING_KEYS:
                if not isinstance(value, str):
                    raise ValueError(f"{section}.{key} must be a string.")
            elif key in INTEGER_KEYS:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ValueError(f"{section}.{key} must be an integer.")
            elif isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"{section}.{key} must be a number.")
            config[section][key] = value

    if config["logging"]["level"].upper() not in LOG_LEVELS:
        raise ValueError(f"Invalid logging level: {config['logging']['level']}. Must be one of {LOG_LEVELS}.")
    config["cache"]["dir"] = os.path.expanduser(config["cache"]["dir"])
    config["results"]["ledger"] = os.path.expanduser(config["results"]["ledger"])
    return config


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def content_hash(data) -> str:
    """Git-style blob SHA-1 of the canonical JSON encoding of data."""
    body = canonical_json(data).encode("utf-8")
    return hashlib.sha1(b"blob %d\0" % len(body) + body).hexdigest()


def append_ledger(path: str, record: dict) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "a") as file:
        file.write(canonical_json(record) + "\n")
    logger.debug(f"Appended {record.get('command')} run to {path}")


def format_table(rows: list[dict], fmt: str = "csv") -> str:
    """Render rows (dicts sharing their keys) as CSV with a header, or JSON."""
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"Unknown output format: {fmt}")
    buffer = io.StringIO()
    if rows:
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buffer.getvalue()
