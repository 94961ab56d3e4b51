"""Run configuration, character serialization and the on-disk character cache."""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from .charring import DEFAULT_TERM_BUDGET, AffineCharacter, Character

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
CACHE_ENV = "STEINBERG_DEMAZURE_CACHE"
CONFIG_ENV = "STEINBERG_DEMAZURE_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    convention: str = "bourbaki"
    term_budget: int = DEFAULT_TERM_BUDGET
    brute_bound: int = 3
    cache_dir: str = ""
    threads: int = 1
    output: str = "plain"  # json | csv | plain

    def resolved_cache_dir(self) -> Path:
        if self.cache_dir:
            return Path(self.cache_dir)
        env = os.environ.get(CACHE_ENV)
        if env:
            return Path(env)
        base = os.environ.get("XDG_CACHE_HOME") or os.path.join(Path.home(), ".cache")
        return Path(base) / "steinberg-demazure"


def parse_config(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    types = {f.name: f.type for f in fields(RunConfig)}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in types:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        out[key] = int(value) if types[key] in ("int", int) else value
    return out


def load_config(path=None, **overrides) -> RunConfig:
    """Defaults, then the config file, then explicit overrides (None means unset)."""
    cfg = RunConfig()
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            cfg = replace(cfg, **parse_config(fh.read()))
    given = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **given)


# --- serialization -------------------------------------------------------------

def _delta_parts(n):
    n = Fraction(n)
    return n.numerator, n.denominator


def character_to_records(chi) -> list:
    """Sorted (coords, delta numerator, delta denominator, coefficient) records."""
    if isinstance(chi, Character):
        items = ((w, 0, c) for w, c in chi.items())
    else:
        items = ((w, n, c) for (w, n), c in chi.items())
    recs = [[list(w), *_delta_parts(n), c] for w, n, c in items]
    recs.sort(key=lambda r: (r[0], Fraction(r[1], r[2])), reverse=True)
    return recs


def character_to_dict(chi) -> dict:
    if isinstance(chi, Character):
        return {"kind": "classical", "terms": character_to_records(chi)}
    return {"kind": "affine", "level": chi.level, "graded": chi.graded,
            "terms": character_to_records(chi)}


def character_from_dict(d):
    recs = d["terms"]
    if d.get("kind", "classical") == "classical":
        return Character({tuple(w): c for w, _, _, c in recs})
    terms = {}
    for w, num, den, c in recs:
        n = Fraction(num, den)
        terms[(tuple(w), int(n) if n.denominator == 1 else n)] = c
    return AffineCharacter(d["level"], terms, graded=d["graded"])


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# --- cache -------------------------------------------------------------------

def cache_key(type_letter, rank, level, lam, graded, kind="demazure") -> dict:
    return {"version": FORMAT_VERSION, "kind": kind, "type": type_letter, "rank": rank,
            "level": level, "lambda": list(lam), "graded": bool(graded)}


class CharacterCache:
    """One JSON file per key, written by temp file plus atomic rename."""

    def __init__(self, directory, version: int = FORMAT_VERSION):
        self.directory = Path(directory)
        self.version = version

    def _path(self, key: dict) -> Path:
        key = dict(key, version=self.version)
        digest = hashlib.sha256(dumps_canonical(key).encode()).hexdigest()
        return self.directory / f"{digest}.json"

    def get(self, key: dict):
        path = self._path(key)
        try:
            raw = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        try:
            entry = json.loads(raw)
            payload = dumps_canonical(entry["value"])
            if hashlib.sha256(payload.encode()).hexdigest() != entry["checksum"]:
                raise ValueError("checksum mismatch")
            if entry["key"].get("version") != self.version:
                return None
            return character_from_dict(entry["value"])
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring corrupt cache entry %s: %s", path.name, exc)
            return None

    def put(self, key: dict, chi) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        value = character_to_dict(chi)
        payload = dumps_canonical(value)
        entry = {"key": dict(key, version=self.version), "value": value,
                 "checksum": hashlib.sha256(payload.encode()).hexdigest()}
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(dumps_canonical(entry))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def gc(self) -> int:
        """Delete corrupt, stale-version and leftover temp files; returns the count."""
        if not self.directory.is_dir():
            return 0
        removed = 0
        for p in self.directory.iterdir():
            if p.name.startswith(".tmp-"):
                p.unlink(missing_ok=True)
                removed += 1
                continue
            if p.suffix != ".json":
                continue
            try:
                entry = json.loads(p.read_text(encoding="utf-8"))
                payload = dumps_canonical(entry["value"])
                good = (hashlib.sha256(payload.encode()).hexdigest() == entry["checksum"]
                        and entry["key"].get("version") == self.version)
            except (ValueError, KeyError, TypeError):
                good = False
            if not good:
                p.unlink(missing_ok=True)
                removed += 1
        return removed


def cached_character(cache, rs, level, lam, graded=False):
    """(character, hit) for D(level, lam), going through ``cache`` when given."""
    from .demazure import demazure_character

    key = cache_key(rs.type_letter, rs.rank, level, lam, graded)
    if cache is not None:
        got = cache.get(key)
        if got is not None:
            return got, True
    chi = demazure_character(rs, level, tuple(lam), graded=graded)
    if cache is not None:
        cache.put(key, chi)
    return chi, False
