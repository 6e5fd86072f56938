"""Line-oriented manifests: sections of key=value pairs with exact values.

Syntax::

    # comment
    [query]
    lattice = 1,-1x8
    c1 = 3,1,1,1,1,1,1,1,1
    C = -3,-1,-1,-1,-1,-1,-1,-1,-1
    p1 = -3
    r = 1
    bound = 6

Sections are keyed by module; unknown sections or keys are rejected with
their line number, and every numeric value is parsed exactly (integers,
integer vectors, or rationals in p/q form).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError


class ManifestError(ValidationError):
    """Parse or validation failure, carrying a location."""


SECTION_KEYS: dict[str, set[str]] = {
    "lattice": {"spec"},
    "bundle": {"c1", "c2"},
    "spin": {"C"},
    "query": {"lattice", "c1", "C", "p1", "c2", "r", "bound", "center"},
    "surface": {"K2", "pg", "q", "c2", "r"},
    "pairs": {"degE", "sigma", "candidate"},
}

REPEATABLE = {("pairs", "candidate")}


@dataclass
class Manifest:
    """Parsed sections; values are raw strings with their line numbers."""

    sections: dict[str, dict[str, list[tuple[str, int]]]] = field(default_factory=dict)
    path: str = "<manifest>"

    def section(self, name: str) -> dict[str, list[tuple[str, int]]]:
        if name not in self.sections:
            raise ManifestError(f"{self.path}: missing [{name}] section")
        return self.sections[name]

    def has_section(self, name: str) -> bool:
        return name in self.sections

    def get(self, section: str, key: str) -> str | None:
        entries = self.sections.get(section, {}).get(key)
        return entries[0][0] if entries else None

    def require(self, section: str, key: str) -> str:
        value = self.get(section, key)
        if value is None:
            raise ManifestError(f"{self.path}: [{section}] is missing key {key!r}")
        return value

    def get_all(self, section: str, key: str) -> list[str]:
        return [v for v, _ in self.sections.get(section, {}).get(key, [])]


def parse_manifest(text: str, path: str = "<manifest>") -> Manifest:
    manifest = Manifest(path=path)
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in SECTION_KEYS:
                raise ManifestError(f"{path}:{lineno}: unknown section [{name}]")
            if name in manifest.sections:
                raise ManifestError(f"{path}:{lineno}: duplicate section [{name}]")
            manifest.sections[name] = {}
            current = name
            continue
        if "=" not in line:
            raise ManifestError(f"{path}:{lineno}: expected key = value, got {line!r}")
        if current is None:
            raise ManifestError(f"{path}:{lineno}: key outside any [section]")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in SECTION_KEYS[current]:
            raise ManifestError(
                f"{path}:{lineno}: unknown key {key!r} in section [{current}]"
            )
        bucket = manifest.sections[current].setdefault(key, [])
        if bucket and (current, key) not in REPEATABLE:
            raise ManifestError(
                f"{path}:{lineno}: duplicate key {key!r} in section [{current}]"
            )
        bucket.append((value, lineno))
    return manifest


def load_manifest(path: str) -> Manifest:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    return parse_manifest(text, path)


# -- typed value parsers

def parse_int(value: str, where: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ManifestError(f"{where}: expected an integer, got {value!r}") from exc


def parse_vector(value: str, where: str) -> tuple[int, ...]:
    parts = [p.strip() for p in value.split(",")]
    if parts == [""]:
        raise ManifestError(f"{where}: empty vector")
    return tuple(parse_int(p, where) for p in parts)


def parse_rational(value: str, where: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ManifestError(f"{where}: expected a rational p/q, got {value!r}") from exc


def parse_candidate(value: str, where: str) -> tuple[Fraction, bool]:
    """A destabilizing candidate: '<degree>,<yes|no>' for the section flag."""
    head, sep, tail = value.rpartition(",")
    if not sep:
        raise ManifestError(f"{where}: expected '<degree>,<yes|no>', got {value!r}")
    flag = tail.strip().lower()
    if flag not in ("yes", "no"):
        raise ManifestError(f"{where}: section flag must be yes or no, got {tail!r}")
    return parse_rational(head.strip(), where), flag == "yes"
