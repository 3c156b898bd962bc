"""Line-oriented text persistence for verified codes.

A code file is a "key: value" header followed by one line per generator and
per logical representative; it round-trips losslessly and every load
re-runs the verification gates before handing the code back.
"""

from __future__ import annotations

from pathlib import Path

from . import __version__
from .errors import DomainError, VerificationError
from .symplectic import DistanceInfo, PauliVector, StabilizerCode

_MAGIC = "# quasistab code file"


def _distance_text(info: DistanceInfo) -> str:
    if info.exact is not None:
        return f"exact={info.exact}"
    parts = []
    if info.lower_bound is not None:
        parts.append(f"bound={info.lower_bound}")
    if info.claimed is not None:
        parts.append(f"claimed={info.claimed}")
    return " ".join(parts) if parts else "unknown"


def _parse_distance(text: str) -> DistanceInfo:
    if text == "unknown":
        return DistanceInfo()
    fields = {}
    for part in text.split():
        key, _, value = part.partition("=")
        fields[key] = int(value)
    return DistanceInfo(
        exact=fields.get("exact"),
        lower_bound=fields.get("bound"),
        claimed=fields.get("claimed"),
    )


def dump_code(code: StabilizerCode) -> str:
    lines = [
        _MAGIC,
        "format: 1",
        f"version: {__version__}",
        f"name: {code.name}",
        f"p: {code.p}",
        f"n: {code.n}",
        f"rank: {code.rank}",
        f"k: {code.k}",
        f"distance: {_distance_text(code.distance)}",
    ]
    for g in code.generators:
        lines.append(f"generator: {g.to_string()}")
    for lx, lz in code.logicals:
        lines.append(f"logical_x: {lx.to_string()}")
        lines.append(f"logical_z: {lz.to_string()}")
    return "\n".join(lines) + "\n"


def save_code(code: StabilizerCode, path: str | Path) -> None:
    Path(path).write_text(dump_code(code), encoding="utf-8")


def load_code(path: str | Path) -> StabilizerCode:
    """Parse and re-verify a code file; raises VerificationError on any gap."""
    text = Path(path).read_text(encoding="utf-8")
    fields: dict[str, str] = {}
    gens: list[str] = []
    log_x: list[str] = []
    log_z: list[str] = []
    for raw in text.splitlines():
        line = raw.rstrip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise DomainError(f"malformed code-file line {line!r}")
        key = key.strip()
        value = value.strip()
        if key == "generator":
            gens.append(value)
        elif key == "logical_x":
            log_x.append(value)
        elif key == "logical_z":
            log_z.append(value)
        else:
            fields[key] = value
    try:
        p = int(fields["p"])
        n = int(fields["n"])
        rank = int(fields["rank"])
        k = int(fields["k"])
        name = fields["name"]
    except KeyError as exc:
        raise DomainError(f"code file missing field {exc}") from exc
    distance = _parse_distance(fields.get("distance", "unknown"))
    generators = [PauliVector.from_string(s, p=p) for s in gens]
    if any(g.n != n for g in generators):
        raise VerificationError("generator length disagrees with header")
    rebuilt = StabilizerCode.from_generators(name, generators, distance=distance)
    if rebuilt.rank != rank or rebuilt.k != k:
        raise VerificationError(
            f"stored rank/k ({rank},{k}) disagree with recomputed ({rebuilt.rank},{rebuilt.k})"
        )
    if len(log_x) != len(log_z):
        raise VerificationError("logical_x/logical_z lines must pair up")
    if log_x:
        pairs = tuple(
            (PauliVector.from_string(a, p=p), PauliVector.from_string(b, p=p))
            for a, b in zip(log_x, log_z)
        )
        from dataclasses import replace

        from .symplectic import _validate_logicals

        rebuilt = replace(rebuilt, logicals=pairs)
        _validate_logicals(rebuilt)
    return rebuilt
