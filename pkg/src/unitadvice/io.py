"""JSON file formats for instances, transcripts and family manifests.

Output is written with sorted keys and a trailing newline so that identical
inputs always give byte-identical files.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Union

from .geometry import Instance
from .runtime import Transcript

INSTANCE_FORMAT = "unitadvice-instance/1"
TRANSCRIPT_FORMAT = "unitadvice-transcript/1"
MANIFEST_FORMAT = "unitadvice-manifest/1"

PathLike = Union[str, Path]


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def instance_to_dict(inst: Instance) -> Dict[str, Any]:
    return {
        "format": INSTANCE_FORMAT,
        "dim": inst.dim,
        "scale": inst.scale,
        "lattice": inst.lattice,
        "points": [list(p) for p in inst.points],
    }


def instance_from_dict(d: Dict[str, Any]) -> Instance:
    if d.get("format") != INSTANCE_FORMAT:
        raise ValueError(f"not an instance file (format={d.get('format')!r})")
    return Instance(d["dim"], d["scale"], tuple(tuple(p) for p in d["points"]), d["lattice"])


def write_instance(inst: Instance, path: PathLike) -> None:
    Path(path).write_text(dumps(instance_to_dict(inst)))


def read_instance(path: PathLike) -> Instance:
    return instance_from_dict(json.loads(Path(path).read_text()))


def write_transcript(tr: Transcript, path: PathLike) -> None:
    Path(path).write_text(dumps({"format": TRANSCRIPT_FORMAT, **tr.to_dict()}))


def read_transcript(path: PathLike) -> Transcript:
    d = json.loads(Path(path).read_text())
    if d.get("format") != TRANSCRIPT_FORMAT:
        raise ValueError("not a transcript file")
    return Transcript.from_dict(d)


def write_manifest(manifest: Dict[str, Any], path: PathLike) -> None:
    Path(path).write_text(dumps({"format": MANIFEST_FORMAT, **manifest}))


def read_manifest(path: PathLike) -> Dict[str, Any]:
    d = json.loads(Path(path).read_text())
    if d.get("format") != MANIFEST_FORMAT:
        raise ValueError("not a manifest file")
    return d
