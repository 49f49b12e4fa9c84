"""Checkpoint container for network parameters.

Layout: one magic line, one JSON header line (network spec, tensor manifest
in payload order, kappa table), then the raw little-endian float64 payload.
Float64 payloads round-trip bitwise.
"""
from __future__ import annotations

import json

import numpy as np

from .network import KappaParam, NetworkParams, NetworkSpec

_MAGIC = b"FLAME1D-CKPT 1\n"


def save_checkpoint(path, params):
    names = sorted(params.tensors)
    header = {
        "spec": {
            "arch": params.spec.arch,
            "widths": list(params.spec.widths),
            "activation": params.spec.activation,
            "rwf": params.spec.rwf,
        },
        "tensors": [{"name": n, "shape": list(params.tensors[n].shape)}
                    for n in names],
        "kappa": [{"name": k, "value": p.value, "trainable": p.trainable}
                  for k, p in sorted(params.kappa.items())],
    }
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(json.dumps(header).encode() + b"\n")
        for n in names:
            fh.write(np.ascontiguousarray(params.tensors[n], dtype="<f8").tobytes())


def load_checkpoint(path):
    with open(path, "rb") as fh:
        magic = fh.readline()
        if magic != _MAGIC:
            raise ValueError(f"not a checkpoint file: bad magic {magic!r}")
        header = json.loads(fh.readline())
        payload = fh.read()
    spec = NetworkSpec(
        arch=header["spec"]["arch"],
        widths=tuple(header["spec"]["widths"]),
        activation=header["spec"]["activation"],
        rwf=header["spec"]["rwf"],
    )
    tensors = {}
    offset = 0
    for entry in header["tensors"]:
        shape = tuple(entry["shape"])
        n = int(np.prod(shape)) if shape else 1
        arr = np.frombuffer(payload, dtype="<f8", count=n, offset=offset)
        tensors[entry["name"]] = arr.astype(np.float64).reshape(shape)
        offset += 8 * n
    kappa = {e["name"]: KappaParam(e["value"], e["trainable"])
             for e in header["kappa"]}
    return NetworkParams(spec, tensors, kappa)
