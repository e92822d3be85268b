"""Model persistence.

Binary container (all integers little-endian):

    magic "HDCM" | u32 version | u32 dim | u32 n
    u32 alphabet byte length | alphabet UTF-8
    u64 item seed | u64 tie seed | u8 deterministic-ties flag
    u32 symbol count   | symbol vectors, packed u64 words per symbol
    u32 class count    | per class: u32 label byte length + label UTF-8
    class vectors, packed u64 words per class

A sidecar JSON at <path>.json mirrors the metadata for human inspection.
Loading and re-saving reproduces the file byte for byte.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .algebra import Hypervector, n_words
from .assocmem import AssociativeMemory
from .encoder import EncoderConfig, TextEncoder
from .errors import DataError
from .itemmem import ItemMemory
from .pipeline import TrainedModel

MAGIC = b"HDCM"
VERSION = 1


def _pack_words(rows: np.ndarray) -> bytes:
    return np.ascontiguousarray(rows, dtype="<u8").tobytes()


def save_model(model: TrainedModel, path) -> None:
    path = Path(path)
    cfg = model.config
    alpha = cfg.alphabet.encode("utf-8")
    parts = [
        MAGIC,
        struct.pack("<III", VERSION, cfg.dim, cfg.n),
        struct.pack("<I", len(alpha)), alpha,
        struct.pack("<QQB", cfg.item_seed, cfg.tie_seed, int(cfg.deterministic_ties)),
        struct.pack("<I", len(cfg.alphabet)),
        _pack_words(model.encoder.item_memory.words_matrix()),
        struct.pack("<I", len(model.labels)),
    ]
    for label in model.labels:
        lb = str(label).encode("utf-8")
        parts.append(struct.pack("<I", len(lb)))
        parts.append(lb)
    parts.append(_pack_words(model.memory.rows()))
    path.write_bytes(b"".join(parts))

    sidecar = {
        "format": MAGIC.decode("ascii"),
        "version": VERSION,
        "dim": cfg.dim,
        "n": cfg.n,
        "alphabet": cfg.alphabet,
        "item_seed": cfg.item_seed,
        "tie_seed": cfg.tie_seed,
        "deterministic_ties": cfg.deterministic_ties,
        "labels": [str(lb) for lb in model.labels],
    }
    Path(str(path) + ".json").write_text(
        json.dumps(sidecar, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


class _Reader:
    def __init__(self, buf: bytes, path):
        self.buf = buf
        self.off = 0
        self.path = path

    def take(self, count: int) -> bytes:
        if self.off + count > len(self.buf):
            raise DataError(f"model file {self.path} is truncated")
        out = self.buf[self.off:self.off + count]
        self.off += count
        return out

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def words(self, rows: int, cols: int) -> np.ndarray:
        raw = self.take(rows * cols * 8)
        return np.frombuffer(raw, dtype="<u8").reshape(rows, cols).astype(np.uint64)


def load_model(path) -> TrainedModel:
    path = Path(path)
    r = _Reader(path.read_bytes(), path)
    if r.take(4) != MAGIC:
        raise DataError(f"{path} is not a model file (bad magic)")
    version, dim, n = struct.unpack("<III", r.take(12))
    if version != VERSION:
        raise DataError(f"{path}: unsupported model version {version}")
    alphabet = r.take(r.u32()).decode("utf-8")
    item_seed, tie_seed, det = struct.unpack("<QQB", r.take(17))
    num_symbols = r.u32()
    if num_symbols != len(alphabet):
        raise DataError(f"{path}: symbol count does not match alphabet")
    nw = n_words(dim)
    sym_rows = r.words(num_symbols, nw)
    num_classes = r.u32()
    labels = [r.take(r.u32()).decode("utf-8") for _ in range(num_classes)]
    class_rows = r.words(num_classes, nw)
    if r.off != len(r.buf):
        raise DataError(f"{path}: trailing bytes after model payload")

    config = EncoderConfig(dim=dim, n=n, alphabet=alphabet, item_seed=item_seed,
                           tie_seed=tie_seed, deterministic_ties=bool(det))
    vectors = [Hypervector(dim, row.copy()) for row in sym_rows]
    mem = ItemMemory(list(alphabet), vectors, dim, seed=item_seed)
    encoder = TextEncoder(config, item_memory=mem)
    assoc = AssociativeMemory.from_rows(labels, class_rows, dim)
    return TrainedModel(config=config, encoder=encoder, memory=assoc, labels=labels)
