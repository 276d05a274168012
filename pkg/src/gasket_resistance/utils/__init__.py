"""Utility modules."""

from gasket_resistance.utils.csvio import read_csv, read_json, write_csv, write_json
from gasket_resistance.utils.digest import digest_files, file_digest, mismatched_digests
from gasket_resistance.utils.pool import run_tasks
from gasket_resistance.utils.rng import Stream, UniformBuffer, make_rng
from gasket_resistance.utils.toon import ToonEncoder, encode_toon

__all__ = [
    "Stream",
    "ToonEncoder",
    "UniformBuffer",
    "digest_files",
    "encode_toon",
    "file_digest",
    "make_rng",
    "mismatched_digests",
    "read_csv",
    "read_json",
    "run_tasks",
    "write_csv",
    "write_json",
]
